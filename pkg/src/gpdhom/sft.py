"""Homology of shift-of-finite-type groupoids from graph adjacency data.

For an irreducible non-permutation adjacency matrix A the groupoid of
the associated one-sided shift has H_0 = Coker(I - A^t), H_1 =
Ker(I - A^t) and nothing above; capping with the winding cocycle
(x, n, y) -> n carries a kernel vector to its class in the cokernel.
Everything reduces to exact integer matrix algebra, so the infinite
groupoid itself is never built.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import (FgAbGroup, GroupHom, IntMatrix, full_lattice_group,
                      induced_hom, kernel_basis)


class NegativeEntry(ValueError):
    """Adjacency matrices must be non-negative."""


class NotIrreducible(ValueError):
    """Some vertex pair has no connecting path."""


class IsPermutation(ValueError):
    """Permutation matrices give shifts with no interesting dynamics."""


@dataclass(frozen=True)
class AdjacencyMatrix:
    """Validated adjacency matrix of a finite directed graph."""

    vertices: tuple
    matrix: IntMatrix

    @property
    def size(self):
        return len(self.vertices)


@dataclass(frozen=True)
class SftHomology:
    h0: FgAbGroup  # Coker(I - A^t)
    h1: FgAbGroup  # Ker(I - A^t), always free
    kernel: IntMatrix  # basis of Ker(I - A^t) as columns

    def group(self, n):
        if n == 0:
            return self.h0
        if n == 1:
            return self.h1
        return None  # zero in degrees >= 2


def validate_adjacency(matrix, vertices=None):
    """Check squareness, non-negativity, irreducibility and the
    non-permutation condition."""
    if not isinstance(matrix, IntMatrix):
        matrix = IntMatrix.from_rows(matrix)
    n = matrix.rows
    if matrix.cols != n or n == 0:
        raise ValueError("adjacency matrix must be square and non-empty")
    if vertices is None:
        vertices = tuple(f"v{i}" for i in range(n))
    else:
        vertices = tuple(vertices)
        if len(vertices) != n:
            raise ValueError("vertex list length does not match the matrix")
    for row in matrix.data:
        for x in row:
            if x < 0:
                raise NegativeEntry("adjacency entries must be >= 0")
    # irreducibility: boolean reachability closure in <= n steps
    reach = [[bool(matrix.data[i][j]) for j in range(n)] for i in range(n)]
    for _ in range(n):
        for i in range(n):
            ri = reach[i]
            for k in range(n):
                if ri[k]:
                    rk = reach[k]
                    for j in range(n):
                        if rk[j]:
                            ri[j] = True
    if not all(reach[i][j] for i in range(n) for j in range(n)):
        raise NotIrreducible("adjacency matrix is not irreducible")
    is_perm = all(sum(row) == 1 for row in matrix.data) and \
        all(sum(matrix.data[i][j] for i in range(n)) == 1 for j in range(n)) and \
        all(x in (0, 1) for row in matrix.data for x in row)
    if is_perm:
        raise IsPermutation("adjacency matrix is a permutation matrix")
    return AdjacencyMatrix(vertices, matrix)


def _i_minus_a_transpose(adj):
    n = adj.size
    a = adj.matrix
    return IntMatrix(n, n, [[(1 if i == j else 0) - a.data[j][i]
                             for j in range(n)] for i in range(n)])


def sft_homology(adj):
    """H_0 = Coker(I - A^t) and H_1 = Ker(I - A^t), with class_of maps."""
    m = _i_minus_a_transpose(adj)
    h0 = full_lattice_group(adj.size, m)
    ker = kernel_basis(m)
    h1 = FgAbGroup(ker, IntMatrix.zeros(adj.size, 0))
    return SftHomology(h0, h1, ker)


def winding_cap(adj, hom=None):
    """The map H_1 -> H_0 induced by capping with the winding cocycle.

    Sends a kernel vector a to its class a + Im(I - A^t); implemented by
    reading each kernel generator in the cokernel's coordinates.
    """
    if hom is None:
        hom = sft_homology(adj)
    cols = tuple(hom.h0.class_of(hom.h1.representative(i))
                 for i in range(hom.h1.ngens))
    return GroupHom(hom.h1, hom.h0, cols)


def winding_cap_via_induced(adj, hom=None):
    """Same map through the generic induced-homomorphism machinery, as an
    independent cross-check of winding_cap."""
    if hom is None:
        hom = sft_homology(adj)
    return induced_hom(IntMatrix.identity(adj.size), hom.h1, hom.h0)
