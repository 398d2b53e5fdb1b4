"""Homology and cohomology of finite groupoids with constant coefficients.

Both are subquotients Ker/Im of integer boundary matrices.  For Z/k
coefficients the groups are computed over Z by enlarging the lattices:
cycles become the vectors whose boundary is divisible by k, and k times
every basis vector is added to the relations.
"""

from __future__ import annotations

from .abelian import (FgAbGroup, IntMatrix, NotInLattice, hermite_basis,
                      kernel_basis)
from .chains import Chain, Cochain, RingMismatch, Z, boundary, coboundary
from .chains import boundary_matrix


class NotACycle(ValueError):
    """A chain expected to be a cycle has nonzero boundary."""


class NotACocycle(ValueError):
    """A cochain expected to be a cocycle has nonzero coboundary."""


def _mod_k_lattices(d_out, d_in, k):
    """Cycle basis and relation matrix for homology with Z/k coefficients.

    d_out is the boundary leaving the degree, d_in the boundary arriving.
    Cycles: x with d_out(x) divisible by k, computed as the projection of
    the kernel of [d_out | -k*I].  Relations: columns of d_in plus k*I.
    """
    n = d_out.cols
    m = d_out.rows
    stacked = d_out.hstack(IntMatrix(m, m, [[-k if i == j else 0 for j in range(m)]
                                            for i in range(m)]))
    ker = kernel_basis(stacked)
    projected = IntMatrix(n, ker.cols, [ker.data[i] for i in range(n)])
    cycles = hermite_basis(projected)
    relations = d_in.hstack(IntMatrix(n, n, [[k if i == j else 0 for j in range(n)]
                                             for i in range(n)]))
    return cycles, relations


def _subquotient(d_out, d_in, ring):
    if ring.modulus == 0:
        return FgAbGroup(kernel_basis(d_out), d_in)
    cycles, relations = _mod_k_lattices(d_out, d_in, ring.modulus)
    return FgAbGroup(cycles, relations)


def homology(groupoid, n, ring=Z, budget=None, max_degree=None):
    """H_n(G, A) = Ker d_n / Im d_{n+1} as an FgAbGroup with class_of."""
    d_out = boundary_matrix(groupoid, n, budget=budget, max_degree=max_degree)
    d_in = boundary_matrix(groupoid, n + 1, budget=budget, max_degree=max_degree)
    return _subquotient(d_out, d_in, ring)


def cohomology(groupoid, n, ring=Z, budget=None, max_degree=None):
    """H^n(G, A) = Ker delta^n / Im delta^{n-1} as an FgAbGroup.

    The coboundary matrices are the transposes of the boundary ones, so
    the same subquotient machinery applies.
    """
    d_out = boundary_matrix(groupoid, n + 1, budget=budget,
                            max_degree=max_degree).transpose()
    if n == 0:
        d_in = IntMatrix.zeros(len(groupoid.nerve(0)), 0)
    else:
        d_in = boundary_matrix(groupoid, n, budget=budget,
                               max_degree=max_degree).transpose()
    return _subquotient(d_out, d_in, ring)


def homology_class(group, chain):
    """Coordinates of a cycle's class; raises NotACycle otherwise."""
    try:
        return group.class_of(chain.to_vector())
    except NotInLattice as exc:
        raise NotACycle("chain is not a cycle for this group") from exc


def cohomology_class(group, cochain):
    """Coordinates of a cocycle's class; raises NotACocycle otherwise."""
    try:
        return group.class_of(cochain.to_vector())
    except NotInLattice as exc:
        raise NotACocycle("cochain is not a cocycle for this group") from exc


def basis_chains(groupoid, n, group, ring=Z):
    """Chain representatives of the generators of a homology group."""
    return [Chain.from_vector(groupoid, n, group.representative(i), ring)
            for i in range(group.ngens)]


def basis_cochains(groupoid, n, group, ring=Z):
    """Cochain representatives of the generators of a cohomology group."""
    return [Cochain(groupoid, n, group.representative(i), ring)
            for i in range(group.ngens)]


def require_cycle(chain):
    if not boundary(chain).is_zero():
        raise NotACycle("boundary does not vanish")
    return chain


def require_cocycle(cochain):
    if not coboundary(cochain).is_zero():
        raise NotACocycle("coboundary does not vanish")
    return cochain
