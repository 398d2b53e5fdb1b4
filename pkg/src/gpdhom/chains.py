"""Chains and cochains on the nerve of a finite groupoid.

A degree-n chain is a finitely supported coefficient table indexed by
composable n-strings; a degree-n cochain is a total table on the nerve.
Coefficients live in Z or Z/k.  The boundary is the alternating sum of
face pushforwards, the coboundary the alternating sum of face pullbacks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import IntMatrix
from .groupoid import FaceMap, GroupoidHom


class RingMismatch(ValueError):
    """Operands live over incompatible coefficient rings."""


@dataclass(frozen=True)
class Ring:
    """The coefficient ring: Z (modulus 0) or Z/k (modulus k >= 2)."""

    modulus: int = 0

    def __post_init__(self):
        if self.modulus < 0 or self.modulus == 1:
            raise ValueError("modulus must be 0 (for Z) or >= 2")

    @classmethod
    def mod(cls, k):
        return cls(k)

    def normalize(self, x):
        return x % self.modulus if self.modulus else x

    def __str__(self):
        return f"Z/{self.modulus}" if self.modulus else "Z"


Z = Ring(0)


def _check_rings(a, b):
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")


class Chain:
    """Finitely supported function on the degree-n nerve."""

    def __init__(self, groupoid, degree, values=None, ring=Z):
        self.groupoid = groupoid
        self.degree = degree
        self.ring = ring
        nerve = groupoid.nerve(degree)
        table = {}
        if values:
            items = values.items() if isinstance(values, dict) else values
            for key, coeff in items:
                key = tuple(key)
                if key not in nerve.index:
                    raise ValueError(f"{key} is not a composable {degree}-string")
                coeff = ring.normalize(table.get(key, 0) + coeff)
                if coeff:
                    table[key] = coeff
                else:
                    table.pop(key, None)
        self.values = table

    @classmethod
    def from_vector(cls, groupoid, degree, vector, ring=Z):
        nerve = groupoid.nerve(degree)
        if len(vector) != len(nerve):
            raise ValueError("vector length does not match the nerve")
        return cls(groupoid, degree,
                   {s: c for s, c in zip(nerve.strings, vector) if c}, ring)

    def to_vector(self):
        nerve = self.groupoid.nerve(self.degree)
        return tuple(self.values.get(s, 0) for s in nerve.strings)

    def coefficient(self, key):
        return self.values.get(tuple(key), 0)

    def support(self):
        return sorted(self.values)

    def is_zero(self):
        return not self.values

    def add(self, other):
        _check_rings(self, other)
        if self.degree != other.degree or self.groupoid is not other.groupoid:
            raise ValueError("cannot add chains of different degree/groupoid")
        out = dict(self.values)
        for key, c in other.values.items():
            v = self.ring.normalize(out.get(key, 0) + c)
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return Chain(self.groupoid, self.degree, out, self.ring)

    def scale(self, c):
        return Chain(self.groupoid, self.degree,
                     {k: c * v for k, v in self.values.items()}, self.ring)

    def neg(self):
        return self.scale(-1)

    def __eq__(self, other):
        return (isinstance(other, Chain) and self.degree == other.degree
                and self.ring == other.ring and self.values == other.values)

    def __repr__(self):
        return f"Chain(degree={self.degree}, ring={self.ring}, {self.values})"


class Cochain:
    """Total coefficient table on the degree-n nerve."""

    def __init__(self, groupoid, degree, values=None, ring=Z, default=0):
        self.groupoid = groupoid
        self.degree = degree
        self.ring = ring
        nerve = groupoid.nerve(degree)
        default = ring.normalize(default)
        table = [default] * len(nerve)
        if values is not None:
            if isinstance(values, dict):
                for key, coeff in values.items():
                    key = tuple(key)
                    if key not in nerve.index:
                        raise ValueError(f"{key} is not a composable {degree}-string")
                    table[nerve.index[key]] = ring.normalize(coeff)
            else:
                values = list(values)
                if len(values) != len(nerve):
                    raise ValueError("vector length does not match the nerve")
                table = [ring.normalize(x) for x in values]
        self.table = tuple(table)

    def value(self, key):
        nerve = self.groupoid.nerve(self.degree)
        return self.table[nerve.index[tuple(key)]]

    def to_vector(self):
        return self.table

    def is_zero(self):
        return all(x == 0 for x in self.table)

    def add(self, other):
        _check_rings(self, other)
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Cochain(self.groupoid, self.degree,
                       [a + b for a, b in zip(self.table, other.table)], self.ring)

    def scale(self, c):
        return Cochain(self.groupoid, self.degree,
                       [c * x for x in self.table], self.ring)

    def neg(self):
        return self.scale(-1)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.degree == other.degree
                and self.ring == other.ring and self.table == other.table)

    def __repr__(self):
        return f"Cochain(degree={self.degree}, ring={self.ring}, {list(self.table)})"


def pushforward(mapping, chain):
    """Fiberwise sum of a chain along a face map or groupoid homomorphism.

    The coefficient at y is the sum of the coefficients over the fiber
    above y; for maps of finite discrete groupoids this is always defined.
    """
    if isinstance(mapping, FaceMap):
        if mapping.degree != chain.degree:
            raise ValueError("face map degree does not match the chain")
        nerve = chain.groupoid.nerve(chain.degree)
        cod = mapping.codomain
        out = {}
        for key, c in chain.values.items():
            target = cod.strings[mapping(nerve.index[key])]
            out[target] = out.get(target, 0) + c
        return Chain(chain.groupoid, chain.degree - 1, out, chain.ring)
    if isinstance(mapping, GroupoidHom):
        if mapping.domain is not chain.groupoid:
            raise ValueError("homomorphism domain does not match the chain")
        out = {}
        for key, c in chain.values.items():
            target = mapping.on_string(key)
            out[target] = out.get(target, 0) + c
        return Chain(mapping.codomain, chain.degree, out, chain.ring)
    raise TypeError("pushforward needs a FaceMap or GroupoidHom")


def pullback(hom, cochain):
    """Compose a cochain with a groupoid homomorphism: xi -> xi . pi."""
    if hom.codomain is not cochain.groupoid:
        raise ValueError("homomorphism codomain does not match the cochain")
    dom_nerve = hom.domain.nerve(cochain.degree)
    values = [cochain.value(hom.on_string(s)) for s in dom_nerve.strings]
    return Cochain(hom.domain, cochain.degree, values, cochain.ring)


def boundary(chain):
    """Alternating sum of face pushforwards; zero in degree 0."""
    n = chain.degree
    if n == 0:
        return Chain(chain.groupoid, 0, None, chain.ring)
    out = {}
    nerve = chain.groupoid.nerve(n)
    cod = chain.groupoid.nerve(n - 1)
    for i in range(n + 1):
        fm = chain.groupoid.face_map(n, i)
        sign = -1 if i % 2 else 1
        for key, c in chain.values.items():
            target = cod.strings[fm(nerve.index[key])]
            out[target] = out.get(target, 0) + sign * c
    return Chain(chain.groupoid, n - 1, out, chain.ring)


def coboundary(cochain):
    """Alternating sum of face pullbacks, raising the degree by one."""
    n = cochain.degree
    g = cochain.groupoid
    target = g.nerve(n + 1)
    values = [0] * len(target)
    for i in range(n + 2):
        fm = g.face_map(n + 1, i)
        sign = -1 if i % 2 else 1
        for k in range(len(target)):
            values[k] += sign * cochain.table[fm(k)]
    return Cochain(g, n + 1, values, cochain.ring)


def boundary_matrix(groupoid, n, budget=None, max_degree=None):
    """Integer matrix of the degree-n boundary (rows: nerve(n-1), cols: nerve(n)).

    The degree-0 boundary is the empty 0 x |units| matrix.
    """
    if n == 0:
        return IntMatrix.zeros(0, len(groupoid.nerve(0)))
    dom = groupoid.nerve(n, budget=budget, max_degree=max_degree)
    cod = groupoid.nerve(n - 1, budget=budget, max_degree=max_degree)
    rows = [[0] * len(dom) for _ in range(len(cod))]
    for i in range(n + 1):
        fm = groupoid.face_map(n, i, budget=budget, max_degree=max_degree)
        sign = -1 if i % 2 else 1
        for col, row in enumerate(fm.indices):
            rows[row][col] += sign
    return IntMatrix(len(cod), len(dom), rows)


def coboundary_matrix(groupoid, n, budget=None, max_degree=None):
    """Matrix of the degree-n coboundary; the transpose of the boundary
    one degree up."""
    return boundary_matrix(groupoid, n + 1, budget=budget,
                           max_degree=max_degree).transpose()
