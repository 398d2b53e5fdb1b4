"""Sparse chain calculus for Z^N actions on a finite set.

The transformation groupoid Z^N x X is infinite, so it is never built.
Chains are finitely supported tables keyed by (tuple of group elements,
base point), where the base point is the source of the last entry of a
composable string; cochains are evaluated on demand from per-generator
cocycle tables.  The module computes the antisymmetrized fundamental
cycle, boundaries, cup and cap evaluations, and checks the closed-form
pairing formula against the direct sparse evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations


class NonCommuting(ValueError):
    """Two generator permutations fail to commute at some point."""


class CocycleViolation(ValueError):
    """Per-generator tables fail the pairwise cocycle identity."""


class Mismatch(AssertionError):
    """The closed-form value disagrees with the direct evaluation."""


def _sign(perm):
    sign = 1
    perm = list(perm)
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class ZNAction:
    """Commuting permutations of a finite set, one per Z^N generator.

    points are indices 0..|X|-1; gens[i][x] is the image of x under the
    i-th generator permutation.
    """

    n: int
    points: tuple
    gens: tuple  # tuple of permutations, each a tuple of point indices

    def inverse_gen(self, i):
        inv = [0] * len(self.points)
        for x, y in enumerate(self.gens[i]):
            inv[y] = x
        return tuple(inv)

    def translate(self, vec, x):
        """Apply the action of the group element vec to the point x."""
        for i, c in enumerate(vec):
            if c >= 0:
                for _ in range(c):
                    x = self.gens[i][x]
            else:
                inv = self.inverse_gen(i)
                for _ in range(-c):
                    x = inv[x]
        return x

    def basis_vector(self, i):
        return tuple(1 if j == i else 0 for j in range(self.n))


def validate_action(n, points, gens):
    """Check that the generator permutations pairwise commute."""
    points = tuple(points)
    size = len(points)
    gens = tuple(tuple(g) for g in gens)
    if len(gens) != n:
        raise ValueError(f"expected {n} generator permutations")
    for g in gens:
        if sorted(g) != list(range(size)):
            raise ValueError("generators must be permutations of the point indices")
    for i in range(n):
        for j in range(i + 1, n):
            for x in range(size):
                if gens[i][gens[j][x]] != gens[j][gens[i][x]]:
                    raise NonCommuting(
                        f"generators {i} and {j} disagree at point {x}")
    return ZNAction(n, points, gens)


@dataclass(frozen=True)
class ZNCocycle:
    """Degree-1 integer cocycle on Z^N x X, stored as generator tables.

    tables[i][x] is the value on (e_i, x).  The pairwise identity
    xi_i + xi_j . phi_i == xi_j + xi_i . phi_j makes the staircase
    extension below independent of the order the generators are applied.
    """

    action: ZNAction
    tables: tuple

    def value(self, vec, x):
        """Value on the group element vec at base point x.

        Extends the generator tables by applying generators in the fixed
        order 1..N: each unit step along e_i from the current point adds
        the table value there (or subtracts, stepping backwards).
        """
        act = self.action
        total = 0
        y = x
        for i, c in enumerate(vec):
            tab = self.tables[i]
            if c >= 0:
                for _ in range(c):
                    total += tab[y]
                    y = act.gens[i][y]
            else:
                inv = act.inverse_gen(i)
                for _ in range(-c):
                    y = inv[y]
                    total -= tab[y]
        return total


def check_cocycle(action, tables):
    """Validate the pairwise cocycle identity for all pairs and points."""
    tables = tuple(tuple(t) for t in tables)
    if len(tables) != action.n or any(len(t) != len(action.points) for t in tables):
        raise ValueError("need one value table of size |X| per generator")
    for i in range(action.n):
        for j in range(action.n):
            if i == j:
                continue
            for x in range(len(action.points)):
                lhs = tables[i][x] + tables[j][action.gens[i][x]]
                rhs = tables[j][x] + tables[i][action.gens[j][x]]
                if lhs != rhs:
                    raise CocycleViolation(
                        f"cocycle identity fails for generators {i}, {j} "
                        f"at point {x}")
    return ZNCocycle(action, tables)


class SparseChain:
    """Finitely supported chain on the nerve of Z^N x X.

    Keys are (tuple of N-vectors, base point index); the base point is
    the source of the last string entry, which together with the group
    elements determines the whole composable string.
    """

    def __init__(self, action, degree, values=None):
        self.action = action
        self.degree = degree
        table = {}
        if values:
            items = values.items() if isinstance(values, dict) else values
            for (vecs, x), c in items:
                vecs = tuple(tuple(v) for v in vecs)
                if len(vecs) != degree:
                    raise ValueError("key length does not match the degree")
                c = table.get((vecs, x), 0) + c
                if c:
                    table[(vecs, x)] = c
                else:
                    table.pop((vecs, x), None)
        self.values = table

    def is_zero(self):
        return not self.values

    def add(self, other):
        out = dict(self.values)
        for key, c in other.values.items():
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return SparseChain(self.action, self.degree, out)

    def scale(self, c):
        return SparseChain(self.action, self.degree,
                           {k: c * v for k, v in self.values.items()})

    def point_values(self):
        """For degree-0 chains: the coefficient at each point."""
        assert self.degree == 0
        out = [0] * len(self.action.points)
        for ((), x), c in self.values.items():
            out[x] = c
        return out

    def __eq__(self, other):
        return (isinstance(other, SparseChain) and self.degree == other.degree
                and self.values == other.values)


@dataclass(frozen=True)
class ZNCochain:
    """Degree-m cochain on Z^N x X evaluated on demand."""

    action: ZNAction
    degree: int
    fn: object  # callable (vecs, x) -> int

    def value(self, vecs, x):
        return self.fn(tuple(tuple(v) for v in vecs), x)


def cochain_of_cocycle(cocycle):
    return ZNCochain(cocycle.action, 1,
                     lambda vecs, x: cocycle.value(vecs[0], x))


def sparse_cup(xi, eta):
    """Cup product of on-demand cochains.

    On a string split as prefix/suffix the suffix keeps the base point
    and the prefix is based at the suffix's range, i.e. the translate of
    the base point by the total suffix displacement.
    """
    if xi.action is not eta.action:
        raise ValueError("cochains live over different actions")
    n, m = xi.degree, eta.degree
    act = xi.action

    def fn(vecs, x):
        left, right = vecs[:n], vecs[n:]
        shift = tuple(sum(v[i] for v in right) for i in range(act.n))
        return xi.value(left, act.translate(shift, x)) * eta.value(right, x)

    return ZNCochain(act, n + m, fn)


def sparse_cap(chain, cochain):
    """Cap product by splitting each support key into prefix and suffix."""
    act = chain.action
    n, m = chain.degree, cochain.degree
    if m > n:
        raise ValueError("cap needs cochain degree <= chain degree")
    out = {}
    for (vecs, x), c in chain.values.items():
        prefix, suffix = vecs[:m], vecs[m:]
        shift = tuple(sum(v[i] for v in suffix) for i in range(act.n))
        weight = cochain.value(prefix, act.translate(shift, x))
        if weight:
            key = (suffix, x)
            v = out.get(key, 0) + c * weight
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return SparseChain(act, n - m, out)


def sparse_boundary(chain):
    """Alternating sum of face maps on sparse keys.

    Face 0 drops the first group element; middle faces add adjacent
    elements; the last face drops the final element and moves the base
    point by it.
    """
    n = chain.degree
    act = chain.action
    if n == 0:
        return SparseChain(act, 0)
    out = {}

    def put(key, c):
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)

    for (vecs, x), c in chain.values.items():
        for i in range(n + 1):
            sign = -1 if i % 2 else 1
            if i == 0:
                key = (vecs[1:], x)
            elif i == n:
                key = (vecs[:-1], act.translate(vecs[-1], x))
            else:
                merged = tuple(a + b for a, b in zip(vecs[i - 1], vecs[i]))
                key = (vecs[:i - 1] + (merged,) + vecs[i + 1:], x)
            put(key, sign * c)
    return SparseChain(act, n - 1, out)


def fundamental_chain(action):
    """The antisymmetrized degree-N cycle with support N! * |X|.

    For each permutation and base point the string walks the generators
    in permuted order; the coefficient is the permutation sign.
    """
    n = action.n
    values = {}
    for perm in permutations(range(n)):
        sign = _sign(perm)
        vecs = tuple(action.basis_vector(perm[k]) for k in range(n))
        for x in range(len(action.points)):
            values[(vecs, x)] = sign
    return SparseChain(action, n, values)


def suffix_shift(action, perm, i):
    """Sum of the basis vectors the permutation places after position i."""
    out = [0] * action.n
    for k in range(i + 1, action.n):
        out[perm[k]] += 1
    return tuple(out)


def pairing_closed_form(action, cocycles):
    """Pointwise closed form of capping the fundamental cycle with the
    cup product of N degree-1 cocycles.

    Value at x: sum over permutations of sign times the product of the
    i-th cocycle's generator table at position perm(i), each evaluated
    after translating x by the suffix displacement.
    """
    n = action.n
    if len(cocycles) != n:
        raise ValueError(f"need exactly {n} cocycles")
    out = []
    for x in range(len(action.points)):
        total = 0
        for perm in permutations(range(n)):
            sign = _sign(perm)
            prod = 1
            for i in range(n):
                y = action.translate(suffix_shift(action, perm, i), x)
                prod *= cocycles[i].tables[perm[i]][y]
            total += sign * prod
        out.append(total)
    return out


@dataclass
class PairingReport:
    """Per-point comparison of the closed form with the sparse evaluation."""

    points: tuple
    closed_form: list
    direct: list
    boundary_vanishes: bool

    @property
    def ok(self):
        return self.boundary_vanishes and self.closed_form == self.direct

    def rows(self):
        return [(p, lhs, rhs) for p, lhs, rhs in
                zip(self.points, self.closed_form, self.direct)]

    def raise_on_mismatch(self):
        for p, lhs, rhs in self.rows():
            if lhs != rhs:
                raise Mismatch(f"point {p}: closed form {lhs} != direct {rhs}")
        if not self.boundary_vanishes:
            raise Mismatch("fundamental chain is not a cycle")
        return self


def verify_pairing(action, cocycles):
    """Evaluate both routes and report exact pointwise equality.

    The direct route caps the fundamental cycle with the cup product of
    the cochains through the generic sparse machinery; the closed form
    is the antisymmetrized product formula.  The two must agree at every
    point; a difference signals an implementation bug.
    """
    f = fundamental_chain(action)
    boundary_ok = sparse_boundary(f).is_zero()
    cochain = cochain_of_cocycle(cocycles[0])
    for c in cocycles[1:]:
        cochain = sparse_cup(cochain, cochain_of_cocycle(c))
    direct = sparse_cap(f, cochain).point_values()
    closed = pairing_closed_form(action, cocycles)
    return PairingReport(action.points, closed, direct, boundary_ok)
