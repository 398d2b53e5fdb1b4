"""Cup and cap products at chain level and on (co)homology classes.

The cup product concatenates argument strings: a degree-n integer cochain
times a degree-m cochain evaluates on (g_1, ..., g_{n+m}) as the product
of the values on the first n and the last m entries.  The cap product of
a degree-n integer chain with a degree-m cochain sums the chain over all
prefix strings weighted by the cochain value; both degenerate cases are
the unique readings of the defining pushforward composites.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import FgAbGroup, GroupHom, IntMatrix, induced_hom
from .chains import Chain, Cochain, RingMismatch, Z
from .groupoid import DegreeError, GroupoidHom
from .homology import (basis_chains, basis_cochains, cohomology,
                       cohomology_class, homology, homology_class,
                       require_cocycle, require_cycle)


def cup(xi, eta):
    """Cochain-level cup product; the first factor must be Z-valued."""
    if xi.ring != Z:
        raise RingMismatch("the first cup factor must take values in Z")
    if xi.groupoid is not eta.groupoid:
        raise ValueError("cochains live on different groupoids")
    g = xi.groupoid
    n, m = xi.degree, eta.degree
    target = g.nerve(n + m)
    values = []
    if n == 0:
        rmap = {u: 0 for u in g.units}
        unit_nerve = g.nerve(0)
        if m == 0:
            values = [xi.table[k] * eta.table[k] for k in range(len(target))]
        else:
            for tup in target.strings:
                u = (g.range[tup[0]],)
                values.append(xi.table[unit_nerve.index[u]] * eta.value(tup))
    elif m == 0:
        unit_nerve = g.nerve(0)
        for tup in target.strings:
            u = (g.source[tup[-1]],)
            values.append(xi.value(tup) * eta.table[unit_nerve.index[u]])
    else:
        for tup in target.strings:
            values.append(xi.value(tup[:n]) * eta.value(tup[n:]))
    return Cochain(g, n + m, values, eta.ring)


def cap(f, xi):
    """Chain-level cap product of an integer n-chain with an m-cochain, m <= n.

    Splits every support string into its m-prefix and (n-m)-suffix; the
    suffix indexes the output, weighted by the cochain on the prefix.
    For m = 0 the weight is the value at the range of the first entry,
    and for m = n the output lives on units, indexed by the last source.
    """
    if f.ring != Z:
        raise RingMismatch("the chain factor of a cap must take values in Z")
    if f.groupoid is not xi.groupoid:
        raise ValueError("chain and cochain live on different groupoids")
    g = f.groupoid
    n, m = f.degree, xi.degree
    if m > n:
        raise DegreeError(f"cap needs cochain degree {m} <= chain degree {n}")
    out = {}
    unit_nerve = g.nerve(0)
    for key, c in f.values.items():
        if m == 0:
            u = key[0] if n == 0 else g.range[key[0]]
            weight = xi.table[unit_nerve.index[(u,)]]
            target = key
        elif m == n:
            weight = xi.value(key)
            target = (g.source[key[-1]],)
        else:
            weight = xi.value(key[:m])
            target = key[m:]
        if weight:
            out[target] = out.get(target, 0) + c * weight
    return Chain(g, n - m, out, xi.ring)


def cup_class(xi, eta, target=None):
    """Class of a cup product of cocycles; independent of representatives.

    Returns (group, coords) where group is H^{n+m} over eta's ring.
    Raises NotACocycle when either argument fails to be a cocycle.
    """
    require_cocycle(xi)
    require_cocycle(eta)
    product = cup(xi, eta)
    if target is None:
        target = cohomology(xi.groupoid, product.degree, eta.ring)
    return target, cohomology_class(target, product)


def cap_class(f, xi, target=None):
    """Class of a cap product of a cycle with a cocycle.

    Returns (group, coords) where group is H_{n-m} over xi's ring.
    """
    require_cycle(f)
    require_cocycle(xi)
    product = cap(f, xi)
    if target is None:
        target = homology(f.groupoid, product.degree, xi.ring)
    return target, homology_class(target, product)


@dataclass
class CapPairingTable:
    """Cap pairing H_n x H^m -> H_{n-m} tabulated on basis representatives."""

    hn: FgAbGroup
    hm: FgAbGroup
    target: FgAbGroup
    entries: tuple  # entries[i][j] = coords of [rep_i ~cap~ corep_j]

    def __str__(self):
        lines = []
        for i, row in enumerate(self.entries):
            for j, coords in enumerate(row):
                lines.append(f"[h_{i}] cap [c_{j}] = {list(coords)}")
        return "\n".join(lines) if lines else "(empty table)"


def cap_pairing_table(groupoid, n, m, ring=Z):
    """Tabulate the cap pairing on homology/cohomology basis classes."""
    if m > n:
        raise DegreeError(f"cap needs m <= n, got n={n}, m={m}")
    hn = homology(groupoid, n, Z)
    hm = cohomology(groupoid, m, ring)
    target = homology(groupoid, n - m, ring)
    reps = basis_chains(groupoid, n, hn, Z)
    coreps = basis_cochains(groupoid, m, hm, ring)
    entries = tuple(
        tuple(homology_class(target, cap(f, xi)) for xi in coreps)
        for f in reps)
    return CapPairingTable(hn, hm, target, entries)


def _pushforward_matrix(pi, n):
    """Matrix of the degree-n chain pushforward along a homomorphism."""
    dom = pi.domain.nerve(n)
    cod = pi.codomain.nerve(n)
    rows = [[0] * len(dom) for _ in range(len(cod))]
    for col, tup in enumerate(dom.strings):
        rows[cod.index[pi.on_string(tup)]][col] += 1
    return IntMatrix(len(cod), len(dom), rows)


def _pullback_matrix(pi, n):
    """Matrix of the degree-n cochain pullback along a homomorphism."""
    dom = pi.domain.nerve(n)
    cod = pi.codomain.nerve(n)
    rows = [[0] * len(cod) for _ in range(len(dom))]
    for i, tup in enumerate(dom.strings):
        rows[i][cod.index[pi.on_string(tup)]] += 1
    return IntMatrix(len(dom), len(cod), rows)


def induced_on_homology(pi, n, ring=Z):
    """H_n(pi): H_n(G, A) -> H_n(H, A) from a groupoid homomorphism."""
    dom = homology(pi.domain, n, ring)
    cod = homology(pi.codomain, n, ring)
    return induced_hom(_pushforward_matrix(pi, n), dom, cod)


def induced_on_cohomology(pi, n, ring=Z):
    """H^n(pi): H^n(H, A) -> H^n(G, A); contravariant."""
    dom = cohomology(pi.codomain, n, ring)
    cod = cohomology(pi.domain, n, ring)
    return induced_hom(_pullback_matrix(pi, n), dom, cod)
