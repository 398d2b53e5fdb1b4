"""Finite discrete groupoids, their nerves and face maps.

A finite discrete groupoid is held as explicit tables: a set of morphism
identifiers, the subset of units, source/range maps, the composition
table on composable pairs, and inverses.  Every subset of such a
groupoid is a compact open bisection, so all the machinery for ample
groupoids applies verbatim at this desk scale.
"""

from __future__ import annotations

DEFAULT_MAX_DEGREE = 4
DEFAULT_NERVE_BUDGET = 10 ** 6


class AxiomViolation(ValueError):
    """A groupoid table breaks one of the axioms.

    kind is one of 'associativity', 'unit', 'inverse', 'source-range',
    'composability'; offenders lists the morphisms involved.
    """

    def __init__(self, kind, message, offenders=()):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.offenders = tuple(offenders)


class NotAHomomorphism(ValueError):
    """A morphism map fails to preserve the groupoid structure."""


class NerveBudgetExceeded(RuntimeError):
    """Refusing to enumerate a nerve larger than the configured budget."""


class DegreeError(ValueError):
    """Degree outside the allowed range."""


class FiniteGroupoid:
    """Validated finite groupoid; immutable after construction.

    Use validate_groupoid (or the builders below) rather than calling
    the constructor with unchecked tables.
    """

    def __init__(self, morphisms, units, source, range_, compose, inverse):
        self.morphisms = tuple(sorted(morphisms))
        self.units = tuple(sorted(units))
        self.unit_set = frozenset(self.units)
        self.source = dict(source)
        self.range = dict(range_)
        self.compose = dict(compose)
        self.inverse = dict(inverse)
        self._nerves = {}
        self._face_maps = {}

    def __repr__(self):
        return (f"FiniteGroupoid({len(self.morphisms)} morphisms, "
                f"{len(self.units)} units)")

    def unit_index(self, u):
        return self.units.index(u)

    def composable(self, g, h):
        return self.source[g] == self.range[h]

    def nerve(self, n, budget=None, max_degree=None):
        """Composable n-strings in lexicographic order of identifier tuples.

        nerve(0) is the unit list.  Enumeration is refused (before any
        materialization) when the string count would exceed the budget.
        """
        if n < 0:
            raise DegreeError("nerve degree must be >= 0")
        cap = DEFAULT_MAX_DEGREE if max_degree is None else max_degree
        if n > cap:
            raise DegreeError(f"degree {n} exceeds the configured limit {cap}")
        if n in self._nerves:
            return self._nerves[n]
        budget = DEFAULT_NERVE_BUDGET if budget is None else budget
        count = self.nerve_size(n)
        if count > budget:
            raise NerveBudgetExceeded(
                f"nerve of degree {n} has {count} strings, budget is {budget}")
        if n == 0:
            strings = tuple((u,) for u in self.units)
        else:
            strings = []
            # grow tuples left to right; sorted morphisms keep the order lexicographic
            partial = [(g,) for g in self.morphisms]
            for _ in range(n - 1):
                nxt = []
                for tup in partial:
                    s = self.source[tup[-1]]
                    for h in self.morphisms:
                        if self.range[h] == s:
                            nxt.append(tup + (h,))
                partial = nxt
            strings = tuple(partial)
        nerve = Nerve(self, n, strings)
        self._nerves[n] = nerve
        return nerve

    def nerve_size(self, n):
        """Number of composable n-strings, computed without materializing."""
        if n == 0:
            return len(self.units)
        # counts[u] = number of strings whose last source is u
        counts = {u: 0 for u in self.units}
        for g in self.morphisms:
            counts[self.source[g]] += 1
        for _ in range(n - 1):
            nxt = {u: 0 for u in self.units}
            for g in self.morphisms:
                nxt[self.source[g]] += counts[self.range[g]]
            counts = nxt
        return sum(counts.values())

    def face_map(self, n, i, budget=None, max_degree=None):
        """The i-th face map nerve(n) -> nerve(n-1) as an index table.

        For n == 1 the two faces are the source map (i = 0) and the range
        map (i = 1); for n >= 2 face 0 drops the first entry, face n
        drops the last, and face i composes the i-th pair.
        """
        if n < 1:
            raise DegreeError("face maps need degree >= 1")
        if not 0 <= i <= n:
            raise DegreeError(f"face index {i} out of range for degree {n}")
        key = (n, i)
        if key in self._face_maps:
            return self._face_maps[key]
        dom = self.nerve(n, budget=budget, max_degree=max_degree)
        cod = self.nerve(n - 1, budget=budget, max_degree=max_degree)
        indices = []
        for tup in dom.strings:
            if n == 1:
                g = tup[0]
                target = (self.source[g],) if i == 0 else (self.range[g],)
            elif i == 0:
                target = tup[1:]
            elif i == n:
                target = tup[:-1]
            else:
                target = tup[:i - 1] + (self.compose[(tup[i - 1], tup[i])],) + tup[i + 1:]
            indices.append(cod.index[target])
        fm = FaceMap(self, n, i, tuple(indices), dom, cod)
        self._face_maps[key] = fm
        return fm


class Nerve:
    """The degree-n nerve: an ordered list of composable strings."""

    def __init__(self, groupoid, degree, strings):
        self.groupoid = groupoid
        self.degree = degree
        self.strings = strings
        self.index = {s: k for k, s in enumerate(strings)}

    def __len__(self):
        return len(self.strings)

    def __iter__(self):
        return iter(self.strings)


class FaceMap:
    """An index map nerve(n) -> nerve(n-1) realizing a face of the nerve."""

    def __init__(self, groupoid, degree, face, indices, domain, codomain):
        self.groupoid = groupoid
        self.degree = degree
        self.face = face
        self.indices = indices
        self.domain = domain
        self.codomain = codomain

    def __call__(self, k):
        return self.indices[k]


def validate_groupoid(morphisms, units, source, range_, compose, inverse=None):
    """Check all groupoid axioms on raw tables and build a FiniteGroupoid.

    compose is a mapping (g, h) -> gh, or an iterable of [g, h, gh]
    triples; it must be defined exactly on pairs with s(g) = r(h).
    Inverses are derived when not supplied.  The first axiom violation
    found is raised as AxiomViolation.
    """
    morphisms = list(morphisms)
    if len(set(morphisms)) != len(morphisms):
        raise AxiomViolation("source-range", "duplicate morphism identifiers")
    mset = set(morphisms)
    units = list(units)
    if not set(units) <= mset:
        raise AxiomViolation("source-range", "units must be morphisms",
                             set(units) - mset)
    if not isinstance(compose, dict):
        compose = {(g, h): gh for g, h, gh in compose}
    for m in (source, range_):
        missing = mset - set(m)
        if missing:
            raise AxiomViolation("source-range", "missing source/range entries",
                                 missing)
        bad = [g for g in morphisms if m[g] not in units]
        if bad:
            raise AxiomViolation("source-range", "source/range must be units", bad)
    for u in units:
        if source[u] != u or range_[u] != u:
            raise AxiomViolation("source-range",
                                 f"unit {u!r} must have s(u) = r(u) = u", [u])
    # composition defined exactly on composable pairs, landing correctly
    for (g, h), gh in compose.items():
        if g not in mset or h not in mset or gh not in mset:
            raise AxiomViolation("composability",
                                 "composition table mentions unknown morphisms",
                                 [g, h])
        if source[g] != range_[h]:
            raise AxiomViolation("composability",
                                 f"{g!r}*{h!r} defined but s({g!r}) != r({h!r})",
                                 [g, h])
        if source[gh] != source[h] or range_[gh] != range_[g]:
            raise AxiomViolation("source-range",
                                 f"s/r of {g!r}*{h!r} are wrong", [g, h, gh])
    for g in morphisms:
        for h in morphisms:
            if source[g] == range_[h] and (g, h) not in compose:
                raise AxiomViolation("composability",
                                     f"missing composition {g!r}*{h!r}", [g, h])
    for g in morphisms:
        u, w = range_[g], source[g]
        if compose[(u, g)] != g or compose[(g, w)] != g:
            raise AxiomViolation("unit", f"units are not identities at {g!r}", [g])
    # inverses: derive or check
    if inverse is None:
        inverse = {}
        for g in morphisms:
            cands = [h for h in morphisms
                     if source[h] == range_[g] and range_[h] == source[g]
                     and compose[(h, g)] == source[g] and compose[(g, h)] == range_[g]]
            if not cands:
                raise AxiomViolation("inverse", f"no inverse for {g!r}", [g])
            inverse[g] = cands[0]
    else:
        inverse = dict(inverse)
        for g in morphisms:
            h = inverse.get(g)
            if h is None or h not in mset:
                raise AxiomViolation("inverse", f"no inverse listed for {g!r}", [g])
            if compose.get((h, g)) != source[g] or compose.get((g, h)) != range_[g]:
                raise AxiomViolation("inverse",
                                     f"{h!r} is not inverse to {g!r}", [g, h])
    for g in morphisms:
        for h in morphisms:
            if source[g] != range_[h]:
                continue
            for k in morphisms:
                if source[h] != range_[k]:
                    continue
                if compose[(compose[(g, h)], k)] != compose[(g, compose[(h, k)])]:
                    raise AxiomViolation("associativity",
                                         f"({g!r}*{h!r})*{k!r} != {g!r}*({h!r}*{k!r})",
                                         [g, h, k])
    return FiniteGroupoid(morphisms, units, source, range_, compose, inverse)


class GroupoidHom:
    """A functor between finite groupoids, given on morphisms."""

    def __init__(self, domain, codomain, mapping):
        self.domain = domain
        self.codomain = codomain
        self.mapping = dict(mapping)
        missing = set(domain.morphisms) - set(self.mapping)
        if missing:
            raise NotAHomomorphism(f"map not defined on {sorted(missing)}")
        bad = [g for g in domain.morphisms
               if self.mapping[g] not in codomain.unit_set
               and self.mapping[g] not in codomain.morphisms]
        if bad:
            raise NotAHomomorphism(f"images outside codomain: {bad}")
        for u in domain.units:
            if self.mapping[u] not in codomain.unit_set:
                raise NotAHomomorphism(f"unit {u!r} does not map to a unit")
        for g in domain.morphisms:
            if codomain.source[self.mapping[g]] != self.mapping[domain.source[g]]:
                raise NotAHomomorphism(f"source not preserved at {g!r}")
            if codomain.range[self.mapping[g]] != self.mapping[domain.range[g]]:
                raise NotAHomomorphism(f"range not preserved at {g!r}")
        for (g, h), gh in domain.compose.items():
            if codomain.compose[(self.mapping[g], self.mapping[h])] != self.mapping[gh]:
                raise NotAHomomorphism(f"composition not preserved at ({g!r}, {h!r})")

    def __call__(self, g):
        return self.mapping[g]

    def on_string(self, tup):
        return tuple(self.mapping[g] for g in tup)

    def compose_with(self, other):
        """self after other."""
        return GroupoidHom(other.domain, self.codomain,
                           {g: self.mapping[other.mapping[g]]
                            for g in other.domain.morphisms})

    @classmethod
    def identity(cls, groupoid):
        return cls(groupoid, groupoid, {g: g for g in groupoid.morphisms})


# ---------------------------------------------------------------------------
# builders for the standard small test groupoids


def cyclic_group_groupoid(k):
    """Z/k as a groupoid with a single unit 'e' and morphisms t0..t{k-1}."""
    names = ["e"] + [f"t{i}" for i in range(1, k)]

    def name(i):
        return names[i % k]

    morphisms = names
    units = ["e"]
    source = {g: "e" for g in morphisms}
    range_ = {g: "e" for g in morphisms}
    compose = {(name(i), name(j)): name(i + j) for i in range(k) for j in range(k)}
    inverse = {name(i): name(-i) for i in range(k)}
    return validate_groupoid(morphisms, units, source, range_, compose, inverse)


def pair_groupoid(points):
    """The pair groupoid on a finite point set: morphisms (i,j): j -> i."""
    points = [str(p) for p in points]

    def name(i, j):
        return f"({i},{j})"

    morphisms = [name(i, j) for i in points for j in points]
    units = [name(i, i) for i in points]
    source = {name(i, j): name(j, j) for i in points for j in points}
    range_ = {name(i, j): name(i, i) for i in points for j in points}
    compose = {(name(i, j), name(j, k)): name(i, k)
               for i in points for j in points for k in points}
    inverse = {name(i, j): name(j, i) for i in points for j in points}
    return validate_groupoid(morphisms, units, source, range_, compose, inverse)


def discrete_groupoid(points):
    """The space groupoid: units only, one per point."""
    points = [str(p) for p in points]
    ident = {(p, p): p for p in points}
    return validate_groupoid(points, points, {p: p for p in points},
                             {p: p for p in points}, ident,
                             {p: p for p in points})


def cyclic_action_groupoid(k, perm):
    """Transformation groupoid of Z/k acting on points by a permutation.

    perm maps point -> point and must have order dividing k; morphisms
    are written 'j|x' with source x and range perm^j(x), and
    (i|perm^j(x)) * (j|x) = (i+j|x).
    """
    points = sorted(perm)
    power = {0: {x: x for x in points}}
    for j in range(1, k + 1):
        power[j] = {x: perm[power[j - 1][x]] for x in points}
    if power[k] != power[0]:
        raise ValueError(f"permutation order does not divide {k}")

    def name(j, x):
        return f"{j % k}|{x}"

    morphisms = [name(j, x) for j in range(k) for x in points]
    units = [name(0, x) for x in points]
    source = {name(j, x): name(0, x) for j in range(k) for x in points}
    range_ = {name(j, x): name(0, power[j][x]) for j in range(k) for x in points}
    compose = {}
    for j in range(k):
        for i in range(k):
            for x in points:
                compose[(name(i, power[j][x]), name(j, x))] = name(i + j, x)
    inverse = {name(j, x): name(k - j if j else 0, power[j][x])
               for j in range(k) for x in points}
    return validate_groupoid(morphisms, units, source, range_, compose, inverse)
