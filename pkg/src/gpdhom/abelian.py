"""Exact integer linear algebra.

Smith and Hermite normal forms, integer kernels, and finitely generated
abelian groups presented as subquotients Ker/Im of integer matrices.
Everything runs on Python's arbitrary-precision integers; no floating
point is used anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass


class IncompatibleComplex(ValueError):
    """Relations do not lie inside the cycle lattice (corrupted complex)."""


class NotChainMap(ValueError):
    """An ambient map fails to respect the stored cycle/relation lattices."""


class NotInLattice(ValueError):
    """A vector is not an integer combination of the lattice basis."""


def xgcd(a, b):
    """Extended gcd: return (x, y, g) with x*a + y*b == g == gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


class IntMatrix:
    """Immutable integer matrix.

    Empty shapes (0 rows or 0 columns) are legal and denote zero maps,
    e.g. the boundary operator out of degree 0.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data):
        data = tuple(tuple(int(x) for x in row) for row in data)
        if len(data) != rows or any(len(row) != cols for row in data):
            raise ValueError(f"expected {rows}x{cols} entries")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("column count required for a 0-row matrix")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("row count required for a 0-column matrix")
            rows = len(columns[0])
        data = [[columns[j][i] for j in range(len(columns))] for i in range(rows)]
        return cls(rows, len(columns), data)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    def row(self, i):
        return self.data[i]

    def column(self, j):
        return tuple(self.data[i][j] for i in range(self.rows))

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self):
        return IntMatrix(self.cols, self.rows,
                         [[self.data[i][j] for i in range(self.rows)]
                          for j in range(self.cols)])

    def __mul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} * {other.shape}")
            data = []
            for i in range(self.rows):
                ri = self.data[i]
                data.append([sum(ri[k] * other.data[k][j] for k in range(self.cols))
                             for j in range(other.cols)])
            return IntMatrix(self.rows, other.cols, data)
        return NotImplemented

    def apply(self, vec):
        """Matrix-vector product; vec has length self.cols."""
        vec = list(vec)
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(row[k] * vec[k] for k in range(self.cols)) for row in self.data)

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntMatrix(self.rows, self.cols + other.cols,
                         [list(a) + list(b) for a, b in zip(self.data, other.data)])

    def scaled(self, c):
        return IntMatrix(self.rows, self.cols,
                         [[c * x for x in row] for row in self.data])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def is_diagonal(self):
        return all(x == 0 for i, row in enumerate(self.data)
                   for j, x in enumerate(row) if i != j)

    def diagonal(self):
        return tuple(self.data[i][i] for i in range(min(self.rows, self.cols)))

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.shape == other.shape
                and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {list(map(list, self.data))})"


@dataclass(frozen=True)
class SmithDecomposition:
    """U * M * V == S with U, V unimodular and S = diag(d_1 | d_2 | ...).

    u_inv and v_inv are the exact inverses of u and v, maintained during
    the reduction so no matrix inversion is ever needed afterwards.
    """

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix

    def invariant_factors(self):
        """Nonzero diagonal entries, in divisibility order."""
        return tuple(d for d in self.s.diagonal() if d != 0)


def _pivot_search(a, k, m, n):
    """Smallest-magnitude nonzero entry of a[k:, k:], ties by (row, col).

    Scanning row-major means the first entry of magnitude 1 already wins,
    so the scan can stop there.
    """
    best = None
    where = None
    for i in range(k, m):
        row = a[i]
        for j in range(k, n):
            x = row[j]
            if x:
                x = -x if x < 0 else x
                if best is None or x < best:
                    best, where = x, (i, j)
                    if x == 1:
                        return where
    return where


def smith_normal_form(matrix):
    """Smith normal form with unimodular transforms.

    Deterministic: pivots are chosen by smallest nonzero magnitude with
    ties broken by lowest row, then lowest column, so repeated runs give
    identical decompositions.
    """
    m, n = matrix.rows, matrix.cols
    a = [list(row) for row in matrix.data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    uinv = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    vinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_add(i, j, q):
        # row_i += q * row_j (on a and u); uinv: col_j -= q * col_i
        ai, aj = a[i], a[j]
        for t in range(n):
            ai[t] += q * aj[t]
        ui, uj = u[i], u[j]
        for t in range(m):
            ui[t] += q * uj[t]
        for t in range(m):
            uinv[t][j] -= q * uinv[t][i]

    def col_add(i, j, q):
        # col_i += q * col_j (on a and v); vinv: row_j -= q * row_i
        for t in range(m):
            a[t][i] += q * a[t][j]
        for t in range(n):
            v[t][i] += q * v[t][j]
        vi, vj = vinv[i], vinv[j]
        for t in range(n):
            vj[t] -= q * vi[t]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for t in range(m):
            uinv[t][i], uinv[t][j] = uinv[t][j], uinv[t][i]

    def col_swap(i, j):
        for t in range(m):
            a[t][i], a[t][j] = a[t][j], a[t][i]
        for t in range(n):
            v[t][i], v[t][j] = v[t][j], v[t][i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for t in range(m):
            uinv[t][i] = -uinv[t][i]

    for k in range(min(m, n)):
        while True:
            where = _pivot_search(a, k, m, n)
            if where is None:
                break
            i, j = where
            if i != k:
                row_swap(k, i)
            if j != k:
                col_swap(k, j)
            if a[k][k] < 0:
                row_negate(k)
            # clear column k below, then row k to the right
            dirty = False
            for i in range(k + 1, m):
                x = a[i][k]
                if x:
                    q = x // a[k][k]
                    if q:
                        row_add(i, k, -q)
                    if a[i][k]:
                        dirty = True
            if dirty:
                continue
            for j in range(k + 1, n):
                x = a[k][j]
                if x:
                    q = x // a[k][k]
                    if q:
                        col_add(j, k, -q)
                    if a[k][j]:
                        dirty = True
            if dirty:
                continue
            # pivot must divide the remaining block for the chain d_1 | d_2 | ...
            p = a[k][k]
            culprit = None
            for i in range(k + 1, m):
                row = a[i]
                for j in range(k + 1, n):
                    if row[j] % p:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            row_add(k, culprit, 1)
        if where is None:
            break

    s = IntMatrix(m, n, a)
    return SmithDecomposition(IntMatrix(m, m, u), s, IntMatrix(n, n, v),
                              IntMatrix(m, m, uinv), IntMatrix(n, n, vinv))


def _column_echelon(matrix):
    """Column echelon form over Z.

    Returns (cols, transform, pivots) with matrix * transform having the
    echelon columns `cols` first (pivot rows strictly increasing) and zero
    columns after them; transform is unimodular, pivots lists the pivot
    row of each echelon column.
    """
    m, n = matrix.rows, matrix.cols
    cols = [list(matrix.column(j)) for j in range(n)]
    t = [[1 if i == j else 0 for j in range(n)] for i in range(n)]  # columns of T
    tcols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    del t
    r = 0
    pivots = []
    for row in range(m):
        j = next((j for j in range(r, n) if cols[j][row]), None)
        if j is None:
            continue
        cols[r], cols[j] = cols[j], cols[r]
        tcols[r], tcols[j] = tcols[j], tcols[r]
        for j in range(r + 1, n):
            b = cols[j][row]
            if not b:
                continue
            ae = cols[r][row]
            if b % ae == 0:
                q = b // ae
                cols[j] = [x - q * y for x, y in zip(cols[j], cols[r])]
                tcols[j] = [x - q * y for x, y in zip(tcols[j], tcols[r])]
            else:
                x, y, g = xgcd(ae, b)
                aa, bb = ae // g, b // g
                cr, cj = cols[r], cols[j]
                cols[r] = [x * p + y * q for p, q in zip(cr, cj)]
                cols[j] = [-bb * p + aa * q for p, q in zip(cr, cj)]
                tr, tj = tcols[r], tcols[j]
                tcols[r] = [x * p + y * q for p, q in zip(tr, tj)]
                tcols[j] = [-bb * p + aa * q for p, q in zip(tr, tj)]
        if cols[r][row] < 0:
            cols[r] = [-x for x in cols[r]]
            tcols[r] = [-x for x in tcols[r]]
        pivots.append(row)
        r += 1
        if r == n:
            break
    return cols[:r], tcols, pivots


def hermite_basis(matrix):
    """Canonical basis of the column lattice (column-style Hermite form).

    Pivots are positive, pivot rows strictly increase, and in every pivot
    row the entries of the earlier columns are reduced into [0, pivot).
    Two matrices span the same lattice iff their hermite_basis agree.
    """
    cols, _, pivots = _column_echelon(matrix)
    for j in range(len(cols)):
        p = pivots[j]
        piv = cols[j][p]
        for j2 in range(j):
            q = cols[j2][p] // piv
            if q:
                cols[j2] = [x - q * y for x, y in zip(cols[j2], cols[j])]
    return IntMatrix.from_columns(cols, rows=matrix.rows)


def lattices_equal(a, b):
    """Do the columns of a and b span the same sublattice of Z^n?"""
    if a.rows != b.rows:
        raise ValueError("ambient dimensions differ")
    return hermite_basis(a) == hermite_basis(b)


def kernel_basis(matrix):
    """Canonical basis (as columns) of the integer kernel lattice."""
    cols, tcols, _ = _column_echelon(matrix)
    ker = tcols[len(cols):]
    ker_matrix = IntMatrix.from_columns(ker, rows=matrix.cols)
    return hermite_basis(ker_matrix)


class LatticeSolver:
    """Column echelon of a lattice with membership tests and exact solves."""

    def __init__(self, matrix):
        self.ambient = matrix.rows
        self.ncols = matrix.cols
        cols, tcols, pivots = _column_echelon(matrix)
        self.cols = cols
        self.tcols = tcols
        self.pivots = pivots
        self.rank = len(cols)

    def reduce(self, vec):
        """Return (coeffs, remainder): vec - echelon*coeffs = remainder,
        with remainder zero at all pivot rows (when divisible)."""
        vec = list(vec)
        if len(vec) != self.ambient:
            raise ValueError("vector length mismatch")
        coeffs = [0] * self.rank
        for j, p in enumerate(self.pivots):
            x = vec[p]
            if x:
                piv = self.cols[j][p]
                if x % piv:
                    return coeffs, vec
                q = x // piv
                coeffs[j] = q
                vec = [a - q * b for a, b in zip(vec, self.cols[j])]
        return coeffs, vec

    def contains(self, vec):
        _, rem = self.reduce(vec)
        return all(x == 0 for x in rem)

    def solve(self, vec):
        """Integer x with (original matrix) * x == vec, or None.

        When the original columns are dependent this returns one solution.
        """
        coeffs, rem = self.reduce(vec)
        if any(rem):
            return None
        out = [0] * self.ncols
        for c, tcol in zip(coeffs, self.tcols):
            if c:
                for i in range(self.ncols):
                    out[i] += c * tcol[i]
        return out


class FgAbGroup:
    """Finitely generated abelian group presented as cycles/relations.

    The group is span(basis)/span(relations) inside an ambient Z^n.  Its
    coordinates list the free generators first and then the torsion
    generators in increasing invariant-factor order; class_of maps an
    ambient vector of the cycle lattice to those coordinates.
    """

    def __init__(self, basis, relations):
        if basis.rows != relations.rows:
            raise ValueError("basis and relations live in different ambients")
        self.ambient_dim = basis.rows
        self.basis = basis
        self.relations = relations
        self._basis_solver = LatticeSolver(basis)
        self._relation_solver = LatticeSolver(relations)
        r = basis.cols
        t_cols = []
        for col in relations.columns():
            w = self._basis_solver.solve(col)
            if w is None:
                raise IncompatibleComplex(
                    "relations are not contained in the cycle lattice")
            t_cols.append(w)
        t = IntMatrix.from_columns(t_cols, rows=r)
        dec = smith_normal_form(t)
        diag = dec.s.diagonal()
        invariants = [diag[i] if i < len(diag) else 0 for i in range(r)]
        free_slots = [i for i, d in enumerate(invariants) if d == 0]
        torsion_slots = [i for i, d in enumerate(invariants) if d > 1]
        self._slots = free_slots + torsion_slots
        self.free_rank = len(free_slots)
        self.torsion = tuple(invariants[i] for i in torsion_slots)
        # normalize free generators: flip signs so each coordinate
        # functional (a row of U) has positive leading entry; this makes
        # outputs like the shift-space cap matrix come out positive
        u_rows = [list(row) for row in dec.u.data]
        uinv_cols = [list(dec.u_inv.column(j)) for j in range(r)]
        for slot in free_slots:
            lead = next((x for x in u_rows[slot] if x), 0)
            if lead < 0:
                u_rows[slot] = [-x for x in u_rows[slot]]
                uinv_cols[slot] = [-x for x in uinv_cols[slot]]
        self._u = IntMatrix(r, r, u_rows)
        # representative of generator g: basis * u_inv * e_slot
        reps = []
        for slot in self._slots:
            reps.append(basis.apply(uinv_cols[slot]))
        self._reps = reps

    @property
    def ngens(self):
        return len(self._slots)

    def is_trivial(self):
        return self.ngens == 0

    def invariants(self):
        """Invariant factor list, 0 denoting Z summands, free part first."""
        return (0,) * self.free_rank + self.torsion

    def orders(self):
        """Order of each generator coordinate (0 = infinite)."""
        return self.invariants()

    def contains_cycle(self, vec):
        return self._basis_solver.contains(vec)

    def class_of(self, vec):
        """Coordinates of the class of an ambient cycle vector."""
        w = self._basis_solver.solve(vec)
        if w is None:
            raise NotInLattice("vector is not in the cycle lattice")
        y = self._u.apply(w)
        return self.normalize(tuple(y[slot] for slot in self._slots))

    def representative(self, i):
        """Ambient vector representing generator i."""
        return self._reps[i]

    def zero(self):
        return (0,) * self.ngens

    def normalize(self, coords):
        coords = tuple(coords)
        if len(coords) != self.ngens:
            raise ValueError("coordinate length mismatch")
        free = coords[:self.free_rank]
        tors = tuple(c % d for c, d in zip(coords[self.free_rank:], self.torsion))
        return free + tors

    def add(self, a, b):
        return self.normalize(tuple(x + y for x, y in zip(a, b)))

    def neg(self, a):
        return self.normalize(tuple(-x for x in a))

    def scale(self, k, a):
        return self.normalize(tuple(k * x for x in a))

    def is_zero(self, coords):
        return all(x == 0 for x in self.normalize(coords))

    def element_vector(self, coords):
        """An ambient representative of the element with these coordinates."""
        coords = self.normalize(coords)
        out = [0] * self.ambient_dim
        for c, rep in zip(coords, self._reps):
            if c:
                for i in range(self.ambient_dim):
                    out[i] += c * rep[i]
        return tuple(out)

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"

    def __repr__(self):
        return f"FgAbGroup({self})"

    def isomorphic_to(self, other):
        return (self.free_rank == other.free_rank and self.torsion == other.torsion)


def quotient_by_relations(basis, relations):
    """span(basis) / span(relations) as an FgAbGroup."""
    return FgAbGroup(basis, relations)


def subquotient_group(kernel_of, image_of):
    """Ker(kernel_of) / Im(image_of) as an FgAbGroup.

    Raises IncompatibleComplex when the image does not sit inside the
    kernel, which signals a corrupted chain complex.
    """
    if kernel_of.cols != image_of.rows:
        raise ValueError("kernel_of acts on a different ambient than image_of maps to")
    basis = kernel_basis(kernel_of)
    return FgAbGroup(basis, image_of)


def full_lattice_group(ambient_dim, relations):
    """Z^n / span(relations)."""
    return FgAbGroup(IntMatrix.identity(ambient_dim), relations)


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between FgAbGroups given on generator coordinates.

    columns[j] is the image (codomain coordinates) of domain generator j.
    """

    domain: FgAbGroup
    codomain: FgAbGroup
    columns: tuple

    def apply(self, coords):
        coords = self.domain.normalize(coords)
        out = self.codomain.zero()
        for c, col in zip(coords, self.columns):
            if c:
                out = self.codomain.add(out, self.codomain.scale(c, col))
        return out

    def compose(self, other):
        """self after other."""
        if other.codomain is not self.domain and not (
                other.codomain.isomorphic_to(self.domain)
                and other.codomain.basis == self.domain.basis
                and other.codomain.relations == self.domain.relations):
            raise ValueError("composition domain/codomain mismatch")
        cols = tuple(self.apply(col) for col in other.columns)
        return GroupHom(other.domain, self.codomain, cols)

    def matrix_rows(self):
        """Image coordinates as rows (one row per domain generator)."""
        return [list(col) for col in self.columns]

    def is_identity(self):
        if self.domain.ngens != self.codomain.ngens:
            return False
        for j, col in enumerate(self.columns):
            want = tuple(1 if i == j else 0 for i in range(self.codomain.ngens))
            if self.codomain.normalize(col) != self.codomain.normalize(want):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        if len(self.columns) != len(other.columns):
            return False
        return all(self.codomain.normalize(a) == other.codomain.normalize(b)
                   for a, b in zip(self.columns, other.columns))


def induced_hom(f_ambient, dom, cod):
    """Map on subquotients induced by an ambient integer matrix.

    Checks that the matrix carries dom's cycle lattice into cod's cycle
    lattice and dom's relation lattice into cod's relation lattice;
    raises NotChainMap otherwise.
    """
    if f_ambient.cols != dom.ambient_dim or f_ambient.rows != cod.ambient_dim:
        raise ValueError("ambient shape mismatch")
    for col in dom.basis.columns():
        if not cod.contains_cycle(f_ambient.apply(col)):
            raise NotChainMap("image of a cycle is not a cycle")
    for col in dom.relations.columns():
        if not cod._relation_solver.contains(f_ambient.apply(col)):
            raise NotChainMap("image of a relation is not a relation")
    cols = tuple(cod.class_of(f_ambient.apply(dom.representative(i)))
                 for i in range(dom.ngens))
    return GroupHom(dom, cod, cols)
