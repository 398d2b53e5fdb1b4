"""Cohomology and Alexander-Whitney cup products of 2-dimensional
Delta-complexes.

Faces are ordered triangles with explicit edge slots and orientation
signs; repeated vertices and edges are legal, so arbitrary identifications
can be encoded.  Polygonal cells enter pre-triangulated, carrying an
aggregation table that remembers which triangles make up each original
cell and which edges are original; coboundaries, cohomology and cup
products of the original cell structure are recovered through it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import (FgAbGroup, IntMatrix, LatticeSolver, full_lattice_group,
                      subquotient_group)


class InconsistentIncidence(ValueError):
    """A face's edge slots do not match its vertex triple."""


class NotACocycle(ValueError):
    """An edge vector expected to lie in Ker delta_2 does not."""


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str


@dataclass(frozen=True)
class Face:
    """Ordered triangle [v0, v1, v2] with slot edges and orientation signs.

    Slot 01 realizes the path v0 -> v1 by edge e01, traversed forwards
    when s01 == +1 and backwards when s01 == -1; slots 12 and 02 likewise.
    """

    id: str
    v: tuple
    e01: str
    e12: str
    e02: str
    s01: int = 1
    s12: int = 1
    s02: int = 1


class DeltaComplex:
    def __init__(self, vertices, edges, faces):
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self.faces = tuple(faces)
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        self.eindex = {e.id: i for i, e in enumerate(self.edges)}
        self.findex = {f.id: i for i, f in enumerate(self.faces)}
        if len(self.vindex) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        if len(self.eindex) != len(self.edges):
            raise ValueError("duplicate edge ids")
        if len(self.findex) != len(self.faces):
            raise ValueError("duplicate face ids")
        for e in self.edges:
            if e.tail not in self.vindex or e.head not in self.vindex:
                raise ValueError(f"edge {e.id} has unknown endpoints")
        for f in self.faces:
            self._check_face(f)

    def _check_face(self, f):
        if len(f.v) != 3 or any(v not in self.vindex for v in f.v):
            raise InconsistentIncidence(f"face {f.id} has a bad vertex triple")
        for slot, eid, sign, a, b in (("01", f.e01, f.s01, f.v[0], f.v[1]),
                                      ("12", f.e12, f.s12, f.v[1], f.v[2]),
                                      ("02", f.e02, f.s02, f.v[0], f.v[2])):
            if eid not in self.eindex:
                raise InconsistentIncidence(f"face {f.id} slot {slot}: unknown edge")
            if sign not in (1, -1):
                raise InconsistentIncidence(f"face {f.id} slot {slot}: sign must be +-1")
            e = self.edges[self.eindex[eid]]
            want = (a, b) if sign == 1 else (b, a)
            if (e.tail, e.head) != want:
                raise InconsistentIncidence(
                    f"face {f.id} slot {slot}: edge {eid} runs "
                    f"{e.tail}->{e.head}, path needs {want[0]}->{want[1]}")


def coboundary_matrices(complex_):
    """(delta_1: edges x vertices, delta_2: faces x edges).

    delta_1 sends a vertex cochain to head minus tail differences;
    delta_2 applies the simplicial signs +slot01 +slot12 -slot02, with
    slot orientations folded in.  Repeated edges accumulate.
    """
    ne, nv, nf = len(complex_.edges), len(complex_.vertices), len(complex_.faces)
    d1 = [[0] * nv for _ in range(ne)]
    for i, e in enumerate(complex_.edges):
        d1[i][complex_.vindex[e.head]] += 1
        d1[i][complex_.vindex[e.tail]] -= 1
    d2 = [[0] * ne for _ in range(nf)]
    for i, f in enumerate(complex_.faces):
        d2[i][complex_.eindex[f.e01]] += f.s01
        d2[i][complex_.eindex[f.e12]] += f.s12
        d2[i][complex_.eindex[f.e02]] -= f.s02
    return IntMatrix(ne, nv, d1), IntMatrix(nf, ne, d2)


def delta_cohomology(complex_):
    """(H^1, H^2) = (Ker d2 / Im d1, Z^F / Im d2) with class_of maps."""
    d1, d2 = coboundary_matrices(complex_)
    h1 = subquotient_group(d2, d1)
    h2 = full_lattice_group(len(complex_.faces), d2)
    return h1, h2


def aw_cup(complex_, xi, eta):
    """Alexander-Whitney product of two edge vectors, as a face vector.

    On each face the value is the first cochain on the [v0,v1] slot times
    the second on the [v1,v2] slot, orientations included.
    """
    xi = list(xi)
    eta = list(eta)
    ne = len(complex_.edges)
    if len(xi) != ne or len(eta) != ne:
        raise ValueError("cochain length does not match the edge count")
    out = []
    for f in complex_.faces:
        a = f.s01 * xi[complex_.eindex[f.e01]]
        b = f.s12 * eta[complex_.eindex[f.e12]]
        out.append(a * b)
    return out


class Aggregation:
    """Original cell structure of a pre-triangulated complex.

    edges lists the original edge ids in their declared order; faces maps
    each original face id, in declared order, to the signed triangles
    that subdivide it.  Triangulation edges are exactly the fine edges
    not listed.
    """

    def __init__(self, edges, faces):
        self.edges = tuple(edges)
        self.faces = tuple((fid, tuple((tid, int(s)) for tid, s in parts))
                           for fid, parts in faces)

    @classmethod
    def identity(cls, complex_):
        return cls([e.id for e in complex_.edges],
                   [(f.id, ((f.id, 1),)) for f in complex_.faces])

    def face_ids(self):
        return tuple(fid for fid, _ in self.faces)


def coarse_coboundaries(complex_, agg):
    """Coboundary matrices of the original cell structure.

    The aggregated face rows must vanish on every triangulation edge
    (internal diagonals cancel in pairs); anything else means the
    aggregation does not describe a subdivision.
    """
    d1, d2 = coboundary_matrices(complex_)
    eidx = [complex_.eindex[e] for e in agg.edges]
    coarse_set = set(eidx)
    d1c = IntMatrix(len(eidx), len(complex_.vertices),
                    [list(d1.data[i]) for i in eidx])
    rows = []
    for fid, parts in agg.faces:
        row = [0] * len(complex_.edges)
        for tid, sign in parts:
            trow = d2.data[complex_.findex[tid]]
            for j in range(len(row)):
                row[j] += sign * trow[j]
        for j, x in enumerate(row):
            if x and j not in coarse_set:
                raise InconsistentIncidence(
                    f"aggregated face {fid} has nonzero coboundary on "
                    f"triangulation edge {complex_.edges[j].id}")
        rows.append([row[j] for j in eidx])
    d2c = IntMatrix(len(agg.faces), len(eidx), rows)
    return d1c, d2c


def coarse_cohomology(complex_, agg):
    d1c, d2c = coarse_coboundaries(complex_, agg)
    h1 = subquotient_group(d2c, d1c)
    h2 = full_lattice_group(len(agg.faces), d2c)
    return h1, h2


def lift_cocycle(complex_, agg, coarse_vec):
    """Extend a cocycle of the original structure over the triangulation
    edges; the extension is required to be unique (true for fan
    triangulations, where diagonal values are forced partial sums)."""
    coarse_vec = list(coarse_vec)
    if len(coarse_vec) != len(agg.edges):
        raise ValueError("cochain length does not match the original edges")
    _, d2 = coboundary_matrices(complex_)
    coarse_pos = {complex_.eindex[e]: k for k, e in enumerate(agg.edges)}
    diag_cols = [j for j in range(len(complex_.edges)) if j not in coarse_pos]
    rhs = []
    for i in range(len(complex_.faces)):
        total = 0
        for j, k in coarse_pos.items():
            total += d2.data[i][j] * coarse_vec[k]
        rhs.append(-total)
    a = IntMatrix.from_columns([[d2.data[i][j] for i in range(len(complex_.faces))]
                                for j in diag_cols],
                               rows=len(complex_.faces))
    solver = LatticeSolver(a)
    if solver.rank != len(diag_cols):
        raise InconsistentIncidence("triangulation does not determine the lift")
    u = solver.solve(rhs)
    if u is None:
        raise NotACocycle("edge vector is not a cocycle of the original structure")
    full = [0] * len(complex_.edges)
    for j, k in coarse_pos.items():
        full[j] = coarse_vec[k]
    for j, val in zip(diag_cols, u):
        full[j] = val
    return full


def coarse_cup(complex_, agg, xi_coarse, eta_coarse):
    """Cup product of original-structure cocycles, as a vector over the
    original faces: lift, take the fine Alexander-Whitney product, and
    sum each face's signed triangle values."""
    xi = lift_cocycle(complex_, agg, xi_coarse)
    eta = lift_cocycle(complex_, agg, eta_coarse)
    fine = aw_cup(complex_, xi, eta)
    out = []
    for _, parts in agg.faces:
        out.append(sum(sign * fine[complex_.findex[tid]] for tid, sign in parts))
    return out


def polygon_complex(vertices, edges, polygons):
    """Triangulated complex of a 2d cell structure with polygonal faces.

    polygons maps each face id to its closed boundary word, a list of
    (edge id, direction) steps; corners may revisit vertices and edges
    may repeat (in cancelling pairs).  Each polygon gets a center vertex
    and one spoke per corner, and each boundary step one triangle
    [center, step tail, step head]; every slot is then traversed
    forwards, so the result is an honest ordered Delta-complex and the
    Alexander-Whitney product on it is canonical.  Returns the complex
    together with the aggregation onto the original cells.
    """
    edges = list(edges)
    edge_by_id = {e.id: e for e in edges}
    all_vertices = list(vertices)
    fine_edges = list(edges)
    fine_faces = []
    agg_faces = []
    for fid, word in polygons:
        if not word:
            raise ValueError(f"face {fid} has an empty boundary word")
        corners = []
        for eid, direction in word:
            e = edge_by_id[eid]
            corners.append(e.tail if direction == 1 else e.head)
        # closure check: head of each step is the tail of the next
        prev_head = None
        for k, (eid, direction) in enumerate(word):
            e = edge_by_id[eid]
            tail = e.tail if direction == 1 else e.head
            head = e.head if direction == 1 else e.tail
            if prev_head is not None and tail != prev_head:
                raise InconsistentIncidence(
                    f"face {fid}: steps {k - 1} and {k} do not meet")
            prev_head = head
        first_tail = (edge_by_id[word[0][0]].tail if word[0][1] == 1
                      else edge_by_id[word[0][0]].head)
        if prev_head != first_tail:
            raise InconsistentIncidence(f"face {fid}: boundary word is not closed")
        center = f"{fid}.c"
        all_vertices.append(center)
        spokes = []
        for k in range(len(word)):
            spokes.append(Edge(f"{fid}.s{k}", center, corners[k]))
        fine_edges.extend(spokes)
        parts = []
        for k, (eid, direction) in enumerate(word):
            e = edge_by_id[eid]
            tail_spoke = spokes[k]
            head_spoke = spokes[(k + 1) % len(word)]
            if direction == 1:
                tri = Face(f"{fid}.t{k}", (center, e.tail, e.head),
                           tail_spoke.id, eid, head_spoke.id, 1, 1, 1)
            else:
                tri = Face(f"{fid}.t{k}", (center, e.tail, e.head),
                           head_spoke.id, eid, tail_spoke.id, 1, 1, 1)
            fine_faces.append(tri)
            parts.append((tri.id, direction))
        agg_faces.append((fid, parts))
    complex_ = DeltaComplex(all_vertices, fine_edges, fine_faces)
    agg = Aggregation([e.id for e in edges], agg_faces)
    return complex_, agg


def face_words(complex_):
    """Boundary words of the faces of a plain triangle complex, used to
    re-triangulate it canonically via polygon_complex."""
    out = []
    for f in complex_.faces:
        out.append((f.id, [(f.e01, f.s01), (f.e12, f.s12), (f.e02, -f.s02)]))
    return out


class FaceBasis:
    """A chosen basis of H^2 given by face vectors, with exact reduction."""

    def __init__(self, h2, ambient_vectors, labels=None):
        self.h2 = h2
        self.labels = tuple(labels) if labels else tuple(
            f"b{i}" for i in range(len(ambient_vectors)))
        cols = [h2.class_of(v) for v in ambient_vectors]
        if len(cols) != h2.ngens:
            raise ValueError("basis size does not match the rank of H^2")
        self._solver = LatticeSolver(IntMatrix.from_columns(cols, rows=h2.ngens))
        if self._solver.rank != h2.ngens:
            raise ValueError("declared classes do not form a basis")
        # a basis must also generate: every unit coordinate vector solvable
        for i in range(h2.ngens):
            unit = [1 if j == i else 0 for j in range(h2.ngens)]
            if self._solver.solve(unit) is None:
                raise ValueError("declared classes do not generate H^2")

    def reduce(self, face_vector):
        """Coordinates of a face vector's class in the declared basis."""
        coords = self._solver.solve(list(self.h2.class_of(face_vector)))
        assert coords is not None
        return tuple(coords)
