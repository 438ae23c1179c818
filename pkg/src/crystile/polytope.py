"""Exact convex-polytope kernel for n <= 3 under a rational Gram inner product.

All set logic is exact rational: halfspace intersection, face enumeration,
volumes, congruence matching, and facet-to-facet classification use no
floating predicates anywhere.  Volumes are lattice-normalized (Euclidean
volume divided by sqrt(det G)), which keeps them rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from itertools import combinations

from .rational import Q, ZERO, ONE, rat
from .linalg import (
    Mat,
    Vec,
    gram_dot,
    gram_norm2,
    mat,
    mat_det,
    mat_inv,
    mat_rank,
    mat_vec,
    nullspace,
    solve_linear,
    transpose,
    vadd,
    vec,
    vsub,
)
from .isometry import Frame, Isometry, IsometryError


class PolytopeError(ValueError):
    pass


class InteriorOverlapError(PolytopeError):
    """Raised when a facet-to-facet classification meets overlapping interiors."""


@dataclass(frozen=True)
class HalfSpace:
    """The set {x : <normal, x>_G >= offset}; normal is in frame coordinates."""

    normal: Vec
    offset: object

    def __post_init__(self):
        object.__setattr__(self, "normal", vec(self.normal))
        object.__setattr__(self, "offset", rat(self.offset))
        if all(a == 0 for a in self.normal):
            raise PolytopeError("zero normal")


def _angular_cmp(a, b):
    # exact CCW comparison of nonzero direction vectors (2 components)
    ha = 0 if (a[1] > 0 or (a[1] == 0 and a[0] > 0)) else 1
    hb = 0 if (b[1] > 0 or (b[1] == 0 and b[0] > 0)) else 1
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return 0


def _sort_ccw(points, center):
    dirs = [(vsub(p, center), p) for p in points]
    dirs.sort(key=cmp_to_key(lambda x, y: _angular_cmp(x[0], y[0])))
    return [p for _, p in dirs]


def _affine_rank(points) -> int:
    if len(points) <= 1:
        return 0
    p0 = points[0]
    return mat_rank(tuple(vsub(p, p0) for p in points[1:]))


class ConvexPolytope:
    """Dual V-rep/H-rep convex polytope with exact rational data.

    Vertices are kept sorted lexicographically (the canonical form used
    for exact tile comparison); facet halfspaces are computed on demand
    and cached.  Lower-dimensional polytopes (faces) carry vertex lists
    only.
    """

    __slots__ = ("frame", "vertices", "_facets", "_dim", "_bbox", "_cycle", "_hash")

    def __init__(self, frame: Frame, vertices, assume_minimal: bool = False, _facets=None):
        pts = sorted(set(vec(p) for p in vertices))
        if not pts:
            raise PolytopeError("empty vertex list")
        if any(len(p) != frame.dim for p in pts):
            raise PolytopeError("vertex dimension mismatch")
        if not assume_minimal:
            pts = _extreme_points(frame, pts)
        self.frame = frame
        self.vertices = tuple(pts)
        self._facets = _facets
        self._dim = None
        self._bbox = None
        self._cycle = None
        self._hash = None

    # -- identity -----------------------------------------------------------

    def key(self):
        return (self.frame, self.vertices)

    def __eq__(self, other):
        return isinstance(other, ConvexPolytope) and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        vs = ", ".join("(" + ",".join(str(x) for x in p) + ")" for p in self.vertices)
        return f"ConvexPolytope[{vs}]"

    # -- basic geometry -------------------------------------------------------

    @property
    def dim(self) -> int:
        if self._dim is None:
            self._dim = _affine_rank(self.vertices)
        return self._dim

    def bounding_box(self):
        if self._bbox is None:
            n = self.frame.dim
            self._bbox = tuple(
                (min(p[i] for p in self.vertices), max(p[i] for p in self.vertices))
                for i in range(n)
            )
        return self._bbox

    def cyclic_vertices(self):
        """Vertices in CCW order (2D full-dimensional polygons only)."""
        if self.frame.dim != 2 or self.dim != 2:
            raise PolytopeError("cyclic order is for full-dimensional polygons")
        if self._cycle is None:
            c = _centroid(self.vertices)
            self._cycle = tuple(_sort_ccw(self.vertices, c))
        return self._cycle

    def facets(self):
        """Facet halfspaces; the polytope is their intersection."""
        if self._facets is None:
            if self.dim != self.frame.dim:
                raise PolytopeError("H-rep requires a full-dimensional polytope")
            self._facets = _facets_from_vertices(self.frame, self)
        return self._facets

    def contains(self, x) -> bool:
        x = vec(x)
        g = self.frame.gram
        return all(gram_dot(g, h.normal, x) >= h.offset for h in self.facets())

    def strictly_contains(self, x) -> bool:
        x = vec(x)
        g = self.frame.gram
        return all(gram_dot(g, h.normal, x) > h.offset for h in self.facets())

    def translate(self, v) -> "ConvexPolytope":
        v = vec(v)
        g = self.frame.gram
        moved = None
        if self._facets is not None:
            moved = tuple(
                HalfSpace(h.normal, h.offset + gram_dot(g, h.normal, v)) for h in self._facets
            )
        out = ConvexPolytope(
            self.frame, [vadd(p, v) for p in self.vertices], assume_minimal=True, _facets=moved
        )
        return out

    def transform(self, iso: Isometry) -> "ConvexPolytope":
        if iso.frame != self.frame:
            raise PolytopeError("isometry frame mismatch")
        return ConvexPolytope(iso.target, [iso(p) for p in self.vertices], assume_minimal=True)


def _centroid(points):
    n = len(points)
    inv = Q(1, n)
    acc = points[0]
    for p in points[1:]:
        acc = vadd(acc, p)
    return tuple(x * inv for x in acc)


def _extreme_points(frame: Frame, pts):
    """Minimal generating subset of a point list (exact)."""
    if len(pts) <= 2:
        return pts if len(pts) < 2 or pts[0] != pts[1] else pts[:1]
    rank = _affine_rank(pts)
    if frame.dim == 2 and rank == 2:
        return sorted(_hull_2d(pts))
    if rank == 1:
        # keep the two ends of the segment
        p0 = pts[0]
        d = next(vsub(p, p0) for p in pts if p != p0)
        i = next(i for i, x in enumerate(d) if x != 0)
        span = sorted(pts, key=lambda p: (p[i] - p0[i]) / d[i])
        ends = {span[0], span[-1]}
        return sorted(ends)
    # general exact redundancy elimination: p is a vertex iff it is not in
    # the hull of the remaining points
    keep = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1 :]
        if not _in_hull(frame, p, others):
            keep.append(p)
    return keep


def _hull_2d(pts):
    pts = sorted(pts)

    def half(points):
        out = []
        for p in points:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
                if cross <= 0:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = half(pts)
    upper = half(list(reversed(pts)))
    return lower[:-1] + upper[:-1]


def _supporting_halfspaces(frame: Frame, pts):
    """All supporting hyperplanes of conv(pts) spanned by point subsets.

    Brute force over (dim)-subsets; used only on user-supplied vertex data.
    """
    n = frame.dim
    ginv = mat_inv(frame.gram)
    found = {}
    for sub in combinations(pts, n):
        if _affine_rank(sub) != n - 1:
            continue
        f = _coordinate_normal(sub)
        if f is None:
            continue
        c = sum((a * b for a, b in zip(f, sub[0])), ZERO)
        vals = [sum((a * b for a, b in zip(f, p)), ZERO) for p in pts]
        if all(v >= c for v in vals):
            pass
        elif all(v <= c for v in vals):
            f = tuple(-x for x in f)
            c = -c
        else:
            continue
        lead = next(x for x in f if x != 0)
        scale = ONE / abs(lead)
        key = (tuple(x * scale for x in f), c * scale)
        if key not in found:
            found[key] = HalfSpace(mat_vec(ginv, f), c)
    return list(found.values())


def _coordinate_normal(points):
    """Coordinate functional vanishing on the affine hull of n points (rank n-1)."""
    p0 = points[0]
    rows = tuple(vsub(p, p0) for p in points[1:])
    ker = nullspace(rows)
    if len(ker) != 1:
        return None
    return ker[0]


def _in_hull(frame: Frame, p, pts) -> bool:
    rank = _affine_rank(pts)
    if rank < _affine_rank(list(pts) + [p]):
        return False
    if rank == 0:
        return p == pts[0]
    if rank == frame.dim:
        g = frame.gram
        return all(
            gram_dot(g, h.normal, p) >= h.offset for h in _supporting_halfspaces(frame, pts)
        )
    # lower-dimensional hull: restrict to affine coordinates and recurse
    p0 = pts[0]
    basis = _independent_directions(pts, rank)
    coords = [_affine_coords(q, p0, basis) for q in pts]
    pc = _affine_coords(p, p0, basis)
    if pc is None or any(c is None for c in coords):
        return False
    sub = Frame(rank, _sub_gram(frame.gram, basis))
    return _in_hull(sub, pc, [c for c in coords])


def _independent_directions(pts, rank):
    p0 = pts[0]
    dirs = []
    for p in pts[1:]:
        d = vsub(p, p0)
        if mat_rank(tuple(dirs + [d])) > len(dirs):
            dirs.append(d)
        if len(dirs) == rank:
            break
    return dirs


def _affine_coords(p, p0, basis):
    cols = transpose(tuple(basis))
    return solve_linear(cols, vsub(p, p0))


def _sub_gram(gram, basis):
    return tuple(tuple(gram_dot(gram, bi, bj) for bj in basis) for bi in basis)


def _facets_from_vertices(frame: Frame, poly: ConvexPolytope):
    n = frame.dim
    ginv = mat_inv(frame.gram)
    pts = poly.vertices
    if n == 1:
        lo, hi = pts[0][0], pts[-1][0]
        a = mat_vec(ginv, (ONE,))
        return (HalfSpace(a, lo), HalfSpace(tuple(-x for x in a), -hi))
    if n == 2:
        cyc = poly.cyclic_vertices()
        out = []
        c = _centroid(pts)
        for i, u in enumerate(cyc):
            w = cyc[(i + 1) % len(cyc)]
            d = vsub(w, u)
            f = (-d[1], d[0])
            cv = f[0] * u[0] + f[1] * u[1]
            if f[0] * c[0] + f[1] * c[1] < cv:
                f = (-f[0], -f[1])
                cv = -cv
            out.append(HalfSpace(mat_vec(ginv, f), cv))
        return tuple(out)
    return tuple(_supporting_halfspaces(frame, pts))


def faces(poly: ConvexPolytope, m: int):
    """All m-faces as (lower-dimensional) polytopes, 0 <= m < dim."""
    n = poly.dim
    if not 0 <= m < n:
        raise PolytopeError(f"face dimension {m} out of range for a {n}-polytope")
    if m == 0:
        return [ConvexPolytope(poly.frame, [p], assume_minimal=True) for p in poly.vertices]
    if m == n - 1:
        out = []
        g = poly.frame.gram
        for h in poly.facets():
            on = [p for p in poly.vertices if gram_dot(g, h.normal, p) == h.offset]
            out.append(ConvexPolytope(poly.frame, on, assume_minimal=True))
        return out
    # n == 3, m == 1: edges via common active facets of rank 2
    return _edges_3d(poly)


def _edges_3d(poly: ConvexPolytope):
    g = poly.frame.gram
    hs = poly.facets()
    active = []
    for p in poly.vertices:
        active.append({i for i, h in enumerate(hs) if gram_dot(g, h.normal, p) == h.offset})
    out = []
    for (i, u), (j, w) in combinations(enumerate(poly.vertices), 2):
        common = active[i] & active[j]
        if len(common) < 2:
            continue
        normals = tuple(hs[k].normal for k in common)
        if mat_rank(normals) == 2:
            out.append(ConvexPolytope(poly.frame, [u, w], assume_minimal=True))
    return out


def face_vertex_sets(poly: ConvexPolytope):
    """Frozensets of vertex tuples for every proper face (all dimensions)."""
    out = set()
    for m in range(0, poly.dim):
        for f in faces(poly, m):
            out.add(frozenset(f.vertices))
    return out


def volume(poly: ConvexPolytope):
    """Exact lattice-normalized volume (Euclidean volume / sqrt(det G))."""
    n = poly.frame.dim
    if poly.dim != n:
        raise PolytopeError("volume requires a full-dimensional polytope")
    if n == 1:
        return poly.vertices[-1][0] - poly.vertices[0][0]
    if n == 2:
        cyc = poly.cyclic_vertices()
        acc = ZERO
        for i, u in enumerate(cyc):
            w = cyc[(i + 1) % len(cyc)]
            acc += u[0] * w[1] - u[1] * w[0]
        return abs(acc) / 2
    # n == 3: cone facet triangulations over a base vertex
    base = poly.vertices[0]
    acc = ZERO
    for fpoly in faces(poly, 2):
        ring = _facet_cycle_3d(fpoly)
        for i in range(1, len(ring) - 1):
            e1 = vsub(ring[0], base)
            e2 = vsub(ring[i], base)
            e3 = vsub(ring[i + 1], base)
            acc += abs(mat_det((e1, e2, e3)))
    return acc / 6


def _facet_cycle_3d(fpoly: ConvexPolytope):
    pts = fpoly.vertices
    if len(pts) == 3:
        return list(pts)
    p0 = pts[0]
    basis = _independent_directions(pts, 2)
    coords = [_affine_coords(p, p0, basis) for p in pts]
    c = _centroid(coords)
    order = _sort_ccw(coords, c)
    back = {tuple(cc): p for cc, p in zip(coords, pts)}
    return [back[tuple(cc)] for cc in order]


def simplex_decomposition(poly: ConvexPolytope):
    """A fan of simplices (as polytopes) from the first vertex; parts tile poly."""
    n = poly.frame.dim
    if n == 2:
        cyc = list(poly.cyclic_vertices())
        base = cyc[0]
        return [
            ConvexPolytope(poly.frame, [base, cyc[i], cyc[i + 1]], assume_minimal=True)
            for i in range(1, len(cyc) - 1)
        ]
    base = poly.vertices[0]
    parts = []
    for fpoly in faces(poly, 2):
        ring = _facet_cycle_3d(fpoly)
        for i in range(1, len(ring) - 1):
            simplex = [base, ring[0], ring[i], ring[i + 1]]
            if _affine_rank(simplex) == 3:
                parts.append(ConvexPolytope(poly.frame, simplex, assume_minimal=True))
    return parts


# --- halfspace intersection --------------------------------------------------

def halfspace_intersection(frame: Frame, halfspaces):
    """Exact intersection of halfspaces: a polytope, "unbounded", or "empty"."""
    hs = list(halfspaces)
    n = frame.dim
    g = frame.gram
    if not hs:
        return "unbounded"
    rows = tuple(mat_vec(g, h.normal) for h in hs)
    if mat_rank(rows) < n:
        return "unbounded" if _feasible(frame, hs) else "empty"
    pts = _candidate_vertices(frame, hs)
    if not pts:
        return "empty"
    if _has_recession_ray(frame, hs):
        return "unbounded"
    return ConvexPolytope(frame, pts, assume_minimal=True)


def _candidate_vertices(frame: Frame, hs):
    n = frame.dim
    g = frame.gram
    rows = [mat_vec(g, h.normal) for h in hs]
    out = set()
    for idx in combinations(range(len(hs)), n):
        sys_rows = tuple(rows[i] for i in idx)
        if mat_rank(sys_rows) != n:
            continue
        x = solve_linear(sys_rows, tuple(hs[i].offset for i in idx))
        if x is None:
            continue
        if all(gram_dot(g, h.normal, x) >= h.offset for h in hs):
            out.add(x)
    return sorted(out)


def _has_recession_ray(frame: Frame, hs) -> bool:
    """Pointed-case check: any extreme recession direction lies on n-1
    independent active constraints of the cone {d : <a_i, d>_G >= 0}."""
    n = frame.dim
    g = frame.gram
    rows = [mat_vec(g, h.normal) for h in hs]

    def admissible(d):
        return not all(x == 0 for x in d) and all(
            sum((r * x for r, x in zip(row, d)), ZERO) >= 0 for row in rows
        )

    if n == 1:
        return admissible((ONE,)) or admissible((-ONE,))
    for idx in combinations(range(len(hs)), n - 1):
        sub = tuple(rows[i] for i in idx)
        if mat_rank(sub) != n - 1:
            continue
        ker = nullspace(sub)
        if len(ker) != 1:
            continue
        d = ker[0]
        if admissible(d) or admissible(tuple(-x for x in d)):
            return True
    return False


def _feasible(frame: Frame, hs) -> bool:
    """Exact feasibility of an intersection of halfspaces (any rank)."""
    if not hs:
        return True
    n = frame.dim
    g = frame.gram
    rows = tuple(mat_vec(g, h.normal) for h in hs)
    r = mat_rank(rows)
    if r == n:
        return bool(_candidate_vertices(frame, hs))
    # constraints only see the span of their normals; restrict and recurse
    normals = [h.normal for h in hs]
    basis = _independent_directions([vec([ZERO] * n)] + normals, r)
    sub_gram = _sub_gram(g, basis)
    sub = Frame(r, sub_gram)
    ginv = mat_inv(sub_gram)
    sub_hs = []
    for h in hs:
        coeffs = tuple(gram_dot(g, h.normal, b) for b in basis)
        a = mat_vec(ginv, coeffs)
        sub_hs.append(HalfSpace(a, h.offset))
    return _feasible(sub, sub_hs)


# --- congruence ---------------------------------------------------------------

def congruent(p: ConvexPolytope, q: ConvexPolytope):
    """An exact isometry with phi(p) == q (as vertex sets), or None.

    Matches squared-distance signatures first, then solves for the affine
    map from an affinely independent anchor tuple and verifies exactly.
    """
    if p.frame != q.frame:
        raise PolytopeError("congruence requires a common frame")
    if len(p.vertices) != len(q.vertices) or p.dim != q.dim:
        return None
    n = p.frame.dim
    if p.dim != n:
        raise PolytopeError("congruence implemented for full-dimensional polytopes")
    g = p.frame.gram

    def profile(pts):
        return sorted(
            sorted(gram_norm2(g, vsub(a, b)) for b in pts) for a in pts
        )

    if profile(p.vertices) != profile(q.vertices):
        return None

    anchors = [p.vertices[0]]
    for cand in p.vertices[1:]:
        trial = anchors + [cand]
        if _affine_rank(trial) == len(trial) - 1:
            anchors.append(cand)
        if len(anchors) == n + 1:
            break
    a0 = anchors[0]
    acols = transpose(tuple(vsub(a, a0) for a in anchors[1:]))
    ainv = mat_inv(acols)
    dists = [[gram_norm2(g, vsub(a, b)) for b in anchors] for a in anchors]

    def tuple_candidates(i, chosen):
        if i == len(anchors):
            yield chosen
            return
        for b in q.vertices:
            if all(gram_norm2(g, vsub(b, chosen[j])) == dists[i][j] for j in range(i)):
                yield from tuple_candidates(i + 1, chosen + [b])

    qset = set(q.vertices)
    for image in tuple_candidates(0, []):
        b0 = image[0]
        bcols = transpose(tuple(vsub(b, b0) for b in image[1:]))
        lin = tuple(tuple(row) for row in _mat_mul(bcols, ainv))
        trans = vsub(b0, mat_vec(lin, a0))
        try:
            iso = Isometry(p.frame, lin, trans)
        except IsometryError:
            continue
        if {iso(v) for v in p.vertices} == qset:
            return iso
    return None


def _mat_mul(a, b):
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in bt) for row in a)


# --- metric helpers -----------------------------------------------------------

def sq_distance_point(poly: ConvexPolytope, x):
    """Exact squared Gram distance from a point to the polytope."""
    x = vec(x)
    g = poly.frame.gram
    if poly.dim == poly.frame.dim and poly.contains(x):
        return ZERO
    best = min(gram_norm2(g, vsub(x, v)) for v in poly.vertices)
    # edges
    edge_list = []
    if poly.dim >= 1:
        if poly.frame.dim == 2 and poly.dim == 2:
            cyc = poly.cyclic_vertices()
            edge_list = [(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]
        elif poly.dim == 1:
            edge_list = [(poly.vertices[0], poly.vertices[-1])]
        elif poly.dim == 2:
            ring = _facet_cycle_3d(poly)
            edge_list = [(ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))]
        else:
            edge_list = [(e.vertices[0], e.vertices[1]) for e in faces(poly, 1)]
    for u, w in edge_list:
        d = vsub(w, u)
        den = gram_norm2(g, d)
        t = gram_dot(g, vsub(x, u), d) / den
        if 0 < t < 1:
            proj = vadd(u, tuple(t * c for c in d))
            best = min(best, gram_norm2(g, vsub(x, proj)))
    if poly.frame.dim == 3 and poly.dim >= 2:
        fps = faces(poly, 2) if poly.dim == 3 else [poly]
        for fp in fps:
            val = _facet_proj_sq_distance(fp, x, g)
            if val is not None:
                best = min(best, val)
    return best


def _facet_proj_sq_distance(fpoly: ConvexPolytope, x, g):
    pts = fpoly.vertices
    p0 = pts[0]
    basis = _independent_directions(pts, 2)
    rows = tuple(tuple(gram_dot(g, bi, bj) for bj in basis) for bi in basis)
    rhs = tuple(gram_dot(g, bi, vsub(x, p0)) for bi in basis)
    st = solve_linear(rows, rhs)
    if st is None:
        return None
    proj = vadd(p0, vadd(tuple(st[0] * c for c in basis[0]), tuple(st[1] * c for c in basis[1])))
    coords = [_affine_coords(p, p0, basis) for p in pts]
    pc = (st[0], st[1])
    c2 = _centroid(coords)
    ring = _sort_ccw(coords, c2)
    m = len(ring)
    for i in range(m):
        a, b = ring[i], ring[(i + 1) % m]
        cross = (b[0] - a[0]) * (pc[1] - a[1]) - (b[1] - a[1]) * (pc[0] - a[0])
        if cross < 0:
            return None
    return gram_norm2(g, vsub(x, proj))


def ball_intersects(poly: ConvexPolytope, center, r2) -> bool:
    return sq_distance_point(poly, center) <= rat(r2)


# --- facet-to-facet classification --------------------------------------------

@dataclass(frozen=True)
class MeetResult:
    kind: str          # "disjoint" | "shared-face" | "violation"
    face_dim: int = -1
    witness: tuple = ()


def meet_face_to_face(p: ConvexPolytope, q: ConvexPolytope) -> MeetResult:
    """Classify how two tiles meet.

    Returns shared-face(m) when p n q is a face of BOTH, a violation
    witness otherwise; overlapping interiors raise InteriorOverlapError.
    """
    if p.frame != q.frame:
        raise PolytopeError("frame mismatch")
    n = p.frame.dim
    g = p.frame.gram
    inter = _intersection_vertices(p, q)
    if not inter:
        return MeetResult("disjoint")
    rank = _affine_rank(inter)
    if rank == n:
        raise InteriorOverlapError(f"interiors overlap; intersection spans dimension {n}")
    vset = frozenset(inter)
    if vset in face_vertex_sets(p) and vset in face_vertex_sets(q):
        return MeetResult("shared-face", face_dim=rank, witness=tuple(inter))
    return MeetResult("violation", face_dim=rank, witness=tuple(inter))


def _intersection_vertices(p: ConvexPolytope, q: ConvexPolytope):
    n = p.frame.dim
    g = p.frame.gram
    # cheap reject via coordinate bounding boxes
    for (lo1, hi1), (lo2, hi2) in zip(p.bounding_box(), q.bounding_box()):
        if hi1 < lo2 or hi2 < lo1:
            return []
    hs = list(p.facets()) + list(q.facets())
    rows = [mat_vec(g, h.normal) for h in hs]
    out = set()
    for idx in combinations(range(len(hs)), n):
        sys_rows = tuple(rows[i] for i in idx)
        if mat_rank(sys_rows) != n:
            continue
        x = solve_linear(sys_rows, tuple(hs[i].offset for i in idx))
        if x is None:
            continue
        if p.contains(x) and q.contains(x):
            out.add(x)
    return sorted(out)
