"""Periodic simple tilings: patches, automorphism groups, LD/MLD, metric bounds.

A PeriodicTiling stores one canonical tile per lattice coset (the lattice
is the frame's integer span).  All comparisons are exact: tiles are
canonicalized mod the lattice and compared as vertex sets, so tiling
equality, patch equality, and automorphism verification involve no
tolerances.  Only the metric values of distance bounds are floats.

The hull of a tiling with crystallographic automorphism group Aut(T) is,
as a topological space with its isometry action, the group quotient
Isom(E^n)/Aut(T); it is not modeled here beyond that description.  When
gamma Aut(T) gamma^-1 sits inside Aut(T') with index d (subgroup_index),
the induced map between the hulls is surjective and d-to-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

from .rational import Q, ZERO, rat, frac_part
from .linalg import (
    Mat,
    Vec,
    gram_norm2,
    hermite_column_basis,
    identity_mat,
    is_integral_mat,
    is_integral_vec,
    mat_inv,
    mat_mul,
    mat_vec,
    transpose,
    vadd,
    vec,
    vsub,
    zero_vec,
    common_denominator,
)
from .isometry import (
    Frame,
    Isometry,
    IsometryError,
    compose,
    identity_iso,
    inverse,
    iso_size,
    translation_iso,
)
from .groups import (
    CrystalGroup,
    conjugacy_search,
    is_conjugate_subgroup,
    lattice_isometries,
    validate_group,
)
from .polytope import (
    ConvexPolytope,
    InteriorOverlapError,
    congruent,
    meet_face_to_face,
    sq_distance_point,
    volume,
)

LN_3_2 = math.log(1.5)
WITNESS_SLACK = 1e-9
PATCH_ENUM_RADIUS = Q(8)   # enumerated patch-equality radii are capped here
RADIUS_CAP = Q(1 << 20)    # stand-in for "arbitrarily large" witness radii


class TilingValidationError(ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("tiling validation failed: " + "; ".join(map(str, self.problems)))


@dataclass(frozen=True)
class Provenance:
    kind: str
    group: CrystalGroup = field(default=None, compare=False)
    base_point: Vec = field(default=None, compare=False)
    base_cell: ConvexPolytope = field(default=None, compare=False)
    apex: Vec = field(default=None, compare=False)


@dataclass(frozen=True)
class PeriodicTiling:
    frame: Frame
    cell_tiles: tuple
    provenance: Provenance = field(default=None, compare=False)

    @property
    def dim(self) -> int:
        return self.frame.dim

    def tile_keys(self):
        return frozenset(t.vertices for t in self.cell_tiles)


def canonical_tile(tile: ConvexPolytope) -> ConvexPolytope:
    """Translate by a lattice vector so the least vertex lies in [0,1)^n."""
    v0 = tile.vertices[0]
    shift = tuple(-math.floor(c) for c in v0)
    if all(s == 0 for s in shift):
        return tile
    return tile.translate(shift)


def periodic_tiling(frame: Frame, tiles, provenance=None, validate=True) -> PeriodicTiling:
    canon = sorted({canonical_tile(t) for t in tiles}, key=lambda t: t.vertices)
    tiling = PeriodicTiling(frame=frame, cell_tiles=tuple(canon), provenance=provenance)
    if validate:
        problems = validate_tiling(tiling)
        if problems:
            raise TilingValidationError(problems)
    return tiling


def validate_tiling(tiling: PeriodicTiling) -> list:
    """Exact checks: unit covolume and facet-to-facet meeting of neighbors.

    Neighbor offsets are derived from bounding boxes, which covers at
    least the 3x3(x3) block and also catches wide tiles whose neighbors
    sit further out.
    """
    problems = []
    n = tiling.frame.dim
    total = ZERO
    for t in tiling.cell_tiles:
        if t.dim != n:
            problems.append("tile is not full-dimensional")
            return problems
        total += volume(t)
    if total != 1:
        problems.append(f"cell volumes sum to {total}, expected 1")
    g = tiling.frame.gram
    for i, t in enumerate(tiling.cell_tiles):
        box_t = t.bounding_box()
        for j in range(i, len(tiling.cell_tiles)):
            s = tiling.cell_tiles[j]
            box_s = s.bounding_box()
            ranges = [
                range(math.ceil(lo1 - hi2), math.floor(hi1 - lo2) + 1)
                for (lo1, hi1), (lo2, hi2) in zip(box_t, box_s)
            ]
            for k in product(*ranges):
                if i == j:
                    nz = next((c for c in k if c != 0), 0)
                    if nz <= 0:
                        continue  # skip self and one of each +-k pair
                shifted = s.translate(tuple(Q(c) for c in k))
                if _quick_separated(g, t, shifted):
                    continue
                try:
                    res = meet_face_to_face(t, shifted)
                except InteriorOverlapError:
                    problems.append(f"tiles {i} and {j}+{k} have overlapping interiors")
                    continue
                if res.kind == "violation":
                    problems.append(
                        f"tiles {i} and {j}+{k} meet in a non-face: {res.witness}"
                    )
    return problems


def _quick_separated(g, a: ConvexPolytope, b: ConvexPolytope) -> bool:
    """True when some facet of one tile strictly separates the other."""
    from .linalg import gram_dot

    for p, q in ((a, b), (b, a)):
        for h in p.facets():
            if all(gram_dot(g, h.normal, v) < h.offset for v in q.vertices):
                return True
    return False


def tilings_equal(a: PeriodicTiling, b: PeriodicTiling) -> bool:
    return a.frame == b.frame and a.cell_tiles == b.cell_tiles


# --- patches -----------------------------------------------------------------

@dataclass(frozen=True)
class Patch:
    tiles: tuple
    center: Vec
    sq_radius: object

    def keys(self):
        return frozenset(t.vertices for t in self.tiles)


def patch(tiling: PeriodicTiling, center, r2) -> Patch:
    """Exactly the tiles whose squared distance to the center is <= r2."""
    center = vec(center)
    r2 = rat(r2)
    if r2 <= 0:
        raise ValueError("squared radius must be positive")
    from .rational import isqrt_ceil
    from .linalg import mat_inv as _mi

    ginv = _mi(tiling.frame.gram)
    out = []
    for t in tiling.cell_tiles:
        box = t.bounding_box()
        ranges = []
        for i, (lo, hi) in enumerate(box):
            w = isqrt_ceil(r2 * ginv[i][i])
            ranges.append(range(math.floor(center[i] - hi) - w, math.ceil(center[i] - lo) + w + 1))
        for k in product(*ranges):
            cand = t.translate(tuple(Q(c) for c in k))
            if sq_distance_point(cand, center) <= r2:
                out.append(cand)
    out.sort(key=lambda t: t.vertices)
    return Patch(tiles=tuple(out), center=center, sq_radius=r2)


def transformed_patch(tiling: PeriodicTiling, iso: Isometry, center, r2) -> Patch:
    """Patch of the transformed tiling iso(T) around `center`, computed via
    the pullback identity [phi T]_{B_r(c)} = phi([T]_{B_r(phi^-1 c)})."""
    center = vec(center)
    pre = inverse(iso)(center)
    base = patch(tiling, pre, r2)
    tiles = tuple(sorted((t.transform(iso) for t in base.tiles), key=lambda t: t.vertices))
    return Patch(tiles=tiles, center=center, sq_radius=rat(r2))


# --- transformation ----------------------------------------------------------

def transform_tiling(tiling: PeriodicTiling, iso: Isometry) -> PeriodicTiling:
    """The tiling iso(T).

    When the linear part normalizes the lattice the result lives in the
    same frame; otherwise it is re-expressed in the image-lattice basis
    (the Gram matrix is unchanged since the linear part is an isometry).
    """
    if iso.frame != tiling.frame or iso.target != tiling.frame:
        raise IsometryError("isometry incompatible with the tiling frame")
    lin = iso.linear
    linv = mat_inv(lin)
    if is_integral_mat(lin) and is_integral_mat(linv):
        tiles = [t.transform(iso) for t in tiling.cell_tiles]
        return periodic_tiling(tiling.frame, tiles, validate=False)
    # re-express over the image lattice: same Gram, tiles shifted by L^-1 t
    shift = mat_vec(linv, iso.translation)
    tiles = [t.translate(shift) for t in tiling.cell_tiles]
    return periodic_tiling(tiling.frame, tiles, validate=False)


# --- prototiles ---------------------------------------------------------------

def prototiles(tiling: PeriodicTiling) -> list:
    """Partition of cell_tiles into congruence classes (lists of indices)."""
    classes = []
    reps = []
    for i, t in enumerate(tiling.cell_tiles):
        for ci, r in enumerate(reps):
            if congruent(r, t) is not None:
                classes[ci].append(i)
                break
        else:
            reps.append(t)
            classes.append([i])
    return classes


def prototile_index(tiling: PeriodicTiling) -> dict:
    out = {}
    for ci, members in enumerate(prototiles(tiling)):
        for i in members:
            out[i] = ci
    return out


# --- automorphisms -------------------------------------------------------------

def _translate_match(a: ConvexPolytope, b: ConvexPolytope):
    """The translation with a + v == b, or None."""
    v = vsub(b.vertices[0], a.vertices[0])
    moved = tuple(vadd(p, v) for p in a.vertices)
    return v if moved == b.vertices else None


def _fixes_tiling(tiling: PeriodicTiling, iso: Isometry) -> bool:
    keys = tiling.tile_keys()
    for t in tiling.cell_tiles:
        if canonical_tile(t.transform(iso)).vertices not in keys:
            return False
    return True


def maximal_translation_lattice(tiling: PeriodicTiling):
    """Basis (columns) of {v : T + v = T} as a superlattice of Z^n."""
    n = tiling.frame.dim
    t0 = tiling.cell_tiles[0]
    extra = []
    for t in tiling.cell_tiles:
        v = _translate_match(t0, t)
        if v is None or is_integral_vec(v):
            continue
        if _fixes_tiling(tiling, translation_iso(tiling.frame, v)):
            extra.append(v)
    if not extra:
        return identity_mat(n)
    den = common_denominator([x for v in extra for x in v])
    cols = [tuple(Q(den) if i == j else ZERO for i in range(n)) for j in range(n)]
    cols += [tuple(x * den for x in v) for v in extra]
    basis = hermite_column_basis([tuple(int(x) for x in c) for c in cols])
    return transpose(tuple(tuple(Q(x, den) for x in col) for col in basis))


def reexpress_over_lattice(tiling: PeriodicTiling, basis: Mat):
    """Rewrite the tiling in the coordinates of a denser translation lattice.

    `basis` columns give the new lattice in current coordinates.  Returns
    (tiling', embedding) where embedding maps new coordinates to old.
    """
    frame = tiling.frame
    new_gram = mat_mul(transpose(basis), mat_mul(frame.gram, basis))
    new_frame = Frame(frame.dim, new_gram)
    binv = mat_inv(basis)
    tiles = [
        ConvexPolytope(new_frame, [mat_vec(binv, p) for p in t.vertices], assume_minimal=True)
        for t in tiling.cell_tiles
    ]
    out = periodic_tiling(new_frame, tiles, validate=False)
    embed = Isometry(new_frame, basis, zero_vec(frame.dim), target=frame)
    return out, embed


def automorphism_group_with_embedding(tiling: PeriodicTiling):
    """Aut(T) over its maximal translation lattice, plus the coordinate map
    from the group's frame back into the tiling's frame."""
    basis = maximal_translation_lattice(tiling)
    if basis != identity_mat(tiling.frame.dim):
        dense, embed = reexpress_over_lattice(tiling, basis)
        group, inner = automorphism_group_with_embedding(dense)
        return group, compose(embed, inner)
    frame = tiling.frame
    n = frame.dim
    t0 = tiling.cell_tiles[0]
    seitz = []
    for m in lattice_isometries(frame, frame):
        iso_m = Isometry(frame, m, zero_vec(n))
        image = t0.transform(iso_m)
        found = None
        for t in tiling.cell_tiles:
            c = _translate_match(image, t)
            if c is None:
                continue
            cand = Isometry(frame, m, c)
            if _fixes_tiling(tiling, cand):
                found = tuple(frac_part(x) for x in c)
                break
        if found is not None:
            seitz.append((m, found))
    group = validate_group(frame, seitz)
    return group, identity_iso(frame)


def automorphism_group(tiling: PeriodicTiling) -> CrystalGroup:
    return automorphism_group_with_embedding(tiling)[0]


def is_crystallographic(tiling: PeriodicTiling):
    """Always true for a valid PeriodicTiling; returns the group as witness."""
    group = automorphism_group(tiling)
    return True, group


# --- LD / MLD ------------------------------------------------------------------

def _lattice_covering_sq(frame: Frame):
    """Covering radius^2 of the frame's integer lattice (circumradius of the
    origin's Voronoi cell)."""
    from .groups import span_seitz
    from .voronoi import cell_with_certificate

    p1 = span_seitz(frame, [])
    cell, _ = cell_with_certificate(p1, zero_vec(frame.dim))
    return max(gram_norm2(frame.gram, v) for v in cell.vertices)


@dataclass(frozen=True)
class LDResult:
    holds: bool
    radius: float = None          # valid LD radius when holds
    covering_sq: object = None    # exact square of the radius


def _bridge_gamma(gamma: Isometry, emb1: Isometry, emb2: Isometry) -> Isometry:
    """Rewrite gamma : T-frame -> T'-frame as a map between Aut frames."""
    return compose(inverse(emb2), compose(gamma, emb1))


def ld_check(t1: PeriodicTiling, t2: PeriodicTiling, gamma: Isometry) -> LDResult:
    """T' is gamma-LD from T iff gamma Aut(T) gamma^-1 is contained in Aut(T').

    When it holds, a valid LD radius is the covering radius of the
    translation lattice of Aut(T) (the radius making lattice translates
    of a ball cover all of space).
    """
    if t1.dim != t2.dim:
        raise ValueError("dimension mismatch")
    g1, e1 = automorphism_group_with_embedding(t1)
    g2, e2 = automorphism_group_with_embedding(t2)
    eff = _bridge_gamma(gamma, e1, e2)
    if not is_conjugate_subgroup(g1, g2, eff):
        return LDResult(holds=False)
    cover_sq = _lattice_covering_sq(g1.frame)
    from .rational import sqrt_float

    return LDResult(holds=True, radius=sqrt_float(cover_sq), covering_sq=cover_sq)


def mld_check(t1: PeriodicTiling, t2: PeriodicTiling):
    """A conjugating isometry gamma making T and T' gamma-MLD, or None.

    Decided exactly through the automorphism groups: the tilings are
    gamma-MLD iff gamma conjugates Aut(T) onto Aut(T')."""
    if t1.dim != t2.dim:
        raise ValueError("dimension mismatch")
    g1, e1 = automorphism_group_with_embedding(t1)
    g2, e2 = automorphism_group_with_embedding(t2)
    found = conjugacy_search(g1, g2)
    if found is None:
        return None
    return compose(e2, compose(found, inverse(e1)))


def translation_mld_check(t1: PeriodicTiling, t2: PeriodicTiling) -> bool:
    """Whether Aut(T) and Aut(T') share their translation lattices.

    Exact basis-change test: some integer unimodular matrix must identify
    the two lattices isometrically."""
    if t1.dim != t2.dim:
        raise ValueError("dimension mismatch")
    g1, _ = automorphism_group_with_embedding(t1)
    g2, _ = automorphism_group_with_embedding(t2)
    return bool(lattice_isometries(g1.frame, g2.frame))


# --- tiling metric: certified upper bounds ---------------------------------------

@dataclass(frozen=True)
class DistanceBound:
    """Certified upper bound on the tiling distance d_O(T, T').

    witness = (phi, psi, radius, global_match): patches of phi(T) and
    psi(T') agree on the ball of that rational radius about the origin,
    with d_O(phi,1), d_O(psi,1) < 1/(2 radius) up to slack; global_match
    marks exact equality of the whole transformed tilings (an
    infinite-radius witness truncated to RADIUS_CAP)."""

    origin: Vec
    upper: float
    witness: tuple = None
    tiling_a: PeriodicTiling = field(default=None, compare=False)
    tiling_b: PeriodicTiling = field(default=None, compare=False)
    lower: float = None


def _patch_equal(t1, iso1, t2, iso2, origin, radius) -> bool:
    r2 = radius * radius
    pa = transformed_patch(t1, iso1, origin, r2)
    pb = transformed_patch(t2, iso2, origin, r2)
    return pa.keys() == pb.keys()


def _rational_below(x: float):
    """Exact rational strictly below the real intended by the float x."""
    return Q(math.nextafter(x, 0.0))


def _normalizes_lattice(iso: Isometry) -> bool:
    return is_integral_mat(iso.linear) and is_integral_mat(mat_inv(iso.linear))


def _pair_match_radius(t1, phi, t2, psi, origin):
    """(largest certified rational radius, global flag) for one witness pair.

    The radius is limited by the 1/(2r) size constraint on the pair; a
    global flag marks exact equality of the transformed tilings, which
    certifies patch equality at every radius."""
    delta = max(iso_size(origin, phi), iso_size(origin, psi))
    size_cap = RADIUS_CAP
    if delta > 0:
        size_cap = min(size_cap, _rational_below(1.0 / (2.0 * delta)))
    if size_cap <= 0:
        return ZERO, False
    if _normalizes_lattice(phi) and _normalizes_lattice(psi):
        # safe to compare the transformed tilings globally: no basis
        # re-expression is involved, so equality is equality in the plane
        ta = transform_tiling(t1, phi)
        tb = transform_tiling(t2, psi)
        if tilings_equal(ta, tb):
            return size_cap, True
    cap = min(size_cap, PATCH_ENUM_RADIUS)
    if _patch_equal(t1, phi, t2, psi, origin, cap):
        return cap, False
    lo, hi = ZERO, cap
    for _ in range(16):
        mid = (lo + hi) / 2
        if _patch_equal(t1, phi, t2, psi, origin, mid):
            lo = mid
        else:
            hi = mid
    return lo, False


def _size_cap(phi, psi, origin, radius) -> bool:
    bound = 1.0 / (2.0 * float(radius)) + WITNESS_SLACK
    return iso_size(origin, phi) <= bound and iso_size(origin, psi) <= bound


def default_candidates(t1: PeriodicTiling, t2: PeriodicTiling, origin) -> list:
    """Identity pair plus the half-shift pairs for the anchor translation."""
    frame = t1.frame
    pairs = [(identity_iso(frame), identity_iso(frame))]
    tau_raw = vsub(t2.cell_tiles[0].vertices[0], t1.cell_tiles[0].vertices[0])
    taus = {tau_raw, tuple(frac_part(x + Q(1, 2)) - Q(1, 2) for x in tau_raw)}
    for tau in taus:
        if all(x == 0 for x in tau):
            continue
        half = tuple(x / 2 for x in tau)
        pairs.append((translation_iso(frame, half), translation_iso(frame, tuple(-x for x in half))))
    return pairs


def distance_upper_bound(origin, t1: PeriodicTiling, t2: PeriodicTiling, candidates=None) -> DistanceBound:
    """Certified upper bound for d_O(T, T') from a finite witness set.

    Exact 0 for equal tilings; otherwise the best min{ln(3/2), ln(1+1/r)}
    over candidate pairs, r found by rational binary search on verified
    patch equality subject to the 1/(2r) size constraint."""
    if t1.frame != t2.frame:
        raise ValueError("tilings must share a frame; conjugate one first")
    origin = vec(origin)
    if tilings_equal(t1, t2):
        w = (identity_iso(t1.frame), identity_iso(t1.frame), RADIUS_CAP, True)
        return DistanceBound(origin, 0.0, witness=w, tiling_a=t1, tiling_b=t2)
    pairs = candidates if candidates is not None else default_candidates(t1, t2, origin)
    if not pairs:
        raise ValueError("empty candidate set")
    best_upper = LN_3_2
    best_witness = None
    for phi, psi in pairs:
        radius, glob = _pair_match_radius(t1, phi, t2, psi, origin)
        if radius <= 0 or not _size_cap(phi, psi, origin, radius):
            continue
        upper = min(LN_3_2, math.log1p(1.0 / float(radius)))
        if upper < best_upper or best_witness is None:
            best_upper = upper
            best_witness = (phi, psi, radius, glob)
    return DistanceBound(origin, best_upper, witness=best_witness, tiling_a=t1, tiling_b=t2)


class WitnessError(ValueError):
    pass


def verify_witness(bound: DistanceBound) -> bool:
    """Re-verify a distance witness exactly (patch equality + size caps)."""
    if bound.witness is None:
        return True
    phi, psi, radius, glob = bound.witness
    if not _size_cap(phi, psi, bound.origin, radius):
        return False
    if glob:
        if not (_normalizes_lattice(phi) and _normalizes_lattice(psi)):
            return False
        return tilings_equal(transform_tiling(bound.tiling_a, phi),
                             transform_tiling(bound.tiling_b, psi))
    return _patch_equal(bound.tiling_a, phi, bound.tiling_b, psi, bound.origin, radius)


def combine_witnesses(w1: DistanceBound, w2: DistanceBound) -> DistanceBound:
    """Triangle-inequality composition of witnesses for (T,T') and (T',T'').

    Produces the pair (chi phi, (chi psi chi^-1) omega) at the radius
    r0 = r r' / (r + r') and re-verifies it exactly before returning."""
    if w1.witness is None or w2.witness is None:
        raise WitnessError("both inputs need witnesses")
    if vec(w1.origin) != vec(w2.origin):
        raise WitnessError("witnesses must share the origin")
    if not tilings_equal(w1.tiling_b, w2.tiling_a):
        raise WitnessError("witness chains must share the middle tiling")
    phi, psi, r1, g1 = w1.witness
    chi, omega, r2, g2 = w2.witness
    if r1 <= 2 or r2 <= 2:
        raise WitnessError("composition requires both radii > 2")
    r0 = r1 * r2 / (r1 + r2)
    phi_new = compose(chi, phi)
    psi_bar = compose(chi, compose(psi, inverse(chi)))
    psi_new = compose(psi_bar, omega)
    glob = g1 and g2
    combined = DistanceBound(
        origin=w1.origin,
        upper=min(LN_3_2, math.log1p(1.0 / float(r0))),
        witness=(phi_new, psi_new, r0, glob),
        tiling_a=w1.tiling_a,
        tiling_b=w2.tiling_b,
    )
    if not verify_witness(combined):
        raise WitnessError("combined witness failed exact re-verification")
    return combined
