"""Realize a prescribed crystallographic group as a tiling automorphism group.

Pipeline: pick a generic orbit point, build the Voronoi-cell tiling of its
orbit, then subdivide every cell into cones over its facets from a generic
interior apex.  Genericity (distinct apex-to-vertex distances, disjoint
from the edge lengths) breaks every symmetry the undecorated Voronoi
tiling had beyond the group itself; the result is verified by exact
automorphism-group computation before being returned, so the operation is
self-certifying.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .rational import Q, rat
from .linalg import gram_norm2, vadd, vec, vsub
from .isometry import Isometry
from .groups import CrystalGroup, generic_point
from .polytope import ConvexPolytope, faces
from .tiling import PeriodicTiling, Provenance, periodic_tiling
from .voronoi import voronoi_tiling


class ConstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class GenericityCertificate:
    """Exact witness that an apex is generic inside a cell.

    The squared apex-to-vertex distances are pairwise distinct and
    disjoint from the squared edge lengths, all compared as rationals.
    """

    apex: tuple
    cell: ConvexPolytope
    vertex_sq_distances: tuple
    edge_sq_lengths: tuple

    def __post_init__(self):
        if not self.cell.strictly_contains(self.apex):
            raise ValueError("apex is not interior to the cell")
        vd = self.vertex_sq_distances
        if len(set(vd)) != len(vd):
            raise ValueError("apex-to-vertex distances are not pairwise distinct")
        if set(vd) & set(self.edge_sq_lengths):
            raise ValueError("an apex-to-vertex distance equals an edge length")


def certificate_for(cell: ConvexPolytope, apex) -> GenericityCertificate:
    apex = vec(apex)
    g = cell.frame.gram
    vd = tuple(gram_norm2(g, vsub(apex, v)) for v in cell.vertices)
    el = tuple(
        gram_norm2(g, vsub(e.vertices[1], e.vertices[0])) for e in faces(cell, 1)
    )
    return GenericityCertificate(
        apex=apex, cell=cell, vertex_sq_distances=vd, edge_sq_lengths=tuple(sorted(el))
    )


def generic_apex(cell: ConvexPolytope, seed: int) -> GenericityCertificate:
    """Deterministic interior apex with an exact genericity certificate.

    Sampled as strictly positive rational convex combinations of the
    vertices; the excluded locus is a finite union of spheres and
    hyperplanes, so resampling terminates.
    """
    if cell.dim != cell.frame.dim:
        raise ValueError("cell must be full-dimensional")
    rng = random.Random(seed)
    k = len(cell.vertices)
    for attempt in range(256):
        weights = [Q(rng.randrange(1, 64 + attempt)) for _ in range(k)]
        total = sum(weights, Q(0))
        apex = None
        for w, v in zip(weights, cell.vertices):
            scaled = tuple(w / total * c for c in v)
            apex = scaled if apex is None else vadd(apex, scaled)
        try:
            return certificate_for(cell, apex)
        except ValueError:
            continue
    raise ConstructionError("no generic apex found (degenerate cell?)")


def cone_subdivide(tiling: PeriodicTiling, cert: GenericityCertificate) -> PeriodicTiling:
    """Replace each Voronoi cell by the cones over its facets from the apex.

    Tiles per unit cell become |reps| * (#facets of the base cell); the
    output passes full tiling validation.
    """
    prov = tiling.provenance
    if prov is None or prov.kind != "voronoi":
        raise ValueError("cone_subdivide expects a Voronoi-cell tiling with provenance")
    if cert.cell != prov.base_cell:
        raise ValueError("certificate does not match the tiling's base cell")
    group = prov.group
    base = prov.base_cell
    n = base.frame.dim
    cones = []
    for fpoly in faces(base, n - 1):
        cones.append(ConvexPolytope(base.frame, list(fpoly.vertices) + [cert.apex], assume_minimal=True))
    tiles = []
    for m, v in group.reps:
        iso = Isometry(group.frame, m, v)
        for cone in cones:
            tiles.append(cone.transform(iso))
    out = periodic_tiling(
        group.frame,
        tiles,
        provenance=Provenance(
            kind="cone_subdivision",
            group=group,
            base_point=prov.base_point,
            base_cell=base,
            apex=cert.apex,
        ),
        validate=True,
    )
    expected = group.order() * len(cones)
    if len(out.cell_tiles) != expected:
        raise ConstructionError(
            f"subdivision produced {len(out.cell_tiles)} tiles per cell, expected {expected}"
        )
    return out


def construct_tiling(group: CrystalGroup, seed: int, max_attempts: int = 8) -> PeriodicTiling:
    """A simple tiling whose automorphism group is exactly the given group.

    The postcondition Aut(result) == group is verified exactly before
    returning (same lattice, same Seitz pairs mod the lattice); failed
    attempts resample with the next seed.
    """
    from .tiling import automorphism_group

    last_problem = None
    for attempt in range(max_attempts):
        s = seed + attempt
        x = generic_point(group, s)
        vt = voronoi_tiling(group, x)
        cert = generic_apex(vt.provenance.base_cell, s)
        candidate = cone_subdivide(vt, cert)
        aut = automorphism_group(candidate)
        if aut.frame == group.frame and aut.reps == group.reps:
            return candidate
        last_problem = (
            f"seed {s}: Aut has point order {aut.order()} over gram {aut.frame.gram}, "
            f"wanted order {group.order()} over {group.frame.gram}"
        )
    raise ConstructionError(f"verification failed after {max_attempts} attempts: {last_problem}")
