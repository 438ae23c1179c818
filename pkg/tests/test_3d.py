"""3D demonstration coverage: cubic lattices, P222, and the construction."""

from crystile.rational import Q
from crystile.groups import generic_point, preset
from crystile.polytope import volume
from crystile.voronoi import delone_params, voronoi_cell, voronoi_tiling
from crystile.tiling import automorphism_group, prototiles
from crystile.construction import construct_tiling


def test_z3_delone_certificate():
    cert = delone_params(preset("P1"), (0, 0, 0))
    assert cert.min_sq_distance == 1
    assert cert.covering_sq_radius == Q(3, 4)


def test_z3_voronoi_cell_is_cube():
    cell = voronoi_cell(preset("P1"), (0, 0, 0))
    assert len(cell.vertices) == 8
    assert volume(cell) == 1


def test_p222_voronoi_tiling():
    g = preset("P222")
    t = voronoi_tiling(g, generic_point(g, 0))
    assert len(t.cell_tiles) == 4
    assert sum(volume(p) for p in t.cell_tiles) == 1
    assert len(prototiles(t)) <= 4


def test_construct_p1_3d():
    g = preset("P1")
    t = construct_tiling(g, 0)
    assert len(t.cell_tiles) == 6  # pyramids over the cube's facets
    aut = automorphism_group(t)
    assert aut.order() == 1 and aut.frame == g.frame


def test_construct_p222_3d():
    g = preset("P222")
    t = construct_tiling(g, 0)
    aut = automorphism_group(t)
    assert aut.reps == g.reps and aut.frame == g.frame
