"""Order complexes, integral simplicial homology, sphere certificates.

Fixture homology is frozen from the literature (projective plane,
7-vertex torus, simplex boundaries); the implementation must reproduce
it including torsion, with and without the collapsing preprocessor.
"""

import itertools

import pytest

from cyclictri.posets import (
    FinitePoset,
    ResourceBudgetError,
    boolean_lattice,
    build_s2,
)
from cyclictri.topology import (
    chain_counts,
    complex_from_maximal,
    homology,
    order_complex,
    poset_homology,
    sphere_certificate,
    suspension_compare,
    webb_reduction_check,
)

# minimal 6-vertex triangulation of the real projective plane
RP2 = [(1, 2, 4), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 5, 6),
       (2, 3, 5), (2, 3, 6), (2, 4, 5), (3, 4, 6), (4, 5, 6)]

# cyclic 7-vertex torus: orbits of {0,1,3} and {0,2,3} mod 7
TORUS = sorted(
    tuple(sorted(((i + a) % 7 + 1 for a in tri)))
    for i in range(7)
    for tri in ((0, 1, 3), (0, 2, 3))
)


def _poset(els, edges):
    ix = {e: i for i, e in enumerate(els)}
    return FinitePoset.from_edges(els, [(ix[a], ix[b]) for a, b in edges])


def _sphere_complex(k):
    # boundary of the (k+1)-simplex: k+2 vertices, all k-faces
    verts = tuple(range(k + 2))
    return complex_from_maximal(list(itertools.combinations(verts, k + 1)))


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_simplex_boundary_is_sphere(k):
    h = homology(_sphere_complex(k))
    assert h.is_sphere(k)
    assert h.euler == (-1) ** k


def test_two_points_is_s0():
    h = homology(complex_from_maximal([(1,), (2,)]))
    assert h.betti[0] == 1 and h.is_sphere(0)


def test_hexagon_cycle_is_s1():
    edges = [(i, i % 6 + 1) for i in range(1, 7)]
    h = homology(complex_from_maximal(edges))
    assert h.is_sphere(1)


def test_empty_complex_is_reduced_sphere():
    # reduced homology of {} is Z in degree -1
    h = homology(complex_from_maximal([]))
    assert h.is_sphere(-1)
    assert h.euler == -1


def test_point_is_trivial():
    h = homology(complex_from_maximal([(1,)]))
    assert h.is_trivial()
    assert h.euler == 0


def test_rp2_torsion():
    h = homology(complex_from_maximal(RP2))
    assert h.betti == {-1: 0, 0: 0, 1: 0, 2: 0}
    assert h.torsion == {1: (2,)}
    assert h.euler == 0
    assert not h.is_trivial()


def test_torus_homology():
    k = complex_from_maximal(TORUS)
    assert k.counts() == {-1: 1, 0: 7, 1: 21, 2: 14}
    h = homology(k)
    assert h.betti[1] == 2 and h.betti[2] == 1
    assert h.torsion == {}
    assert h.euler == -1


@pytest.mark.parametrize("maximal", [RP2, TORUS, [(1, 2, 3, 4)], [(1, 2), (3, 4)]])
def test_collapse_does_not_change_homology(maximal):
    k = complex_from_maximal(maximal)
    assert homology(k, collapse=True) == homology(k, collapse=False)


def test_order_complex_of_chain_is_simplex():
    c = _poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    k = order_complex(c)
    assert k.counts()[2] == 1  # the full chain is a 2-face
    assert homology(k).is_trivial()


def test_order_complex_counts_match_chain_counts():
    # chain_counts[m] counts chains of m elements without materializing them
    for p in (boolean_lattice(3).proper_part(),
              build_s2(6, 2).proper_part(),
              _poset(["a", "b", "c", "d"],
                     [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])):
        counts = order_complex(p).counts()
        cc = chain_counts(p)
        assert cc == [counts.get(m - 1, 0) for m in range(len(cc))]
        assert sum(cc) == sum(counts.values())


def test_chain_counts_budget():
    b = boolean_lattice(8)
    with pytest.raises(ResourceBudgetError) as e:
        chain_counts(b, budget=100)
    assert "dimension" in str(e.value)


def test_order_complex_budget():
    with pytest.raises(ResourceBudgetError):
        order_complex(boolean_lattice(8), budget=100)


def test_poset_with_bottom_is_cone():
    # any bounded-below poset has contractible order complex
    for p in (boolean_lattice(3), build_s2(5, 2)):
        assert poset_homology(p).is_trivial()


def test_hall_mobius_equals_reduced_euler():
    for p in (boolean_lattice(3), boolean_lattice(4), build_s2(6, 2)):
        h = poset_homology(p.proper_part())
        assert h.euler == p.mobius_bottom_top()


def test_proper_b3_is_s1():
    # proper part of B3 triangulates the barycentric hexagon
    h = poset_homology(boolean_lattice(3).proper_part())
    assert h.is_sphere(1)


def test_hexagon_face_poset_order_complex():
    # barycentric subdivision of the hexagon boundary is a 12-gon
    els = ["v%d" % i for i in range(1, 7)] + ["e%d" % i for i in range(1, 7)]
    edges = []
    for i in range(1, 7):
        edges.append(("v%d" % i, "e%d" % i))
        edges.append(("v%d" % (i % 6 + 1), "e%d" % i))
    p = _poset(els, edges)
    k = order_complex(p)
    assert k.counts() == {-1: 1, 0: 12, 1: 12}
    assert homology(k).is_sphere(1)


def test_sphere_certificate_passes():
    cert = sphere_certificate(boolean_lattice(3).proper_part(), 1)
    assert cert["pass"] is True
    assert cert["certificate"] == "homology-level"
    assert cert["euler"] == cert["mobius"] == -1
    assert cert["reasons"] == []


def test_sphere_certificate_fails_with_reasons():
    cert = sphere_certificate(boolean_lattice(3).proper_part(), 2)
    assert cert["pass"] is False
    assert cert["reasons"]


def test_sphere_certificate_empty_poset():
    # proper part of a 2-chain is empty: a (-1)-sphere
    two = _poset(["a", "b"], [("a", "b")])
    cert = sphere_certificate(two.proper_part(), -1)
    assert cert["pass"] is True


def test_suspension_compare_on_small_lattices():
    for p in (_poset(["a", "b"], [("a", "b")]),
              boolean_lattice(2),
              boolean_lattice(3),
              build_s2(5, 2)):
        rep = suspension_compare(p)
        assert rep["pass"] is True, rep
        assert rep["shift_ok"] and rep["full_ok"]


def test_webb_reduction_on_b3():
    rep = webb_reduction_check(boolean_lattice(3))
    assert rep["pass"] is True
    assert rep["contains_coatomic"]
    assert rep["homology_match"]


def test_webb_reduction_requires_lattice():
    # bounded but a,b still have no join: must be rejected, not mis-reported
    m = _poset(["a", "b", "c", "d"],
               [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]).adjoin_bounds()
    with pytest.raises(ValueError):
        webb_reduction_check(m)


def test_homology_report_json():
    import json

    h = poset_homology(boolean_lattice(3).proper_part())
    doc = json.loads(h.to_json())
    assert set(doc) >= {"dims", "euler"}
    assert doc["dims"]["1"] == {"betti": 1, "torsion": []}
