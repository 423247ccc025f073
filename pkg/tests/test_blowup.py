import pytest

from moricone.blowup import (
    ConstructionParams,
    DegreeMultiset,
    classify,
    conormal_fiber,
    conormal_linear,
    conormal_restricted,
    fiber_structure,
    k_degree,
    minus_EF_nef_on_fiber,
    relative_cones,
    relative_pairing,
)


# ---------------------------------------------------------------------------
# parameter validation
# ---------------------------------------------------------------------------

def test_params_valid():
    p = ConstructionParams(a=3, b=2, components=(1,))
    assert p.components == (1,)


def test_params_codimension_floor():
    with pytest.raises(ValueError):
        ConstructionParams(a=1, b=2, components=(1,))
    with pytest.raises(ValueError):
        ConstructionParams(a=2, b=1, components=(1,))


def test_params_component_range():
    with pytest.raises(ValueError):
        ConstructionParams(a=2, b=3, components=(3,), a_subset_b=True)
    with pytest.raises(ValueError):
        ConstructionParams(a=3, b=3, components=(0,))
    with pytest.raises(ValueError):
        ConstructionParams(a=3, b=3, components=())


def test_params_inclusion_flags():
    with pytest.raises(ValueError):
        ConstructionParams(a=3, b=2, components=(1,), b_subset_a=True)
    # flag must match the presence of a c_i = b component, both ways
    with pytest.raises(ValueError):
        ConstructionParams(a=3, b=2, components=(2,), a_subset_b=False)
    with pytest.raises(ValueError):
        ConstructionParams(a=3, b=2, components=(1,), a_subset_b=True)
    p = ConstructionParams(a=3, b=2, components=(1, 2), a_subset_b=True)
    assert p.a_subset_b


# ---------------------------------------------------------------------------
# pairing table and relative cones
# ---------------------------------------------------------------------------

def test_pairing_table_frozen():
    m = relative_pairing()
    assert m == ((-1, 0), (1, -1))
    # -(E+F) pairs (0, 1) against (e, f)
    minus_ef = [-(m[0][j] + m[1][j]) for j in (0, 1)]
    assert minus_ef == [0, 1]


def test_relative_cones_duality_verified():
    rc = relative_cones()
    assert rc.nef.rays == ((-1, -1), (-1, 0))
    assert rc.ne.rays == ((0, 1), (1, 0))
    assert rc.duality_verdict.equal


def test_each_nef_generator_kills_one_curve():
    m = relative_pairing()

    def pair_div_curve(dv, cv):
        return sum(dv[i] * m[i][j] * cv[j] for i in range(2) for j in range(2))

    minus_e = (-1, 0)
    minus_ef = (-1, -1)
    e, f = (1, 0), (0, 1)
    assert pair_div_curve(minus_e, e) == 1
    assert pair_div_curve(minus_e, f) == 0
    assert pair_div_curve(minus_ef, e) == 0
    assert pair_div_curve(minus_ef, f) == 1


# ---------------------------------------------------------------------------
# K-degrees and classification
# ---------------------------------------------------------------------------

def test_k_degree_examples():
    assert k_degree(ConstructionParams(3, 2, (1,))) == (-1, -1)
    assert k_degree(ConstructionParams(4, 4, (2,))) == (0, -3)
    assert k_degree(ConstructionParams(2, 3, (1,))) == (1, -2)


def test_classify_flip_case():
    r = classify(ConstructionParams(3, 2, (1,)))
    assert r.is_small and r.is_K_extremal
    assert r.K_dot_e == -1
    assert r.birational_modification == "flip"
    assert r.exceptional_component_codims == (2,)


def test_classify_flop_case():
    r = classify(ConstructionParams(2, 2, (1,)))
    assert r.is_small and not r.is_K_extremal
    assert r.K_dot_e == 0
    assert r.birational_modification == "flop"


def test_classify_divisorial_case():
    # smallest admissible instance of the "some c_i = b" divisorial case
    r = classify(ConstructionParams(3, 3, (3,), a_subset_b=True))
    assert not r.is_small and not r.is_K_extremal
    assert r.birational_modification == "none"
    assert r.exceptional_component_codims == (1,)


def test_classify_divisorial_needs_b_at_most_a():
    # c_i = b forces b <= min(a, b); with a < b the divisorial case cannot
    # be expressed at all
    with pytest.raises(ValueError):
        ConstructionParams(2, 3, (3,), a_subset_b=True)


def test_classify_mixed_components():
    r = classify(ConstructionParams(4, 3, (1, 2, 3), a_subset_b=True))
    assert not r.is_small            # the c=3 component is divisorial
    assert r.is_K_extremal           # a > b regardless
    assert r.birational_modification == "none"
    assert r.exceptional_component_codims == (3, 2, 1)


@pytest.mark.parametrize("a", range(2, 7))
@pytest.mark.parametrize("b", range(2, 7))
def test_classification_grid_invariants(a, b):
    from itertools import combinations_with_replacement

    for k in (1, 2):
        for comps in combinations_with_replacement(range(1, min(a, b) + 1), k):
            p = ConstructionParams(a, b, comps,
                                   a_subset_b=any(c == b for c in comps))
            r = classify(p)
            assert r.is_K_extremal == (a > b)
            ke, kf = k_degree(p)
            assert ke == b - a and kf == -(b - 1)
            assert r.is_small == (max(comps) < b)
            assert (r.birational_modification == "flip") == (r.is_small and a > b)
            assert (r.birational_modification == "flop") == (r.is_small and a == b)


# ---------------------------------------------------------------------------
# conormal degree multisets
# ---------------------------------------------------------------------------

def test_conormal_linear():
    assert conormal_linear(4, 0).as_dict() == {}
    assert conormal_linear(4, 1).as_dict() == {-1: 1}
    assert conormal_linear(5, 3).as_dict() == {-1: 3}
    with pytest.raises(ValueError):
        conormal_linear(2, 3)
    with pytest.raises(ValueError):
        conormal_linear(2, -1)


def test_conormal_fiber():
    assert conormal_fiber(0).as_dict() == {1: 1}
    assert conormal_fiber(1).as_dict() == {1: 1, 0: 1}
    assert conormal_fiber(4).as_dict() == {1: 1, 0: 4}
    with pytest.raises(ValueError):
        conormal_fiber(-1)


def test_conormal_restricted():
    assert conormal_restricted(2, 2, 1).as_dict() == {0: 1, -1: 1}
    assert conormal_restricted(4, 3, 2).as_dict() == {0: 1, -1: 2}
    assert conormal_restricted(3, 3, 3).as_dict() == {-1: 3}
    with pytest.raises(ValueError):
        conormal_restricted(4, 3, 0)
    with pytest.raises(ValueError):
        conormal_restricted(4, 3, 4)


def test_conormal_restricted_total_is_rank():
    for a in range(2, 9):
        for b in range(2, 9):
            for c in range(1, min(a, b) + 1):
                assert conormal_restricted(a, b, c).total_multiplicity() == b


def test_degree_multiset_validation():
    with pytest.raises(ValueError):
        DegreeMultiset(((0, -1),))
    with pytest.raises(ValueError):
        DegreeMultiset(((0, 1), (0, 2)))
    m = DegreeMultiset(((2, 1), (0, 0), (-1, 3)))
    assert m.as_dict() == {2: 1, -1: 3}
    assert m.shifted(1).as_dict() == {3: 1, 0: 3}
    assert m.min_degree() == -1


# ---------------------------------------------------------------------------
# fiber structure
# ---------------------------------------------------------------------------

def test_fiber_structure_two_components():
    fs = fiber_structure(3, 2, 1)
    assert fs.component_count == 2
    assert fs.ambient_dim == 2 and fs.center_codim == 1
    assert fs.bundle_fiber_dim == 1 and fs.bundle_base_dim == 1
    assert "P^1-bundle over P^1" in fs.f_description


def test_fiber_structure_one_component_iff_b_equals_c():
    assert fiber_structure(4, 3, 3).component_count == 1
    assert fiber_structure(4, 3, 2).component_count == 2
    for a in range(2, 7):
        for b in range(2, 7):
            for c in range(1, min(a, b) + 1):
                fs = fiber_structure(a, b, c)
                assert (fs.component_count == 1) == (b == c)


def test_minus_EF_nef_on_fiber_always_true():
    assert minus_EF_nef_on_fiber(4, 3, 2)
    shifted = conormal_restricted(4, 3, 2).shifted(1)
    assert shifted.as_dict() == {1: 1, 0: 2}
    for a in range(2, 9):
        for b in range(2, 9):
            for c in range(1, min(a, b) + 1):
                assert minus_EF_nef_on_fiber(a, b, c)
