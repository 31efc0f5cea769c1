from collections import Counter

import pytest
from hypothesis import given, settings

from branchforge.curve import compactify, curve_equations
from branchforge.deformation import (
    b0_condition,
    deform,
    homogenize_family,
    jacobian_columns,
    row_shifts,
    t1_basis,
    weight_split,
)
from branchforge.errors import NegativeZExponent
from branchforge.semigroup import semigroup_from_generators
from branchforge.verify import intro_weights

from conftest import plane_branch_generators, sg


def test_intro_weight_formula():
    assert intro_weights(2, 3) == [6, 4]
    assert intro_weights(3, 4) == [12, 9, 8, 6, 5, 2]


@pytest.mark.parametrize("n,m", [(2, 3), (3, 4), (2, 5), (2, 7), (3, 5), (4, 5)])
def test_one_pair_weights(n, m):
    fam = deform(sg(n, m))
    assert fam.basis.dimension == (m - 1) * (n - 1)
    assert Counter(fam.basis.weights) == Counter(intro_weights(n, m))
    assert 0 not in fam.basis.weights


@pytest.mark.parametrize("gens", [(4, 6, 13), (4, 6, 15), (6, 9, 19), (4, 10, 21)])
def test_dimension_two_delta(gens):
    s = sg(*gens)
    fam = deform(s)
    assert fam.basis.dimension == 2 * s.delta
    assert 0 not in fam.basis.weights


def test_4_6_13_weights_and_split():
    fam = deform(sg(4, 6, 13))
    assert sorted(fam.basis.weights, reverse=True) == [
        26, 22, 20, 18, 16, 14, 12, 12, 10, 8, 8, 6, 4, 2, -1, -5]
    split = weight_split(fam)
    assert (split.tau_minus_dim, split.tau_plus_dim) == (2, 14)
    assert split.to_dict()["equisingular_subspace"] == "tau_minus"


def test_tau_minus_for_3_4_is_empty():
    # max 3i + 4j over i <= 2, j <= 1 is 10 < 12
    assert weight_split(deform(sg(3, 4))).tau_minus_dim == 0
    assert weight_split(deform(sg(4, 5))).tau_minus_dim == 1


def test_2_3_family():
    fam = deform(sg(2, 3))
    assert fam.equations[0].to_text() == "u1^2 - u0^3 + t1 + t2*u0"
    assert fam.parameter_weights == {"t1": 6, "t2": 4}
    d = fam.to_dict()
    assert [p["name"] for p in d["parameters"]] == ["t1", "t2"]
    assert [p["weight"] for p in d["parameters"]] == [6, 4]
    assert set(d) >= {"equations", "parameters", "tau_minus", "tau_plus"}


def test_jacobian_degrees():
    s = sg(4, 6, 13)
    cols = jacobian_columns(curve_equations(s), s)
    assert [c.degree for c in cols] == [-4, -6, -13]
    assert row_shifts(s) == [12, 26]


def test_t1_basis_degree_range_is_safe():
    s = sg(3, 5)
    cols = jacobian_columns(curve_equations(s), s)
    assert t1_basis(cols, s).dimension == t1_basis(cols, s, max_degree=40).dimension == 2 * s.delta


def test_homogenized_2_3():
    s = sg(2, 3)
    fam = deform(s)
    proj = homogenize_family(fam, compactify(curve_equations(s), s))
    assert proj.equations[0].to_text() == "X1^2 - X0^3 + t1*Z^6 + t2*X0*Z^4"
    assert proj.flagged == []


def test_homogenized_2_5_z_exponents():
    s = sg(2, 5)
    fam = deform(s)
    proj = homogenize_family(fam, compactify(curve_equations(s), s))
    zexp = sorted((dict(m).get("Z", 0) for m, _ in proj.equations[0].items()
                   if any(v.startswith("t") for v, _ in m)), reverse=True)
    assert zexp == [10 - 2 * i for i in range(4)]


def test_negative_weights_are_flagged():
    s = sg(4, 6, 13)
    fam = deform(s)
    model = compactify(curve_equations(s), s)
    proj = homogenize_family(fam, model)
    assert sorted({t for _, t in proj.flagged}) == sorted(fam.tau_minus)
    with pytest.raises(NegativeZExponent):
        homogenize_family(fam, model, strict=True)


def test_b0_condition():
    assert b0_condition(deform(sg(2, 3)), {"t1": 1, "t2": 0})
    fam = deform(sg(3, 4))
    assert b0_condition(fam, {t: 1 for t in fam.parameters})
    assert b0_condition(fam, {})
    # {4,6,13}: the weight -5 parameter carries the top-degree term of f_1
    fam = deform(sg(4, 6, 13))
    low = min(fam.parameters, key=lambda t: fam.parameter_weights[t])
    assert fam.parameter_weights[low] == -5
    assert b0_condition(fam, {low: 1})
    assert not b0_condition(fam, {low: 0})


@settings(max_examples=15, deadline=None)
@given(plane_branch_generators(max_genus=2, max_n=3, max_k=4))
def test_family_invariants(gens):
    s = semigroup_from_generators(gens)
    fam = deform(s)
    assert fam.basis.dimension == 2 * s.delta
    assert 0 not in fam.basis.weights
    assert fam.is_homogeneous()
    assert fam.equivariance_check(3)
