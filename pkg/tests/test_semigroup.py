from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings

from branchforge.errors import (
    EmptyGenerators,
    InvalidGenerators,
    InvalidPuiseux,
    NonCoprimeGenerators,
    NotMinimal,
    UsageError,
)
from branchforge.semigroup import (
    PuiseuxData,
    contains,
    gcd_ladder,
    greedy_exponents,
    parse_semigroup,
    puiseux_from_semigroup,
    represent,
    semigroup_from_generators,
    semigroup_from_json,
    semigroup_from_puiseux,
    validate_plane_branch,
)

from conftest import plane_branch_generators, sg


def brute_force_elements(gens, bound):
    """All sums of generators below ``bound`` by direct nested enumeration."""
    out = set()
    ranges = [range(bound // g + 1) for g in gens]
    for coeffs in product(*ranges):
        v = sum(c * g for c, g in zip(coeffs, gens))
        if v < bound:
            out.add(v)
    return out


@pytest.mark.parametrize("gens,delta,c", [
    ((2, 3), 1, 2),
    ((3, 4), 3, 6),
    ((2, 5), 2, 4),
    ((4, 6, 13), 8, 16),
])
def test_invariants(gens, delta, c):
    s = sg(*gens)
    assert (s.delta, s.conductor) == (delta, c)
    assert c == 2 * delta


def test_gaps_of_4_6_13():
    assert sg(4, 6, 13).gaps == (1, 2, 3, 5, 7, 9, 11, 15)
    assert sg(3, 4).gaps == (1, 2, 5)


@pytest.mark.parametrize("gens", [(2, 3), (3, 5), (4, 6, 13), (5, 7), (6, 9, 19), (4, 10, 21)])
def test_sieve_against_brute_force(gens):
    s = sg(*gens)
    bound = s.conductor + 10
    assert set(s.elements_below(bound)) == brute_force_elements(gens, bound)


def test_non_minimal_generators_are_trimmed():
    assert sg(4, 6, 13, 8, 10).generators == (4, 6, 13)


def test_errors():
    with pytest.raises(EmptyGenerators):
        semigroup_from_generators([])
    with pytest.raises(InvalidGenerators):
        semigroup_from_generators([0, 3])
    with pytest.raises(NonCoprimeGenerators):
        semigroup_from_generators([4, 6])


def test_puiseux_round_trip():
    s = semigroup_from_puiseux(PuiseuxData(4, (6, 7)))
    assert s.generators == (4, 6, 13)
    p = puiseux_from_semigroup(s)
    assert (p.multiplicity, p.characteristic_exponents) == (4, (6, 7))


@pytest.mark.parametrize("mult,exps", [(4, (6,)), (4, (2, 7)), (4, (6, 8)), (4, (8, 9)), (0, (1,))])
def test_bad_puiseux(mult, exps):
    with pytest.raises(InvalidPuiseux):
        PuiseuxData(mult, exps)


def _valuation_set(x, y, bound):
    """Leading exponents of k-span of x^a y^b, as series truncated at ``bound``.

    ``x`` and ``y`` are coefficient lists; reduction is over the rationals
    with the pivot at the lowest nonzero exponent.
    """
    def mul(f, g):
        h = [Fraction(0)] * bound
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g[: bound - i]):
                    h[i + j] += a * b
        return h

    one = [Fraction(1)] + [Fraction(0)] * (bound - 1)
    series = []
    xa = one
    for _ in range(bound):
        yb = xa
        for _ in range(bound):
            if not any(yb):
                break
            series.append(yb)
            yb = mul(yb, y)
        xa = mul(xa, x)
        if not any(xa):
            break
    rows = {}
    for v in series:
        v = list(v)
        while any(v):
            p = next(i for i, a in enumerate(v) if a)
            if p not in rows:
                rows[p] = [a / v[p] for a in v]
                break
            f = v[p]
            v = [a - f * b for a, b in zip(v, rows[p])]
    return set(rows)


def test_puiseux_recursion_against_valuation_oracle():
    # x = t^4, y = t^6 + t^7 has Puiseux data (4; 6, 7)
    bound = 32
    x = [Fraction(int(i == 4)) for i in range(bound)]
    y = [Fraction(int(i in (6, 7))) for i in range(bound)]
    vals = _valuation_set(x, y, bound)
    s = semigroup_from_puiseux(PuiseuxData(4, (6, 7)))
    assert vals == set(s.elements_below(bound))


def test_ladder_and_representation():
    s = sg(4, 6, 13)
    L = gcd_ladder(s)
    assert L.e == (4, 2, 1) and L.n == (2, 2)
    assert represent(s, 1).coefficients == (3,)
    assert represent(s, 2).coefficients == (2, 3)
    with pytest.raises(NotMinimal):
        gcd_ladder(sg(6, 8, 10, 11))  # gcd stays 2 at the generator 10
    assert greedy_exponents(26, (4, 6)) == (2, 3)


def test_validation_reports():
    assert validate_plane_branch(sg(4, 6, 13)).ok
    assert validate_plane_branch(sg(4, 6, 15)).ok
    bad = validate_plane_branch(sg(4, 6, 11))
    assert not bad.ok
    assert [k for k, v in bad.checks.items() if not v] == ["strong_increase"]
    assert not validate_plane_branch(sg(3, 5, 7)).ok


def test_parsing():
    assert parse_semigroup("4,6,13").generators == (4, 6, 13)
    assert parse_semigroup("(4; 6, 7)").generators == (4, 6, 13)
    assert semigroup_from_json('{"generators": [3, 4]}').generators == (3, 4)
    assert semigroup_from_json({"puiseux": {"mult": 4, "exponents": [6, 7]}}).generators == (4, 6, 13)
    with pytest.raises(UsageError):
        parse_semigroup("4,x")
    with pytest.raises(UsageError):
        semigroup_from_json({"gens": [2, 3]})


@settings(max_examples=40, deadline=None)
@given(plane_branch_generators())
def test_plane_branch_properties(gens):
    s = semigroup_from_generators(gens)
    assert s.generators == gens
    assert validate_plane_branch(s).ok
    assert s.conductor == 2 * s.delta
    # additive closure below a bound
    els = s.elements_below(s.conductor + gens[0])
    for a in els:
        for b in gens:
            if a + b < s.conductor + gens[0]:
                assert contains(s, a + b)
    # symmetry: a in Gamma iff c-1-a not in Gamma
    for a in range(s.conductor):
        assert contains(s, a) != contains(s, s.conductor - 1 - a)
    L = gcd_ladder(s)
    assert L.e[-1] == 1
    for i in range(1, len(gens)):
        rep = represent(s, i)
        assert rep.evaluate(gens) == L.n[i - 1] * gens[i]
    assert semigroup_from_puiseux(puiseux_from_semigroup(s)) == s
