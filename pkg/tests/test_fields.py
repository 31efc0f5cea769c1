import pytest

from branchforge.errors import InvalidField
from branchforge.fields import CONWAY, FiniteField, field_of_order, is_irreducible, prime_power


@pytest.mark.parametrize("key", sorted(CONWAY))
def test_stored_moduli_are_irreducible(key):
    p, _ = key
    assert is_irreducible(CONWAY[key], p)


def test_reducible_rejected():
    assert not is_irreducible((1, 0, 1), 2)  # x^2 + 1 = (x + 1)^2
    with pytest.raises(InvalidField):
        FiniteField(2, 2, (1, 0, 1))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 16, 25])
def test_field_axioms(q):
    F = field_of_order(q)
    assert F.q == q
    for a in F.elements():
        assert F.add[a][F.neg[a]] == 0
        if a:
            assert F.mul[a][F.inv[a]] == 1
        for b in F.elements():
            assert F.mul[a][b] == F.mul[b][a]
    # distributivity on a sample
    for a in range(q):
        for b in range(q):
            c = (a + b + 1) % q
            assert F.mul[a][F.add[b][c]] == F.add[F.mul[a][b]][F.mul[a][c]]


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(7) == (7, 1)
    for bad in (1, 6, 12):
        with pytest.raises(InvalidField):
            prime_power(bad)
