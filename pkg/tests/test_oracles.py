import pytest

from branchforge.errors import InvalidField
from branchforge.lattice import build_truncated_module, enumerate_stable_submodules
from branchforge.oracles import all_subspaces, gamma_lattice_count, naive_stable_count, naive_stable_subspaces

from conftest import sg


def test_subspace_counts_are_gaussian_binomials():
    # number of subspaces of F_2^3 is 1 + 7 + 7 + 1
    assert sum(1 for _ in all_subspaces(3, 2)) == 16
    assert sum(1 for _ in all_subspaces(4, 3, dims=[2])) == 130


@pytest.mark.parametrize("gens,q", [((2, 3), 2), ((2, 3), 3), ((2, 5), 2), ((3, 4), 2)])
def test_naive_matches_bfs_sets(gens, q):
    s = sg(*gens)
    bfs = enumerate_stable_submodules(build_truncated_module(s, q))
    assert [m.basis for m in bfs.submodules] == naive_stable_subspaces(s, q)


def test_naive_values():
    assert [naive_stable_count(sg(2, 3), q) for q in (2, 3)] == [3, 4]
    assert naive_stable_count(sg(2, 5), 2) == 7
    assert naive_stable_count(sg(3, 4), 2) == 19


def test_naive_needs_prime_field():
    with pytest.raises(InvalidField):
        naive_stable_count(sg(2, 3), 4)


def test_lattice_oracle():
    assert gamma_lattice_count(2, 3, 2) == 3
