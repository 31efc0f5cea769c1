from math import gcd

from hypothesis import strategies as st

from branchforge.semigroup import semigroup_from_generators


@st.composite
def plane_branch_generators(draw, max_genus=3, max_n=3, max_k=7):
    """Generators bb_0 < ... < bb_g of a plane-branch semigroup.

    Pick n_1..n_g >= 2, put e_i = n_{i+1}...n_g, bb_0 = e_0, and each next
    bb_i = e_i k_i with k_i prime to n_i and bb_i > n_{i-1} bb_{i-1}.
    """
    g = draw(st.integers(1, max_genus))
    n = [draw(st.integers(2, max_n)) for _ in range(g)]
    e = [1] * (g + 1)
    for i in range(g - 1, -1, -1):
        e[i] = e[i + 1] * n[i]
    gens = [e[0]]
    for i in range(1, g + 1):
        lo = gens[-1] + 1 if i == 1 else n[i - 2] * gens[-1] + 1
        k0 = -(-lo // e[i])
        ks = [k for k in range(k0, k0 + max_k) if gcd(k, n[i - 1]) == 1]
        gens.append(e[i] * draw(st.sampled_from(ks)))
    return tuple(gens)


def sg(*gens):
    return semigroup_from_generators(gens)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
