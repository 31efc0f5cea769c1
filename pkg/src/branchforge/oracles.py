"""Brute-force cross-checks for the submodule enumerators.

Both oracles walk *every* subspace of a small ``F_p``-vector space (prime
``p`` only) and filter; they share no code with :mod:`branchforge.lattice`
beyond the semigroup object.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Callable, Iterator, Sequence

from .fields import prime_power
from .errors import InvalidField
from .semigroup import BranchSemigroup

__all__ = ["all_subspaces", "naive_stable_count", "naive_stable_subspaces",
           "gamma_lattice_count"]

Rows = tuple  # tuple of row tuples in reduced echelon form


def _prime(q: int) -> int:
    p, k = prime_power(q)
    if k != 1:
        raise InvalidField("oracles run over prime fields only, got q=%d" % q)
    return p


def all_subspaces(n: int, p: int, dims: Sequence[int] | None = None) -> Iterator[Rows]:
    """Every subspace of ``F_p^n`` as reduced echelon rows (pivot = first nonzero)."""
    for k in (range(n + 1) if dims is None else dims):
        for piv in combinations(range(n), k):
            pset = set(piv)
            slots = [(r, j) for r, pc in enumerate(piv) for j in range(pc + 1, n) if j not in pset]
            for vals in product(range(p), repeat=len(slots)):
                rows = [[0] * n for _ in piv]
                for r, pc in enumerate(piv):
                    rows[r][pc] = 1
                for (r, j), x in zip(slots, vals):
                    rows[r][j] = x
                yield tuple(tuple(r) for r in rows)


def _in_span(v: Sequence[int], rows: Rows, p: int) -> bool:
    v = list(v)
    for r in rows:
        pc = next(j for j, x in enumerate(r) if x)
        f = v[pc]
        if f:
            v = [(a - f * b) % p for a, b in zip(v, r)]
    return not any(v)


def _stable(rows: Rows, ops: Sequence[Callable[[Sequence[int]], list[int]]], p: int) -> bool:
    return all(_in_span(op(r), rows, p) for op in ops for r in rows)


def _shift_op(a: int, n: int):
    def op(v):
        return [0] * min(a, n) + list(v[: max(n - a, 0)])
    return op


def naive_stable_subspaces(s: BranchSemigroup, q: int) -> list[Rows]:
    """All subspaces of ``F_q^c`` closed under ``t^{bb_i}`` and containing a
    vector of valuation 0."""
    p = _prime(q)
    c = s.conductor
    ops = [_shift_op(b, c) for b in s.generators]
    out = []
    for rows in all_subspaces(c, p):
        if not rows or rows[0][0] != 1:
            continue
        if _stable(rows, ops, p):
            out.append(rows)
    return sorted(out)


def naive_stable_count(s: BranchSemigroup, q: int) -> int:
    return len(naive_stable_subspaces(s, q))


def gamma_lattice_count(n: int, m: int, q: int, window: int = 2) -> int:
    """Index-0 lattices ``L`` in ``F_q((eps))^n`` with ``gamma L <= L``.

    ``gamma`` is the companion matrix of ``T^n - eps^m``.  Only lattices with
    ``eps^w O^n <= L <= eps^-w O^n`` (``w = window``) are seen; they are the
    ``eps``- and ``gamma``-stable subspaces of dimension ``w n`` in
    ``eps^-w O^n / eps^w O^n`` (index = dim - w n).
    """
    p = _prime(q)
    w = window
    N = 2 * w * n

    def idx(k, i):
        return (k + w) * n + i

    def eps(v):
        out = [0] * N
        for k in range(-w, w - 1):
            for i in range(n):
                out[idx(k + 1, i)] = v[idx(k, i)]
        return out

    def gamma(v):
        out = [0] * N
        for k in range(-w, w):
            for i in range(n):
                x = v[idx(k, i)]
                if not x:
                    continue
                if i < n - 1:
                    out[idx(k, i + 1)] = (out[idx(k, i + 1)] + x) % p
                elif k + m < w:
                    out[idx(k + m, 0)] = (out[idx(k + m, 0)] + x) % p
        return out

    count = 0
    for rows in all_subspaces(N, p, dims=[w * n]):
        if _stable(rows, [eps], p) and _stable(rows, [gamma], p):
            count += 1
    return count
