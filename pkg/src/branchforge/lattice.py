"""Point counts of anisotropic affine Springer fibers of monomial branches.

Let ``R = F_q[[t^Gamma]]``.  Index-0 gamma-stable lattices correspond to
fractional ``R``-ideals of index 0.  Every fractional ideal ``M`` has a
unique *0-normalization* ``M0 = t^{-v(M)} M``: it sits in ``F_q[[t]]``,
contains an element of valuation 0, hence contains ``t^c F_q[[t]]`` (``c``
the conductor).  Exactly one shift ``t^{-a} M0`` has index 0, namely
``a = colength(M0) - delta``.  So the points of ``X^0(F_q)`` are in
bijection with the ``R``-stable subspaces of ``F_q[[t]]/t^c`` that contain a
vector with nonzero constant term.  Those subspaces are enumerated here in
reduced row-echelon form (pivot = lowest nonzero coordinate = valuation),
which doubles as a canonical form and exposes the value set of each module.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import (
    BudgetExceeded,
    InsufficientFields,
    InterpolationMismatch,
    UsageError,
)
from .fields import FiniteField, field_of_order
from .semigroup import BranchSemigroup, contains

log = logging.getLogger(__name__)

__all__ = [
    "Budget",
    "TruncatedModule",
    "StableSubmodule",
    "StableSubmoduleSet",
    "GammaSemimodule",
    "PuritySignature",
    "build_truncated_module",
    "enumerate_stable_submodules",
    "descend_stable_submodules",
    "enumerate_semimodules",
    "count_points",
    "stable_submodules",
    "lagrange_interpolate",
    "purity_signature",
    "Echelon",
]

Vector = tuple  # tuple of field elements, index = power of t


@dataclass(frozen=True)
class Budget:
    max_q: int = 11
    max_c: int = 16
    max_delta: int = 8
    max_semimodule_delta: int = 20

    @classmethod
    def from_env(cls, env: str | None = None) -> "Budget":
        """Parse ``BRANCHFORGE_BUDGET`` such as ``"q=13,c=20,delta=10"``."""
        text = os.environ.get("BRANCHFORGE_BUDGET", "") if env is None else env
        keys = {"q": "max_q", "c": "max_c", "delta": "max_delta",
                "semimodule_delta": "max_semimodule_delta"}
        kw = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            name, _, value = part.partition("=")
            if name.strip() not in keys or not value.strip().isdigit():
                raise UsageError("bad BRANCHFORGE_BUDGET entry %r" % part)
            kw[keys[name.strip()]] = int(value)
        return cls(**kw)


def _shift(v: Vector, a: int) -> Vector:
    c = len(v)
    if a >= c:
        return (0,) * c
    return (0,) * a + v[: c - a]


@dataclass(frozen=True)
class TruncatedModule:
    """``F_q[[t]]/t^c`` with the action of ``t^{bb_i}`` for each generator."""

    semigroup: BranchSemigroup
    field: FiniteField
    c: int

    @property
    def q(self) -> int:
        return self.field.q

    def multiplier(self, a: int) -> tuple[tuple[int, ...], ...]:
        """Matrix of multiplication by ``t^a`` (entry ``[row][col]``)."""
        c = self.c
        return tuple(
            tuple(1 if row - col == a else 0 for col in range(c)) for row in range(c)
        )

    @property
    def multipliers(self) -> dict[int, tuple[tuple[int, ...], ...]]:
        return {b: self.multiplier(b) for b in self.semigroup.generators}

    def ring_exponents(self) -> list[int]:
        """Exponents ``a`` in Gamma with ``t^a`` nonzero modulo ``t^c``."""
        return self.semigroup.elements_below(self.c)

    def cyclic_vectors(self, v: Vector) -> list[Vector]:
        """Spanning set of ``R v``."""
        return [_shift(v, a) for a in self.ring_exponents()]


def build_truncated_module(s: BranchSemigroup, F: FiniteField | int,
                           budget: Budget | None = None) -> TruncatedModule:
    budget = budget or Budget.from_env()
    if isinstance(F, int):
        F = field_of_order(F)
    if F.q > budget.max_q:
        raise BudgetExceeded("q = %d exceeds the cap %d" % (F.q, budget.max_q))
    if s.conductor > budget.max_c:
        raise BudgetExceeded("conductor %d exceeds the cap %d" % (s.conductor, budget.max_c))
    if s.delta > budget.max_delta:
        raise BudgetExceeded("delta %d exceeds the cap %d" % (s.delta, budget.max_delta))
    if F.q ** s.delta > 10 ** 6:
        log.warning("expect about %d submodules for %s over %r", F.q ** s.delta, s, F)
    return TruncatedModule(s, F, s.conductor)


class Echelon:
    """Reduced row-echelon subspace of ``F_q^n``; pivot = first nonzero index."""

    __slots__ = ("F", "n", "rows")

    def __init__(self, F: FiniteField, n: int, rows: dict[int, list[int]] | None = None):
        self.F = F
        self.n = n
        self.rows: dict[int, list[int]] = rows if rows is not None else {}

    def copy(self) -> "Echelon":
        return Echelon(self.F, self.n, {p: list(r) for p, r in self.rows.items()})

    def reduce(self, v: Sequence[int]) -> list[int]:
        add, mul, neg = self.F.add, self.F.mul, self.F.neg
        v = list(v)
        for p, row in self.rows.items():
            x = v[p]
            if x:
                nx = mul[neg[x]]
                for k in range(p, self.n):
                    y = row[k]
                    if y:
                        v[k] = add[v[k]][nx[y]]
        return v

    def __contains__(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def insert(self, v: Sequence[int]) -> bool:
        """Add ``v`` to the span; returns False if it was already inside."""
        v = self.reduce(v)
        lead = next((k for k, x in enumerate(v) if x), None)
        if lead is None:
            return False
        F = self.F
        s = F.inv[v[lead]]
        v = [F.mul[s][x] for x in v]
        add, mul, neg = F.add, F.mul, F.neg
        for row in self.rows.values():
            x = row[lead]
            if x:
                nx = mul[neg[x]]
                for k in range(lead, self.n):
                    if v[k]:
                        row[k] = add[row[k]][nx[v[k]]]
        self.rows[lead] = v
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(sorted(self.rows))

    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.rows[p]) for p in sorted(self.rows))


@dataclass(frozen=True)
class StableSubmodule:
    basis: tuple[tuple[int, ...], ...]  # canonical RREF rows, sorted by pivot
    value_set: tuple[int, ...]  # pivot valuations (Delta below the conductor)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def gap_part(self, s: BranchSemigroup) -> tuple[int, ...]:
        return tuple(a for a in self.value_set if not contains(s, a))


@dataclass
class StableSubmoduleSet:
    module: TruncatedModule
    submodules: list[StableSubmodule]

    def __len__(self):
        return len(self.submodules)

    def strata(self) -> dict[tuple[int, ...], int]:
        """Count per gap part ``S`` of the value set ``Delta = Gamma + S``."""
        out: dict[tuple[int, ...], int] = {}
        for m in self.submodules:
            k = m.gap_part(self.module.semigroup)
            out[k] = out.get(k, 0) + 1
        return dict(sorted(out.items(), key=lambda kv: (len(kv[0]), kv[0])))


def _span(T: TruncatedModule, base: Echelon | None, vectors: Iterable[Vector]) -> Echelon:
    E = base.copy() if base is not None else Echelon(T.field, T.c)
    for v in vectors:
        E.insert(v)
    return E


def _seed_vectors(T: TruncatedModule, exhaustive: bool) -> Iterable[Vector]:
    """Cyclic generators with nonzero constant term.

    ``R v = R (u v)`` for every unit ``u`` of ``R``, and multiplying by
    ``1 - x t^a`` (``a`` in Gamma) clears the coefficient at ``t^a``, so
    ``v = 1 + (terms at gap positions)`` already gives every cyclic module.
    ``exhaustive=True`` walks all ``(q-1) q^{c-1}`` vectors instead.
    """
    q, c = T.q, T.c
    if exhaustive:
        for v in product(range(q), repeat=c):
            if v[0]:
                yield v
        return
    gaps = [b for b in T.semigroup.gaps if b < c]
    for vals in product(range(q), repeat=len(gaps)):
        v = [0] * c
        v[0] = 1
        for b, x in zip(gaps, vals):
            v[b] = x
        yield tuple(v)


def _complement_reps(E: Echelon, q: int) -> Iterable[Vector]:
    """One vector per line of ``F_q^c / E`` (up to scaling)."""
    free = [k for k in range(E.n) if k not in E.rows]
    for idx, lead in enumerate(free):
        rest = free[idx + 1:]
        for vals in product(range(q), repeat=len(rest)):
            v = [0] * E.n
            v[lead] = 1
            for k, x in zip(rest, vals):
                v[k] = x
            yield tuple(v)


def _expand(T: TruncatedModule, E: Echelon) -> list[Echelon]:
    return [_span(T, E, T.cyclic_vectors(w)) for w in _complement_reps(E, T.q)]


def enumerate_stable_submodules(T: TruncatedModule, workers: int = 1,
                                exhaustive_seeds: bool = False) -> StableSubmoduleSet:
    """All ``R``-stable subspaces with a valuation-0 vector.

    Seeds are the cyclic modules ``R v``; the set is then closed under
    ``M -> M + R w`` breadth-first, deduplicated on canonical form.  Every
    stable module is a finite sum of cyclic ones, so the closure is complete.
    The result is sorted by canonical form and does not depend on
    ``workers``.
    """
    seen: dict[tuple, Echelon] = {}
    frontier: list[Echelon] = []
    for v in _seed_vectors(T, exhaustive_seeds):
        E = _span(T, None, T.cyclic_vectors(v))
        k = E.key()
        if k not in seen:
            seen[k] = E
            frontier.append(E)

    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while frontier:
            frontier.sort(key=Echelon.key)
            if pool is None:
                results = [_expand(T, E) for E in frontier]
            else:
                results = list(pool.map(lambda E: _expand(T, E), frontier))
            nxt = []
            for group in results:
                for E in group:
                    k = E.key()
                    if k not in seen:
                        seen[k] = E
                        nxt.append(E)
            frontier = nxt
    finally:
        if pool is not None:
            pool.shutdown()

    subs = [StableSubmodule(k, seen[k].pivots) for k in sorted(seen)]
    return StableSubmoduleSet(T, subs)


def _solve_affine(F: FiniteField, rows: list[list[int]], rhs: list[int], n: int):
    """All ``x`` in ``F^n`` with ``rows . x == rhs``; yields tuples."""
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, len(m)) if m[i][col]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        s = inv[m[r][col]]
        m[r] = [mul[s][x] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = mul[neg[m[i][col]]]
                m[i] = [add[x][f[y]] for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    if any(row[n] for row in m[r:]):
        return
    free = [col for col in range(n) if col not in pivots]
    for vals in product(range(F.q), repeat=len(free)):
        x = [0] * n
        for col, v in zip(free, vals):
            x[col] = v
        for i, col in enumerate(pivots):
            acc = m[i][n]
            for fc in free:
                if m[i][fc] and x[fc]:
                    acc = add[acc][neg[mul[m[i][fc]][x[fc]]]]
            x[col] = acc
        yield tuple(x)


def _descend(T: TruncatedModule, E: Echelon, k: int) -> list[Echelon]:
    """Stable extensions of ``E`` (pivots > k) by at most one pivot at ``k``.

    A new row is ``w = t^k + sum_j x_j t^j`` over the non-pivot ``j > k``;
    stability asks ``t^a w`` to reduce to zero modulo ``E`` for every
    generator ``a``, which is affine-linear in the ``x_j``.
    """
    F, c = T.field, T.c
    out = [] if k == 0 else [E]  # a module needs a valuation-0 vector
    free = [j for j in range(k + 1, c) if j not in E.rows]
    eq_rows: list[list[int]] = []
    rhs: list[int] = []
    for a in T.semigroup.generators:
        if k + a >= c:
            continue
        base = E.reduce(_shift(_unit(c, k), a))
        cols = [E.reduce(_shift(_unit(c, j), a)) for j in free]
        for pos in range(c):
            if pos in E.rows:
                continue
            eq_rows.append([col[pos] for col in cols])
            rhs.append(F.neg[base[pos]])
    for x in _solve_affine(F, eq_rows, rhs, len(free)):
        w = [0] * c
        w[k] = 1
        for j, v in zip(free, x):
            w[j] = v
        E2 = E.copy()
        E2.rows[k] = w
        out.append(E2)
    return out


def _unit(c: int, k: int) -> Vector:
    v = [0] * c
    v[k] = 1
    return tuple(v)


def descend_stable_submodules(T: TruncatedModule, workers: int = 1) -> StableSubmoduleSet:
    """Same set as :func:`enumerate_stable_submodules`, built by valuation.

    ``M_k = M + t^k`` part is stable for every ``k``; going from ``M_{k+1}``
    to ``M_k`` adds at most one echelon row, chosen among the solutions of a
    linear system, so every module is produced exactly once.
    """
    level = [Echelon(T.field, T.c)]
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for k in range(T.c - 1, -1, -1):
            if pool is None:
                groups = [_descend(T, E, k) for E in level]
            else:
                groups = list(pool.map(lambda E, k=k: _descend(T, E, k), level))
            level = [E for grp in groups for E in grp]
    finally:
        if pool is not None:
            pool.shutdown()
    if T.c == 0:  # smooth branch: F_q[[t]] itself is the only module
        level = [Echelon(T.field, 0)]
    subs = sorted((StableSubmodule(E.key(), E.pivots) for E in level), key=lambda m: m.basis)
    return StableSubmoduleSet(T, subs)


@dataclass(frozen=True)
class GammaSemimodule:
    gap_part: tuple[int, ...]  # S, a subset of the gaps

    def elements_below(self, s: BranchSemigroup, bound: int) -> list[int]:
        S = set(self.gap_part)
        return [a for a in range(bound) if a in S or contains(s, a)]

    def __str__(self):
        return "{%s}" % ", ".join(map(str, self.gap_part))


def enumerate_semimodules(s: BranchSemigroup, budget: Budget | None = None) -> list[GammaSemimodule]:
    """Subsets ``S`` of the gaps with ``(Gamma + S) + Gamma`` inside ``Gamma + S``.

    Gaps are decided from the largest down, so adding a gap ``x`` only needs
    ``x + bb`` (already decided) to be in ``Delta`` for each generator.
    """
    budget = budget or Budget.from_env()
    if s.delta > budget.max_semimodule_delta:
        raise BudgetExceeded("delta %d exceeds the semimodule cap %d"
                             % (s.delta, budget.max_semimodule_delta))
    gaps = sorted(s.gaps, reverse=True)
    out: list[tuple[int, ...]] = []
    chosen: set[int] = set()

    def in_delta(a: int) -> bool:
        return a in chosen or contains(s, a)

    def walk(idx: int):
        if idx == len(gaps):
            out.append(tuple(sorted(chosen)))
            return
        x = gaps[idx]
        walk(idx + 1)
        if all(in_delta(x + b) for b in s.generators):
            chosen.add(x)
            walk(idx + 1)
            chosen.discard(x)

    walk(0)
    out.sort(key=lambda S: (len(S), S))
    return [GammaSemimodule(S) for S in out]


METHODS = ("descent", "bfs")


def stable_submodules(T: TruncatedModule, method: str = "descent",
                      workers: int = 1) -> StableSubmoduleSet:
    if method == "descent":
        return descend_stable_submodules(T, workers=workers)
    if method == "bfs":
        return enumerate_stable_submodules(T, workers=workers)
    raise UsageError("unknown enumeration method %r (choose from %s)" % (method, METHODS))


def count_points(s: BranchSemigroup, F: FiniteField | int, workers: int = 1,
                 budget: Budget | None = None, method: str = "descent") -> int:
    """``|X^0(F_q)|`` for the monomial branch with semigroup ``s``."""
    T = build_truncated_module(s, F, budget)
    return len(stable_submodules(T, method, workers))


def lagrange_interpolate(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (constant first) of the polynomial through ``points``."""
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise UsageError("interpolation nodes must be distinct")
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis  # multiply by x
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xs[i] - xj
        for k in range(n):
            coeffs[k] += Fraction(yi) * basis[k] / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def evaluate(coeffs: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _exact_log(n: int, q: int) -> int | None:
    d = 0
    while n > 1 and n % q == 0:
        n //= q
        d += 1
    return d if n == 1 else None


@dataclass
class PuritySignature:
    semigroup: BranchSemigroup
    counts: dict[int, int]
    polynomial: list[Fraction]
    strata: dict[tuple[int, ...], dict[int, int]]  # S -> {q: count}
    exponents: dict[tuple[int, ...], int | None]
    semimodule_count: int
    flags: dict[str, bool]
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.flags.values())

    def to_dict(self) -> dict:
        return {
            "counts": {str(q): n for q, n in self.counts.items()},
            "polynomial": [int(c) if c.denominator == 1 else str(c) for c in self.polynomial],
            "strata": [
                {
                    "delta_set": list(S),
                    "exponent": self.exponents[S],
                    "counts": {str(q): n for q, n in per_q.items()},
                }
                for S, per_q in self.strata.items()
            ],
            "semimodules": self.semimodule_count,
            "flags": dict(self.flags),
            "notes": list(self.notes),
        }


def purity_signature(s: BranchSemigroup, fields: Sequence[FiniteField | int],
                     workers: int = 1, budget: Budget | None = None,
                     method: str = "descent") -> PuritySignature:
    """Fit the point-count polynomial and check its purity-type properties.

    The first ``delta + 1`` fields determine the polynomial; any further ones
    are out-of-sample checks.  If only ``q = 2`` disagrees and the remaining
    fields still determine a consistent fit, the deviation is noted and that
    fit is used instead of failing.
    """
    fields = [field_of_order(F) if isinstance(F, int) else F for F in fields]
    qs = [F.q for F in fields]
    if len(set(qs)) != len(qs):
        raise UsageError("field orders must be pairwise distinct: %s" % qs)
    need = s.delta + 1
    if len(fields) < need:
        raise InsufficientFields("need %d fields for delta = %d, got %d"
                                 % (need, s.delta, len(fields)))

    counts: dict[int, int] = {}
    strata: dict[tuple[int, ...], dict[int, int]] = {}
    for F in fields:
        sub = stable_submodules(build_truncated_module(s, F, budget), method, workers)
        counts[F.q] = len(sub)
        for S, n in sub.strata().items():
            strata.setdefault(S, {})[F.q] = n

    notes: list[str] = []
    pts = [(q, counts[q]) for q in qs]
    poly = lagrange_interpolate(pts[:need])
    bad = [q for q, n in pts[need:] if evaluate(poly, q) != n]
    if bad:
        rest = [pt for pt in pts if pt[0] != 2]
        if 2 in qs and len(rest) >= need:
            alt = lagrange_interpolate(rest[:need])
            if all(evaluate(alt, q) == n for q, n in rest[need:]):
                notes.append("q=2 deviates from the fit through the other fields")
                poly = alt
                bad = []
        if bad:
            raise InterpolationMismatch(
                "counts at q=%s disagree with the fit %s" % (bad, poly)
            )

    semimods = enumerate_semimodules(s, budget)
    semi_keys = {m.gap_part for m in semimods}
    exponents: dict[tuple[int, ...], int | None] = {}
    for S, per_q in strata.items():
        exps = {_exact_log(n, q) for q, n in per_q.items()}
        exponents[S] = exps.pop() if len(exps) == 1 and None not in exps else None
    while len(poly) <= s.delta:
        poly.append(Fraction(0))

    flags = {
        "integer_coefficients": all(c.denominator == 1 for c in poly),
        "nonnegative_coefficients": all(c >= 0 for c in poly),
        "monic_degree_delta": len(poly) == s.delta + 1 and poly[-1] == 1,
        "euler_matches_semimodules": evaluate(poly, 1) == len(semimods),
        "strata_are_powers": all(
            exponents[S] is not None and len(strata[S]) == len(qs) for S in strata
        ),
        "strata_match_semimodules": set(strata) == semi_keys
        and all(len(per_q) == len(qs) for per_q in strata.values()),
    }
    return PuritySignature(s, counts, poly, strata, exponents, len(semimods), flags, notes)
