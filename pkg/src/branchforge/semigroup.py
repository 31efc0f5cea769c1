"""Numerical semigroups of plane branches.

A plane branch has a value semigroup ``Gamma`` (valuations of the local ring
inside its normalization ``k[[t]]``).  This module builds ``Gamma`` from a
generating set or from Puiseux characteristic exponents and exposes the
discrete invariants used by the rest of the package: gaps, delta, conductor,
the gcd ladder ``(e_i, n_i)`` and the representations
``n_i * b_i = sum_j l_j * b_j``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from .errors import (
    EmptyGenerators,
    InvalidGenerators,
    InvalidPuiseux,
    NonCoprimeGenerators,
    NotMinimal,
    Unrepresentable,
    UsageError,
)

__all__ = [
    "PuiseuxData",
    "BranchSemigroup",
    "GcdLadder",
    "SubRepresentation",
    "ValidationReport",
    "semigroup_from_generators",
    "semigroup_from_puiseux",
    "puiseux_from_semigroup",
    "gcd_ladder",
    "represent",
    "contains",
    "validate_plane_branch",
    "parse_semigroup",
    "semigroup_from_json",
]


@dataclass(frozen=True)
class PuiseuxData:
    multiplicity: int
    characteristic_exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "characteristic_exponents", tuple(self.characteristic_exponents)
        )
        _check_puiseux(self)

    @property
    def genus(self) -> int:
        return len(self.characteristic_exponents)

    def __str__(self):
        return "(%d; %s)" % (
            self.multiplicity,
            ", ".join(str(b) for b in self.characteristic_exponents),
        )


def _check_puiseux(p: PuiseuxData) -> None:
    b0 = p.multiplicity
    if b0 < 1:
        raise InvalidPuiseux("multiplicity must be positive, got %r" % b0)
    prev, e = b0, b0
    for b in p.characteristic_exponents:
        if b <= prev:
            raise InvalidPuiseux(
                "characteristic exponents must increase strictly past the "
                "multiplicity: %s" % (p,)
            )
        if b % e == 0:
            raise InvalidPuiseux(
                "exponent %d is divisible by gcd %d of its predecessors" % (b, e)
            )
        prev, e = b, gcd(e, b)
    if e != 1:
        raise InvalidPuiseux("gcd of %s is %d, not 1" % (p, e))


@dataclass(frozen=True)
class BranchSemigroup:
    """A numerical semigroup with its minimal generators and gaps.

    ``gaps`` is the sorted tuple of positive integers outside the semigroup;
    ``conductor`` is the least ``c`` with ``[c, oo)`` inside it.
    """

    generators: tuple[int, ...]
    gaps: tuple[int, ...]
    conductor: int
    _gapset: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_gapset", frozenset(self.gaps))

    @property
    def delta(self) -> int:
        return len(self.gaps)

    @property
    def genus(self) -> int:
        """Number of characteristic pairs ``g`` (generators minus one)."""
        return len(self.generators) - 1

    def __contains__(self, a: int) -> bool:
        return contains(self, a)

    def elements_below(self, bound: int) -> list[int]:
        """Sorted elements of the semigroup in ``[0, bound)``."""
        return [a for a in range(max(bound, 0)) if a not in self._gapset]

    def __str__(self):
        return "<%s>" % ", ".join(str(b) for b in self.generators)

    def to_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "gaps": list(self.gaps),
            "delta": self.delta,
            "conductor": self.conductor,
        }


@dataclass(frozen=True)
class GcdLadder:
    e: tuple[int, ...]
    n: tuple[int, ...]


@dataclass(frozen=True)
class SubRepresentation:
    index: int
    coefficients: tuple[int, ...]

    def evaluate(self, generators: Sequence[int]) -> int:
        return sum(l * b for l, b in zip(self.coefficients, generators))


def _sieve(gens: Sequence[int], bound: int) -> list[bool]:
    member = [False] * (bound + 1)
    member[0] = True
    for a in range(1, bound + 1):
        member[a] = any(a >= g and member[a - g] for g in gens)
    return member


def semigroup_from_generators(gens: Iterable[int]) -> BranchSemigroup:
    gens = sorted(set(int(g) for g in gens))
    if not gens:
        raise EmptyGenerators("at least one generator is required")
    if gens[0] <= 0:
        raise InvalidGenerators("generators must be positive: %s" % gens)
    d = reduce(gcd, gens)
    if d != 1:
        raise NonCoprimeGenerators(
            "generators %s have gcd %d; the semigroup is not numerical" % (gens, d)
        )
    top, low = gens[-1], gens[0]
    # Frobenius number is below top**2; the extra ``low`` slack lets us check
    # a full run of ``low`` consecutive members past the conductor.
    bound = max(top * top, 2) + low
    member = _sieve(gens, bound)
    gaps = [a for a in range(1, bound + 1) if not member[a]]
    conductor = gaps[-1] + 1 if gaps else 0
    assert conductor + low <= bound + 1 and all(
        member[conductor : conductor + low]
    ), "sieve window too small to certify the conductor"

    minimal = []
    for g in gens:
        if not any(member[a] and member[g - a] for a in range(1, g)):
            minimal.append(g)
    return BranchSemigroup(tuple(minimal), tuple(gaps), conductor)


def semigroup_from_puiseux(p: PuiseuxData) -> BranchSemigroup:
    """Semigroup generators from Puiseux characteristic exponents.

    Uses ``bb_0 = b_0``, ``bb_1 = b_1`` and
    ``bb_{i+1} = n_i * bb_i + b_{i+1} - b_i``.
    """
    b = (p.multiplicity,) + p.characteristic_exponents
    e = [b[0]]
    for x in b[1:]:
        e.append(gcd(e[-1], x))
    bb = list(b[:2])
    for i in range(1, len(b) - 1):
        n_i = e[i - 1] // e[i]
        bb.append(n_i * bb[i] + b[i + 1] - b[i])
    s = semigroup_from_generators(bb)
    if s.generators != tuple(bb):
        raise InvalidPuiseux(
            "generators %s derived from %s are not minimal" % (bb, p)
        )
    ladder = gcd_ladder(s)
    for i in range(1, len(bb) - 1):
        if ladder.n[i - 1] * bb[i] >= bb[i + 1]:
            raise InvalidPuiseux("plane-branch inequality fails for %s" % (p,))
    return s


def puiseux_from_semigroup(s: BranchSemigroup) -> PuiseuxData:
    """Inverse of :func:`semigroup_from_puiseux`."""
    bb = s.generators
    ladder = gcd_ladder(s)
    b = list(bb[:2])
    for i in range(1, len(bb) - 1):
        b.append(bb[i + 1] - ladder.n[i - 1] * bb[i] + b[i])
    return PuiseuxData(b[0], tuple(b[1:]))


def gcd_ladder(s: BranchSemigroup) -> GcdLadder:
    bb = s.generators
    e = [bb[0]]
    n = []
    for i in range(1, len(bb)):
        e.append(gcd(bb[i], e[-1]))
        n.append(e[i - 1] // e[i])
        if n[-1] == 1:
            raise NotMinimal(
                "n_%d = 1 for %s: generator %d does not refine the gcd"
                % (i, s, bb[i])
            )
    return GcdLadder(tuple(e), tuple(n))


def represent(s: BranchSemigroup, i: int) -> SubRepresentation:
    """Write ``n_i * bb_i`` as a nonnegative combination of ``bb_0..bb_{i-1}``.

    Greedy from the highest generator downward, backtracking on dead ends, so
    the result is deterministic.
    """
    bb = s.generators
    if not 1 <= i < len(bb):
        raise IndexError("index %d outside 1..%d" % (i, len(bb) - 1))
    target = gcd_ladder(s).n[i - 1] * bb[i]
    coeffs = _greedy_combination(target, bb[:i])
    if coeffs is None:
        raise Unrepresentable(
            "%d = n_%d * %d is not in <%s>"
            % (target, i, bb[i], ", ".join(map(str, bb[:i])))
        )
    return SubRepresentation(i, coeffs)


def _greedy_combination(target: int, gens: Sequence[int]) -> tuple[int, ...] | None:
    # depth-first, largest coefficient on the highest generator first
    out = [0] * len(gens)

    def search(j: int, rest: int) -> bool:
        if j == 0:
            if rest % gens[0]:
                return False
            out[0] = rest // gens[0]
            return True
        for l in range(rest // gens[j], -1, -1):
            out[j] = l
            if search(j - 1, rest - l * gens[j]):
                return True
        return False

    if not gens:
        return () if target == 0 else None
    return tuple(out) if search(len(gens) - 1, target) else None


def greedy_exponents(a: int, gens: Sequence[int]) -> tuple[int, ...] | None:
    """Exponent vector ``m`` with ``sum m_k * gens_k == a`` (same tie-break as
    :func:`represent`), or ``None`` if ``a`` is not in the semigroup."""
    if a < 0:
        return None
    return _greedy_combination(a, gens)


def contains(s: BranchSemigroup, a: int) -> bool:
    if a < 0:
        return False
    if a >= s.conductor:
        return True
    return a not in s._gapset


@dataclass
class ValidationReport:
    semigroup: BranchSemigroup
    checks: dict[str, bool]
    messages: list[str]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {"checks": dict(self.checks), "messages": list(self.messages)}


def validate_plane_branch(s: BranchSemigroup) -> ValidationReport:
    bb = s.generators
    checks: dict[str, bool] = {}
    msgs: list[str] = []

    checks["gcd_one"] = reduce(gcd, bb) == 1
    if not checks["gcd_one"]:
        msgs.append("gcd of generators is not 1")

    minimal = all(
        _greedy_combination(b, [x for x in bb if x != b]) is None for b in bb
    )
    try:
        ladder = gcd_ladder(s)
    except NotMinimal as exc:
        ladder = None
        msgs.append(str(exc))
        minimal = False
    checks["minimality"] = minimal

    membership = ladder is not None
    increase = ladder is not None
    if ladder is not None:
        for i in range(1, len(bb)):
            nb = ladder.n[i - 1] * bb[i]
            if _greedy_combination(nb, bb[:i]) is None:
                membership = False
                msgs.append("n_%d*bb_%d = %d not in <bb_0..bb_%d>" % (i, i, nb, i - 1))
            if i + 1 < len(bb) and not nb < bb[i + 1]:
                increase = False
                msgs.append(
                    "n_%d*bb_%d = %d is not below bb_%d = %d"
                    % (i, i, nb, i + 1, bb[i + 1])
                )
    checks["membership"] = membership
    checks["strong_increase"] = increase

    checks["symmetry"] = s.conductor == 2 * s.delta
    if not checks["symmetry"]:
        msgs.append("conductor %d != 2*delta = %d" % (s.conductor, 2 * s.delta))
    return ValidationReport(s, checks, msgs)


_PUISEUX_RE = re.compile(r"^\(\s*(\d+)\s*;\s*([\d\s,]*)\)$")


def parse_semigroup(text: str) -> BranchSemigroup:
    """Parse ``"4,6,13"`` (generators) or ``"(4; 6, 7)"`` (Puiseux data)."""
    text = text.strip()
    m = _PUISEUX_RE.match(text)
    if m:
        exps = [int(x) for x in re.split(r"[\s,]+", m.group(2).strip()) if x]
        return semigroup_from_puiseux(PuiseuxData(int(m.group(1)), tuple(exps)))
    try:
        gens = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError("cannot parse semigroup literal %r" % text) from None
    return semigroup_from_generators(gens)


def semigroup_from_json(obj) -> BranchSemigroup:
    """Accepts ``{"generators": [...]}`` or
    ``{"puiseux": {"mult": b0, "exponents": [...]}}`` (dict or JSON text)."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if "generators" in obj and "puiseux" in obj:
        raise UsageError("give exactly one of 'generators' and 'puiseux'")
    if "generators" in obj:
        return semigroup_from_generators(obj["generators"])
    if "puiseux" in obj:
        p = obj["puiseux"]
        return semigroup_from_puiseux(PuiseuxData(int(p["mult"]), tuple(p["exponents"])))
    raise UsageError("expected a 'generators' or 'puiseux' key")
