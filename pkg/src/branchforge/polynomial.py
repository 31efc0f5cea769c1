"""Sparse multivariate polynomials with exact rational coefficients.

Only what the curve and deformation code needs: ring operations,
substitution, weighted degrees and stable text/JSON rendering.  Terms keep
their insertion order so that ``u1^2 - u0^3 + t1`` prints as written.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

Monomial = tuple  # sorted tuple of (variable, exponent) pairs, exponents > 0

ONE: Monomial = ()


def monomial(exps: Mapping[str, int] | Iterable[tuple[str, int]]) -> Monomial:
    items = exps.items() if isinstance(exps, Mapping) else exps
    acc: dict[str, int] = {}
    for v, e in items:
        if e < 0:
            raise ValueError("negative exponent %d on %s" % (e, v))
        if e:
            acc[v] = acc.get(v, 0) + e
    return tuple(sorted(acc.items(), key=lambda ve: _var_key(ve[0])))


# parameters print first, then coordinates, then the homogenizing variable
_PREFIX_RANK = {"t": 0, "T": 1, "u": 2, "X": 2, "x": 2, "Z": 3, "z": 3}


def _var_key(name: str):
    i = len(name)
    while i > 0 and name[i - 1].isdigit():
        i -= 1
    stem = name[:i]
    return (_PREFIX_RANK.get(stem, 4), stem, int(name[i:]) if i < len(name) else -1)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return monomial(list(a) + list(b))


def mono_weight(m: Monomial, weights: Mapping[str, int]) -> int:
    return sum(e * weights[v] for v, e in m)


@dataclass(frozen=True)
class WeightedMonomial:
    coefficient: Fraction
    exponents: Monomial

    def weight(self, weights: Mapping[str, int]) -> int:
        return mono_weight(self.exponents, weights)

    def exponent(self, var: str) -> int:
        return dict(self.exponents).get(var, 0)


class Polynomial:
    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        self._terms: dict[Monomial, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for m, c in items:
                self._add_term(monomial(m), Fraction(c))

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Polynomial":
        return cls({monomial({name: power}): 1})

    @classmethod
    def const(cls, c) -> "Polynomial":
        return cls({ONE: c})

    def _add_term(self, m: Monomial, c: Fraction) -> None:
        if not c:
            return
        new = self._terms.get(m, 0) + c
        if new:
            self._terms[m] = new
        else:
            del self._terms[m]

    def terms(self) -> list[WeightedMonomial]:
        return [WeightedMonomial(c, m) for m, c in self._terms.items()]

    def items(self):
        return self._terms.items()

    def coefficient(self, m) -> Fraction:
        m = monomial(m)
        return self._terms.get(m, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def variables(self) -> set[str]:
        return {v for m in self._terms for v, _ in m}

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        other = _coerce(other)
        out = Polynomial(self._terms)
        for m, c in other._terms.items():
            out._add_term(m, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out = Polynomial()
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                out._add_term(mono_mul(m1, m2), c1 * c2)
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def subs(self, mapping: Mapping[str, "Polynomial | int | Fraction"]) -> "Polynomial":
        """Substitute polynomials (or scalars) for variables."""
        mapping = {v: _coerce(p) for v, p in mapping.items()}
        out = Polynomial()
        for m, c in self._terms.items():
            term = Polynomial.const(c)
            rest = []
            for v, e in m:
                if v in mapping:
                    term = term * mapping[v] ** e
                else:
                    rest.append((v, e))
            if rest:
                term = term * Polynomial({monomial(rest): 1})
            out = out + term
        return out

    def diff(self, var: str) -> "Polynomial":
        out = Polynomial()
        for m, c in self._terms.items():
            e = dict(m).get(var, 0)
            if e:
                out._add_term(monomial([(v, x - (v == var)) for v, x in m]), c * e)
        return out

    def rename(self, mapping: Mapping[str, str]) -> "Polynomial":
        return Polynomial(
            {monomial([(mapping.get(v, v), e) for v, e in m]): c for m, c in self._terms.items()}
        )

    def weighted_degrees(self, weights: Mapping[str, int]) -> set[int]:
        return {mono_weight(m, weights) for m in self._terms}

    def is_weighted_homogeneous(self, weights: Mapping[str, int], degree: int | None = None) -> bool:
        degs = self.weighted_degrees(weights)
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for idx, (m, c) in enumerate(self._terms.items()):
            neg = c < 0
            a = -c if neg else c
            mono = "*".join(v if e == 1 else "%s^%d" % (v, e) for v, e in m)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = "%s*%s" % (a, mono)
            if idx == 0:
                parts.append("-" + body if neg else body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return "Polynomial(%s)" % self.to_text()

    __str__ = to_text

    def to_json(self, variables: list[str], weights: Mapping[str, int]) -> dict:
        return {
            "vars": list(variables),
            "weights": [weights[v] for v in variables],
            "terms": [
                {"coeff": _frac_json(c), "exps": {v: e for v, e in m}}
                for m, c in self._terms.items()
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "Polynomial":
        return cls(
            [(monomial(t["exps"]), Fraction(t["coeff"])) for t in obj["terms"]]
        )


def _frac_json(c: Fraction):
    return int(c) if c.denominator == 1 else str(c)


def _coerce(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.const(x)
    raise TypeError("cannot use %r as a polynomial" % (x,))
