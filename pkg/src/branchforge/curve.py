"""Monomial curves of plane-branch semigroups.

The curve parametrized by ``u_i = t^{bb_i}`` is cut out by the binomials
``f_i = u_i^{n_i} - u_0^{l_0} ... u_{i-1}^{l_{i-1}}``.  Giving ``X_i`` degree
``bb_i`` and ``Z`` degree 1, the same binomials define its closure in a
weighted projective space, which adds a single smooth point at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import InvalidPlaneBranch, NormalizationFailed
from .polynomial import Polynomial, WeightedMonomial, monomial
from .semigroup import BranchSemigroup, gcd_ladder, represent, validate_plane_branch

__all__ = [
    "BinomialEquation",
    "WeightedProjectiveModel",
    "ChartStep",
    "InfinityChart",
    "u_names",
    "u_weights",
    "curve_equations",
    "check_parametrization",
    "compactify",
    "dehomogenize",
    "infinity_chart",
    "normalization_check",
]


def u_names(s: BranchSemigroup, prefix: str = "u") -> list[str]:
    return ["%s%d" % (prefix, i) for i in range(len(s.generators))]


def u_weights(s: BranchSemigroup, prefix: str = "u") -> dict[str, int]:
    return dict(zip(u_names(s, prefix), s.generators))


@dataclass(frozen=True)
class BinomialEquation:
    index: int
    lead: WeightedMonomial
    tail: WeightedMonomial

    def polynomial(self) -> Polynomial:
        return Polynomial([(self.lead.exponents, self.lead.coefficient),
                           (self.tail.exponents, self.tail.coefficient)])

    def weights(self, weights) -> tuple[int, int]:
        return self.lead.weight(weights), self.tail.weight(weights)

    def __str__(self):
        return self.polynomial().to_text()


def _require_plane_branch(s: BranchSemigroup) -> None:
    report = validate_plane_branch(s)
    if not report.ok:
        raise InvalidPlaneBranch("%s is not a plane-branch semigroup: %s"
                                 % (s, "; ".join(report.messages)))


def curve_equations(s: BranchSemigroup) -> list[BinomialEquation]:
    _require_plane_branch(s)
    ladder = gcd_ladder(s)
    names = u_names(s)
    eqs = []
    for i in range(1, len(s.generators)):
        rep = represent(s, i)
        lead = WeightedMonomial(Fraction(1), monomial({names[i]: ladder.n[i - 1]}))
        tail = WeightedMonomial(
            Fraction(-1), monomial(zip(names[:i], rep.coefficients))
        )
        eqs.append(BinomialEquation(i, lead, tail))
    return eqs


def _as_polys(eqs) -> list[Polynomial]:
    return [e.polynomial() if isinstance(e, BinomialEquation) else e for e in eqs]


def check_parametrization(eqs, s: BranchSemigroup) -> bool:
    """True iff every equation vanishes identically under ``u_i -> t^{bb_i}``."""
    sub = {name: Polynomial.var("t", b) for name, b in u_weights(s).items()}
    return all(p.subs(sub).is_zero() for p in _as_polys(eqs))


@dataclass
class WeightedProjectiveModel:
    """Equations ``F_i`` in ``Proj k[X_0..X_g, Z]`` with ``deg X_i = bb_i``.

    For a deformed model, ``parameter_weights`` holds the weights of the
    ``t_j`` and ``flagged`` lists ``(equation index, parameter)`` pairs whose
    term could not be homogenized with a nonnegative power of ``Z``.
    """

    semigroup: BranchSemigroup
    degrees: dict[str, int]
    equations: list[Polynomial]
    targets: list[int]
    parameter_weights: dict[str, int] = field(default_factory=dict)
    flagged: list[tuple[int, str]] = field(default_factory=list)

    @property
    def variables(self) -> list[str]:
        return list(self.degrees)

    def is_homogeneous(self) -> bool:
        w = dict(self.degrees)
        w.update({t: 0 for t in self.parameter_weights})
        return all(
            F.is_weighted_homogeneous(w, d) for F, d in zip(self.equations, self.targets)
        )

    def to_dict(self) -> dict:
        w = dict(self.degrees)
        w.update(self.parameter_weights)
        vars_ = self.variables + list(self.parameter_weights)
        return {
            "degrees": dict(self.degrees),
            "equations": [F.to_json(vars_, w) for F in self.equations],
            "text": [F.to_text() for F in self.equations],
            "targets": list(self.targets),
            "flagged": [{"equation": i, "parameter": t} for i, t in self.flagged],
        }


def compactify(eqs, s: BranchSemigroup) -> WeightedProjectiveModel:
    ren = dict(zip(u_names(s), u_names(s, "X")))
    degrees = dict(u_weights(s, "X"))
    degrees["Z"] = 1
    polys = [p.rename(ren) for p in _as_polys(eqs)]
    n = gcd_ladder(s).n
    targets = [n[i] * s.generators[i + 1] for i in range(len(polys))]
    return WeightedProjectiveModel(s, degrees, polys, targets)


def dehomogenize(model: WeightedProjectiveModel) -> list[Polynomial]:
    """Affine chart ``Z = 1`` with ``X_i`` renamed back to ``u_i``."""
    s = model.semigroup
    ren = dict(zip(u_names(s, "X"), u_names(s)))
    return [F.subs({"Z": 1}).rename(ren) for F in model.equations]


@dataclass(frozen=True)
class ChartStep:
    index: int
    equation: str  # chart equation after substituting earlier x_j = 1
    n: int
    group_before: int  # order of the residual root-of-unity group
    group_after: int


@dataclass
class InfinityChart:
    chart_equations: list[str]
    steps: list[ChartStep]
    point: tuple[int, ...]
    points_at_infinity: int
    smooth: bool
    jacobian_determinant: Fraction

    def to_dict(self) -> dict:
        return {
            "chart_equations": list(self.chart_equations),
            "steps": [vars(st) for st in self.steps],
            "point": list(self.point),
            "points_at_infinity": self.points_at_infinity,
            "smooth": self.smooth,
            "jacobian_determinant": str(self.jacobian_determinant),
        }


def infinity_chart(model: WeightedProjectiveModel) -> InfinityChart:
    """Analyse ``Z = 0`` in the chart ``X_0 != 0``.

    The chart is ``Spec k[x_1..x_g, z]`` modulo ``mu_{bb_0}`` acting by
    ``zeta^{bb_i}`` on ``x_i``.  At step ``i`` the residual group
    ``mu_{e_{i-1}}`` maps onto the ``n_i``-th roots of unity through
    ``zeta -> zeta^{bb_i}``, so ``x_i^{n_i} = 1`` normalizes to ``x_i = 1``
    and the residual group shrinks to ``mu_{e_i}``.
    """
    s = model.semigroup
    bb = s.generators
    g = len(bb) - 1
    X = u_names(s, "X")
    x = u_names(s, "x")

    # X_0 = 0 (with Z = 0) forces every X_i = 0: each tail carries an
    # earlier variable, so there is nothing at infinity off the chart.
    forced_zero = {X[0]}
    for i, F in enumerate(model.equations, start=1):
        tails = [m for m, _ in F.subs({"Z": 0}).items() if dict(m).get(X[i], 0) == 0]
        if not tails or not all(any(v in forced_zero for v, _ in m) for m in tails):
            raise NormalizationFailed("equation %d does not force X_%d = 0 when X_0 = 0" % (i, i))
        forced_zero.add(X[i])

    ren = dict(zip(X[1:], x[1:]))
    chart = [F.subs({"Z": 0, X[0]: 1}).rename(ren) for F in model.equations]
    n = gcd_ladder(s).n

    steps = []
    group = bb[0]
    fixed: dict[str, int] = {}
    for i in range(1, g + 1):
        reduced = chart[i - 1].subs(fixed)
        expected = Polynomial.var(x[i], n[i - 1]) - 1
        if reduced != expected:
            raise NormalizationFailed(
                "step %d: expected %s, got %s" % (i, expected, reduced)
            )
        image = group // gcd(bb[i], group)
        if image != n[i - 1]:
            raise NormalizationFailed(
                "step %d: residual group mu_%d reaches only %d of the %d roots"
                % (i, group, image, n[i - 1])
            )
        after = gcd(bb[i], group)
        steps.append(ChartStep(i, reduced.to_text(), n[i - 1], group, after))
        fixed[x[i]] = 1
        group = after
    if group != 1:
        raise NormalizationFailed(
            "normalization left a residual group mu_%d after %d steps" % (group, g)
        )

    at_point = {v: 1 for v in x[1:]}
    jac = [[chart[r].diff(x[c]).subs(at_point).coefficient(()) for c in range(1, g + 1)]
           for r in range(g)]
    det = _det(jac)
    return InfinityChart(
        chart_equations=[p.to_text() for p in chart],
        steps=steps,
        point=(1,) * (g + 1) + (0,),
        points_at_infinity=1,
        smooth=det != 0,
        jacobian_determinant=det,
    )


def _det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [list(map(Fraction, r)) for r in rows]
    size = len(m)
    det = Fraction(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, size):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def normalization_check(model: WeightedProjectiveModel, s: BranchSemigroup | None = None,
                        degree_bound: int | None = None) -> bool:
    """True iff ``[T:Z] -> [T^{bb_0}: ... : T^{bb_g}: Z]`` lands on every ``F_i``.

    ``degree_bound`` caps the weighted degree of equations that are checked;
    an equation above the bound makes the check fail rather than pass silently.
    """
    s = s or model.semigroup
    sub = {name: Polynomial.var("T", b) for name, b in u_weights(s, "X").items()}
    for F, d in zip(model.equations, model.targets):
        if degree_bound is not None and d > degree_bound:
            return False
        if not F.subs(sub).is_zero():
            return False
    return True
