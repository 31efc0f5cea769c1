"""G_m-equivariant miniversal deformation of a monomial curve.

Grading convention (used in every report):

* a row-``i`` entry ``t^a`` of ``(+)_i k[Gamma](n_i bb_i)`` has degree
  ``a - n_i bb_i``;
* the Jacobian column ``d/du_j`` has degree ``-bb_j``;
* the parameter ``t_j`` attached to a basis vector ``s_j`` has weight
  ``w_j = -deg(s_j)``.

With this convention every deformed equation ``f_i + sum_j t_j s_{i,j}`` is
weighted-homogeneous of weight ``n_i bb_i``.  Parameters of negative weight
span the equisingular (constant-semigroup) directions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .curve import (
    BinomialEquation,
    WeightedProjectiveModel,
    curve_equations,
    u_names,
    u_weights,
)
from .errors import (
    DimensionMismatch,
    LiftFailed,
    NegativeZExponent,
    ZeroWeightParameter,
)
from .polynomial import Polynomial, monomial, mono_weight
from .semigroup import BranchSemigroup, contains, gcd_ladder, greedy_exponents

__all__ = [
    "SemigroupRingElement",
    "GradedColumn",
    "BasisVector",
    "TangentBasis",
    "MiniversalFamily",
    "WeightSplit",
    "row_shifts",
    "jacobian_columns",
    "graded_piece",
    "t1_basis",
    "miniversal_family",
    "weight_split",
    "homogenize_family",
    "b0_condition",
    "deform",
]

GRADING_CONVENTION = (
    "row-i entry t^a has degree a - n_i*bb_i; column d/du_j has degree -bb_j; "
    "parameter weight w_j = -deg(s_j); tau_minus (w_j < 0) is the equisingular subspace"
)


class SemigroupRingElement(dict):
    """Element of ``k[t^Gamma]`` as ``{exponent: coefficient}``."""

    def __init__(self, *args, **kw):
        super().__init__(*args, **kw)
        for a in [a for a, c in self.items() if not c]:
            del self[a]

    def to_text(self) -> str:
        if not self:
            return "0"
        p = Polynomial({monomial({"t": a}): c for a, c in sorted(self.items())})
        return p.to_text()


@dataclass(frozen=True)
class GradedColumn:
    entries: tuple[SemigroupRingElement, ...]
    degree: int

    def to_text(self) -> list[str]:
        return [e.to_text() for e in self.entries]


def row_shifts(s: BranchSemigroup) -> list[int]:
    n = gcd_ladder(s).n
    return [n[i] * s.generators[i + 1] for i in range(len(n))]


def _curve_element(p: Polynomial, s: BranchSemigroup) -> SemigroupRingElement:
    sub = {name: Polynomial.var("t", b) for name, b in u_weights(s).items()}
    out = SemigroupRingElement()
    for m, c in p.subs(sub).items():
        a = dict(m).get("t", 0)
        out[a] = out.get(a, 0) + c
    return SemigroupRingElement(out)


def jacobian_columns(eqs: Sequence[BinomialEquation], s: BranchSemigroup) -> list[GradedColumn]:
    shifts = row_shifts(s)
    polys = [e.polynomial() if isinstance(e, BinomialEquation) else e for e in eqs]
    cols = []
    for j, name in enumerate(u_names(s)):
        entries = tuple(_curve_element(p.diff(name), s) for p in polys)
        degs = {a - shifts[i] for i, e in enumerate(entries) for a in e}
        if len(degs) > 1:
            raise DimensionMismatch("column %d is not homogeneous: degrees %s" % (j, degs))
        deg = degs.pop() if degs else -s.generators[j]
        cols.append(GradedColumn(entries, deg))
    return cols


@dataclass(frozen=True)
class GradedPiece:
    degree: int
    ambient: tuple[tuple[int, int], ...]  # (row, exponent), preferred first
    relations: tuple[tuple[Fraction, ...], ...]  # reduced spanning rows of J_d
    rank: int
    quotient: tuple[tuple[int, int], ...]  # monomial representatives

    @property
    def quotient_dim(self) -> int:
        return len(self.ambient) - self.rank


def _preference(entry: tuple[int, int]):
    row, a = entry
    return (a, row)


def graded_piece(columns: Sequence[GradedColumn], s: BranchSemigroup, d: int) -> GradedPiece:
    """Degree-``d`` piece of the quotient of the twisted module by ``J``.

    Ambient basis: ``(i, a)`` with ``a`` in Gamma and ``a - n_i bb_i = d``.
    ``J_d`` is spanned by ``t^b * column_j`` with ``b`` in Gamma and
    ``b + deg(column_j) = d``.  Quotient representatives are the ambient
    monomials left without a pivot when eliminating in reverse preference
    order (preference: smaller exponent, then smaller row).
    """
    shifts = row_shifts(s)
    ambient = sorted(
        ((i, d + sh) for i, sh in enumerate(shifts) if contains(s, d + sh)),
        key=_preference,
    )
    order = list(reversed(ambient))  # eliminate least-preferred first
    pos = {e: k for k, e in enumerate(order)}
    gens = []
    for col in columns:
        b = d - col.degree
        if not contains(s, b):
            continue
        vec = [Fraction(0)] * len(order)
        for i, entry in enumerate(col.entries):
            for a, c in entry.items():
                key = (i, a + b)
                if key not in pos:
                    raise DimensionMismatch("J element leaves the ambient piece at %s" % (key,))
                vec[pos[key]] += c
        if any(vec):
            gens.append(vec)
    reduced, pivots = _rref(gens, len(order))
    quotient = tuple(sorted((order[k] for k in range(len(order)) if k not in pivots),
                            key=_preference))
    return GradedPiece(d, tuple(ambient), tuple(tuple(r) for r in reduced), len(pivots), quotient)


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], set[int]]:
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((k for k in range(r, len(m)) if m[k][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c]:
                f = m[k][c]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], set(pivots)


@dataclass(frozen=True)
class BasisVector:
    row: int  # 0-based equation index (equation f_{row+1})
    exponent: int
    degree: int
    lift: tuple[int, ...]  # exponents of u_0..u_g with sum lift_k bb_k == exponent

    @property
    def weight(self) -> int:
        return -self.degree

    def column(self, g: int) -> GradedColumn:
        entries = tuple(
            SemigroupRingElement({self.exponent: Fraction(1)}) if i == self.row
            else SemigroupRingElement()
            for i in range(g)
        )
        return GradedColumn(entries, self.degree)


@dataclass
class TangentBasis:
    semigroup: BranchSemigroup
    vectors: list[BasisVector]
    pieces: dict[int, int]  # degree -> quotient dimension (nonzero pieces only)
    degree_range: tuple[int, int]

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    @property
    def degrees(self) -> list[int]:
        return [v.degree for v in self.vectors]

    @property
    def weights(self) -> list[int]:
        return [v.weight for v in self.vectors]


def t1_basis(columns: Sequence[GradedColumn], s: BranchSemigroup,
             max_degree: int | None = None) -> TangentBasis:
    """Homogeneous monomial basis of ``T^1`` degree by degree."""
    shifts = row_shifts(s)
    target = 2 * s.delta
    g = len(shifts)
    if g == 0:
        return TangentBasis(s, [], {}, (0, 0))
    d_min = -max(shifts)
    # hard stop: far past every shift and the conductor
    d_cap = max_degree if max_degree is not None else 2 * (s.conductor + max(shifts)) + 8
    window = max(s.conductor, 1)
    vectors: list[BasisVector] = []
    pieces: dict[int, int] = {}
    quiet = 0
    d = d_min
    while True:
        if d > d_cap:
            raise DimensionMismatch(
                "T^1 did not stabilize by degree %d (have %d, expected %d)"
                % (d_cap, len(vectors), target)
            )
        piece = graded_piece(columns, s, d)
        if piece.quotient:
            if d == 0:
                raise ZeroWeightParameter("degree-0 piece of T^1 is nonzero for %s" % s)
            pieces[d] = len(piece.quotient)
            for row, a in piece.quotient:
                lift = greedy_exponents(a, s.generators)
                if lift is None:
                    raise LiftFailed("t^%d has no monomial lift in %s" % (a, s))
                vectors.append(BasisVector(row, a, d, lift))
            quiet = 0
        else:
            quiet += 1
        if len(vectors) > target:
            raise DimensionMismatch(
                "T^1 dimension exceeds 2*delta = %d at degree %d" % (target, d)
            )
        if len(vectors) == target and quiet >= window:
            break
        d += 1
    return TangentBasis(s, vectors, pieces, (d_min, d))


@dataclass
class MiniversalFamily:
    semigroup: BranchSemigroup
    base_equations: list[Polynomial]
    equations: list[Polynomial]
    parameters: list[str]
    basis: TangentBasis
    weights: dict[str, int]  # u's and t's
    targets: list[int]
    tau_minus: list[str] = field(default_factory=list)
    tau_plus: list[str] = field(default_factory=list)

    @property
    def parameter_weights(self) -> dict[str, int]:
        return {t: self.weights[t] for t in self.parameters}

    def is_homogeneous(self) -> bool:
        return all(
            f.is_weighted_homogeneous(self.weights, d)
            for f, d in zip(self.equations, self.targets)
        )

    def equivariance_check(self, lam: Fraction | int = 2) -> bool:
        """``f(lam.u; lam.t) == lam^{n_i bb_i} f(u; t)`` at a concrete scalar."""
        lam = Fraction(lam)
        sub = {v: Polynomial.var(v) * lam ** w for v, w in self.weights.items()}
        return all(
            f.subs(sub) == f * lam ** d for f, d in zip(self.equations, self.targets)
        )

    def to_dict(self) -> dict:
        names = u_names(self.semigroup)
        g = len(self.targets)
        vars_ = names + self.parameters
        params = []
        for t, v in zip(self.parameters, self.basis.vectors):
            params.append({
                "name": t,
                "weight": v.weight,
                "column": v.column(g).to_text(),
                "row": v.row + 1,
                "exponent": v.exponent,
                "lift": {n: e for n, e in zip(names, v.lift) if e},
            })
        return {
            "convention": GRADING_CONVENTION,
            "equations": [f.to_json(vars_, self.weights) for f in self.equations],
            "text": [f.to_text() for f in self.equations],
            "parameters": params,
            "tau_minus": list(self.tau_minus),
            "tau_plus": list(self.tau_plus),
        }


def miniversal_family(basis: TangentBasis, eqs: Sequence[BinomialEquation],
                      s: BranchSemigroup) -> MiniversalFamily:
    names = u_names(s)
    base = [e.polynomial() if isinstance(e, BinomialEquation) else e for e in eqs]
    deformed = list(base)
    weights = dict(u_weights(s))
    params = []
    for j, v in enumerate(basis.vectors, start=1):
        t = "t%d" % j
        params.append(t)
        weights[t] = v.weight
        if sum(e * b for e, b in zip(v.lift, s.generators)) != v.exponent:
            raise LiftFailed("lift %s does not evaluate to t^%d" % (v.lift, v.exponent))
        term = Polynomial({monomial([(t, 1)] + list(zip(names, v.lift))): 1})
        deformed[v.row] = deformed[v.row] + term
    fam = MiniversalFamily(
        semigroup=s,
        base_equations=base,
        equations=deformed,
        parameters=params,
        basis=basis,
        weights=weights,
        targets=row_shifts(s),
        tau_minus=[t for t in params if weights[t] < 0],
        tau_plus=[t for t in params if weights[t] > 0],
    )
    return fam


@dataclass(frozen=True)
class WeightSplit:
    tau_minus_dim: int
    tau_plus_dim: int
    tau_minus: tuple[str, ...]
    tau_plus: tuple[str, ...]
    equisingular: str = "tau_minus"

    def to_dict(self) -> dict:
        return {
            "tau_minus_dim": self.tau_minus_dim,
            "tau_plus_dim": self.tau_plus_dim,
            "tau_minus": list(self.tau_minus),
            "tau_plus": list(self.tau_plus),
            "equisingular_subspace": self.equisingular,
        }


def weight_split(fam: MiniversalFamily) -> WeightSplit:
    return WeightSplit(len(fam.tau_minus), len(fam.tau_plus),
                       tuple(fam.tau_minus), tuple(fam.tau_plus))


def homogenize_family(fam: MiniversalFamily, model: WeightedProjectiveModel,
                      strict: bool = False) -> WeightedProjectiveModel:
    """Homogenize each deformed equation with ``Z`` up to ``n_i bb_i``.

    A term of ``X``-degree ``d`` gets ``Z^(n_i bb_i - d)``; for a parameter
    term the exponent equals the parameter weight.  Negative-weight terms
    cannot be homogenized this way: they are kept as is and listed in
    ``flagged`` (or raise with ``strict=True``).
    """
    s = fam.semigroup
    ren = dict(zip(u_names(s), u_names(s, "X")))
    xw = dict(u_weights(s, "X"))
    flagged = []
    out = []
    for i, (f, target) in enumerate(zip(fam.equations, fam.targets), start=1):
        F = Polynomial()
        for m, c in f.rename(ren).items():
            d = sum(e * xw[v] for v, e in m if v in xw)
            z = target - d
            if z < 0:
                params = [v for v, _ in m if v in fam.weights and v not in xw]
                if strict:
                    raise NegativeZExponent(
                        "equation %d: term with %s needs Z^%d" % (i, params, z)
                    )
                flagged.extend((i, t) for t in params)
                F = F + Polynomial({m: c})
            else:
                F = F + Polynomial({monomial(list(m) + [("Z", z)]): c})
        out.append(F)
    return WeightedProjectiveModel(
        semigroup=s,
        degrees=dict(model.degrees),
        equations=out,
        targets=list(model.targets),
        parameter_weights=fam.parameter_weights,
        flagged=flagged,
    )


def b0_condition(fam: MiniversalFamily, point: Mapping[str, Fraction | int]) -> bool:
    """Maximal-degree condition at a parameter value.

    For each deformed equation take the maximal ``u``-weighted degree over
    its terms; the condition holds when, after substituting ``point``, the
    part of that degree is nonzero in every equation.
    """
    uw = u_weights(fam.semigroup)
    values = {t: Fraction(point.get(t, 0)) for t in fam.parameters}
    for f in fam.equations:
        degs = {m: mono_weight([(v, e) for v, e in m if v in uw], uw) for m, _ in f.items()}
        top = max(degs.values())
        top_part = Polynomial({m: c for m, c in f.items() if degs[m] == top})
        if top_part.subs(values).is_zero():
            return False
    return True


def deform(s: BranchSemigroup) -> MiniversalFamily:
    """Full pipeline: equations, Jacobian columns, ``T^1`` basis, family."""
    eqs = curve_equations(s)
    cols = jacobian_columns(eqs, s)
    basis = t1_basis(cols, s)
    return miniversal_family(basis, eqs, s)
