"""Command line front end: ``branchforge <subcommand> ...``.

Exit codes: 0 success, 1 failed verification or purity flag, 2 usage,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .curve import (
    check_parametrization,
    compactify,
    curve_equations,
    infinity_chart,
    normalization_check,
    u_names,
    u_weights,
)
from .deformation import deform, homogenize_family, weight_split
from .errors import BranchForgeError, UsageError
from .lattice import METHODS, Budget, build_truncated_module, enumerate_semimodules, purity_signature, stable_submodules
from .oracles import naive_stable_count
from .semigroup import (
    gcd_ladder,
    parse_semigroup,
    puiseux_from_semigroup,
    semigroup_from_generators,
    semigroup_from_json,
    validate_plane_branch,
)
from .verify import CORPUS, verify_entry

log = logging.getLogger(__name__)

SUBCOMMANDS = ("semigroup", "curve", "deform", "count", "verify")
NAIVE_LIMIT = 10 ** 5


@dataclass
class RunConfig:
    subcommand: str
    semigroup: str | None = None
    puiseux: str | None = None
    input_json: str | None = None
    fields: tuple[int, ...] = ()
    budget: Budget = field(default_factory=Budget)
    output: str = "text"
    threads: int = 1
    out: str | None = None
    projective: bool = False
    stratify: bool = False
    oracle: str | None = None
    method: str = "descent"

    def validate(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError("unknown subcommand %r" % self.subcommand)
        given = [x for x in (self.semigroup, self.puiseux, self.input_json) if x is not None]
        if self.subcommand == "verify":
            if given:
                raise UsageError("verify takes no semigroup input")
        elif len(given) != 1:
            raise UsageError("give exactly one of --gens/--semigroup, --puiseux, --input")
        if len(set(self.fields)) != len(self.fields):
            raise UsageError("field orders must be pairwise distinct")
        if self.threads < 1:
            raise UsageError("--threads must be positive")
        if self.output not in ("text", "json"):
            raise UsageError("output format is text or json")
        if self.method not in METHODS:
            raise UsageError("method must be one of %s" % ", ".join(METHODS))
        if self.oracle not in (None, "naive"):
            raise UsageError("only the 'naive' oracle is available")

    def input_echo(self) -> dict:
        echo = {"subcommand": self.subcommand}
        for k in ("semigroup", "puiseux", "input_json"):
            if getattr(self, k) is not None:
                echo[k] = getattr(self, k)
        if self.subcommand == "count":
            echo.update(fields=list(self.fields), stratify=self.stratify,
                        oracle=self.oracle, method=self.method)
        if self.subcommand == "deform":
            echo["projective"] = self.projective
        return echo


@dataclass
class Report:
    version: str
    input: dict
    results: dict
    verdicts: dict
    timing: dict = field(default_factory=dict)
    error: dict | None = None

    @property
    def exit_status(self) -> int:
        if self.error is not None:
            return self.error["exit_status"]
        return 1 if any(v is False for v in _flatten(self.verdicts)) else 0

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "tool": "branchforge",
            "version": self.version,
            "input": self.input,
            "results": self.results,
            "verdicts": self.verdicts,
        }
        if self.error is not None:
            out["error"] = self.error
        if timing:
            out["timing"] = self.timing
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)


def _flatten(v):
    if isinstance(v, dict):
        for x in v.values():
            yield from _flatten(x)
    else:
        yield v


def _load_semigroup(cfg: RunConfig):
    if cfg.semigroup is not None:
        return parse_semigroup(cfg.semigroup)
    if cfg.puiseux is not None:
        return parse_semigroup(_puiseux_text(cfg.puiseux))
    path = cfg.input_json
    try:
        with (sys.stdin if path == "-" else open(path)) as fh:
            obj = json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError("cannot read JSON input %s: %s" % (path, exc))
    return semigroup_from_json(obj)


def _puiseux_text(text: str) -> str:
    # accepts "(4; 6, 7)", "4;6,7" and "4,6,7" (multiplicity first)
    text = text.strip().strip("()")
    if ";" not in text:
        head, _, tail = text.partition(",")
        text = "%s; %s" % (head, tail)
    return "(%s)" % text


def _do_semigroup(cfg, s):
    report = validate_plane_branch(s)
    res = {"semigroup": s.to_dict(), "validation": report.to_dict()}
    if report.ok:
        ladder = gcd_ladder(s)
        p = puiseux_from_semigroup(s)
        res["puiseux"] = {"mult": p.multiplicity, "exponents": list(p.characteristic_exponents)}
        res["ladder"] = {"e": list(ladder.e), "n": list(ladder.n)}
    verdicts = {"plane_branch": report.ok, "symmetry": s.conductor == 2 * s.delta}
    return res, verdicts


def _do_curve(cfg, s):
    eqs = curve_equations(s)
    names, weights = u_names(s), u_weights(s)
    model = compactify(eqs, s)
    chart = infinity_chart(model)
    res = {
        "semigroup": list(s.generators),
        "equations": [e.polynomial().to_json(names, weights) for e in eqs],
        "text": [str(e) for e in eqs],
        "projective": model.to_dict(),
        "infinity": chart.to_dict(),
    }
    verdicts = {
        "parametrization": check_parametrization(eqs, s),
        "projective_normalization": normalization_check(model, s),
        "infinity_single_smooth_point": chart.points_at_infinity == 1 and chart.smooth,
    }
    return res, verdicts


def _do_deform(cfg, s):
    fam = deform(s)
    res = {"semigroup": list(s.generators), "family": fam.to_dict(),
           "weight_split": weight_split(fam).to_dict()}
    if cfg.projective:
        model = compactify(curve_equations(s), s)
        res["projective"] = homogenize_family(fam, model).to_dict()
    verdicts = {
        "t1_dimension": fam.basis.dimension == 2 * s.delta,
        "no_zero_weight": 0 not in fam.basis.weights,
        "homogeneous": fam.is_homogeneous(),
    }
    return res, verdicts


def _do_count(cfg, s):
    qs = list(cfg.fields) or [2, 3, 5, 7, 11][: s.delta + 1]
    res = {"semigroup": list(s.generators)}
    verdicts: dict = {}
    if len(qs) >= s.delta + 1:
        sig = purity_signature(s, qs, workers=cfg.threads, budget=cfg.budget, method=cfg.method)
        d = sig.to_dict()
        if not cfg.stratify:
            d["strata"] = [{k: v for k, v in st.items() if k != "counts"} for st in d["strata"]]
        res.update(d)
        verdicts.update(sig.flags)
    else:
        counts = {}
        for q in qs:
            T = build_truncated_module(s, q, cfg.budget)
            sub = stable_submodules(T, cfg.method, cfg.threads)
            counts[str(q)] = len(sub)
            if cfg.stratify:
                res.setdefault("strata", []).extend(
                    {"q": q, "delta_set": list(S), "count": n} for S, n in sub.strata().items()
                )
        res["counts"] = counts
        res["semimodules"] = len(enumerate_semimodules(s, cfg.budget))
        res["notes"] = ["%d fields given, %d needed to fit; flags skipped" % (len(qs), s.delta + 1)]
        verdicts["purity"] = "skipped"
    if cfg.oracle == "naive":
        agree = {}
        for q in qs:
            # the naive filter walks about q^(c^2/4) subspaces
            if q ** (s.conductor ** 2 // 4) > NAIVE_LIMIT:
                agree[str(q)] = "skipped"
            else:
                agree[str(q)] = naive_stable_count(s, q) == res["counts"][str(q)]
        verdicts["naive_oracle"] = agree
    return res, verdicts


def _do_verify(cfg):
    sgs = [semigroup_from_generators(g) for g in CORPUS]
    if cfg.threads > 1:
        with ThreadPoolExecutor(cfg.threads) as ex:
            entries = list(ex.map(lambda s: verify_entry(s, cfg.threads, cfg.budget), sgs))
    else:
        entries = [verify_entry(s, 1, cfg.budget) for s in sgs]
    key = lambda e: ",".join(map(str, e.generators))
    res = {key(e): e.details for e in entries}
    verdicts = {key(e): e.verdicts for e in entries}
    return res, verdicts


def run(cfg: RunConfig) -> Report:
    start = time.perf_counter()
    rep = Report(__version__, cfg.input_echo(), {}, {})
    try:
        cfg.validate()
        if cfg.subcommand == "verify":
            rep.results, rep.verdicts = _do_verify(cfg)
        else:
            s = _load_semigroup(cfg)
            fn = {"semigroup": _do_semigroup, "curve": _do_curve,
                  "deform": _do_deform, "count": _do_count}[cfg.subcommand]
            rep.results, rep.verdicts = fn(cfg, s)
    except BranchForgeError as exc:
        rep.error = {"code": exc.code, "message": str(exc), "exit_status": exc.exit_status}
    rep.timing = {"seconds": round(time.perf_counter() - start, 3), "threads": cfg.threads}
    return rep


def render_text(rep: Report) -> str:
    lines = ["branchforge %s  %s" % (rep.version, rep.input.get("subcommand"))]
    if rep.error is not None:
        lines.append("error [%s]: %s" % (rep.error["code"], rep.error["message"]))
        return "\n".join(lines)
    r = rep.results
    sub = rep.input["subcommand"]
    if sub == "semigroup":
        sg = r["semigroup"]
        lines.append("generators: %s" % ", ".join(map(str, sg["generators"])))
        lines.append("delta = %d, conductor = %d, genus = %d" % (sg["delta"], sg["conductor"],
                                                                   len(sg["generators"]) - 1))
        lines.append("gaps: %s" % ", ".join(map(str, sg["gaps"])))
        if "puiseux" in r:
            lines.append("puiseux: (%d; %s)" % (r["puiseux"]["mult"],
                                                ", ".join(map(str, r["puiseux"]["exponents"]))))
    elif sub == "curve":
        lines += ["  " + t for t in r["text"]]
        lines.append("projective: " + "; ".join(r["projective"]["text"]))
        lines.append("point at infinity: [%s]" % ":".join(map(str, r["infinity"]["point"])))
    elif sub == "deform":
        fam = r["family"]
        lines += ["  " + t for t in fam["text"]]
        lines.append("weights: " + ", ".join("%s=%d" % (p["name"], p["weight"]) for p in fam["parameters"]))
        lines.append("tau- = %d, tau+ = %d" % (r["weight_split"]["tau_minus_dim"],
                                               r["weight_split"]["tau_plus_dim"]))
        if "projective" in r:
            lines += ["  " + t for t in r["projective"]["text"]]
    elif sub == "count":
        lines.append("counts: " + ", ".join("q=%s: %d" % kv for kv in r["counts"].items()))
        if "polynomial" in r:
            lines.append("polynomial (low degree first): %s" % r["polynomial"])
        for st in r.get("strata", []):
            lines.append("  %s" % st)
        for n in r.get("notes", []):
            lines.append("note: " + n)
    for name, v in _walk(rep.verdicts):
        lines.append("%-40s %s" % (name, {True: "pass", False: "FAIL"}.get(v, v)))
    lines.append("time %.3fs" % rep.timing["seconds"])
    return "\n".join(lines)


def _walk(d, prefix=""):
    for k, v in d.items():
        if isinstance(v, dict):
            yield from _walk(v, prefix + k + ".")
        else:
            yield prefix + k, v


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers, got %r" % text)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--budget", help='cap overrides, e.g. "q=13,c=20,delta=10" '
                        "(default from BRANCHFORGE_BUDGET)")
    common.add_argument("-v", "--verbose", action="store_true")

    def inputs(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--gens", "--semigroup", dest="semigroup",
                       help='generators "4,6,13" or Puiseux "(4; 6, 7)"')
        g.add_argument("--puiseux", help='Puiseux data "4;6,7" or "(4; 6, 7)"')
        g.add_argument("--input", dest="input_json", help="JSON file ('-' for stdin)")

    parser = _Parser(prog="branchforge", description="Plane-branch semigroup pipeline.")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    inputs(sub.add_parser("semigroup", parents=[common], help="invariants and validation"))
    inputs(sub.add_parser("curve", parents=[common], help="monomial curve and its closure"))
    p = sub.add_parser("deform", parents=[common], help="graded T^1 and miniversal family")
    inputs(p)
    p.add_argument("--projective", action="store_true")
    p = sub.add_parser("count", parents=[common], help="point counts and purity signature")
    inputs(p)
    p.add_argument("--q", type=_int_list, default=(), help="field orders, e.g. 2,3,5,7")
    p.add_argument("--stratify", action="store_true")
    p.add_argument("--oracle", choices=["naive"])
    p.add_argument("--method", choices=list(METHODS), default="descent")
    sub.add_parser("verify", parents=[common], help="run the built-in corpus checks")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    budget = Budget.from_env(args.budget) if args.budget is not None else Budget.from_env()
    return RunConfig(
        subcommand=args.subcommand,
        semigroup=getattr(args, "semigroup", None),
        puiseux=getattr(args, "puiseux", None),
        input_json=getattr(args, "input_json", None),
        fields=getattr(args, "q", ()),
        budget=budget,
        output="json" if args.json else "text",
        threads=args.threads,
        out=args.out,
        projective=getattr(args, "projective", False),
        stratify=getattr(args, "stratify", False),
        oracle=getattr(args, "oracle", None),
        method=getattr(args, "method", "descent"),
    )


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = config_from_args(args)
    except UsageError as exc:
        print("branchforge: %s" % exc, file=sys.stderr)
        return UsageError.exit_status
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    rep = run(cfg)
    text = rep.to_json() if cfg.output == "json" else render_text(rep)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if rep.error is not None and cfg.output == "text":
        print("branchforge: %s" % rep.error["message"], file=sys.stderr)
    return rep.exit_status


if __name__ == "__main__":
    sys.exit(main())
