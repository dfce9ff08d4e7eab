"""Command-line front end.

    genosc classify --input laguerre0.json --format json
    genosc verify --input hermite.json -M 8
    genosc closure --input spec.json --max-dim 24
    genosc moments --input moments.json
    genosc report --input spec.json

Exit codes: 0 success, 1 infinite/failed verdict (only with --verdict-exit),
2 input error, 3 internal abort (closure degree cap, verdict disagreement).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .classify import FINITE, CONSISTENT, classification_report, classify, classify_prefix
from .errors import ClosureAbort, SpecError
from .liealg import lie_closure
from .oscillator import verify_relations
from .recurrence import ensure_valid, load_spec, moments_to_recurrence
from .seqcore import parse_rational, rational_str

OK, VERDICT_NEGATIVE, INPUT_ERROR, ABORT = 0, 1, 2, 3
SUBCOMMANDS = ("classify", "verify", "closure", "moments", "report")


@dataclass
class RunConfig:
    subcommand: str
    inputs: list = field(default_factory=list)
    M: int = 16
    tol: float = 1e-10
    max_dim: int = 24
    max_depth: int = 8
    format: str = "text"
    j_max: int = 3
    verdict_exit: bool = False
    exact: bool = False

    def check(self):
        if self.subcommand not in SUBCOMMANDS:
            raise SpecError(f"unknown subcommand {self.subcommand!r}")
        if self.subcommand == "verify" and self.M < 3:
            raise SpecError("-M must be at least 3 for verify")
        if self.subcommand in ("closure", "report") and self.max_dim < 4:
            raise SpecError("--max-dim must be at least 4")
        if self.max_depth < 2:
            raise SpecError("--max-depth must be at least 2")
        if not self.inputs:
            raise SpecError("no input files given")


class Abort(Exception):
    pass


# ---------------------------------------------------------------------------
# per-subcommand work: each returns (json record, text lines, negative verdict?)


def _verdict_text(v):
    lines = [f"verdict: {v.kind}"]
    if v.a0 is not None:
        lines.append(f"  a0 = {v.a0}   a2 = {v.a2}")
    if v.witness is not None:
        w = v.witness
        lines.append(f"  witness: A^({w.j})({w.n1}) = {w.v1}  vs  A^({w.j})({w.n2}) = {w.v2}")
    lines.append(f"  {v.note}")
    return lines


def do_classify(spec, cfg):
    ensure_valid(spec)
    v = classify(spec) if spec.symbolic else classify_prefix(spec.window, cfg.j_max)
    return v.to_json(), _verdict_text(v), v.kind not in (FINITE, CONSISTENT)


def do_verify(spec, cfg):
    reports = verify_relations(spec, cfg.M, cfg.tol, exact=cfg.exact)
    ok = all(r.passed for r in reports)
    rec = {"label": spec.label, "M": cfg.M, "pass": ok,
           "relations": [r.to_json() for r in reports]}
    width = max(len(r.relation) for r in reports)
    lines = [f"M = {cfg.M}, interior indices 0..{cfg.M - 2}, tol = {cfg.tol:g}"]
    lines += [f"  {r.relation:<{width}}  residual {r.max_residual:.3e}  "
              f"{'pass' if r.passed else 'FAIL'}" for r in reports]
    return rec, lines, not ok


def do_closure(spec, cfg):
    res = lie_closure(spec, max_dim=cfg.max_dim, max_depth=cfg.max_depth)
    lines = [f"status: {res.status}   dim: {res.dim}   depth: {res.depth_reached}",
             "growth: " + ", ".join(f"depth {d} -> {n}" for d, n in res.growth_log)]
    if res.note:
        lines.append(f"note: {res.note}")
    if res.closed:
        lines += [f"  {op}" for op in res.basis]
    if res.aborted:
        raise Abort(res.to_json(), lines)
    return res.to_json(), lines, not res.closed


def do_moments(obj, cfg):
    if not isinstance(obj, dict) or "moments" not in obj:
        raise SpecError("moments subcommand needs a spec with a 'moments' field")
    try:
        mu = [parse_rational(v) for v in obj["moments"]]
    except ValueError as exc:
        raise SpecError(f"field 'moments': {exc}") from exc
    count = obj.get("count")
    if not isinstance(count, int) or isinstance(count, bool):
        raise SpecError("field 'count': expected an integer")
    a, b2 = moments_to_recurrence(mu, count)
    rec = {"a": [rational_str(x) for x in a], "b2": [rational_str(x) for x in b2]}
    lines = [f"{'n':>3}  {'a_n':>12}  {'b_n^2':>12}"]
    lines += [f"{n:>3}  {str(x):>12}  {str(y):>12}" for n, (x, y) in enumerate(zip(a, b2))]
    return rec, lines, False


def do_report(spec, cfg):
    rep = classification_report(spec, cfg.j_max, cfg.max_dim, cfg.max_depth)
    rec = rep.to_json()
    lines = [f"validation: {rep.validation['message']}"]
    if rep.verdict is not None:
        lines += _verdict_text(rep.verdict)
    if rep.symmetrized_verdict is not None:
        lines.append(f"symmetrized verdict identical: {rep.symmetrized_verdict == rep.verdict}")
    if rep.closure is not None:
        c = rep.closure
        lines.append(f"closure: {c['status']} dim {c['dim']} depth {c['depth']} "
                     f"({c['interpretation']})")
        lines.append(f"verdicts agree: {rep.agreement}")
        if not rep.agreement:
            raise Abort(rec, lines + ["error: classification and closure disagree"])
    negative = rep.verdict is None or rep.verdict.kind not in (FINITE, CONSISTENT)
    return rec, lines, negative


HANDLERS = {"classify": do_classify, "verify": do_verify, "closure": do_closure,
            "report": do_report}


def _emit(cfg, path, rec, lines, out):
    if cfg.format == "json":
        out.write(json.dumps(rec, sort_keys=True) + "\n")
    else:
        out.write(f"== {path}\n")
        for line in lines:
            out.write(line + "\n")


def _process(cfg, path, out, err):
    if cfg.subcommand == "moments":
        try:
            with open(path, encoding="utf-8") as fh:
                obj = json.load(fh)
        except OSError as exc:
            raise SpecError(f"cannot read {path}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise SpecError(f"malformed JSON ({exc.msg}, line {exc.lineno})") from exc
        return do_moments(obj, cfg)
    return HANDLERS[cfg.subcommand](load_spec(path), cfg)


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        cfg.check()
    except SpecError as exc:
        err.write(f"error: {exc}\n")
        return INPUT_ERROR
    code = OK
    for path in cfg.inputs:
        try:
            rec, lines, negative = _process(cfg, path, out, err)
        except SpecError as exc:
            err.write(f"error: {path}: {exc}\n")
            code = max(code, INPUT_ERROR)
            continue
        except Abort as exc:
            rec, lines = exc.args
            _emit(cfg, path, rec, lines, out)
            err.write(f"error: {path}: internal abort\n")
            code = max(code, ABORT)
            continue
        except ClosureAbort as exc:
            err.write(f"error: {path}: {exc}\n")
            code = max(code, ABORT)
            continue
        _emit(cfg, path, rec, lines, out)
        if negative and cfg.verdict_exit:
            code = max(code, VERDICT_NEGATIVE)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genosc",
        description="Classify generalized oscillator algebras from recurrence data.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("paths", nargs="*", help="spec files (same as --input)")
        p.add_argument("--input", "-i", action="append", default=[], help="spec file")
        p.add_argument("-M", type=int, default=16, help="truncation size (verify)")
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--max-dim", type=int, default=24)
        p.add_argument("--max-depth", type=int, default=8)
        p.add_argument("--j-max", type=int, default=3)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--verdict-exit", action="store_true",
                       help="exit 1 when a verdict is infinite or a check fails")
        p.add_argument("--exact", action="store_true",
                       help="verify with exact surd matrices instead of floats")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        subcommand=args.subcommand, inputs=list(args.input) + list(args.paths),
        M=args.M, tol=args.tol, max_dim=args.max_dim, max_depth=args.max_depth,
        format=args.format, j_max=args.j_max, verdict_exit=args.verdict_exit,
        exact=args.exact)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
