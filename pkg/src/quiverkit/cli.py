"""Command-line front end.

Every command takes a quiver file first.  Results go to standard output as
text, or as one JSON object with ``--json``.  Exit status: 0 for a result
(including negative verdicts such as ``NotRegular``), 2 for invalid input, 3
when the search was inconclusive (``Undetermined``, no positive shift found,
``Inconclusive`` summand scan).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Callable

from . import dimvec, functors
from .dimvec import RootKind, Verdict
from .errors import NoPositiveT, QuiverError
from .linalg import GF
from .quiver import (
    Quiver,
    as_dimvector,
    definiteness_certificate,
    euler_form,
    format_quiver,
    load_quiver,
    tits_form,
)
from .representation import (
    DEFAULT_PRIME,
    DEFAULT_TRIALS,
    Representation,
    general_position_sample,
    hom_ext,
    load_rep,
    rep_to_json,
)

SCHEMA_VERSION = 1
EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INCONCLUSIVE = 3

_VECTOR = re.compile(r"-?\d+(,-?\d+)*")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _vector(text: str) -> tuple[int, ...]:
    if not _VECTOR.fullmatch(text):
        raise argparse.ArgumentTypeError(f"expected comma-separated integers without spaces, got {text!r}")
    return tuple(int(v) for v in text.split(","))


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _integer(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None


class Outcome:
    """A command's result: a JSON-ready payload, text lines and an exit code."""

    def __init__(self, payload: dict, lines: list[str], code: int = EXIT_OK):
        self.payload = payload
        self.lines = lines
        self.code = code


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for '{args.command}'")


def _bound(args) -> int:
    return dimvec.DEFAULT_BOUND if args.bound is None else args.bound


def _vec(q: Quiver, v) -> tuple[int, ...]:
    return as_dimvector(q, v)


def _fmt(v) -> str:
    return "(" + ",".join(str(c) for c in v) + ")"


# -- commands ------------------------------------------------------------------------


def cmd_classify(q: Quiver, args) -> Outcome:
    cert = definiteness_certificate(q)
    payload = {
        "type": cert.type.value,
        "witness": list(cert.witness) if cert.witness is not None else None,
        "pivots": [str(p) for p in cert.pivots],
    }
    lines = [f"type: {cert.type.value}"]
    if cert.witness is not None:
        what = "negative Tits form" if cert.type.value == "Wild" else "radical vector"
        lines.append(f"witness ({what}): {_fmt(cert.witness)}, tits form {tits_form(q, cert.witness)}")
        payload["witness_tits"] = tits_form(q, cert.witness)
    return Outcome(payload, lines)


def cmd_euler(q: Quiver, args) -> Outcome:
    _require(args, "x")
    x = _vec(q, args.x)
    y = _vec(q, args.y) if args.y is not None else x
    value = euler_form(q, x, y)
    return Outcome({"x": list(x), "y": list(y), "euler": value}, [f"<{_fmt(x)}, {_fmt(y)}> = {value}"])


def cmd_coxeter(q: Quiver, args) -> Outcome:
    phi = dimvec.coxeter_matrix(q).int_rows()
    payload = {"order": list(q.order), "matrix": [list(r) for r in phi]}
    lines = ["order: " + " ".join(str(i) for i in q.order), "matrix:"]
    lines += ["  " + " ".join(f"{v:4d}" for v in row) for row in phi]
    if args.x is not None:
        x = _vec(q, args.x)
        image = dimvec.coxeter_apply(q, x, args.t)
        payload.update({"x": list(x), "t": args.t, "image": list(image)})
        lines.append(f"Phi^{args.t} {_fmt(x)} = {_fmt(image)}")
    return Outcome(payload, lines)


def _spectral_json(cert: dimvec.SpectralCertificate) -> dict:
    def tail(b: dimvec.TailBound) -> dict:
        return {
            "rho": b.rho,
            "block": b.block,
            "start": b.start,
            "coefficient": b.coefficient,
            "min_margin": b.min_margin,
            "eigen_residual": b.residual,
        }

    return {"numerical": True, "digits": cert.digits, "forward": tail(cert.forward), "backward": tail(cert.backward)}


def _regularity_json(cert: dimvec.RegularityCertificate) -> dict:
    out = {"verdict": cert.verdict.value, "bound": cert.bound}
    if cert.witness is not None:
        out["witness"] = {"t": cert.witness[0], "vertex": cert.witness[1]}
    if cert.method is not None:
        out["method"] = cert.method
    if cert.period is not None:
        out["period"] = cert.period
    if cert.spectral is not None:
        out["spectral"] = _spectral_json(cert.spectral)
    return out


def cmd_regular(q: Quiver, args) -> Outcome:
    _require(args, "x")
    x = _vec(q, args.x)
    cert = dimvec.regularity_check(q, x, _bound(args))
    lines = [f"x: {_fmt(x)}", f"verdict: {cert.verdict.value}", f"exact scan: |t| <= {cert.bound}"]
    if cert.witness is not None:
        t, i = cert.witness
        value = dimvec.coxeter_apply(q, x, t)
        lines.append(f"witness: Phi^{t} x = {_fmt(value)} is negative at vertex {i}")
    if cert.period is not None:
        lines.append(f"periodic: Phi^{cert.period} x = x")
    if cert.spectral is not None:
        f, b = cert.spectral.forward, cert.spectral.backward
        lines.append(
            f"spectral (numerical, {cert.spectral.digits} digits): rho = {f.rho:.6f}, "
            f"positive for t >= {f.start} and t <= -{b.start}"
        )
    code = EXIT_INCONCLUSIVE if cert.verdict is Verdict.UNDETERMINED else EXIT_OK
    return Outcome({"x": list(x), "regularity": _regularity_json(cert)}, lines, code)


def cmd_positivity(q: Quiver, args) -> Outcome:
    _require(args, "x")
    x = _vec(q, args.x)
    scan = dimvec.positivity_scan(q, x, args.tmax, _bound(args))
    payload = {
        "x": list(x),
        "t": scan.t,
        "values": list(scan.values),
        "sustained": scan.sustained,
        "onset": scan.onset,
        "t_max": scan.t_max,
    }
    lines = [
        f"x: {_fmt(x)}",
        f"smallest t with <Phi^-t x, x> > 0: {scan.t}",
        f"values from t = {scan.t}: " + " ".join(str(v) for v in scan.values[:10]) + (" ..." if len(scan.values) > 10 else ""),
        f"positive for all {len(scan.values)} values: {'yes' if scan.sustained else 'no'}",
    ]
    if scan.onset is None:
        lines.append(f"no run of {len(scan.values)} positive values starts at t <= {scan.t_max}")
    elif scan.onset != scan.t:
        lines.append(f"positive from t = {scan.onset} on ({len(scan.values)} values checked)")
    return Outcome(payload, lines)


def _root_json(root: dimvec.RootClass) -> dict:
    out = {"kind": root.kind.value, "trace": list(root.trace), "reduced": list(root.reduced)}
    if root.kind is RootKind.IMAGINARY:
        out["zero_root"] = root.zero_root
    return out


def cmd_roots(q: Quiver, args) -> Outcome:
    if args.x is not None:
        x = _vec(q, args.x)
        root = dimvec.classify_root(q, x)
        lines = [f"x: {_fmt(x)}", f"kind: {root.kind.value}", f"tits form: {tits_form(q, x)}"]
        if root.kind is RootKind.IMAGINARY:
            lines.append(f"zero root: {'yes' if root.zero_root else 'no'}")
        lines.append("reflections: " + (" ".join(map(str, root.trace)) or "none"))
        return Outcome({"x": list(x), "tits": tits_form(q, x), "root": _root_json(root)}, lines)
    if args.conjecture:
        found = dimvec.conjecture_scan(q, args.height, _bound(args))
        rows = [
            {"x": list(c.x), "tits": c.tits, "root": _root_json(c.root), "regularity": _regularity_json(c.regularity)}
            for c in found
        ]
        lines = [f"imaginary roots of height <= {args.height}, not proper multiples of zero roots: {len(found)}"]
        lines += [f"  {_fmt(c.x)}  tits {c.tits}  {c.regularity.verdict.value}" for c in found]
        undetermined = any(c.regularity.verdict is Verdict.UNDETERMINED for c in found)
        code = EXIT_INCONCLUSIVE if undetermined else EXIT_OK
        return Outcome({"height": args.height, "bound": _bound(args), "candidates": rows}, lines, code)
    rows = []
    lines = [f"positive roots of height <= {args.height}:"]
    for x in dimvec.positive_vectors(q.n, args.height):
        root = dimvec.classify_root(q, x)
        if root.kind is RootKind.NOT_A_ROOT:
            continue
        rows.append({"x": list(x), "tits": tits_form(q, x), "root": _root_json(root)})
        lines.append(f"  {_fmt(x)}  {root.kind.value}  tits {tits_form(q, x)}")
    return Outcome({"height": args.height, "roots": rows}, lines)


def _load_or_sample(q: Quiver, args, path_attr: str, vec_attr: str, sub_seed: int) -> tuple[Representation, dict]:
    path = getattr(args, path_attr)
    if path is not None:
        rep = load_rep(q, path)
        return rep, {"source": "file", "dims": list(rep.dims)}
    vec = getattr(args, vec_attr)
    if vec is None:
        raise UsageError(f"'{args.command}' needs --{path_attr} or --{vec_attr}")
    GF(args.p)
    sample = general_position_sample(q, _vec(q, vec), args.p, args.trials, (args.seed, sub_seed))
    info = {
        "source": "sampled",
        "dims": list(sample.rep.dims),
        "end_dim": sample.end_dim,
        "trial": sample.trial,
        "trials_run": sample.trials_run,
        "seed": [args.seed, sub_seed],
    }
    return sample.rep, info


def cmd_homext(q: Quiver, args) -> Outcome:
    X, xinfo = _load_or_sample(q, args, "rep", "x", 0)
    if args.rep2 is None and args.y is None:
        Y, yinfo = X, xinfo
    else:
        Y, yinfo = _load_or_sample(q, args, "rep2", "y", 1)
    res = hom_ext(X, Y, basis=False)
    payload = {"X": xinfo, "Y": yinfo, "field": X.p, "hom": res.hom_dim, "ext": res.ext_dim, "euler": res.euler}
    lines = [
        f"dim X = {_fmt(X.dims)}, dim Y = {_fmt(Y.dims)} over GF({X.p})",
        f"dim Hom(X, Y) = {res.hom_dim}",
        f"dim Ext(X, Y) = {res.ext_dim}",
        f"Euler form = {res.euler}",
    ]
    return Outcome(payload, lines)


def cmd_reflect(q: Quiver, args) -> Outcome:
    _require(args, "vertex", "rep")
    X = load_rep(q, args.rep)
    i = args.vertex
    if q.is_sink(i):
        Y, defect = functors._sink_step(X, i)
        kind = "sink"
    elif q.is_source(i):
        Y, defect = functors._source_step(X, i)
        kind = "source"
    else:
        raise QuiverError(f"vertex {i} is neither a sink nor a source")
    expected = dimvec.simple_reflection(q, i, X.dims)
    payload = {
        "vertex": i,
        "kind": kind,
        "defect": defect,
        "dims_before": list(X.dims),
        "dims_after": list(Y.dims),
        "reflected_dims": list(expected),
        "quiver": format_quiver(Y.quiver),
        "representation": rep_to_json(Y),
    }
    lines = [
        f"{kind} reflection at vertex {i}",
        f"dims {_fmt(X.dims)} -> {_fmt(Y.dims)} (reflected vector {_fmt(expected)})",
        f"S({i}) summands removed: {defect}",
        "reflected quiver:",
        *("  " + line for line in format_quiver(Y.quiver).splitlines()),
        "representation: " + json.dumps(rep_to_json(Y), sort_keys=True),
    ]
    return Outcome(payload, lines)


def _report_json(r: functors.DefectReport) -> dict:
    return {
        "direction": r.direction,
        "bound": r.bound,
        "steps_run": r.steps_run,
        "verdict": r.verdict.value,
        "defects": [{"sweep": s, "vertex": i, "multiplicity": m} for s, i, m in r.defects],
        "dims": [list(d) for d in r.dims],
    }


def _scan_json(scan: functors.SummandScan) -> dict:
    return {
        "forward": _report_json(scan.forward),
        "backward": _report_json(scan.backward),
        "exposure": {
            "forward": scan.exposure.forward,
            "backward": scan.exposure.backward,
            "certified": scan.exposure.certified,
        },
    }


def _scan_lines(scan: functors.SummandScan) -> list[str]:
    lines = []
    for r in (scan.forward, scan.backward):
        found = ", ".join(f"sweep {s}: S({i})^{m}" for s, i, m in r.defects) or "none"
        lines.append(f"{r.direction}: {r.verdict.value} after {r.steps_run} sweep(s) of {r.bound}; defects {found}")
    return lines


def cmd_scan_summands(q: Quiver, args) -> Outcome:
    X, info = _load_or_sample(q, args, "rep", "x", 0)
    scan = functors.summand_defect_scan(X, args.bound)
    inconclusive = functors.ScanVerdict.INCONCLUSIVE in (scan.forward.verdict, scan.backward.verdict)
    lines = [f"dim X = {_fmt(X.dims)} over GF({X.p})", *_scan_lines(scan)]
    return Outcome({"X": info, "scan": _scan_json(scan)}, lines, EXIT_INCONCLUSIVE if inconclusive else EXIT_OK)


def cmd_hom_witness(q: Quiver, args) -> Outcome:
    _require(args, "x")
    x = _vec(q, args.x)
    w = functors.regular_hom_witness(q, x, args.p, args.seed, args.trials, args.tmax, _bound(args))
    payload = {
        "x": list(w.x),
        "t": w.t,
        "r": list(w.r),
        "euler": w.euler,
        "hom": w.hom_dim,
        "ext": w.ext_dim,
        "field": args.p,
        "X": {"end_dim": w.sample_x.end_dim, "trial": w.sample_x.trial, "seed": [args.seed, 0]},
        "R": {"end_dim": w.sample_r.end_dim, "trial": w.sample_r.trial, "seed": [args.seed, 1]},
        "scan_R": _scan_json(w.scan_r),
    }
    lines = [
        f"x = {_fmt(w.x)}, smallest shift t = {w.t}, dim R = Phi^-{w.t} x = {_fmt(w.r)}",
        f"<dim R, dim X> = {w.euler}",
        f"dim Hom(R, X) = {w.hom_dim}, dim Ext(R, X) = {w.ext_dim}",
        f"End dims: X {w.sample_x.end_dim}, R {w.sample_r.end_dim}",
        *("R " + line for line in _scan_lines(w.scan_r)),
    ]
    return Outcome(payload, lines)


COMMANDS: dict[str, tuple[Callable, str]] = {
    "classify": (cmd_classify, "finite / tame / wild type with an exact certificate"),
    "euler": (cmd_euler, "Euler form <x, y> (y defaults to x)"),
    "coxeter": (cmd_coxeter, "Coxeter matrix, and Phi^t x with --x"),
    "regular": (cmd_regular, "regularity verdict for a dimension vector"),
    "positivity": (cmd_positivity, "smallest t with <Phi^-t x, x> > 0"),
    "roots": (cmd_roots, "root classification (--x), root list, or --conjecture scan"),
    "homext": (cmd_homext, "dim Hom and dim Ext between two representations"),
    "reflect": (cmd_reflect, "reflection functor at a sink or source"),
    "scan-summands": (cmd_scan_summands, "look for preprojective and preinjective summands"),
    "hom-witness": (cmd_hom_witness, "nonzero Hom from a shifted regular module"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quiverkit", description="Exact computations with quivers and their representations.")
    parser.add_argument("command", choices=sorted(COMMANDS), metavar="command", help=", ".join(sorted(COMMANDS)))
    parser.add_argument("quiver", help="quiver file ('vertices n' then 'arrow name source target' lines)")
    parser.add_argument("--x", type=_vector, help="dimension vector, e.g. 1,1,0,1,1")
    parser.add_argument("--y", type=_vector, help="second dimension vector")
    parser.add_argument("--rep", help="representation JSON file")
    parser.add_argument("--rep2", help="second representation JSON file")
    parser.add_argument("--p", type=_positive, default=DEFAULT_PRIME, help="prime field for sampling")
    parser.add_argument("--seed", type=_nonnegative, default=0, help="seed for sampled representations")
    parser.add_argument(
        "--bound",
        type=_positive,
        help=f"exact regularity scan range (default {dimvec.DEFAULT_BOUND}); for scan-summands, "
        "the number of Coxeter sweeps (default: enough to expose every summand)",
    )
    parser.add_argument("--tmax", type=_nonnegative, default=dimvec.DEFAULT_TMAX, help="largest shift tried by positivity")
    parser.add_argument("--height", type=_positive, default=dimvec.DEFAULT_HEIGHT, help="height cap for roots")
    parser.add_argument("--trials", type=_positive, default=DEFAULT_TRIALS, help="random draws per sample")
    parser.add_argument("--vertex", type=_positive, help="vertex for reflect")
    parser.add_argument("--t", type=_integer, default=1, help="exponent for coxeter")
    parser.add_argument("--conjecture", action="store_true", help="roots: imaginary roots that are not multiples of zero roots")
    parser.add_argument("--json", action="store_true", help="emit one JSON object")
    return parser


def render(command: str, outcome: Outcome, as_json: bool) -> str:
    if as_json:
        body = {"schema_version": SCHEMA_VERSION, "command": command, "exit_code": outcome.code, "result": outcome.payload}
        return json.dumps(body, sort_keys=True, indent=2) + "\n"
    return "\n".join(outcome.lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        GF(args.p)
        q = load_quiver(args.quiver)
        outcome = COMMANDS[args.command][0](q, args)
    except UsageError as exc:
        return _fail(str(exc))
    except NoPositiveT as exc:
        return _fail(str(exc), EXIT_INCONCLUSIVE)
    except (ValueError, OSError) as exc:
        return _fail(_describe(exc))
    sys.stdout.write(render(args.command, outcome, args.json))
    return outcome.code


def _describe(exc: Exception) -> str:
    if isinstance(exc, OSError):
        return f"{exc.strerror or exc}: {exc.filename}" if exc.filename else str(exc)
    return f"{type(exc).__name__}: {exc}"


def _fail(message: str, code: int = EXIT_INVALID) -> int:
    message = " ".join(message.split())
    sys.stderr.write(f"error: {message}\n")
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
