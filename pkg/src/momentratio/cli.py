"""Command-line front end.

Subcommands: ``classify``, ``family``, ``szego``, ``sample``, ``verify-paper``.
Exit codes: 0 success, 1 fixture or periodicity failure, 2 malformed input,
3 constraint or consistency rejection.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import classify as cl
from . import cumulant_lab as cu
from . import family as fam
from .series import Polynomial, to_rational
from .verify import run_fixtures

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_MALFORMED = 2
EXIT_REJECTED = 3

KINDS = ("ratios", "moments", "cumulant_ratios")


class InputError(ValueError):
    pass


@dataclass
class Report:
    command: str
    input_digest: str
    result: dict[str, Any]
    explanation: list[str] = field(default_factory=list)
    exit_status: int = EXIT_OK

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "input_digest": self.input_digest,
            "result": self.result,
            "explanation": self.explanation,
            "exit_status": self.exit_status,
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"command: {self.command}", f"input sha256: {self.input_digest}"]
        lines += _text_payload(self.result)
        lines += self.explanation
        lines.append(f"exit status: {self.exit_status}")
        return "\n".join(lines)


def _text_payload(obj: Any, indent: str = "") -> list[str]:
    lines = []
    for key, value in obj.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines += _text_payload(value, indent + "  ")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                lines.append(f"{indent}  - " + ", ".join(f"{k}={v}" for k, v in item.items()))
        elif isinstance(value, list):
            lines.append(f"{indent}{key}: [" + ", ".join(str(v) for v in value) + "]")
        else:
            lines.append(f"{indent}{key}: {value}")
    return lines


def _q(x: Fraction) -> str:
    return str(x)


def _qs(xs: Sequence[Fraction]) -> list[str]:
    return [str(x) for x in xs]


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _params_digest(**params: Any) -> str:
    return _digest(json.dumps({k: str(v) for k, v in params.items()}, sort_keys=True).encode())


def parse_document(raw: bytes) -> tuple[str, list[Fraction]]:
    """Parse ``{"kind": ..., "values": [...]}``; values are integers or rational strings."""
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"not a JSON document: {exc}") from None
    if not isinstance(doc, dict) or "kind" not in doc or "values" not in doc:
        raise InputError('expected an object with "kind" and "values"')
    kind = doc["kind"]
    if kind not in KINDS:
        raise InputError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    if not isinstance(doc["values"], list):
        raise InputError('"values" must be a list')
    values = []
    for i, v in enumerate(doc["values"]):
        if isinstance(v, bool) or not isinstance(v, (str, int)):
            raise InputError(f"values[{i}] = {v!r} must be an integer or a rational string")
        try:
            values.append(to_rational(v))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"values[{i}] = {v!r}: {exc}") from None
    return kind, values


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None


def _rational_arg(text: str) -> Fraction:
    try:
        return to_rational(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _cf_shape(a: Fraction, b: Fraction) -> str:
    return f"f(t) = (1 + i*({a})*t + ({b})*t^2) / (1 + t^2)"


def _mixture(params: fam.MixtureParams) -> dict[str, str]:
    return {"w0": _q(params.w0), "wminus": _q(params.wminus), "wplus": _q(params.wplus)}


# -- commands ------------------------------------------------------------------


def cmd_classify(kind: str, values: list[Fraction], min_prefix: int) -> tuple[dict, list[str], int]:
    if kind == "cumulant_ratios":
        return _classify_cumulants(values, min_prefix)
    ratios = list(fam.moments_to_ratios(values)) if kind == "moments" else values
    try:
        c = cl.classify_ratios(ratios, min_prefix=min_prefix)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    result: dict[str, Any] = {"kind": kind, "ratios": _qs(ratios), "classification": c.tag}
    notes = []
    status = EXIT_OK
    if isinstance(c, cl.FiniteMomentFamily):
        result.update(
            a=_q(c.a),
            b=_q(c.b),
            weights=_mixture(c.params),
            pattern=["1", _q(c.a), _q(1 - c.b), "..."],
            characteristic_function=_cf_shape(c.a, c.b),
        )
        notes.append(f"prefix of {len(ratios)} ratios is consistent with the finite-ratio family")
    elif isinstance(c, cl.DegeneratePointMass):
        result.update(a="0", b="1")
        notes.append("point mass at 0: degenerate, outside the non-degenerate classification")
    elif isinstance(c, cl.PatternViolated):
        result.update(index=c.index)
        notes.append(c.explanation)
    elif isinstance(c, cl.InconsistentWithAnyDistribution):
        result.update(a=_q(c.a), b=_q(c.b), violated=c.violated)
        notes.append(f"pattern fits but {c.violated} fails: no distribution has these ratios")
        status = EXIT_REJECTED
    else:
        result.update(reason=c.reason)
        notes.append(c.reason)
        status = EXIT_MALFORMED
    return result, notes, status


def _classify_cumulants(values: list[Fraction], min_prefix: int) -> tuple[dict, list[str], int]:
    try:
        c = cu.classify_cumulant_ratios(values, min_prefix=min_prefix)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    result: dict[str, Any] = {"kind": "cumulant_ratios", "classification": c.tag}
    notes: list[str] = []
    status = EXIT_OK
    if isinstance(c, cu.Gaussian):
        result.update(shift=_q(c.shift), variance=_q(c.variance), sigma2=_q(c.sigma2))
        notes.append(f"g(t) = i*({c.shift})*t - ({c.sigma2})*t^2")
    elif isinstance(c, cu.RationalLog):
        result.update(
            numerator_u=_qs(c.form.reduced_numerator.coeffs),
            denominator_u=_qs(c.form.reduced_denominator.coeffs),
            numerator_t_real=_qs(c.numerator_t_real.coeffs),
            numerator_t_imag=_qs(c.numerator_t_imag.coeffs),
            denominator_t=c.denominator_t,
            numerator_degree=c.numerator_degree,
        )
        notes.append("shape only: validity as a log-characteristic function is not checked")
    elif isinstance(c, cu.ViolatesTheoremShape):
        result.update(explanation=c.explanation)
        notes.append(c.explanation)
        status = EXIT_REJECTED
    else:
        notes.append("no eventual periodicity in the prefix")
    return result, notes, status


def cmd_family(a: Fraction, b: Fraction, n_terms: int, emit: str, t_max: Fraction, t_points: int):
    params = fam.family_weights(a, b)
    result: dict[str, Any] = {"a": _q(a), "b": _q(b), "emit": emit}
    if emit == "weights":
        result["weights"] = _mixture(params)
    elif emit == "ratios":
        result["values"] = _qs(fam.family_ratio_sequence(a, b, n_terms))
    elif emit == "moments":
        result["values"] = _qs(fam.family_moments(a, b, n_terms))
    elif emit == "cumulants":
        result["values"] = _qs(fam.moments_to_cumulants(fam.family_moments(a, b, n_terms)))
    else:
        grid = []
        for j in range(t_points):
            t = -t_max + 2 * t_max * Fraction(j, t_points - 1) if t_points > 1 else Fraction(0)
            f = fam.cf_eval(a, b, float(t))
            grid.append({"t": f"{float(t):.17g}", "re": f"{f.real:.17g}", "im": f"{f.imag:.17g}"})
        result["grid"] = grid
    notes = ["degenerate point mass at 0"] if params.degenerate else []
    return result, notes, EXIT_OK


def cmd_szego(kind: str, values: list[Fraction], max_period: int | None):
    if kind == "moments":
        raise InputError("szego takes ratios or cumulant_ratios, not moments")
    if max_period is None:
        max_period = max(len(values) // 2, 1)
    try:
        desc = cl.detect_eventual_periodicity(values, max_period)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if desc is None:
        return (
            {"kind": kind, "periodic": False},
            [f"no eventual period <= {max_period} fits the {len(values)} given terms"],
            EXIT_FAILURE,
        )
    form = cl.szego_reconstruct(desc)
    expanded = list(form.expand(len(values) - 1))
    result = {
        "kind": kind,
        "periodic": True,
        "preperiod": desc.preperiod,
        "period": desc.period,
        "head": _qs(desc.head),
        "cycle": _qs(desc.cycle),
        "numerator": _qs(form.numerator.coeffs),
        "m": form.m,
        "reduced_numerator": _qs(form.reduced_numerator.coeffs),
        "reduced_denominator": _qs(form.reduced_denominator.coeffs),
        "round_trip": expanded == values,
    }
    notes = [f"series = ({form.numerator}) / (1 - t^{form.m})"]
    return result, notes, EXIT_OK


def _sample_shard(args) -> fam.SampleSummary:
    a, b, n, seed, max_power = args
    return fam.sample_mixture(a, b, n, seed, max_power=max_power)


def cmd_sample(a: Fraction, b: Fraction, n: int, seed: int, k_max: int, shards: int = 1):
    fam.family_weights(a, b)
    if n < 1:
        raise InputError("--n must be >= 1")
    if shards < 1:
        raise InputError("--shards must be >= 1")
    # shard i draws with seed + i; sums merge by addition
    sizes = [n // shards + (1 if i < n % shards else 0) for i in range(shards)]
    jobs = [(a, b, size, seed + i, 2 * k_max) for i, size in enumerate(sizes) if size]
    with ThreadPoolExecutor(max_workers=len(jobs)) as pool:
        parts = list(pool.map(_sample_shard, jobs))
    summary = parts[0]
    for p in parts[1:]:
        summary = summary + p
    exact = fam.family_ratio_sequence(a, b, k_max)
    rows = []
    flagged = []
    for k, (est, se) in enumerate(fam.empirical_ratios(summary, k_max)):
        z = abs(est - float(exact[k]))
        flag = z > 5 * se if se > 0 else z > 0
        if flag:
            flagged.append(k)
        rows.append(
            {"k": k, "exact": _q(exact[k]), "estimate": f"{est:.17g}", "stderr": f"{se:.17g}", "flag": flag}
        )
    result = {"a": _q(a), "b": _q(b), "n": n, "seed": seed, "shards": shards, "ratios": rows}
    notes = [f"flagged k: {flagged}" if flagged else "all estimates within 5 standard errors"]
    return result, notes, EXIT_OK


def cmd_verify_paper(g_numerator: Polynomial = cu.G_CLOSED_FORM_NUMERATOR):
    results = run_fixtures(g_numerator)
    rows = [
        {"name": r.name, "status": "PASS" if r.ok else "FAIL", "seconds": f"{r.seconds:.3f}", "detail": r.detail}
        for r in results
    ]
    ok = all(r.ok for r in results)
    notes = [f"{sum(r.ok for r in results)}/{len(results)} fixtures passed"]
    return {"fixtures": rows, "all_passed": ok}, notes, EXIT_OK if ok else EXIT_FAILURE


# -- argument handling ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="momentratio", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit the report as JSON")

    p = sub.add_parser("classify", help="classify ratios, moments or cumulant ratios")
    p.add_argument("input", nargs="?", default="-", help="JSON document, '-' for stdin")
    p.add_argument("--min-prefix", type=int, default=cl.DEFAULT_MIN_PREFIX)
    common(p)

    p = sub.add_parser("family", help="emit exact data for the family member (a, b)")
    p.add_argument("--a", type=_rational_arg, required=True)
    p.add_argument("--b", type=_rational_arg, required=True)
    p.add_argument("--n-terms", type=int, default=10)
    p.add_argument(
        "--emit", choices=("ratios", "moments", "cumulants", "weights", "cf-grid"), default="ratios"
    )
    p.add_argument("--t-max", type=_rational_arg, default=Fraction(10), help="cf-grid spans [-t_max, t_max]")
    p.add_argument("--t-points", type=int, default=81, help="number of equally spaced cf-grid points")
    common(p)

    p = sub.add_parser("szego", help="reconstruct P(t)/(1-t^m) from an eventually periodic prefix")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--max-period", type=int, default=None)
    common(p)

    p = sub.add_parser("sample", help="Monte Carlo check of the ratio pattern")
    p.add_argument("--a", type=_rational_arg, required=True)
    p.add_argument("--b", type=_rational_arg, required=True)
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--shards", type=int, default=1)
    common(p)

    p = sub.add_parser("verify-paper", help="run the reproduction fixtures")
    common(p)
    return parser


def run(argv: Sequence[str]) -> Report:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_MALFORMED
        return Report(" ".join(["momentratio", *argv]), "", {}, [], code)
    command = " ".join(["momentratio", *argv])
    digest = ""
    try:
        if args.command in ("classify", "szego"):
            raw = _read_input(args.input)
            digest = _digest(raw)
            kind, values = parse_document(raw)
            if args.command == "classify":
                out = cmd_classify(kind, values, args.min_prefix)
            else:
                out = cmd_szego(kind, values, args.max_period)
        elif args.command == "family":
            digest = _params_digest(a=args.a, b=args.b, n_terms=args.n_terms, emit=args.emit)
            out = cmd_family(args.a, args.b, args.n_terms, args.emit, args.t_max, args.t_points)
        elif args.command == "sample":
            digest = _params_digest(a=args.a, b=args.b, n=args.n, seed=args.seed, k_max=args.k_max)
            out = cmd_sample(args.a, args.b, args.n, args.seed, args.k_max, args.shards)
        else:
            digest = _params_digest()
            out = cmd_verify_paper()
    except InputError as exc:
        return Report(command, digest, {"error": "malformed input"}, [str(exc)], EXIT_MALFORMED)
    except fam.ConstraintViolation as exc:
        return Report(command, digest, {"error": "constraint violation", "violated": exc.inequality}, [str(exc)], EXIT_REJECTED)
    result, notes, status = out
    return Report(command, digest, result, notes, status)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    report = run(argv)
    if report.result or report.explanation:
        print(report.to_json() if "--json" in argv else report.to_text())
    return report.exit_status


if __name__ == "__main__":
    raise SystemExit(main())
