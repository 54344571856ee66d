"""The ``faber`` command: one entry point, nine subcommands.

    coeffs              dual wavelet/scaling coefficient tables
    basis               evaluate s_{j,k} or the cardinal interpolant on a grid
    analyze             sampling coefficients from a samples.csv window
    synthesize          evaluate S_N f from a coeffs.json file on a grid
    wavelet-analyze     biorthogonal analysis coefficients (mu)
    wavelet-synthesize  dual-series synthesis from mu coefficients
    norm                discrete b/f sequence norm of a coefficient file
    probe               norm-stabilization probe across sampling levels
    convergence         sup-error decay study of S_N on a test family

Conventions: dense grids travel as CSV with a mandatory header, sparse
coefficient maps as JSON with a provenance block; everything is UTF-8
with LF line endings and deterministic for a fixed invocation.  Exit
codes: 0 success, 2 validation failure, 3 numerical guard tripped
(unit-circle root or residue inconsistency).  FABER_THREADS caps the
worker threads used for grid evaluation (0 or unset picks the CPU
count); results do not depend on the thread count.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .basis import DEFAULT_TOLERANCE, DyadicIndex, build_basis, eval_L, eval_s
from .dualcoeffs import (
    ResidueConsistencyError,
    UnitCircleError,
    dual_scaling_coeffs,
    dual_wavelet_coeffs,
)
from .families import get_family
from .norms import INF, NormParams, ParameterError, b_norm, equivalence_probe, f_norm
from .piecewise import OrderError
from .sampling import FaberExpansion, SampledFunction, analyze, synthesize
from .wavelets import autocorr, scaling_crosscorr
from .wavetransform import WaveletExpansion, wavelet_analyze, wavelet_synthesize

__all__ = ["main", "convergence_study", "run"]


def worker_count() -> int:
    raw = os.environ.get("FABER_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"FABER_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError("FABER_THREADS must be >= 0")
    return n if n > 0 else (os.cpu_count() or 1)


def _chunked_eval(func, xs: np.ndarray) -> np.ndarray:
    """Evaluate func on xs, splitting across FABER_THREADS workers.

    Chunks are disjoint slices written into a preallocated array, so the
    result is identical for any worker count.
    """
    workers = worker_count()
    if workers <= 1 or len(xs) < 1024:
        return np.asarray(func(xs), dtype=float)
    out = np.empty(len(xs), dtype=float)
    bounds = np.linspace(0, len(xs), workers + 1, dtype=int)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(lambda lo=lo, hi=hi: out.__setitem__(slice(lo, hi), func(xs[lo:hi])))
            for lo, hi in zip(bounds, bounds[1:])
            if hi > lo
        ]
        for fut in futures:
            fut.result()
    return out


def _provenance(m, tolerance, truncation_bound) -> dict:
    return {
        "m": m,
        "tolerance": tolerance,
        "truncation_bound": truncation_bound,
        "version": __version__,
    }


def _parse_grid(spec: str) -> np.ndarray:
    try:
        a, b, step = (float(part) for part in spec.split(":"))
    except ValueError:
        raise ValueError(f"grid must be a:b:step, got {spec!r}") from None
    if step <= 0 or b < a:
        raise ValueError("grid needs a <= b and step > 0")
    n = int(math.floor((b - a) / step + 1e-9)) + 1
    return a + step * np.arange(n)


def _write_text(path, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _csv(headers, rows) -> str:
    lines = [",".join(headers)]
    for row in rows:
        lines.append(",".join("" if v is None else (format(v, ".17g") if isinstance(v, float) else str(v)) for v in row))
    return "\n".join(lines) + "\n"


def read_samples_csv(path: str) -> SampledFunction:
    """samples.csv: metadata row ``N=..,k_lo=..,k_hi=..``, header ``k,value``, rows."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    meta = dict(item.split("=") for item in lines[0].split(","))
    N, k_lo, k_hi = int(meta["N"]), int(meta["k_lo"]), int(meta["k_hi"])
    if lines[1].lower() != "k,value":
        raise ValueError("samples.csv must carry the header row 'k,value'")
    values = np.zeros(k_hi - k_lo + 1)
    for ln in lines[2:]:
        k_str, v_str = ln.split(",")
        k = int(k_str)
        if not k_lo <= k <= k_hi:
            raise ValueError(f"sample index {k} outside declared window [{k_lo}, {k_hi}]")
        values[k - k_lo] = float(v_str)
    return SampledFunction(N=N, k_lo=k_lo, values=tuple(values))


def write_samples_csv(path, f: SampledFunction):
    lines = [f"N={f.N},k_lo={f.k_lo},k_hi={f.k_hi}", "k,value"]
    for i, v in enumerate(f.values):
        lines.append(f"{f.k_lo + i},{format(v, '.17g')}")
    _write_text(path, "\n".join(lines) + "\n")


def _norm_value(raw: str) -> float:
    return INF if raw.lower() in ("inf", "infinity") else float(raw)


# -- subcommand implementations -------------------------------------------


def _cmd_coeffs(args) -> int:
    table = (dual_wavelet_coeffs if args.kind == "wavelet" else dual_scaling_coeffs)(args.m, args.window)
    seq = (autocorr if args.kind == "wavelet" else scaling_crosscorr)(args.m)
    if args.format == "csv":
        meta = (
            f"# decay_rate={format(table.decay_rate, '.17g')}\n"
            f"# truncation_bound={format(table.truncation_bound, '.17g')}\n"
            f"# input_polynomial={';'.join(seq.fraction_strings())}\n"
        )
        _write_text(args.out, meta + _csv(["n", "a_n"], table.items()))
        return 0
    doc = {
        "kind": table.kind,
        "center": table.center,
        "decay_rate": table.decay_rate,
        "input_polynomial": seq.fraction_strings(),
        "coeffs": [{"n": n, "a_n": v} for n, v in table.items()],
        "provenance": _provenance(args.m, None, table.truncation_bound),
    }
    _write_text(args.out, json.dumps(doc, indent=2) + "\n")
    return 0


def _cmd_basis(args) -> int:
    basis = build_basis(args.m, args.tolerance)
    xs = _parse_grid(args.grid)
    if args.which == "L":
        ys = _chunked_eval(lambda g: eval_L(basis, g), xs)
        label = "L"
    else:
        idx = DyadicIndex(args.j, args.k)
        ys = _chunked_eval(lambda g: eval_s(basis, idx, g), xs)
        label = f"s_{args.j}_{args.k}"
    _write_text(args.out, _csv(["x", label], zip(xs.tolist(), ys.tolist())))
    return 0


def _cmd_analyze(args) -> int:
    f = read_samples_csv(args.infile)
    exp = analyze(f, args.m)
    doc = exp.to_json_dict()
    doc["kind"] = "lambda"
    doc["provenance"] = _provenance(args.m, args.tolerance, build_basis(args.m, args.tolerance).dual_table.truncation_bound)
    _write_text(args.out, json.dumps(doc, indent=2) + "\n")
    return 0


def _load_expansion(path, expected_kind):
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    kind = doc.get("kind", "lambda")
    if kind != expected_kind:
        raise ValueError(f"coefficient file holds {kind!r} coefficients, expected {expected_kind!r}")
    cls = FaberExpansion if expected_kind == "lambda" else WaveletExpansion
    return cls.from_json_dict(doc)


def _cmd_synthesize(args) -> int:
    exp = _load_expansion(args.coeffs, "lambda")
    basis = build_basis(exp.m, args.tolerance)
    xs = _parse_grid(args.grid)
    ys = _chunked_eval(lambda g: synthesize(exp, basis, g), xs)
    _write_text(args.out, _csv(["x", "value"], zip(xs.tolist(), ys.tolist())))
    return 0


def _cmd_wavelet_analyze(args) -> int:
    f = read_samples_csv(args.infile)
    exp = wavelet_analyze(f, args.m, args.J, build_basis(args.m, args.tolerance))
    doc = exp.to_json_dict()
    doc["kind"] = "mu"
    doc["provenance"] = _provenance(args.m, args.tolerance, build_basis(args.m, args.tolerance).dual_table.truncation_bound)
    _write_text(args.out, json.dumps(doc, indent=2) + "\n")
    return 0


def _cmd_wavelet_synthesize(args) -> int:
    exp = _load_expansion(args.coeffs, "mu")
    basis = build_basis(exp.m, args.tolerance)
    xs = _parse_grid(args.grid)
    ys = _chunked_eval(lambda g: wavelet_synthesize(exp, basis.dual_table, g, basis.cardinal_table), xs)
    _write_text(args.out, _csv(["x", "value"], zip(xs.tolist(), ys.tolist())))
    return 0


def _cmd_norm(args) -> int:
    with open(args.coeffs, encoding="utf-8") as fh:
        doc = json.load(fh)
    cls = WaveletExpansion if doc.get("kind") == "mu" else FaberExpansion
    exp = cls.from_json_dict(doc)
    params = NormParams(r=args.r, p=_norm_value(args.p), theta=_norm_value(args.theta))
    value = (b_norm if args.space == "b" else f_norm)(exp, params)
    out = {
        "space": args.space,
        "r": args.r,
        "p": params.p if params.p != INF else "inf",
        "theta": params.theta if params.theta != INF else "inf",
        "norm": value,
        "provenance": _provenance(exp.m, None, None),
    }
    _write_text(args.out, json.dumps(out, indent=2) + "\n")
    return 0


def _cmd_probe(args) -> int:
    lo, hi = (int(p) for p in args.levels.split(":"))
    params = NormParams(r=args.r, p=_norm_value(args.p), theta=_norm_value(args.theta))
    report = equivalence_probe(get_family(args.family), args.m, params, range(lo, hi + 1))
    text = _csv(["N", "b_norm", "ratio"], [(row["N"], row["norm"], row["ratio"]) for row in report["rows"]])
    if not report["in_admissible_range"]:
        # soft warning, not an error: probing outside the admissible
        # parameter region is how the restriction is demonstrated
        text = (
            f"# warning: (r={args.r}, p={args.p}, theta={args.theta}) outside the "
            f"admissible characterization range for m={args.m}\n" + text
        )
        print(f"faber probe: {text.splitlines()[0][2:]}", file=sys.stderr)
    _write_text(args.out, text)
    return 0


def convergence_study(family, m: int, N_range, tolerance: float = DEFAULT_TOLERANCE, oversample: int = 2) -> list:
    """Sup-grid error of S_N f across N with empirical orders.

    The error is measured on a dyadic grid ``oversample`` levels finer
    than the densest N, over the support widened by one unit on each
    side; the empirical order between consecutive levels is
    log2(err_{N-1} / err_N).
    """
    basis = build_basis(m, tolerance)
    lo, hi = family.support
    N_range = list(N_range)
    level = max(N_range) + oversample
    xs = np.arange(math.floor((lo - 1) * 2**level), math.ceil((hi + 1) * 2**level) + 1) / 2.0**level
    reference = np.asarray(family.f(xs), dtype=float)
    rows = []
    prev_err = None
    for N in N_range:
        f = SampledFunction.from_callable(family.f, N, lo, hi)
        exp = analyze(f, m)
        err = float(np.max(np.abs(_chunked_eval(lambda g: synthesize(exp, basis, g), xs) - reference)))
        order = None if prev_err in (None, 0.0) or err == 0.0 else math.log2(prev_err / err)
        rows.append({"N": N, "sup_error": err, "order": order})
        prev_err = err
    return rows


def _cmd_convergence(args) -> int:
    lo, hi = (int(p) for p in args.levels.split(":"))
    rows = convergence_study(get_family(args.family), args.m, range(lo, hi + 1), args.tolerance)
    _write_text(args.out, _csv(["N", "sup_error", "order"], [(r["N"], r["sup_error"], r["order"]) for r in rows]))
    return 0


# -- parser / dispatch -----------------------------------------------------


def _add_common(sub, tolerance=True):
    sub.add_argument("--m", type=int, required=True, help="spline wavelet order (>= 2)")
    if tolerance:
        sub.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE, help="series truncation tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="faber", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"faber {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("coeffs", help="dual coefficient table")
    _add_common(p, tolerance=False)
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--kind", choices=["wavelet", "scaling"], default="wavelet")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_coeffs)

    p = subs.add_parser("basis", help="evaluate a basis function on a grid")
    _add_common(p)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--grid", required=True, help="a:b:step (use --grid=-1:3:0.5 for negative starts)")
    p.add_argument("--which", choices=["s", "L"], default="s")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_basis)

    p = subs.add_parser("analyze", help="sampling coefficients from samples.csv")
    _add_common(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_analyze)

    p = subs.add_parser("synthesize", help="evaluate S_N f from coeffs.json")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--grid", required=True)
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_synthesize)

    p = subs.add_parser("wavelet-analyze", help="biorthogonal mu coefficients from samples.csv")
    _add_common(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--J", type=int, required=True, help="finest analysis level")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_wavelet_analyze)

    p = subs.add_parser("wavelet-synthesize", help="dual-series synthesis from mu coefficients")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--grid", required=True)
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_wavelet_synthesize)

    p = subs.add_parser("norm", help="discrete sequence norm of a coefficient file")
    p.add_argument("--space", choices=["b", "f"], required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--theta", required=True)
    p.add_argument("--coeffs", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_norm)

    p = subs.add_parser("probe", help="norm stabilization across levels")
    _add_common(p, tolerance=False)
    p.add_argument("--family", required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--theta", required=True)
    p.add_argument("--levels", required=True, help="lo:hi inclusive")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_probe)

    p = subs.add_parser("convergence", help="sup-error decay of S_N on a family")
    _add_common(p)
    p.add_argument("--family", required=True)
    p.add_argument("--levels", default="3:8")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_convergence)

    return parser


def run(args) -> int:
    """Dispatch a parsed invocation; maps guard failures to exit codes."""
    try:
        return args.func(args)
    except (UnitCircleError, ResidueConsistencyError) as exc:
        print(f"faber: numerical guard: {exc}", file=sys.stderr)
        return 3
    except (OrderError, ParameterError, ValueError, OSError) as exc:
        print(f"faber: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return run(args)


if __name__ == "__main__":
    raise SystemExit(main())
