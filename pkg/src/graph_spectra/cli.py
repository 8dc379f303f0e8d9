"""Command-line front end.

  graph-spectra spectrum --input F --method {canonical|schur|both} [--oracle-n N] [--out F]
  graph-spectra measure --input F --samples K --out F
  graph-spectra examples [--filter S]

Exit codes: 0 success, 1 input error, 2 canonical/Schur disagreement
above 1e-6 (spectrum) or a failing fixture (examples).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from .asymptotics import ORACLE_CAP
from .catalog import FIXTURES, run_fixture
from .graph import load_spec
from .solve import canonical_spectrum, discrepancy, measure_of, schur_spectrum, section_residuals

DEFAULT_TOL = 1e-9
DISAGREEMENT_TOL = 1e-6
MASS_TOL = 1e-8


class InputError(Exception):
    pass


def residual_tol():
    raw = os.environ.get("GRAPH_SPECTRA_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"GRAPH_SPECTRA_TOL must be a number, got {raw!r}")
    if not tol > 0:
        raise InputError("GRAPH_SPECTRA_TOL must be positive")
    return tol


def _load(source):
    try:
        return load_spec(source)
    except FileNotFoundError:
        raise InputError(f"input file not found: {source}")
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}")
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"invalid graph description: {exc}")


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_safe(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, dict):
        return {k: _json_safe(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    return x


def cmd_spectrum(args):
    spec = _load(args.input)
    tol = residual_tol()
    try:
        if args.method == "schur":
            sp = schur_spectrum(spec)
        else:
            sp = canonical_spectrum(spec)
        other = schur_spectrum(spec) if args.method == "both" else None
    except ValueError as exc:
        raise InputError(str(exc))
    doc = sp.to_json()
    doc["method"] = args.method
    doc["residuals"] = {"tolerance": tol}
    code = 0
    if other is not None:
        d = discrepancy(sp, other)
        doc["discrepancy"] = d
        if d > DISAGREEMENT_TOL:
            print(f"methods disagree: max discrepancy {d}", file=sys.stderr)
            code = 2
    if args.oracle_n is not None:
        if not 1 <= args.oracle_n <= ORACLE_CAP:
            raise InputError(f"--oracle-n must lie in 1..{ORACLE_CAP}")
        try:
            doc["residuals"]["finite_section"] = section_residuals(spec, sp, args.oracle_n)
        except ValueError as exc:
            raise InputError(str(exc))
        doc["residuals"]["oracle_n"] = args.oracle_n
    _emit(json.dumps(_json_safe(doc), indent=2) + "\n", args.out)
    return code


def chebyshev_points(k):
    """k Chebyshev points of the first kind scaled to (-2, 2), ascending."""
    j = np.arange(k, 0, -1)
    return 2 * np.cos((2 * j - 1) * np.pi / (2 * k))


def cmd_measure(args):
    spec = _load(args.input)
    if args.samples < 0:
        raise InputError("--samples must be >= 0")
    try:
        mu = measure_of(spec)
    except ValueError as exc:
        raise InputError(str(exc))
    total = mu.total_mass()
    ok = abs(total - 1) <= MASS_TOL
    buf = io.StringIO()
    buf.write(f"# total_mass={total!r} check={'PASS' if ok else 'FAIL'} tol={MASS_TOL!r}\n")
    w = csv.writer(buf, lineterminator="\n")
    if args.samples:
        w.writerow(["x", "w"])
        xs = chebyshev_points(args.samples)
        for x, y in zip(xs, mu.ac_weight(xs)):
            w.writerow([repr(float(x)), repr(float(y))])
    buf.write("# masses\n")
    w.writerow(["lambda", "mass"])
    for lam, m in mu.masses:
        w.writerow([repr(float(lam)), repr(float(m))])
    _emit(buf.getvalue(), args.out)
    if not ok:
        print(f"total mass {total} deviates from 1 by more than {MASS_TOL}", file=sys.stderr)
        return 2
    return 0


def cmd_examples(args):
    tol = residual_tol() if "GRAPH_SPECTRA_TOL" in os.environ else None
    chosen = [fx for fx in FIXTURES if not args.filter or args.filter in fx.name or args.filter in fx.tags]
    if not chosen:
        raise InputError(f"no fixture matches {args.filter!r}")
    failed = 0
    for fx in chosen:
        ok, worst, where = run_fixture(fx, tol, inject_failure=args.inject_failure)
        failed += not ok
        suffix = f" at {where}" if where and not ok else ""
        print(f"{'PASS' if ok else 'FAIL'} {fx.name} max_residual={worst:.3e}{suffix}")
    print(f"{len(chosen) - failed}/{len(chosen)} fixtures passed")
    return 0 if failed == 0 else 2


def build_parser():
    p = argparse.ArgumentParser(prog="graph-spectra", description="Spectra of graphs with tails")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("spectrum", help="bands and eigenvalues of a graph or family")
    s.add_argument("--input", required=True, help="JSON file or inline JSON object")
    s.add_argument("--method", choices=("canonical", "schur", "both"), default="canonical")
    s.add_argument("--oracle-n", type=int, default=None, help="finite-section size for residuals")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_spectrum)
    m = sub.add_parser("measure", help="spectral density samples and point masses as CSV")
    m.add_argument("--input", required=True)
    m.add_argument("--samples", type=int, required=True)
    m.add_argument("--out", default=None)
    m.set_defaults(func=cmd_measure)
    e = sub.add_parser("examples", help="run the fixture catalog")
    e.add_argument("--filter", default=None, help="substring of a fixture name, or a tag")
    e.add_argument("--inject-failure", action="store_true", help=argparse.SUPPRESS)
    e.set_defaults(func=cmd_examples)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
