"""Command-line interface: JSON documents in and out.

A map document is ``{"degree": d, "num": [[re, im], ...], "den": [[re, im], ...]}``
with coefficients in ascending order.  Floats are written with ``repr``,
the shortest string that reads back to the same double, so documents
round-trip bit for bit.

Exit codes: 0 ok, 1 some batch line failed, 2 invalid input,
3 numerical failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from contextlib import contextmanager

from .cpoly import DEFAULT_TOLERANCES, Poly, RootFindingError, Tolerances
from .moebius import DegenerateConjugateError, Moebius
from .normalform import NormalizationError, normalize
from .quadratic import InvalidSpectrumError, SpectrumD2, sigma_from_normalized, spectrum_to_normalized
from .ratmap import InvalidMapError, RationalMap, canonicalize, fixed_points
from .sampling import SplitMix64, random_canonical_map
from .strata import DecompositionError, decompose, locus_residual, stratum_dims

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_INVALID = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# serialization -------------------------------------------------------------


def _real(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise CliError(EXIT_NUMERIC, f"non-finite value {x} in output")
    return x


def encode_complex(z) -> list[float]:
    z = complex(z)
    return [_real(z.real), _real(z.imag)]


def decode_complex(v, where: str) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if (
        isinstance(v, list)
        and len(v) == 2
        and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)
    ):
        return complex(v[0], v[1])
    raise CliError(EXIT_INVALID, f"{where}: expected [re, im], got {v!r}")


def map_to_document(r: RationalMap) -> dict:
    d = r.degree
    return {
        "degree": d,
        "num": [encode_complex(r.a(k)) for k in range(d + 1)],
        "den": [encode_complex(r.b(k)) for k in range(d + 1)],
    }


def document_to_map(doc, tol: Tolerances = DEFAULT_TOLERANCES, degree_check: int | None = None) -> RationalMap:
    if not isinstance(doc, dict):
        raise CliError(EXIT_INVALID, "map document must be a JSON object")
    for key in ("degree", "num", "den"):
        if key not in doc:
            raise CliError(EXIT_INVALID, f"map document is missing {key!r}")
    d = doc["degree"]
    if not isinstance(d, int) or isinstance(d, bool):
        raise CliError(EXIT_INVALID, "invalid map (degree): 'degree' must be an integer")
    if degree_check is not None and d != degree_check:
        raise CliError(EXIT_INVALID, f"invalid map (degree): expected degree {degree_check}, got {d}")
    for key in ("num", "den"):
        if not isinstance(doc[key], list):
            raise CliError(EXIT_INVALID, f"{key!r} must be a list of [re, im] pairs")
    num = Poly([decode_complex(v, f"num[{i}]") for i, v in enumerate(doc["num"])])
    den = Poly([decode_complex(v, f"den[{i}]") for i, v in enumerate(doc["den"])])
    if den.degree != d:
        raise CliError(
            EXIT_INVALID, f"invalid map (degree): denominator has degree {den.degree}, document says {d}"
        )
    try:
        return RationalMap(num, den, tol=tol)
    except InvalidMapError as exc:
        raise CliError(EXIT_INVALID, f"invalid map ({exc.invariant}): {exc}") from exc


def _moebius_doc(t: Moebius) -> dict:
    return {k: encode_complex(getattr(t, k)) for k in "abcd"}


def analyze_map(r: RationalMap, tol: Tolerances = DEFAULT_TOLERANCES) -> dict:
    """Everything the package computes about one map, as a JSON-ready dict."""
    try:
        canon, t0 = canonicalize(r.num, r.den, tol)
        trace = normalize(canon, tol)
        fps = fixed_points(canon, tol)
        dp = decompose(canon, tol)
    except NormalizationError as exc:
        detail = "; ".join(f"{z}: {why}" for z, why in exc.attempts)
        raise CliError(EXIT_NUMERIC, f"normalization failed: {exc} [{detail}]") from exc
    except RootFindingError as exc:
        raise CliError(EXIT_NUMERIC, f"root finding failed: {exc} (residuals {exc.residuals})") from exc
    except (DecompositionError, DegenerateConjugateError, InvalidMapError) as exc:
        raise CliError(EXIT_NUMERIC, f"numerical failure: {exc}") from exc

    d = canon.degree
    parts = list(fps.overlap_type())
    sigma = None
    if d == 2:
        norm = trace.result
        sigma = [encode_complex(s) for s in sigma_from_normalized(norm.a(2), norm.a(1))]
    return {
        "degree": d,
        "canonical": map_to_document(canon),
        "canonicalizer": _moebius_doc(t0),
        "normalized": map_to_document(trace.result),
        "conjugator": _moebius_doc(trace.conjugator),
        "normalizing_fixed_point": encode_complex(trace.chosen_fixed_point),
        "overlap_type": parts,
        "fixed_points": [
            {
                "location": encode_complex(fp.location),
                "multiplicity": fp.multiplicity,
                "multiplier": encode_complex(fp.multiplier),
                "index": None if fp.index is None else encode_complex(fp.index),
            }
            for fp in fps
        ],
        "decomposition": [
            {"zeta": encode_complex(pt.zeta), "alphas": [encode_complex(a) for a in pt.alphas]}
            for pt in dp.points
        ],
        "sigma": sigma,
        "locus_residual": encode_complex(locus_residual(canon)),
        "stratum_dims": list(stratum_dims(parts, d)),
    }


# I/O ----------------------------------------------------------------------


def _dumps(doc) -> str:
    return json.dumps(doc, allow_nan=False)


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc}") from exc


@contextmanager
def _output(path: str | None, newline=None):
    if path is None or path == "-":
        yield sys.stdout
        return
    try:
        fh = open(path, "w", encoding="utf-8", newline=newline)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc}") from exc
    with fh:
        yield fh


def _parse_json(text: str, where: str = "input"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_INVALID, f"{where}: malformed JSON: {exc}") from exc


def _tolerances(args) -> Tolerances:
    try:
        return Tolerances(
            root_refine=DEFAULT_TOLERANCES.root_refine,
            cluster_radius=args.tol_cluster,
            zero_test=args.tol_zero,
        )
    except ValueError as exc:
        raise CliError(EXIT_INVALID, f"bad tolerance: {exc}") from exc


def _parse_complex(s: str) -> complex:
    s = s.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(s)
    except ValueError as exc:
        raise CliError(EXIT_INVALID, f"cannot parse {s!r} as a complex number") from exc


# commands -----------------------------------------------------------------


def cmd_analyze(args) -> int:
    tol = _tolerances(args)
    r = document_to_map(_parse_json(_read_text(args.inp)), tol, args.degree_check)
    doc = analyze_map(r, tol)
    with _output(args.out) as fh:
        fh.write(_dumps(doc) + "\n")
    return EXIT_OK


def cmd_from_spectrum(args) -> int:
    parts = args.spectrum.split(",")
    if len(parts) != 3:
        raise CliError(EXIT_INVALID, "--spectrum takes three comma-separated multipliers")
    s = SpectrumD2(*(_parse_complex(x) for x in parts))
    try:
        r = spectrum_to_normalized(s)
    except InvalidSpectrumError as exc:
        raise CliError(EXIT_INVALID, str(exc)) from exc
    except (RuntimeError, RootFindingError) as exc:
        raise CliError(EXIT_NUMERIC, str(exc)) from exc
    with _output(args.out) as fh:
        fh.write(_dumps(map_to_document(r)) + "\n")
    return EXIT_OK


def _batch_line(lineno: int, line: str, tol: Tolerances, degree_check) -> tuple[str, bool]:
    try:
        r = document_to_map(_parse_json(line, f"line {lineno}"), tol, degree_check)
        return _dumps(analyze_map(r, tol)), True
    except CliError as exc:
        kind = "invalid_input" if exc.code == EXIT_INVALID else "numerical_failure"
        record = {"line": lineno, "error": {"kind": kind, "exit_code": exc.code, "message": str(exc)}}
        return _dumps(record), False


def cmd_batch(args) -> int:
    tol = _tolerances(args)
    text = _read_text(args.path if args.path is not None else args.inp)
    ok = True
    with _output(args.out) as fh:
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            out, good = _batch_line(lineno, line, tol, args.degree_check)
            ok &= good
            fh.write(out + "\n")
    return EXIT_OK if ok else EXIT_PARTIAL


CSV_HEADER = ["re", "im", "multiplicity", "mult_re", "mult_im", "index_re", "index_im"]


def fixed_points_csv(r: RationalMap, tol: Tolerances = DEFAULT_TOLERANCES) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    try:
        fps = fixed_points(r, tol)
    except RootFindingError as exc:
        raise CliError(EXIT_NUMERIC, f"root finding failed: {exc}") from exc
    for fp in fps:
        idx = ["", ""] if fp.index is None else [repr(fp.index.real), repr(fp.index.imag)]
        z, m = complex(fp.location), complex(fp.multiplier)
        w.writerow([repr(z.real), repr(z.imag), fp.multiplicity, repr(m.real), repr(m.imag), *idx])
    return buf.getvalue()


def cmd_fixed_points_csv(args) -> int:
    tol = _tolerances(args)
    r = document_to_map(_parse_json(_read_text(args.inp)), tol, args.degree_check)
    text = fixed_points_csv(r, tol)
    with _output(args.out, newline="") as fh:
        fh.write(text)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.degree < 2:
        raise CliError(EXIT_INVALID, "--degree must be at least 2")
    if args.count < 0:
        raise CliError(EXIT_INVALID, "--count must be non-negative")
    tol = _tolerances(args)
    rng = SplitMix64(args.seed)
    with _output(args.out) as fh:
        for _ in range(args.count):
            fh.write(_dumps(map_to_document(random_canonical_map(args.degree, rng, tol))) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-cluster", type=float, default=DEFAULT_TOLERANCES.cluster_radius,
                        help="root clustering radius (relative)")
    common.add_argument("--tol-zero", type=float, default=DEFAULT_TOLERANCES.zero_test,
                        help="threshold for treating a quantity as zero")
    common.add_argument("--degree-check", type=int, default=None, metavar="D",
                        help="reject input maps whose degree is not D")
    common.add_argument("--in", dest="inp", default=None, metavar="PATH", help="input file (default stdin)")
    common.add_argument("--out", default=None, metavar="PATH", help="output file (default stdout)")

    parser = argparse.ArgumentParser(
        prog="ratmoduli", description="Normal forms and fixed-point data of complex rational maps."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full analysis of one map document")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("from-spectrum", parents=[common], help="normalized quadratic map with given multipliers")
    p.add_argument("--spectrum", required=True, help="three multipliers, e.g. 1,1,1 or 0.5+1j,2,-1j")
    p.set_defaults(func=cmd_from_spectrum)

    p = sub.add_parser("batch", parents=[common], help="analyze newline-delimited map documents")
    p.add_argument("path", nargs="?", default=None, help="NDJSON file (default: --in or stdin)")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("fixed-points-csv", parents=[common], help="fixed points of one map as CSV")
    p.set_defaults(func=cmd_fixed_points_csv)

    p = sub.add_parser("gen", parents=[common], help="seeded random canonical maps (SplitMix64)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        return args.func(args)
    except CliError as exc:
        print(f"ratmoduli: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
