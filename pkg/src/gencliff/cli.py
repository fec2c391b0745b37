"""Command-line front end: ``gencliff <verb> [options]``.

Input files are line-oriented ``key = value`` text::

    ring = GF(2)
    vars = x, y
    m = 1
    d = 2
    mode = ordered
    f[1] = y

``quadratic`` also accepts ``q = <form>`` and ``weyl`` reads ``gens = a, b``
plus entries ``psi[i,j] = <scalar>`` (1-based).  Exit status is 0 on success,
1 on a mathematical domain error and 2 on malformed input or usage.
"""

from __future__ import annotations

import argparse
import re
import sys
import warnings

from .clifford import (
    CliffordInput,
    comparison_check,
    gram_data,
    hypersurface_equation,
    kl_presentation,
    parse_presentation,
    psi_presentation,
    quadratic_presentation,
    weyl_presentation,
)
from .coeffs import make_ring
from .dg import derived_clifford_zero, homology_table
from .errors import DomainError, GencliffError, InputError, InputFormatError
from .freealg import EMPTY, Alphabet, PolyContext, XMode, format_poly
from .gbasis import DEFAULT_BOUND, is_member, normal_form, quotient_dimension

PROG = "gencliff"

_KEY_RE = re.compile(r"^(ring|vars|m|d|mode|q|gens|n)$|^f\[\s*(\d+)\s*\]$|^psi\[\s*(\d+)\s*,\s*(\d+)\s*\]$")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


class _Usage(Exception):
    pass


def read_input(text: str) -> dict:
    """Parse ``key = value`` lines into a raw dict (values stay text)."""
    data = {"f": {}, "psi": {}}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise InputFormatError(f"line {lineno}: expected 'key = value'")
        key, value = key.strip(), value.strip()
        match = _KEY_RE.match(key)
        if not match:
            raise InputFormatError(f"line {lineno}: unknown key {key!r}")
        if match.group(2):
            data["f"][int(match.group(2))] = value
        elif match.group(3):
            data["psi"][(int(match.group(3)), int(match.group(4)))] = value
        else:
            if key in data:
                raise InputFormatError(f"line {lineno}: duplicate key {key!r}")
            data[key] = value
    return data


def _int_field(data, key, default=None) -> int:
    if key not in data:
        if default is None:
            raise InputFormatError(f"missing key {key!r}")
        return default
    try:
        return int(data[key])
    except ValueError:
        raise InputFormatError(f"{key} must be an integer, got {data[key]!r}") from None


def _names(value):
    return tuple(v.strip() for v in value.split(",") if v.strip())


def _ring(data):
    if "ring" not in data:
        raise InputFormatError("missing key 'ring'")
    return make_ring(data["ring"])


def _mode(data, override):
    if override:
        return XMode.parse(override)
    return XMode.parse(data["mode"]) if "mode" in data else XMode.ORDERED


def clifford_input(data, mode_override=None) -> CliffordInput:
    ring = _ring(data)
    if "vars" not in data:
        raise InputFormatError("missing key 'vars'")
    d = _int_field(data, "d")
    m = _int_field(data, "m", 1)
    bad = [level for level in data["f"] if not 1 <= level <= d]
    if bad:
        raise InputFormatError(f"form index f[{bad[0]}] outside 1..{d}")
    forms = [data["f"].get(level, "0") for level in range(1, d + 1)]
    return CliffordInput(ring, _names(data["vars"]), m, d, forms, _mode(data, mode_override))


def quadratic_from(data):
    ring = _ring(data)
    if "vars" not in data:
        raise InputFormatError("missing key 'vars'")
    names = _names(data["vars"])
    text = data.get("q", data["f"].get(2, "0"))
    fctx = PolyContext(ring, EMPTY, Alphabet(names), XMode.COMMUTING)
    diag, polar = gram_data(fctx.parse(text))
    return quadratic_presentation(diag, polar, ring, names)


def weyl_from(data):
    ring = _ring(data)
    gens = _names(data["gens"]) if "gens" in data else None
    n = len(gens) if gens else _int_field(data, "n", max((max(k) for k in data["psi"]), default=0))
    if n < 1:
        raise InputFormatError("weyl input needs 'gens', 'n' or psi entries")
    psi = [[0] * n for _ in range(n)]
    for (i, j), value in data["psi"].items():
        if not (1 <= i <= n and 1 <= j <= n):
            raise InputFormatError(f"psi[{i},{j}] outside 1..{n}")
        try:
            psi[i - 1][j - 1] = ring.convert(value)
        except (ValueError, ZeroDivisionError):
            raise InputFormatError(f"psi[{i},{j}]: not a scalar: {value!r}") from None
    return weyl_presentation(psi, ring, gens)


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc.strerror}") from None


def build_presentation(verb, args):
    if getattr(args, "presentation", None):
        return parse_presentation(_read(args.presentation))
    if not args.input:
        raise InputFormatError("--input or --presentation is required")
    data = read_input(_read(args.input))
    if verb in ("kl", "psi"):
        inp = clifford_input(data, args.mode)
        return kl_presentation(inp) if verb == "kl" else psi_presentation(inp)
    if verb == "quadratic":
        return quadratic_from(data)
    if verb == "weyl":
        return weyl_from(data)
    raise InputFormatError(f"unknown construction {verb!r}")


def _emit(text, args, out):
    if getattr(args, "out", None):
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputFormatError(f"cannot write {args.out}: {exc.strerror}") from None
    else:
        out.write(text)


def _gb(args):
    pres = build_presentation(args.construction, args)
    return pres, pres.groebner(args.bound)


def _poly(args, pres):
    if args.poly is None:
        raise InputFormatError("--poly is required")
    return PolyContext(pres.ring, pres.generators).parse(args.poly)


def run_construct(args, out):
    _emit(build_presentation(args.verb, args).to_text(), args, out)


def run_compare(args, out):
    inp = clifford_input(read_input(_read(_need_input(args))), args.mode)
    _emit(comparison_check(inp, args.bound).to_text(), args, out)


def run_hypersurface(args, out):
    inp = clifford_input(read_input(_read(_need_input(args))), args.mode)
    _emit(hypersurface_equation(inp).to_text(), args, out)


def run_gb(args, out):
    _, gb = _gb(args)
    _emit(gb.export(), args, out)


def run_nf(args, out):
    pres, gb = _gb(args)
    _emit(format_poly(normal_form(_poly(args, pres), gb)) + "\n", args, out)


def run_member(args, out):
    pres, gb = _gb(args)
    _emit(f"{is_member(_poly(args, pres), gb)}\n", args, out)


def run_dim(args, out):
    _, gb = _gb(args)
    counts = quotient_dimension(gb, args.bound)
    lines = [f"{k} {c}" for k, c in enumerate(counts.counts)]
    lines.append(f"total {counts.total}")
    if not counts.exact:
        lines.append("upper-bound: basis not certified complete")
    _emit("\n".join(lines) + "\n", args, out)


def run_homology(args, out):
    ring = make_ring(args.ring)
    alg = derived_clifford_zero(args.d, ring)
    rows = ["h w rank"] + [f"{h} {w} {r}" for h, w, r in homology_table(alg, args.hmax, args.wmax)]
    _emit("\n".join(rows) + "\n", args, out)


def _need_input(args):
    if not args.input:
        raise InputFormatError("--input is required")
    return args.input


def _nonneg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description="Generalized Clifford algebra presentations.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(p, construction=False, poly=False):
        p.add_argument("--input", help="key = value input file")
        p.add_argument("--mode", choices=["ordered", "commuting"], help="override the file's mode")
        p.add_argument("--bound", type=_nonneg, default=DEFAULT_BOUND, help="degree bound")
        p.add_argument("--out", help="write the report to this path")
        if construction:
            p.add_argument("--construction", default="psi",
                           choices=["kl", "psi", "quadratic", "weyl"])
            p.add_argument("--presentation", help="presentation file instead of --input")
        if poly:
            p.add_argument("--poly", help="polynomial in the generators")

    for verb in ("kl", "psi", "quadratic", "weyl"):
        p = sub.add_parser(verb, help=f"{verb} presentation")
        common(p)
        p.set_defaults(func=run_construct)
    p = sub.add_parser("compare", help="compare the psi and kl ideals")
    common(p)
    p.set_defaults(func=run_compare)
    p = sub.add_parser("hypersurface", help="weighted hypersurface equation")
    common(p)
    p.set_defaults(func=run_hypersurface)
    for verb, func, poly, text in (
            ("gb", run_gb, False, "bounded Groebner basis"),
            ("nf", run_nf, True, "normal form of --poly"),
            ("member", run_member, True, "ideal membership of --poly"),
            ("dim", run_dim, False, "graded quotient dimensions")):
        p = sub.add_parser(verb, help=text)
        common(p, construction=True, poly=poly)
        p.set_defaults(func=func)
    p = sub.add_parser("homology", help="bigraded homology of the zero-form dg algebra")
    p.add_argument("--d", type=_nonneg, required=True)
    p.add_argument("--ring", default="QQ")
    p.add_argument("--hmax", type=_nonneg, default=1)
    p.add_argument("--wmax", type=_nonneg, default=4)
    p.add_argument("--out")
    p.set_defaults(func=run_homology)
    return parser


def _one_line(message) -> str:
    return " ".join(str(message).split())


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _Usage as exc:
        err.write(f"{PROG}: usage error: {_one_line(exc)}\n")
        return 2
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            args.func(args, out)
            code = 0
        except DomainError as exc:
            err.write(f"{PROG}: {type(exc).__name__}: {_one_line(exc)}\n")
            code = 1
        except (InputError, ValueError) as exc:
            err.write(f"{PROG}: {type(exc).__name__}: {_one_line(exc)}\n")
            code = 2
        except GencliffError as exc:
            err.write(f"{PROG}: {type(exc).__name__}: {_one_line(exc)}\n")
            code = 1
        except RecursionError:
            err.write(f"{PROG}: InputFormatError: input nested too deeply\n")
            code = 2
    for w in caught:
        err.write(f"{PROG}: warning: {_one_line(w.message)}\n")
    return code


def main(argv=None) -> int:
    sys.exit(run(argv))


__all__ = ["run", "main", "read_input", "clifford_input", "build_parser"]
