"""Command-line front end: ``polyknot {check,classify,path,densify,diagram,sample}``.

Knot files are JSON objects ``{"f": [...], "g": [...], "h": [...]}`` holding
coefficient strings in ascending degree (exact decimals such as ``"-19.1167"`` or
rationals ``"p/q"``), with optional ``"name"`` and ``"d"``.

Exit status: 0 on success, 1 when the answer is negative (non-embedding, failed
path validation), 2 on errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .diagram import determinant, gauss_code, jones, robust_diagram, writhe
from .errors import BadRange, DegreeCapError, NotInCd, ParseError, PolyKnotError
from .isotopy import (
    canonical_path_Pd,
    densify_report,
    reparam_path,
    retraction_path,
    shrink_isotopy,
    target_affine_path,
    validate_path,
)
from .knotspace import PolyMap3, classify, is_embedding, sign_class
from .polycore import UniPoly, as_fraction

# -- knot files -----------------------------------------------------------------


def default_d(phi: PolyMap3) -> int:
    df, dg, dh = phi.degree_sequence().as_tuple()
    return int(max(df + 2, dg + 1, dh, 2))


def _line_of(text: str, key: str) -> int | None:
    needle = f'"{key}"'
    for i, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return i
    return None


def _parse_coeffs(raw, key: str, text: str) -> UniPoly:
    line = _line_of(text, key)
    if not isinstance(raw, list) or not raw:
        raise ParseError("expected a non-empty array of coefficient strings", field=key, line=line)
    out = []
    for i, c in enumerate(raw):
        if not isinstance(c, str):
            raise ParseError(f"coefficient {i} is not a string", field=key, line=line)
        try:
            out.append(as_fraction(c.strip()))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"coefficient {i} ({c!r}) is not an exact decimal or p/q", field=key, line=line) from None
    return UniPoly(out)


def parse_knot_file(text: str) -> tuple[PolyMap3, int, str | None]:
    """Parse knot JSON into ``(phi, d, name)``; ``d`` defaults to the smallest admissible."""
    try:
        # keep JSON numbers as their decimal text so nothing passes through binary floats
        obj = json.loads(text, parse_float=str, parse_int=str)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(obj, dict):
        raise ParseError("top level must be a JSON object", line=1)
    for key in ("f", "g", "h"):
        if key not in obj:
            raise ParseError("missing component", field=key)
    phi = PolyMap3(*(_parse_coeffs(obj[k], k, text) for k in ("f", "g", "h")))
    name = obj.get("name")
    if "d" in obj:
        try:
            d = int(obj["d"])
        except (TypeError, ValueError):
            raise ParseError("d must be an integer", field="d", line=_line_of(text, "d")) from None
        if d < 2:
            raise ParseError("d must be at least 2", field="d", line=_line_of(text, "d"))
        df, dg, dh = phi.degree_sequence().as_tuple()
        if not (df <= d - 2 and dg <= d - 1 and dh <= d):
            raise DegreeCapError(f"degrees ({df}, {dg}, {dh}) exceed the caps ({d - 2}, {d - 1}, {d}) for d={d}")
    else:
        d = default_d(phi)
    return phi, d, name


def format_rational(x: Fraction) -> str:
    """Exact decimal when the denominator is ``2**a 5**b``, else ``p/q``."""
    x = Fraction(x)
    den, k2, k5 = x.denominator, 0, 0
    while den % 2 == 0:
        den //= 2
        k2 += 1
    while den % 5 == 0:
        den //= 5
        k5 += 1
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(k2, k5)
    if digits == 0:
        return str(x.numerator)
    scaled = abs(x.numerator) * 10**digits // x.denominator
    whole, frac = divmod(scaled, 10**digits)
    sign = "-" if x < 0 else ""
    return f"{sign}{whole}.{str(frac).rjust(digits, '0').rstrip('0')}"


def emit(phi: PolyMap3, d: int | None = None, name: str | None = None) -> str:
    """Knot JSON text that :func:`parse_knot_file` reads back coefficient-identically."""
    obj: dict = {}
    if name is not None:
        obj["name"] = name
    for key, p in zip("fgh", phi.components):
        obj[key] = [format_rational(c) for c in p.coeffs] or ["0"]
    if d is not None:
        obj["d"] = d
    return json.dumps(obj, indent=2) + "\n"


# -- curve samples ----------------------------------------------------------------


def sample_curve(phi: PolyMap3, t_min, t_max, n: int) -> list[tuple[float, float, float, float]]:
    """``n`` evenly spaced points ``(t, x, y, z)`` on ``[t_min, t_max]``."""
    t_min, t_max = as_fraction(t_min), as_fraction(t_max)
    if n < 2:
        raise BadRange("need at least two samples")
    if not t_min < t_max:
        raise BadRange("t_min must be below t_max")
    step = (t_max - t_min) / (n - 1)
    rows = []
    for k in range(n):
        t = float(t_min + k * step)
        rows.append((t, *phi.eval_float(t)))
    return rows


def write_csv(rows, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["t", "x", "y", "z"])
    for row in rows:
        w.writerow([repr(float(v)) for v in row])


# -- subcommands ---------------------------------------------------------------------


def _read_knot(path: str) -> tuple[PolyMap3, int, str | None]:
    with open(path, encoding="utf-8") as fh:
        return parse_knot_file(fh.read())


def _write_json(obj, out_path: str | None, stdout) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    stdout.write(text)


def _fractions(text: str | None, n: int, default) -> tuple:
    if text is None:
        return tuple(default)
    vals = tuple(as_fraction(v.strip()) for v in text.split(","))
    if len(vals) == 1 and n > 1:
        vals = vals * n
    if len(vals) != n:
        raise BadRange(f"expected {n} comma-separated values, got {len(vals)}")
    return vals


def cmd_check(args, stdout) -> int:
    phi, _, _ = _read_knot(args.file)
    res = is_embedding(phi)
    out = {"embedding": res.is_embedding}
    if res.witness is not None:
        out["witness"] = res.witness.refine(Fraction(1, 10**6)).to_dict()
    _write_json(out, None, stdout)
    return 0 if res.is_embedding else 1


def cmd_classify(args, stdout) -> int:
    phi, d, _ = _read_knot(args.file)
    d = args.d if args.d is not None else d
    m = classify(phi, d)
    out = m.to_dict()
    try:
        out["sign_class"] = list(sign_class(phi, d).as_tuple())
    except NotInCd:
        out["sign_class"] = None
    _write_json(out, None, stdout)
    return 0


def _build_path(args, phi: PolyMap3, d: int):
    kind = args.kind
    if kind == "shrink":
        return shrink_isotopy(phi)
    if kind == "retract":
        return retraction_path(phi, d)
    if kind == "reparam":
        (alpha,) = _fractions(args.alpha, 1, (Fraction(1),))
        (beta,) = _fractions(args.beta, 1, (Fraction(0),))
        return reparam_path(phi, alpha, beta)
    if kind == "affine":
        return target_affine_path(
            phi,
            _fractions(args.alpha, 3, (1, 1, 1)),
            _fractions(args.beta, 3, (0, 0, 0)),
            _fractions(args.gamma, 3, (0, 0, 0)),
        )
    return canonical_path_Pd(phi, d)


def cmd_path(args, stdout) -> int:
    phi, d, _ = _read_knot(args.file)
    path = _build_path(args, phi, d)
    report = validate_path(path, args.samples, d, args.require)
    out = {"path": path.describe(), "d": d, **report.to_dict()}
    _write_json(out, args.out, stdout)
    return 0 if report.ok else 1


def cmd_densify(args, stdout) -> int:
    phi, d, name = _read_knot(args.file)
    eps = as_fraction(args.eps)
    if eps <= 0:
        raise BadRange("eps must be positive")
    rep = densify_report(phi, d, eps)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(emit(rep.psi, d, name))
    m = classify(rep.psi, d)
    out = {
        "d": d,
        "eps": format_rational(eps),
        "rho_squared": format_rational(rep.rho_squared),
        "rho": float(rep.rho_squared) ** 0.5,
        "within_half_eps": rep.rho_squared <= (eps / 2) ** 2,
        "in_Q": m.in_Q,
        "out": args.out,
    }
    _write_json(out, None, stdout)
    return 0 if out["within_half_eps"] and m.in_Q else 1


def cmd_diagram(args, stdout) -> int:
    phi, _, _ = _read_knot(args.file)
    D = robust_diagram(phi, args.drop_axis)
    V = jones(D)
    out = {
        "crossings": D.n_crossings,
        "gauss_code": gauss_code(D),
        "writhe": writhe(D),
        "jones": str(V),
        "jones_terms": {str(e): c for e, c in sorted(V.terms.items())},
        "determinant": determinant(D),
    }
    _write_json(out, args.out, stdout)
    return 0


def cmd_sample(args, stdout) -> int:
    phi, _, _ = _read_knot(args.file)
    if args.s is not None:
        phi = shrink_isotopy(phi)(as_fraction(args.s))
    rows = sample_curve(phi, args.tmin, args.tmax, args.n)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        write_csv(rows, fh)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyknot", description="Exact tools for polynomial knots.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide whether the map is an embedding")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="membership in A_d, B_d, C_d, O_d, P_d, Q_d")
    p.add_argument("file")
    p.add_argument("--d", type=int)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("path", help="build and validate an isotopy path")
    p.add_argument("--kind", required=True, choices=["shrink", "retract", "reparam", "affine", "canonical-pd"])
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--require", choices=["O", "P", "Q"])
    p.add_argument("--alpha", help="reparam: one value; affine: one or three comma-separated values")
    p.add_argument("--beta", help="reparam: one value; affine: three comma-separated values")
    p.add_argument("--gamma", help="affine: three comma-separated values")
    p.add_argument("--out")
    p.add_argument("file")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("densify", help="perturb a map in C_d into Q_d")
    p.add_argument("--eps", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_densify)

    p = sub.add_parser("diagram", help="knot diagram invariants of a projection")
    p.add_argument("file")
    p.add_argument("--drop-axis", type=int, choices=[1, 2, 3], default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("sample", help="CSV samples t,x,y,z of the curve")
    p.add_argument("file")
    p.add_argument("--s", help="sample the shrink family at this parameter (1 = the knot itself)")
    p.add_argument("--tmin", default="-4")
    p.add_argument("--tmax", default="4")
    p.add_argument("--n", type=int, default=400)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample)
    return parser


def run_cli(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, stdout)
    except (PolyKnotError, OSError, ValueError) as exc:
        stderr.write(f"polyknot {args.command}: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run_cli())


__all__ = ["emit", "main", "parse_knot_file", "run_cli", "sample_curve"]
