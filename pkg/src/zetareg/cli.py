"""zetareg command line.

Every command writes either JSON or CSV to stdout (or --out).  Floats are
printed with 17 significant digits so output round-trips and two runs with
the same flags are byte-identical.  Errors go to stderr as a JSON object
and set the exit code: 2 parse, 3 domain, 4 numerical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

from . import curves, ffield, lfunc, primezeta, specreg, zetacurve
from .dirichlet import zeta_zero_scan
from .errors import DomainError, NearPole, NearSingularity, NumericalError, ParseError, ZetaRegError

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_NUMERICAL = 0, 2, 3, 4


# --- output --------------------------------------------------------------------


def fmt_float(x):
    if math.isnan(x) or math.isinf(x):
        return "null"
    return "%.17g" % (x + 0.0)  # folds -0.0 into 0


def to_json(obj):
    """Compact JSON with %.17g floats and insertion-ordered keys."""
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else fmt_float(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def emit_table(cfg, header, rows):
    if cfg.fmt == "csv":
        return to_csv(header, rows)
    return to_json([dict(zip(header, row)) for row in rows]) + "\n"


# --- config --------------------------------------------------------------------


@dataclass
class RunConfig:
    command: str
    subcommand: str | None = None
    curve: str | None = None
    s_values: list = field(default_factory=list)
    cutoff_d: int | None = None
    cutoff_k: int | None = None
    k_max: int = 200
    sigmas: tuple = (0.2, 0.1, 0.05, 0.02)
    fmt: str = "csv"
    out: str | None = None
    experimental: bool = False
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.fmt not in ("json", "csv"):
            raise ParseError(f"--format must be json or csv, got {self.fmt}")
        for name in ("cutoff_d", "cutoff_k"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ParseError(f"--{name.replace('_', '-')} must be positive")
        if self.k_max < 1:
            raise ParseError("--kmax must be positive")
        if any(not sg > 0 for sg in self.sigmas):
            raise ParseError("sigmas must be positive")


def parse_complex(text):
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ParseError(f"not a complex number: {text!r}") from None


def grid_points(re0, re1, im0, im1, step):
    """Rectangular grid, real part outer, imaginary part inner."""
    if not step > 0 or re1 < re0 or im1 < im0:
        raise ParseError("grid needs step > 0 and nonempty ranges")

    def axis(a, b):
        n = int(math.floor((b - a) / step + 1e-9))
        return [a + i * step for i in range(n + 1)]

    return [complex(x, y) for x in axis(re0, re1) for y in axis(im0, im1)]


def parse_sigmas(text):
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ParseError(f"bad sigma list: {text!r}") from None


# --- commands --------------------------------------------------------------------


def _need_curve(cfg):
    if not cfg.curve:
        raise ParseError("--curve is required")
    return curves.parse_curve(cfg.curve)


def _need_s(cfg):
    if not cfg.s_values:
        raise ParseError("give --s or --grid")
    return cfg.s_values


def _emit_grid(cfg, rows):
    return emit_table(cfg, ["re_s", "im_s", "re_val", "im_val", "status"], rows)


def _eval_rows(points, fn, flagged):
    rows = []
    for s in points:
        try:
            v = complex(fn(s))
            rows.append([s.real, s.imag, v.real, v.imag, "ok"])
        except flagged as exc:
            rows.append([s.real, s.imag, None, None, exc.code])
    return rows


def cmd_field_irr_count(cfg):
    q, n = cfg.options["q"], cfg.options["n"]
    ffield.prime_power(q)
    count = ffield.irreducible_count(q, n)
    if cfg.fmt == "csv":
        return to_csv(["q", "n", "count"], [[q, n, count]])
    return to_json({"q": q, "n": n, "count": count}) + "\n"


def cmd_curve_count(cfg):
    curve = _need_curve(cfg)
    rows = [[n, curves.count_points(curve, n)] for n in range(1, (cfg.options.get("nmax") or 5) + 1)]
    return emit_table(cfg, ["n", "N_n"], rows)


def cmd_lpoly(cfg):
    L = lfunc.lpoly_for_curve(_need_curve(cfg))
    return L.to_json() + "\n"


def cmd_zeta_eval(cfg):
    z = zetacurve.curve_zeta(_need_curve(cfg))
    return _emit_grid(cfg, _eval_rows(_need_s(cfg), lambda s: zetacurve.zeta_eval(z, s), NearPole))


def cmd_zeta_check_fe(cfg):
    z = zetacurve.curve_zeta(_need_curve(cfg))
    pts = zetacurve.fe_check_grid(z)
    res = zetacurve.max_fe_residual(z, pts)
    return to_json({
        "integer_symmetry": lfunc.check_functional_equation(z.L),
        "grid_points": len(pts),
        "max_rel_residual": res,
    }) + "\n"


def cmd_zeta_check_rh(cfg):
    L = lfunc.lpoly_for_curve(_need_curve(cfg))
    rep = lfunc.check_weil_rh(L, cfg.options.get("tol") or 1e-9)
    return to_json({"ok": rep.ok, "max_deviation": rep.max_deviation, "g": L.g, "q": L.q}) + "\n"


def cmd_zeta_zeros(cfg):
    t0, t1 = cfg.options["t_range"]
    if cfg.curve:
        z = zetacurve.curve_zeta(_need_curve(cfg))
        rows = [[s.real, s.imag] for s in zetacurve.zeta_zeros(z, (t0, t1))]
    else:
        rows = [[0.5, t] for t in zeta_zero_scan((t0, t1))]
    return emit_table(cfg, ["re_s", "im_s"], rows)


def _prime_zeta(cfg):
    return primezeta.prime_zeta_for_curve(_need_curve(cfg), n_max=cfg.options.get("nmax") or 30)


def cmd_primezeta_eval(cfg):
    pz = _prime_zeta(cfg)

    def fn(s):
        if s.real > 1 and cfg.cutoff_k is None:
            return primezeta.prime_zeta_direct(pz, s, cfg.cutoff_d)
        return primezeta.prime_zeta_mobius(pz, s, cfg.cutoff_k)

    return _emit_grid(cfg, _eval_rows(_need_s(cfg), fn, (NearSingularity, NumericalError)))


def cmd_primezeta_deriv(cfg):
    pz = _prime_zeta(cfg)
    fn = lambda s: primezeta.prime_zeta_derivative(pz, s, cfg.cutoff_k)  # noqa: E731
    return _emit_grid(cfg, _eval_rows(_need_s(cfg), fn, (NearSingularity, NumericalError)))


def cmd_singularities(cfg):
    sigma_min = cfg.options.get("sigma_min") or min(cfg.sigmas)
    t_range = cfg.options["t_range"]
    if cfg.curve:
        sl = primezeta.singularity_enumerate(_prime_zeta(cfg), sigma_min, t_range, cfg.k_max)
    else:
        sl = primezeta.rational_singularities(sigma_min, t_range, cfg.k_max)
    rows = [[e.s.real, e.s.imag, e.k, e.kind] for e in sl]
    return emit_table(cfg, ["re_s", "im_s", "k", "kind"], rows)


def cmd_boundary_report(cfg):
    t_range = cfg.options["t_range"]
    if cfg.curve:
        rep = primezeta.boundary_evidence_report(_prime_zeta(cfg), cfg.sigmas, t_range, cfg.k_max)
    else:
        rep = primezeta.rational_boundary_report(cfg.sigmas, t_range, cfg.k_max)
    rows = [[r.sigma, r.count, r.min_re, r.argmin_k] for r in rep.rows]
    return emit_table(cfg, ["sigma", "count", "min_re", "argmin_k"], rows)


def _spectrum(cfg):
    kind = cfg.options["spectrum"]
    if kind == "explicit":
        if not cfg.options.get("eigs"):
            raise ParseError("--eigs is required for an explicit spectrum")
        try:
            return specreg.parse_explicit(cfg.options["eigs"])
        except ValueError as exc:
            if isinstance(exc, DomainError):
                raise
            raise ParseError(f"bad --eigs: {exc}") from None
    if kind == "power":
        return specreg.PowerFamily(cfg.options.get("alpha") or 1.0)
    if kind == "circle":
        return specreg.CircleLaplacian()
    if kind == "curve-primes":
        return specreg.CurvePrimes(_prime_zeta(cfg))
    if kind == "rational-primes":
        return specreg.RationalPrimes()
    return specreg.ProgressionPrimes(cfg.options.get("m") or 4)


def cmd_regdet(cfg):
    spec = specreg.scaled(_spectrum(cfg), cfg.options.get("mu") or 1.0)
    kwargs = {"sigmas": cfg.sigmas} if cfg.options.get("sigmas_given") else {}
    return to_json(specreg.regularized_det(spec, **kwargs).to_dict()) + "\n"


def cmd_progression_eval(cfg):
    m = cfg.options["m"]
    fn = lambda s: primezeta.prime_zeta_progression(s, m, cfg.cutoff_k, experimental=cfg.experimental)  # noqa: E731
    return _emit_grid(cfg, _eval_rows(_need_s(cfg), fn, (NearSingularity, NumericalError)))


COMMANDS = {
    ("field", "irr-count"): cmd_field_irr_count,
    ("curve", "count"): cmd_curve_count,
    ("curve", "lpoly"): cmd_lpoly,
    ("zeta", "eval"): cmd_zeta_eval,
    ("zeta", "check-fe"): cmd_zeta_check_fe,
    ("zeta", "check-rh"): cmd_zeta_check_rh,
    ("zeta", "zeros"): cmd_zeta_zeros,
    ("primezeta", "eval"): cmd_primezeta_eval,
    ("primezeta", "deriv"): cmd_primezeta_deriv,
    ("primezeta", "singularities"): cmd_singularities,
    ("primezeta", "boundary-report"): cmd_boundary_report,
    ("regdet", None): cmd_regdet,
    ("progression", "eval"): cmd_progression_eval,
}


# --- argument parsing ------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _common(p, s=False, curve=False, fmt="csv"):
    p.add_argument("--format", dest="fmt", choices=("json", "csv"), default=fmt)
    p.add_argument("--out")
    if curve:
        p.add_argument("--curve")
        p.add_argument("--nmax", type=int)
    if s:
        p.add_argument("--s", action="append", default=[])
        p.add_argument("--grid", nargs=5, type=float, metavar=("RE0", "RE1", "IM0", "IM1", "STEP"))
        p.add_argument("--cutoff-d", type=int)
        p.add_argument("--cutoff-k", type=int)


def _lattice_flags(p):
    p.add_argument("--kmax", type=int, default=200)
    p.add_argument("--sigmas", default="0.2,0.1,0.05,0.02")
    p.add_argument("--t-range", nargs=2, type=float, default=(0.0, 0.0))


def build_parser():
    top = _Parser(prog="zetareg", description="Curve zeta functions, prime zeta functions, regularized determinants.")
    groups = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fld = groups.add_parser("field").add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    p = fld.add_parser("irr-count", help="number of monic irreducibles of degree n over F_q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _common(p, fmt="json")

    crv = groups.add_parser("curve").add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    p = crv.add_parser("count", help="point counts N_1..N_nmax by enumeration")
    _common(p, curve=True)
    p = crv.add_parser("lpoly", help="L-polynomial as JSON")
    _common(p, curve=True, fmt="json")

    zt = groups.add_parser("zeta").add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    _common(zt.add_parser("eval"), s=True, curve=True)
    _common(zt.add_parser("check-fe"), curve=True, fmt="json")
    p = zt.add_parser("check-rh")
    _common(p, curve=True, fmt="json")
    p.add_argument("--tol", type=float)
    p = zt.add_parser("zeros", help="zeros of a curve zeta, or of the Riemann zeta without --curve")
    _common(p, curve=True)
    p.add_argument("--t-range", nargs=2, type=float, default=(0.0, 60.0))

    pzp = groups.add_parser("primezeta").add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    _common(pzp.add_parser("eval"), s=True, curve=True)
    _common(pzp.add_parser("deriv"), s=True, curve=True)
    p = pzp.add_parser("singularities", help="rational primes without --curve")
    _common(p, curve=True)
    _lattice_flags(p)
    p.add_argument("--sigma-min", type=float)
    p = pzp.add_parser("boundary-report", help="rational primes without --curve")
    _common(p, curve=True, fmt="json")
    _lattice_flags(p)

    p = groups.add_parser("regdet", help="zeta-regularized determinant")
    _common(p, curve=True, fmt="json")
    p.add_argument(
        "--spectrum",
        required=True,
        choices=("explicit", "power", "circle", "curve-primes", "rational-primes", "progression-primes"),
    )
    p.add_argument("--eigs", help="comma list of eigenvalues, optional :multiplicity")
    p.add_argument("--alpha", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--mu", type=float)
    p.add_argument("--sigmas")

    prg = groups.add_parser("progression").add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    p = prg.add_parser("eval", help="sum of p^-s over primes p = 1 mod m")
    _common(p, s=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--experimental", action="store_true")
    return top


_BASE = {"command", "subcommand", "curve", "s", "grid", "cutoff_d", "cutoff_k", "kmax", "sigmas", "fmt", "out", "experimental"}


def config_from_args(ns):
    s_values = [parse_complex(t) for t in getattr(ns, "s", None) or []]
    if getattr(ns, "grid", None):
        s_values += grid_points(*ns.grid)
    options = {k: v for k, v in vars(ns).items() if k not in _BASE}
    sig_text = getattr(ns, "sigmas", None)
    options["sigmas_given"] = sig_text is not None
    kwargs = {}
    if sig_text is not None:
        kwargs["sigmas"] = parse_sigmas(sig_text)
    if getattr(ns, "kmax", None) is not None:
        kwargs["k_max"] = ns.kmax
    return RunConfig(
        command=ns.command,
        subcommand=getattr(ns, "subcommand", None),
        curve=getattr(ns, "curve", None),
        s_values=s_values,
        cutoff_d=getattr(ns, "cutoff_d", None),
        cutoff_k=getattr(ns, "cutoff_k", None),
        fmt=ns.fmt,
        out=ns.out,
        experimental=getattr(ns, "experimental", False),
        options=options,
        **kwargs,
    )


def run(cfg):
    return COMMANDS[(cfg.command, cfg.subcommand)](cfg)


def _error_payload(exc):
    payload = {"error": getattr(exc, "code", "domain_error"), "message": str(exc)}
    if getattr(exc, "witness", None) is not None:
        payload["witness"] = str(exc.witness)
    return payload


def exit_code_for(exc):
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, NumericalError):
        return EXIT_NUMERICAL
    return EXIT_DOMAIN


def main(argv=None):
    try:
        cfg = config_from_args(build_parser().parse_args(argv))
        text = run(cfg)
    except (ZetaRegError, ValueError, ArithmeticError) as exc:
        sys.stderr.write(to_json(_error_payload(exc)) + "\n")
        return exit_code_for(exc)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
