"""Experiment driver.

Subcommands wire datasets, windows and parameters into the computational
modules and emit CSV (RFC-4180 style, comma separated, dot decimals, 15
significant digits).  Every report embeds the tool version and the full
parameter set as leading '#' lines, so identical invocations are
byte-identical.  Exit codes: 0 success, 1 validation error, 2 computational
error.
"""

import argparse
import math
import random
import sys

from . import __version__, errors
from .arith import weil_certify
from .maass_data import Dataset, MaassForm, parse_dataset, serialize_dataset, validate
from .hecke import HeckeSystem
from .moments import empirical_measure, general_term_tally, weighted_moment
from .specfun import bessel_k_asymptotic, bessel_k_imag_scaled, bessel_ji_imag
from .trace import GaussianWindow, orthogonality_estimate, trace_report
from .zeta_clt import selberg_moment


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.15g}"
    s = str(v)
    if "," in s or '"' in s:
        s = '"' + s.replace('"', '""') + '"'
    return s


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def _report(args, rows: list[list], header: list[str], extra: dict | None = None) -> str:
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out") and v is not None}
    lines = [f"# specmom {__version__}"]
    lines.append("# params: " + " ".join(f"{k}={_fmt(v)}" for k, v in params.items()))
    for k, v in (extra or {}).items():
        lines.append(f"# {k}={_fmt(v)}")
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_dataset(args) -> Dataset:
    if getattr(args, "dataset", None):
        with open(args.dataset, encoding="utf-8") as fh:
            return parse_dataset(fh.read())
    if getattr(args, "seed", None) is not None:
        # size the synthetic eigenvalue table to what the subcommand will ask for
        need = 64
        if getattr(args, "x", None) is not None:
            need = max(need, int(args.x**3) + 1)
        if getattr(args, "mn_max", None) is not None:
            need = max(need, args.mn_max)
        return synthetic_dataset(args.seed, args.T, args.M, prime_limit=need)
    raise ValueError("either --dataset or --seed is required")


def synthetic_dataset(
    seed: int, T: float, M: float, n_forms: int = 200, prime_limit: int = 64
) -> Dataset:
    """Deterministic synthetic dataset covering [T - 9M, T + 9M] (demo data;
    it does not satisfy the trace identity)."""
    from .arith import primes_up_to

    rng = random.Random(seed)
    lo = max(1.0, T - 9.0 * M)
    hi = T + 9.0 * M
    prime_list = primes_up_to(prime_limit)
    forms = []
    for _ in range(n_forms):
        tj = rng.uniform(lo, hi)
        ap = {p: rng.uniform(-1.8, 1.8) for p in prime_list}
        forms.append(
            MaassForm(tj=tj, nu1sq=rng.uniform(0.5, 1.5), hecke=HeckeSystem(prime_values=ap))
        )
    forms.sort(key=lambda f: f.tj)
    # the claimed-complete range extends to 0: there are no synthetic forms
    # below lo, so completeness down there is vacuous (and the weighted
    # estimators require coverage of [T - 8M, T + 8M])
    return Dataset(
        forms=forms,
        completeness_window=(max(0.0, T - 9.0 * M), hi),
        provenance=f"synthetic seed={seed}",
    )


# ---------------------------------------------------------------------------
# subcommand handlers


def cmd_kloosterman(args) -> None:
    rows = []
    for c in range(1, args.c_max + 1):
        r = weil_certify(args.m, args.n, c)
        rows.append([c, r.value, r.weil_bound, r.certified])
    _emit(_report(args, rows, ["c", "value", "weil_bound", "certified"]), args.out)


def cmd_bessel(args) -> None:
    ts = [float(v) for v in args.t.split(",")]
    xs = [float(v) for v in args.x.split(",")]
    rows = []
    for t in ts:
        for x in xs:
            k = bessel_k_imag_scaled(t, x)
            if t >= 10.0 and x < t / 2.0:
                a = bessel_k_asymptotic(t, x)
                asym, diff = a.value, abs(a.value - k.value)
            else:
                asym, diff = math.nan, math.nan
            j = bessel_ji_imag("J", t, x)
            rows.append([t, x, k.value, k.method, asym, diff, j.value.real, j.value.imag, j.method])
    _emit(
        _report(args, rows, ["t", "x", "k_scaled", "k_method", "k_asymptotic", "abs_diff", "j_re", "j_im", "j_method"]),
        args.out,
    )


def cmd_trace_check(args) -> None:
    ds = _load_dataset(args)
    window = GaussianWindow(T=args.T, M=args.M)
    rep = trace_report(ds, window, args.m, args.n, args.c_max, t_cut=args.t_cut)
    rows = [[
        args.m, args.n, rep.spectral, rep.eisenstein, rep.delta_term, rep.kloosterman_J,
        rep.kloosterman_K, rep.tail_bound, rep.spectral_truncation_bound, rep.residual,
    ]]
    _emit(
        _report(args, rows, [
            "m", "n", "spectral", "eisenstein", "delta_term", "kloosterman_J",
            "kloosterman_K", "tail_bound", "spectral_truncation_bound", "residual",
        ]),
        args.out,
    )


def cmd_orthogonality(args) -> None:
    ds = _load_dataset(args)
    rows = []
    for m in range(1, args.mn_max + 1):
        for n in range(1, args.mn_max + 1):
            r = orthogonality_estimate(ds, args.T, args.M, m, n)
            rows.append([m, n, r.empirical, r.predicted, r.discrepancy])
    _emit(_report(args, rows, ["m", "n", "empirical", "predicted", "discrepancy"]), args.out)


def cmd_moments(args) -> None:
    ds = _load_dataset(args)
    rows = []
    for n in range(0, args.n_max + 1):
        rep = weighted_moment(ds, args.T, args.M, args.t, args.x, n, proxy=args.proxy)
        ratio = rep.empirical / rep.predicted_main if rep.predicted_main else math.nan
        rows.append([n, rep.empirical, rep.predicted_main, ratio])
    meas = empirical_measure(ds, args.T, args.M, args.t, proxy=args.proxy, x=args.x)
    _emit(
        _report(args, rows, ["n", "empirical", "predicted_main", "ratio"],
                extra={"gaussian_distance": meas.gaussian_distance}),
        args.out,
    )
    if args.measure_out:
        mrows = [[s, w] for s, w in zip(meas.samples, meas.weights)]
        _emit(
            _report(args, mrows, ["sample", "weight"],
                    extra={"gaussian_distance": meas.gaussian_distance}),
            args.measure_out,
        )


def cmd_zeta_moments(args) -> None:
    rep = selberg_moment(args.T, args.n, args.grid_step)
    ratio = rep.empirical / rep.predicted if rep.predicted else math.nan
    rows = [[args.T, args.n, rep.empirical, rep.predicted, ratio]]
    extra = {"warning": rep.warning} if rep.warning else None
    _emit(_report(args, rows, ["T", "n", "empirical", "predicted", "ratio"], extra=extra), args.out)


def cmd_ingest(args) -> None:
    with open(args.dataset, encoding="utf-8") as fh:
        ds = parse_dataset(fh.read())
    rows = []
    for form in ds.forms:
        rep = validate(form)
        rows.append([form.tj, rep.coeff_limit, len(rep.violations), rep.ok,
                     ";".join(rep.violations)])
    _emit(_report(args, rows, ["tj", "coeff_limit", "n_violations", "ok", "violations"]), args.out)
    if args.canonical_out:
        with open(args.canonical_out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(serialize_dataset(ds))


def cmd_tally(args) -> None:
    primes = [int(p) for p in args.primes.split(",")]
    tally = general_term_tally(primes, args.n)
    rows = [[
        args.n, args.primes, tally.counts["I"], tally.counts["II"], tally.counts["III"],
        tally.counts["IV"], tally.total_tuples, tally.case_iv_coefficient,
    ]]
    _emit(
        _report(args, rows, ["n", "primes", "count_I", "count_II", "count_III", "count_IV",
                             "total", "case_iv_coefficient"]),
        args.out,
    )


# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="specmom", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("kloosterman", help="table of S(m,n;c) with Weil certification")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c-max", dest="c_max", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_kloosterman)

    p = sub.add_parser("bessel", help="cross-method K/J evaluation tables")
    p.add_argument("--t", default="0,1,5,20,50,100")
    p.add_argument("--x", default="0.5,1,5,10")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bessel)

    p = sub.add_parser("trace-check", help="trace-identity report for one (m,n)")
    p.add_argument("--dataset", required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--M", type=float, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--c-max", dest="c_max", type=int, default=20)
    p.add_argument("--t-cut", dest="t_cut", type=float, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_trace_check)

    p = sub.add_parser("orthogonality", help="pair-correlation comparison grid")
    p.add_argument("--dataset")
    p.add_argument("--seed", type=int, help="synthetic demo dataset (no --dataset)")
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--M", type=float, required=True)
    p.add_argument("--mn-max", dest="mn_max", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_orthogonality)

    p = sub.add_parser("moments", help="weighted moment grid and empirical measure")
    p.add_argument("--dataset")
    p.add_argument("--seed", type=int, help="synthetic demo dataset (no --dataset)")
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--M", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--n-max", dest="n_max", type=int, default=4)
    p.add_argument("--proxy", choices=["s_approx", "m_poly"], default="s_approx")
    p.add_argument("--out")
    p.add_argument("--measure-out", dest="measure_out")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("zeta-moments", help="argument-statistic moment experiment")
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid-step", dest="grid_step", type=float, default=0.05)
    p.add_argument("--out")
    p.set_defaults(func=cmd_zeta_moments)

    p = sub.add_parser("ingest", help="parse, validate, canonically re-serialize")
    p.add_argument("--dataset", required=True)
    p.add_argument("--canonical-out", dest="canonical_out")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("tally", help="case tally for the moment combinatorics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--primes", required=True, help="comma-separated primes, e.g. 2,3")
    p.add_argument("--out")
    p.set_defaults(func=cmd_tally)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        args.func(args)
    except (
        ValueError,
        OSError,
        errors.DatasetParseError,
        errors.IncompleteDataError,
        errors.CapacityError,
        errors.InsufficientCutoffError,
    ) as e:
        sys.stderr.write(f"error: {e}\n")
        return 1
    except (RuntimeError, ArithmeticError) as e:
        sys.stderr.write(f"computational error: {e}\n")
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
