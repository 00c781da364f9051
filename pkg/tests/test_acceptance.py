"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion lines.
Criterion 8's dataset-dependent residual check runs only when the environment
variable SPECMOM_DATASET points to a maass-v1 file whose completeness window
covers [T - 8M, T + 8M]; without it the transform/Eisenstein oracles run
standalone, as specified.
"""

import math
import os
import time
from contextlib import contextmanager

import numpy as np
import pytest

from specmom.arith import _unit_tables, gcd3, kloosterman, tau
from specmom.cli import main as cli_main, synthetic_dataset
from specmom.dirichlet_poly import SmoothingContext, lambda_x
from specmom.arith import von_mangoldt
from specmom.maass_data import parse_dataset, serialize_dataset
from specmom.moments import general_term_tally, hecke_power_coeffs
from specmom.specfun import (
    bessel_i_real,
    bessel_k_asymptotic,
    bessel_k_imag_scaled,
    bessel_k_real,
)
from specmom.trace import GaussianWindow, eisenstein_term, trace_report, transform_H, transform_Hpm
from specmom.zeta_clt import count_zeros, s_direct_argument, s_of_t, selberg_moment, hardy_z


@contextmanager
def criterion(num: int, label: str):
    t0 = time.time()
    try:
        yield
    except BaseException:
        print(f"[criterion {num}] FAIL - {label} ({time.time() - t0:.1f}s)")
        raise
    print(f"[criterion {num}] PASS - {label} ({time.time() - t0:.1f}s)")


def test_c1_kloosterman_oracle_equivalence():
    with criterion(1, "Kloosterman oracle equivalence, c <= 500, |m|,|n| <= 20"):
        t0 = time.time()
        ms = np.arange(-20, 21)
        for c in range(1, 501):
            units, invs = _unit_tables(c)
            # direct O(c) complex-exponential oracle, all pairs at once
            eu = np.exp(2j * np.pi * np.outer(ms, units) / c)
            ev = np.exp(2j * np.pi * np.outer(ms, invs) / c)
            oracle = (eu @ ev.T).real
            sq = math.sqrt(c)
            tc = tau(c)
            for i, m in enumerate(ms):
                for j in range(i, len(ms)):
                    n = int(ms[j])
                    lib = kloosterman(int(m), n, c)
                    assert abs(lib - oracle[i, j]) <= 1e-9
                    assert abs(lib - oracle[j, i]) <= 1e-9
                    assert abs(lib) <= math.sqrt(gcd3(int(m), n, c)) * sq * tc + 1e-9
        elapsed = time.time() - t0
        assert elapsed < 30.0, f"runtime {elapsed:.1f}s exceeds 30s"


def test_c2_bessel_identity_suite():
    with criterion(2, "Bessel identities, cross-method agreement, decay grid"):
        t0 = time.time()
        # K-Bessel connection identity between independent I-series and
        # K-quadrature paths
        for nu in (0.1, 0.2, 0.3, 0.45):
            for x in (0.5, 1.0, 5.0):
                lhs = bessel_k_real(nu, x)
                rhs = (math.pi / 2.0) * (
                    bessel_i_real(-nu, x) - bessel_i_real(nu, x)
                ) / math.sin(math.pi * nu)
                assert abs(lhs - rhs) <= 1e-9 * abs(rhs)
        # cross-method agreement on t in [20, 120], x <= t/4; relative to the
        # local envelope where the oscillation passes through zero
        for ti in range(20, 121, 5):
            t = float(ti)
            for frac in (0.05, 0.1, 0.2, 0.25):
                x = t * frac
                ser = bessel_k_imag_scaled(t, x).value
                asym = bessel_k_asymptotic(t, x).value
                envelope = math.sqrt(2.0 * math.pi) / (4.0 * t * t - x * x) ** 0.25
                assert abs(ser - asym) <= 1e-4 * max(abs(ser), 0.1 * envelope)
        # decay grid
        for t in (1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0):
            for x in (1.0, 2.0, 5.0, 10.0):
                assert abs(bessel_k_imag_scaled(t, x).value) * t ** (1 / 3) <= 10.0
        elapsed = time.time() - t0
        assert elapsed < 60.0, f"runtime {elapsed:.1f}s exceeds 60s"


def test_c3_gaussian_transform_identity():
    with criterion(3, "transform_H(100, 10) against 2 sqrt(pi) T M / (8 pi^2)"):
        target = 2.0 * math.sqrt(math.pi) * 1000.0 / (8.0 * math.pi**2)
        got = transform_H(GaussianWindow(T=100.0, M=10.0))
        assert abs(got - target) <= 1e-6 * target


def test_c4_lambda_x_suite():
    with criterion(4, "Lambda_x breakpoints, bounds to 1e6, Mellin spot check"):
        # bounds on every prime power up to 1e6 for each x
        for x in (4.0, 10.0, 100.0):
            ctx = SmoothingContext.build(x) if x == 100.0 else None
            if ctx is None:
                # small cutoffs: enumerate directly
                limit = int(x**3)
                for n in range(1, limit + 1):
                    lam = von_mangoldt(n)
                    if lam:
                        w = lambda_x(n, x)
                        assert 0.0 <= w <= lam + 1e-15
            else:
                for n, _, _ in ctx.prime_powers:
                    w = ctx.weights[n]
                    assert 0.0 <= w <= von_mangoldt(n) + 1e-15
        # breakpoint continuity at prime powers nearest x, x^2, x^3
        for x, n, frac in [
            (4.0, 4, 1.0), (4.0, 16, 0.5), (4.0, 64, 0.0),
            (10.0, 11, 1.0), (10.0, 101, 0.5), (10.0, 997, 0.0),
            (100.0, 101, 1.0), (100.0, 10007, 0.5), (100.0, 999983, 0.0),
        ]:
            lam = von_mangoldt(n)
            assert abs(lambda_x(n, x) - frac * lam) <= 10.0 * lam / math.log(x)
        # Mellin discontinuous integral on Re s = 2
        A, npts = 4000.0, 2**21
        tau_ = np.linspace(-A, A, npts + 1)
        s = 2.0 + 1j * tau_
        for y, expect in ((2.0, math.log(2.0) ** 2 / 2), (10.0, math.log(10.0) ** 2 / 2),
                          (0.5, 0.0)):
            integrand = np.exp(s * math.log(y)) / s**3
            h = tau_[1] - tau_[0]
            val = h / 3.0 * (integrand[0] + integrand[-1] + 4 * integrand[1:-1:2].sum()
                             + 2 * integrand[2:-1:2].sum())
            assert abs(float((val / (2 * math.pi)).real) - expect) <= 1e-6


def test_c5_hecke_suite():
    with criterion(5, "Hecke relation on 20 random systems; C(p^m) vs Satake"):
        import random

        from specmom.arith import primes_up_to
        from specmom.hecke import HeckeSystem, cj_coefficient, cj_from_satake

        plist = primes_up_to(10**4)
        for seed in range(20):
            rng = random.Random(seed)
            sys_ = HeckeSystem(prime_values={p: rng.uniform(-2.0, 2.0) for p in plist})
            ext = sys_.extend(10**4)
            for m in range(1, 101):
                lam_m = ext[m]
                for n in range(m, 101):
                    g = math.gcd(m, n)
                    rhs = sum(ext[m * n // (d * d)] for d in range(1, g + 1) if g % d == 0)
                    assert abs(lam_m * ext[n] - rhs) < 1e-9
        for seed in (101, 102):
            rng = random.Random(seed)
            sys_ = HeckeSystem(prime_values={p: rng.uniform(-2.5, 2.5) for p in (2, 3, 5)})
            for p in (2, 3, 5):
                for m in range(1, 13):
                    assert abs(cj_coefficient(sys_, p, m) - cj_from_satake(sys_, p, m)) < 1e-10


def test_c6_moment_combinatorics():
    with criterion(6, "case tally against the diagonal closed form; Case I zero diagonal"):
        for primes in ([2, 3], [2, 3, 5], [2, 3, 5, 7]):
            for n in (2, 4, 6):
                tally = general_term_tally(primes, n)
                m = n // 2
                es = [1.0] + [0.0] * m
                for p in primes:
                    for k in range(m, 0, -1):
                        es[k] += es[k - 1] / p
                closed = math.factorial(n) / (2.0 * math.pi) ** n * es[m]
                assert abs(tally.case_iv_coefficient - closed) <= 1e-12
        # every Case I exponent vector has zero lambda(1) component
        from specmom.moments import _classify, _compositions

        for primes in ([2, 3], [2, 3, 5]):
            r = len(primes)
            for n in (1, 2, 3, 4, 5, 6):
                for comp in _compositions(n, 2 * r):
                    mv, nv = comp[0::2], comp[1::2]
                    if _classify(mv, nv) == "I":
                        diag = 1
                        for a, b in zip(mv, nv):
                            diag *= hecke_power_coeffs(a + b)[0]
                        assert diag == 0


def test_c7_zeta_ground_truth():
    with criterion(7, "zero counts, argument-route agreement, moment band"):
        t0 = time.time()
        assert count_zeros(100.0) == 29
        assert count_zeros(1000.0) == 649
        # counting route vs argument-tracking route at 20 sample points
        import random

        rng = random.Random(4)
        checked = 0
        while checked < 20:
            t = rng.uniform(30.0, 600.0)
            if abs(hardy_z(t)) < 0.05:
                continue  # stay clear of zeros per the sampling contract
            assert abs(s_of_t(t) - s_direct_argument(t)) <= 0.02
            checked += 1
        # second-moment band at T = 5e4
        rep = selberg_moment(5.0e4, 1, grid_step=0.05)
        ratio = rep.empirical / rep.predicted
        assert 0.4 <= ratio <= 2.5, f"ratio {ratio:.3f} outside [0.4, 2.5]"
        elapsed = time.time() - t0
        assert elapsed < 600.0, f"runtime {elapsed:.1f}s exceeds 10 min"


def test_c8_trace_residual_or_standalone_oracles():
    path = os.environ.get("SPECMOM_DATASET", "")
    if path:
        with criterion(8, f"trace residual on dataset {path}"):
            with open(path, encoding="utf-8") as fh:
                ds = parse_dataset(fh.read())
            lo, hi = ds.completeness_window
            T = 0.5 * (lo + hi)
            M = min(max(1.0, (hi - lo) / 20.0), T / 2.0)
            window = GaussianWindow(T=T, M=M)
            rep = trace_report(ds, window, 1, 1, c_max=30)
            budget = rep.tail_bound + rep.spectral_truncation_bound + 1e-2 * abs(rep.delta_term)
            assert abs(rep.residual) <= budget, (
                f"residual {rep.residual:.6g} exceeds budget {budget:.6g}"
            )
        return
    with criterion(8, "standalone transform/Eisenstein oracles (no dataset supplied)"):
        w = GaussianWindow(T=5.0, M=1.0)
        a, b = transform_H(w), transform_H(w, rule="simpson")
        assert abs(a - b) <= 1e-6 * abs(a)
        for kind in ("plus", "minus"):
            for x in (1.0, 4.0 * math.pi):
                g = transform_Hpm(kind, w, x)
                s = transform_Hpm(kind, w, x, rule="simpson")
                assert abs(g - s) <= 1e-6 * max(abs(g), 1e-10)
        t_cut = w.T + 8.0 * w.M
        for m, n in ((1, 1), (2, 3)):
            eg = eisenstein_term(w, m, n, t_cut)
            es = eisenstein_term(w, m, n, t_cut, rule="simpson")
            assert abs(eg.value - es.value) <= 1e-6 * max(abs(eg.value), 1e-10)


def test_c9_cli_determinism(tmp_path):
    with criterion(9, "byte-identical CLI reruns for every subcommand"):
        ds = synthetic_dataset(5, 6.0, 1.0, n_forms=12)
        dsfile = tmp_path / "synth.maass"
        dsfile.write_text(serialize_dataset(ds))
        invocations = [
            ["kloosterman", "--m", "1", "--n", "2", "--c-max", "30"],
            ["bessel", "--t", "0,1,20", "--x", "0.5,5"],
            ["trace-check", "--dataset", str(dsfile), "--T", "6", "--M", "1",
             "--c-max", "3"],
            ["orthogonality", "--seed", "7", "--T", "20", "--M", "2", "--mn-max", "2"],
            ["moments", "--seed", "7", "--T", "20", "--M", "2", "--t", "1.0",
             "--x", "4", "--n-max", "2"],
            ["zeta-moments", "--T", "1000", "--n", "1", "--grid-step", "0.05"],
            ["ingest", "--dataset", str(dsfile)],
            ["tally", "--n", "4", "--primes", "2,3"],
        ]
        for k, argv in enumerate(invocations):
            outs = []
            for rep in range(2):
                out = tmp_path / f"out_{k}_{rep}.csv"
                code = cli_main(argv + ["--out", str(out)])
                assert code == 0, f"{argv} exited {code}"
                outs.append(out.read_bytes())
            assert outs[0] == outs[1], f"non-deterministic output for {argv}"
