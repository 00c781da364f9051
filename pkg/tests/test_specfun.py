import cmath
import math

import mpmath as mp
import numpy as np
import pytest

from specmom.specfun import (
    EULER_GAMMA,
    bessel_i_real,
    bessel_ji_imag,
    bessel_k_asymptotic,
    bessel_k_imag_scaled,
    bessel_k_real,
    digamma,
    jtilde_arr,
    ktilde_arr,
    log_gamma,
    phase_phi,
    zeta_em,
    zeta_em_arr,
    zeta_one_line,
    zeta_one_line_arr,
)

mp.mp.dps = 40


# ---------------------------------------------------------------------------
# log Gamma / digamma


def test_log_gamma_examples():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-14)
    assert log_gamma(0.5).real == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-13)
    z = complex(2.3, 1.1)
    assert abs(log_gamma(z + 1) - log_gamma(z) - cmath.log(z)) < 1e-13


def test_log_gamma_against_high_precision():
    for z in [0.5, 3.7, complex(0.25, 50.0), complex(-5.5, 0.4),
              complex(12.0, -80.0), complex(0.001, 0.001), complex(1.0, 100.0)]:
        ref = complex(mp.loggamma(z))
        got = log_gamma(z)
        assert abs(got - ref) <= 1e-12 * max(abs(ref), 1.0)


def test_log_gamma_exp_consistency():
    # |exp(log_gamma) - Gamma| relative error < 1e-12 for moderate z
    for z in [0.5, 2.0, complex(4.0, 3.0), complex(0.25, 20.0)]:
        ref = complex(mp.gamma(z))
        assert abs(cmath.exp(log_gamma(z)) - ref) <= 1e-12 * abs(ref)


def test_log_gamma_domain():
    with pytest.raises(ValueError):
        log_gamma(0.0)
    with pytest.raises(ValueError):
        log_gamma(-3.0)
    with pytest.raises(ValueError):
        log_gamma(-2.5)


def series_digamma(z: complex) -> complex:
    """Independent route: partial series plus midpoint-integral tail."""
    K = 300_000
    k = np.arange(1, K + 1, dtype=float)
    partial = np.sum(1.0 / k - 1.0 / (k - 1.0 + z))
    tail = np.log((K + 0.5 + z - 1.0) / (K + 0.5))  # integral of the summand
    return -EULER_GAMMA + partial + tail


def test_digamma_examples():
    assert digamma(1.0) == pytest.approx(-EULER_GAMMA, abs=1e-12)
    assert digamma(2.0) == pytest.approx(1.0 - EULER_GAMMA, abs=1e-12)
    # the log z - 1/(2z) asymptotic against the series route
    assert abs(digamma(10.0) - (math.log(10) - 0.05)) < 1e-3


def test_digamma_series_oracle():
    for z in [1.0, 2.0, 10.0, complex(3.0, 4.0), complex(0.5, 1.5)]:
        assert abs(digamma(z) - series_digamma(z)) < 1e-10


def test_digamma_domain():
    with pytest.raises(ValueError):
        digamma(-1.0)
    with pytest.raises(ValueError):
        digamma(complex(0.0, 2.0))


# ---------------------------------------------------------------------------
# zeta


def test_zeta_em_basel():
    # partial-sum oracle with integral tail
    N = 200_000
    oracle = float(np.sum(1.0 / np.arange(1, N + 1, dtype=float) ** 2)) + 1.0 / N
    assert zeta_em(2.0).real == pytest.approx(math.pi**2 / 6, rel=1e-12)
    assert zeta_em(2.0).real == pytest.approx(oracle, rel=1e-9)


def test_zeta_one_line_dirichlet_oracle():
    t = 1.0
    s = complex(1.0, 2.0 * t)
    N = 10**6
    n = np.arange(1, N + 1, dtype=float)
    partial = np.sum(np.exp(-s * np.log(n)))
    tail = N ** (1 - s) / (s - 1) - 0.5 * N ** (-s)  # Euler-Maclaurin tail correction
    oracle = partial + tail
    got = zeta_one_line(t)
    assert abs(got - oracle) <= 1e-9 * abs(oracle)


def test_zeta_one_line_domain():
    with pytest.raises(ValueError):
        zeta_one_line(0.0)
    with pytest.raises(ValueError):
        zeta_one_line(2.0e6)


def test_zeta_against_mpmath():
    for t in [0.5, 14.0, 300.0, 5000.0]:
        ref = complex(mp.zeta(mp.mpc(1, 2 * t)))
        assert abs(zeta_one_line(t) - ref) <= 1e-9 * abs(ref)


def test_zeta_arr_matches_scalar():
    ts = np.array([0.5, 3.0, 17.2, 150.0])
    arr = zeta_one_line_arr(ts)
    for i, t in enumerate(ts):
        assert abs(arr[i] - zeta_one_line(float(t))) <= 1e-10 * abs(arr[i])
    s = np.array([complex(2.0, 1.0), complex(0.5, 40.0)])
    arr2 = zeta_em_arr(s)
    for i in range(2):
        assert abs(arr2[i] - zeta_em(complex(s[i]))) <= 1e-9 * abs(arr2[i])


# ---------------------------------------------------------------------------
# J / I of imaginary order


def oracle_besselj(t: float, x: float) -> complex:
    """30-term ascending series at 50 digits (independent route)."""
    with mp.workdps(50):
        nu = 2j * mp.mpf(t)
        tot = mp.mpc(0)
        for k in range(30):
            tot += (-1) ** k * (mp.mpf(x) / 2) ** (nu + 2 * k) / (
                mp.factorial(k) * mp.gamma(nu + k + 1)
            )
        return complex(tot)


def test_bessel_j_small_x_limit():
    ev = bessel_ji_imag("J", 0.0, 1e-8)
    assert ev.value == pytest.approx(1.0, abs=1e-12)


def test_bessel_j_series_oracle():
    ev = bessel_ji_imag("J", 0.5, 1.0)
    assert abs(ev.value - oracle_besselj(0.5, 1.0)) < 1e-10
    assert ev.method == "series"


def test_bessel_j_conjugate_symmetry():
    plus = bessel_ji_imag("J", 0.7, 2.0).value
    minus = bessel_ji_imag("J", -0.7, 2.0).value
    assert minus == pytest.approx(plus.conjugate(), rel=1e-14)


def test_bessel_j_integral_route_on_large_x():
    # amplification pushes the series out; the chirp integral takes over
    ev = bessel_ji_imag("J", 2.0, 60.0)
    ref = complex(mp.besselj(4j, 60.0))
    assert ev.method == "integral"
    assert abs(ev.value - ref) <= 1e-8 * abs(ref)


def test_bessel_ji_domain():
    with pytest.raises(ValueError):
        bessel_ji_imag("J", 0.5, -1.0)
    with pytest.raises(ValueError):
        bessel_ji_imag("J", 201.0, 1.0)
    with pytest.raises(ValueError):
        bessel_ji_imag("Q", 0.5, 1.0)


def test_bessel_i_matches_mpmath():
    ev = bessel_ji_imag("I", 1.5, 2.0)
    ref = complex(mp.besseli(3j, 2.0))
    assert abs(ev.value - ref) <= 1e-12 * abs(ref)


# ---------------------------------------------------------------------------
# K of imaginary order


def oracle_k0_series(x: float) -> float:
    """Classic ascending series for K_0 (harmonic-number form)."""
    tot = -(math.log(x / 2.0) + EULER_GAMMA)
    term = 1.0
    i0 = 1.0
    h = 0.0
    acc = tot
    for k in range(1, 40):
        term *= (x * x / 4.0) / (k * k)
        h += 1.0 / k
        acc += term * (h - math.log(x / 2.0) - EULER_GAMMA)
        i0 += term
    return acc


def test_k_scaled_at_zero_order():
    ev = bessel_k_imag_scaled(0.0, 1.0)
    assert ev.value == pytest.approx(oracle_k0_series(1.0), rel=1e-9)
    assert ev.value == pytest.approx(0.42102443824070834, rel=1e-9)
    assert ev.method == "integral"


def test_k_real_half_order_closed_form():
    assert bessel_k_real(0.5, 1.0) == pytest.approx(
        math.sqrt(math.pi / 2.0) * math.exp(-1.0), rel=1e-11
    )


def test_k_cross_method_spot():
    ev = bessel_k_imag_scaled(50.0, 5.0)
    asym = bessel_k_asymptotic(50.0, 5.0)
    assert ev.method == "series"
    assert abs(ev.value - asym.value) <= 1e-4 * abs(ev.value)


def test_k_identity_real_order():
    # K_nu = (pi/2)(I_{-nu} - I_nu)/sin(pi nu) between independent paths
    for nu in (0.1, 0.2, 0.3, 0.45):
        for x in (0.5, 1.0, 5.0):
            lhs = bessel_k_real(nu, x)
            rhs = (math.pi / 2.0) * (bessel_i_real(-nu, x) - bessel_i_real(nu, x)) / math.sin(
                math.pi * nu
            )
            assert abs(lhs - rhs) <= 1e-9 * abs(rhs)


def test_k_decay_grid():
    for t in (1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0):
        for x in (1.0, 2.0, 5.0, 10.0):
            val = bessel_k_imag_scaled(t, x).value
            assert abs(val) * t ** (1.0 / 3.0) <= 10.0


def test_j_magnitude_grid():
    for t in (1.0, 2.0, 5.0, 20.0, 100.0):
        for x in (0.5, 1.0, 5.0, 12.0):
            scaled = jtilde_arr(np.array([t]), x)[0]
            assert abs(scaled) <= 10.0


def test_k_domain():
    with pytest.raises(ValueError):
        bessel_k_imag_scaled(1.0, 0.0)
    with pytest.raises(ValueError):
        bessel_k_imag_scaled(-1.0, 1.0)


def test_ktilde_arr_route_consistency():
    # batched evaluation equals scalar evaluation on both routes
    x = 2.0
    ts = np.array([0.0, 1.0, 3.0, 8.0, 20.0, 75.0])
    vals = ktilde_arr(ts, x)
    for i, t in enumerate(ts):
        assert vals[i] == pytest.approx(bessel_k_imag_scaled(float(t), x).value, rel=5e-13)


def test_ktilde_against_mpmath():
    for (t, x) in [(0.5, 0.3), (4.0, 1.0), (12.0, 2.0), (60.0, 10.0), (150.0, 20.0)]:
        ref = complex(mp.exp(mp.pi * t) * mp.besselk(2j * t, x)).real
        got = ktilde_arr(np.array([t]), x)[0]
        assert abs(got - ref) <= 1e-9 * max(abs(ref), 1e-6)


# ---------------------------------------------------------------------------
# uniform asymptotic


def test_phase_examples():
    assert phase_phi(3.0, 6.0) == pytest.approx(math.pi / 4.0, abs=1e-14)
    target = (
        math.pi / 4.0
        + 100.0 * math.acosh(100.0 / (4.0 * math.pi))
        - math.sqrt(1.0e4 - 16.0 * math.pi**2)
    )
    assert phase_phi(50.0, 4.0 * math.pi) == pytest.approx(target, rel=1e-14)
    assert target == pytest.approx(177.91, abs=0.01)


def test_phase_domain():
    with pytest.raises(ValueError):
        phase_phi(1.0, 3.0)
    with pytest.raises(ValueError):
        phase_phi(1.0, -1.0)


def test_asymptotic_domain():
    with pytest.raises(ValueError):
        bessel_k_asymptotic(5.0, 1.0)  # t < 10
    with pytest.raises(ValueError):
        bessel_k_asymptotic(20.0, 15.0)  # Y >= t/2


def test_asymptotic_est_error_field():
    ev = bessel_k_asymptotic(50.0, 5.0)
    assert ev.method == "asymptotic"
    assert ev.est_error == pytest.approx(5.0 / 50.0)
    ev2 = bessel_k_asymptotic(50.0, 5.0, err_const=2.0)
    assert ev2.est_error == pytest.approx(2.0 / 50.0)


def test_k_turning_wedge_rejected():
    # x ~ 2t: no double-precision route; inputs rejected rather than guessed
    with pytest.raises(ValueError, match="turning"):
        bessel_k_imag_scaled(50.0, 110.0)
    with pytest.raises(ValueError, match="turning"):
        ktilde_arr(np.array([10.0, 50.0]), 110.0)
    zeroed = ktilde_arr(np.array([10.0, 50.0]), 110.0, wedge="zero")
    assert zeroed[1] == 0.0 and zeroed[0] != 0.0


def test_k_deep_monotone_zone():
    # x well beyond 2t: the factored quadrature is perfectly conditioned
    ev = bessel_k_imag_scaled(20.0, 100.0)
    ref = complex(mp.exp(mp.pi * 20) * mp.besselk(40j, 100.0)).real
    assert ev.method == "integral"
    assert abs(ev.value - ref) <= 1e-9 * abs(ref)


def test_jtilde_large_x_patched():
    # element-wise integral-route patch where the series has cancelled away
    ts = np.array([2.0, 20.0, 60.0])
    vals = jtilde_arr(ts, 126.0)
    for i, t in enumerate(ts):
        ref = complex(mp.besselj(2j * t, 126.0) * mp.exp(-mp.pi * t))
        assert abs(vals[i] - ref) <= 1e-8 * abs(ref)
