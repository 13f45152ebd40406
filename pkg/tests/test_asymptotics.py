import cmath
import math
from fractions import Fraction

import pytest
import scipy.special
from hypothesis import given, strategies as st

from crankmoments.asymptotics import (
    RADEMACHER_SCALE,
    alpha_coeff,
    asymptotic_terms,
    bessel_I_half,
    check_multiplier_identity,
    check_shift_lemma,
    check_transformations,
    comparison_csv,
    comparison_rows,
    dedekind_sum,
    eta_numeric,
    kloosterman_A,
    leading_order,
    main_term,
    multiplier,
    theta_numeric,
    untwisted_leading,
)
from crankmoments.formulas import moment_series

SQRT2 = math.sqrt(2)
GAMMA_QUARTER = math.gamma(0.25)


@pytest.fixture(scope="module")
def twisted():
    return {ell: moment_series(ell, -1, 600) for ell in (0, 1, 2)}


def gamma_half(nu_plus_one):
    # Gamma(1/2 + j) as sqrt(pi) times an exact rational, for any integer j
    j = int(nu_plus_one - Fraction(1, 2))
    if j >= 0:
        r = Fraction(math.factorial(2 * j), 4**j * math.factorial(j))
    else:
        m = -j
        r = Fraction((-4) ** m * math.factorial(m), math.factorial(2 * m))
    return math.sqrt(math.pi) * float(r)


def bessel_series(nu, y, terms=120):
    total = 0.0
    for m in range(terms):
        total += (y / 2) ** (2 * m + float(nu)) / (math.factorial(m) * gamma_half(m + nu + 1))
    return total


def brute_dedekind(h, k):
    def saw(x):
        return 0 if x == int(x) else x - math.floor(x) - Fraction(1, 2)

    return sum((saw(Fraction(r, k)) * saw(Fraction(h * r, k)) for r in range(1, k)), Fraction(0))


def theta_product(u, tau, terms=80):
    q = cmath.exp(2j * math.pi * tau)
    x = cmath.exp(2j * math.pi * u)
    p = -2 * cmath.sin(math.pi * u) * cmath.exp(2j * math.pi * tau / 8)
    for n in range(1, terms):
        qn = q**n
        p *= (1 - qn) * (1 - x * qn) * (1 - qn / x)
    return p


def test_dedekind_examples():
    assert dedekind_sum(1, 2) == 0
    assert dedekind_sum(1, 3) == Fraction(1, 18)
    assert dedekind_sum(1, 1) == 0
    with pytest.raises(ValueError):
        dedekind_sum(2, 4)


@given(st.integers(1, 40), st.integers(-60, 60))
def test_dedekind_matches_definition(k, h):
    if math.gcd(h, k) != 1:
        return
    s = dedekind_sum(h, k)
    assert s == brute_dedekind(h, k)
    assert s == (k - 1) * (k - 2) / Fraction(12 * k) if h % k == 1 else True


@given(st.integers(1, 30), st.integers(1, 30))
def test_dedekind_reciprocity(h, k):
    if math.gcd(h, k) != 1:
        return
    lhs = dedekind_sum(h, k) + dedekind_sum(k, h)
    assert lhs == Fraction(-1, 4) + Fraction(h * h + k * k + 1, 12 * h * k)


def test_multiplier_examples():
    m = multiplier(0, 1)
    assert m.omega == 1
    assert abs(m.chi - cmath.exp(-1j * math.pi / 4)) < 1e-15
    assert abs(multiplier(1, 2).omega - 1) < 1e-15
    assert abs(abs(multiplier(1, 5).chi) - 1) < 1e-12
    with pytest.raises(ValueError):
        multiplier(2, 4)


@pytest.mark.parametrize("k", range(1, 13))
def test_multiplier_unit_modulus(k):
    for h in range(k):
        if math.gcd(h, k) == 1:
            md = multiplier(h, k)
            assert abs(abs(md.omega) - 1) < 1e-12
            assert abs(abs(md.chi) - 1) < 1e-12
            assert (-h * md.h_inv) % k == 1 % k


def test_kloosterman_examples():
    assert kloosterman_A(1, 0) == pytest.approx(SQRT2, abs=1e-12)
    assert kloosterman_A(2, 0) == pytest.approx(SQRT2, abs=1e-12)
    kloosterman_A(3, 7)  # raises if the imaginary part is not negligible


def test_kloosterman_direct_sum_for_a2():
    xs = [1, 7, 17, 23, 25, 31, 41, 47]
    chi = {1: 1, 7: -1, 17: -1, 23: 1, 25: 1, 31: -1, 41: -1, 47: 1}
    direct = math.sqrt(2 / 24) * sum(chi[x] * cmath.exp(2j * math.pi * x / 24) for x in xs)
    assert abs(direct.imag) < 1e-12
    assert kloosterman_A(2, 0) == pytest.approx(direct.real, abs=1e-12)


def test_kloosterman_a1_constant():
    assert all(abs(kloosterman_A(1, n) - SQRT2) < 1e-12 for n in range(101))


def test_kloosterman_real_on_grid():
    for k in range(1, 21):
        for n in range(0, 201, 7):
            kloosterman_A(k, n)


def test_kloosterman_rejects_k0():
    with pytest.raises(ValueError):
        kloosterman_A(0, 1)


def test_alpha_examples():
    assert alpha_coeff(0, 0, 0) == 1
    assert alpha_coeff(0, 1, 0) == Fraction(1, 4)
    assert alpha_coeff(0, 0, 1) == Fraction(-1, 2)
    assert alpha_coeff(1, 0, 0) == Fraction(1, 4)


def test_bessel_examples():
    assert bessel_I_half(0.5, 2) == pytest.approx(math.sinh(2) / math.sqrt(math.pi), rel=1e-14)
    assert bessel_I_half(0.5, 2) == pytest.approx(2.04624, abs=1e-5)
    assert bessel_I_half(-0.5, 1) == pytest.approx(math.sqrt(2 / math.pi) * math.cosh(1), rel=1e-14)
    y = 50.0
    assert bessel_I_half(0.5, y) / (math.exp(y) / math.sqrt(2 * math.pi * y)) == pytest.approx(
        1 - math.exp(-2 * y), rel=1e-10
    )


def test_bessel_errors():
    with pytest.raises(ValueError):
        bessel_I_half(0.5, 0)
    with pytest.raises(ValueError):
        bessel_I_half(1.5, 1)
    with pytest.raises(ValueError):
        bessel_I_half(0.25, 1)


@pytest.mark.parametrize("nu", [Fraction(1, 2), Fraction(-1, 2), Fraction(-3, 2), Fraction(-5, 2)])
@pytest.mark.parametrize("y", [0.5, 5.0, 20.0])
def test_bessel_matches_ascending_series(nu, y):
    got = bessel_I_half(nu, y)
    assert abs(got - bessel_series(nu, y)) <= 1e-10 * abs(got)
    assert got == pytest.approx(scipy.special.iv(float(nu), y), rel=1e-12)


@pytest.mark.parametrize("j", range(0, 9))
def test_bessel_deep_orders_vs_scipy(j):
    for y in (3.0, 30.0, 200.0):
        assert bessel_I_half(0.5 - j, y) == pytest.approx(scipy.special.iv(0.5 - j, y), rel=1e-10)


def test_eta_values():
    assert eta_numeric(1j) == pytest.approx(GAMMA_QUARTER / (2 * math.pi**0.75), abs=1e-14)
    assert abs(eta_numeric(1j) - 0.7682254) < 1e-7
    assert eta_numeric(2j) == pytest.approx(GAMMA_QUARTER / (2**1.375 * math.pi**0.75), abs=1e-14)
    assert abs(eta_numeric(2j) - 0.5923820) < 1e-6
    assert abs(eta_numeric(1 + 1j) - cmath.exp(1j * math.pi / 12) * eta_numeric(1j)) < 1e-14
    with pytest.raises(ValueError):
        eta_numeric(0.5 + 0j)


def test_theta_half_closed_form():
    closed = -GAMMA_QUARTER / (2**0.75 * math.pi**0.75)
    value = theta_numeric(0.5, 1j)
    assert abs(value.imag) < 1e-15
    assert value.real == pytest.approx(closed, abs=1e-13)
    assert value == pytest.approx(-2 * eta_numeric(2j) ** 2 / eta_numeric(1j), abs=1e-13)


@pytest.mark.parametrize("tau", [1j, 0.3 + 0.5j, -0.7 + 0.2j])
def test_theta_odd_and_antiperiodic(tau):
    assert abs(theta_numeric(0, tau)) < 1e-13
    for u in (0.1, 0.2 + 0.3j, -0.4 + 0.1j):
        assert abs(theta_numeric(u + 1, tau) + theta_numeric(u, tau)) < 1e-12
        assert abs(theta_numeric(-u, tau) + theta_numeric(u, tau)) < 1e-12


@pytest.mark.parametrize("u,tau", [(0.1, 1j), (0.3 + 0.2j, 0.2 + 0.8j), (0.45 - 0.1j, -0.5 + 0.6j)])
def test_theta_sum_equals_product(u, tau):
    assert abs(theta_numeric(u, tau) - theta_product(u, tau)) < 1e-12


@pytest.mark.parametrize(
    "h,k,z,u", [(0, 1, 1, 0.1 + 0.2j), (1, 2, 0.8, 0.13j), (2, 5, 1.1, 0.07)]
)
def test_transformation_examples(h, k, z, u):
    r = check_transformations(h, k, z, u)
    assert r["eta_deviation"] < 1e-10
    assert r["theta_deviation"] < 1e-10


def test_transformation_grid():
    worst = 0.0
    for k in range(1, 13):
        for h in range(k):
            if math.gcd(h, k) != 1:
                continue
            for z in (0.5, 0.8, 1.3):
                for u in (0, 0.1, 0.1 + 0.2j):
                    worst = max(worst, check_transformations(h, k, z, u)["max_deviation"])
    assert worst < 1e-9


def test_shift_lemma():
    assert check_shift_lemma(0.2, 1j, 0)["deviation"] == 0
    assert check_shift_lemma(0.2, 1j, 1)["deviation"] < 1e-10
    assert check_shift_lemma(0.1 + 0.1j, 0.3 + 0.9j, 3)["deviation"] < 1e-9


@given(
    st.complex_numbers(max_magnitude=0.6),
    st.floats(-1, 1),
    st.floats(0.3, 1.5),
    st.integers(-3, 3),
)
def test_shift_lemma_random(a, b_re, b_im, ell):
    assert check_shift_lemma(a, complex(b_re, b_im), ell)["deviation"] < 1e-9


@pytest.mark.parametrize("c,n", [(1, 0), (2, 3), (4, 10)])
def test_multiplier_identity_examples(c, n):
    r = check_multiplier_identity(c, n)
    assert r["deviation"] < 1e-8


def test_multiplier_identity_literal_lhs():
    assert check_multiplier_identity(1, 0, literal=True)["lhs"] == pytest.approx(SQRT2, abs=1e-12)


def test_multiplier_identity_grid():
    assert max(check_multiplier_identity(c, n)["deviation"] for c in range(1, 7) for n in range(21)) < 1e-8


def test_literal_normalization_off_by_sqrt2():
    for c in range(1, 7):
        for n in range(21):
            r = check_multiplier_identity(c, n, literal=True)
            if r["ratio"] is not None:
                assert r["ratio"] == pytest.approx(SQRT2, rel=1e-9)
    assert RADEMACHER_SCALE * SQRT2 == pytest.approx(1.0)


def test_main_term_smoke(twisted):
    assert math.isfinite(main_term(0, 1))
    assert main_term(0, 1) == 0  # no k in 1..floor(1/2)
    assert math.isfinite(main_term(0, 1, K=1))
    with pytest.raises(ValueError):
        main_term(0, 0)
    with pytest.raises(ValueError):
        main_term(0, 5, form="other")
    exact = int(twisted[0][50])
    assert abs(main_term(0, 50, 3) - exact) / abs(exact) < 0.1


def test_term_signs():
    signs = [t.sign for t in asymptotic_terms(0, 400, 8)]
    assert signs == [1, -1, -1, 1, 1, -1, -1, 1]


@pytest.mark.parametrize("ell", [0, 1, 2])
def test_relative_error_decreases(ell, twisted):
    errs = []
    for n in (150, 300, 600):
        exact = int(twisted[ell][n])
        errs.append(abs(main_term(ell, n) - exact) / abs(exact))
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-9


def test_rescaled_form_still_converges(twisted):
    errs = []
    for n in (150, 300, 600):
        exact = int(twisted[1][n])
        errs.append(abs(main_term(1, n, form="rescaled") - exact) / abs(exact))
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 0.05


def test_printed_form_overshoots_by_sqrt2(twisted):
    exact = int(twisted[0][600])
    assert main_term(0, 600, form="printed") / exact == pytest.approx(SQRT2, rel=1e-6)


def test_main_term_parity(twisted):
    for ell in (0, 1, 2):
        for n in range(100, 201):
            v = main_term(ell, n)
            assert (v > 0) == (n % 2 == 0)
            assert (int(twisted[ell][n]) > 0) == (n % 2 == 0)


def test_leading_order_basics(twisted):
    assert leading_order(0, 7) < 0
    assert leading_order(1, 8) == pytest.approx(2**0 * 3 * 8**0.5 * math.exp(math.pi * math.sqrt(8 / 6)))
    r = [int(twisted[1][n]) / leading_order(1, n) for n in (200, 600)]
    assert abs(r[1] - 1) < abs(r[0] - 1)


def test_untwisted_leading_basics():
    assert untwisted_leading(1, 1) == pytest.approx(math.sqrt(3) / 6 * math.exp(math.pi * math.sqrt(2 / 3)))
    assert all(untwisted_leading(ell, n) > 0 for ell in (1, 2, 3) for n in (1, 10, 100))
    with pytest.raises(ValueError):
        untwisted_leading(0, 5)


def test_comparison_csv(twisted):
    rows = comparison_rows(1, [150, 300, 600], exact=[int(c) for c in twisted[1].coeffs])
    text = comparison_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "n,ell,exact,main_term,leading_order,rel_err_main,rel_err_leading"
    assert lines[1].split(",")[2] == str(int(twisted[1][150]))
    mains = [float(line.split(",")[3]) for line in lines[1:]]
    assert mains == [r["main_term"] for r in rows]
    errs = [r["rel_err_main"] for r in rows]
    assert errs[0] > errs[1] > errs[2]
    with pytest.raises(ValueError):
        comparison_rows(1, [0])
