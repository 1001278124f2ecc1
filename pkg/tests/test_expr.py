import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lapsumudu.errors import DomainError
from lapsumudu.expr import (COS, ONE, SIN, TAU, XI, ZERO, Expr, NonlinearitySpec, adomian,
                            add, d_dtau, d_dxi, eval_canonical, evaluate, mul)
from lapsumudu.numeric import fd_conformable

from conftest import class_exprs, small_q

sin_x = Expr.term(1, trigx=(SIN, 1))
cos_x = Expr.term(1, trigx=(COS, 1))
e_mtau = Expr.term(1, ay=-1)


def pointwise_close(a, b, points=20, tol=1e-12, seed=0):
    rng = np.random.default_rng(seed)
    xi = rng.uniform(0.01, 3, points)
    tau = rng.uniform(0.01, 3, points)
    va, vb = eval_canonical(a, xi, tau), eval_canonical(b, xi, tau)
    return np.allclose(va, vb, rtol=tol, atol=tol)


def _magnitude(e, xi, tau):
    return sum(np.abs(eval_canonical(Expr({k: c}), xi, tau)) for k, c in e.items())


# ---------------------------------------------------------------- canonical form

def test_zero_coefficients_dropped():
    assert (sin_x - sin_x).is_zero()
    assert (sin_x - sin_x) == ZERO
    assert len(Expr.term(0, px=3)) == 0


def test_like_terms_merge():
    e = Expr.term(2, px=1) + Expr.term(Fraction(1, 2), px=1)
    assert e == Expr.term(Fraction(5, 2), px=1)
    assert len(e) == 1


def test_negative_frequency_normalized():
    assert Expr.term(1, trigx=(SIN, -2)) == -Expr.term(1, trigx=(SIN, 2))
    assert Expr.term(1, trigy=(COS, -3)) == Expr.term(1, trigy=(COS, 3))


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        Expr.term(0.5)


def test_add_examples():
    assert add(e_mtau * sin_x, ZERO) == mul(e_mtau, sin_x)
    assert add(TAU ** 2, XI * TAU) == Expr.term(1, py=2) + Expr.term(1, px=1, py=1)
    assert add(sin_x, sin_x.scale(-1)) == ZERO


def test_mul_examples():
    assert mul(sin_x, cos_x) == Expr.term(Fraction(1, 2), trigx=(SIN, 2))
    lhs = mul(mul(e_mtau, sin_x), mul(e_mtau, cos_x))
    assert lhs == Expr.term(Fraction(1, 2), ay=-2, trigx=(SIN, 2))
    assert pointwise_close(lhs, Expr.term(1, ay=-1, trigx=(SIN, 1)) * Expr.term(1, ay=-1, trigx=(COS, 1)))
    u = ONE - Expr.term(1, py=1, ax=1)
    got = mul(u, Expr.term(-1, py=1, ax=1))
    assert got == Expr.term(-1, py=1, ax=1) + Expr.term(1, py=2, ax=2)


def test_sin_squared():
    assert sin_x ** 2 == Expr.const(Fraction(1, 2)) - Expr.term(Fraction(1, 2), trigx=(COS, 2))


# ---------------------------------------------------------------- ring laws

exprs = class_exprs(max_terms=6, max_power=2)


@given(exprs, exprs)
def test_commutative(a, b):
    assert a + b == b + a
    assert a * b == b * a


@given(exprs, exprs, exprs)
def test_associative(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)


@given(exprs, exprs, exprs)
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(exprs, exprs, st.integers(0, 2**32 - 1))
def test_pointwise_product(a, b, seed):
    rng = np.random.default_rng(seed)
    xi, tau = rng.uniform(0.01, 3, 20), rng.uniform(0.01, 3, 20)
    ab = mul(a, b)
    lhs = eval_canonical(ab, xi, tau)
    rhs = eval_canonical(a, xi, tau) * eval_canonical(b, xi, tau)
    # relative to term magnitudes on both sides, since the sums may cancel
    scale = _magnitude(a, xi, tau) * _magnitude(b, xi, tau) + _magnitude(ab, xi, tau)
    assert np.all(np.abs(lhs - rhs) <= 1e-12 * scale)


@given(exprs)
def test_zero_detection(e):
    d = e - e
    assert d.is_zero()
    if not e.is_zero():
        xi = np.linspace(0.1, 3, 41)
        tau = np.linspace(0.2, 2.5, 41)
        g1, g2 = np.meshgrid(xi, tau)
        assert np.max(np.abs(eval_canonical(e, g1, g2))) > 0


# ---------------------------------------------------------------- derivatives

def test_derivative_examples():
    d, e = Fraction(2, 3), Fraction(-1, 2)
    expo = Expr.term(1, ax=d, ay=e)
    assert d_dxi(expo) == expo.scale(d)
    assert d_dxi(Expr.term(1, px=4, py=3)) == Expr.term(4, px=3, py=3)
    ss = Expr.term(1, trigx=(SIN, 1), trigy=(SIN, 1))
    assert d_dxi(ss) == Expr.term(1, trigx=(COS, 1), trigy=(SIN, 1))
    assert d_dtau(ss) == Expr.term(1, trigx=(SIN, 1), trigy=(COS, 1))


def test_derivative_order_zero_is_identity():
    e = Expr.term(3, px=2, ax=1, trigy=(COS, 2))
    assert d_dxi(e, 0) == e
    assert d_dtau(e, 0) == e


@given(exprs, exprs, small_q, small_q)
def test_derivative_linearity(a, b, c, d):
    lhs = d_dxi(a.scale(c) + b.scale(d))
    assert lhs == d_dxi(a).scale(c) + d_dxi(b).scale(d)
    assert d_dtau(a.scale(c) + b.scale(d)) == d_dtau(a).scale(c) + d_dtau(b).scale(d)


@given(exprs, exprs)
def test_leibniz(a, b):
    assert d_dxi(a * b) == d_dxi(a) * b + a * d_dxi(b)


@given(exprs, st.integers(0, 2**32 - 1))
def test_conformable_finite_difference(e, seed):
    rng = random.Random(seed)
    for eta in (0.6, 0.8, 1.0):
        x, y = rng.uniform(0.5, 2), rng.uniform(0.5, 2)
        sym = evaluate(d_dxi(e), x, y, eta, 0.9)
        fd = fd_conformable(e, x, y, eta, 0.9, "x", 1e-5)
        assert abs(sym - fd) <= 1e-6 * max(1.0, abs(sym))
        sym = evaluate(d_dtau(e), x, y, 0.9, eta)
        fd = fd_conformable(e, x, y, 0.9, eta, "y", 1e-5)
        assert abs(sym - fd) <= 1e-6 * max(1.0, abs(sym))


# ---------------------------------------------------------------- evaluation

def test_eval_examples():
    e = mul(e_mtau, sin_x)
    assert evaluate(e, 1, 0.1) == pytest.approx(0.761394, abs=1e-6)
    assert evaluate(e, 1, 0.1, 0.8, 0.8) == pytest.approx(0.778431, abs=1e-4)
    assert evaluate(ZERO, 0.7, 1.3, 0.5, 0.5) == 0


def test_eval_at_origin_with_fractional_order():
    assert evaluate(XI, 0, 1, 0.5, 1) == 0.0


def test_eval_domain_errors():
    with pytest.raises(DomainError):
        evaluate(XI, -1, 1)
    with pytest.raises(DomainError):
        evaluate(XI, 1, 1, eta=0)
    with pytest.raises(DomainError):
        evaluate(XI, 1, 1, gamma=1.5)


def test_eval_vectorized():
    out = evaluate(XI * TAU, np.array([1.0, 2.0]), np.array([3.0, 4.0]))
    assert np.allclose(out, [3.0, 8.0])


def test_canonical_substitution():
    x, y, eta, gamma = 1.7, 0.4, 0.7, 0.6
    got = evaluate(XI ** 2 * TAU, x, y, eta, gamma)
    assert got == pytest.approx((x**eta / eta) ** 2 * y**gamma / gamma, rel=1e-14)


# ---------------------------------------------------------------- Adomian

def _lambda_coefficient(nonlin, comps, i):
    """Coefficient of lambda^i in N[sum_j lambda^j psi_j] by exact interpolation."""
    deg = 2 * (len(comps) - 1)
    nodes = [Fraction(k) for k in range(deg + 1)]
    values = []
    for lam in nodes:
        psi = ZERO
        for j, c in enumerate(comps):
            psi = psi + c.scale(lam ** j)
        values.append(nonlin(psi))
    # solve the Vandermonde system V a = values for the monomial coefficients
    n = len(nodes)
    rows = [[lam ** k for k in range(n)] + [values[r]] for r, lam in enumerate(nodes)]
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [x / p for x in rows[col][:n]] + [rows[col][n].scale(1 / p)]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = ([a - f * b for a, b in zip(rows[r][:n], rows[col][:n])]
                           + [rows[r][n] - rows[col][n].scale(f)])
    return rows[i][n]


specs = st.builds(NonlinearitySpec, coeff=small_q.filter(bool),
                  outer_dx=st.integers(0, 1), outer_dy=st.integers(0, 1),
                  left_dx=st.integers(0, 1), left_dy=st.integers(0, 1),
                  right_dx=st.integers(0, 1), right_dy=st.integers(0, 1))


@given(specs, st.lists(class_exprs(max_terms=2, max_power=2), min_size=5, max_size=5),
       st.integers(0, 4))
def test_adomian_matches_lambda_expansion(spec, comps, i):
    assert adomian(spec, comps, i) == _lambda_coefficient(spec, comps[: i + 1], i)


def test_adomian_examples():
    wave = NonlinearitySpec(outer_dy=1, right_dx=1)
    psi0 = mul(e_mtau, sin_x)
    assert adomian(wave, [psi0], 0) == Expr.term(-1, ay=-2, trigx=(SIN, 2))
    square = NonlinearitySpec()
    assert adomian(square, [Expr.term(1, px=2, py=2)], 0) == Expr.term(1, px=4, py=4)
    assert adomian(square, [psi0, ZERO], 1) == ZERO


def test_adomian_needs_components():
    with pytest.raises(ValueError):
        adomian(NonlinearitySpec(), [ONE], 1)


def test_adomian_without_nonlinearity():
    assert adomian(None, [ONE], 0) == ZERO
