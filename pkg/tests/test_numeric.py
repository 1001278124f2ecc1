
import numpy as np
import pytest
from hypothesis import given

from lapsumudu.errors import DomainError, NonConvergent, OutsideROC
from lapsumudu.expr import ONE, SIN, TAU, XI, ZERO, Expr, d_dxi, evaluate
from lapsumudu.numeric import (QuadratureConfig, fd_conformable, make_error_table,
                               quad_forward, surface)

from conftest import basis_terms, class_exprs

wave = Expr.term(1, ay=-1, trigx=(SIN, 1))


def test_quad_examples():
    assert quad_forward(ONE, 2, 0.5) == pytest.approx(0.5, rel=1e-9)
    ss = Expr.term(1, trigx=(SIN, 1), trigy=(SIN, 1))
    assert quad_forward(ss, 1, 1) == pytest.approx(0.25, rel=1e-9)
    assert quad_forward(XI ** 2 * TAU ** 2, 2, 0.5) == pytest.approx(0.125, rel=1e-9)


def test_quad_zero():
    assert quad_forward(ZERO, 1, 1) == 0.0


def test_quad_outside_roc():
    e = Expr.term(1, ax=1, ay=1)
    with pytest.raises(OutsideROC):
        quad_forward(e, 1, 0.5)
    with pytest.raises(OutsideROC):
        quad_forward(e, 2, 1)
    with pytest.raises(OutsideROC):
        quad_forward(e, 2, 0)


def test_quad_subdivision_limit():
    e = Expr.term(1, px=3, trigx=(SIN, 3))
    with pytest.raises(NonConvergent):
        quad_forward(e, 0.01, 0.5, QuadratureConfig(abs_tol=1e-14, rel_tol=1e-14,
                                                    max_subdivisions=1))


def test_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(abs_tol=0)
    with pytest.raises(ValueError):
        QuadratureConfig(max_subdivisions=0)


@given(basis_terms())
def test_quad_order_independent(e):
    a, b = e.rates()
    v, w = float(a) + 1.5, 1 / (max(float(b), 0.0) + 1.5)
    assert quad_forward(e, v, w, eta=0.5, gamma=0.5) == quad_forward(e, v, w, eta=1, gamma=1)


def test_fd_examples():
    for x, eta in [(0.7, 0.6), (1.3, 0.8), (2.0, 1.0)]:
        assert fd_conformable(XI, x, 1.0, eta, 1.0) == pytest.approx(1.0, abs=1e-8)
    sym = evaluate(d_dxi(wave), 1, 0.5, 0.8, 0.8)
    assert fd_conformable(wave, 1, 0.5, 0.8, 0.8) == pytest.approx(sym, abs=1e-6)
    assert abs(fd_conformable(Expr.const(7), 1, 1, 0.9, 0.9)) <= 1e-9


def test_fd_domain():
    with pytest.raises(DomainError):
        fd_conformable(XI, 0, 1, 1, 1)
    with pytest.raises(DomainError):
        fd_conformable(XI, 1e-6, 1, 1, 1, step=1e-5)
    with pytest.raises(DomainError):
        fd_conformable(XI, 1, 1, 1, 1, step=0)
    with pytest.raises(ValueError):
        fd_conformable(XI, 1, 1, 1, 1, direction="z")


@given(class_exprs(max_terms=3, max_power=2))
def test_fd_grid(e):
    grid = np.linspace(0.5, 2, 5)
    for eta in (0.6, 0.8, 1.0):
        d = d_dxi(e)
        for x in grid:
            for y in grid:
                sym = evaluate(d, x, y, eta, 1)
                fd = fd_conformable(e, x, y, eta, 1)
                assert abs(sym - fd) <= 1e-6 * max(1.0, abs(sym))


def test_error_table():
    rows = make_error_table(wave, wave, [1], [0.1, 0.2], [(0.8, 0.8), (1, 1)])
    assert [(r.y, r.eta) for r in rows] == [(0.1, 0.8), (0.2, 0.8), (0.1, 1.0), (0.2, 1.0)]
    first = rows[0]
    assert first.exact == pytest.approx(0.761394, abs=1e-6)
    assert first.cdlsmd == pytest.approx(0.778431, abs=1e-4)
    assert first.abs_error == pytest.approx(1.7037e-2, abs=1e-4)
    for r in rows:
        assert r.abs_error == abs(r.exact - r.cdlsmd)
    assert rows[2].abs_error == 0 and rows[3].abs_error == 0


def test_error_table_telegraph():
    e = Expr.term(1, ax=1, ay=-2)
    row, = make_error_table(e, e, [1], [0.1], [(0.9, 0.9)])
    assert row.exact == pytest.approx(2.22554, abs=1e-5)
    assert row.cdlsmd == pytest.approx(2.29642, abs=1e-3)
    assert row.abs_error == pytest.approx(7.08757e-2, abs=1e-3)


def test_surface():
    grid = surface(ZERO, (0, 1), (0, 1), 4)
    assert grid.shape == (16, 3)
    assert np.all(grid[:, 2] == 0)
    grid = surface(XI ** 2 * TAU ** 2, (0, 1), (0, 1), 3)
    assert grid[-1].tolist() == [1.0, 1.0, 1.0]
    grid = surface(wave, (0, 1), (0.1, 0.3), 3, 0.8, 0.8)
    assert grid[2, :2].tolist() == [1.0, 0.1]
    assert grid[2, 2] == pytest.approx(0.778431, abs=1e-4)


def test_surface_validation():
    with pytest.raises(ValueError):
        surface(ONE, (1, 0), (0, 1), 3)
    with pytest.raises(ValueError):
        surface(ONE, (0, 1), (0, 1), 1)
