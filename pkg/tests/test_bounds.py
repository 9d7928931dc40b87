import time

import mpmath
import pytest

from linkage_lab.bounds import (
    add,
    evaluate,
    lit,
    m_bound,
    mul,
    omega_bound,
    power,
    render,
    t_bound,
    theta,
    theta_expr,
    untangle_bound,
)
from linkage_lab.surface import SurfaceSignature


def m_ref(k, n):
    return (4 * n + 1) * k * 3**n + 8 * k


def theta_ref(k, n):
    """Direct recursion with Python integers; only usable for n <= 1."""
    if n == 0:
        return k
    m = m_ref(k, n)
    return theta_ref(k + 4 * m * (2 * n + 1) ** (4 * n * m), n - 1) + 2 * k + n * k * 3**n


def test_m_values():
    assert m_bound(1, 1) == 23
    assert m_bound(0, 5) == 0
    # (4*2+1)*2*9 + 16
    assert m_bound(2, 2) == 178 == m_ref(2, 2)
    for k in range(5):
        for n in range(5):
            assert m_bound(k, n) == m_ref(k, n)


@pytest.mark.parametrize("k", range(11))
def test_theta_at_zero_is_identity(k):
    d = theta(k, 0)
    assert d.form == "exact" and d.exact == k


def test_theta_one_one():
    d = theta(1, 1)
    assert d.exact == 92 * 3**92 + 6 == theta_ref(1, 1)
    expected = mpmath.log10(92) + 92 * mpmath.log10(3)
    assert abs(d.log10_estimate - expected) / expected < 1e-6


def test_theta_matches_recursion_and_is_monotone():
    prev = -1
    for k in range(4):
        v = theta(k, 1).exact
        assert v == theta_ref(k, 1)
        assert v > prev
        prev = v
    for k in range(4):
        assert theta(k, 0).exact <= theta(k, 1).exact


def test_theta_one_two_is_a_tower():
    d = theta(1, 2)
    assert d.form == "tower" and d.exact is None
    assert mpmath.isfinite(d.log10_estimate)
    # independent estimate: inner argument K = 1 + 356*5^712, then
    # theta(K, 1) = 6K + 92K * 3^(92K); its log is about 92K*log10(3)
    K = 1 + 356 * mpmath.mpf(5) ** 712
    ref = mpmath.log10(92 * K) + 92 * K * mpmath.log10(3)
    assert abs(d.log10_estimate - ref) / ref < 1e-9
    assert str(d).startswith("TOWER(")


def test_tower_estimate_matches_exact_values():
    for k, n in [(2, 1), (3, 1), (5, 1)]:
        expr = theta_expr(k, n)
        exact, _ = evaluate(expr)
        small, est = evaluate(expr, digit_limit=5)  # forced onto the log path
        assert small is None
        assert abs(est - mpmath.log10(exact)) <= 1e-9 * max(1, mpmath.log10(exact))


def test_expression_arithmetic():
    e = add(mul(lit(3), power(lit(2), lit(10))), lit(1))
    assert evaluate(e)[0] == 3073
    assert render(e) == "3073"  # small subtrees are folded on construction
    big = power(lit(7), lit(10**7))
    assert evaluate(big, digit_limit=100)[0] is None
    assert "7^10000000" in render(big)


def test_t_bound():
    sphere = SurfaceSignature(0, 0, 0)
    for k in range(3):
        assert t_bound(sphere, k).expr == theta(k, 4 * k).expr
    assert t_bound(SurfaceSignature(0, 1, 0), 0).exact == 0
    torus = t_bound(SurfaceSignature(1, 0, 0), 1)
    assert torus.form == "tower"
    assert torus.expr == theta(1, 10).expr
    with pytest.raises(ValueError):
        t_bound(SurfaceSignature(0, 0, 1), 1)


def test_untangle_and_omega():
    assert untangle_bound(2, 3) == 54
    assert untangle_bound(5, 0) == 5
    assert untangle_bound(0, 4) == 0
    assert omega_bound(1, 1, c_param=1) == 512
    assert omega_bound(0, 0, c_param=7) == 0
    assert omega_bound(2, 1, c_param=1) == 4352
    with pytest.raises(ValueError):
        omega_bound(1, 1)
    with pytest.raises(ValueError):
        omega_bound(1, 1, c_param=0)


def test_bad_arguments():
    with pytest.raises(ValueError):
        m_bound(-1, 2)
    with pytest.raises(ValueError):
        theta(1, -1)


def test_bounds_are_fast():
    start = time.perf_counter()
    for k in range(11):
        theta(k, 0)
    theta(1, 1)
    theta(1, 2)
    t_bound(SurfaceSignature(1, 0, 0), 1)
    assert time.perf_counter() - start < 1.0
