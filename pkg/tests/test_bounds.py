import math
from fractions import Fraction

import mpmath
import pytest

from wicks_forms import bounds
from wicks_forms.bounds import (
    MODE_EXACT,
    MODE_LOG,
    VARIANT_SQUAREFREE,
    LogBound,
    bound_table,
    check_bound,
    formulas,
    m_value,
    minimal_threshold,
    robbins_log_factorial,
    rooted_maximal_count,
    v_count,
)
from wicks_forms.errors import BudgetExceeded, PrecisionExhausted

HUGE_GENUS = 10**10 + 1


# ==================== 精确公式 ====================


def test_formula_values():
    assert m_value(1) == Fraction(1, 6)
    assert m_value(2) == 35
    assert m_value(3) == 1201200
    f = formulas(1)
    assert f.V == 4 * 9**5
    assert f.Z == 4 * 27**5
    assert v_count(2) == 4 * 9**17


def test_m_value_clears_denominator():
    for g in range(1, 31):
        assert m_value(g) * 12**g * math.factorial(g) * (3 * g - 2) == math.factorial(6 * g - 4)


def test_rooted_maximal_count():
    assert rooted_maximal_count(1) == 1
    assert rooted_maximal_count(2) == 105


def test_factorial_budget():
    with pytest.raises(BudgetExceeded):
        m_value(3, budget=10)
    with pytest.raises(BudgetExceeded):
        check_bound(200_000, MODE_EXACT)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        check_bound(0)
    with pytest.raises(ValueError):
        check_bound(2, variant="cubefree")
    with pytest.raises(ValueError):
        minimal_threshold(MODE_EXACT)


# ==================== 对数区间 ====================


def test_log_bound_arithmetic():
    a = LogBound(mpmath.mpf(1), mpmath.mpf(2))
    b = LogBound(mpmath.mpf(0.5), mpmath.mpf(1))
    assert (a - b).lower == 0
    assert (a - b).upper == 1.5
    assert (a + b).width == 1.5
    assert a.scale(3).contains(4)


def test_robbins_interval_contains_log_factorial():
    for n in range(0, 21):
        interval = robbins_log_factorial(n, 30)
        with mpmath.workdps(50):
            assert interval.contains(mpmath.loggamma(n + 1))


def test_robbins_interval_is_tight():
    interval = robbins_log_factorial(1000, 30)
    assert interval.width < 1e-6


def test_robbins_rejects_negative():
    with pytest.raises(ValueError):
        robbins_log_factorial(-1, 30)


# ==================== 判定 ====================


def test_small_genus_fails_exactly():
    result = check_bound(2, MODE_EXACT)
    assert result.holds is False
    assert result.margin.upper < 0


def test_exact_and_log_agree():
    for g in range(1, 61):
        exact = check_bound(g, MODE_EXACT)
        certified = check_bound(g, MODE_LOG)
        assert exact.holds == certified.holds, g


def test_huge_genus_holds():
    result = check_bound(HUGE_GENUS)
    assert result.holds is True
    assert result.margin.lower > 0


def test_squarefree_holds_eventually():
    assert check_bound(10**17 + 1, variant=VARIANT_SQUAREFREE).holds is True


def test_minimal_threshold_is_minimal():
    t = minimal_threshold()
    assert 1 < t <= HUGE_GENUS
    assert check_bound(t).holds is True
    assert check_bound(t - 1).holds is False


def test_minimal_threshold_confirmed_exactly():
    t = minimal_threshold()
    assert check_bound(t, MODE_EXACT).holds is True
    assert check_bound(t - 1, MODE_EXACT).holds is False


def test_minimal_threshold_stable_under_precision():
    assert minimal_threshold(dps=60) == minimal_threshold()


def test_squarefree_threshold_is_larger():
    t = minimal_threshold(variant=VARIANT_SQUAREFREE)
    assert minimal_threshold() < t <= 10**17 + 1
    assert check_bound(t - 1, variant=VARIANT_SQUAREFREE).holds is False


def test_precision_exhausted(monkeypatch):
    monkeypatch.setattr(bounds, "_verdict", lambda margin: None)
    with pytest.raises(PrecisionExhausted):
        check_bound(5)
    assert check_bound(5, dps=40).holds is None


# ==================== 汇总表 ====================


def test_bound_table():
    df = bound_table([1, 2], MODE_EXACT)
    assert list(df.columns) == ["g", "m", "log_margin_lower", "log_margin_upper", "holds"]
    assert df["m"].tolist() == ["1/6", "35"]
    assert df["holds"].tolist() == [False, False]
