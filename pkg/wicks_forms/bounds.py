"""
计数公式与阶乘不等式
m(g) = (1/12)^g (6g-4)! / (g! (3g-2))，|V(g)| = 4·9^(12g-7)，|Z(g)| = 4·27^(12g-7)；
判定 m(g) / |V(g)| > g!，大 g 时用 Robbins 阶乘界在对数空间中给出可靠结论
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import pandas as pd

from .config import get_settings
from .errors import BudgetExceeded, PrecisionExhausted
from .log import logger

MODE_EXACT = "exact"
MODE_LOG = "certified_log"
VARIANT_STANDARD = "standard"
VARIANT_SQUAREFREE = "squarefree"
# 每个变体下 z 或 v 的每步可选字母数
VARIANT_BASES = {VARIANT_STANDARD: 9, VARIANT_SQUAREFREE: 27}
# 计算时额外的保护位数
GUARD_DIGITS = 10

ExactRational = Fraction


@dataclass(frozen=True)
class Formulas:
    """三个计数公式的精确值"""

    g: int
    m: ExactRational
    V: int
    Z: int


@dataclass(frozen=True)
class LogBound:
    """自然对数的可靠区间 lower <= 真值 <= upper"""

    lower: mpmath.mpf
    upper: mpmath.mpf

    def __add__(self, other: "LogBound") -> "LogBound":
        return LogBound(self.lower + other.lower, self.upper + other.upper)

    def __sub__(self, other: "LogBound") -> "LogBound":
        return LogBound(self.lower - other.upper, self.upper - other.lower)

    def scale(self, k: int) -> "LogBound":
        """乘以非负整数"""
        return LogBound(self.lower * k, self.upper * k)

    @property
    def width(self) -> mpmath.mpf:
        return self.upper - self.lower

    def contains(self, value) -> bool:
        return self.lower <= value <= self.upper

    def __str__(self) -> str:
        return f"[{mpmath.nstr(self.lower, 12, min_fixed=0, max_fixed=0)}, {mpmath.nstr(self.upper, 12, min_fixed=0, max_fixed=0)}]"


@dataclass(frozen=True)
class BoundCheck:
    """不等式 m(g)/D(g) > g! 的判定结果"""

    g: int
    mode: str
    variant: str
    holds: bool | None  # None 表示当前精度下无法判定
    margin: LogBound  # ln m(g) - ln D(g) - ln g! 的区间
    dps: int


# ==================== 精确公式 ====================


def _check_budget(g: int, budget: int | None) -> None:
    if g < 1:
        raise ValueError(f"亏格必须为正: {g}")
    budget = get_settings().factorial_budget if budget is None else budget
    if 6 * g - 4 > budget:
        raise BudgetExceeded(f"(6g-4)! 中 6g-4={6 * g - 4} 超出预算 {budget}，请使用对数模式")


def m_value(g: int, budget: int | None = None) -> ExactRational:
    _check_budget(g, budget)
    return Fraction(math.factorial(6 * g - 4), 12**g * math.factorial(g) * (3 * g - 2))


def v_count(g: int, variant: str = VARIANT_STANDARD) -> int:
    """候选单词个数 4·b^(12g-7)"""
    return 4 * VARIANT_BASES[variant] ** (12 * g - 7)


def formulas(g: int, budget: int | None = None) -> Formulas:
    """m(g)、|V(g)|、|Z(g)| 的精确值"""
    return Formulas(g, m_value(g, budget), v_count(g), v_count(g, VARIANT_SQUAREFREE))


def rooted_maximal_count(g: int) -> int:
    """亏格 g 有根单面三正则图的个数 2(6g-3)!/(12^g g! (3g-2)!)"""
    value = Fraction(
        2 * math.factorial(6 * g - 3), 12**g * math.factorial(g) * math.factorial(3 * g - 2)
    )
    if value.denominator != 1:
        raise ArithmeticError(f"亏格 {g} 的有根计数不是整数: {value}")
    return value.numerator


# ==================== 对数区间 ====================


def _pad(value: mpmath.mpf, dps: int) -> LogBound:
    """按目标精度向外扩张单个计算结果"""
    delta = (abs(value) + 1) * mpmath.mpf(10) ** (-dps)
    return LogBound(value - delta, value + delta)


def _log_int(n: int, dps: int) -> LogBound:
    return _pad(mpmath.log(mpmath.mpf(n)), dps)


def robbins_log_factorial(n: int, dps: int | None = None) -> LogBound:
    """ln n! 的 Robbins 区间

    S(n) = n ln n - n + ½ ln(2πn)，ln n! ∈ [S + 1/(12n+1), S + 1/(12n)]

    Args:
        n: 非负整数
        dps: 有效数字位数
    """
    dps = get_settings().precision if dps is None else dps
    if n < 0:
        raise ValueError(f"n 不能为负: {n}")
    with mpmath.workdps(dps + GUARD_DIGITS):
        if n <= 1:
            return LogBound(mpmath.mpf(0), mpmath.mpf(0))
        x = mpmath.mpf(n)
        stirling = _pad(x * mpmath.log(x) - x + mpmath.log(2 * mpmath.pi * x) / 2, dps)
        lower = _pad(1 / (12 * x + 1), dps)
        upper = _pad(1 / (12 * x), dps)
        return LogBound(stirling.lower + lower.lower, stirling.upper + upper.upper)


def log_margin(g: int, variant: str = VARIANT_STANDARD, dps: int | None = None) -> LogBound:
    """ln m(g) - ln D(g) - ln g! 的可靠区间"""
    dps = get_settings().precision if dps is None else dps
    with mpmath.workdps(dps + GUARD_DIGITS):
        log_m = (
            robbins_log_factorial(6 * g - 4, dps)
            - _log_int(12, dps).scale(g)
            - robbins_log_factorial(g, dps)
            - _log_int(3 * g - 2, dps)
        )
        log_d = _log_int(4, dps) + _log_int(VARIANT_BASES[variant], dps).scale(12 * g - 7)
        return log_m - log_d - robbins_log_factorial(g, dps)


def exact_log_margin(g: int, variant: str = VARIANT_STANDARD, dps: int | None = None) -> LogBound:
    """由精确有理数计算的边际区间"""
    dps = get_settings().precision if dps is None else dps
    ratio = m_value(g) / (v_count(g, variant) * math.factorial(g))
    with mpmath.workdps(dps + GUARD_DIGITS):
        return _log_int(ratio.numerator, dps) - _log_int(ratio.denominator, dps)


# ==================== 判定 ====================


def _verdict(margin: LogBound) -> bool | None:
    if margin.lower > 0:
        return True
    if margin.upper <= 0:
        return False
    return None


def _check_once(g: int, mode: str, variant: str, dps: int) -> BoundCheck:
    if mode == MODE_EXACT:
        ratio = m_value(g) / v_count(g, variant)
        holds = ratio > math.factorial(g)
        return BoundCheck(g, mode, variant, holds, exact_log_margin(g, variant, dps), dps)
    if mode != MODE_LOG:
        raise ValueError(f"未知模式: {mode}")
    margin = log_margin(g, variant, dps)
    return BoundCheck(g, mode, variant, _verdict(margin), margin, dps)


def check_bound(
    g: int,
    mode: str = MODE_LOG,
    variant: str = VARIANT_STANDARD,
    dps: int | None = None,
) -> BoundCheck:
    """判定 m(g) / D(g) > g!

    未指定 dps 时从设置的精度开始，无法判定就加倍精度，
    超过 max_precision 仍无法判定则抛出 PrecisionExhausted。

    Args:
        g: 亏格
        mode: "exact" 或 "certified_log"
        variant: "standard" 用 |V(g)|，"squarefree" 用 |Z(g)|
        dps: 固定精度，此时无法判定会返回 holds=None

    Returns:
        BoundCheck
    """
    if g < 1:
        raise ValueError(f"亏格必须为正: {g}")
    if variant not in VARIANT_BASES:
        raise ValueError(f"未知变体: {variant}")
    if mode == MODE_EXACT:
        _check_budget(g, None)
    if dps is not None:
        return _check_once(g, mode, variant, dps)

    settings = get_settings()
    dps = settings.precision
    while True:
        result = _check_once(g, mode, variant, dps)
        if result.holds is not None:
            return result
        if dps >= settings.max_precision:
            raise PrecisionExhausted(
                f"g={g} 在 {dps} 位精度下仍无法判定，边际区间 {result.margin}"
            )
        logger.debug(f"g={g} 在 {dps} 位精度下无法判定，提高精度")
        dps = min(2 * dps, settings.max_precision)


def minimal_threshold(
    mode: str = MODE_LOG, variant: str = VARIANT_STANDARD, dps: int | None = None
) -> int:
    """不等式被证实成立的最小 g

    先指数搜索找到成立点，再二分；探测点上的结论须单调，
    否则退回到线性扫描。
    """
    if mode != MODE_LOG:
        raise ValueError("最小阈值只支持 certified_log 模式")

    probes: dict[int, bool] = {}

    def holds(g: int) -> bool:
        if g not in probes:
            probes[g] = check_bound(g, mode, variant, dps).holds is True
            logger.debug(f"探测 g={g}: {probes[g]}")
        return probes[g]

    hi = 1
    while not holds(hi):
        hi *= 2
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if holds(mid):
            hi = mid
        else:
            lo = mid

    ordered = [probes[g] for g in sorted(probes)]
    if ordered != sorted(ordered):
        logger.warning(f"探测结论不单调，改为线性扫描 1..{max(probes)}")
        return next(g for g in range(1, max(probes) + 1) if holds(g))
    logger.info(f"最小阈值 ({variant}): g={hi}")
    return hi


def bound_table(
    g_values, mode: str = MODE_LOG, variant: str = VARIANT_STANDARD
) -> pd.DataFrame:
    """多个 g 的判定汇总表"""
    rows = []
    for g in g_values:
        result = check_bound(g, mode, variant)
        rows.append(
            {
                "g": g,
                "m": str(m_value(g)) if mode == MODE_EXACT else "-",
                "log_margin_lower": float(result.margin.lower),
                "log_margin_upper": float(result.margin.upper),
                "holds": result.holds,
            }
        )
    return pd.DataFrame(rows, columns=["g", "m", "log_margin_lower", "log_margin_upper", "holds"])
