"""
运行配置
按优先级合并：默认值 < JSON 设置文件 (WICKS_SETTINGS) < 环境变量
"""

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .log import logger

# 对数模式默认有效数字位数
DEFAULT_PRECISION = 30
# 自动提高精度的上限
MAX_PRECISION = 480
# 精确阶乘允许的最大 n
FACTORIAL_BUDGET = 10**6
# 并行枚举时按前缀划分任务的深度
PARTITION_DEPTH = 4

SETTINGS_ENV = "WICKS_SETTINGS"

# 环境变量 -> 设置字段
ENV_FIELDS = {
    "WICKS_WORKERS": "workers",
    "WICKS_CATALOG_DIR": "catalog_dir",
    "WICKS_PRECISION": "precision",
    "WICKS_MAX_PRECISION": "max_precision",
    "WICKS_FACTORIAL_BUDGET": "factorial_budget",
    "WICKS_LOG_LEVEL": "log_level",
}


def _default_workers() -> int:
    return os.cpu_count() or 1


@dataclass
class WicksSettings:
    """工具包运行设置"""

    workers: int = field(default_factory=_default_workers)  # 枚举/计数的进程数
    catalog_dir: Path | None = None  # 目录磁盘缓存位置，None 表示只用内存
    precision: int = DEFAULT_PRECISION  # 对数模式起始精度
    max_precision: int = MAX_PRECISION  # 精度上限
    factorial_budget: int = FACTORIAL_BUDGET  # 精确阶乘预算
    partition_depth: int = PARTITION_DEPTH  # 并行划分深度
    log_level: str = "WARNING"


def _safe_int(value: Any, default: int, minimum: int = 1) -> int:
    """安全地将值转换为 int，无效值回退到默认值"""
    if value is None or value == "":
        return default
    try:
        result = int(value)
    except (ValueError, TypeError):
        logger.warning(f"无效的整数设置值 {value!r}，使用默认值 {default}")
        return default
    if result < minimum:
        logger.warning(f"设置值 {result} 小于 {minimum}，使用默认值 {default}")
        return default
    return result


def _load_settings_file(path: str | None) -> dict[str, Any]:
    """从 JSON 文件加载设置"""
    if not path:
        return {}
    settings_path = Path(path)
    if not settings_path.exists():
        logger.warning(f"设置文件不存在: {settings_path}")
        return {}
    try:
        with open(settings_path, encoding="utf-8") as f:
            data = json.load(f)
    except Exception as e:
        logger.warning(f"加载设置文件失败: {e}")
        return {}
    if not isinstance(data, dict):
        logger.warning(f"设置文件顶层必须是对象: {settings_path}")
        return {}
    return data


def load_settings(environ: dict[str, str] | None = None) -> WicksSettings:
    """解析设置

    Args:
        environ: 环境变量映射，默认使用 os.environ

    Returns:
        合并后的 WicksSettings
    """
    env = os.environ if environ is None else environ
    raw: dict[str, Any] = _load_settings_file(env.get(SETTINGS_ENV))
    for key, name in ENV_FIELDS.items():
        if env.get(key):
            raw[name] = env[key]

    defaults = WicksSettings()
    settings = WicksSettings(
        workers=_safe_int(raw.get("workers"), defaults.workers),
        precision=_safe_int(raw.get("precision"), defaults.precision, minimum=10),
        max_precision=_safe_int(raw.get("max_precision"), defaults.max_precision, minimum=10),
        factorial_budget=_safe_int(raw.get("factorial_budget"), defaults.factorial_budget),
        partition_depth=_safe_int(raw.get("partition_depth"), defaults.partition_depth),
        log_level=str(raw.get("log_level") or defaults.log_level).upper(),
    )
    if raw.get("catalog_dir"):
        settings.catalog_dir = Path(raw["catalog_dir"])
    if settings.max_precision < settings.precision:
        logger.warning(
            f"max_precision={settings.max_precision} 小于 precision={settings.precision}，已对齐"
        )
        settings.max_precision = settings.precision
    return settings


# 全局实例
_settings: Optional[WicksSettings] = None


def get_settings() -> WicksSettings:
    """获取全局设置实例"""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def reset_settings() -> None:
    """丢弃全局设置，下次 get_settings 时重新读取"""
    global _settings
    _settings = None
