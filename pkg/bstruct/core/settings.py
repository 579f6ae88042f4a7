"""运行配置设置"""
import json
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from bstruct.core.errors import InputError


class Settings(BaseModel):
    """工具包设置

    优先级：默认值 < JSON 配置文件 < 命令行参数。不读取环境变量。
    """

    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    # 域与随机性
    DEFAULT_PRIME: int = Field(2, ge=2, description="未指定域时使用的素数特征")
    SEED: int = Field(0, description="随机向量验证模式的种子")

    # 并行
    THREADS: int = Field(1, ge=1, le=256, description="搜索与枚举使用的工作进程数")

    # 方程验证
    FULL_CHECK_DIM: int = Field(4096, ge=1, description="不超过该维数时在全部基向量上验证")
    RANDOM_VECTORS: int = Field(32, ge=1, description="超过阈值时使用的随机向量个数")
    CHECK_CHUNK: int = Field(256, ge=1, description="分块全量验证时每块的基向量个数")

    # 规模限制
    AUTOMORPHISM_SCAN_LIMIT: int = Field(8, ge=1, description="自同构 n! 扫描的最大 n")
    ENUMERATION_SOFT_LIMIT: int = Field(5, ge=1, description="b-代数枚举的软上限")
    ORBIT_ENUMERATION_LIMIT: int = Field(10_000, ge=1, description="可枚举的上同调群最大阶")
    COCHAIN_SIZE_LIMIT: int = Field(250_000, ge=1, description="单个上链允许的最大条目数")
    SEARCH_CANDIDATE_CAP: int = Field(5_000_000, ge=1, description="搜索候选总数上限")
    YBE_SET_MAX_N: int = Field(3, ge=1, description="集合论 Yang-Baxter 穷举的最大 n")
    SUBGROUP_ENUMERATION_LIMIT: int = Field(100_000, ge=1, description="子群闭包枚举上限")

    # 调试
    PARANOID_CHECKS: bool = Field(False, description="对 SNF 与见证结果逐次复核")
    LOG_LEVEL: str = Field("WARNING", description="日志级别")


# 创建全局设置实例
settings = Settings()


def load_settings(path: Optional[str]) -> Settings:
    """从 JSON 配置文件加载设置

    Args:
        path: 配置文件路径；为空时返回默认设置

    Returns:
        校验后的 Settings 实例
    """
    if not path:
        return Settings()
    config_path = Path(path)
    if not config_path.exists():
        raise InputError(f"配置文件不存在: {path}", path=path)
    try:
        with open(config_path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InputError(f"配置文件不是合法 JSON: {e}", path=path)
    try:
        return Settings.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(p) for p in first.get("loc", ()))
        raise InputError(f"配置项无效: {first.get('msg')}", path=path, field=field)


def apply_settings(source: Optional[Settings] = None, **overrides: Any) -> Settings:
    """原地更新全局设置，返回全局实例"""
    updates: Dict[str, Any] = {}
    if source is not None:
        updates.update(source.model_dump())
    updates.update({k: v for k, v in overrides.items() if v is not None})
    for key, value in updates.items():
        setattr(settings, key, value)
    return settings
