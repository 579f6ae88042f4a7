"""统一命令输出格式"""
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field


class ConventionsSchema(BaseModel):
    """记录所有输出依赖的约定，便于复现"""
    index_order: str = "row-major, first leg most significant"
    word_order: str = "right-to-left, rightmost factor applied first"
    reversed_placement: str = Field(..., description="P_ji 的读法")
    pair_reading: str = "p(x,y) is read as p(xy) where a pair is a single argument"
    h1: str = "H^1 is Z^1 (no degree-0 coboundaries)"


class VerdictResponse(BaseModel):
    """方程检查的输出"""
    holds: bool
    conventions: ConventionsSchema
    details: Dict[str, Any] = Field(default_factory=dict)


class ResultResponse(BaseModel):
    """计算类命令的输出"""
    result: Any = None
    conventions: ConventionsSchema


class ErrorResponse(BaseModel):
    """错误输出，沿用 API 响应信封"""
    success: bool = False
    error: str = Field(..., description="错误类型")
    message: str = Field("", description="错误信息")
    path: Optional[str] = None
    field: Optional[str] = None
