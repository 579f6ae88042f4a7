"""搜索结果的数据模型（JSONL 每行一个解）"""
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field

from bstruct.schemas.operator import OperatorSchema


class SearchTaskSchema(BaseModel):
    kind: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    limits: Dict[str, Any] = Field(default_factory=dict)


class SolutionLineSchema(BaseModel):
    kind: str = Field(..., description="搜索类型")
    index: int = Field(..., ge=0, description="规范排序后的序号")
    encoding: Dict[str, Any] = Field(default_factory=dict, description="置换/编码形式")
    operators: Dict[str, OperatorSchema] = Field(default_factory=dict)


class SearchSummarySchema(BaseModel):
    task: SearchTaskSchema
    count: int
    candidates_scanned: int
    exhaustive: bool
    restriction: Optional[str] = None
