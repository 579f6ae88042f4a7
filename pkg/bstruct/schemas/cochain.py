"""上链与上同调的数据模型"""
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator

from bstruct.schemas.magma import MagmaSchema


class AbelianGroupSchema(BaseModel):
    """∏ Z/m_i，m_i = 0 表示无限循环因子"""
    moduli: List[int] = Field(..., description="各循环因子的模")

    @field_validator("moduli")
    @classmethod
    def _non_negative(cls, v: List[int]) -> List[int]:
        if any(m < 0 for m in v):
            raise ValueError("模必须 ≥ 0")
        return v


class CochainSchema(BaseModel):
    magma: MagmaSchema
    degree: int = Field(..., ge=1, description="上链次数")
    coeff: AbelianGroupSchema
    values: List[List[int]] = Field(..., description="行优先取值，每个取值是坐标列表")


class CohomologySchema(BaseModel):
    """H^n_b(A, B) 的计算结果"""
    degree: int
    coeff: AbelianGroupSchema
    invariant_factors: List[int] = Field(..., description="不变因子，0 表示 Z")
    order: Optional[int] = Field(None, description="群的阶，无限时为空")
    representatives: List[List[List[int]]] = Field(default_factory=list, description="各生成元的代表上闭链取值")


class OrbitSchema(BaseModel):
    representative: List[int]
    members: List[List[int]]
    size: int


class AbelianPairSchema(BaseModel):
    """阿贝尔 3-上闭链 (a, c)"""
    a: List[List[int]]
    c: List[List[int]]
