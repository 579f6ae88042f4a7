"""张量腿算子的数据模型"""
from typing import List, Optional, Union

from pydantic import BaseModel, Field, model_validator


class FieldSchema(BaseModel):
    """素域 F_p；prime 为空表示有理数域"""
    prime: Optional[int] = Field(None, ge=2, description="域特征")


class OperatorSchema(BaseModel):
    field: FieldSchema = Field(default_factory=FieldSchema)
    leg_dims: List[int] = Field(..., min_length=1, description="定义域腿维数")
    codomain_leg_dims: Optional[List[int]] = Field(None, description="值域腿维数，缺省同定义域")
    entries: List[List[Union[int, str]]] = Field(..., description="行优先矩阵条目（十进制或 p/q 字符串）")

    @model_validator(mode="after")
    def _check_dims(self):
        dims = self.leg_dims + (self.codomain_leg_dims or [])
        if any(d < 1 for d in dims):
            raise ValueError("腿维数必须为正")
        return self
