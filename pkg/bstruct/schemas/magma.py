"""b-代数相关的数据模型"""
from typing import List

from pydantic import BaseModel, Field, model_validator


class MagmaSchema(BaseModel):
    """运算表，table[x][y] = xy"""
    n: int = Field(..., ge=1, description="载体大小")
    table: List[List[int]] = Field(..., description="行优先的运算表")

    @model_validator(mode="after")
    def _check_shape(self):
        if len(self.table) != self.n:
            raise ValueError(f"table 应有 {self.n} 行，实际 {len(self.table)} 行")
        for x, row in enumerate(self.table):
            if len(row) != self.n:
                raise ValueError(f"table[{x}] 长度应为 {self.n}")
            for v in row:
                if not 0 <= v < self.n:
                    raise ValueError(f"table[{x}] 中的条目 {v} 超出 0..{self.n - 1}")
        return self


class MagmaMapSchema(BaseModel):
    """载体映射 f: source → target"""
    source: MagmaSchema
    target: MagmaSchema
    map: List[int] = Field(..., description="map[x] = f(x)")


class MagmaSummary(BaseModel):
    """check 命令输出的性质汇总"""
    n: int
    is_b: bool
    commutative: bool
    associative: bool
    right_units: List[int] = Field(default_factory=list)
    left_units: List[int] = Field(default_factory=list)
    idempotents: List[int] = Field(default_factory=list)
    abelian_group: bool = False
