"""本地数据持久化服务

负责 JSON 文件与领域对象之间的转换，所有输出按键排序，保证相同输入得到逐字节相同的输出。
"""
import json
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Type, TypeVar

from pydantic import BaseModel, ValidationError

from bstruct.core.errors import InputError
from bstruct.core.logger import get_logger
from bstruct.schemas.cochain import AbelianGroupSchema, CochainSchema, CohomologySchema, OrbitSchema
from bstruct.schemas.magma import MagmaMapSchema, MagmaSchema
from bstruct.schemas.operator import FieldSchema, OperatorSchema
from bstruct.schemas.search import SearchSummarySchema, SearchTaskSchema, SolutionLineSchema
from bstruct.services.cochain import Cochain, CohomologyResult, Orbit
from bstruct.services.magma import MagmaMap, MagmaTable
from bstruct.services.search import SearchResult
from bstruct.services.tensorops import FieldSpec, LegOperator
from bstruct.services.zlinalg import AbelianGroup

logger = get_logger("persistence")

SchemaT = TypeVar("SchemaT", bound=BaseModel)


def _error_field(error: ValidationError) -> str:
    first = error.errors()[0]
    return ".".join(str(p) for p in first.get("loc", ()))


class DataPersistenceService:
    """本地数据持久化服务类"""

    # -- 原始 JSON ----------------------------------------------------------

    def read_json(self, path: str) -> Any:
        """
        读取 JSON 文件
        Args:
            path: 文件路径
        Returns:
            解析后的 JSON 数据
        """
        file_path = Path(path)
        if not file_path.exists():
            raise InputError(f"文件不存在: {path}", path=path)
        try:
            with open(file_path, "r", encoding="utf-8") as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise InputError(f"不是合法 JSON: {e}", path=path)

    def validate(self, schema: Type[SchemaT], data: Any, path: Optional[str] = None) -> SchemaT:
        """按 schema 校验，失败时转换为带路径和字段的 InputError"""
        try:
            return schema.model_validate(data)
        except ValidationError as e:
            first = e.errors()[0]
            raise InputError(f"数据校验失败: {first.get('msg')}", path=path, field=_error_field(e))

    def load(self, schema: Type[SchemaT], path: str) -> SchemaT:
        return self.validate(schema, self.read_json(path), path)

    # -- 输出 ---------------------------------------------------------------

    def dumps(self, payload: Any) -> str:
        if isinstance(payload, BaseModel):
            payload = payload.model_dump(mode="json")
        return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)

    def dumps_line(self, payload: Any) -> str:
        if isinstance(payload, BaseModel):
            payload = payload.model_dump(mode="json")
        return json.dumps(payload, sort_keys=True, ensure_ascii=False)

    def write_text(self, text: str, out: Optional[str] = None) -> None:
        """写到文件；out 为空时写到 stdout"""
        if not out:
            sys.stdout.write(text if text.endswith("\n") else text + "\n")
            return
        out_path = Path(out)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        with open(out_path, "w", encoding="utf-8") as f:
            f.write(text if text.endswith("\n") else text + "\n")
        logger.info(f"💾 结果已保存到: {out_path}")

    def write_jsonl(self, lines: Iterable[BaseModel], out: str) -> int:
        count = 0
        out_path = Path(out)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        with open(out_path, "w", encoding="utf-8") as f:
            for line in lines:
                f.write(self.dumps_line(line) + "\n")
                count += 1
        logger.info(f"💾 {count} 行结果已保存到: {out_path}")
        return count

    # -- b-代数 -------------------------------------------------------------

    def magma_from_schema(self, schema: MagmaSchema) -> MagmaTable:
        return MagmaTable(schema.table)

    def magma_to_schema(self, t: MagmaTable) -> MagmaSchema:
        return MagmaSchema(n=t.n, table=[list(r) for r in t.table])

    def load_magma(self, path: str) -> MagmaTable:
        return self.magma_from_schema(self.load(MagmaSchema, path))

    def load_map(self, path: str) -> MagmaMap:
        schema = self.load(MagmaMapSchema, path)
        return MagmaMap(self.magma_from_schema(schema.source), self.magma_from_schema(schema.target), tuple(schema.map))

    # -- 上链 ---------------------------------------------------------------

    def group_from_schema(self, schema: AbelianGroupSchema) -> AbelianGroup:
        return AbelianGroup(tuple(schema.moduli))

    def group_to_schema(self, group: AbelianGroup) -> AbelianGroupSchema:
        return AbelianGroupSchema(moduli=list(group.moduli))

    def cochain_values(self, c: Cochain) -> List[List[int]]:
        return [[int(v) for v in row] for row in c.values]

    def cochain_from_schema(self, schema: CochainSchema, path: Optional[str] = None) -> Cochain:
        coeff = self.group_from_schema(schema.coeff)
        try:
            return Cochain(self.magma_from_schema(schema.magma), schema.degree, coeff, schema.values)
        except InputError as e:
            e.path = e.path or path
            raise
        except ValueError as e:
            raise InputError(f"上链取值不是矩形数组: {e}", path=path, field="values")

    def cochain_to_schema(self, c: Cochain) -> CochainSchema:
        return CochainSchema(
            magma=self.magma_to_schema(c.magma),
            degree=c.degree,
            coeff=self.group_to_schema(c.coeff),
            values=self.cochain_values(c),
        )

    def load_cochain(self, path: str) -> Cochain:
        return self.cochain_from_schema(self.load(CochainSchema, path), path)

    def cohomology_to_schema(self, result: CohomologyResult) -> CohomologySchema:
        return CohomologySchema(
            degree=result.degree,
            coeff=self.group_to_schema(result.coeff),
            invariant_factors=list(result.invariant_factors),
            order=result.order,
            representatives=[self.cochain_values(rep) for rep in result.representatives],
        )

    def orbit_to_schema(self, orbit: Orbit) -> OrbitSchema:
        return OrbitSchema(
            representative=list(orbit.representative),
            members=[list(m) for m in orbit.members],
            size=orbit.size,
        )

    # -- 算子 ---------------------------------------------------------------

    def field_from_schema(self, schema: FieldSchema) -> FieldSpec:
        return FieldSpec(schema.prime)

    def operator_from_schema(self, schema: OperatorSchema, path: Optional[str] = None) -> LegOperator:
        fs = self.field_from_schema(schema.field)
        try:
            rows = [[fs.parse_entry(str(v)) for v in row] for row in schema.entries]
            return LegOperator(fs, schema.leg_dims, rows, schema.codomain_leg_dims)
        except InputError as e:
            e.path = e.path or path
            raise
        except ValueError as e:
            raise InputError(f"矩阵条目不是矩形数组: {e}", path=path, field="entries")

    def operator_to_schema(self, op: LegOperator) -> OperatorSchema:
        fs = op.field
        return OperatorSchema(
            field=FieldSchema(prime=fs.prime),
            leg_dims=list(op.leg_dims),
            codomain_leg_dims=list(op.codomain_leg_dims),
            entries=[[fs.format_entry(v) for v in row] for row in op.entries],
        )

    def load_operator(self, path: str, field_spec: Optional[FieldSpec] = None) -> LegOperator:
        """加载算子；给定 field_spec 时文件中的域必须一致"""
        op = self.operator_from_schema(self.load(OperatorSchema, path), path)
        if field_spec is not None and op.field != field_spec:
            raise InputError(f"算子所在的域 {op.field.label} 与 --field {field_spec.label} 不一致", path=path, field="field")
        return op

    # -- 搜索结果 -----------------------------------------------------------

    def search_summary(self, result: SearchResult) -> SearchSummarySchema:
        task = result.task
        return SearchSummarySchema(
            task=SearchTaskSchema(kind=task.kind, parameters=task.parameters, limits=task.limits),
            count=result.count,
            candidates_scanned=result.candidates_scanned,
            exhaustive=result.exhaustive,
            restriction=result.restriction,
        )

    def search_lines(self, result: SearchResult) -> List[SolutionLineSchema]:
        return [
            SolutionLineSchema(
                kind=result.task.kind,
                index=i,
                encoding=sol.encoding,
                operators={name: self.operator_to_schema(op) for name, op in sorted(sol.operators.items())},
            )
            for i, sol in enumerate(result.solutions)
        ]


# 创建全局数据持久化服务实例
data_persistence = DataPersistenceService()
