"""命令共用的参数解析与输出封装"""
from typing import Any, List, Optional

from bstruct.core.errors import InputError
from bstruct.core.routing import arg
from bstruct.core.settings import settings
from bstruct.schemas.response import ConventionsSchema, ResultResponse, VerdictResponse
from bstruct.services.tensorops import REVERSED_PLACEMENT_READING, FieldSpec
from bstruct.services.zlinalg import AbelianGroup

FIELD_ARG = arg("--field", default=None, help="素数 p 表示 F_p，Q 表示有理数域；缺省为配置中的 DEFAULT_PRIME")
MAGMA_ARG = arg("--magma", required=True, help="b-代数 JSON 文件")
COEFF_ARG = arg("--coeff", required=True, help="系数群的模，逗号分隔，0 或 Z 表示整数，例如 2 或 2,4")


def conventions() -> ConventionsSchema:
    return ConventionsSchema(reversed_placement=REVERSED_PLACEMENT_READING)


def verdict(holds: bool, **details: Any) -> VerdictResponse:
    return VerdictResponse(holds=bool(holds), conventions=conventions(), details=details)


def result(value: Any) -> ResultResponse:
    return ResultResponse(result=value, conventions=conventions())


def parse_field(text: Optional[str]) -> FieldSpec:
    if text is None:
        return FieldSpec(settings.DEFAULT_PRIME)
    if text.strip().upper() == "Q":
        return FieldSpec.rationals()
    try:
        return FieldSpec(int(text))
    except ValueError:
        raise InputError(f"无法解析域: {text!r}", field="--field")


def parse_ints(text: str, name: str) -> List[int]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise InputError(f"应为逗号分隔的整数: {text!r}", field=name)


def parse_coeff(text: str) -> AbelianGroup:
    moduli = []
    for part in text.replace(" ", "").split(","):
        if part.upper() == "Z":
            moduli.append(0)
            continue
        try:
            m = int(part)
        except ValueError:
            raise InputError(f"无法解析系数群: {text!r}", field="--coeff")
        if m < 0:
            raise InputError(f"模必须 ≥ 0: {m}", field="--coeff")
        moduli.append(m)
    return AbelianGroup(tuple(moduli))
