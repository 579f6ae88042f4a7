"""Z/S、M/L 之间的换算与 L 的复合"""
from bstruct.commands.common import FIELD_ARG, parse_field, result
from bstruct.core.routing import CommandRouter, arg
from bstruct.services.persistence import data_persistence
from bstruct.services.tensorops import compose_L, l_to_m, m_to_l, s_to_z, z_to_s

router = CommandRouter(prefix="convert", help="算子形式之间的换算")


def _load(args, path):
    field_spec = parse_field(args.field) if args.field is not None else None
    return data_persistence.load_operator(path, field_spec)


def _dump(op):
    return result(data_persistence.operator_to_schema(op).model_dump())


def _converter(name: str, fn, what: str):
    @router.command(name, help=what, arguments=[arg("--op", required=True, help="输入算子 JSON 文件"), FIELD_ARG])
    def handler(args):
        return _dump(fn(_load(args, args.op)))

    handler.__name__ = name.replace("-", "_")
    return handler


_converter("s-to-z", s_to_z, "Z = (t₁t₂t₁)⁻¹S")
_converter("z-to-s", z_to_s, "S = t₁t₂t₁Z")
_converter("m-to-l", m_to_l, "L = t₁t₂t₁M⁻¹")
_converter("l-to-m", l_to_m, "M = ((t₁t₂t₁)⁻¹L)⁻¹")


@router.command(
    "compose-l",
    help="L|L′ = t₂L₁₂₅L′₃₄₅t₂",
    arguments=[
        arg("--L", required=True, help="L 算子 JSON 文件"),
        arg("--L2", required=True, help="L′ 算子 JSON 文件"),
        FIELD_ARG,
    ],
)
def compose(args):
    return _dump(compose_L(_load(args, args.L), _load(args, args.L2)))
