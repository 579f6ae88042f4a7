"""矩阵层面的相干方程命令"""
from bstruct.commands.common import FIELD_ARG, parse_field, parse_ints, verdict
from bstruct.core.errors import InputError
from bstruct.core.routing import CommandRouter, arg
from bstruct.services.persistence import data_persistence
from bstruct.services.tensorops import (
    check_b_coherence_on_vect,
    check_cl_2morphism,
    check_hexagon,
    check_id_bfunctor,
    check_lze,
    check_m_relation,
    check_pentagon,
    check_preunital,
    check_s_relation,
    check_symmetric,
    check_tetrahedron,
    check_ybe,
)

router = CommandRouter(prefix="eq", help="Vect 上的 b-结构与 b-双范畴方程")


def _op(flag: str, what: str):
    return arg(flag, required=True, help=f"{what} 算子 JSON 文件")


OP_ARG = _op("--op", "待检查的")


def _load(args, path):
    field_spec = parse_field(args.field) if args.field is not None else None
    return data_persistence.load_operator(path, field_spec)


def _single(name: str, checker, what: str, takes_full: bool = True):
    @router.command(name, help=what, arguments=[OP_ARG, FIELD_ARG])
    def handler(args):
        op = _load(args, args.op)
        holds = checker(op, args.full) if takes_full else checker(op)
        return verdict(holds, field=op.field.label, leg_dims=list(op.leg_dims))

    handler.__name__ = f"check_{name.replace('-', '_')}"
    return handler


_single("pentagon", check_pentagon, "五边形方程 Φ₁₂Φ₁₃Φ₂₃ = Φ₂₃Φ₁₂")
_single("hexagon", check_hexagon, "六边形（辫）方程 B₁₂B₂₃B₁₂ = B₂₃B₁₂B₂₃")
_single("ybe", check_ybe, "量子 Yang-Baxter 方程 R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂")
_single("symmetric", check_symmetric, "对称条件 B∘B = 1", takes_full=False)
_single("tetrahedron", check_tetrahedron, "四面体方程")
_single("s-relation", check_s_relation, "S 形式的四面体关系")


@router.command("preunital", help="预单位方程组", arguments=[_op("--B", "B"), _op("--C", "C"), FIELD_ARG])
def check_preunital_pair(args):
    return verdict(check_preunital(_load(args, args.B), _load(args, args.C), args.full))


@router.command("lze", help="RLLL 方程 L₁₂₄L₁₃₅L₂₃₆Z₄₅₆ = Z₄₅₆L₂₃₆L₁₃₅L₁₂₄", arguments=[_op("--L", "L"), _op("--Z", "Z"), FIELD_ARG])
def check_lze_pair(args):
    return verdict(check_lze(_load(args, args.L), _load(args, args.Z), args.full))


@router.command("m-relation", help="M-关系（定义域 B³⊗C³）", arguments=[_op("--M", "M"), _op("--S", "S"), FIELD_ARG])
def check_m_pair(args):
    return verdict(check_m_relation(_load(args, args.M), _load(args, args.S), args.full))


@router.command(
    "cl2morphism",
    help="2-态射条件 (f⊗1)∘d = d′∘(1⊗f⊗f)",
    arguments=[_op("--f", "f"), _op("--d", "d"), _op("--d2", "d′"), FIELD_ARG],
)
def check_cl2(args):
    return verdict(check_cl_2morphism(_load(args, args.f), _load(args, args.d), _load(args, args.d2)))


@router.command("id-functor", help="恒等 b-函子条件 (g⊗g)B = B(g⊗g)", arguments=[_op("--g", "g"), _op("--B", "B"), FIELD_ARG])
def check_identity_functor(args):
    return verdict(check_id_bfunctor(_load(args, args.g), _load(args, args.B)))


@router.command(
    "cbc",
    help="四个对象的 b-结构相干图（β = B₂₄t₁₃）",
    arguments=[OP_ARG, FIELD_ARG, arg("--dims", default="1,1,1,1", help="X,Y,Z,W 的维数，逗号分隔")],
)
def check_cbc(args):
    dims = parse_ints(args.dims, "--dims")
    if len(dims) != 4:
        raise InputError("--dims 需要四个维数", field="--dims")
    return verdict(check_b_coherence_on_vect(_load(args, args.op), dims, args.full), dims=dims)
