"""b-代数命令"""
from bstruct.commands.common import MAGMA_ARG, result, verdict
from bstruct.core.routing import CommandRouter, arg
from bstruct.schemas.magma import MagmaSummary
from bstruct.services.magma import (
    are_isomorphic,
    automorphisms,
    canonical_form,
    check_associative,
    check_b_axiom,
    check_commutative,
    enumerate_b_magmas,
    idempotents,
    is_abelian_group,
    left_units,
    right_units,
)
from bstruct.services.persistence import data_persistence

router = CommandRouter(prefix="magma", help="有限 b-代数的校验、枚举与自同构")


@router.command("check", help="检查 b-公理并汇总基本性质", arguments=[MAGMA_ARG])
def check_magma(args):
    t = data_persistence.load_magma(args.magma)
    summary = MagmaSummary(
        n=t.n,
        is_b=check_b_axiom(t),
        commutative=check_commutative(t),
        associative=check_associative(t),
        right_units=right_units(t),
        left_units=left_units(t),
        idempotents=idempotents(t),
        abelian_group=is_abelian_group(t),
    )
    return verdict(summary.is_b, **summary.model_dump())


@router.command(
    "enumerate",
    help="回溯枚举全部 n 元 b-代数",
    arguments=[
        arg("--n", type=int, required=True, help="载体大小"),
        arg("--up-to-iso", action="store_true", help="每个同构类只保留规范代表元"),
    ],
)
def enumerate_magmas(args):
    tables = enumerate_b_magmas(args.n, args.up_to_iso, args.threads)
    return result({
        "n": args.n,
        "up_to_iso": args.up_to_iso,
        "count": len(tables),
        "tables": [data_persistence.magma_to_schema(t).model_dump() for t in tables],
    })


@router.command("auts", help="列出全部自同构", arguments=[MAGMA_ARG])
def list_automorphisms(args):
    t = data_persistence.load_magma(args.magma)
    auts = automorphisms(t)
    return result({"count": len(auts), "automorphisms": [list(a) for a in auts]})


@router.command(
    "iso",
    help="判断两个运算表是否同构",
    arguments=[MAGMA_ARG, arg("--other", required=True, help="另一个 b-代数 JSON 文件")],
)
def check_isomorphic(args):
    s = data_persistence.load_magma(args.magma)
    t = data_persistence.load_magma(args.other)
    return verdict(
        are_isomorphic(s, t),
        canonical=[list(r) for r in canonical_form(s).table],
        other_canonical=[list(r) for r in canonical_form(t).table],
    )


@router.command("idempotents", help="列出幂等元与左右单位元", arguments=[MAGMA_ARG])
def list_idempotents(args):
    t = data_persistence.load_magma(args.magma)
    return result({"idempotents": idempotents(t), "right_units": right_units(t), "left_units": left_units(t)})
