"""穷举搜索命令"""
from bstruct.commands.common import FIELD_ARG, parse_field, result
from bstruct.core.routing import CommandRouter, arg
from bstruct.services.persistence import data_persistence
from bstruct.services.search import (
    search_b_magmas,
    search_lze,
    search_matrix_ybe,
    search_preunital,
    search_settheoretic_ybe,
)

router = CommandRouter(prefix="search", help="桌面规模的穷举搜索")

JSONL_ARG = arg("--jsonl", default=None, help="把解逐行写入 JSONL 文件，stdout 只输出汇总")


def _emit(res, args):
    summary = data_persistence.search_summary(res).model_dump()
    lines = data_persistence.search_lines(res)
    if args.jsonl:
        data_persistence.write_jsonl(lines, args.jsonl)
        return result({"summary": summary})
    return result({"summary": summary, "solutions": [line.model_dump() for line in lines]})


@router.command("ybe-set", help="集合论 Yang-Baxter 解（n ≤ 3）", arguments=[arg("--n", type=int, required=True), FIELD_ARG, JSONL_ARG])
def search_set_ybe(args):
    return _emit(search_settheoretic_ybe(args.n, parse_field(args.field), args.threads), args)


@router.command(
    "ybe-matrix",
    help="可逆矩阵 Yang-Baxter 解",
    arguments=[arg("--dim", type=int, default=2, help="每条腿的维数（≤ 2）"), FIELD_ARG, JSONL_ARG],
)
def search_matrix(args):
    return _emit(search_matrix_ybe(parse_field(args.field), args.dim, args.threads), args)


@router.command("preunital", help="一维预单位标量对", arguments=[FIELD_ARG, JSONL_ARG])
def search_scalars(args):
    return _emit(search_preunital(parse_field(args.field)), args)


@router.command(
    "lze",
    help="置换型 (L, Z) 解",
    arguments=[
        arg("--c", type=int, default=1, help="C 腿维数"),
        arg("--b", type=int, default=1, help="B 腿维数"),
        arg("--z", default=None, help="固定的置换型 Z 算子 JSON 文件"),
        FIELD_ARG,
        JSONL_ARG,
    ],
)
def search_lze_pairs(args):
    fs = parse_field(args.field)
    z = data_persistence.load_operator(args.z, fs) if args.z else None
    return _emit(search_lze(fs, args.c, args.b, z, args.threads), args)


@router.command(
    "b-magma",
    help="n 元 b-代数（按同构类）",
    arguments=[arg("--n", type=int, required=True), arg("--all", action="store_true", help="不按同构去重"), JSONL_ARG],
)
def search_magmas(args):
    return _emit(search_b_magmas(args.n, not args.all, args.threads), args)
