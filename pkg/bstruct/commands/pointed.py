"""范畴 b-代数与 b-双范畴的上链条件命令"""
from bstruct.commands.common import MAGMA_ARG, result, verdict
from bstruct.core.routing import CommandRouter, arg
from bstruct.services.cochain import (
    abelian_cocycle_check,
    bicat_equiv,
    bicat_equiv_check,
    comparison_from_abelian,
    enumerate_abelian_cocycles,
    functor_check,
    functor_solve,
    gauge_transform,
    r_coherence_check,
    s4_coherence_check,
    transformation_check,
    transformation_solve,
    twisted_algebra_is_b,
)
from bstruct.services.persistence import data_persistence

router = CommandRouter(prefix="pointed", help="带点范畴 b-代数 / b-双范畴的条件")


def _cochain(path):
    return data_persistence.load_cochain(path)


def _dump(c):
    return data_persistence.cochain_to_schema(c).model_dump() if c is not None else None


def _path(flag: str, what: str):
    return arg(flag, required=True, help=f"{what} 上链 JSON 文件")


@router.command("r-check", help="3 次上链 r 的相干条件", arguments=[_path("--r", "r")])
def check_r(args):
    return verdict(r_coherence_check(_cochain(args.r)))


@router.command("gauge", help="规范变换 r′ = r 按 q 平移", arguments=[_path("--r", "r"), _path("--q", "q")])
def gauge(args):
    return result(_dump(gauge_transform(_cochain(args.r), _cochain(args.q))))


@router.command(
    "functor-check",
    help="检查 (f, q) 是否为带点 b-函子",
    arguments=[arg("--map", required=True, help="b-代数映射 JSON 文件"), _path("--r", "r"), _path("--r2", "r′"), _path("--q", "q")],
)
def check_functor(args):
    f = data_persistence.load_map(args.map)
    return verdict(functor_check(f, _cochain(args.r), _cochain(args.r2), _cochain(args.q)))


@router.command(
    "functor-solve",
    help="求 q 使 f 成为带点 b-函子",
    arguments=[arg("--map", required=True, help="b-代数映射 JSON 文件"), _path("--r", "r"), _path("--r2", "r′")],
)
def solve_functor(args):
    f = data_persistence.load_map(args.map)
    q = functor_solve(f, _cochain(args.r), _cochain(args.r2))
    return result({"exists": q is not None, "q": _dump(q)})


@router.command(
    "transform-check",
    help="检查 p 是否为 q ⇒ q̃ 的 b-自然变换",
    arguments=[_path("--p", "p"), _path("--q", "q"), _path("--q-tilde", "q̃")],
)
def check_transform(args):
    return verdict(transformation_check(_cochain(args.p), _cochain(args.q), _cochain(args.q_tilde)))


@router.command("transform-solve", help="求 p 使 q̃ − q = d(p)", arguments=[_path("--q", "q"), _path("--q-tilde", "q̃")])
def solve_transform(args):
    p = transformation_solve(_cochain(args.q), _cochain(args.q_tilde))
    return result({"exists": p is not None, "p": _dump(p)})


@router.command(
    "compare-abelian",
    help="阿贝尔 3-上闭链 (a, c) 的比较映射 b = a + c − a(y,x,z)",
    arguments=[_path("--a", "a"), _path("--c", "c")],
)
def compare_abelian(args):
    a, c = _cochain(args.a), _cochain(args.c)
    b = comparison_from_abelian(a, c)
    return result({
        "b": _dump(b),
        "abelian_cocycle": abelian_cocycle_check(a, c),
        "r_coherent": r_coherence_check(b),
    })


@router.command("abelian-check", help="经典阿贝尔 3-上闭链条件", arguments=[_path("--a", "a"), _path("--c", "c")])
def check_abelian(args):
    return verdict(abelian_cocycle_check(_cochain(args.a), _cochain(args.c)))


@router.command(
    "abelian-enumerate",
    help="Z/m 系数下全部阿贝尔 3-上闭链",
    arguments=[MAGMA_ARG, arg("--modulus", type=int, required=True, help="系数 Z/m 的 m")],
)
def enumerate_abelian(args):
    A = data_persistence.load_magma(args.magma)
    pairs = enumerate_abelian_cocycles(A, args.modulus)
    return result({
        "count": len(pairs),
        "pairs": [
            {"a": data_persistence.cochain_values(a), "c": data_persistence.cochain_values(c)} for a, c in pairs
        ],
    })


@router.command("s4-check", help="4 次上链 s 的 b-双范畴相干条件", arguments=[_path("--s", "s")])
def check_s4(args):
    return verdict(s4_coherence_check(_cochain(args.s)))


@router.command("bicat-equiv", help="求 r 使 s′ = s + d(r)", arguments=[_path("--s", "s"), _path("--s2", "s′")])
def find_bicat_equiv(args):
    r = bicat_equiv(_cochain(args.s), _cochain(args.s2))
    return result({"equivalent": r is not None, "r": _dump(r)})


@router.command(
    "bicat-check",
    help="检查 r 是否给出 s 与 s′ 之间的 b-双范畴等价",
    arguments=[_path("--s", "s"), _path("--s2", "s′"), _path("--r", "r")],
)
def check_bicat(args):
    return verdict(bicat_equiv_check(_cochain(args.s), _cochain(args.s2), _cochain(args.r)))


@router.command(
    "twisted-algebra",
    help="2 次上链 q 扭曲的 F_p 代数是否满足 b-公理",
    arguments=[_path("--q", "q"), arg("--prime", type=int, required=True, help="素数 p，q 的系数为 Z/(p−1)")],
)
def check_twisted_algebra(args):
    return verdict(twisted_algebra_is_b(_cochain(args.q), args.prime), prime=args.prime)
