"""b-上同调命令"""
from bstruct.commands.common import COEFF_ARG, MAGMA_ARG, parse_coeff, result, verdict
from bstruct.core.routing import CommandRouter, arg
from bstruct.services.cochain import aut_orbits, cohomology, differential, is_coboundary, is_cocycle
from bstruct.services.persistence import data_persistence

router = CommandRouter(prefix="cohomology", help="上链微分、上闭链/上边缘判定与上同调群")

COCHAIN_ARG = arg("--cochain", required=True, help="上链 JSON 文件")
DEGREE_ARG = arg("--degree", type=int, required=True, help="上同调次数 n")


@router.command("compute", help="计算 H^n_b(A, B) 的不变因子与代表元", arguments=[MAGMA_ARG, COEFF_ARG, DEGREE_ARG])
def compute_cohomology(args):
    A = data_persistence.load_magma(args.magma)
    res = cohomology(A, parse_coeff(args.coeff), args.degree)
    return result(data_persistence.cohomology_to_schema(res).model_dump())


@router.command("d", help="计算上链的微分", arguments=[COCHAIN_ARG])
def apply_differential(args):
    c = data_persistence.load_cochain(args.cochain)
    return result(data_persistence.cochain_to_schema(differential(c)).model_dump())


@router.command("is-cocycle", help="判断 d(c) = 0", arguments=[COCHAIN_ARG])
def check_cocycle(args):
    c = data_persistence.load_cochain(args.cochain)
    return verdict(is_cocycle(c), degree=c.degree)


@router.command("is-coboundary", help="判断 c 是否为上边缘，并给出见证", arguments=[COCHAIN_ARG])
def check_coboundary(args):
    c = data_persistence.load_cochain(args.cochain)
    witness = is_coboundary(c)
    return verdict(
        witness is not None,
        degree=c.degree,
        witness=data_persistence.cochain_to_schema(witness).model_dump() if witness is not None else None,
    )


@router.command("orbits", help="H^n 的元素在 Aut(A) 作用下的轨道", arguments=[MAGMA_ARG, COEFF_ARG, DEGREE_ARG])
def compute_orbits(args):
    A = data_persistence.load_magma(args.magma)
    B = parse_coeff(args.coeff)
    classes = cohomology(A, B, args.degree)
    orbits = aut_orbits(A, B, args.degree, classes)
    return result({
        "invariant_factors": list(classes.invariant_factors),
        "order": classes.order,
        "count": len(orbits),
        "orbits": [data_persistence.orbit_to_schema(o).model_dump() for o in orbits],
    })
