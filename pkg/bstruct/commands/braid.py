"""辫群作用命令"""
from bstruct.commands.common import FIELD_ARG, parse_field, parse_ints, result, verdict
from bstruct.core.routing import CommandRouter, arg
from bstruct.services.persistence import data_persistence
from bstruct.services.tensorops import braid_word_eval, check_coxeter

router = CommandRouter(prefix="braid", help="六边形解诱导的辫群作用")

OP_ARG = arg("--op", required=True, help="B 算子 JSON 文件")
TAIL_ARG = arg("--tail", type=int, default=1, help="尾腿维数")


def _load(args):
    field_spec = parse_field(args.field) if args.field is not None else None
    return data_persistence.load_operator(args.op, field_spec)


@router.command(
    "eval",
    help="辫字在 M^{⊗n}⊗尾腿 上的算子",
    arguments=[
        OP_ARG,
        FIELD_ARG,
        arg("--strands", type=int, required=True, help="股数 n"),
        arg("--word", default="", help="生成元序列，逗号分隔，负数表示逆元，例如 1,-2,1；以负数开头时写成 --word=-1,2"),
        TAIL_ARG,
    ],
)
def evaluate_word(args):
    B = _load(args)
    word = parse_ints(args.word, "--word")
    op = braid_word_eval(B, args.strands, word, args.tail)
    return result(data_persistence.operator_to_schema(op).model_dump())


@router.command(
    "coxeter",
    help="检查辫关系与远交换关系",
    arguments=[OP_ARG, FIELD_ARG, arg("--n", type=int, required=True, help="股数 n"), TAIL_ARG],
)
def check_braid_relations(args):
    return verdict(check_coxeter(_load(args), args.n, args.tail), n=args.n)
