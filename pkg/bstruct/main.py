"""bstruct 命令行主入口"""
import argparse
import re
import sys
from typing import List, Optional

from pydantic import ValidationError

from bstruct import __version__
from bstruct.commands import braid, cohomology, convert, equations, magma, pointed, search
from bstruct.core.errors import BStructError, DifferentialError, InputError, ResourceLimitError
from bstruct.core.logger import get_logger, setup_logging
from bstruct.core.settings import Settings, apply_settings, load_settings, settings
from bstruct.schemas.response import ErrorResponse
from bstruct.services.persistence import data_persistence

logger = get_logger()

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2

ROUTERS = [
    magma.router,
    cohomology.router,
    pointed.router,
    equations.router,
    braid.router,
    search.router,
    convert.router,
]


class CommandLineParser(argparse.ArgumentParser):
    """参数错误不再直接退出，而是抛出 InputError，由 run() 输出 JSON 错误信封"""

    def error(self, message: str):
        match = re.match(r"argument ([^:/]+)(?:/[^:]+)?: ", message) or re.match(
            r"the following arguments are required: ([^,\s]+)", message
        )
        field = match.group(1).lstrip("-").lower() if match else None
        raise InputError(f"命令行参数错误: {message}", field=field)


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="结果写入文件而不是 stdout")
    common.add_argument("--threads", type=int, default=None, help="工作进程数")
    common.add_argument("--config", default=None, help="JSON 配置文件")
    common.add_argument("--seed", type=int, default=None, help="随机向量验证模式的种子")
    common.add_argument("--full", action="store_true", help="强制在全部基向量上验证")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="输出 INFO 日志")
    verbosity.add_argument("--quiet", action="store_true", help="只输出错误日志")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = CommandLineParser(prog="bstruct", description="b-代数、b-上同调与 b-结构方程工具包")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    nouns = parser.add_subparsers(dest="noun", metavar="COMMAND")
    nouns.required = True
    common = _common_flags()
    for router in ROUTERS:
        router.mount(nouns, [common])
    return parser


def _configure(args: argparse.Namespace) -> None:
    """默认值 < 配置文件 < 命令行参数"""
    if args.config:
        apply_settings(load_settings(args.config))
    level = "INFO" if args.verbose else "ERROR" if args.quiet else None
    apply_settings(THREADS=args.threads, SEED=args.seed, LOG_LEVEL=level)
    setup_logging(settings.LOG_LEVEL)


def _emit_error(kind: str, exc: Exception, path: Optional[str] = None, field: Optional[str] = None) -> None:
    envelope = ErrorResponse(error=kind, message=str(exc), path=path, field=field)
    sys.stdout.write(data_persistence.dumps(envelope) + "\n")


def run(argv: Optional[List[str]] = None) -> int:
    """执行一条命令并返回退出码：0 成功，2 输入错误或显式拒绝，1 内部错误"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    except InputError as exc:
        _emit_error(type(exc).__name__, exc, field=exc.field)
        return EXIT_INPUT

    snapshot = Settings.model_validate(settings.model_dump())
    try:
        _configure(args)
        logger.info(f"🔄 执行命令: {args.command}")
        response = args.handler(args)
        data_persistence.write_text(data_persistence.dumps(response), args.out)
        logger.info(f"✅ 命令完成: {args.command}")
        return EXIT_OK
    except (InputError, ResourceLimitError) as exc:
        logger.warning(f"⚠️ {exc.message}")
        _emit_error(type(exc).__name__, exc, exc.path, exc.field)
        return EXIT_INPUT
    except ValidationError as exc:
        first = exc.errors()[0]
        field = ".".join(str(p) for p in first.get("loc", ()))
        logger.warning(f"⚠️ 数据校验失败: {first.get('msg')}")
        _emit_error("ValidationError", exc, field=field)
        return EXIT_INPUT
    except DifferentialError as exc:
        logger.error(f"❌ 内部一致性失败: {exc.message}")
        _emit_error(type(exc).__name__, exc, exc.path, exc.field)
        return EXIT_INTERNAL
    except BStructError as exc:
        logger.error(f"❌ {exc.message}")
        _emit_error(type(exc).__name__, exc, exc.path, exc.field)
        return EXIT_INTERNAL
    except Exception as exc:
        logger.exception(f"❌ 未预期的错误: {exc}")
        _emit_error("InternalError", exc)
        return EXIT_INTERNAL
    finally:
        apply_settings(snapshot)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
