"""命令路由

仿照 APIRouter 的写法：每个命令分组一个 CommandRouter（prefix 即名词），
处理函数用 @router.command(...) 注册，最后统一挂到 argparse 的子命令上。
"""
import argparse
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Sequence, Tuple

Handler = Callable[[argparse.Namespace], Any]


@dataclass
class Argument:
    flags: Tuple[str, ...]
    options: Dict[str, Any]


def arg(*flags: str, **options: Any) -> Argument:
    """子命令参数声明，参数与 add_argument 相同"""
    return Argument(tuple(flags), options)


@dataclass
class CommandSpec:
    name: str
    help: str
    arguments: List[Argument]
    handler: Handler


@dataclass
class CommandRouter:
    prefix: str
    help: str = ""
    commands: List[CommandSpec] = field(default_factory=list)

    def command(self, name: str, help: str = "", arguments: Sequence[Argument] = ()):
        def decorator(fn: Handler) -> Handler:
            self.commands.append(CommandSpec(name, help, list(arguments), fn))
            return fn

        return decorator

    def mount(self, subparsers, parents: Sequence[argparse.ArgumentParser]) -> argparse.ArgumentParser:
        group = subparsers.add_parser(self.prefix, help=self.help, description=self.help)
        actions = group.add_subparsers(dest="action", metavar="ACTION")
        actions.required = True
        for spec in self.commands:
            parser = actions.add_parser(spec.name, help=spec.help, description=spec.help, parents=list(parents))
            for a in spec.arguments:
                parser.add_argument(*a.flags, **a.options)
            parser.set_defaults(handler=spec.handler, command=f"{self.prefix} {spec.name}")
        return group
