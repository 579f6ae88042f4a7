"""日志配置"""
import logging
import sys
from typing import Optional

LOGGER_NAME = "bstruct"

_handler: Optional[logging.Handler] = None


class _StderrHandler(logging.StreamHandler):
    """总是写到当前的 sys.stderr（测试或重定向之后也一样）"""

    def __init__(self):
        super().__init__()

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, value):
        pass


def get_logger(name: Optional[str] = None) -> logging.Logger:
    if not name:
        return logging.getLogger(LOGGER_NAME)
    return logging.getLogger(f"{LOGGER_NAME}.{name}")


def setup_logging(level: str = "WARNING") -> logging.Logger:
    """配置日志输出到 stderr（stdout 只保留 JSON 结果）"""
    global _handler
    logger = logging.getLogger(LOGGER_NAME)
    if _handler is None:
        _handler = _StderrHandler()
        _handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
        logger.addHandler(_handler)
        logger.propagate = False
    logger.setLevel(level.upper())
    return logger
