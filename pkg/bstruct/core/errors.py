"""异常定义"""
from typing import Optional


class BStructError(Exception):
    """工具包异常基类"""

    def __init__(self, message: str, path: Optional[str] = None, field: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.path = path
        self.field = field


class InputError(BStructError):
    """输入格式或取值错误"""


class DimensionMismatchError(InputError):
    """腿维数、阶数或载体不匹配"""


class SingularOperatorError(InputError):
    """方程要求可逆但算子奇异"""


class ResourceLimitError(BStructError):
    """实例超出文档规定的规模上限，显式拒绝"""


class DifferentialError(BStructError):
    """内部一致性失败（例如像不包含于核，即 d² ≠ 0）"""
