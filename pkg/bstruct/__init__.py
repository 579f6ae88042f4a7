"""b-结构计算工具包：有限 b-代数、b-上同调与张量相干方程"""

__version__ = "1.0.0"
