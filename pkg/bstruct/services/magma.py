"""有限 b-代数（b-magma）服务

表示、校验、枚举与分析满足 x(yz) = y(xz) 的有限二元运算表。
"""
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from multiprocessing import Pool
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from bstruct.core.errors import DimensionMismatchError, InputError, ResourceLimitError
from bstruct.core.logger import get_logger
from bstruct.core.settings import settings

logger = get_logger("magma")

Table = Tuple[Tuple[int, ...], ...]


class MagmaTable:
    """有限运算表，table[x][y] = xy，载体为 0..n-1"""

    def __init__(self, table: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(v) for v in row) for row in table)
        n = len(rows)
        if n < 1:
            raise InputError("运算表不能为空", field="table")
        for x, row in enumerate(rows):
            if len(row) != n:
                raise InputError(f"第 {x} 行长度为 {len(row)}，应为 {n}", field=f"table[{x}]")
            for y, v in enumerate(row):
                if not 0 <= v < n:
                    raise InputError(f"条目 ({x},{y}) = {v} 超出 0..{n - 1}", field=f"table[{x}][{y}]")
        self.n = n
        self.table = rows

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.table, dtype=np.int64)
        arr.setflags(write=False)
        return arr

    @cached_property
    def validated_b(self) -> bool:
        return check_b_axiom(self)

    def product(self, x: int, y: int) -> int:
        return self.table[x][y]

    def __eq__(self, other) -> bool:
        return isinstance(other, MagmaTable) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"MagmaTable({[list(r) for r in self.table]})"

    @classmethod
    def cyclic_group(cls, n: int) -> "MagmaTable":
        """Z/n 加法表"""
        return cls([[(x + y) % n for y in range(n)] for x in range(n)])

    @classmethod
    def right_projection(cls, n: int) -> "MagmaTable":
        return cls([[y for y in range(n)] for _ in range(n)])

    @classmethod
    def left_projection(cls, n: int) -> "MagmaTable":
        return cls([[x for _ in range(n)] for x in range(n)])


@dataclass(frozen=True)
class MagmaMap:
    source: MagmaTable
    target: MagmaTable
    map: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))
        if len(self.map) != self.source.n:
            raise DimensionMismatchError(
                f"映射长度 {len(self.map)} 与源载体大小 {self.source.n} 不符", field="map"
            )
        for x, v in enumerate(self.map):
            if not 0 <= v < self.target.n:
                raise DimensionMismatchError(f"f({x}) = {v} 超出目标载体", field=f"map[{x}]")

    @classmethod
    def identity(cls, t: MagmaTable) -> "MagmaMap":
        return cls(t, t, tuple(range(t.n)))

    @cached_property
    def validated_hom(self) -> bool:
        return is_homomorphism(self)


# ---------------------------------------------------------------------------
# 性质检查
# ---------------------------------------------------------------------------

def check_b_axiom(t: MagmaTable) -> bool:
    """x(yz) = y(xz) 对全部 n³ 个三元组成立"""
    T = t.array
    x, y, z = np.indices((t.n,) * 3)
    return bool(np.array_equal(T[x, T[y, z]], T[y, T[x, z]]))


def check_commutative(t: MagmaTable) -> bool:
    return bool(np.array_equal(t.array, t.array.T))


def check_associative(t: MagmaTable) -> bool:
    T = t.array
    x, y, z = np.indices((t.n,) * 3)
    return bool(np.array_equal(T[x, T[y, z]], T[T[x, y], z]))


def right_units(t: MagmaTable) -> List[int]:
    """全部满足 xe = x（对所有 x）的 e"""
    T = t.array
    elems = np.arange(t.n)
    return [e for e in range(t.n) if np.array_equal(T[:, e], elems)]


def left_units(t: MagmaTable) -> List[int]:
    T = t.array
    elems = np.arange(t.n)
    return [e for e in range(t.n) if np.array_equal(T[e, :], elems)]


def idempotents(t: MagmaTable) -> List[int]:
    return [e for e in range(t.n) if t.table[e][e] == e]


def is_abelian_group(t: MagmaTable) -> bool:
    """交换、结合、有单位元且每个元素可逆"""
    if not (check_commutative(t) and check_associative(t)):
        return False
    units = right_units(t)
    if not units:
        return False
    e = units[0]
    return all(any(t.table[x][y] == e for y in range(t.n)) for x in range(t.n))


def is_homomorphism(m: MagmaMap) -> bool:
    f = np.array(m.map, dtype=np.int64)
    S, T = m.source.array, m.target.array
    x, y = np.indices((m.source.n,) * 2)
    return bool(np.array_equal(f[S[x, y]], T[f[x], f[y]]))


def compose_maps(f: MagmaMap, g: MagmaMap) -> MagmaMap:
    """f ∘ g（先 g 后 f）"""
    if g.target != f.source:
        raise DimensionMismatchError("复合映射的中间载体不一致")
    return MagmaMap(g.source, f.target, tuple(f.map[v] for v in g.map))


# ---------------------------------------------------------------------------
# 同构与自同构
# ---------------------------------------------------------------------------

def relabel(t: MagmaTable, perm: Sequence[int]) -> MagmaTable:
    """按置换 σ 重标号：σ(x)σ(y) := σ(xy)"""
    p = np.asarray(perm, dtype=np.int64)
    inv = np.argsort(p)
    return MagmaTable(p[t.array[np.ix_(inv, inv)]].tolist())


def canonical_form(t: MagmaTable) -> MagmaTable:
    """全部载体置换下按行优先字典序最小的表"""
    T = t.array
    best: Optional[Table] = None
    for perm in permutations(range(t.n)):
        p = np.asarray(perm, dtype=np.int64)
        inv = np.argsort(p)
        cand = tuple(map(tuple, p[T[np.ix_(inv, inv)]].tolist()))
        if best is None or cand < best:
            best = cand
    return MagmaTable(best)


def are_isomorphic(s: MagmaTable, t: MagmaTable) -> bool:
    return s.n == t.n and canonical_form(s) == canonical_form(t)


def automorphisms(t: MagmaTable) -> List[Tuple[int, ...]]:
    """全部满足 σ(xy) = σ(x)σ(y) 的置换（n! 扫描）"""
    if t.n > settings.AUTOMORPHISM_SCAN_LIMIT:
        raise ResourceLimitError(
            f"载体大小 {t.n} 超过自同构扫描上限 {settings.AUTOMORPHISM_SCAN_LIMIT}"
        )
    T = t.array
    x, y = np.indices((t.n,) * 2)
    result = []
    for perm in permutations(range(t.n)):
        p = np.asarray(perm, dtype=np.int64)
        if np.array_equal(p[T[x, y]], T[p[x], p[y]]):
            result.append(perm)
    return result


# ---------------------------------------------------------------------------
# 回溯枚举
# ---------------------------------------------------------------------------

class _Backtracker:
    """按行优先顺序填表，只在某个三元组所需的四个格子都已填写时检查它"""

    def __init__(self, n: int):
        self.n = n
        self.cells = [-1] * (n * n)
        self.found: List[Table] = []

    def _violates(self, a: int, b: int) -> bool:
        n, c = self.n, self.cells

        def holds(x: int, y: int, z: int) -> bool:
            yz, xz = c[y * n + z], c[x * n + z]
            if yz < 0 or xz < 0:
                return True
            lhs, rhs = c[x * n + yz], c[y * n + xz]
            return lhs < 0 or rhs < 0 or lhs == rhs

        for k in range(n):
            # 格子 (a,b) 作为 (y,z) 或 (x,z)
            if not holds(k, a, b) or not holds(a, k, b):
                return True
        for idx in range(n * n):
            if c[idx] != b:
                continue
            p, q = divmod(idx, n)
            # 格子 (a,b) 作为 (x, yz) 或 (y, xz)
            if not holds(a, p, q) or not holds(p, a, q):
                return True
        return False

    def run(self, start: int = 0) -> List[Table]:
        n = self.n
        if start == n * n:
            self.found.append(tuple(tuple(self.cells[r * n:(r + 1) * n]) for r in range(n)))
            return self.found
        a, b = divmod(start, n)
        for v in range(n):
            self.cells[start] = v
            if not self._violates(a, b):
                self.run(start + 1)
        self.cells[start] = -1
        return self.found


def _enumerate_from_prefix(args: Tuple[int, int]) -> List[Table]:
    n, first = args
    bt = _Backtracker(n)
    bt.cells[0] = first
    if bt._violates(0, 0):
        return []
    return bt.run(1)


def enumerate_b_magmas(n: int, up_to_iso: bool = False, threads: Optional[int] = None) -> List[MagmaTable]:
    """回溯枚举全部 n 元 b-代数，可按同构类去重

    Args:
        n: 载体大小
        up_to_iso: 为 True 时每个同构类只保留规范代表元
        threads: 工作进程数（按第一个格子的取值划分）

    Returns:
        按行优先字典序排序的运算表列表
    """
    if n < 1:
        raise InputError(f"载体大小必须为正: {n}", field="n")
    if n > settings.ENUMERATION_SOFT_LIMIT:
        logger.warning(f"⚠️ n = {n} 超过软上限 {settings.ENUMERATION_SOFT_LIMIT}，枚举可能无法及时结束")
    workers = threads or settings.THREADS
    logger.info(f"🔄 开始枚举 {n} 元 b-代数（进程数 {workers}）")
    jobs = [(n, v) for v in range(n)]
    if workers > 1:
        with Pool(workers) as pool:
            chunks = pool.map(_enumerate_from_prefix, jobs)
    else:
        chunks = [_enumerate_from_prefix(job) for job in jobs]
    tables = sorted(t for chunk in chunks for t in chunk)
    if up_to_iso:
        classes: Dict[Table, MagmaTable] = {}
        for t in tables:
            canon = canonical_form(MagmaTable(t))
            classes.setdefault(canon.table, canon)
        result = [classes[k] for k in sorted(classes)]
    else:
        result = [MagmaTable(t) for t in tables]
    logger.info(f"✅ 枚举完成，共 {len(result)} 个运算表")
    return result
