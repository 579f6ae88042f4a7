"""穷举搜索服务

在桌面规模上穷举集合论/矩阵 Yang-Baxter 解、预单位标量对、置换型 (L, Z) 解
以及 b-代数。每个输出的解都会再经过公开的检查函数复核。
"""
import math
from dataclasses import dataclass, field
from itertools import permutations
from multiprocessing import Pool
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from bstruct.core.errors import InputError, ResourceLimitError
from bstruct.core.logger import get_logger
from bstruct.core.settings import settings
from bstruct.services.magma import enumerate_b_magmas
from bstruct.services.tensorops import (
    FieldSpec,
    LegOperator,
    check_hexagon,
    check_lze,
    check_preunital,
    check_tetrahedron,
)

logger = get_logger("search")

SEARCH_KINDS = ("set_theoretic_ybe", "matrix_ybe", "preunital_pair", "lze_pair", "b_magma")

_CHUNK = 20_000


@dataclass
class SearchTask:
    kind: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    limits: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in SEARCH_KINDS:
            raise InputError(f"未知的搜索类型: {self.kind}", field="kind")
        self.limits.setdefault("candidate_cap", settings.SEARCH_CANDIDATE_CAP)


@dataclass
class Solution:
    encoding: Dict[str, Any]
    operators: Dict[str, LegOperator] = field(default_factory=dict)


@dataclass
class SearchResult:
    task: SearchTask
    solutions: List[Solution]
    candidates_scanned: int
    exhaustive: bool
    restriction: Optional[str] = None

    @property
    def count(self) -> int:
        return len(self.solutions)

    def summary(self) -> Dict[str, Any]:
        return {
            "task": {"kind": self.task.kind, "parameters": self.task.parameters, "limits": self.task.limits},
            "count": self.count,
            "candidates_scanned": self.candidates_scanned,
            "exhaustive": self.exhaustive,
            "restriction": self.restriction,
        }


# ---------------------------------------------------------------------------
# 辅助函数
# ---------------------------------------------------------------------------

def _guard(count: int, what: str) -> None:
    if count > settings.SEARCH_CANDIDATE_CAP:
        raise ResourceLimitError(f"{what} 的候选数 {count} 超过上限 {settings.SEARCH_CANDIDATE_CAP}")


def _parallel_map(fn: Callable, jobs: Sequence, threads: Optional[int]) -> List:
    workers = threads or settings.THREADS
    if workers > 1 and len(jobs) > 1:
        with Pool(workers) as pool:
            return pool.map(fn, jobs)
    return [fn(job) for job in jobs]


def _chunks(arr: np.ndarray) -> List[np.ndarray]:
    return [arr[i:i + _CHUNK] for i in range(0, len(arr), _CHUNK)] or [arr]


def _apply_perm_batch(perms: np.ndarray, positions: Sequence[int], dims: Sequence[int], idx: np.ndarray) -> np.ndarray:
    """把一批置换算子放在 positions 上，作用到基指标 idx（形状 (K, P)）上"""
    n = len(dims)
    strides = [math.prod(dims[i + 1:]) for i in range(n)]
    digits = [(idx // strides[i]) % dims[i] for i in range(n)]
    local = np.zeros_like(idx)
    for p in positions:
        local = local * dims[p - 1] + digits[p - 1]
    if perms.shape[0] == 1:
        new_local = perms[0][local]
    else:
        new_local = np.take_along_axis(perms, local, axis=1)
    out = idx.copy()
    for p in reversed(positions):
        d = dims[p - 1]
        out += (new_local % d - digits[p - 1]) * strides[p - 1]
        new_local = new_local // d
    return out


def _evaluate_word(word: Sequence[Tuple[np.ndarray, Sequence[int]]], dims: Sequence[int], batch: int) -> np.ndarray:
    points = math.prod(dims)
    idx = np.broadcast_to(np.arange(points, dtype=np.int64), (batch, points)).copy()
    for perms, positions in reversed(word):
        idx = _apply_perm_batch(perms, positions, dims, idx)
    return idx


def _all_permutations(size: int) -> np.ndarray:
    return np.array(list(permutations(range(size))), dtype=np.int64).reshape(-1, size)


def _default_field(field_spec: Optional[FieldSpec]) -> FieldSpec:
    return field_spec or FieldSpec(settings.DEFAULT_PRIME)


# ---------------------------------------------------------------------------
# 集合论 Yang-Baxter
# ---------------------------------------------------------------------------

def _scan_set_ybe(args: Tuple[np.ndarray, int]) -> np.ndarray:
    chunk, n = args
    dims = (n, n, n)
    lhs = _evaluate_word([(chunk, (1, 2)), (chunk, (2, 3)), (chunk, (1, 2))], dims, len(chunk))
    rhs = _evaluate_word([(chunk, (2, 3)), (chunk, (1, 2)), (chunk, (2, 3))], dims, len(chunk))
    return chunk[np.all(lhs == rhs, axis=1)]


def search_settheoretic_ybe(
    n: int, field_spec: Optional[FieldSpec] = None, threads: Optional[int] = None
) -> SearchResult:
    """全部双射 r: S×S → S×S，其置换矩阵满足六边形方程"""
    if n < 1 or n > settings.YBE_SET_MAX_N:
        raise ResourceLimitError(f"集合论 Yang-Baxter 穷举只支持 1 ≤ n ≤ {settings.YBE_SET_MAX_N}，收到 {n}")
    total = math.factorial(n * n)
    _guard(total, "集合论 Yang-Baxter")
    fs = _default_field(field_spec)
    logger.info(f"🔄 扫描 {total} 个双射（n = {n}）")
    candidates = _all_permutations(n * n)
    found = _parallel_map(_scan_set_ybe, [(c, n) for c in _chunks(candidates)], threads)
    images = sorted(tuple(int(v) for v in row) for part in found for row in part)
    solutions = []
    for img in images:
        op = LegOperator.permutation(fs, img, (n, n))
        if not check_hexagon(op):
            raise InputError(f"搜索结果未通过六边形复核: {img}")
        pairs = [[v // n, v % n] for v in img]
        solutions.append(Solution({"images": list(img), "pairs": pairs}, {"B": op}))
    logger.info(f"✅ 找到 {len(solutions)} 个集合论解")
    task = SearchTask("set_theoretic_ybe", {"n": n, "field": fs.label})
    return SearchResult(task, solutions, total, True, "permutation matrices of bijections of S×S")


# ---------------------------------------------------------------------------
# 矩阵 Yang-Baxter
# ---------------------------------------------------------------------------

def _batched_det_mod(mats: np.ndarray, p: int) -> np.ndarray:
    """Leibniz 展开的整数行列式（批量），再模 p"""
    m = mats.shape[1]
    total = np.zeros(mats.shape[0], dtype=np.int64)
    rows = np.arange(m)
    for perm in permutations(range(m)):
        inversions = sum(1 for i in range(m) for j in range(i + 1, m) if perm[i] > perm[j])
        term = np.prod(mats[:, rows, list(perm)], axis=1)
        total = total + (-term if inversions % 2 else term)
    return total % p


def _scan_matrix_ybe(args: Tuple[int, int, int, int]) -> List[int]:
    start, stop, p, d = args
    m = d * d
    n_entries = m * m
    codes = np.arange(start, stop, dtype=np.int64)
    weights = p ** np.arange(n_entries - 1, -1, -1, dtype=np.int64)
    mats = ((codes[:, None] // weights[None, :]) % p).reshape(-1, m, m)
    invertible = _batched_det_mod(mats, p) != 0
    B4 = mats.reshape(-1, d, d, d, d)
    eye = np.eye(d, dtype=np.int64)
    K = len(codes)
    B12 = np.einsum("kabxy,cz->kabcxyz", B4, eye).reshape(K, d ** 3, d ** 3)
    B23 = np.einsum("ax,kbcyz->kabcxyz", eye, B4).reshape(K, d ** 3, d ** 3)
    lhs = (B12 @ ((B23 @ B12) % p)) % p
    rhs = (B23 @ ((B12 @ B23) % p)) % p
    ok = invertible & np.all((lhs == rhs).reshape(K, -1), axis=1)
    return [int(c) for c in codes[ok]]


def search_matrix_ybe(
    field_spec: Optional[FieldSpec] = None, dim: int = 2, threads: Optional[int] = None
) -> SearchResult:
    """全部可逆的 (dim²)×(dim²) 矩阵 B 满足 B₁₂B₂₃B₁₂ = B₂₃B₁₂B₂₃"""
    fs = field_spec or FieldSpec(2)
    if fs.is_rational:
        raise InputError("矩阵穷举只在素域上进行", field="field")
    if dim < 1 or dim > 2:
        raise ResourceLimitError(f"矩阵穷举只支持 dim ≤ 2，收到 {dim}")
    p = fs.prime
    n_entries = dim ** 4
    total = p ** n_entries
    _guard(total, "矩阵 Yang-Baxter")
    logger.info(f"🔄 扫描 {total} 个 {dim * dim}×{dim * dim} 矩阵（{fs.label}）")
    jobs = [(s, min(total, s + _CHUNK), p, dim) for s in range(0, total, _CHUNK)]
    codes = sorted(c for part in _parallel_map(_scan_matrix_ybe, jobs, threads) for c in part)
    solutions = []
    m = dim * dim
    for code in codes:
        digits = [(code // p ** (n_entries - 1 - e)) % p for e in range(n_entries)]
        rows = [digits[i * m:(i + 1) * m] for i in range(m)]
        op = LegOperator(fs, (dim, dim), rows)
        if not check_hexagon(op):
            raise InputError(f"搜索结果未通过六边形复核: {code}")
        solutions.append(Solution({"code": code}, {"B": op}))
    logger.info(f"✅ 找到 {len(solutions)} 个可逆矩阵解")
    task = SearchTask("matrix_ybe", {"field": fs.label, "dim": dim})
    return SearchResult(task, solutions, total, True, "invertible matrices only")


# ---------------------------------------------------------------------------
# 预单位标量对
# ---------------------------------------------------------------------------

def search_preunital(field_spec: Optional[FieldSpec] = None, dim: int = 1) -> SearchResult:
    """一维情形下全部满足预单位方程的标量对 (B, C)"""
    fs = _default_field(field_spec)
    if fs.is_rational:
        raise InputError("标量扫描只在素域上进行", field="field")
    if dim != 1:
        raise ResourceLimitError("预单位搜索只支持 dim = 1")
    p = fs.prime
    total = (p - 1) ** 2
    _guard(total, "预单位标量对")
    solutions = []
    for b in range(1, p):
        for c in range(1, p):
            B = LegOperator.scalar(fs, b, (1, 1))
            C = LegOperator.scalar(fs, c, (1,))
            if check_preunital(B, C):
                solutions.append(Solution({"B": b, "C": c}, {"B": B, "C": C}))
    task = SearchTask("preunital_pair", {"field": fs.label, "dim": dim})
    return SearchResult(task, solutions, total, True, "scalars (dim 1)")


# ---------------------------------------------------------------------------
# 置换型 (L, Z)
# ---------------------------------------------------------------------------

def _tetrahedron_word(perms: np.ndarray):
    return [(perms, (1, 2, 4)), (perms, (1, 3, 5)), (perms, (2, 3, 6)), (perms, (4, 5, 6))]


def _scan_tetrahedron(args: Tuple[np.ndarray, int]) -> np.ndarray:
    chunk, b = args
    word = _tetrahedron_word(chunk)
    dims = (b,) * 6
    lhs = _evaluate_word(word, dims, len(chunk))
    rhs = _evaluate_word(list(reversed(word)), dims, len(chunk))
    return chunk[np.all(lhs == rhs, axis=1)]


def _scan_lze(args: Tuple[np.ndarray, np.ndarray, int, int]) -> np.ndarray:
    chunk, z, c, b = args
    zs = z.reshape(1, -1)
    word = [(chunk, (1, 2, 4)), (chunk, (1, 3, 5)), (chunk, (2, 3, 6)), (zs, (4, 5, 6))]
    dims = (c, c, c, b, b, b)
    lhs = _evaluate_word(word, dims, len(chunk))
    rhs = _evaluate_word(list(reversed(word)), dims, len(chunk))
    return chunk[np.all(lhs == rhs, axis=1)]


def permutation_images(op: LegOperator) -> Optional[List[int]]:
    """置换矩阵对应的基双射；不是置换矩阵时返回 None"""
    mat = op.entries
    if not op.is_square:
        return None
    images = []
    for j in range(mat.shape[1]):
        col = mat[:, j]
        nz = [i for i in range(len(col)) if col[i] != 0]
        if len(nz) != 1 or col[nz[0]] != 1:
            return None
        images.append(nz[0])
    return images if sorted(images) == list(range(len(images))) else None


def search_lze(
    field_spec: Optional[FieldSpec] = None,
    c: int = 1,
    b: int = 1,
    z: Optional[LegOperator] = None,
    threads: Optional[int] = None,
) -> SearchResult:
    """置换型 (L, Z)：Z 满足四面体方程且 (L, Z) 满足 RLLL 方程

    先扫描全部置换型 Z，再按实际找到的 Z 个数检查 RLLL 的候选上限；
    也可以直接固定 Z。
    """
    fs = field_spec or FieldSpec(2)
    if not (1 <= c <= 2 and 1 <= b <= 2):
        raise ResourceLimitError(f"置换型搜索只支持 (c, b) ≤ (2, 2)，收到 ({c}, {b})")
    l_count = math.factorial(c * c * b)
    if z is not None:
        z_images = permutation_images(z)
        if z_images is None or z.leg_dims != (b, b, b):
            raise InputError("固定的 Z 必须是 (b, b, b) 腿上的置换矩阵", field="z")
        z_candidates = np.array([z_images], dtype=np.int64)
    else:
        _guard(math.factorial(b ** 3), "置换型四面体")
        z_candidates = _all_permutations(b ** 3)
    logger.info(f"🔄 扫描 {len(z_candidates)} 个 Z 候选与每个 {l_count} 个 L 候选（c = {c}, b = {b}）")

    z_found = _parallel_map(_scan_tetrahedron, [(ch, b) for ch in _chunks(z_candidates)], threads)
    z_solutions = sorted(tuple(int(v) for v in row) for part in z_found for row in part)
    logger.info(f"🔄 四面体扫描得到 {len(z_solutions)} 个 Z")
    _guard(len(z_candidates) + len(z_solutions) * l_count, f"置换型 RLLL（{len(z_solutions)} 个四面体解）")

    l_candidates = _all_permutations(c * c * b)
    jobs = [(ch, np.array(z_img, dtype=np.int64), c, b) for z_img in z_solutions for ch in _chunks(l_candidates)]
    pairs = []
    for job, part in zip(jobs, _parallel_map(_scan_lze, jobs, threads)):
        z_img = tuple(int(v) for v in job[1])
        pairs.extend((z_img, tuple(int(v) for v in row)) for row in part)
    pairs.sort()

    solutions = []
    for z_img, l_img in pairs:
        Z = LegOperator.permutation(fs, z_img, (b, b, b))
        L = LegOperator.permutation(fs, l_img, (c, c, b))
        if not (check_tetrahedron(Z) and check_lze(L, Z)):
            raise InputError(f"搜索结果未通过复核: L = {l_img}, Z = {z_img}")
        solutions.append(Solution({"L": list(l_img), "Z": list(z_img)}, {"L": L, "Z": Z}))
    scanned = len(z_candidates) + len(z_solutions) * l_count
    restriction = "permutation-type L and Z" + (" with fixed Z" if z is not None else "")
    logger.info(f"✅ 找到 {len(solutions)} 个 (L, Z) 解")
    task = SearchTask("lze_pair", {"field": fs.label, "c": c, "b": b, "fixed_z": z is not None})
    return SearchResult(task, solutions, scanned, True, restriction)


# ---------------------------------------------------------------------------
# b-代数
# ---------------------------------------------------------------------------

def search_b_magmas(n: int, up_to_iso: bool = True, threads: Optional[int] = None) -> SearchResult:
    tables = enumerate_b_magmas(n, up_to_iso, threads)
    solutions = [Solution({"n": t.n, "table": [list(r) for r in t.table]}) for t in tables]
    task = SearchTask("b_magma", {"n": n, "up_to_iso": up_to_iso})
    scanned = n ** (n * n)
    return SearchResult(task, solutions, scanned, True, "backtracking with pruning")
