"""b-上同调服务

上链复形 C^n(A,B) = Maps(A^n, B) 及其微分、上闭链/上边缘判定、上同调群、
规范变换、函子与变换条件、自同构轨道以及阿贝尔上同调比较映射。

约定：
    - 取值数组按行优先存储，第一个自变量为最高位
    - B 采用加法记号，乘法系数由调用方换成有限循环群
    - H¹ 取为 Z¹（不商去上边缘）
"""
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime, primitive_root

from bstruct.core.errors import DifferentialError, DimensionMismatchError, InputError, ResourceLimitError
from bstruct.core.logger import get_logger
from bstruct.core.settings import settings
from bstruct.services.magma import MagmaMap, MagmaTable, automorphisms, check_b_axiom, is_abelian_group, is_homomorphism
from bstruct.services.zlinalg import (
    AbelianGroup,
    ExactMatrix,
    GroupElement,
    QuotientGroup,
    Ring,
    kernel_mod,
    quotient_invariants,
    solve_in_span,
)

logger = get_logger("cochain")


class Cochain:
    """A^n → B 的稠密映射，values 形状为 (|A|^n, rank B)"""

    def __init__(self, magma: MagmaTable, degree: int, coeff: AbelianGroup, values):
        if degree < 1:
            raise InputError(f"上链次数必须 ≥ 1: {degree}", field="degree")
        size = magma.n ** degree
        if size * max(coeff.rank, 1) > settings.COCHAIN_SIZE_LIMIT:
            raise ResourceLimitError(
                f"上链规模 {size}×{coeff.rank} 超过上限 {settings.COCHAIN_SIZE_LIMIT}"
            )
        if coeff.rank == 0:
            arr = np.zeros((size, 0), dtype=coeff.dtype)
        else:
            arr = np.array(values, dtype=coeff.dtype)
            if arr.ndim == 1 and coeff.rank == 1 and arr.shape[0] == size:
                arr = arr.reshape(size, 1)
        if arr.shape != (size, coeff.rank):
            raise DimensionMismatchError(
                f"取值形状 {arr.shape} 与 ({size}, {coeff.rank}) 不符", field="values"
            )
        self.magma = magma
        self.degree = degree
        self.coeff = coeff
        self.values = coeff.reduce(arr)

    # -- 构造 ---------------------------------------------------------------

    @classmethod
    def zero(cls, magma: MagmaTable, degree: int, coeff: AbelianGroup) -> "Cochain":
        return cls(magma, degree, coeff, np.zeros((magma.n ** degree, coeff.rank), dtype=coeff.dtype))

    @classmethod
    def random(cls, magma: MagmaTable, degree: int, coeff: AbelianGroup, rng: np.random.Generator) -> "Cochain":
        size = magma.n ** degree
        cols = [
            rng.integers(0, m, size=size) if m > 0 else rng.integers(-5, 6, size=size)
            for m in coeff.moduli
        ]
        values = np.stack(cols, axis=1) if cols else np.zeros((size, 0), dtype=np.int64)
        if not coeff.is_finite:
            values = values.astype(object)
        return cls(magma, degree, coeff, values)

    @classmethod
    def from_function(
        cls, magma: MagmaTable, degree: int, coeff: AbelianGroup, fn: Callable[..., Sequence[int]]
    ) -> "Cochain":
        values = [list(fn(*args)) for args in product(range(magma.n), repeat=degree)]
        return cls(magma, degree, coeff, values)

    def with_values(self, values) -> "Cochain":
        return Cochain(self.magma, self.degree, self.coeff, values)

    # -- 访问 ---------------------------------------------------------------

    @property
    def tensor(self) -> np.ndarray:
        return self.values.reshape((self.magma.n,) * self.degree + (self.coeff.rank,))

    def value(self, *args: int) -> GroupElement:
        return self.coeff.element(tuple(self.tensor[tuple(args)]))

    def is_zero(self) -> bool:
        return not np.any(self.values != 0)

    def _check_compatible(self, other: "Cochain") -> None:
        if self.magma != other.magma or self.degree != other.degree or self.coeff != other.coeff:
            raise DimensionMismatchError("上链的载体、次数或系数群不一致")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check_compatible(other)
        return self.with_values(self.values + other.values)

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._check_compatible(other)
        return self.with_values(self.values - other.values)

    def __neg__(self) -> "Cochain":
        return self.with_values(-self.values)

    def scale(self, k: int) -> "Cochain":
        return self.with_values(self.values * k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (
            self.magma == other.magma
            and self.degree == other.degree
            and self.coeff == other.coeff
            and bool(np.array_equal(self.values, other.values))
        )

    def __repr__(self) -> str:
        return f"Cochain(degree={self.degree}, n={self.magma.n}, moduli={list(self.coeff.moduli)})"


# ---------------------------------------------------------------------------
# 微分
# ---------------------------------------------------------------------------

def differential(c: Cochain) -> Cochain:
    """d(c)(x₁,…,x_n,x) = Σᵢ (−1)ⁱ [c(…x̂ᵢ…, xᵢx) − c(…x̂ᵢ…, x)]；n = 1 时 d(p)(x,y) = p(x) − p(xy) + p(y)"""
    N, n = c.magma.n, c.degree
    T = c.magma.array
    C = c.tensor
    X = np.indices((N,) * (n + 1))
    if n == 1:
        x, y = X
        out = C[x] - C[T[x, y]] + C[y]
    else:
        last = X[n]
        out = np.zeros((N,) * (n + 1) + (c.coeff.rank,), dtype=c.coeff.dtype)
        for i in range(1, n + 1):
            others = tuple(X[j] for j in range(n) if j != i - 1)
            moved = C[others + (T[X[i - 1], last],)]
            fixed = C[others + (last,)]
            out = out + (moved - fixed) if i % 2 == 0 else out - (moved - fixed)
    return Cochain(c.magma, n + 1, c.coeff, out.reshape(-1, c.coeff.rank))


@lru_cache(maxsize=64)
def _differential_integer(table: Tuple[Tuple[int, ...], ...], n: int) -> np.ndarray:
    """d_n 的整数矩阵，行为 n 次基上链，第 j 行为 d(e_j)"""
    N = len(table)
    T = np.array(table, dtype=np.int64)
    X = np.indices((N,) * (n + 1))
    out_flat = np.arange(N ** (n + 1))
    D = np.zeros((N ** n, N ** (n + 1)), dtype=np.int64)
    shape_n = (N,) * n

    def src(*args):
        return np.ravel_multi_index(tuple(a.ravel() for a in args), shape_n)

    if n == 1:
        x, y = X
        np.add.at(D, (src(x), out_flat), 1)
        np.add.at(D, (src(T[x, y]), out_flat), -1)
        np.add.at(D, (src(y), out_flat), 1)
    else:
        last = X[n]
        for i in range(1, n + 1):
            sign = 1 if i % 2 == 0 else -1
            others = [X[j] for j in range(n) if j != i - 1]
            np.add.at(D, (src(*others, T[X[i - 1], last]), out_flat), sign)
            np.add.at(D, (src(*others, last), out_flat), -sign)
    D.setflags(write=False)
    return D


def differential_matrix(magma: MagmaTable, n: int) -> ExactMatrix:
    """d_n: C^n → C^{n+1} 的整数矩阵（行约定：c 的值向量右乘该矩阵得到 d(c)）"""
    if n < 1:
        raise InputError(f"微分次数必须 ≥ 1: {n}")
    _guard_size(magma, n + 1)
    return ExactMatrix(_differential_integer(magma.table, n))


def _guard_size(magma: MagmaTable, degree: int) -> None:
    if magma.n ** degree > settings.COCHAIN_SIZE_LIMIT:
        raise ResourceLimitError(
            f"|A|^{degree} = {magma.n ** degree} 超过上链规模上限 {settings.COCHAIN_SIZE_LIMIT}"
        )


def is_cocycle(c: Cochain) -> bool:
    return differential(c).is_zero()


def is_coboundary(c: Cochain) -> Optional[Cochain]:
    """返回见证 b 使 d(b) = c；不是上边缘时返回 None"""
    if c.degree < 2:
        raise InputError("上边缘判定要求次数 ≥ 2", field="degree")
    D = _differential_integer(c.magma.table, c.degree - 1)
    witness = np.zeros((D.shape[0], c.coeff.rank), dtype=object)
    for j, m in enumerate(c.coeff.moduli):
        if m == 1:
            continue
        x = solve_in_span(ExactMatrix(D, Ring.mod(m)), c.values[:, j])
        if x is None:
            return None
        witness[:, j] = x
    b = Cochain(c.magma, c.degree - 1, c.coeff, witness)
    if settings.PARANOID_CHECKS and differential(b) != c:
        raise DifferentialError("上边缘见证复核失败")
    return b


# ---------------------------------------------------------------------------
# 上同调群
# ---------------------------------------------------------------------------

@dataclass
class CohomologyResult:
    magma: MagmaTable
    coeff: AbelianGroup
    degree: int
    invariant_factors: List[int]
    representatives: List[Cochain]
    quotient: QuotientGroup = field(repr=False)

    @property
    def is_finite(self) -> bool:
        return all(d > 0 for d in self.invariant_factors)

    @property
    def order(self) -> Optional[int]:
        return self.quotient.order

    def class_of(self, c: Cochain) -> Tuple[int, ...]:
        """上闭链 c 的类在生成元下的坐标"""
        if c.magma != self.magma or c.degree != self.degree or c.coeff != self.coeff:
            raise DimensionMismatchError("上链与上同调群的载体、次数或系数不一致")
        if not is_cocycle(c):
            raise InputError("只有上闭链才有上同调类")
        return self.quotient.coordinates([int(v) for v in c.values.reshape(-1)])

    def element(self, coords: Sequence[int]) -> Cochain:
        """坐标对应的代表上闭链 Σ coords_i · rep_i"""
        if len(coords) != len(self.representatives):
            raise DimensionMismatchError("坐标个数与生成元个数不符")
        total = Cochain.zero(self.magma, self.degree, self.coeff)
        for k, rep in zip(coords, self.representatives):
            total = total + rep.scale(int(k))
        return total

    def elements(self) -> Iterator[Tuple[int, ...]]:
        if not self.is_finite:
            raise ResourceLimitError("上同调群含 Z 因子，无法枚举")
        if self.order > settings.ORBIT_ENUMERATION_LIMIT:
            raise ResourceLimitError(
                f"上同调群阶 {self.order} 超过枚举上限 {settings.ORBIT_ENUMERATION_LIMIT}"
            )
        return product(*(range(d) for d in self.invariant_factors))


def cohomology(A: MagmaTable, B: AbelianGroup, n: int) -> CohomologyResult:
    """H^n_b(A, B) = ker d_n / im d_{n−1}（n = 1 时为 Z¹）"""
    if n < 1:
        raise InputError(f"上同调次数必须 ≥ 1: {n}", field="degree")
    _guard_size(A, n + 1)
    size_n = A.n ** n
    k = B.rank
    total = size_n * k
    D_n = ExactMatrix(_differential_integer(A.table, n))
    D_prev = _differential_integer(A.table, n - 1) if n >= 2 else None

    def embed(row, j: int) -> List[int]:
        vec = [0] * total
        for idx, v in enumerate(row):
            vec[idx * k + j] = int(v)
        return vec

    kernel_rows: List[List[int]] = []
    image_rows: List[List[int]] = []
    for j, m in enumerate(B.moduli):
        if m == 1:
            continue
        for row in kernel_mod(D_n, m).to_rows():
            kernel_rows.append(embed(row, j))
        if D_prev is not None:
            for row in D_prev:
                image_rows.append(embed([int(v) % m if m else int(v) for v in row], j))

    quotient = quotient_invariants(
        ExactMatrix(kernel_rows, cols=total),
        ExactMatrix(image_rows, cols=total),
        AbelianGroup(tuple(B.moduli) * size_n),
    )
    reps = [Cochain(A, n, B, np.array(rep, dtype=object).reshape(size_n, k)) for rep in quotient.representatives]
    logger.info(f"✅ H^{n}_b 不变因子: {quotient.invariants}")
    return CohomologyResult(A, B, n, list(quotient.invariants), reps, quotient)


# ---------------------------------------------------------------------------
# 范畴 b-代数的条件
# ---------------------------------------------------------------------------

def _check_degree(c: Cochain, degree: int, name: str) -> None:
    if c.degree != degree:
        raise InputError(f"{name} 应为 {degree} 次上链，收到 {c.degree} 次", field=name)


def _vanishes(coeff: AbelianGroup, diff: np.ndarray) -> bool:
    return not np.any(coeff.reduce(diff) != 0)


def r_coherence_check(r: Cochain) -> bool:
    """r(y,z,xw) + r(x,z,w) + r(x,y,zw) = r(x,y,w) + r(x,z,yw) + r(y,z,w)"""
    _check_degree(r, 3, "r")
    R, T = r.tensor, r.magma.array
    x, y, z, w = np.indices((r.magma.n,) * 4)
    lhs = R[y, z, T[x, w]] + R[x, z, w] + R[x, y, T[z, w]]
    rhs = R[x, y, w] + R[x, z, T[y, w]] + R[y, z, w]
    return _vanishes(r.coeff, lhs - rhs)


def gauge_transform(r: Cochain, q: Cochain) -> Cochain:
    """r′(x,y,z) = r(x,y,z) + q(x,z) − q(x,yz) + q(y,xz) − q(y,z)"""
    _check_degree(r, 3, "r")
    _check_degree(q, 2, "q")
    if r.magma != q.magma or r.coeff != q.coeff:
        raise DimensionMismatchError("r 与 q 的载体或系数不一致")
    R, Q, T = r.tensor, q.tensor, r.magma.array
    x, y, z = np.indices((r.magma.n,) * 3)
    out = R + Q[x, z] - Q[x, T[y, z]] + Q[y, T[x, z]] - Q[y, z]
    return r.with_values(out.reshape(-1, r.coeff.rank))


def _precompose(c: Cochain, images: Sequence[int], source: MagmaTable) -> Cochain:
    """(f*c)(x₁,…,x_n) = c(f(x₁),…,f(x_n))"""
    f = np.asarray(images, dtype=np.int64)
    pulled = c.tensor[np.ix_(*([f] * c.degree))]
    return Cochain(source, c.degree, c.coeff, pulled.reshape(-1, c.coeff.rank))


def pullback(c: Cochain, sigma: Sequence[int]) -> Cochain:
    """自同构 σ 通过在每个自变量上预复合作用于上链"""
    if len(sigma) != c.magma.n:
        raise DimensionMismatchError("置换长度与载体大小不符")
    return _precompose(c, sigma, c.magma)


def _check_functor_inputs(f: MagmaMap, r: Cochain, r2: Cochain, q: Optional[Cochain]) -> None:
    _check_degree(r, 3, "r")
    _check_degree(r2, 3, "r2")
    if r.magma != f.source or r2.magma != f.target:
        raise DimensionMismatchError("r 应定义在源载体上，r′ 应定义在目标载体上")
    if r.coeff != r2.coeff:
        raise DimensionMismatchError("r 与 r′ 的系数群不一致")
    if q is not None:
        _check_degree(q, 2, "q")
        if q.magma != f.source or q.coeff != r.coeff:
            raise DimensionMismatchError("q 应为源载体上、系数与 r 相同的 2 次上链")
    if not is_homomorphism(f):
        raise InputError("f 不是 b-代数同态", field="map")


def functor_check(f: MagmaMap, r: Cochain, r2: Cochain, q: Cochain) -> bool:
    """r′(f(x),f(y),f(z)) + q(y,z) + q(x,yz) = q(x,z) + q(y,xz) + r(x,y,z)"""
    _check_functor_inputs(f, r, r2, q)
    R, Q, T = r.tensor, q.tensor, r.magma.array
    R2 = _precompose(r2, f.map, f.source).tensor
    x, y, z = np.indices((f.source.n,) * 3)
    lhs = R2 + Q[y, z] + Q[x, T[y, z]]
    rhs = Q[x, z] + Q[y, T[x, z]] + R
    return _vanishes(r.coeff, lhs - rhs)


def functor_solve(f: MagmaMap, r: Cochain, r2: Cochain) -> Optional[Cochain]:
    """求 q 使 functor_check 成立，即 d(q) = r − f*(r′)"""
    _check_functor_inputs(f, r, r2, None)
    return is_coboundary(r - _precompose(r2, f.map, f.source))


def transformation_check(p: Cochain, q: Cochain, q_tilde: Cochain) -> bool:
    """q(x,y) + p(x) + p(y) = p(xy) + q̃(x,y)；原文的 p(x,y) 读作 p(xy)"""
    _check_degree(p, 1, "p")
    _check_degree(q, 2, "q")
    _check_degree(q_tilde, 2, "q_tilde")
    if not (p.magma == q.magma == q_tilde.magma) or not (p.coeff == q.coeff == q_tilde.coeff):
        raise DimensionMismatchError("p、q、q̃ 的载体或系数不一致")
    P, Q, Qt, T = p.tensor, q.tensor, q_tilde.tensor, p.magma.array
    x, y = np.indices((p.magma.n,) * 2)
    return _vanishes(p.coeff, Q + P[x] + P[y] - P[T[x, y]] - Qt)


def transformation_solve(q: Cochain, q_tilde: Cochain) -> Optional[Cochain]:
    """求 p 使 q̃ − q = d(p)"""
    _check_degree(q, 2, "q")
    return is_coboundary(q_tilde - q)


# ---------------------------------------------------------------------------
# 自同构轨道
# ---------------------------------------------------------------------------

@dataclass
class Orbit:
    representative: Tuple[int, ...]
    members: List[Tuple[int, ...]]

    @property
    def size(self) -> int:
        return len(self.members)


def aut_orbits(A: MagmaTable, B: AbelianGroup, n: int, classes: CohomologyResult) -> List[Orbit]:
    """H^n 的元素在 Aut(A) 拉回作用下的轨道划分"""
    if classes.magma != A or classes.coeff != B or classes.degree != n:
        raise DimensionMismatchError("上同调结果与给定的 A、B、n 不一致")
    elements = list(classes.elements())
    auts = automorphisms(A)
    logger.info(f"🔄 计算 {len(elements)} 个上同调类在 {len(auts)} 个自同构下的轨道")
    images: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = {}
    for e in elements:
        rep = classes.element(e)
        images[e] = [classes.class_of(pullback(rep, sigma)) for sigma in auts]
    seen = set()
    orbits = []
    for e in elements:
        if e in seen:
            continue
        members = {e}
        queue = deque([e])
        while queue:
            cur = queue.popleft()
            for nxt in images[cur]:
                if nxt not in members:
                    members.add(nxt)
                    queue.append(nxt)
        seen |= members
        ordered = sorted(members)
        orbits.append(Orbit(ordered[0], ordered))
    return sorted(orbits, key=lambda o: o.representative)


# ---------------------------------------------------------------------------
# 带点 b-双范畴（4 次）
# ---------------------------------------------------------------------------

def s4_coherence_check(s: Cochain) -> bool:
    """s(x,y,z,v) + s(x,y,u,zv) + s(y,z,u,xv) + s(x,z,u,v)
    = s(y,z,u,v) + s(x,z,u,yv) + s(x,y,u,v) + s(x,y,z,uv)"""
    _check_degree(s, 4, "s")
    S, T = s.tensor, s.magma.array
    x, y, z, u, v = np.indices((s.magma.n,) * 5)
    lhs = S[x, y, z, v] + S[x, y, u, T[z, v]] + S[y, z, u, T[x, v]] + S[x, z, u, v]
    rhs = S[y, z, u, v] + S[x, z, u, T[y, v]] + S[x, y, u, v] + S[x, y, z, T[u, v]]
    return _vanishes(s.coeff, lhs - rhs)


def bicat_equiv(s: Cochain, s2: Cochain) -> Optional[Cochain]:
    """s′ − s 是 3 次上边缘时返回见证 r（s′ = s + d(r)）"""
    _check_degree(s, 4, "s")
    _check_degree(s2, 4, "s2")
    return is_coboundary(s2 - s)


def bicat_equiv_check(s: Cochain, s2: Cochain, r: Cochain) -> bool:
    """r(y,z,w) + r(x,z,yw) + r(x,y,w) + s(x,y,z,w) = s′(x,y,z,w) + r(x,y,zw) + r(x,z,w) + r(y,z,xw)"""
    _check_degree(s, 4, "s")
    _check_degree(s2, 4, "s2")
    _check_degree(r, 3, "r")
    if not (s.magma == s2.magma == r.magma) or not (s.coeff == s2.coeff == r.coeff):
        raise DimensionMismatchError("s、s′、r 的载体或系数不一致")
    S, S2, R, T = s.tensor, s2.tensor, r.tensor, s.magma.array
    x, y, z, w = np.indices((s.magma.n,) * 4)
    lhs = R[y, z, w] + R[x, z, T[y, w]] + R[x, y, w] + S
    rhs = S2 + R[x, y, T[z, w]] + R[x, z, w] + R[y, z, T[x, w]]
    return _vanishes(s.coeff, lhs - rhs)


# ---------------------------------------------------------------------------
# 阿贝尔上同调比较映射
# ---------------------------------------------------------------------------

def _require_abelian_group(A: MagmaTable) -> None:
    if not is_abelian_group(A):
        raise InputError("比较映射要求 A 的运算表是阿贝尔群", field="magma")


def comparison_low_degree(f: Cochain) -> Cochain:
    """1、2 次比较映射是上链上的恒等映射"""
    _require_abelian_group(f.magma)
    if f.degree not in (1, 2):
        raise InputError("低次比较映射只定义在 1、2 次", field="degree")
    return f.with_values(f.values)


def comparison_from_abelian(a: Cochain, c: Cochain) -> Cochain:
    """b(x,y,z) = a(x,y,z) + c(x,y) − a(y,x,z)"""
    _check_degree(a, 3, "a")
    _check_degree(c, 2, "c")
    if a.magma != c.magma or a.coeff != c.coeff:
        raise DimensionMismatchError("a 与 c 的载体或系数不一致")
    _require_abelian_group(a.magma)
    A3, C2 = a.tensor, c.tensor
    out = A3 + C2[:, :, None, :] - A3.transpose(1, 0, 2, 3)
    return a.with_values(out.reshape(-1, a.coeff.rank))


def abelian_cocycle_check(a: Cochain, c: Cochain) -> bool:
    """经典阿贝尔 3-上闭链条件：五边形恒等式与两个六边形恒等式

    α: x(yz) → (xy)z 的方向下，
        a(x,y,z+w) + a(x+y,z,w) = a(y,z,w) + a(x,y+z,w) + a(x,y,z)
        c(x,y+z) = a(x,y,z) + c(x,y) − a(y,x,z) + c(x,z) + a(y,z,x)
        c(x+y,z) = −a(x,y,z) + c(y,z) + a(x,z,y) + c(x,z) − a(z,x,y)
    """
    _check_degree(a, 3, "a")
    _check_degree(c, 2, "c")
    _require_abelian_group(a.magma)
    A3, C2, T = a.tensor, c.tensor, a.magma.array
    x, y, z, w = np.indices((a.magma.n,) * 4)
    pentagon = A3[x, y, T[z, w]] + A3[T[x, y], z, w] - A3[y, z, w] - A3[x, T[y, z], w] - A3[x, y, z]
    x, y, z = np.indices((a.magma.n,) * 3)
    hex1 = C2[x, T[y, z]] - (A3[x, y, z] + C2[x, y] - A3[y, x, z] + C2[x, z] + A3[y, z, x])
    hex2 = C2[T[x, y], z] - (-A3[x, y, z] + C2[y, z] + A3[x, z, y] + C2[x, z] - A3[z, x, y])
    return all(_vanishes(a.coeff, part) for part in (pentagon, hex1, hex2))


def abelian_shift(a: Cochain, c: Cochain, g: Cochain) -> Tuple[Cochain, Cochain]:
    """按 2 次上链 g 平移：(a + δg, c + g(x,y) − g(y,x))"""
    _check_degree(g, 2, "g")
    _require_abelian_group(a.magma)
    G, T = g.tensor, a.magma.array
    x, y, z = np.indices((a.magma.n,) * 3)
    delta = G[y, z] - G[T[x, y], z] + G[x, T[y, z]] - G[x, y]
    antisym = G - G.transpose(1, 0, 2)
    return (
        a.with_values(a.values + delta.reshape(-1, a.coeff.rank)),
        c.with_values(c.values + antisym.reshape(-1, c.coeff.rank)),
    )


def _abelian_condition_matrix(A: MagmaTable) -> np.ndarray:
    """变量为 (a, c) 的全部取值，列为三组恒等式；x·E = 0 即条件成立"""
    N = A.n
    T = A.table
    n_a = N ** 3

    def ia(x, y, z):
        return (x * N + y) * N + z

    def ic(x, y):
        return n_a + x * N + y

    columns = []
    for x, y, z, w in product(range(N), repeat=4):
        col: Dict[int, int] = {}
        for idx, sign in (
            (ia(x, y, T[z][w]), 1), (ia(T[x][y], z, w), 1),
            (ia(y, z, w), -1), (ia(x, T[y][z], w), -1), (ia(x, y, z), -1),
        ):
            col[idx] = col.get(idx, 0) + sign
        columns.append(col)
    for x, y, z in product(range(N), repeat=3):
        col = {}
        for idx, sign in (
            (ic(x, T[y][z]), 1), (ia(x, y, z), -1), (ic(x, y), -1),
            (ia(y, x, z), 1), (ic(x, z), -1), (ia(y, z, x), -1),
        ):
            col[idx] = col.get(idx, 0) + sign
        columns.append(col)
        col = {}
        for idx, sign in (
            (ic(T[x][y], z), 1), (ia(x, y, z), 1), (ic(y, z), -1),
            (ia(x, z, y), -1), (ic(x, z), -1), (ia(z, x, y), 1),
        ):
            col[idx] = col.get(idx, 0) + sign
        columns.append(col)
    E = np.zeros((n_a + N * N, len(columns)), dtype=np.int64)
    for j, col in enumerate(columns):
        for idx, v in col.items():
            E[idx, j] += v
    return E


def enumerate_abelian_cocycles(A: MagmaTable, m: int) -> List[Tuple[Cochain, Cochain]]:
    """Z/m 系数下全部满足阿贝尔 3-上闭链条件的 (a, c)"""
    _require_abelian_group(A)
    if m < 1:
        raise InputError("枚举要求有限循环系数 Z/m", field="coeff")
    B = AbelianGroup((m,))
    gens = [tuple(int(v) % m for v in row) for row in kernel_mod(ExactMatrix(_abelian_condition_matrix(A)), m).to_rows()]
    width = A.n ** 3 + A.n ** 2
    zero = (0,) * width
    found = {zero}
    queue = deque([zero])
    while queue:
        cur = queue.popleft()
        for g in gens:
            nxt = tuple((a + b) % m for a, b in zip(cur, g))
            if nxt not in found:
                found.add(nxt)
                if len(found) > settings.SUBGROUP_ENUMERATION_LIMIT:
                    raise ResourceLimitError(f"解空间超过枚举上限 {settings.SUBGROUP_ENUMERATION_LIMIT}")
                queue.append(nxt)
    n_a = A.n ** 3
    result = []
    for vec in sorted(found):
        a = Cochain(A, 3, B, np.array(vec[:n_a], dtype=np.int64).reshape(-1, 1))
        c = Cochain(A, 2, B, np.array(vec[n_a:], dtype=np.int64).reshape(-1, 1))
        result.append((a, c))
    logger.info(f"✅ 共 {len(result)} 个阿贝尔 3-上闭链 (a, c)")
    return result


# ---------------------------------------------------------------------------
# 扭曲 b-代数
# ---------------------------------------------------------------------------

def twisted_algebra_is_b(q: Cochain, p: int) -> bool:
    """扭曲代数 e_x·e_y = g^{q(x,y)} e_{xy}（g 为 F_p 的本原根）在全部基三元组上满足 b-公理

    q 的系数群必须是 Z/(p−1)，即 F_p^× 的加法形式。
    """
    _check_degree(q, 2, "q")
    if not isprime(p):
        raise InputError(f"p 必须是素数: {p}", field="prime")
    if q.coeff != AbelianGroup((p - 1,)):
        raise InputError(f"q 的系数应为 Z/{p - 1}", field="coeff")
    if not check_b_axiom(q.magma):
        return False
    g = int(primitive_root(p))
    powers = np.array([pow(g, e, p) for e in range(max(p - 1, 1))], dtype=np.int64)
    W = powers[q.tensor[..., 0]]
    T = q.magma.array
    x, y, z = np.indices((q.magma.n,) * 3)
    lhs = (W[y, z] * W[x, T[y, z]]) % p
    rhs = (W[x, z] * W[y, T[x, z]]) % p
    return bool(np.array_equal(lhs, rhs))
