"""张量腿算子服务

有限维张量积上的精确算子，以及五边形、六边形、预单位、四面体、S-关系、
RLLL、M-关系、辫字等全部矩阵层面的相干方程与它们之间的换算。

约定：
    - 基指标按行优先排列，第 1 条腿为最高位
    - 算子字从右向左作用（最右边的因子最先作用）
    - 放置通过 reshape/transpose 的指标运算实现，不构造置换矩阵
    - 反向下标 P_ji 读作翻转共轭 t P_ij t
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import isprime

from bstruct.core.errors import DimensionMismatchError, InputError, SingularOperatorError
from bstruct.core.logger import get_logger
from bstruct.core.settings import settings

logger = get_logger("tensorops")

REVERSED_PLACEMENT_READING = "flip-conjugation: P_ji = t_ij P_ij t_ij"

# int64 下 (p−1)² · 4096 不会溢出的素数上界
_SMALL_PRIME_BOUND = 1 << 24


# ---------------------------------------------------------------------------
# 域
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """有理数域（prime 为 None）或素域 F_p"""

    prime: Optional[int] = None

    def __post_init__(self):
        if self.prime is not None:
            p = int(self.prime)
            if p > 2 ** 31 or not isprime(p):
                raise InputError(f"域特征必须是不超过 2³¹ 的素数: {p}", field="prime")
            object.__setattr__(self, "prime", p)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @property
    def is_rational(self) -> bool:
        return self.prime is None

    @property
    def dtype(self):
        if self.is_rational or self.prime >= _SMALL_PRIME_BOUND:
            return object
        return np.int64

    @property
    def label(self) -> str:
        return "Q" if self.is_rational else f"F_{self.prime}"

    def scalar(self, value) -> Union[int, Fraction]:
        if self.is_rational:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.prime == 0:
                raise InputError(f"{value} 在 F_{self.prime} 中无定义")
            return value.numerator * pow(value.denominator, -1, self.prime) % self.prime
        return int(value) % self.prime

    def array(self, data) -> np.ndarray:
        """把嵌套列表转换为本域的数组并约化"""
        raw = np.array(data, dtype=object)
        flat = [self.scalar(x) for x in raw.ravel()]
        out = np.empty(len(flat), dtype=object)
        out[:] = flat
        return out.reshape(raw.shape).astype(self.dtype)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        if self.is_rational:
            return arr
        return arr % self.prime

    def eye(self, n: int) -> np.ndarray:
        out = np.zeros((n, n), dtype=self.dtype)
        for i in range(n):
            out[i, i] = 1
        if self.is_rational:
            out = self.array(out)
        return out

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        out = np.zeros((rows, cols), dtype=self.dtype)
        return self.array(out) if self.is_rational else out

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        return self.reduce(a @ b)

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        return a.shape == b.shape and bool(np.all(a == b))

    def _inv_scalar(self, x):
        if self.is_rational:
            return Fraction(1) / x
        return pow(int(x), -1, self.prime)

    def row_reduce(self, mat: np.ndarray, augment: Optional[np.ndarray] = None):
        """Gauss-Jordan 消元，返回 (约化矩阵, 增广部分, 秩)"""
        a = np.array(mat, dtype=object)
        rows, cols = a.shape
        aug = None if augment is None else np.array(augment, dtype=object)
        rank = 0
        for c in range(cols):
            pivot = next((r for r in range(rank, rows) if a[r, c] != 0), None)
            if pivot is None:
                continue
            if pivot != rank:
                a[[rank, pivot]] = a[[pivot, rank]]
                if aug is not None:
                    aug[[rank, pivot]] = aug[[pivot, rank]]
            inv = self._inv_scalar(a[rank, c])
            a[rank] = self.reduce(a[rank] * inv)
            if aug is not None:
                aug[rank] = self.reduce(aug[rank] * inv)
            for r in range(rows):
                if r != rank and a[r, c] != 0:
                    factor = a[r, c]
                    a[r] = self.reduce(a[r] - factor * a[rank])
                    if aug is not None:
                        aug[r] = self.reduce(aug[r] - factor * aug[rank])
            rank += 1
            if rank == rows:
                break
        return a, aug, rank

    def rank(self, mat: np.ndarray) -> int:
        return self.row_reduce(mat)[2]

    def inverse(self, mat: np.ndarray) -> np.ndarray:
        n, m = mat.shape
        if n != m:
            raise DimensionMismatchError("只有方阵才能求逆")
        _, inv, rank = self.row_reduce(mat, self.eye(n))
        if rank < n:
            raise SingularOperatorError(f"矩阵奇异（秩 {rank} < {n}）")
        return np.array(inv, dtype=object).astype(self.dtype)

    def random_matrix(self, rng: np.random.Generator, shape: Tuple[int, int]) -> np.ndarray:
        if self.is_rational:
            nums = rng.integers(-4, 5, size=shape)
            dens = rng.integers(1, 4, size=shape)
            return self.array([[Fraction(int(a), int(b)) for a, b in zip(r1, r2)] for r1, r2 in zip(nums, dens)])
        if self.prime < _SMALL_PRIME_BOUND:
            return rng.integers(0, self.prime, size=shape).astype(np.int64)
        return self.array([[int(rng.integers(0, self.prime)) for _ in range(shape[1])] for _ in range(shape[0])])

    def random_invertible(self, rng: np.random.Generator, n: int) -> np.ndarray:
        while True:
            mat = self.random_matrix(rng, (n, n))
            if self.rank(mat) == n:
                return mat

    def format_entry(self, x) -> str:
        return str(Fraction(x)) if self.is_rational else str(int(x))

    def parse_entry(self, text: str):
        try:
            value = Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"无法解析矩阵条目: {text!r}", field="entries")
        if not self.is_rational and value.denominator != 1:
            return self.scalar(value)
        return self.scalar(value if self.is_rational else value.numerator)


# ---------------------------------------------------------------------------
# 腿算子
# ---------------------------------------------------------------------------

class LegOperator:
    """作用在 ⊗ 腿上的精确矩阵，形状为 (∏ 值域腿维数) × (∏ 定义域腿维数)"""

    __slots__ = ("field", "leg_dims", "codomain_leg_dims", "entries")

    def __init__(
        self,
        field: FieldSpec,
        leg_dims: Sequence[int],
        entries,
        codomain_leg_dims: Optional[Sequence[int]] = None,
    ):
        dom = tuple(int(d) for d in leg_dims)
        cod = dom if codomain_leg_dims is None else tuple(int(d) for d in codomain_leg_dims)
        if any(d < 1 for d in dom + cod):
            raise InputError(f"腿维数必须为正: {list(dom)} → {list(cod)}", field="leg_dims")
        arr = entries if isinstance(entries, np.ndarray) and entries.dtype == field.dtype else field.array(entries)
        arr = field.reduce(np.asarray(arr))
        expected = (math.prod(cod), math.prod(dom))
        if arr.shape != expected:
            raise DimensionMismatchError(f"矩阵形状 {arr.shape} 与腿维数要求的 {expected} 不符", field="entries")
        self.field = field
        self.leg_dims = dom
        self.codomain_leg_dims = cod
        self.entries = arr

    # -- 构造 ---------------------------------------------------------------

    @classmethod
    def identity(cls, field: FieldSpec, dims: Sequence[int]) -> "LegOperator":
        return cls(field, dims, field.eye(math.prod(dims)))

    @classmethod
    def scalar(cls, field: FieldSpec, value, dims: Sequence[int] = (1,)) -> "LegOperator":
        n = math.prod(dims)
        return cls(field, dims, field.reduce(field.eye(n) * field.scalar(value)))

    @classmethod
    def permutation(
        cls,
        field: FieldSpec,
        images: Sequence[int],
        leg_dims: Sequence[int],
        codomain_leg_dims: Optional[Sequence[int]] = None,
    ) -> "LegOperator":
        """基双射 e_i ↦ e_{π(i)} 的置换算子"""
        n = math.prod(leg_dims)
        if sorted(int(v) for v in images) != list(range(n)):
            raise InputError("images 不是基指标的双射", field="images")
        mat = field.zeros(n, n)
        for i, v in enumerate(images):
            mat[int(v), i] = 1
        return cls(field, leg_dims, mat, codomain_leg_dims)

    # -- 代数 ---------------------------------------------------------------

    @property
    def is_square(self) -> bool:
        return self.leg_dims == self.codomain_leg_dims

    def compose(self, other: "LegOperator") -> "LegOperator":
        """self ∘ other（先 other 后 self）"""
        if self.field != other.field:
            raise InputError("算子所在的域不一致")
        if other.codomain_leg_dims != self.leg_dims:
            raise DimensionMismatchError(
                f"复合腿不匹配: {list(other.codomain_leg_dims)} → {list(self.leg_dims)}"
            )
        return LegOperator(
            self.field, other.leg_dims, self.field.matmul(self.entries, other.entries), self.codomain_leg_dims
        )

    def __matmul__(self, other: "LegOperator") -> "LegOperator":
        return self.compose(other)

    def inverse(self) -> "LegOperator":
        return LegOperator(self.field, self.codomain_leg_dims, self.field.inverse(self.entries), self.leg_dims)

    def is_invertible(self) -> bool:
        n, m = self.entries.shape
        return n == m and self.field.rank(self.entries) == n

    def tensor(self, other: "LegOperator") -> "LegOperator":
        if self.field != other.field:
            raise InputError("算子所在的域不一致")
        return LegOperator(
            self.field,
            self.leg_dims + other.leg_dims,
            self.field.reduce(np.kron(self.entries, other.entries)),
            self.codomain_leg_dims + other.codomain_leg_dims,
        )

    def regroup(self, leg_dims: Sequence[int], codomain_leg_dims: Sequence[int]) -> "LegOperator":
        """同一矩阵换一种腿划分（例如把相邻腿合并）"""
        return LegOperator(self.field, leg_dims, self.entries, codomain_leg_dims)

    def is_identity(self) -> bool:
        return self.is_square and self.field.equal(self.entries, self.field.eye(self.entries.shape[0]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LegOperator):
            return NotImplemented
        return (
            self.field == other.field
            and self.leg_dims == other.leg_dims
            and self.codomain_leg_dims == other.codomain_leg_dims
            and self.field.equal(self.entries, other.entries)
        )

    def __repr__(self) -> str:
        return f"LegOperator({self.field.label}, {list(self.leg_dims)} → {list(self.codomain_leg_dims)})"


@dataclass(frozen=True)
class Placement:
    """有序腿位置（从 1 开始），顺序有意义，例如 (3,2) 表示 B₃₂"""

    total_legs: int
    positions: Tuple[int, ...]

    def __post_init__(self):
        pos = tuple(int(p) for p in self.positions)
        object.__setattr__(self, "positions", pos)
        if len(set(pos)) != len(pos):
            raise InputError(f"放置位置重复: {list(pos)}", field="positions")
        if any(p < 1 or p > self.total_legs for p in pos):
            raise InputError(f"放置位置超出 1..{self.total_legs}: {list(pos)}", field="positions")


# ---------------------------------------------------------------------------
# 算子字与求值
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Act:
    """把算子作用在给定腿位置上"""

    op: LegOperator
    positions: Tuple[int, ...]


@dataclass(frozen=True)
class Swap:
    """交换两条腿（标准对称翻转）"""

    first: int
    second: int


Factor = Union[Act, Swap]


def _apply_act(field: FieldSpec, act: Act, dims: List[int], block: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    op, positions = act.op, act.positions
    n = len(dims)
    Placement(n, positions)
    if len(positions) != len(op.leg_dims):
        raise DimensionMismatchError(f"放置位置个数 {len(positions)} 与算子腿数 {len(op.leg_dims)} 不符")
    pos0 = [p - 1 for p in positions]
    if tuple(dims[p] for p in pos0) != op.leg_dims:
        raise DimensionMismatchError(
            f"位置 {list(positions)} 的腿维数 {[dims[p] for p in pos0]} 与算子 {list(op.leg_dims)} 不符"
        )
    cod = op.codomain_leg_dims
    if len(cod) != len(pos0) and pos0 != list(range(pos0[0], pos0[0] + len(pos0))):
        raise DimensionMismatchError(f"改变腿数的算子只能放在递增的相邻腿上，收到 {list(positions)}")
    k = block.shape[1]
    rest = [i for i in range(n) if i not in pos0]
    perm = pos0 + rest + [n]
    moved = block.reshape(tuple(dims) + (k,)).transpose(perm)
    flat = moved.reshape(math.prod(op.leg_dims), -1)
    out = field.matmul(op.entries, flat)
    out = out.reshape(tuple(cod) + tuple(dims[i] for i in rest) + (k,))
    if len(cod) == len(pos0):
        new_dims = list(dims)
        for slot, p in enumerate(pos0):
            new_dims[p] = cod[slot]
        axes = np.argsort(perm)
    else:
        # 值域腿整体替换原来那一段相邻腿
        start, m = pos0[0], len(cod)
        new_dims = list(dims[:start]) + list(cod) + list(dims[start + len(pos0):])
        before = list(range(m, m + start))
        after = list(range(m + start, m + len(rest)))
        axes = before + list(range(m)) + after + [m + len(rest)]
    result = out.transpose(axes).reshape(math.prod(new_dims), k)
    return result, new_dims


def _apply_swap(swap: Swap, dims: List[int], block: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    n = len(dims)
    a, b = swap.first - 1, swap.second - 1
    Placement(n, (swap.first, swap.second))
    k = block.shape[1]
    tensor = block.reshape(tuple(dims) + (k,))
    axes = list(range(n + 1))
    axes[a], axes[b] = axes[b], axes[a]
    new_dims = list(dims)
    new_dims[a], new_dims[b] = dims[b], dims[a]
    return tensor.transpose(axes).reshape(math.prod(new_dims), k), new_dims


def apply_word(
    field: FieldSpec, word: Sequence[Factor], ambient_dims: Sequence[int], block: np.ndarray
) -> Tuple[np.ndarray, List[int]]:
    """把算子字作用到列向量块上（最右边的因子最先作用）"""
    dims = list(ambient_dims)
    for factor in reversed(word):
        if isinstance(factor, Act):
            if factor.op.field != field:
                raise InputError("算子字中的算子所在的域不一致")
            block, dims = _apply_act(field, factor, dims, block)
        else:
            block, dims = _apply_swap(factor, dims, block)
    return block, dims


def _basis_block(field: FieldSpec, dim: int, start: int, stop: int) -> np.ndarray:
    block = field.zeros(dim, stop - start)
    for j in range(stop - start):
        block[start + j, j] = 1
    return block


def word_operator(field: FieldSpec, word: Sequence[Factor], ambient_dims: Sequence[int]) -> LegOperator:
    dim = math.prod(ambient_dims)
    out, dims = apply_word(field, word, ambient_dims, field.eye(dim))
    return LegOperator(field, ambient_dims, out, dims)


def words_agree(
    field: FieldSpec,
    lhs: Sequence[Factor],
    rhs: Sequence[Factor],
    ambient_dims: Sequence[int],
    full: bool = False,
) -> bool:
    """两个算子字作为算子是否相等

    维数不超过 FULL_CHECK_DIM（或 full=True）时分块作用在全部基向量上，
    否则作用在 RANDOM_VECTORS 个随机向量上（种子为 SEED）。
    """
    dim = math.prod(ambient_dims)
    if dim <= settings.FULL_CHECK_DIM or full:
        step = settings.CHECK_CHUNK
        for start in range(0, dim, step):
            block = _basis_block(field, dim, start, min(dim, start + step))
            left, ldims = apply_word(field, lhs, ambient_dims, block)
            right, rdims = apply_word(field, rhs, ambient_dims, block)
            if ldims != rdims or not field.equal(left, right):
                return False
        return True
    logger.info(f"🔄 维数 {dim} 超过阈值，使用 {settings.RANDOM_VECTORS} 个随机向量验证")
    rng = np.random.default_rng(settings.SEED)
    block = field.random_matrix(rng, (dim, settings.RANDOM_VECTORS))
    left, ldims = apply_word(field, lhs, ambient_dims, block)
    right, rdims = apply_word(field, rhs, ambient_dims, block)
    return ldims == rdims and field.equal(left, right)


# ---------------------------------------------------------------------------
# 基本算子
# ---------------------------------------------------------------------------

def flip(d1: int, d2: int, field: Optional[FieldSpec] = None) -> LegOperator:
    """t: U₁⊗U₂ → U₂⊗U₁，(i,j) ↦ (j,i)"""
    field = field or FieldSpec(settings.DEFAULT_PRIME)
    images = [j * d1 + i for i in range(d1) for j in range(d2)]
    return LegOperator.permutation(field, images, (d1, d2), (d2, d1))


def place(op: LegOperator, pl: Placement, ambient_dims: Sequence[int]) -> LegOperator:
    """把 op 放到 ambient 的指定腿上；反向位置即翻转共轭"""
    if len(ambient_dims) != pl.total_legs:
        raise DimensionMismatchError(f"环境腿数 {len(ambient_dims)} 与放置的 {pl.total_legs} 不符")
    return word_operator(op.field, [Act(op, pl.positions)], ambient_dims)


def _require_invertible(op: LegOperator, name: str) -> None:
    if not op.is_square:
        raise DimensionMismatchError(f"{name} 必须是方阵算子", field=name)
    if not op.is_invertible():
        raise SingularOperatorError(f"{name} 不可逆", field=name)


def _require_equal_legs(op: LegOperator, count: int, name: str) -> int:
    if len(op.leg_dims) != count or len(set(op.leg_dims)) != 1 or not op.is_square:
        raise DimensionMismatchError(
            f"{name} 应作用在 {count} 条等维腿上，收到 {list(op.leg_dims)} → {list(op.codomain_leg_dims)}",
            field=name,
        )
    return op.leg_dims[0]


def _same_field(*ops: LegOperator) -> FieldSpec:
    fields = {op.field for op in ops}
    if len(fields) != 1:
        raise InputError("算子所在的域不一致")
    return ops[0].field


# ---------------------------------------------------------------------------
# b-结构方程（Vect 上）
# ---------------------------------------------------------------------------

def check_pentagon(phi: LegOperator, full: bool = False) -> bool:
    """Φ₁₂Φ₁₃Φ₂₃ = Φ₂₃Φ₁₂"""
    m = _require_equal_legs(phi, 2, "phi")
    _require_invertible(phi, "phi")
    lhs = [Act(phi, (1, 2)), Act(phi, (1, 3)), Act(phi, (2, 3))]
    rhs = [Act(phi, (2, 3)), Act(phi, (1, 2))]
    return words_agree(phi.field, lhs, rhs, [m] * 3, full)


def check_hexagon(B: LegOperator, full: bool = False) -> bool:
    """B₁₂B₂₃B₁₂ = B₂₃B₁₂B₂₃"""
    m = _require_equal_legs(B, 2, "B")
    _require_invertible(B, "B")
    lhs = [Act(B, (1, 2)), Act(B, (2, 3)), Act(B, (1, 2))]
    rhs = [Act(B, (2, 3)), Act(B, (1, 2)), Act(B, (2, 3))]
    return words_agree(B.field, lhs, rhs, [m] * 3, full)


def check_symmetric(B: LegOperator) -> bool:
    """对称 b-结构：B∘B = 1"""
    _require_equal_legs(B, 2, "B")
    return B.compose(B).is_identity()


def braid_to_r_matrix(B: LegOperator) -> LegOperator:
    """R = t∘B，把辫关系形式换成量子 Yang-Baxter 形式"""
    m = _require_equal_legs(B, 2, "B")
    return flip(m, m, B.field).compose(B)


def check_ybe(R: LegOperator, full: bool = False) -> bool:
    """R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂"""
    m = _require_equal_legs(R, 2, "R")
    _require_invertible(R, "R")
    lhs = [Act(R, (1, 2)), Act(R, (1, 3)), Act(R, (2, 3))]
    rhs = [Act(R, (2, 3)), Act(R, (1, 3)), Act(R, (1, 2))]
    return words_agree(R.field, lhs, rhs, [m] * 3, full)


def reversed_placement(B: LegOperator) -> Act:
    """三条腿上的 B₃₂（翻转共轭读法）"""
    return Act(B, (3, 2))


def check_preunital(B: LegOperator, C: LegOperator, full: bool = False) -> bool:
    """B(1⊗C)B = (1⊗C)B(1⊗C)，B(1⊗C²)B = C²⊗1，B₂₃C₃B₁₂B₂₃C₂B₃₂ = C₁C₂B₃₂t₂₃"""
    field = _same_field(B, C)
    m = _require_equal_legs(B, 2, "B")
    if _require_equal_legs(C, 1, "C") != m:
        raise DimensionMismatchError("C 的维数与 B 的腿维数不符", field="C")
    _require_invertible(B, "B")
    _require_invertible(C, "C")
    two, three = [m] * 2, [m] * 3
    first = words_agree(
        field,
        [Act(B, (1, 2)), Act(C, (2,)), Act(B, (1, 2))],
        [Act(C, (2,)), Act(B, (1, 2)), Act(C, (2,))],
        two,
        full,
    )
    second = words_agree(
        field,
        [Act(B, (1, 2)), Act(C, (2,)), Act(C, (2,)), Act(B, (1, 2))],
        [Act(C, (1,)), Act(C, (1,))],
        two,
        full,
    )
    b32 = reversed_placement(B)
    third = words_agree(
        field,
        [Act(B, (2, 3)), Act(C, (3,)), Act(B, (1, 2)), Act(B, (2, 3)), Act(C, (2,)), b32],
        [Act(C, (1,)), Act(C, (2,)), b32, Swap(2, 3)],
        three,
        full,
    )
    return first and second and third


def check_id_bfunctor(g: LegOperator, B: LegOperator) -> bool:
    """(g⊗g)B = B(g⊗g)"""
    field = _same_field(g, B)
    m = _require_equal_legs(B, 2, "B")
    if _require_equal_legs(g, 1, "g") != m:
        raise DimensionMismatchError("g 的维数与 B 的腿维数不符", field="g")
    _require_invertible(g, "g")
    return words_agree(
        field,
        [Act(g, (1,)), Act(g, (2,)), Act(B, (1, 2))],
        [Act(B, (1, 2)), Act(g, (1,)), Act(g, (2,))],
        [m, m],
    )


def _beta_factors(B: LegOperator, offset: int) -> List[Factor]:
    """U-腿从 offset 开始的 β = B₂₄t₁₃（相对位置）"""
    return [Act(B, (offset + 1, offset + 3)), Swap(offset, offset + 2)]


def beta_on_vect(u1: int, u2: int, u3: int, B: LegOperator) -> LegOperator:
    """B₂₄t₁₃: U₁⊗M⊗U₂⊗M⊗U₃ → U₂⊗M⊗U₁⊗M⊗U₃"""
    m = _require_equal_legs(B, 2, "B")
    return word_operator(B.field, _beta_factors(B, 1), [u1, m, u2, m, u3])


def check_b_coherence_on_vect(B: LegOperator, dims: Sequence[int], full: bool = False) -> bool:
    """四个对象的 b-结构相干图在 X⊗M⊗Y⊗M⊗Z⊗M⊗W 上成立

    β_{Y,Z,XW} (1⊗β_{X,Z,W}) β_{X,Y,ZW} = (1⊗β_{X,Y,W}) β_{X,Z,YW} (1⊗β_{Y,Z,W})
    """
    m = _require_equal_legs(B, 2, "B")
    if len(dims) != 4:
        raise InputError("需要 X、Y、Z、W 四个维数", field="dims")
    x, y, z, w = dims
    upper = _beta_factors(B, 1) + _beta_factors(B, 3) + _beta_factors(B, 1)
    lower = _beta_factors(B, 3) + _beta_factors(B, 1) + _beta_factors(B, 3)
    return words_agree(B.field, upper, lower, [x, m, y, m, z, m, w], full)


# ---------------------------------------------------------------------------
# 单对象 b-双范畴方程
# ---------------------------------------------------------------------------

def _reversal_word() -> List[Factor]:
    """三条腿上的 t₁t₂t₁"""
    return [Swap(1, 2), Swap(2, 3), Swap(1, 2)]


def check_tetrahedron(Z: LegOperator, full: bool = False) -> bool:
    """Z₁₂₄Z₁₃₅Z₂₃₆Z₄₅₆ = Z₄₅₆Z₂₃₆Z₁₃₅Z₁₂₄"""
    b = _require_equal_legs(Z, 3, "Z")
    _require_invertible(Z, "Z")
    lhs = [Act(Z, (1, 2, 4)), Act(Z, (1, 3, 5)), Act(Z, (2, 3, 6)), Act(Z, (4, 5, 6))]
    return words_agree(Z.field, lhs, list(reversed(lhs)), [b] * 6, full)


def check_s_relation(S: LegOperator, full: bool = False) -> bool:
    """t₃S₄₅₆S₂₃₄(t₁t₄)S₂₃₄S₄₅₆ = S₁₂₃S₃₄₅(t₂t₅)S₃₄₅S₁₂₃t₃"""
    b = _require_equal_legs(S, 3, "S")
    _require_invertible(S, "S")
    lhs = [
        Swap(3, 4), Act(S, (4, 5, 6)), Act(S, (2, 3, 4)), Swap(1, 2), Swap(4, 5),
        Act(S, (2, 3, 4)), Act(S, (4, 5, 6)),
    ]
    rhs = [
        Act(S, (1, 2, 3)), Act(S, (3, 4, 5)), Swap(2, 3), Swap(5, 6),
        Act(S, (3, 4, 5)), Act(S, (1, 2, 3)), Swap(3, 4),
    ]
    return words_agree(S.field, lhs, rhs, [b] * 6, full)


def z_to_s(Z: LegOperator) -> LegOperator:
    """S = t₁t₂t₁Z"""
    _require_equal_legs(Z, 3, "Z")
    return word_operator(Z.field, _reversal_word(), Z.codomain_leg_dims).compose(Z)


def s_to_z(S: LegOperator) -> LegOperator:
    """Z = (t₁t₂t₁)⁻¹S，逆字按相反顺序写出"""
    _require_equal_legs(S, 3, "S")
    inverse_word = list(reversed(_reversal_word()))
    return word_operator(S.field, inverse_word, S.codomain_leg_dims).compose(S)


def _lze_dims(L: LegOperator, Z: LegOperator) -> Tuple[int, int]:
    b = _require_equal_legs(Z, 3, "Z")
    if len(L.leg_dims) != 3 or not L.is_square or L.leg_dims[0] != L.leg_dims[1] or L.leg_dims[2] != b:
        raise DimensionMismatchError(
            f"L 应作用在 (c, c, {b}) 上，收到 {list(L.leg_dims)} → {list(L.codomain_leg_dims)}", field="L"
        )
    return L.leg_dims[0], b


def check_lze(L: LegOperator, Z: LegOperator, full: bool = False) -> bool:
    """L₁₂₄L₁₃₅L₂₃₆Z₄₅₆ = Z₄₅₆L₂₃₆L₁₃₅L₁₂₄"""
    field = _same_field(L, Z)
    c, b = _lze_dims(L, Z)
    _require_invertible(L, "L")
    _require_invertible(Z, "Z")
    lhs = [Act(L, (1, 2, 4)), Act(L, (1, 3, 5)), Act(L, (2, 3, 6)), Act(Z, (4, 5, 6))]
    return words_agree(field, lhs, list(reversed(lhs)), [c, c, c, b, b, b], full)


def _m_dims(M: LegOperator) -> Tuple[int, int]:
    dom, cod = M.leg_dims, M.codomain_leg_dims
    if len(dom) != 3 or dom[1] != dom[2] or cod != (dom[1], dom[2], dom[0]):
        raise DimensionMismatchError(
            f"M 应为 B⊗C⊗C → C⊗C⊗B，收到 {list(dom)} → {list(cod)}", field="M"
        )
    return dom[1], dom[0]


def m_to_l(M: LegOperator) -> LegOperator:
    """L = t₁t₂t₁M⁻¹，作用在 (c, c, b) 上"""
    _m_dims(M)
    inv = M.inverse()
    return word_operator(M.field, _reversal_word(), inv.codomain_leg_dims).compose(inv)


def l_to_m(L: LegOperator) -> LegOperator:
    """M = ((t₁t₂t₁)⁻¹L)⁻¹"""
    if len(L.leg_dims) != 3 or not L.is_square or L.leg_dims[0] != L.leg_dims[1]:
        raise DimensionMismatchError(f"L 应作用在 (c, c, b) 上，收到 {list(L.leg_dims)}", field="L")
    inverse_word = list(reversed(_reversal_word()))
    return word_operator(L.field, inverse_word, L.codomain_leg_dims).compose(L).inverse()


def check_m_relation(M: LegOperator, S: LegOperator, full: bool = False) -> bool:
    """M₂₃₄(t₁t₄)M₂₃₄M₄₅₆t₃S₁₂₃ = S₄₅₆t₃M₁₂₃M₃₄₅(t₂t₅)M₃₄₅，定义域 B³⊗C³"""
    field = _same_field(M, S)
    c, b = _m_dims(M)
    if _require_equal_legs(S, 3, "S") != b:
        raise DimensionMismatchError("S 的腿维数与 M 的 B 腿不符", field="S")
    # M 的定义域与值域腿顺序不同，只要求矩阵可逆
    if not M.is_invertible():
        raise SingularOperatorError("M 不可逆", field="M")
    _require_invertible(S, "S")
    lhs = [
        Act(M, (2, 3, 4)), Swap(1, 2), Swap(4, 5), Act(M, (2, 3, 4)), Act(M, (4, 5, 6)),
        Swap(3, 4), Act(S, (1, 2, 3)),
    ]
    rhs = [
        Act(S, (4, 5, 6)), Swap(3, 4), Act(M, (1, 2, 3)), Act(M, (3, 4, 5)), Swap(2, 3), Swap(5, 6),
        Act(M, (3, 4, 5)),
    ]
    return words_agree(field, lhs, rhs, [b, b, b, c, c, c], full)


def compose_L(L: LegOperator, L2: LegOperator) -> LegOperator:
    """L|L′ = t₂L₁₂₅L′₃₄₅t₂，按腿分组为 ((cc′), (cc′), b)"""
    field = _same_field(L, L2)
    for op, name in ((L, "L"), (L2, "L2")):
        if len(op.leg_dims) != 3 or not op.is_square or op.leg_dims[0] != op.leg_dims[1]:
            raise DimensionMismatchError(f"{name} 应作用在 (c, c, b) 上", field=name)
    c, b = L.leg_dims[0], L.leg_dims[2]
    c2, b2 = L2.leg_dims[0], L2.leg_dims[2]
    if b != b2:
        raise DimensionMismatchError("L 与 L′ 的 B 腿维数不一致")
    word = [Swap(2, 3), Act(L, (1, 2, 5)), Act(L2, (3, 4, 5)), Swap(2, 3)]
    op = word_operator(field, word, [c, c2, c, c2, b])
    grouped = (c * c2, c * c2, b)
    return op.regroup(grouped, grouped)


def check_cl_2morphism(f: LegOperator, d_cell: LegOperator, d2_cell: LegOperator) -> bool:
    """(f⊗1)∘d = d′∘(1⊗f⊗f)，d: C⊗D⊗D → D⊗C′，d′: C⊗D′⊗D′ → D′⊗C′"""
    field = _same_field(f, d_cell, d2_cell)
    if len(f.leg_dims) != 1 or len(f.codomain_leg_dims) != 1:
        raise DimensionMismatchError("f 应作用在单条腿 D → D′ 上", field="f")
    dd, dd2 = f.leg_dims[0], f.codomain_leg_dims[0]
    dom, cod = d_cell.leg_dims, d_cell.codomain_leg_dims
    dom2, cod2 = d2_cell.leg_dims, d2_cell.codomain_leg_dims
    if len(dom) != 3 or dom[1:] != (dd, dd) or len(cod) != 2 or cod[0] != dd:
        raise DimensionMismatchError("d 应为 C⊗D⊗D → D⊗C′", field="d")
    if dom2 != (dom[0], dd2, dd2) or cod2 != (dd2, cod[1]):
        raise DimensionMismatchError("d′ 应为 C⊗D′⊗D′ → D′⊗C′", field="d2")
    return words_agree(
        field,
        [Act(f, (1,)), Act(d_cell, (1, 2, 3))],
        [Act(d2_cell, (1, 2, 3)), Act(f, (2,)), Act(f, (3,))],
        list(dom),
    )


# ---------------------------------------------------------------------------
# 辫群作用
# ---------------------------------------------------------------------------

def _braid_factors(B: LegOperator, B_inv: LegOperator, word: Sequence[int], n_strands: int) -> List[Factor]:
    factors: List[Factor] = []
    for g in word:
        i = abs(int(g))
        if g == 0 or i > n_strands - 1:
            raise InputError(f"辫字生成元 {g} 超出 ±1..±{n_strands - 1}", field="word")
        factors.append(Act(B if g > 0 else B_inv, (i, i + 1)))
    return factors


def braid_word_eval(B: LegOperator, n_strands: int, word: Sequence[int], tail_dim: int = 1) -> LegOperator:
    """辫字 b_{w₁}b_{w₂}… 在 M^{⊗n}⊗尾腿 上的值，负指标表示逆元"""
    m = _require_equal_legs(B, 2, "B")
    if n_strands < 1 or tail_dim < 1:
        raise InputError("股数与尾腿维数必须为正")
    if not check_hexagon(B):
        raise InputError("B 不满足六边形方程，拒绝构造辫群作用", field="B")
    factors = _braid_factors(B, B.inverse(), word, n_strands)
    return word_operator(B.field, factors, [m] * n_strands + [tail_dim])


def check_coxeter(B: LegOperator, n: int, tail_dim: int = 1) -> bool:
    """b_i b_{i+1} b_i = b_{i+1} b_i b_{i+1}，|i−j| > 1 时 b_i b_j = b_j b_i"""
    m = _require_equal_legs(B, 2, "B")
    _require_invertible(B, "B")
    ambient = [m] * n + [tail_dim]

    def b(i: int) -> Act:
        return Act(B, (i, i + 1))

    for i in range(1, n - 1):
        if not words_agree(B.field, [b(i), b(i + 1), b(i)], [b(i + 1), b(i), b(i + 1)], ambient):
            return False
    for i in range(1, n):
        for j in range(i + 2, n):
            if not words_agree(B.field, [b(i), b(j)], [b(j), b(i)], ambient):
                return False
    return True

