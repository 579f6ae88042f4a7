"""精确线性代数服务：Z、Z/m 与有理数上的矩阵计算

为上同调模块提供核、像与商群计算，为张量模块提供矩阵运算。
全部运算精确进行，不使用浮点数。
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from bstruct.core.errors import DifferentialError, DimensionMismatchError, InputError, ResourceLimitError
from bstruct.core.logger import get_logger
from bstruct.core.settings import settings

logger = get_logger("zlinalg")


# ---------------------------------------------------------------------------
# 环与阿贝尔群
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Ring:
    """矩阵条目所在的环：integers / mod / rationals"""

    kind: str
    modulus: int = 0

    def __post_init__(self):
        if self.kind not in ("integers", "mod", "rationals"):
            raise InputError(f"未知的环类型: {self.kind}")
        if self.kind == "mod" and self.modulus < 1:
            raise InputError(f"模数必须为正整数: {self.modulus}")

    @classmethod
    def integers(cls) -> "Ring":
        return cls("integers")

    @classmethod
    def mod(cls, m: int) -> "Ring":
        return cls("integers") if m == 0 else cls("mod", m)

    @classmethod
    def rationals(cls) -> "Ring":
        return cls("rationals")

    def reduce(self, data: np.ndarray) -> np.ndarray:
        if self.kind == "mod":
            return data % self.modulus
        return data

    @property
    def label(self) -> str:
        if self.kind == "mod":
            return f"Z/{self.modulus}"
        return "Z" if self.kind == "integers" else "Q"


INTEGERS = Ring.integers()


@dataclass(frozen=True)
class AbelianGroup:
    """有限生成阿贝尔群 ∏ Z/m_i（m_i = 0 表示无限循环因子）"""

    moduli: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))
        if any(m < 0 for m in self.moduli):
            raise InputError(f"模数不能为负: {list(self.moduli)}", field="moduli")

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def is_finite(self) -> bool:
        return all(m > 0 for m in self.moduli)

    @property
    def order(self) -> Optional[int]:
        if not self.is_finite:
            return None
        return math.prod(self.moduli)

    @property
    def dtype(self):
        # 含 Z 因子时使用任意精度整数
        return np.int64 if self.is_finite else object

    def reduce(self, values: np.ndarray) -> np.ndarray:
        """将最后一维逐坐标约化到 [0, m_i)"""
        out = np.array(values, dtype=self.dtype, copy=True)
        for j, m in enumerate(self.moduli):
            if m > 0:
                out[..., j] = out[..., j] % m
        return out

    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, tuple(coords))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def elements(self) -> Iterator["GroupElement"]:
        if not self.is_finite:
            raise ResourceLimitError("无限群无法枚举元素")
        for coords in product(*(range(m) for m in self.moduli)):
            yield GroupElement(self, coords)


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup
    coords: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.group.rank:
            raise DimensionMismatchError(
                f"坐标长度 {len(self.coords)} 与群秩 {self.group.rank} 不符", field="coords"
            )
        reduced = tuple(int(c) % m if m > 0 else int(c) for c, m in zip(self.coords, self.group.moduli))
        object.__setattr__(self, "coords", reduced)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-a for a in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)


# ---------------------------------------------------------------------------
# 精确矩阵
# ---------------------------------------------------------------------------

def _object_zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


def _object_identity(n: int) -> np.ndarray:
    out = _object_zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


class ExactMatrix:
    """稠密精确矩阵，条目为 Python 整数或 Fraction（object 数组）"""

    __slots__ = ("ring", "data")

    def __init__(self, data, ring: Ring = INTEGERS, cols: Optional[int] = None):
        if isinstance(data, np.ndarray) and data.ndim == 2:
            arr = data.astype(object)
        else:
            rows = [list(r) for r in data]
            if not rows:
                arr = _object_zeros(0, cols or 0)
            else:
                width = len(rows[0])
                if any(len(r) != width for r in rows):
                    raise DimensionMismatchError("矩阵各行长度不一致")
                arr = _object_zeros(len(rows), width)
                for i, r in enumerate(rows):
                    for j, x in enumerate(r):
                        arr[i, j] = x
        if ring.kind == "rationals":
            arr = np.vectorize(Fraction, otypes=[object])(arr) if arr.size else arr
        else:
            arr = np.vectorize(int, otypes=[object])(arr) if arr.size else arr
        self.ring = ring
        self.data = ring.reduce(arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    @classmethod
    def identity(cls, n: int, ring: Ring = INTEGERS) -> "ExactMatrix":
        return cls(_object_identity(n), ring)

    @classmethod
    def zeros(cls, rows: int, cols: int, ring: Ring = INTEGERS) -> "ExactMatrix":
        return cls(_object_zeros(rows, cols), ring)

    def to_rows(self) -> List[List]:
        return [list(r) for r in self.data]

    def row(self, i: int) -> np.ndarray:
        return self.data[i].copy()

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ring != other.ring:
            raise InputError(f"环不一致: {self.ring.label} 与 {other.ring.label}")
        if self.cols != other.rows:
            raise DimensionMismatchError(f"形状不匹配: {self.shape} @ {other.shape}")
        if self.cols == 0:
            return ExactMatrix.zeros(self.rows, other.cols, self.ring)
        return ExactMatrix(self.data @ other.data, self.ring)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and bool(np.all(self.data == other.data))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.to_rows()!r}, ring={self.ring.label})"

    def over(self, ring: Ring) -> "ExactMatrix":
        """换到另一个环（整数矩阵约化到 Z/m 等）"""
        return ExactMatrix(self.data, ring)


def determinant(matrix: ExactMatrix) -> int:
    """Bareiss 无分数行列式（整数矩阵）"""
    n, m = matrix.shape
    if n != m:
        raise DimensionMismatchError("行列式要求方阵")
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in matrix.data]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith 标准形
# ---------------------------------------------------------------------------

@dataclass
class SmithForm:
    """U·M·V = D，D 对角且 d₁ | d₂ | …，U、V 幺模"""

    U: ExactMatrix
    D: ExactMatrix
    V: ExactMatrix
    V_inv: ExactMatrix

    @property
    def diagonal(self) -> List[int]:
        k = min(self.D.shape)
        return [int(self.D.data[i, i]) for i in range(k)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariants(self) -> List[int]:
        return [d for d in self.diagonal if d != 0]


def _swap_rows(arrays, a: int, b: int) -> None:
    if a == b:
        return
    for arr in arrays:
        arr[[a, b], :] = arr[[b, a], :]


def _min_abs_position(A: np.ndarray, t: int) -> Optional[Tuple[int, int]]:
    best = None
    best_val = None
    rows, cols = A.shape
    for i in range(t, rows):
        for j in range(t, cols):
            v = A[i, j]
            if v != 0 and (best_val is None or abs(v) < best_val):
                best, best_val = (i, j), abs(v)
                if best_val == 1:
                    return best
    return best


def smith_normal_form(matrix: ExactMatrix, verify: Optional[bool] = None) -> SmithForm:
    """整数矩阵的 Smith 标准形，同时记录 U、V 与 V⁻¹"""
    if matrix.ring.kind != "integers":
        raise InputError(f"Smith 标准形只接受整数矩阵，收到 {matrix.ring.label}")
    A = matrix.data.copy()
    m, n = A.shape
    U = _object_identity(m)
    V = _object_identity(n)
    V_inv = _object_identity(n)

    def swap_cols(a: int, b: int) -> None:
        if a == b:
            return
        A[:, [a, b]] = A[:, [b, a]]
        V[:, [a, b]] = V[:, [b, a]]
        V_inv[[a, b], :] = V_inv[[b, a], :]

    t = 0
    while t < min(m, n):
        pos = _min_abs_position(A, t)
        if pos is None:
            break
        _swap_rows((A, U), t, pos[0])
        swap_cols(t, pos[1])
        while True:
            p = A[t, t]
            clean = True
            for i in range(t + 1, m):
                if A[i, t] != 0:
                    q = A[i, t] // p
                    A[i, :] = A[i, :] - q * A[t, :]
                    U[i, :] = U[i, :] - q * U[t, :]
                    if A[i, t] != 0:
                        clean = False
            for j in range(t + 1, n):
                if A[t, j] != 0:
                    q = A[t, j] // p
                    A[:, j] = A[:, j] - q * A[:, t]
                    V[:, j] = V[:, j] - q * V[:, t]
                    V_inv[t, :] = V_inv[t, :] + q * V_inv[j, :]
                    if A[t, j] != 0:
                        clean = False
            if not clean:
                # 余数比主元小，把最小的非零余数移到主元位置
                candidates = [(abs(A[i, t]), i, t) for i in range(t + 1, m) if A[i, t] != 0]
                candidates += [(abs(A[t, j]), t, j) for j in range(t + 1, n) if A[t, j] != 0]
                _, i, j = min(candidates)
                if j == t:
                    _swap_rows((A, U), t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = None
            if t + 1 < m and t + 1 < n:
                block = A[t + 1:, t + 1:] % p
                hits = np.argwhere(block != 0)
                if len(hits):
                    bad = t + 1 + int(hits[0][0])
            if bad is None:
                break
            A[t, :] = A[t, :] + A[bad, :]
            U[t, :] = U[t, :] + U[bad, :]
        if A[t, t] < 0:
            A[t, :] = -A[t, :]
            U[t, :] = -U[t, :]
        t += 1

    form = SmithForm(
        U=ExactMatrix(U), D=ExactMatrix(A), V=ExactMatrix(V), V_inv=ExactMatrix(V_inv)
    )
    if verify or (verify is None and settings.PARANOID_CHECKS):
        verify_smith(matrix, form)
    return form


def verify_smith(matrix: ExactMatrix, form: SmithForm) -> None:
    """复核 U·M·V = D、整除链与幺模性"""
    if form.U @ matrix @ form.V != form.D:
        raise DifferentialError("Smith 分解复核失败: U·M·V ≠ D")
    D = form.D.data
    off = D.copy()
    for i in range(min(D.shape)):
        off[i, i] = 0
    if np.any(off != 0):
        raise DifferentialError("Smith 分解复核失败: D 非对角")
    diag = form.diagonal
    for a, b in zip(diag, diag[1:]):
        if a < 0 or (a == 0 and b != 0) or (a != 0 and b % a != 0):
            raise DifferentialError(f"Smith 分解复核失败: 整除链 {diag}")
    if form.V @ form.V_inv != ExactMatrix.identity(form.V.rows):
        raise DifferentialError("Smith 分解复核失败: V·V⁻¹ ≠ I")
    if abs(determinant(form.U)) != 1 or abs(determinant(form.V)) != 1:
        raise DifferentialError("Smith 分解复核失败: 变换矩阵非幺模")


# ---------------------------------------------------------------------------
# Howell 标准形（Z/N）
# ---------------------------------------------------------------------------

def _gcdex(a: int, b: int) -> Tuple[int, int, int, int, int]:
    """返回 (g, s, t, u, v)：s·a + t·b = g，u·a + v·b = 0，s·v − t·u = 1"""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    g, sa, tb = old_r, old_s, old_t
    if g < 0:
        g, sa, tb = -g, -sa, -tb
    if g == 0:
        return 0, 1, 0, 0, 1
    return g, sa, tb, -b // g, a // g


def _unit_normalizer(a: int, N: int) -> int:
    """找单位 u ∈ (Z/N)^× 使 u·a ≡ gcd(a, N)"""
    g = math.gcd(a, N)
    a1, n1 = a // g, N // g
    u0 = pow(a1, -1, n1) if n1 > 1 else 1
    for k in range(N):
        u = u0 + k * n1
        if math.gcd(u, N) == 1:
            return u % N
    raise DifferentialError(f"找不到 {a} 模 {N} 的规范化单位")


@dataclass
class _HowellPivot:
    col: int
    vec: np.ndarray
    trans: np.ndarray


def _howell_pivots(data: np.ndarray, N: int) -> List[_HowellPivot]:
    r, c = data.shape
    work = []
    for i in range(r):
        t = np.zeros(r, dtype=object)
        t[i] = 1
        work.append((data[i].copy() % N, t))
    work = [w for w in work if np.any(w[0] != 0)]
    pivots: List[_HowellPivot] = []
    for col in range(c):
        cand = [w for w in work if w[0][col] % N != 0]
        rest = [w for w in work if w[0][col] % N == 0]
        if not cand:
            continue
        pv, pt = cand[0]
        for rv, rt in cand[1:]:
            g, s, t, u, v = _gcdex(int(pv[col]), int(rv[col]))
            pv, rv = (s * pv + t * rv) % N, (u * pv + v * rv) % N
            pt, rt = (s * pt + t * rt) % N, (u * pt + v * rt) % N
            rest.append((rv, rt))
        unit = _unit_normalizer(int(pv[col]), N)
        pv, pt = (unit * pv) % N, (unit * pt) % N
        ann = N // int(pv[col])
        extra = (ann * pv) % N
        if np.any(extra != 0):
            rest.append((extra, (ann * pt) % N))
        pivots.append(_HowellPivot(col, pv, pt))
        work = [w for w in rest if np.any(w[0] != 0)]
    # 主元上方条目约化到 [0, 主元)
    for i, piv in enumerate(pivots):
        p = int(piv.vec[piv.col])
        for k in range(i):
            q = int(pivots[k].vec[piv.col]) // p
            if q:
                pivots[k].vec = (pivots[k].vec - q * piv.vec) % N
                pivots[k].trans = (pivots[k].trans - q * piv.trans) % N
    return pivots


def howell_form(matrix: ExactMatrix) -> ExactMatrix:
    """Z/N 上行空间的 Howell 标准形（不含零行）"""
    if matrix.ring.kind != "mod":
        raise InputError(f"Howell 标准形只接受 Z/m 矩阵，收到 {matrix.ring.label}")
    pivots = _howell_pivots(matrix.data, matrix.ring.modulus)
    if not pivots:
        return ExactMatrix.zeros(0, matrix.cols, matrix.ring)
    return ExactMatrix(np.array([p.vec for p in pivots], dtype=object), matrix.ring)


# ---------------------------------------------------------------------------
# 线性方程 x·M = v
# ---------------------------------------------------------------------------

def _solve_mod(matrix: ExactMatrix, v: np.ndarray) -> Optional[np.ndarray]:
    N = matrix.ring.modulus
    pivots = _howell_pivots(matrix.data, N)
    rem = v % N
    x = np.zeros(matrix.rows, dtype=object)
    for piv in pivots:
        entry = int(rem[piv.col])
        if entry == 0:
            continue
        p = int(piv.vec[piv.col])
        if entry % p != 0:
            return None
        q = entry // p
        rem = (rem - q * piv.vec) % N
        x = (x + q * piv.trans) % N
    if np.any(rem != 0):
        return None
    return x


def _solve_integers(matrix: ExactMatrix, v: np.ndarray) -> Optional[np.ndarray]:
    form = smith_normal_form(matrix)
    w = (ExactMatrix([list(v)], INTEGERS, cols=matrix.cols) @ form.V).data[0] if matrix.cols else v
    diag = form.diagonal
    y = np.zeros(matrix.rows, dtype=object)
    for i in range(matrix.cols):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if w[i] != 0:
                return None
        else:
            if w[i] % d != 0:
                return None
            y[i] = w[i] // d
    if matrix.rows == 0:
        return y
    return (ExactMatrix([list(y)]) @ form.U).data[0]


def _solve_rationals(matrix: ExactMatrix, v: np.ndarray) -> Optional[np.ndarray]:
    # 对 [M | I] 作行化简，同时记录变换
    rows = [(np.array(matrix.data[i], dtype=object), _unit_vector(matrix.rows, i)) for i in range(matrix.rows)]
    rem = np.array([Fraction(x) for x in v], dtype=object)
    x = np.array([Fraction(0)] * matrix.rows, dtype=object)
    pivots = []
    for col in range(matrix.cols):
        idx = next((k for k, (vec, _) in enumerate(rows) if vec[col] != 0), None)
        if idx is None:
            continue
        pv, pt = rows.pop(idx)
        pt = pt / pv[col]
        pv = pv / pv[col]
        rows = [(vec - vec[col] * pv, tr - vec[col] * pt) for vec, tr in rows]
        pivots.append((col, pv, pt))
    for col, pv, pt in pivots:
        coef = rem[col]
        if coef != 0:
            rem = rem - coef * pv
            x = x + coef * pt
    if any(e != 0 for e in rem):
        return None
    return x


def _unit_vector(n: int, i: int) -> np.ndarray:
    out = np.array([Fraction(0)] * n, dtype=object)
    out[i] = Fraction(1)
    return out


def solve_in_span(matrix: ExactMatrix, v: Sequence) -> Optional[List]:
    """求 x 使 x·M = v；无解返回 None"""
    vec = np.array(list(v), dtype=object)
    if len(vec) != matrix.cols:
        raise DimensionMismatchError(f"向量长度 {len(vec)} 与列数 {matrix.cols} 不符")
    if matrix.ring.kind == "mod":
        x = _solve_mod(matrix, vec)
    elif matrix.ring.kind == "integers":
        x = _solve_integers(matrix, vec)
    else:
        x = _solve_rationals(matrix, vec)
    if x is None:
        return None
    result = list(matrix.ring.reduce(np.array(x, dtype=object)))
    if settings.PARANOID_CHECKS and matrix.rows:
        back = (ExactMatrix([result], matrix.ring) @ matrix).data[0]
        if np.any(matrix.ring.reduce(back - vec) != 0):
            raise DifferentialError("solve_in_span 见证复核失败")
    return result


# ---------------------------------------------------------------------------
# 核与商群
# ---------------------------------------------------------------------------

def kernel_mod(matrix: ExactMatrix, m: int) -> ExactMatrix:
    """{x : x·M ≡ 0 (mod m)} 的生成元（m = 0 表示在 Z 上）"""
    form = smith_normal_form(matrix.over(INTEGERS))
    diag = form.diagonal
    r = form.rank
    gens = []
    for i in range(matrix.rows):
        row = form.U.data[i]
        if i < r:
            if m == 0:
                continue
            g = math.gcd(diag[i], m)
            if g == 1:
                continue
            gens.append([int(x) % m for x in (m // g) * row])
        else:
            gens.append([int(x) % m if m else int(x) for x in row])
    return ExactMatrix(gens, INTEGERS, cols=matrix.rows)


@dataclass
class QuotientGroup:
    """核格 / 像格 的不变因子分解"""

    invariants: List[int]
    representatives: List[List[int]]
    moduli: List[int]
    _basis_diag: List[int] = field(repr=False, default_factory=list)
    _basis_V: Optional[ExactMatrix] = field(repr=False, default=None)
    _coord_V: Optional[ExactMatrix] = field(repr=False, default=None)
    _kept: List[int] = field(repr=False, default_factory=list)
    _coord_diag: List[int] = field(repr=False, default_factory=list)

    @property
    def is_finite(self) -> bool:
        return all(d > 0 for d in self.invariants)

    @property
    def order(self) -> Optional[int]:
        return math.prod(self.invariants) if self.is_finite else None

    def _lattice_coordinates(self, v: Sequence[int]) -> List[int]:
        r = len(self._basis_diag)
        cols = len(self.moduli)
        if cols == 0:
            return []
        w = (ExactMatrix([[int(x) for x in v]]) @ self._basis_V).data[0]
        y = []
        for i in range(cols):
            if i < r:
                if w[i] % self._basis_diag[i] != 0:
                    raise DifferentialError("向量不在核格中（像不包含于核）")
                y.append(w[i] // self._basis_diag[i])
            elif w[i] != 0:
                raise DifferentialError("向量不在核格中（像不包含于核）")
        return y

    def coordinates(self, v: Sequence[int]) -> Tuple[int, ...]:
        """核元素 v 在商群生成元下的坐标"""
        y = self._lattice_coordinates(v)
        if not y:
            return ()
        u = (ExactMatrix([y]) @ self._coord_V).data[0]
        out = []
        for j, inv in zip(self._kept, self.invariants):
            out.append(int(u[j]) % inv if inv > 0 else int(u[j]))
        return tuple(out)


def quotient_invariants(
    kernel_gens: ExactMatrix, image_gens: ExactMatrix, group: AbelianGroup
) -> QuotientGroup:
    """计算 ⟨kernel_gens⟩ / ⟨image_gens⟩ 的不变因子与代表元

    group 给出每一列的模数（长度为 1 时广播到所有列）。
    """
    cols = kernel_gens.cols
    if image_gens.rows and image_gens.cols != cols:
        raise DimensionMismatchError("核与像生成元的列数不一致")
    moduli = list(group.moduli)
    if len(moduli) == 1 and cols != 1:
        moduli = moduli * cols
    if len(moduli) != cols:
        raise DimensionMismatchError(f"模数个数 {len(moduli)} 与列数 {cols} 不符")

    modulus_rows = []
    for j, m in enumerate(moduli):
        if m > 0:
            row = [0] * cols
            row[j] = m
            modulus_rows.append(row)

    kernel_lattice = ExactMatrix(kernel_gens.to_rows() + modulus_rows, INTEGERS, cols=cols)
    kform = smith_normal_form(kernel_lattice)
    r = kform.rank
    basis_diag = kform.diagonal[:r]
    # 核格基 G 的第 i 行 = d_i · (V⁻¹)_i
    basis = [[basis_diag[i] * int(x) for x in kform.V_inv.data[i]] for i in range(r)]

    lattice = QuotientGroup([], [], moduli, basis_diag, kform.V, None, [], [])
    image_rows = image_gens.to_rows() + modulus_rows
    coords = [lattice._lattice_coordinates(v) for v in image_rows]
    coord_matrix = ExactMatrix(coords, INTEGERS, cols=r)
    cform = smith_normal_form(coord_matrix)
    cdiag = cform.diagonal
    rank2 = cform.rank

    invariants, kept, reps = [], [], []
    for j in range(r):
        d = cdiag[j] if j < rank2 else 0
        if d == 1:
            continue
        kept.append(j)
        invariants.append(d)
        lift = [0] * cols
        for i in range(r):
            coef = int(cform.V_inv.data[j, i])
            if coef:
                for k in range(cols):
                    lift[k] += coef * basis[i][k]
        reps.append([x % m if m > 0 else x for x, m in zip(lift, moduli)])

    logger.info(f"✅ 商群不变因子: {invariants}")
    return QuotientGroup(invariants, reps, moduli, basis_diag, kform.V, cform.V, kept, cdiag)
