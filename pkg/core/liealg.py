"""
单李代数的根系
Bourbaki 编号，归一化不变型 (θ|θ)=2，所有配对均为精确有理数
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import Matrix

from core.errors import InvalidAlgebraError
from core.scalar import SineProductScalar, two_sine_product

logger = logging.getLogger(__name__)

# 合法的 (类型, 最小秩)
MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
EXCEPTIONAL_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}

# Langlands 对偶类型
DUAL_TYPE = {"B": "C", "C": "B"}

_ALGEBRA_PATTERN = re.compile(r"^([A-Ga-g])_?(\d+)$")
_CLASSICAL_PATTERN = re.compile(r"^(sl|sp|so)_?(\d+)$", re.IGNORECASE)


def validate_type(type_letter, rank):
    """检查 (类型, 秩) 是否为单李代数"""
    if type_letter in MIN_RANK:
        if rank < MIN_RANK[type_letter]:
            raise InvalidAlgebraError(
                f"{type_letter}_{rank} 不是合法的单李代数（{type_letter} 需要秩 ≥ {MIN_RANK[type_letter]}）"
            )
        return
    if type_letter in EXCEPTIONAL_RANKS:
        if rank not in EXCEPTIONAL_RANKS[type_letter]:
            raise InvalidAlgebraError(f"{type_letter}_{rank} 不是合法的例外型李代数")
        return
    raise InvalidAlgebraError(f"未知类型: {type_letter!r}")


def _simple_norms(type_letter, rank):
    """各单根的平方长度"""
    if type_letter == "B":
        return [Fraction(2)] * (rank - 1) + [Fraction(1)]
    if type_letter == "C":
        return [Fraction(1)] * (rank - 1) + [Fraction(2)]
    if type_letter == "F":
        return [Fraction(2), Fraction(2), Fraction(1), Fraction(1)]
    if type_letter == "G":
        return [Fraction(2, 3), Fraction(2)]
    return [Fraction(2)] * rank


def _edges(type_letter, rank):
    """Dynkin 图的边（0 起始编号）"""
    if type_letter == "D":
        return [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    if type_letter == "E":
        # 1-3-4-5-...，2 接在 4 上
        chain = [0, 2] + list(range(3, rank))
        return [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)] + [(1, 3)]
    return [(i, i + 1) for i in range(rank - 1)]


def _gram_matrix(type_letter, rank):
    norms = _simple_norms(type_letter, rank)
    gram = [[Fraction(0)] * rank for _ in range(rank)]
    for i in range(rank):
        gram[i][i] = norms[i]
    for i, j in _edges(type_letter, rank):
        value = -max(norms[i], norms[j]) / 2
        gram[i][j] = gram[j][i] = value
    return gram


def _positive_roots(cartan):
    """按根串规则逐层生成正根"""
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        next_layer = []
        for beta in layer:
            for i in range(n):
                down = 0
                gamma = list(beta)
                while True:
                    gamma[i] -= 1
                    if tuple(gamma) in roots:
                        down += 1
                    else:
                        break
                pairing = sum(beta[j] * cartan[j][i] for j in range(n))
                if down - pairing > 0:
                    new = list(beta)
                    new[i] += 1
                    new = tuple(new)
                    if new not in roots:
                        roots.add(new)
                        next_layer.append(new)
        layer = next_layer
    return sorted(roots, key=lambda r: (sum(r), r))


@dataclass(frozen=True)
class RootSystem:
    """
    单李代数的根数据

    根以单根基下的整数坐标存储；权与余权（ρ、ρ^∨）也写在单根基下，
    通过不变型把 h 与 h* 等同。
    """

    type_letter: str
    rank: int
    form_matrix: tuple
    cartan: tuple
    positive_roots: tuple
    rho: tuple
    rho_check: tuple
    theta: tuple
    theta_s: tuple
    root_norms: tuple = field(repr=False)

    @property
    def name(self):
        return f"{self.type_letter}{self.rank}"

    # ---------- 配对 ----------

    def pair(self, u, v):
        """(u|v)，u、v 为单根基下的坐标"""
        total = Fraction(0)
        for i, ui in enumerate(u):
            if ui == 0:
                continue
            row = self.form_matrix[i]
            for j, vj in enumerate(v):
                if vj:
                    total += ui * row[j] * vj
        return total

    def norm(self, alpha):
        return self.pair(alpha, alpha)

    def coroot(self, alpha):
        """α^∨ = 2α/(α|α)"""
        scale = 2 / self.norm(alpha)
        return tuple(scale * a for a in alpha)

    def is_long(self, alpha):
        return self.norm(alpha) == 2

    @staticmethod
    def height(alpha):
        return sum(alpha)

    def simple_norms(self):
        return [self.form_matrix[i][i] for i in range(self.rank)]

    def weight_pairing(self, dynkin_labels, alpha):
        """
        (λ|α)，λ 以基本权坐标（Dynkin 标号）给出

        (ϖ_j|α_i) = δ_ij (α_i|α_i)/2
        """
        norms = self.simple_norms()
        return sum(
            (a * norms[j] / 2 * dynkin_labels[j] for j, a in enumerate(alpha)),
            Fraction(0),
        )

    # ---------- 数值不变量 ----------

    @property
    def num_pos_roots(self):
        return len(self.positive_roots)

    @property
    def short_positive_roots(self):
        return tuple(a for a, n in zip(self.positive_roots, self.root_norms) if n != 2)

    @property
    def dim(self):
        return self.rank + 2 * self.num_pos_roots

    @property
    def lacing(self):
        """r^∨ = 长根与短根平方长度之比"""
        return int(2 / min(self.root_norms))

    @property
    def coxeter_number(self):
        return 1 + self.height(self.theta)

    @property
    def dual_coxeter_number(self):
        # θ^∨ = θ
        return int(1 + self.pair(self.rho, self.theta))

    def root_matrix(self):
        """正根坐标组成的整数矩阵，行对应正根"""
        return np.array(self.positive_roots, dtype=np.int64)


@lru_cache(maxsize=None)
def build_root_system(type_letter, rank):
    """
    构造根系

    Args:
        type_letter: A-G
        rank: 秩

    Returns:
        RootSystem

    Raises:
        InvalidAlgebraError: 非法的 (类型, 秩)
    """
    type_letter = str(type_letter).upper()
    validate_type(type_letter, rank)

    gram = _gram_matrix(type_letter, rank)
    cartan = [
        [2 * gram[i][j] / gram[j][j] for j in range(rank)] for i in range(rank)
    ]
    cartan = [[int(x) for x in row] for row in cartan]
    roots = _positive_roots(cartan)

    def pair(u, v):
        return sum(
            (u[i] * gram[i][j] * v[j] for i in range(rank) for j in range(rank)),
            Fraction(0),
        )

    norms = [pair(a, a) for a in roots]
    rho = tuple(sum((Fraction(a[i]) for a in roots), Fraction(0)) / 2 for i in range(rank))
    rho_check = tuple(
        sum((Fraction(2) / n * a[i] for a, n in zip(roots, norms)), Fraction(0)) / 2
        for i in range(rank)
    )
    theta = max(roots, key=sum)
    short = [a for a, n in zip(roots, norms) if n != 2]
    theta_s = max(short, key=sum) if short else theta

    rs = RootSystem(
        type_letter=type_letter,
        rank=rank,
        form_matrix=tuple(tuple(row) for row in gram),
        cartan=tuple(tuple(row) for row in cartan),
        positive_roots=tuple(roots),
        rho=rho,
        rho_check=rho_check,
        theta=theta,
        theta_s=theta_s,
        root_norms=tuple(norms),
    )
    logger.debug("构造根系 %s: %d 个正根", rs.name, rs.num_pos_roots)
    return rs


@dataclass(frozen=True)
class CartanInvariants:
    """Table data_simple 的一行"""

    dim_g: int
    h: int
    h_check: int
    lacing: int
    index_Pcheck_over_Qcheck: int
    index_P_over_Qcheck: int
    index_Pcheck_over_rQ: int
    num_pos_roots: int
    num_short_pos_roots: int


def _det(matrix):
    return Fraction(str(Matrix(matrix).det()))


@lru_cache(maxsize=None)
def cartan_invariants(rs):
    """计算 dim g、Coxeter 数、对偶 Coxeter 数以及格指数"""
    gram = [list(row) for row in rs.form_matrix]
    norms = rs.simple_norms()
    coroot_gram = [
        [gram[i][j] * 4 / (norms[i] * norms[j]) for j in range(rs.rank)]
        for i in range(rs.rank)
    ]
    r = rs.lacing
    return CartanInvariants(
        dim_g=rs.dim,
        h=rs.coxeter_number,
        h_check=rs.dual_coxeter_number,
        lacing=r,
        index_Pcheck_over_Qcheck=int(_det([list(row) for row in rs.cartan])),
        index_P_over_Qcheck=int(_det(coroot_gram)),
        index_Pcheck_over_rQ=int(r ** rs.rank * _det(gram)),
        num_pos_roots=rs.num_pos_roots,
        num_short_pos_roots=len(rs.short_positive_roots),
    )


def langlands_dual_coxeter(rs):
    """Langlands 对偶代数的对偶 Coxeter 数 h^∨_{Lg}"""
    letter = DUAL_TYPE.get(rs.type_letter, rs.type_letter)
    if letter == "C" and rs.rank == 2:
        letter = "B"
    if rs.type_letter in ("F", "G"):
        # F4、G2 的对偶同型，但长短根互换
        return {"F": 9, "G": 4}[rs.type_letter]
    return build_root_system(letter, rs.rank).dual_coxeter_number


def rho_check_norm(rs):
    """|ρ^∨|²"""
    return rs.pair(rs.rho_check, rs.rho_check)


def strange_formula_norm(rs):
    """|ρ|² = h^∨ dim g / 12"""
    return Fraction(rs.dual_coxeter_number * rs.dim, 12)


def rho_pairings(rs, coroot_side=False):
    """(ρ|α) 或 (ρ|α^∨) 对所有正根"""
    values = []
    for alpha, n in zip(rs.positive_roots, rs.root_norms):
        value = rs.pair(rs.rho, alpha)
        values.append(value * 2 / n if coroot_side else value)
    return values


def rho_product(rs, denominator, coroot_side=False):
    """
    ∏_{α∈Δ+} 2 sin(π(ρ|α)/d)，或 α^∨ 版本

    Args:
        rs: RootSystem
        denominator: 正整数 d
        coroot_side: True 时使用 (ρ|α^∨)

    Returns:
        SineProductScalar: 某个角为 π 的整数倍时结果为精确的 0
    """
    if denominator <= 0:
        raise ValueError(f"分母必须为正整数: {denominator}")
    return two_sine_product(
        value / denominator for value in rho_pairings(rs, coroot_side)
    )


def expected_rho_product(rs, identity):
    """
    乘积恒等式右端

    identity:
        1: d = h^∨，(ρ|α)，|P/Q^∨|^{1/2}(h^∨)^{ℓ/2}
        2: d = h^∨+1，(ρ|α)，(h^∨+1)^{ℓ/2}（C、F、G 型不成立）
        3: d = h，(ρ|α^∨)，|P^∨/Q^∨|^{1/2} h^{ℓ/2}
        4: d = h+1，(ρ|α^∨)，(h+1)^{ℓ/2}
    """
    inv = cartan_invariants(rs)
    half_rank = Fraction(rs.rank, 2)
    if identity == 1:
        return (inv.h_check, False,
                SineProductScalar.sqrt(inv.index_P_over_Qcheck)
                * SineProductScalar.rational(inv.h_check) ** half_rank)
    if identity == 2:
        if rs.type_letter in ("C", "F", "G"):
            raise ValueError(f"恒等式 (2) 对 {rs.name} 不成立")
        return (inv.h_check + 1, False,
                SineProductScalar.rational(inv.h_check + 1) ** half_rank)
    if identity == 3:
        return (inv.h, True,
                SineProductScalar.sqrt(inv.index_Pcheck_over_Qcheck)
                * SineProductScalar.rational(inv.h) ** half_rank)
    if identity == 4:
        return (inv.h + 1, True, SineProductScalar.rational(inv.h + 1) ** half_rank)
    raise ValueError(f"未知恒等式编号: {identity}")


def all_simple_types(max_rank=8):
    """秩不超过 max_rank 的全部单李代数类型"""
    types = []
    for letter in "ABCD":
        for rank in range(MIN_RANK[letter], max_rank + 1):
            types.append((letter, rank))
    for letter, ranks in EXCEPTIONAL_RANKS.items():
        types.extend((letter, r) for r in ranks if r <= max_rank)
    return types


@dataclass(frozen=True)
class AlgebraSpec:
    """
    代数描述：单李代数类型，外加经典型的自然表示族

    family 为 'sl'、'sp'、'so' 或 None（例外型或按类型名给出时仍推断经典族）
    """

    type_letter: str
    rank: int
    family: str = None
    n: int = None

    @property
    def name(self):
        if self.family:
            return f"{self.family}{self.n}"
        return f"{self.type_letter}{self.rank}"

    @property
    def is_classical(self):
        return self.family is not None

    def root_system(self):
        return build_root_system(self.type_letter, self.rank)


def classical_spec(family, n):
    """经典代数 sl_n、sp_n、so_n 对应的单李代数类型（含小秩同构）"""
    family = family.lower()
    if family == "sl":
        if n < 2:
            raise InvalidAlgebraError(f"sl_{n} 不是单李代数")
        return AlgebraSpec("A", n - 1, "sl", n)
    if family == "sp":
        if n < 2 or n % 2:
            raise InvalidAlgebraError(f"sp_{n} 需要 n 为正偶数")
        if n == 2:
            return AlgebraSpec("A", 1, "sp", n)
        if n == 4:
            return AlgebraSpec("B", 2, "sp", n)
        return AlgebraSpec("C", n // 2, "sp", n)
    if family == "so":
        if n < 5:
            raise InvalidAlgebraError(f"so_{n} 不按单李代数处理（n ≥ 5）")
        if n == 5:
            return AlgebraSpec("B", 2, "so", n)
        if n == 6:
            return AlgebraSpec("A", 3, "so", n)
        if n % 2:
            return AlgebraSpec("B", (n - 1) // 2, "so", n)
        return AlgebraSpec("D", n // 2, "so", n)
    raise InvalidAlgebraError(f"未知经典族: {family!r}")


def parse_algebra(text):
    """
    解析代数描述，例如 "E6"、"C4"、"sl9"、"so8"

    A/B/C/D 型同时记录自然表示，用于划分参数化。
    """
    text = str(text).strip()
    match = _CLASSICAL_PATTERN.match(text)
    if match:
        return classical_spec(match.group(1), int(match.group(2)))
    match = _ALGEBRA_PATTERN.match(text)
    if not match:
        raise InvalidAlgebraError(f"无法解析代数: {text!r}")
    letter, rank = match.group(1).upper(), int(match.group(2))
    validate_type(letter, rank)
    if letter == "A":
        return AlgebraSpec(letter, rank, "sl", rank + 1)
    if letter == "B":
        return AlgebraSpec(letter, rank, "so", 2 * rank + 1)
    if letter == "C":
        return AlgebraSpec(letter, rank, "sp", 2 * rank)
    if letter == "D":
        return AlgebraSpec(letter, rank, "so", 2 * rank)
    return AlgebraSpec(letter, rank)
