"""
金字塔与好分次
由 sl_n 金字塔、辛/正交 Dynkin 金字塔求出 x^0 及正根的分次重数
"""

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from core.errors import InvalidPartitionError
from core.scalar import SineProductScalar, numerically_equal, two_sine_product

logger = logging.getLogger(__name__)

ALIGNMENTS = ("left", "dynkin", "right")

NORM_LONG = Fraction(2)
NORM_SHORT = Fraction(1)


@dataclass(frozen=True)
class Box:
    """金字塔中的一个格子（坐标为中心点）"""

    label: int
    row: int
    col: int
    skew: bool = False


@dataclass(frozen=True)
class Pyramid:
    """
    金字塔

    algebra_parity: 'A'、'symplectic' 或 'orthogonal'
    alignment: 仅 A 型有意义
    """

    algebra_parity: str
    boxes: tuple
    shape: tuple
    alignment: str = "dynkin"

    @property
    def n(self):
        return len(self.boxes)

    def columns(self):
        return sorted((box.col for box in self.boxes), reverse=True)


@dataclass(frozen=True)
class DegreeMultiset:
    """
    正根按 (x^0|α) 的分布

    entries 中每一项为 (度数, 平方长度)，度数取非负值；
    rank 为 Cartan 子代数维数。
    """

    rank: int
    entries: tuple

    @classmethod
    def from_entries(cls, rank, entries):
        return cls(rank=rank, entries=tuple(sorted((Fraction(d), Fraction(n)) for d, n in entries)))

    @property
    def num_pos_roots(self):
        return len(self.entries)

    def counts(self):
        """{j: (全部, 长根, 短根)}，j > 0"""
        table = {}
        for degree, norm in self.entries:
            if degree == 0:
                continue
            total, long_, short = table.get(degree, (0, 0, 0))
            if norm == 2:
                table[degree] = (total + 1, long_ + 1, short)
            else:
                table[degree] = (total + 1, long_, short + 1)
        return table

    def count(self, degree):
        degree = Fraction(degree)
        return sum(1 for d, _ in self.entries if d == degree)

    @property
    def zero_count(self):
        """|Δ^0_{Γ,+}|"""
        return self.count(0)

    @property
    def zero_short_count(self):
        return sum(1 for d, n in self.entries if d == 0 and n != 2)

    @property
    def half_count(self):
        """|Δ^{1/2}_Γ|"""
        return self.count(Fraction(1, 2))

    @property
    def dim_g0(self):
        return self.rank + 2 * self.zero_count

    @property
    def dim_gf(self):
        return self.dim_g0 + self.half_count

    @property
    def dim_natural(self):
        """dim g^♮ = dim g^0 − dim g^1（Dynkin 分次）"""
        return self.dim_g0 - self.count(1)

    @property
    def is_even(self):
        return all(d.denominator == 1 for d, _ in self.entries)

    def degree_sum(self):
        """Σ (x^0|α) = 2(x^0|ρ)"""
        return sum((d for d, _ in self.entries), Fraction(0))

    def degree_square_sum(self):
        return sum((d * d for d, _ in self.entries), Fraction(0))

    def positive_degrees(self):
        """Δ_+ \\ Δ^0_+ 上的 (度数, 平方长度)"""
        return [(d, n) for d, n in self.entries if d != 0]


def _check_shape(shape):
    parts = tuple(int(p) for p in shape)
    if any(p <= 0 for p in parts):
        raise InvalidPartitionError(f"划分的各部分必须为正整数: {shape}")
    return tuple(sorted(parts, reverse=True))


def _number_boxes(cells):
    """按 列降序、行降序 编号 1..n"""
    ordered = sorted(cells, key=lambda c: (-c[1], -c[0]))
    return tuple(Box(label=i, row=row, col=col, skew=skew)
                 for i, (row, col, skew) in enumerate(ordered, start=1))


def build_pyramid(shape, alignment="dynkin"):
    """
    构造 sl_n 的金字塔

    Args:
        shape: 划分（任意顺序）
        alignment: 'left'、'dynkin' 或 'right'

    Returns:
        Pyramid: 第一行（y=1）为最长的一行，居中
    """
    if alignment not in ALIGNMENTS:
        raise ValueError(f"未知对齐方式: {alignment!r}")
    parts = _check_shape(shape)
    cells = []
    if parts:
        top = parts[0]
        for index, part in enumerate(parts):
            row = 2 * index + 1
            if alignment == "dynkin":
                start = 1 - part
            elif alignment == "left":
                start = 1 - top
            else:
                start = top - 1 - 2 * (part - 1)
            cells.extend((row, start + 2 * j, False) for j in range(part))
    return Pyramid("A", _number_boxes(cells), parts, alignment)


def _odd_multiplicity_parts(parts, parity):
    counts = Counter(parts)
    return sorted((p for p, m in counts.items() if m % 2 and p % 2 == parity), reverse=True)


def build_epsilon_dynkin_pyramid(shape, epsilon):
    """
    构造辛（ε=-1）或正交（ε=+1）Dynkin 金字塔

    中心对称放置各行；奇重数的偶部分（辛）或成对的奇部分（正交）形成斜行，
    n 为奇数的正交情形另有第零行。标号 i 与 -i 位于中心对称的格子。

    Raises:
        InvalidPartitionError: 划分不属于 P_ε(n)
    """
    from core.orbits import Partition, parity_class

    parts = _check_shape(shape)
    if not parity_class(Partition(parts), epsilon):
        raise InvalidPartitionError(f"{parts} 不属于 P_{epsilon}({sum(parts)})")
    n = sum(parts)
    remaining = Counter(parts)
    upper, lower, zeroth = [], [], []

    if epsilon == 1 and n % 2:
        odd = _odd_multiplicity_parts(parts, 1)
        part = odd[0]
        zeroth = [(0, 1 - part + 2 * j, True) for j in range(part)]
        remaining[part] -= 1

    # 正交情形中需要成对处理的奇部分
    pairs = {}
    if epsilon == 1:
        odd = _odd_multiplicity_parts(tuple(remaining.elements()), 1)
        for big, small in zip(odd[0::2], odd[1::2]):
            pairs[big] = small

    next_row = 1
    for part in sorted(remaining, reverse=True):
        while remaining[part] > 0:
            if epsilon == -1 and remaining[part] % 2:
                upper.append([(next_row, 1 + 2 * j, True) for j in range(part // 2)])
                remaining[part] -= 1
            elif epsilon == 1 and part in pairs and remaining[part] % 2:
                small = pairs.pop(part)
                upper.append([(next_row, 1 - small + 2 * j, True)
                              for j in range((part + small) // 2)])
                remaining[part] -= 1
                remaining[small] -= 1
            else:
                upper.append([(next_row, 1 - part + 2 * j, False) for j in range(part)])
                remaining[part] -= 2
            next_row += 2

    for row in upper:
        lower.append([(-r, -c, s) for r, c, s in row])

    # 标号：上半平面与第零行正列为正标号
    positive = [c for row in upper for c in row] + [c for c in zeroth if c[1] > 0]
    positive.sort(key=lambda c: (-c[1], -c[0]))
    boxes = []
    for i, (row, col, skew) in enumerate(positive, start=1):
        boxes.append(Box(i, row, col, skew))
        boxes.append(Box(-i, -row, -col, skew))
    boxes.extend(Box(0, row, col, skew) for row, col, skew in zeroth if col == 0)

    parity = "symplectic" if epsilon == -1 else "orthogonal"
    if len(boxes) != n:
        raise InvalidPartitionError(f"金字塔格数 {len(boxes)} 与 n={n} 不符")
    return Pyramid(parity, tuple(sorted(boxes, key=lambda b: (-b.col, -b.row))), parts, "dynkin")


def epsilon_coordinates(pyramid):
    """
    x^0 的 ε 坐标

    Returns:
        list[Fraction]: A 型为全部 n 个格子的 col/2；辛/正交为正标号格子的 col/2
    """
    if pyramid.algebra_parity == "A":
        return [Fraction(box.col, 2) for box in pyramid.boxes]
    ordered = sorted((b for b in pyramid.boxes if b.label > 0), key=lambda b: b.label)
    return [Fraction(box.col, 2) for box in ordered]


def degree_multiset(pyramid):
    """
    由格子的列坐标计算正根度数分布

    sl:  ε_i − ε_l
    sp:  ε_i ± ε_l（短根），2ε_i（长根）
    so:  ε_i ± ε_l（长根），n 为奇数时另有 ε_i（短根）
    """
    x = epsilon_coordinates(pyramid)
    entries = []
    if pyramid.algebra_parity == "A":
        for a, b in combinations(x, 2):
            entries.append((abs(a - b), NORM_LONG))
        return DegreeMultiset.from_entries(max(len(x) - 1, 0), entries)

    symplectic = pyramid.algebra_parity == "symplectic"
    pair_norm = NORM_SHORT if symplectic else NORM_LONG
    for a, b in combinations(x, 2):
        entries.append((abs(a - b), pair_norm))
        entries.append((abs(a + b), pair_norm))
    if symplectic:
        entries.extend((abs(2 * a), NORM_LONG) for a in x)
    elif pyramid.n % 2:
        entries.extend((abs(a), NORM_SHORT) for a in x)
    return DegreeMultiset.from_entries(len(x), entries)


def degree_multiset_from_weights(rs, weights):
    """
    由单根上的取值 α_i(h) 计算度数分布：(x^0|α) = ½ Σ a_i·w_i

    Args:
        rs: RootSystem
        weights: 加权 Dynkin 图，即 α_i(h) 的整数取值
    """
    doubled = rs.root_matrix() @ np.asarray(weights, dtype=np.int64)
    entries = [(Fraction(abs(int(v)), 2), norm) for v, norm in zip(doubled, rs.root_norms)]
    return DegreeMultiset.from_entries(rs.rank, entries)


def grading_dims(pyramid):
    """(|Δ^0_{Γ,+}|, |Δ^{1/2}_Γ|, dim g^0_Γ, dim g^f)"""
    multiset = degree_multiset(pyramid)
    return (multiset.zero_count, multiset.half_count, multiset.dim_g0, multiset.dim_gf)


def gamma_dependent_factor(multiset, q):
    """
    A'_Γ = ∏_{Δ+\\Δ^0_+} 2 sin(π(x^0|α)/q) / (2^{|Δ^{1/2}|/2} q^{|Δ^0_+|})
    """
    sines = two_sine_product(d / q for d, _ in multiset.positive_degrees())
    denominator = (
        SineProductScalar.sqrt(2) ** multiset.half_count
        * SineProductScalar.rational(q) ** multiset.zero_count
    )
    return sines / denominator


def alignment_shape_covered(shape, q):
    """形状是否为 (q^m, s)、(q^m, 1^s) 或 (q^m, (q-1)^2)"""
    parts = _check_shape(shape)
    rest = [p for p in parts if p != q]
    if any(p > q for p in parts):
        return False
    if len(rest) <= 1:
        return True
    if all(p == 1 for p in rest):
        return True
    return rest == [q - 1, q - 1]


def alignment_independence_check(shape, q, rel_tol=1e-9):
    """
    检查 A'_Γ 在左对齐、Dynkin、右对齐三种金字塔上是否一致

    Returns:
        bool，或 None 表示形状不在覆盖范围内（结论不保证）
    """
    if not alignment_shape_covered(shape, q):
        logger.debug("形状 %s 不在 Γ 无关性的覆盖范围内", shape)
        return None
    values = [gamma_dependent_factor(degree_multiset(build_pyramid(shape, a)), q)
              for a in ALIGNMENTS]
    return all(numerically_equal(values[0], v, rel_tol=rel_tol) for v in values[1:])


def render_ascii(pyramid, cell_width=4):
    """
    文本方式显示金字塔：每个格子显示其标号，斜行格子后缀 '*'

    列坐标每差 1 对应 cell_width/2 个字符，因此错位半格的行也能对齐。
    """
    if not pyramid.boxes:
        return ""
    half = max(cell_width // 2, 1)
    lo = min(b.col for b in pyramid.boxes)
    lines = []
    for row in sorted({b.row for b in pyramid.boxes}, reverse=True):
        line = ""
        for box in sorted((b for b in pyramid.boxes if b.row == row), key=lambda b: b.col):
            mark = f"{box.label}{'*' if box.skew else ''}".center(cell_width)
            offset = (box.col - lo) * half
            line = line.ljust(offset) + mark
        lines.append(line.rstrip())
    return "\n".join(lines)
