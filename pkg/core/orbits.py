"""
幂零轨道组合
划分与奇偶类、collapse、支配序、轨道维数、k ↦ O_k、行列消去、
collapsing 候选，以及 g^♮ 与 k^♮ 数据
"""

import logging
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import Matrix, Poly, Rational, Symbol
from sympy.parsing.sympy_parser import (
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from core.errors import InvalidAlgebraError, InvalidPartitionError, UnknownOrbitError
from core.exceptional import (
    ZERO_LABEL,
    centralizer_row,
    exceptional_labels,
    exceptional_orbit_label_for_level,
    exceptional_weighted_dynkin,
    normalize_label,
)
from core.liealg import build_root_system
from core.pyramids import (
    build_epsilon_dynkin_pyramid,
    build_pyramid,
    degree_multiset,
    degree_multiset_from_weights,
)

logger = logging.getLogger(__name__)

FAMILY_EPSILON = {"sl": 0, "sp": -1, "so": 1}

_LEVEL = Symbol("k")
_PARTITION_TERM = re.compile(r"^(\d+)(?:\^(\d+))?$")
_TRANSFORMS = standard_transformations + (implicit_multiplication_application,)


@dataclass(frozen=True, order=True)
class Partition:
    """整数划分，parts 降序"""

    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p <= 0 for p in parts):
            raise InvalidPartitionError(f"划分的各部分必须为正整数: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text):
        """'3,3,1'、'3^2,1' 或 '(3^2,1)'"""
        body = str(text).strip().strip("()").replace(" ", "")
        if not body:
            return cls(())
        parts = []
        for term in body.split(","):
            match = _PARTITION_TERM.match(term)
            if not match:
                raise InvalidPartitionError(f"无法解析划分: {text!r}")
            parts.extend([int(match.group(1))] * int(match.group(2) or 1))
        return cls(tuple(parts))

    @property
    def n(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def multiplicities(self):
        return Counter(self.parts)

    def dual(self):
        """λ*，λ*_j = #{i : λ_i ≥ j}"""
        if not self.parts:
            return Partition(())
        return Partition(tuple(sum(1 for p in self.parts if p >= j)
                               for j in range(1, self.parts[0] + 1)))

    def __str__(self):
        chunks = []
        for part, count in sorted(self.multiplicities().items(), reverse=True):
            chunks.append(f"{part}^{count}" if count > 1 else str(part))
        return "(" + ",".join(chunks) + ")"


def partitions(n, max_part=None):
    """按字典序降序生成 n 的全部划分"""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition(())
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield Partition((first,) + rest.parts)


def parity_class(partition, epsilon):
    """
    是否属于 P_ε(n)

    ε = -1：奇数部分重数为偶；ε = +1：偶数部分重数为偶；ε = 0 (sl) 总成立
    """
    if epsilon == 0:
        return True
    bad = 1 if epsilon == -1 else 0
    return all(count % 2 == 0 for part, count in partition.multiplicities().items()
               if part % 2 == bad)


def collapse(partition, epsilon):
    """
    λ^ε：P_ε(n) 中支配序下不超过 λ 的唯一极大元

    Raises:
        InvalidPartitionError: ε = -1 而 n 为奇数
    """
    if epsilon == 0:
        return partition
    if epsilon == -1 and partition.n % 2:
        raise InvalidPartitionError(f"{partition} 的总和为奇数，没有辛型 collapse")
    bad = 1 if epsilon == -1 else 0
    parts = list(partition.parts)
    while True:
        counts = Counter(parts)
        wrong = [p for p, m in counts.items() if m % 2 and p % 2 == bad]
        if not wrong:
            return Partition(tuple(parts))
        q = max(wrong)
        last = max(i for i, p in enumerate(parts) if p == q)
        parts[last] -= 1
        for j in range(last + 1, len(parts)):
            if parts[j] < q - 1:
                parts[j] += 1
                break
        else:
            parts.append(1)
        parts = [p for p in parts if p > 0]


def dominance_leq(mu, lam):
    """
    μ ≤ λ（支配序）

    Raises:
        InvalidPartitionError: 两个划分的总和不同
    """
    if mu.n != lam.n:
        raise InvalidPartitionError(f"{mu} 与 {lam} 的总和不同")
    total_mu = total_lam = 0
    for i in range(max(len(mu), len(lam))):
        total_mu += mu.parts[i] if i < len(mu) else 0
        total_lam += lam.parts[i] if i < len(lam) else 0
        if total_mu > total_lam:
            return False
    return True


def row_column_remove(lam, mu):
    """
    反复删去 λ、μ 相同的首行与相同的首列

    Returns:
        (λ', μ')

    Raises:
        InvalidPartitionError: μ 不小于等于 λ
    """
    if not dominance_leq(mu, lam):
        raise InvalidPartitionError(f"{mu} 不满足 ≤ {lam}")
    a, b = list(lam.parts), list(mu.parts)
    while a and b:
        if a[0] == b[0]:
            a, b = a[1:], b[1:]
        elif len(a) == len(b):
            a = [p - 1 for p in a if p > 1]
            b = [p - 1 for p in b if p > 1]
        else:
            break
    return Partition(tuple(a)), Partition(tuple(b))


def family_epsilon(spec):
    if spec.family is None:
        raise InvalidAlgebraError(f"{spec.name} 不是经典型")
    return FAMILY_EPSILON[spec.family]


def classical_partitions(spec):
    """P_ε(n) 的全部元素"""
    epsilon = family_epsilon(spec)
    return [lam for lam in partitions(spec.n) if parity_class(lam, epsilon)]


def is_very_even(spec, partition):
    return (spec.family == "so" and spec.n % 2 == 0 and partition.parts
            and all(p % 2 == 0 for p in partition.parts))


# ---------- 维数与加权 Dynkin 图 ----------

def classical_centralizer_dim(family, partition):
    """dim g^f 的划分公式"""
    squares = sum(c * c for c in partition.dual().parts)
    odd = sum(1 for p in partition.parts if p % 2)
    if family == "sl":
        return squares - 1
    if family == "sp":
        return (squares + odd) // 2
    return (squares - odd) // 2


def classical_weighted_dynkin(family, n, partition, tag=None):
    """
    由 h 的特征值求加权 Dynkin 图（按单李代数类型的 Bourbaki 编号）

    sp_4 按 B2 编号，so_6 按 A3 编号；极偶划分的 II 型交换最后两个节点。
    """
    eigen = sorted((p - 1 - 2 * j for p in partition.parts for j in range(p)), reverse=True)
    if family == "sl":
        return tuple(eigen[i] - eigen[i + 1] for i in range(n - 1))
    rank = n // 2
    top = eigen[:rank]
    diffs = [top[i] - top[i + 1] for i in range(rank - 1)]
    if family == "sp":
        weights = diffs + [2 * top[-1]]
        if n == 4:
            weights.reverse()
        return tuple(weights)
    if n % 2:
        return tuple(diffs + [top[-1]])
    weights = diffs + [top[-2] + top[-1]]
    if tag == "II":
        weights[-2], weights[-1] = weights[-1], weights[-2]
    if n == 6:
        weights = [weights[1], weights[0], weights[2]]
    return tuple(weights)


# ---------- 轨道描述 ----------

@dataclass(frozen=True)
class OrbitDescriptor:
    """
    幂零轨道

    label 为 Partition（经典型）或 Bala–Carter 标号（例外型）；
    tag 仅用于 so_n 的极偶划分（'I'/'II'），不影响任何不变量。
    """

    algebra: object
    label: object
    dim_orbit: int
    dim_centralizer: int
    weighted_dynkin: tuple
    tag: str = None

    @property
    def is_classical(self):
        return isinstance(self.label, Partition)

    @property
    def epsilon(self):
        return family_epsilon(self.algebra) if self.is_classical else None

    @property
    def label_text(self):
        if self.is_classical:
            return str(self.label) + (f"_{self.tag}" if self.tag else "")
        return self.label

    @property
    def is_even(self):
        return all(w % 2 == 0 for w in self.weighted_dynkin)

    @property
    def is_zero(self):
        return self.dim_orbit == 0

    def __str__(self):
        return f"{self.algebra.name}:{self.label_text}"


def make_orbit(spec, label, tag=None):
    """
    构造 OrbitDescriptor 并检查合法性

    Raises:
        InvalidPartitionError: 划分不属于 P_ε(n)
        UnknownOrbitError: 未知的例外型标号
    """
    rs = spec.root_system()
    if spec.is_classical:
        partition = label if isinstance(label, Partition) else Partition.parse(label)
        epsilon = family_epsilon(spec)
        if partition.n != spec.n or not parity_class(partition, epsilon):
            raise InvalidPartitionError(f"{partition} 不是 {spec.name} 的幂零轨道")
        if is_very_even(spec, partition):
            tag = tag or "I"
        else:
            tag = None
        dim_f = classical_centralizer_dim(spec.family, partition)
        weights = classical_weighted_dynkin(spec.family, spec.n, partition, tag)
        return OrbitDescriptor(spec, partition, rs.dim - dim_f, dim_f, weights, tag)

    key = normalize_label(label)
    row = centralizer_row(spec.name, key)
    weights = exceptional_weighted_dynkin(spec.name, row.label)
    dim_f = degree_multiset_from_weights(rs, weights).dim_gf
    return OrbitDescriptor(spec, row.label, rs.dim - dim_f, dim_f, weights)


def parse_orbit(spec, text):
    """
    解析轨道描述：经典型为 '3,3,1'、'3^2,1'（极偶划分可加后缀 '_II'），例外型为 Bala–Carter 标号
    """
    text = str(text).strip()
    if spec.is_classical:
        tag = None
        for suffix in ("_II", "_I"):
            if text.endswith(suffix):
                text, tag = text[: -len(suffix)], suffix[1:]
                break
        return make_orbit(spec, Partition.parse(text), tag)
    return make_orbit(spec, text)


def list_orbits(spec):
    """全部幂零轨道，按轨道维数降序"""
    if spec.is_classical:
        orbits = []
        for lam in classical_partitions(spec):
            if is_very_even(spec, lam):
                orbits.extend(make_orbit(spec, lam, tag) for tag in ("I", "II"))
            else:
                orbits.append(make_orbit(spec, lam))
    else:
        orbits = [make_orbit(spec, label) for label in exceptional_labels(spec.name)]
    return sorted(orbits, key=lambda o: -o.dim_orbit)


def orbit_dimensions(orbit):
    """(dim G.f, dim g^f)"""
    return orbit.dim_orbit, orbit.dim_centralizer


def weighted_dynkin(algebra, orbit):
    """轨道的加权 Dynkin 图；orbit 可以是 OrbitDescriptor 或其文本描述"""
    if not isinstance(orbit, OrbitDescriptor):
        orbit = parse_orbit(algebra, orbit)
    return orbit.weighted_dynkin


def orbit_grading(orbit):
    """
    Dynkin 分次的度数分布

    经典型由 Dynkin 金字塔读出，例外型由加权 Dynkin 图计算。
    """
    if orbit.is_classical:
        if orbit.algebra.family == "sl":
            pyramid = build_pyramid(orbit.label.parts, "dynkin")
        else:
            pyramid = build_epsilon_dynkin_pyramid(orbit.label.parts, orbit.epsilon)
        return degree_multiset(pyramid)
    return degree_multiset_from_weights(orbit.algebra.root_system(), orbit.weighted_dynkin)


def closure_contains(big, small):
    """
    G.small ⊆ closure(G.big)

    经典型用支配序，结果是精确的。
    例外型不用 Bala–Carter 闭包序，只比较维数：维数严格更小是必要条件而非充分条件，
    所以维数更小但不可比的轨道也返回 True，同维的不同轨道返回 False。
    依赖它的候选集合因此可能偏大，不会漏掉真正的候选。
    """
    if big.is_classical:
        if big.label == small.label:
            return big.tag == small.tag
        return dominance_leq(small.label, big.label)
    if big.label == small.label:
        return True
    return small.dim_orbit < big.dim_orbit


# ---------- O_k ----------

def is_coprincipal(spec, q):
    r = spec.root_system().lacing
    return r > 1 and q % r == 0


def classical_orbit_partition(spec, q):
    """经典型 O_k 的划分（已做 ε-collapse）"""
    n = spec.n
    if spec.family == "sl":
        m, s = divmod(n, q)
        return Partition((q,) * m + ((s,) if s else ()))
    if spec.family == "sp":
        if q % 2:
            m, s = divmod(n, q)
            raw = (q,) * m + ((s,) if s else ())
        else:
            head = q // 2 + 1
            if n <= head:
                raw = (n,)
            else:
                m, s = divmod(n - head, q // 2)
                raw = (head,) + (q // 2,) * m + ((s,) if s else ())
        return collapse(Partition(raw), -1)
    if n % 2 == 0 or q % 2:
        head = q + 1
        if n <= head:
            raw = (n,)
        else:
            m, s = divmod(n - head, q)
            raw = (head,) + (q,) * m + ((s,) if s else ())
    else:
        m, s = divmod(n, q)
        raw = (q,) * m + ((s,) if s else ())
    return collapse(Partition(raw), 1)


def orbit_for_level(spec, q):
    """
    O_k，只依赖分母 q

    Raises:
        UnsupportedDenominatorError: 例外型且 q 不在 data/levels.tsv 中
    """
    if q < 1:
        raise ValueError(f"分母必须为正整数: {q}")
    if spec.is_classical:
        return make_orbit(spec, classical_orbit_partition(spec, q))
    label = exceptional_orbit_label_for_level(spec.name, q, is_coprincipal(spec, q))
    return make_orbit(spec, label)


# ---------- collapsing 候选 ----------

def collapsing_slice_candidates(spec, q):
    """
    O_k 闭包中、行列消去后余下 (1^k) 的 μ

    Raises:
        InvalidAlgebraError: 例外型
    """
    if not spec.is_classical:
        raise InvalidAlgebraError(f"{spec.name} 的候选由例外型数据给出")
    lam = classical_orbit_partition(spec, q)
    epsilon = family_epsilon(spec)
    found = []
    for mu in partitions(spec.n):
        if not parity_class(mu, epsilon) or not dominance_leq(mu, lam):
            continue
        _, residue = row_column_remove(lam, mu)
        if all(p == 1 for p in residue.parts):
            found.append(mu)
    return found


def sl_candidate_families(n, q):
    """sl_n 候选的闭式：λ、(q^m,1^s)、以及 s̃ = q-2 时的 (q^{m̃-1},(q-1)^2)"""
    m_max, s_tail = divmod(n, q)
    found = {Partition((q,) * m_max + ((s_tail,) if s_tail else ()))}
    for m in range(m_max + 1):
        found.add(Partition((q,) * m + (1,) * (n - q * m)))
    if q >= 2 and s_tail == q - 2 and m_max >= 1:
        found.add(Partition((q,) * (m_max - 1) + (q - 1, q - 1)))
    return sorted(found, reverse=True)


# ---------- g^♮ 与 k^♮ ----------

@dataclass(frozen=True)
class AffineForm:
    """a·k + b"""

    a: Fraction
    b: Fraction

    @classmethod
    def parse(cls, text):
        try:
            expr = parse_expr(str(text).replace("^", "**"), local_dict={"k": _LEVEL},
                              transformations=_TRANSFORMS)
            poly = Poly(expr, _LEVEL)
        except Exception as e:
            raise UnknownOrbitError(f"无法解析 k 的仿射式 {text!r}: {e}") from e
        if poly.degree() > 1:
            raise UnknownOrbitError(f"{text!r} 不是 k 的仿射式")
        coeffs = poly.all_coeffs()
        a = coeffs[0] if len(coeffs) == 2 else Rational(0)
        b = coeffs[-1]
        return cls(Fraction(str(a)), Fraction(str(b)))

    def __call__(self, k):
        return self.a * Fraction(k) + self.b

    def scaled(self, factor):
        return AffineForm(self.a * factor, self.b * factor)

    def root(self):
        return -self.b / self.a if self.a else None

    def __str__(self):
        head = "k" if self.a == 1 else f"{self.a}k"
        if self.b == 0:
            return head
        sign = "+" if self.b > 0 else "-"
        return f"{head}{sign}{abs(self.b)}"


@dataclass(frozen=True)
class NaturalFactor:
    """g^♮ 的单分量及其水平 k_i^♮"""

    type_letter: str
    rank: int
    level: AffineForm

    @property
    def name(self):
        return f"{self.type_letter}{self.rank}"

    def root_system(self):
        return build_root_system(self.type_letter, self.rank)


@dataclass(frozen=True)
class NaturalDecomposition:
    """
    g^♮ = g_0^♮ ⊕ ⊕_i g_i^♮

    center_forms 只用于判定 φ_0^♮ 是否为零（相差非零倍数）。
    closed_form 记录覆盖该划分的表格行，例外型为 'table'。
    """

    center_dim: int
    factors: tuple
    center_forms: tuple = ()
    closed_form: str = None

    @property
    def dim(self):
        return self.center_dim + sum(f.root_system().dim for f in self.factors)

    @property
    def type_text(self):
        pieces = []
        if self.center_dim:
            pieces.append("C" if self.center_dim == 1 else f"C^{self.center_dim}")
        pieces.extend(f.name for f in self.factors)
        return "×".join(pieces) if pieces else "0"

    def levels_at(self, k):
        return [f.level(k) for f in self.factors]

    def center_vanishes(self, k):
        return all(form(k) == 0 for form in self.center_forms)


def _orthogonal_factors(r, form):
    """so_r 按小秩同构换成单李代数；so_2 返回 None 表示进入中心"""
    if r <= 1:
        return []
    if r == 2:
        return None
    if r == 3:
        return [NaturalFactor("A", 1, form.scaled(2))]
    if r == 4:
        return [NaturalFactor("A", 1, form), NaturalFactor("A", 1, form)]
    if r == 5:
        return [NaturalFactor("B", 2, form)]
    if r == 6:
        return [NaturalFactor("A", 3, form)]
    return [NaturalFactor("B" if r % 2 else "D", r // 2, form)]


def _symplectic_factors(r, form):
    if r == 0:
        return []
    if r == 2:
        return [NaturalFactor("A", 1, form)]
    if r == 4:
        return [NaturalFactor("B", 2, form)]
    return [NaturalFactor("C", r // 2, form)]


def _sl_center_forms(mult):
    """
    s(⊕ gl_{r_d}) 中心上 φ_0^♮ 的 Gram 矩阵

    x = Σ c_d·id_d，约束 Σ c_d·d·r_d = 0
    """
    parts = sorted(mult)
    if len(parts) < 2:
        return ()
    constraint = Matrix([[d * mult[d] for d in parts]])
    basis = constraint.nullspace()

    def pairing(u, v):
        a = sum(u[i] * v[i] * d * mult[d] for i, d in enumerate(parts))
        b = 0
        for i, d in enumerate(parts):
            for j in range(i + 1, len(parts)):
                e = parts[j]
                b += (d * e - min(d, e)) * mult[d] * mult[e] * (u[i] - u[j]) * (v[i] - v[j])
        return Fraction(str(a)), Fraction(str(b))

    if len(basis) == 1:
        a, b = pairing(basis[0], basis[0])
        scale = Fraction(max(parts)) / a
        return (AffineForm(a * scale, b * scale),)
    forms = []
    for i in range(len(basis)):
        for j in range(i, len(basis)):
            forms.append(AffineForm(*pairing(basis[i], basis[j])))
    return tuple(forms)


def classical_natural_decomposition(family, n, partition):
    """
    V = ⊕ V_d ⊗ M_d 给出 g^♮ 及各分量的 k^♮

    sl: s(⊕ gl(M_d))；so/sp: M_d 上的 so 或 sp，按 d 的奇偶与 ε 决定
    """
    mult = partition.multiplicities()
    factors, center = [], []

    def cross(d):
        return sum((d * e - min(d, e)) * r for e, r in mult.items() if e != d)

    if family == "sl":
        for d in sorted(mult, reverse=True):
            r = mult[d]
            if r >= 2:
                form = AffineForm(Fraction(d), Fraction(d * n - sum(min(d, e) * re for e, re in mult.items())))
                factors.append(NaturalFactor("A", r - 1, form))
        center = list(_sl_center_forms(mult))
        center_dim = len(mult) - 1
    else:
        center_dim = 0
        for d in sorted(mult, reverse=True):
            r = mult[d]
            half = d // 2
            if family == "so":
                if d % 2:
                    form = AffineForm(Fraction(d), Fraction((d * d - d) * r - 4 * half + cross(d)))
                    pieces = _orthogonal_factors(r, form)
                else:
                    form = AffineForm(Fraction(d, 2),
                                      Fraction((d * d - d) * r, 2) - 2 * half + Fraction(cross(d), 2))
                    pieces = _symplectic_factors(r, form)
            else:
                if d % 2:
                    form = AffineForm(Fraction(d),
                                      Fraction((d * d - d) * r, 2) + 2 * half + Fraction(cross(d), 2))
                    pieces = _symplectic_factors(r, form)
                else:
                    form = AffineForm(Fraction(2 * d), Fraction((d * d - d) * r + 4 * half + cross(d)))
                    pieces = _orthogonal_factors(r, form)
            if pieces is None:
                center_dim += 1
                center.append(form)
            else:
                factors.extend(pieces)
    return NaturalDecomposition(
        center_dim=center_dim,
        factors=tuple(factors),
        center_forms=tuple(center),
        closed_form=closed_form_row(family, partition),
    )


def _run(value, count):
    return (value,) * max(count, 0)


# 表中出现的形状，t 为主部分
_SHAPES = {
    "sl": (
        ("(q^m,s)", lambda t, m, s: _run(t, m) + (s,)),
        ("(q^m,1^s)", lambda t, m, s: _run(t, m) + _run(1, s)),
        ("(q^m,(q-1)^2)", lambda t, m, s: _run(t, m) + (t - 1, t - 1)),
    ),
    "sp": (
        ("(q^m,s)", lambda t, m, s: _run(t, m) + (s,)),
        ("(q^m,1^s)", lambda t, m, s: _run(t, m) + _run(1, s)),
        ("(q^m,q-1,s)", lambda t, m, s: _run(t, m) + (t - 1, s)),
        ("(q^m,q-1,1^s)", lambda t, m, s: _run(t, m) + (t - 1,) + _run(1, s)),
        ("(q^m,(q-2)^2)", lambda t, m, s: _run(t, m) + (t - 2, t - 2)),
        ("(q^m,(q-1)^2)", lambda t, m, s: _run(t, m) + (t - 1, t - 1)),
        ("(q+1,q^m,s)", lambda t, m, s: (t + 1,) + _run(t, m) + (s,)),
        ("(q+1,q^m,1^s)", lambda t, m, s: (t + 1,) + _run(t, m) + _run(1, s)),
        ("(q+1,q^m,q-1,s)", lambda t, m, s: (t + 1,) + _run(t, m) + (t - 1, s)),
        ("(q+1,q^m,q-1,1^s)", lambda t, m, s: (t + 1,) + _run(t, m) + (t - 1,) + _run(1, s)),
        ("(q+1,q^m,(q-2)^2)", lambda t, m, s: (t + 1,) + _run(t, m) + (t - 2, t - 2)),
    ),
    "so": (
        ("(q^m,s)", lambda t, m, s: _run(t, m) + (s,)),
        ("(q^m,1^s)", lambda t, m, s: _run(t, m) + _run(1, s)),
        ("(q^m,(q-1)^2)", lambda t, m, s: _run(t, m) + (t - 1, t - 1)),
        ("(q^m,(q-1)^2,1)", lambda t, m, s: _run(t, m) + (t - 1, t - 1, 1)),
        ("(q^m,s,1)", lambda t, m, s: _run(t, m) + (s, 1)),
        ("(q^m,2^2)", lambda t, m, s: _run(t, m) + (2, 2)),
        ("(3^m,2^4)", lambda t, m, s: _run(3, m) + (2, 2, 2, 2)),
        ("(q^m,q-1,s,1)", lambda t, m, s: _run(t, m) + (t - 1, s, 1)),
        ("(q^m,q-1,1^s)", lambda t, m, s: _run(t, m) + (t - 1,) + _run(1, s)),
        ("(q^m,q-1,2^2)", lambda t, m, s: _run(t, m) + (t - 1, 2, 2)),
        ("(q+1,q^m,s)", lambda t, m, s: (t + 1,) + _run(t, m) + (s,)),
        ("(q+1,q^m,1^s)", lambda t, m, s: (t + 1,) + _run(t, m) + _run(1, s)),
        ("(q+1,q^m,q-1,s,1)", lambda t, m, s: (t + 1,) + _run(t, m) + (t - 1, s, 1)),
        ("(q+1,q^m,q-1,1^s)", lambda t, m, s: (t + 1,) + _run(t, m) + (t - 1,) + _run(1, s)),
        ("(q+1,q^m,q-1,2^2)", lambda t, m, s: (t + 1,) + _run(t, m) + (t - 1, 2, 2)),
        ("(q+1,q^m,(q-2)^2,1)", lambda t, m, s: (t + 1,) + _run(t, m) + (t - 2, t - 2, 1)),
    ),
}


@lru_cache(maxsize=4096)
def closed_form_row(family, partition):
    """覆盖该划分的表格行名称，没有则返回 None"""
    if not partition.parts:
        return None
    n = partition.n
    counts = partition.multiplicities()
    largest = partition.parts[0]
    for name, shape in _SHAPES[family]:
        for t in {largest, largest - 1}:
            if t < 1:
                continue
            for m in range(max(counts.get(t, 0) - 2, 0), counts.get(t, 0) + 1):
                for s in range(0, n + 1):
                    candidate = tuple(p for p in shape(t, m, s) if p > 0)
                    if sum(candidate) == n and Partition(candidate) == partition:
                        return name
    return None


def natural_decomposition(algebra, orbit):
    """
    g^♮ 的分解与 k_i^♮（k 的仿射式）

    经典型按重数分解对任意划分计算；例外型读取中心化子表。
    零轨道给出 g 本身，水平为 k。
    """
    if orbit.is_classical:
        return classical_natural_decomposition(algebra.family, algebra.n, orbit.label)
    row = centralizer_row(algebra.name, orbit.label)
    forms = [AffineForm.parse(text) for text in row.forms]
    factor_forms = forms[len(forms) - len(row.factors):]
    center_forms = forms[: len(forms) - len(row.factors)]
    factors = tuple(NaturalFactor(letter, rank, form)
                    for (letter, rank), form in zip(row.factors, factor_forms))
    if orbit.label == ZERO_LABEL:
        logger.debug("%s 零轨道: g^♮ = g", algebra.name)
    return NaturalDecomposition(
        center_dim=row.center_dim,
        factors=factors,
        center_forms=tuple(center_forms),
        closed_form="table",
    )

