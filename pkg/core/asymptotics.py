"""
容许水平与渐近数据
中心荷、渐近增长 g、渐近维数 A、量子维数与最小共形权
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from core.errors import CriticalLevelError, NotAdmissibleError
from core.liealg import (
    cartan_invariants,
    langlands_dual_coxeter,
    rho_check_norm,
    strange_formula_norm,
)
from core.orbits import OrbitDescriptor, closure_contains, orbit_for_level, orbit_grading
from core.scalar import SineProductScalar, two_sine_product

logger = logging.getLogger(__name__)

PRINCIPAL = "principal"
COPRINCIPAL = "coprincipal"
NOT_ADMISSIBLE = "not_admissible"


@dataclass(frozen=True)
class AdmissibleLevel:
    """
    k = -h^∨ + p/q

    kind 为 principal、coprincipal 或 not_admissible；
    p ≤ 0 表示 k + h^∨ ≤ 0。
    """

    p: int
    q: int
    kind: str
    h_check: int

    @property
    def k(self):
        return Fraction(self.p, self.q) - self.h_check

    @property
    def shifted(self):
        """k + h^∨"""
        return Fraction(self.p, self.q)

    @property
    def is_admissible(self):
        return self.kind != NOT_ADMISSIBLE

    @property
    def is_coprincipal(self):
        return self.kind == COPRINCIPAL

    def __str__(self):
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class AsymptoticDatum:
    """(A, w, g)"""

    A: SineProductScalar
    w: Fraction
    g: Fraction


def classify_level(rs, p, q):
    """
    判定 k = -h^∨ + p/q 是否容许

    (r^∨, q) = 1 时要求 p ≥ h^∨（principal），
    r^∨ | q 时要求 p ≥ h（coprincipal）。

    Raises:
        NotAdmissibleError: p、q 不是互素的正整数
    """
    p, q = int(p), int(q)
    if q < 1 or p < 1:
        raise NotAdmissibleError(f"p、q 必须为正整数: p={p}, q={q}")
    if gcd(p, q) != 1:
        raise NotAdmissibleError(f"p={p} 与 q={q} 不互素")
    r = rs.lacing
    h_check = rs.dual_coxeter_number
    if gcd(r, q) == 1:
        kind = PRINCIPAL if p >= h_check else NOT_ADMISSIBLE
    elif q % r == 0:
        kind = COPRINCIPAL if p >= rs.coxeter_number else NOT_ADMISSIBLE
    else:
        kind = NOT_ADMISSIBLE
    return AdmissibleLevel(p, q, kind, h_check)


def level_from_k(rs, k):
    """
    由 k 直接得到 AdmissibleLevel；k + h^∨ ≤ 0 时记为 not_admissible

    Raises:
        CriticalLevelError: k = -h^∨
    """
    shifted = Fraction(k) + rs.dual_coxeter_number
    if shifted == 0:
        raise CriticalLevelError(f"{rs.name} 在临界水平 k = {k}")
    if shifted < 0:
        return AdmissibleLevel(shifted.numerator, shifted.denominator, NOT_ADMISSIBLE,
                               rs.dual_coxeter_number)
    return classify_level(rs, shifted.numerator, shifted.denominator)


# ---------- 中心荷 ----------

def _shifted_level(rs, k):
    shifted = Fraction(k) + rs.dual_coxeter_number
    if shifted == 0:
        raise CriticalLevelError(f"{rs.name} 在临界水平 k = {k}")
    return shifted


def affine_central_charge(rs, k):
    """c = k·dim g/(k + h^∨)"""
    shifted = _shifted_level(rs, k)
    return Fraction(k) * rs.dim / shifted


def _grading(orbit):
    if isinstance(orbit, OrbitDescriptor):
        return orbit_grading(orbit)
    return orbit


def grading_norms(rs, grading):
    """((ρ|x^0), |x^0|²)，|x^0|² = Σ_{α>0} (x^0|α)² / h^∨"""
    return (grading.degree_sum() / 2,
            grading.degree_square_sum() / rs.dual_coxeter_number)


def w_central_charge(rs, orbit, k):
    """
    W^k(g, f) 的中心荷

    c = dim g^0 − ½ dim g^{1/2} − 12/(k+h^∨)·|ρ − (k+h^∨)x^0|²

    Args:
        rs: RootSystem
        orbit: OrbitDescriptor 或 DegreeMultiset
        k: 有理数水平
    """
    shifted = _shifted_level(rs, k)
    grading = _grading(orbit)
    rho_x, x_norm = grading_norms(rs, grading)
    distance = strange_formula_norm(rs) - 2 * shifted * rho_x + shifted * shifted * x_norm
    return grading.dim_g0 - Fraction(grading.half_count, 2) - 12 * distance / shifted


# ---------- 渐近数据 ----------

def _require_admissible(level):
    if not level.is_admissible:
        raise NotAdmissibleError(f"k + h^∨ = {level} 不是容许水平")


def _check_weight(rs, level, weight):
    """λ 必须属于 Pr^k_ℤ 或 CoPr^k_ℤ"""
    if any(Fraction(a).denominator != 1 or a < 0 for a in weight):
        raise NotAdmissibleError(f"{tuple(weight)} 不是支配整权")
    if level.is_coprincipal:
        theta_s = rs.theta_s
        value = 2 * rs.weight_pairing(weight, theta_s) / rs.norm(theta_s)
        bound = level.p - rs.coxeter_number
    else:
        value = rs.weight_pairing(weight, rs.theta)
        bound = level.p - rs.dual_coxeter_number
    if value > bound:
        raise NotAdmissibleError(f"权 {tuple(weight)} 超出水平 {level} 的容许范围")


def _shifted_pairings(rs, weight, coroot_side):
    """(λ+ρ|α) 或 (λ+ρ|α^∨)，α 取遍正根"""
    values = []
    for alpha, norm in zip(rs.positive_roots, rs.root_norms):
        value = rs.weight_pairing(weight, alpha) + rs.pair(rs.rho, alpha)
        values.append(value * 2 / norm if coroot_side else value)
    return values


def _lattice_index(rs, level):
    """|P/(pq)Q^∨| 或 |P^∨/(pq)Q|"""
    inv = cartan_invariants(rs)
    pq = level.p * level.q
    if level.is_coprincipal:
        return Fraction(pq, inv.lacing) ** rs.rank * inv.index_Pcheck_over_rQ
    return Fraction(pq) ** rs.rank * inv.index_P_over_Qcheck


def _growth_constant(rs, level):
    """h^∨，coprincipal 时为 r^∨·h^∨_{Lg}"""
    if level.is_coprincipal:
        return rs.lacing * langlands_dual_coxeter(rs)
    return rs.dual_coxeter_number


def _weight_tuple(rs, weight):
    if weight is None:
        return (0,) * rs.rank
    weight = tuple(weight)
    if len(weight) != rs.rank:
        raise NotAdmissibleError(f"权 {weight} 的长度与秩 {rs.rank} 不符")
    return weight


def affine_asymptotics(rs, level, weight=None):
    """
    L_k(g) 或 L(λ) 的渐近数据

    Args:
        rs: RootSystem
        level: AdmissibleLevel
        weight: Dynkin 标号，None 表示真空

    Returns:
        AsymptoticDatum: w 恒为 0

    Raises:
        NotAdmissibleError: 水平不容许或权不在容许范围内
    """
    _require_admissible(level)
    weight = _weight_tuple(rs, weight)
    _check_weight(rs, level, weight)

    coprincipal = level.is_coprincipal
    sines = two_sine_product(v / level.p for v in _shifted_pairings(rs, weight, coprincipal))
    denominator = (SineProductScalar.rational(level.q) ** rs.num_pos_roots
                   * SineProductScalar.sqrt(_lattice_index(rs, level)))
    A = sines / denominator
    if coprincipal:
        A = A * SineProductScalar.rational(rs.lacing) ** len(rs.short_positive_roots)

    g = (1 - Fraction(_growth_constant(rs, level), level.p * level.q)) * rs.dim
    return AsymptoticDatum(A=A, w=Fraction(0), g=g)


def quantum_dimension(rs, level, weight):
    """
    qdim L(λ) = ∏_{α>0} [(λ+ρ|α)]_t / [(ρ|α)]_t，t = e^{iπ/p}

    coprincipal 时用 α^∨；[n]_t = sin(nπ/p)/sin(π/p)。
    """
    _require_admissible(level)
    weight = _weight_tuple(rs, weight)
    _check_weight(rs, level, weight)
    coprincipal = level.is_coprincipal
    top = two_sine_product(v / level.p for v in _shifted_pairings(rs, weight, coprincipal))
    bottom = two_sine_product(v / level.p for v in _shifted_pairings(rs, (0,) * rs.rank, coprincipal))
    return top / bottom


def reduction_asymptotics(rs, orbit, level, check_closure=True):
    """
    H^0_{DS,f}(L_k(g)) 的渐近数据

    Args:
        rs: RootSystem
        orbit: OrbitDescriptor；check_closure=False 时也可以是 DegreeMultiset
        level: AdmissibleLevel
        check_closure: 是否检查 f ∈ closure(O_k)

    Raises:
        NotAdmissibleError: 水平不容许，或 f 不在 O_k 闭包内（H^0 为零）
    """
    _require_admissible(level)
    if check_closure:
        o_k = orbit_for_level(orbit.algebra, level.q)
        if not closure_contains(o_k, orbit):
            raise NotAdmissibleError(
                f"{orbit.label_text} 不在 O_k = {o_k.label_text} 的闭包内，H^0 为零"
            )
    grading = _grading(orbit)
    coprincipal = level.is_coprincipal
    q = level.q

    affine = two_sine_product(
        v / level.p for v in _shifted_pairings(rs, (0,) * rs.rank, coprincipal)
    )
    if coprincipal:
        graded = two_sine_product(2 * d / (n * q) for d, n in grading.positive_degrees())
    else:
        graded = two_sine_product(d / q for d, _ in grading.positive_degrees())
    denominator = (SineProductScalar.sqrt(2) ** grading.half_count
                   * SineProductScalar.rational(q) ** grading.zero_count
                   * SineProductScalar.sqrt(_lattice_index(rs, level)))
    A = affine * graded / denominator
    if coprincipal:
        A = A * SineProductScalar.rational(rs.lacing) ** grading.zero_short_count

    g = grading.dim_gf - Fraction(_growth_constant(rs, level) * rs.dim, level.p * level.q)
    return AsymptoticDatum(A=A, w=Fraction(0), g=g)


def minimal_conformal_dimension(rs, orbit, level):
    """
    h_{λ_o}，λ_o = ρ/q − ρ（(q, r^∨) = 1）或 ρ^∨/q − ρ

    h_λ = (|λ+ρ|² − |ρ|²)/(2(k+h^∨)) − (k+h^∨)|x^0|²/2 + (x^0|ρ)
    """
    shifted = level.shifted
    grading = _grading(orbit)
    rho_x, x_norm = grading_norms(rs, grading)
    rho_norm = strange_formula_norm(rs)
    if gcd(level.q, rs.lacing) == 1:
        shifted_norm = rho_norm / (level.q * level.q)
    else:
        shifted_norm = rho_check_norm(rs) / (level.q * level.q)
    return (shifted_norm - rho_norm) / (2 * shifted) - shifted * x_norm / 2 + rho_x


# ---------- Virasoro 极小模型 ----------

@dataclass(frozen=True)
class VirasoroData:
    c: Fraction
    g: Fraction
    A: SineProductScalar


def virasoro_minimal(p, q):
    """
    Vir_{p,q} 的中心荷与渐近数据

    (a, b) 为 pa − qb = 1 在 1 ≤ a ≤ q、1 ≤ b ≤ p 中的唯一解

    Raises:
        NotAdmissibleError: p、q 不是互素且 ≥ 2 的整数
    """
    p, q = int(p), int(q)
    if p < 2 or q < 2 or gcd(p, q) != 1:
        raise NotAdmissibleError(f"({p}, {q}) 不给出 Virasoro 极小模型")
    a = pow(p, -1, q)
    b = (p * a - 1) // q
    c = 1 - Fraction(6 * (p - q) ** 2, p * q)
    g = 1 - Fraction(6, p * q)
    A = (SineProductScalar.sqrt(Fraction(8, p * q))
         * SineProductScalar.sine(Fraction(a * (p - q), q))
         * SineProductScalar.sine(Fraction(b * (p - q), p)))
    return VirasoroData(c=c, g=g, A=A)


# ---------- g^♮ 的各单分量 ----------

@dataclass(frozen=True)
class FactorLevel:
    """g^♮ 单分量在给定 k 下的水平"""

    factor: object
    k: Fraction
    level: AdmissibleLevel = None

    @property
    def is_admissible(self):
        return self.level is not None and self.level.is_admissible

    @property
    def is_critical(self):
        return self.level is None


def natural_levels(decomposition, k):
    """各单分量的 k_i^♮ 与容许性；临界水平时 level 为 None"""
    result = []
    for factor, k_i in zip(decomposition.factors, decomposition.levels_at(k)):
        try:
            level = level_from_k(factor.root_system(), k_i)
        except CriticalLevelError:
            level = None
        result.append(FactorLevel(factor=factor, k=k_i, level=level))
    return result


def natural_central_charge(factor_levels):
    """Σ_i c(L_{k_i^♮}(g_i^♮))，不含中心"""
    return sum(
        (affine_central_charge(item.factor.root_system(), item.k) for item in factor_levels),
        Fraction(0),
    )


def product_asymptotics(factor_levels):
    """
    张量积 ⊗ L_{k_i}(g_i) 的渐近数据：g 相加，A 相乘

    没有单分量时为平凡顶点代数，A = 1、g = 0。
    """
    A = SineProductScalar.one()
    g = Fraction(0)
    for item in factor_levels:
        if not item.is_admissible:
            raise NotAdmissibleError(f"{item.factor.name} 的水平 {item.k} 不容许")
        datum = affine_asymptotics(item.factor.root_system(), item.level)
        A = A * datum.A
        g += datum.g
    return AsymptoticDatum(A=A, w=Fraction(0), g=g)
