"""
collapsing 水平搜索
中心荷方程求解、渐近数据比对、有限扩张检测与证书
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath
from sympy import Poly, Rational, Symbol, fraction, together

from core.asymptotics import (
    NOT_ADMISSIBLE,
    classify_level,
    grading_norms,
    natural_central_charge,
    natural_levels,
    product_asymptotics,
    reduction_asymptotics,
    w_central_charge,
)
from core.errors import CriticalLevelError, UnsupportedDenominatorError
from core.exceptional import normalize_label, slice_exclusions
from core.liealg import parse_algebra, strange_formula_norm
from core.orbits import (
    closure_contains,
    collapsing_slice_candidates,
    is_coprincipal,
    list_orbits,
    make_orbit,
    natural_decomposition,
    orbit_for_level,
    orbit_grading,
)
from core.scalar import scalar_format, scalar_parse, scalar_ratio_as_integer, scalar_to_mpf
from engine_config import ENGINE_CONFIG

logger = logging.getLogger(__name__)

_P = Symbol("p")

COLLAPSING = "collapsing"
FINITE_EXTENSION = "finite_extension"
CENTRAL_CHARGE_MISMATCH = "central_charge_mismatch"
GROWTH_MISMATCH = "growth_mismatch"
NOT_ADMISSIBLE_KNAT = "not_admissible_knat"
K0_NONZERO = "k0_nonzero"
CONJECTURAL_MATCH = "conjectural_match"
UNSUPPORTED = "unsupported"

PROOF_EVEN = "proved"
PROOF_LISSE = "proved via lisse"
PROOF_ASYMPTOTIC = "asymptotic match"


class _AllP:
    """中心荷方程恒成立"""

    def __repr__(self):
        return "ALL_P"


ALL_P = _AllP()


# ---------- 证书 ----------

def _text(value):
    return "" if value is None else str(value)


def _fraction_or_none(text):
    return Fraction(text) if text not in (None, "") else None


@dataclass(frozen=True)
class FactorRecord:
    """g^♮ 单分量：类型、k_i^♮ + h_i^∨、容许类型"""

    name: str
    shifted: Fraction
    kind: str


@dataclass(frozen=True)
class CollapseCertificate:
    algebra: str
    orbit: str
    ok_label: str
    p: int
    q: int
    k: Fraction = None
    level_kind: str = ""
    natural_type: str = ""
    factors: tuple = ()
    c_W: Fraction = None
    c_natural: Fraction = None
    g_W: Fraction = None
    g_natural: Fraction = None
    A_W: object = None
    A_natural: object = None
    verdict: str = UNSUPPORTED
    multiplicity: int = None
    proof: str = ""
    reason: str = ""

    @property
    def level_text(self):
        return f"{self.p}/{self.q}" if self.p is not None else f"?/{self.q}"

    def to_dict(self):
        return {
            "algebra": self.algebra,
            "orbit": self.orbit,
            "ok_label": self.ok_label,
            "p": self.p,
            "q": self.q,
            "k": _text(self.k),
            "level_kind": self.level_kind,
            "natural_type": self.natural_type,
            "factors": [
                {"name": f.name, "shifted": str(f.shifted), "kind": f.kind} for f in self.factors
            ],
            "c_W": _text(self.c_W),
            "c_natural": _text(self.c_natural),
            "g_W": _text(self.g_W),
            "g_natural": _text(self.g_natural),
            "A_W": scalar_format(self.A_W) if self.A_W is not None else "",
            "A_natural": scalar_format(self.A_natural) if self.A_natural is not None else "",
            "verdict": self.verdict,
            "multiplicity": self.multiplicity,
            "proof": self.proof,
            "reason": self.reason,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            algebra=data["algebra"],
            orbit=data["orbit"],
            ok_label=data.get("ok_label", ""),
            p=data.get("p"),
            q=data["q"],
            k=_fraction_or_none(data.get("k")),
            level_kind=data.get("level_kind", ""),
            natural_type=data.get("natural_type", ""),
            factors=tuple(
                FactorRecord(f["name"], Fraction(f["shifted"]), f["kind"])
                for f in data.get("factors", [])
            ),
            c_W=_fraction_or_none(data.get("c_W")),
            c_natural=_fraction_or_none(data.get("c_natural")),
            g_W=_fraction_or_none(data.get("g_W")),
            g_natural=_fraction_or_none(data.get("g_natural")),
            A_W=scalar_parse(data["A_W"]) if data.get("A_W") else None,
            A_natural=scalar_parse(data["A_natural"]) if data.get("A_natural") else None,
            verdict=data.get("verdict", UNSUPPORTED),
            multiplicity=data.get("multiplicity"),
            proof=data.get("proof", ""),
            reason=data.get("reason", ""),
        )

    def to_row(self):
        """结果表的列顺序：O_k、f、p/q、k^♮+h^∨、c、g、A、判定"""
        knat = ", ".join(str(f.shifted) for f in self.factors)
        A = scalar_format(self.A_W) if self.A_W is not None else ""
        return [self.ok_label, self.orbit, self.level_text, knat,
                _text(self.c_W), _text(self.g_W), A, self.verdict]


TSV_HEADER = ("O_k", "f", "p/q", "k_nat+h", "c", "g", "A", "verdict")


# ---------- 中心荷方程 ----------

def _symbolic_w_charge(rs, grading, kappa):
    rho_x, x_norm = grading_norms(rs, grading)
    rho_norm = strange_formula_norm(rs)
    distance = (Rational(str(rho_norm)) - 2 * kappa * Rational(str(rho_x))
                + kappa ** 2 * Rational(str(x_norm)))
    return (grading.dim_g0 - Rational(grading.half_count, 2)) - 12 * distance / kappa


def _symbolic_natural_charge(decomposition, k):
    total = Rational(0)
    for factor in decomposition.factors:
        frs = factor.root_system()
        k_i = Rational(str(factor.level.a)) * k + Rational(str(factor.level.b))
        total += k_i * frs.dim / (k_i + frs.dual_coxeter_number)
    return total


def _charges_agree(rs, orbit, decomposition, k):
    try:
        c_W = w_central_charge(rs, orbit, k)
        levels = natural_levels(decomposition, k)
        if any(item.is_critical for item in levels):
            return False
        return c_W == natural_central_charge(levels)
    except CriticalLevelError:
        return False


def _center_root(decomposition):
    """使全部中心形式为零的 k；不存在时为 None"""
    roots = set()
    for form in decomposition.center_forms:
        if form.a == 0:
            if form.b != 0:
                return None
            continue
        roots.add(form.root())
    if len(roots) != 1:
        return None
    return roots.pop()


def _admissible_p(rs, p, q):
    return p >= 1 and gcd(p, q) == 1 and classify_level(rs, p, q).kind != NOT_ADMISSIBLE


def solve_central_charge_in_p(algebra, orbit, q):
    """
    把 c_W = Σ c(L_{k_i^♮}) 看作 p 的方程求解

    有中心时只考虑 k_0^♮ = 0 所确定的唯一 p。

    Returns:
        list[int]，或 ALL_P（方程恒成立）
    """
    rs = algebra.root_system()
    try:
        o_k = orbit_for_level(algebra, q)
    except UnsupportedDenominatorError:
        return []
    if not closure_contains(o_k, orbit):
        return []
    decomposition = natural_decomposition(algebra, orbit)

    if decomposition.center_forms:
        k0 = _center_root(decomposition)
        if k0 is None:
            return []
        kappa = k0 + rs.dual_coxeter_number
        if kappa <= 0 or kappa.denominator != q:
            return []
        p = kappa.numerator
        if _admissible_p(rs, p, q) and _charges_agree(rs, orbit, decomposition, k0):
            return [p]
        return []

    kappa = _P / q
    k = kappa - rs.dual_coxeter_number
    grading = orbit_grading(orbit)
    expr = together(_symbolic_w_charge(rs, grading, kappa)
                    - _symbolic_natural_charge(decomposition, k))
    numerator, _ = fraction(expr)
    poly = Poly(numerator, _P)
    if poly.is_zero:
        logger.warning("%s %s q=%d: 中心荷方程恒成立", algebra.name, orbit.label_text, q)
        return ALL_P

    found = []
    for root in poly.ground_roots():
        if not root.is_integer:
            continue
        p = int(root)
        if not _admissible_p(rs, p, q):
            continue
        if _charges_agree(rs, orbit, decomposition, Fraction(p, q) - rs.dual_coxeter_number):
            found.append(p)
    logger.debug("%s %s q=%d: 方程的根 %s", algebra.name, orbit.label_text, q, sorted(found))
    return sorted(found)


# ---------- 比对 ----------

def _proof_label(orbit, datum):
    if orbit.is_even:
        return PROOF_EVEN
    if datum.g == 0:
        return PROOF_LISSE
    return PROOF_ASYMPTOTIC


def match(algebra, orbit, p, q):
    """
    在 k = -h^∨ + p/q 比较 W_k(g, f) 与 L_{k^♮}(g^♮)

    Raises:
        NotAdmissibleError: p、q 不互素
    """
    rs = algebra.root_system()
    level = classify_level(rs, p, q)
    k = level.k
    base = dict(algebra=algebra.name, orbit=orbit.label_text, ok_label="", p=p, q=q,
                k=k, level_kind=level.kind)

    try:
        o_k = orbit_for_level(algebra, q)
    except UnsupportedDenominatorError as e:
        return CollapseCertificate(verdict=UNSUPPORTED, reason=str(e), **base)
    base["ok_label"] = o_k.label_text
    if not closure_contains(o_k, orbit):
        return CollapseCertificate(
            verdict=UNSUPPORTED,
            reason=f"{orbit.label_text} 不在 O_k = {o_k.label_text} 的闭包内",
            **base,
        )

    decomposition = natural_decomposition(algebra, orbit)
    levels = natural_levels(decomposition, k)
    factors = tuple(
        FactorRecord(item.factor.name,
                     item.k + item.factor.root_system().dual_coxeter_number,
                     item.level.kind if item.level else "critical")
        for item in levels
    )
    base.update(natural_type=decomposition.type_text, factors=factors)
    c_W = w_central_charge(rs, orbit, k)

    if any(item.is_critical for item in levels):
        return CollapseCertificate(c_W=c_W, verdict=NOT_ADMISSIBLE_KNAT,
                                   reason="k^♮ 为临界水平", **base)
    center_ok = decomposition.center_vanishes(k)
    c_natural = natural_central_charge(levels)
    if not center_ok:
        c_natural += decomposition.center_dim

    def certificate(verdict, **extra):
        logger.debug("%s %s %d/%d: %s", algebra.name, orbit.label_text, p, q, verdict)
        return CollapseCertificate(c_W=c_W, c_natural=c_natural, verdict=verdict,
                                   **base, **extra)

    if not level.is_admissible:
        if c_W == c_natural:
            return certificate(CONJECTURAL_MATCH, reason="k 不容许")
        return certificate(CENTRAL_CHARGE_MISMATCH, reason="k 不容许")
    if not center_ok:
        return certificate(K0_NONZERO)
    if c_W != c_natural:
        return certificate(CENTRAL_CHARGE_MISMATCH)

    w_data = reduction_asymptotics(rs, orbit, level, check_closure=False)
    extra = dict(g_W=w_data.g, A_W=w_data.A)
    if not all(item.is_admissible for item in levels):
        return certificate(NOT_ADMISSIBLE_KNAT, **extra)

    natural = product_asymptotics(levels)
    extra.update(g_natural=natural.g, A_natural=natural.A)
    if w_data.g != natural.g:
        return certificate(GROWTH_MISMATCH, **extra)
    m = scalar_ratio_as_integer(w_data.A, natural.A)
    if m is None:
        ratio = scalar_to_mpf(w_data.A) / scalar_to_mpf(natural.A)
        return certificate(
            UNSUPPORTED,
            reason=f"c 与 g 一致，但 A_W/A♮ ≈ {mpmath.nstr(ratio, 10)} 不是 "
                   f"1..{ENGINE_CONFIG['max_multiplicity']} 中的整数",
            **extra,
        )
    if m > 1:
        return certificate(FINITE_EXTENSION, multiplicity=m, **extra)
    return certificate(COLLAPSING, multiplicity=1, proof=_proof_label(orbit, w_data), **extra)


# ---------- 扫描 ----------

def _candidate_orbits(algebra, o_k, q):
    if algebra.is_classical:
        orbits = [make_orbit(algebra, mu) for mu in collapsing_slice_candidates(algebra, q)]
    else:
        orbits = [o for o in list_orbits(algebra) if closure_contains(o_k, o)]
    return [o for o in orbits if not o.is_zero]


def _selected(orbit, orbit_filter):
    if orbit_filter is None:
        return True
    if isinstance(orbit_filter, str):
        orbit_filter = [orbit_filter]
    wanted = {normalize_label(label) for label in orbit_filter}
    return normalize_label(orbit.label_text) in wanted


def sweep(algebra, q_values, orbit_filter=None):
    """
    对每个 q 与每个候选轨道求解中心荷方程并逐个比对

    Returns:
        list[CollapseCertificate]，按 (轨道标号, q, p) 排序
    """
    certificates = []
    for q in q_values:
        try:
            o_k = orbit_for_level(algebra, q)
        except UnsupportedDenominatorError as e:
            for orbit in list_orbits(algebra):
                if orbit.is_zero or not _selected(orbit, orbit_filter):
                    continue
                certificates.append(CollapseCertificate(
                    algebra=algebra.name, orbit=orbit.label_text, ok_label="",
                    p=None, q=q, verdict=UNSUPPORTED, reason=str(e),
                ))
            continue
        for orbit in _candidate_orbits(algebra, o_k, q):
            if not _selected(orbit, orbit_filter):
                continue
            roots = solve_central_charge_in_p(algebra, orbit, q)
            if roots is ALL_P:
                continue
            for p in roots:
                certificates.append(match(algebra, orbit, p, q))
    return sorted(certificates, key=lambda c: (c.orbit, c.q, c.p or 0))


# ---------- k^♮ 容许性 ----------

@dataclass(frozen=True)
class KnatPoint:
    orbit: str
    p: int
    q: int
    factors: tuple
    admissible: bool
    charge_root: bool
    excluded: str = ""


@dataclass
class KnatReport:
    """
    k^♮ 容许性检查结果

    不容许的点都计为反例，除非该切片已记录为不可能 collapsing（excluded 给出理由）。
    """

    algebra: str
    points: list = field(default_factory=list)
    classical: bool = True

    @property
    def counterexamples(self):
        return [pt for pt in self.points if not pt.admissible and not pt.excluded]

    @property
    def excluded_by_slice(self):
        return [pt for pt in self.points if not pt.admissible and pt.excluded]


def _p_range(algebra, rs, q, span):
    start = rs.coxeter_number if is_coprincipal(algebra, q) else rs.dual_coxeter_number
    return [p for p in range(start, start + span + 1) if gcd(p, q) == 1]


@lru_cache(maxsize=None)
def _orbit_dimensions(name):
    return frozenset(o.dim_orbit for o in list_orbits(parse_algebra(name)))


def _dimension_allows(o_k, orbit, decomposition):
    """
    dim O_k − dim G.f 不超过 dim N_{g^♮}，并且等于 g^♮ 某个幂零轨道闭包的维数

    collapsing 的切片是不可约、G^♮ 稳定的，落在 N_{g^♮} 中，因而是某个轨道闭包。
    """
    rank = decomposition.center_dim + sum(f.rank for f in decomposition.factors)
    gap = o_k.dim_orbit - orbit.dim_orbit
    if gap > decomposition.dim - rank:
        return False
    sums = {0}
    for factor in decomposition.factors:
        sums = {s + d for s in sums for d in _orbit_dimensions(factor.name) if s + d <= gap}
    return gap in sums


def verify_knat_admissibility(algebra, q_values, p_span=24):
    """
    检查 k 容许且 k_0^♮ = 0 时 k^♮ 是否容许

    经典型取行列消去给出的候选，例外型取维数允许的 f；
    data/slice_exclusions.tsv 中的切片只记录理由，不计为反例。
    """
    rs = algebra.root_system()
    report = KnatReport(algebra=algebra.name, classical=algebra.is_classical)
    exclusions = {} if algebra.is_classical else slice_exclusions()
    for q in q_values:
        try:
            o_k = orbit_for_level(algebra, q)
        except UnsupportedDenominatorError:
            logger.debug("%s: 跳过未收录的 q=%d", algebra.name, q)
            continue
        for orbit in _candidate_orbits(algebra, o_k, q):
            decomposition = natural_decomposition(algebra, orbit)
            if not decomposition.factors:
                continue
            if not algebra.is_classical and not _dimension_allows(o_k, orbit, decomposition):
                continue
            if decomposition.center_forms:
                k0 = _center_root(decomposition)
                if k0 is None:
                    continue
                kappa = k0 + rs.dual_coxeter_number
                if kappa <= 0 or kappa.denominator != q or not _admissible_p(rs, kappa.numerator, q):
                    continue
                candidates = [kappa.numerator]
            else:
                candidates = [p for p in _p_range(algebra, rs, q, p_span) if _admissible_p(rs, p, q)]
            roots = solve_central_charge_in_p(algebra, orbit, q)
            excluded = exclusions.get(
                (algebra.name, normalize_label(o_k.label_text), normalize_label(orbit.label_text)), "")
            for p in candidates:
                k = Fraction(p, q) - rs.dual_coxeter_number
                levels = natural_levels(decomposition, k)
                factors = tuple(
                    FactorRecord(item.factor.name,
                                 item.k + item.factor.root_system().dual_coxeter_number,
                                 item.level.kind if item.level else "critical")
                    for item in levels
                )
                admissible = all(item.is_admissible for item in levels)
                if excluded and not admissible:
                    logger.warning("%s %s %d/%d: 已记录的切片例外，%s", algebra.name, orbit.label_text, p, q, excluded)
                report.points.append(KnatPoint(
                    orbit=orbit.label_text, p=p, q=q, factors=factors,
                    admissible=admissible,
                    charge_root=roots is ALL_P or p in roots,
                    excluded=excluded,
                ))
    return report
