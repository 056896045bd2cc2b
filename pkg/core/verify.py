"""
校验集
乘积恒等式、结果表复现、金字塔对照、结构恒等式与 k^♮ 容许性检查
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import mpmath

from core.asymptotics import (
    affine_asymptotics,
    classify_level,
    minimal_conformal_dimension,
    quantum_dimension,
    reduction_asymptotics,
    w_central_charge,
)
from core.collapse import match, verify_knat_admissibility
from core.errors import EngineError, NotAdmissibleError, ParseError
from core.liealg import (
    all_simple_types,
    build_root_system,
    expected_rho_product,
    parse_algebra,
    rho_product,
    strange_formula_norm,
)
from core.orbits import list_orbits, make_orbit, orbit_grading, partitions
from core.pyramids import (
    alignment_independence_check,
    degree_multiset_from_weights,
)
from core.scalar import (
    SineProductScalar,
    numerically_equal,
    scalar_to_mpf,
    sin_formula,
    sin_formula2,
)
from engine_config import ENGINE_CONFIG, EXCEPTIONAL_TYPES, VERIFY_SUITES
from utils.file_utils import golden_value, load_golden

logger = logging.getLogger(__name__)


@dataclass
class SuiteResult:
    """一个校验集的结果；notes 记录不计为失败的说明"""

    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def check(self, ok, message):
        self.checked += 1
        if not ok:
            logger.debug("%s 失败: %s", self.name, message)
            self.failures.append(message)


# ---------- identities ----------

def run_identities(max_rank=8, max_n=64):
    """Weyl 向量正弦乘积恒等式、两个正弦乘积公式与 strange formula"""
    result = SuiteResult("identities")
    tol = ENGINE_CONFIG["identity_tol"]
    for letter, rank in all_simple_types(max_rank):
        rs = build_root_system(letter, rank)
        for identity in (1, 2, 3, 4):
            if identity == 2 and letter in ("C", "F", "G"):
                continue
            d, coroot_side, expected = expected_rho_product(rs, identity)
            value = rho_product(rs, d, coroot_side)
            result.check(numerically_equal(value, expected, rel_tol=tol),
                         f"{rs.name} 恒等式 ({identity}): {value} != {expected}")
        norm = rs.pair(rs.rho, rs.rho)
        result.check(norm == strange_formula_norm(rs),
                     f"{rs.name} |ρ|² = {norm} != {strange_formula_norm(rs)}")
    for n in range(2, max_n + 1):
        result.check(numerically_equal(sin_formula(n), SineProductScalar.rational(n), rel_tol=tol),
                     f"∏ 2sin(jπ/{n}) != {n}")
        expected = SineProductScalar.sqrt(n) ** n
        result.check(numerically_equal(sin_formula2(n), expected, rel_tol=tol),
                     f"∏ (2sin(jπ/{n}))^({n}-j) != {n}^({n}/2)")
    return result


# ---------- tables ----------

def _close(value, expression, precision_bits=None):
    bits = precision_bits or ENGINE_CONFIG["precision_bits"]
    with mpmath.workprec(bits):
        x = scalar_to_mpf(value, bits)
        y = golden_value(expression, bits)
        return abs(x - y) <= ENGINE_CONFIG["rel_tol"] * max(abs(x), abs(y))


def check_golden_row(row, result, precision_bits=None):
    """按 row.check 的范围比较一行结果表"""
    spec = parse_algebra(row.type_name)
    rs = spec.root_system()
    orbit = make_orbit(spec, row.orbit_label)
    where = f"{row.type_name} {row.ok_label}|{row.orbit_label} {row.p}/{row.q}"

    c = w_central_charge(rs, orbit, Fraction(row.p, row.q) - rs.dual_coxeter_number)
    result.check(c == row.c, f"{where}: c = {c}，表中为 {row.c}")
    if row.check == "charge_only":
        return

    level = classify_level(rs, row.p, row.q)
    datum = reduction_asymptotics(rs, orbit, level, check_closure=False)
    result.check(datum.g == row.g, f"{where}: g = {datum.g}，表中为 {row.g}")
    result.check(_close(datum.A, row.A, precision_bits),
                 f"{where}: A = {datum.A}，表中为 {row.A}")

    certificate = match(spec, orbit, row.p, row.q)
    result.check(certificate.verdict == row.verdict,
                 f"{where}: 判定 {certificate.verdict}，表中为 {row.verdict}")
    if row.verdict == "finite_extension":
        result.check(certificate.multiplicity == row.multiplicity,
                     f"{where}: 重数 {certificate.multiplicity}，表中为 {row.multiplicity}")


def run_tables(types=EXCEPTIONAL_TYPES, precision_bits=None):
    """复现例外型结果表"""
    result = SuiteResult("tables")
    for type_name in types:
        for row in load_golden(type_name):
            check_golden_row(row, result, precision_bits)
    return result


# ---------- pyramids ----------

def _classical_specs(max_n):
    names = [f"sl{n}" for n in range(2, max_n + 1)]
    names += [f"sp{n}" for n in range(2, max_n + 1, 2)]
    names += [f"so{n}" for n in range(5, max_n + 1)]
    return [parse_algebra(name) for name in names]


def run_pyramids(max_n=12, max_alignment_n=8):
    """
    金字塔给出的度数分布与由 h 的特征值得到的加权 Dynkin 图对照；
    并检查覆盖形状上 A'_Γ 与金字塔对齐方式无关
    """
    result = SuiteResult("pyramids")
    for spec in _classical_specs(max_n):
        rs = spec.root_system()
        for orbit in list_orbits(spec):
            from_pyramid = orbit_grading(orbit)
            from_weights = degree_multiset_from_weights(rs, orbit.weighted_dynkin)
            same = (Counter(d for d, _ in from_pyramid.entries)
                    == Counter(d for d, _ in from_weights.entries))
            result.check(same, f"{spec.name} {orbit.label_text}: 度数分布不一致")
            result.check(from_pyramid.dim_gf == orbit.dim_centralizer,
                         f"{spec.name} {orbit.label_text}: dim g^f = {from_pyramid.dim_gf}，"
                         f"划分公式为 {orbit.dim_centralizer}")
    for n in range(2, max_alignment_n + 1):
        for lam in partitions(n):
            for q in range(2, n + 1):
                outcome = alignment_independence_check(lam.parts, q)
                if outcome is None:
                    continue
                result.check(outcome, f"{lam} q={q}: A'_Γ 依赖于对齐方式")
    return result


# ---------- structural ----------

def _unit_weights(rank):
    yield (0,) * rank
    for i in range(rank):
        yield tuple(1 if j == i else 0 for j in range(rank))


def run_structural(types=EXCEPTIONAL_TYPES, precision_bits=None):
    """
    g_red = g_aff − dim G.f；偶分次时 g = c − 24h_{λ_o}；
    qdim(真空) = 1，qdim 与渐近维数之比一致
    """
    result = SuiteResult("structural")
    tol = ENGINE_CONFIG["rel_tol"]
    seen_levels = set()
    for type_name in types:
        spec = parse_algebra(type_name)
        rs = spec.root_system()
        for row in load_golden(type_name):
            if row.check == "charge_only" or gcd(row.p, row.q) != 1:
                continue
            level = classify_level(rs, row.p, row.q)
            if not level.is_admissible:
                continue
            orbit = make_orbit(spec, row.orbit_label)
            where = f"{type_name} {row.orbit_label} {level}"
            reduced = reduction_asymptotics(rs, orbit, level, check_closure=False)
            affine = affine_asymptotics(rs, level)
            result.check(reduced.g == affine.g - orbit.dim_orbit,
                         f"{where}: g_red = {reduced.g}，g_aff − dim G.f = {affine.g - orbit.dim_orbit}")
            if orbit.is_even:
                c = w_central_charge(rs, orbit, level.k)
                h = minimal_conformal_dimension(rs, orbit, level)
                result.check(c - 24 * h == reduced.g,
                             f"{where}: c − 24h = {c - 24 * h} != g = {reduced.g}")

            if (type_name, level.p, level.q) in seen_levels:
                continue
            seen_levels.add((type_name, level.p, level.q))
            vacuum = affine.A
            for weight in _unit_weights(rs.rank):
                try:
                    qdim = quantum_dimension(rs, level, weight)
                    ratio = affine_asymptotics(rs, level, weight).A / vacuum
                except NotAdmissibleError:
                    continue
                if not any(weight):
                    result.check(numerically_equal(qdim, SineProductScalar.one(), rel_tol=tol),
                                 f"{type_name} {level}: qdim(真空) = {qdim}")
                result.check(numerically_equal(qdim, ratio, rel_tol=tol, precision_bits=precision_bits),
                             f"{type_name} {level} λ={weight}: qdim = {qdim}，A 之比 = {ratio}")
    return result


# ---------- conjecture ----------

def run_conjecture(types=EXCEPTIONAL_TYPES, classical_max_n=20, p_span=12):
    """
    k 容许且 k_0^♮ = 0 时 k^♮ 的容许性

    每个不容许点都计为失败；已记录为不可能 collapsing 的切片列入 notes。
    """
    result = SuiteResult("conjecture")
    jobs = []
    for type_name in types:
        spec = parse_algebra(type_name)
        q_values = sorted({row.q for row in load_golden(type_name)})
        jobs.append((spec, q_values))
    for spec in _classical_specs(classical_max_n):
        jobs.append((spec, list(range(2, spec.n + 1))))

    for spec, q_values in jobs:
        report = verify_knat_admissibility(spec, q_values, p_span=p_span)
        result.checked += len(report.points)
        for pt in report.counterexamples:
            result.failures.append(
                f"{spec.name} {pt.orbit} {pt.p}/{pt.q}: k♮+h∨ = "
                + ", ".join(f"{f.name}:{f.shifted}" for f in pt.factors)
            )
        for pt in report.excluded_by_slice:
            result.notes.append(f"{spec.name} {pt.orbit} {pt.p}/{pt.q}: {pt.excluded}")
    return result


SUITES = {
    "identities": run_identities,
    "tables": run_tables,
    "pyramids": run_pyramids,
    "structural": run_structural,
    "conjecture": run_conjecture,
}


def run_suite(name):
    """
    按名称运行校验集；'all' 依次运行全部

    Returns:
        list[SuiteResult]

    Raises:
        ParseError: 未知的校验集
    """
    if name not in VERIFY_SUITES:
        raise ParseError(f"未知的校验集: {name!r}，可选 {', '.join(VERIFY_SUITES)}")
    names = list(SUITES) if name == "all" else [name]
    results = []
    for suite in names:
        logger.info("运行校验集 %s", suite)
        try:
            results.append(SUITES[suite]())
        except EngineError as e:
            failed = SuiteResult(suite)
            failed.failures.append(str(e))
            results.append(failed)
    return results
