"""
例外型幂零轨道
Bala–Carter 标号解析、加权 Dynkin 图推导，以及 data/ 下的中心化子表与 O_k 表
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

from sympy import Matrix

from core.errors import UnknownOrbitError, UnsupportedDenominatorError
from core.liealg import build_root_system, validate_type
from core.pyramids import degree_multiset_from_weights
from engine_config import ENGINE_CONFIG
from utils.file_utils import read_tsv

logger = logging.getLogger(__name__)

# 按轨道维数降序排列的 distinguished 轨道
DISTINGUISHED_NAMES = {
    "G2": ("G2", "G2(a1)"),
    "F4": ("F4", "F4(a1)", "F4(a2)", "F4(a3)"),
    "E6": ("E6", "E6(a1)", "E6(a3)"),
    "E7": ("E7", "E7(a1)", "E7(a2)", "E7(a3)", "E7(a4)", "E7(a5)"),
    "E8": ("E8", "E8(a1)", "E8(a2)", "E8(a3)", "E8(a4)", "E8(b4)",
           "E8(a5)", "E8(b5)", "E8(a6)", "E8(b6)", "E8(a7)"),
}

ZERO_LABEL = "0"

_PRIMED = re.compile(r"^\((.+)\)('+)$")
_TERM = re.compile(r"^(\d*)(Ã|A|B|C|D|E|F|G)(\d+)(?:\(([ab]\d+)\))?$")


@dataclass(frozen=True)
class LabelComponent:
    """标号中的一个单分量，例如 D5(a1) 或 Ã2"""

    letter: str
    rank: int
    short: bool = False
    variant: str = None

    @property
    def key(self):
        return (self.letter, self.rank, self.short)

    @property
    def name(self):
        return f"{self.letter}{self.rank}" + (f"({self.variant})" if self.variant else "")


@dataclass(frozen=True)
class ParsedLabel:
    text: str
    components: tuple
    primes: int = 0


def normalize_label(text):
    """去掉空白与下划线，'~A' 写作 'Ã'"""
    label = re.sub(r"[\s_]", "", str(text))
    return label.replace("~A", "Ã").replace("′", "'")


def parse_label(text):
    """
    解析 Bala–Carter 标号

    Raises:
        UnknownOrbitError: 无法识别的写法
    """
    label = normalize_label(text)
    if label == ZERO_LABEL:
        return ParsedLabel(label, (), 0)
    body, primes = label, 0
    match = _PRIMED.match(label)
    if match:
        body, primes = match.group(1), len(match.group(2))
    components = []
    for term in body.split("+"):
        match = _TERM.match(term)
        if not match:
            raise UnknownOrbitError(f"无法解析轨道标号: {text!r}")
        count = int(match.group(1) or 1)
        letter = match.group(2)
        short = letter == "Ã"
        component = LabelComponent("A" if short else letter, int(match.group(3)),
                                   short, match.group(4))
        components.extend([component] * count)
    return ParsedLabel(label, tuple(components), primes)


# ---------- 加权 Dynkin 图 ----------

def _dominantize(cartan, values):
    """用单反射把 h 变到主 Weyl 室"""
    values = list(values)
    while True:
        negative = [i for i, v in enumerate(values) if v < 0]
        if not negative:
            return tuple(int(v) for v in values)
        i = negative[0]
        vi = values[i]
        values = [values[j] - cartan[j][i] * vi for j in range(len(values))]


@lru_cache(maxsize=None)
def distinguished_diagrams(type_name):
    """
    distinguished 轨道的加权 Dynkin 图

    枚举只取 0、2 的标号，保留 dim g^0 = dim g^2 者，按 dim g^0 升序与名称对应。
    """
    letter, rank = type_name[0], int(type_name[1:])
    rs = build_root_system(letter, rank)
    found = []
    for size in range(rank + 1):
        for zeros in combinations(range(rank), size):
            weights = tuple(0 if i in zeros else 2 for i in range(rank))
            multiset = degree_multiset_from_weights(rs, weights)
            if multiset.dim_g0 == multiset.count(1):
                found.append((multiset.dim_g0, weights))
    found.sort()
    names = DISTINGUISHED_NAMES[type_name]
    if len(found) != len(names):
        raise UnknownOrbitError(f"{type_name} 的 distinguished 轨道数目异常: {len(found)}")
    return dict(zip(names, (w for _, w in found)))


def _component_weights(component):
    """分量自身 Bourbaki 编号下的 distinguished 加权图"""
    from core.orbits import Partition, classical_weighted_dynkin

    letter, rank, variant = component.letter, component.rank, component.variant
    if letter == "A":
        if variant:
            raise UnknownOrbitError(f"A 型分量没有变体: {component.name}")
        return (2,) * rank
    if letter in "BCD":
        index = int(variant[1:]) if variant else 0
        if letter == "D":
            parts = (2 * rank - 2 * index - 1, 2 * index + 1)
            family, n = "so", 2 * rank
        elif letter == "C" and index <= 1:
            parts = (2 * rank - 2, 2) if index else (2 * rank,)
            family, n = "sp", 2 * rank
        elif letter == "B" and index == 0:
            parts, family, n = (2 * rank + 1,), "so", 2 * rank + 1
        else:
            raise UnknownOrbitError(f"不支持的分量: {component.name}")
        return classical_weighted_dynkin(family, n, Partition(parts))
    name = f"{letter}{rank}"
    diagrams = distinguished_diagrams(name)
    key = component.name
    if key not in diagrams:
        raise UnknownOrbitError(f"未知的 distinguished 轨道: {key}")
    return diagrams[key]


def _node_isomorphism(pattern, target, nodes):
    """寻找 σ 使 pattern[i][j] == target[σi][σj]"""
    size = len(pattern)
    assignment = []

    def extend(i):
        if i == size:
            return True
        for node in nodes:
            if node in assignment:
                continue
            if target[node][node] != pattern[i][i]:
                continue
            if all(target[node][assignment[j]] == pattern[i][j]
                   and target[assignment[j]][node] == pattern[j][i] for j in range(i)):
                assignment.append(node)
                if extend(i + 1):
                    return True
                assignment.pop()
        return False

    return tuple(assignment) if extend(0) else None


def _connected_components(cartan, subset):
    remaining = set(subset)
    parts = []
    while remaining:
        stack = [min(remaining)]
        component = set()
        while stack:
            node = stack.pop()
            if node in component:
                continue
            component.add(node)
            stack.extend(j for j in remaining if cartan[node][j] and j not in component)
        remaining -= component
        parts.append(sorted(component))
    return parts


def _identify(rs, nodes):
    """识别子图类型，返回 (LabelComponent 键, 节点映射)"""
    rank = len(nodes)
    norms = rs.simple_norms()
    for letter in "ABCDEFG":
        try:
            validate_type(letter, rank)
        except ValueError:
            continue
        pattern = build_root_system(letter, rank).cartan
        mapping = _node_isomorphism(pattern, rs.cartan, nodes)
        if mapping is not None:
            short = letter == "A" and all(norms[i] != max(norms) for i in nodes)
            return (letter, rank, short), mapping
    return None, None


def _diagram_for_levi(rs, assignments):
    """
    由 Levi 各分量上的 distinguished 图得到 g 的加权 Dynkin 图

    assignments: [(分量权重, 节点映射)]
    """
    values = [0] * rs.rank
    for weights, mapping in assignments:
        size = len(mapping)
        sub = Matrix(size, size, lambda i, j: rs.cartan[mapping[i]][mapping[j]])
        coefficients = sub.LUsolve(Matrix(weights))
        for i in range(rs.rank):
            values[i] += sum(rs.cartan[i][mapping[j]] * coefficients[j] for j in range(size))
    return _dominantize(rs.cartan, values)


@lru_cache(maxsize=None)
def candidate_diagrams(type_name, label):
    """标号对应的全部候选加权 Dynkin 图（未区分撇号）"""
    rs = build_root_system(type_name[0], int(type_name[1:]))
    parsed = parse_label(label)
    if not parsed.components:
        return ((0,) * rs.rank,)
    if parsed.text in DISTINGUISHED_NAMES.get(type_name, ()):
        return (distinguished_diagrams(type_name)[parsed.text],)

    wanted = sorted(c.key for c in parsed.components)
    total = sum(c.rank for c in parsed.components)
    weights = [_component_weights(c) for c in parsed.components]
    found = set()
    for subset in combinations(range(rs.rank), total):
        pieces = [_identify(rs, nodes) for nodes in _connected_components(rs.cartan, subset)]
        if any(key is None for key, _ in pieces):
            continue
        if sorted(key for key, _ in pieces) != wanted:
            continue
        for order in set(permutations(range(len(pieces)))):
            if any(pieces[order[i]][0] != parsed.components[i].key for i in range(len(order))):
                continue
            assignments = [(weights[i], pieces[order[i]][1]) for i in range(len(order))]
            found.add(_diagram_for_levi(rs, assignments))
    if not found:
        raise UnknownOrbitError(f"{type_name} 中没有标号为 {label!r} 的轨道")
    return tuple(sorted(found))


# ---------- 静态表 ----------

@dataclass(frozen=True)
class CentralizerRow:
    """中心化子表的一行"""

    label: str
    even: bool
    center_dim: int
    factors: tuple
    forms: tuple

    @property
    def dim_natural(self):
        return self.center_dim + sum(build_root_system(l, r).dim for l, r in self.factors)

    @property
    def center_forms(self):
        return self.forms[: len(self.forms) - len(self.factors)]

    @property
    def factor_forms(self):
        return self.forms[len(self.forms) - len(self.factors):]


def parse_natural_type(text):
    """'C×A2'、'C^2'、'0' 之类的写法 → (中心维数, [(类型, 秩)])"""
    center, factors = 0, []
    text = str(text).strip()
    if text in ("", "0"):
        return 0, ()
    for token in text.replace("x", "×").split("×"):
        token = token.strip()
        if token.startswith("C") and (token == "C" or token.startswith("C^")):
            center += int(token[2:]) if token.startswith("C^") else 1
            continue
        match = re.match(r"^([A-G])(\d+)$", token)
        if not match:
            raise UnknownOrbitError(f"无法解析 g^♮ 类型: {text!r}")
        factors.append((match.group(1), int(match.group(2))))
    return center, tuple(factors)


def _data_path(name):
    return ENGINE_CONFIG["data_dir"] / name


@lru_cache(maxsize=None)
def centralizer_table(type_name):
    """
    读取 data/centralizers_<type>.tsv

    Returns:
        dict: 标号 → CentralizerRow，保持文件中的顺序（轨道维数降序）
    """
    rows = read_tsv(_data_path(f"centralizers_{type_name}.tsv"))
    if not rows:
        raise UnknownOrbitError(f"缺少 {type_name} 的中心化子表")
    table = {}
    for fields in rows:
        fields = fields + [""] * (4 - len(fields))
        label, even, natural, forms = fields[:4]
        center, factors = parse_natural_type(natural)
        table[normalize_label(label)] = CentralizerRow(
            label=normalize_label(label),
            even=even.strip() == "yes",
            center_dim=center,
            factors=factors,
            forms=tuple(f.strip() for f in forms.split(";") if f.strip()),
        )
    logger.debug("读取 %s 中心化子表: %d 行", type_name, len(table))
    return table


def exceptional_labels(type_name):
    return tuple(centralizer_table(type_name))


def centralizer_row(type_name, label):
    table = centralizer_table(type_name)
    key = normalize_label(label)
    if key not in table:
        raise UnknownOrbitError(f"{type_name} 中没有标号为 {label!r} 的轨道")
    return table[key]


@lru_cache(maxsize=None)
def exceptional_weighted_dynkin(type_name, label):
    """
    例外型轨道的加权 Dynkin 图

    候选图不唯一时（带撇号的标号），按偶性与 dim g^♮ 与中心化子表比对。
    """
    row = centralizer_row(type_name, label)
    candidates = candidate_diagrams(type_name, row.label)
    if len(candidates) == 1:
        return candidates[0]
    rs = build_root_system(type_name[0], int(type_name[1:]))

    def natural_dim(weights):
        return degree_multiset_from_weights(rs, weights).dim_natural

    matching = [w for w in candidates if natural_dim(w) == row.dim_natural]
    if not matching:
        logger.warning("%s %s: 没有候选图满足 dim g^♮ = %d", type_name, label, row.dim_natural)
        matching = list(candidates)
    by_parity = [w for w in matching if all(x % 2 == 0 for x in w) == row.even]
    if by_parity:
        matching = by_parity
    if len(matching) > 1:
        logger.warning("%s %s: %d 个候选加权图，取字典序最小者", type_name, label, len(matching))
    return min(matching)


@lru_cache(maxsize=None)
def level_table():
    """
    data/levels.tsv → [(type, kind, q_min, q_max, label)]

    q_max 取结果表中出现过的最大分母，超出范围的 q 不做外推。
    """
    table = []
    for fields in read_tsv(_data_path("levels.tsv")):
        type_name, kind, q_min, q_max, label = fields[:5]
        table.append((type_name, kind, int(q_min), int(q_max), normalize_label(label)))
    return tuple(table)


@lru_cache(maxsize=None)
def slice_exclusions():
    """
    data/slice_exclusions.tsv → {(type, O_k, f): 理由}

    维数界允许但已知不是 collapsing 的切片
    """
    table = {}
    for fields in read_tsv(_data_path("slice_exclusions.tsv")):
        type_name, ok, f, reason = (fields + [""] * 4)[:4]
        table[(type_name, normalize_label(ok), normalize_label(f))] = reason
    return table


def exceptional_orbit_label_for_level(type_name, q, coprincipal):
    """
    例外型的 O_k 标号

    Raises:
        UnsupportedDenominatorError: 表中没有该分母
    """
    kind = "coprincipal" if coprincipal else "principal"
    for name, row_kind, q_min, q_max, label in level_table():
        if name != type_name or row_kind not in (kind, "any"):
            continue
        if q_min <= q <= q_max:
            return label
    raise UnsupportedDenominatorError(f"{type_name} 的分母 q={q} 不在已收录的数据中")
