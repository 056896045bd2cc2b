"""
文件操作工具
静态数据表读取、证书导出与导入、结果表加载
"""

import json
import logging
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from sympy import N, sympify

from core.errors import ParseError
from engine_config import ENGINE_CONFIG

logger = logging.getLogger(__name__)

GOLDEN_CHECKS = ("full", "charge_only")


def read_tsv(filename):
    """
    读取制表符分隔的数据文件

    以 '#' 开头的行和空行被忽略，行尾的空字段保留。

    Args:
        filename: 文件名

    Returns:
        list: 每行一个字段列表，读取失败时为空列表
    """
    try:
        rows = []
        with open(filename, 'r', encoding='utf-8') as f:
            for line in f:
                line = line.rstrip('\r\n')
                if not line.strip() or line.startswith('#'):
                    continue
                rows.append(line.split('\t'))
        logger.debug("读取 %s: %d 行", filename, len(rows))
        return rows

    except OSError as e:
        logger.error("读取数据文件失败: %s", e)
        return []


def write_tsv(rows, filename, header=None):
    """
    导出到 TSV 文件

    Args:
        rows: 字段列表的列表
        filename: 文件名
        header: 表头字段，写成 '#' 注释行

    Returns:
        bool: 是否成功
    """
    try:
        with open(filename, 'w', encoding='utf-8') as f:
            if header:
                f.write('# ' + '\t'.join(header) + '\n')
            for row in rows:
                f.write('\t'.join(str(field) for field in row) + '\n')
        return True

    except OSError as e:
        logger.error("导出TSV失败: %s", e)
        return False


def export_to_json(records, filename):
    """
    导出证书到JSON文件

    Args:
        records: 可 JSON 序列化的字典列表
        filename: 文件名

    Returns:
        bool: 是否成功
    """
    try:
        with open(filename, 'w', encoding='utf-8') as f:
            json.dump(records, f, indent=2, ensure_ascii=False)
        return True

    except (OSError, TypeError, ValueError) as e:
        logger.error("导出JSON失败: %s", e)
        return False


def load_from_json(filename):
    """
    从JSON文件加载证书字典

    Returns:
        list: 字典列表，失败时为空列表
    """
    try:
        with open(filename, 'r', encoding='utf-8') as f:
            data = json.load(f)
        if isinstance(data, dict):
            data = [data]
        return data

    except (OSError, ValueError) as e:
        logger.error("加载JSON失败: %s", e)
        return []


# ---------- 结果表 ----------

@dataclass(frozen=True)
class GoldenRow:
    """
    结果表中的一行

    A、A_natural 为 sympy 表达式文本，可能为空；
    check 为 full 时比较全部列，charge_only（k 不容许的行）只比较中心荷
    """

    type_name: str
    ok_label: str
    orbit_label: str
    p: int
    q: int
    knat: tuple
    c: Fraction
    g: Fraction
    A: str
    A_natural: str
    verdict: str
    check: str

    @property
    def multiplicity(self):
        """A / A_natural 的整数比，没有 A_natural 时为 1"""
        if not self.A_natural:
            return 1
        ratio = golden_value(self.A) / golden_value(self.A_natural)
        return int(mpmath.nint(ratio))


def _optional_fraction(text):
    return Fraction(text) if text.strip() else None


def golden_path(type_name):
    return ENGINE_CONFIG["data_dir"] / f"main_results_{type_name}.tsv"


def load_golden(type_name):
    """
    加载某个例外型的结果表

    来源中的笔误已在数据文件里改正，改动处上方的 # 注释给出推导。

    Raises:
        ParseError: 未知的比较范围
    """
    rows = []
    for fields in read_tsv(golden_path(type_name)):
        fields = fields + [''] * (11 - len(fields))
        ok, orbit, p, q, knat, c, g, A, A_nat, verdict, check = fields[:11]
        if check not in GOLDEN_CHECKS:
            raise ParseError(f"{type_name} 结果表中未知的比较范围 {check!r}")
        row = GoldenRow(
            type_name=type_name,
            ok_label=ok,
            orbit_label=orbit,
            p=int(p),
            q=int(q),
            knat=tuple(Fraction(x) for x in knat.split(';') if x.strip()),
            c=_optional_fraction(c),
            g=_optional_fraction(g),
            A=A.strip(),
            A_natural=A_nat.strip(),
            verdict=verdict,
            check=check,
        )
        rows.append(row)
    return rows


def golden_value(expression, precision_bits=None):
    """
    把结果表中的表达式（如 '1/(3*sqrt(3))'）求值为 mpmath.mpf
    """
    bits = precision_bits or ENGINE_CONFIG["precision_bits"]
    digits = int(bits * 0.30103) + 5
    with mpmath.workprec(bits):
        return mpmath.mpf(str(N(sympify(expression), digits)))
