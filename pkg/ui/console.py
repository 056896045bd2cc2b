"""
命令行界面
invariants、search、table、verify 四个子命令，输出 json、tsv 或文本
"""

import argparse
import json
import logging
import sys
from fractions import Fraction

import mpmath

from core.asymptotics import (
    classify_level,
    minimal_conformal_dimension,
    natural_levels,
    reduction_asymptotics,
    w_central_charge,
)
from core.collapse import TSV_HEADER, sweep
from core.errors import EngineError, ParseError, UnsupportedDenominatorError
from core.exceptional import centralizer_table
from core.liealg import all_simple_types, build_root_system, cartan_invariants, parse_algebra
from core.orbits import closure_contains, list_orbits, natural_decomposition, orbit_for_level, parse_orbit
from core.scalar import scalar_format, scalar_to_mpf
from core.verify import run_suite
from engine_config import ENGINE_CONFIG, TABLE_NAMES, VERDICT_DISPLAY_CONFIG, VERIFY_SUITES
from utils.file_utils import export_to_json, golden_path, read_tsv, write_tsv
from utils.language import LanguageManager

logger = logging.getLogger(__name__)

FORMATS = ("json", "tsv", "text")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2


class EngineArgumentParser(argparse.ArgumentParser):
    """用法错误以退出码 1 结束"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_level(text):
    """'p/q' → (p, q)"""
    try:
        value = Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"无法解析水平 {text!r}，应为 p/q") from e
    if "/" in str(text):
        p, q = (int(x) for x in str(text).split("/"))
    else:
        p, q = value.numerator, value.denominator
    return p, q


def parse_q_list(text):
    try:
        values = [int(x) for x in str(text).replace(" ", "").split(",") if x]
    except ValueError as e:
        raise ParseError(f"无法解析分母列表 {text!r}") from e
    if not values or any(q < 1 for q in values):
        raise ParseError(f"分母必须为正整数: {text!r}")
    return values


def build_parser():
    parser = EngineArgumentParser(prog="main.py", description="collapsing level engine")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--precision", type=int, default=None, help="区间求值的二进制精度")
    common.add_argument("--lang", choices=("zh_CN", "en_US"), default="en_US")
    common.add_argument("--verbose", action="store_true")
    common.add_argument("--out", default=None, help="结果写入文件")

    sub = parser.add_subparsers(dest="command", required=True, parser_class=EngineArgumentParser)

    p_inv = sub.add_parser("invariants", parents=[common])
    p_inv.add_argument("algebra")
    p_inv.add_argument("--orbit", default=None)
    p_inv.add_argument("--level", required=True)

    p_search = sub.add_parser("search", parents=[common])
    p_search.add_argument("algebra")
    p_search.add_argument("--q", required=True, help="逗号分隔的分母")
    p_search.add_argument("--orbit", default=None)

    p_table = sub.add_parser("table", parents=[common])
    p_table.add_argument("name")

    p_verify = sub.add_parser("verify", parents=[common])
    p_verify.add_argument("suite", nargs="?", default=None)
    p_verify.add_argument("--suite", dest="suite_flag", default=None)
    return parser


class EngineConsole:
    """命令分发与输出"""

    def __init__(self, lang="en_US", out=None, err=None):
        self.lang = LanguageManager(lang)
        self.out = out or sys.stdout
        self.err = err or sys.stderr

    def tr(self, key):
        return self.lang.get_text(key)

    def write(self, text=""):
        self.out.write(text + "\n")

    # ---------- 输出 ----------

    def _emit_mapping(self, record, fmt):
        if fmt == "json":
            self.write(json.dumps(record, indent=2, ensure_ascii=False))
        elif fmt == "tsv":
            for key, value in record.items():
                self.write(f"{key}\t{value}")
        else:
            width = max(len(self.tr(k)) for k in record)
            for key, value in record.items():
                self.write(f"{self.tr(key).ljust(width)}  {value}")

    def _verdict_text(self, verdict):
        display = VERDICT_DISPLAY_CONFIG.get(verdict, {"icon": "", "lang_key": verdict})
        return f"{display['icon']} {self.tr(display['lang_key'])}".strip()

    def _numeric(self, scalar):
        if scalar is None:
            return ""
        value = scalar_to_mpf(scalar, ENGINE_CONFIG["precision_bits"])
        return f"{scalar_format(scalar)} ≈ {mpmath.nstr(value, 12)}"

    # ---------- invariants ----------

    def cmd_invariants(self, args):
        spec = parse_algebra(args.algebra)
        rs = spec.root_system()
        p, q = parse_level(args.level)
        level = classify_level(rs, p, q)
        if args.orbit is None:
            orbit = list_orbits(spec)[-1]
        else:
            orbit = parse_orbit(spec, args.orbit)

        try:
            o_k = orbit_for_level(spec, q)
            ok_label = o_k.label_text
            in_closure = closure_contains(o_k, orbit)
        except UnsupportedDenominatorError as e:
            logger.warning("%s", e)
            ok_label, in_closure = "", None

        decomposition = natural_decomposition(spec, orbit)
        factors = [
            f"{item.factor.name}: {item.k + item.factor.root_system().dual_coxeter_number}"
            f" ({item.level.kind if item.level else 'critical'})"
            for item in natural_levels(decomposition, level.k)
        ]
        record = {
            "algebra": spec.name,
            "orbit": orbit.label_text,
            "ok_orbit": ok_label,
            "level": str(level),
            "level_kind": self.tr(f"kind_{level.kind}"),
            "natural_type": decomposition.type_text,
            "natural_levels": "; ".join(factors),
            "central_charge": str(w_central_charge(rs, orbit, level.k)),
        }
        if in_closure is False:
            record["reason"] = f"{orbit.label_text} ⊄ closure({ok_label}): H^0 = 0"
        elif level.is_admissible:
            datum = reduction_asymptotics(rs, orbit, level, check_closure=False)
            h = minimal_conformal_dimension(rs, orbit, level)
            record.update({
                "growth": str(datum.g),
                "asymptotic_dimension": self._numeric(datum.A),
                "conformal_weight": str(h),
                "effective_charge": str(w_central_charge(rs, orbit, level.k) - 24 * h),
            })

        self._emit_mapping(record, args.format)
        if args.out:
            export_to_json([record], args.out)
        return EXIT_OK

    # ---------- search ----------

    def cmd_search(self, args):
        spec = parse_algebra(args.algebra)
        q_values = parse_q_list(args.q)
        certificates = sweep(spec, q_values, orbit_filter=args.orbit)
        records = [c.to_dict() for c in certificates]
        rows = [c.to_row() for c in certificates]

        if args.format == "json":
            self.write(json.dumps(records, indent=2, ensure_ascii=False))
        elif args.format == "tsv":
            self.write("\t".join(TSV_HEADER))
            for row in rows:
                self.write("\t".join(row))
        else:
            if not certificates:
                self.write(self.tr("no_results"))
            for c in certificates:
                knat = ", ".join(f"{f.name}:{f.shifted}" for f in c.factors)
                self.write(f"{c.ok_label:>10} {c.orbit:>12} {c.level_text:>7}  "
                           f"c={c.c_W if c.c_W is not None else '-'}  {knat}  "
                           f"{self._verdict_text(c.verdict)}")
            self.write(self.tr("results_found").format(len(certificates)))

        if args.out:
            ok = (write_tsv(rows, args.out, header=TSV_HEADER) if args.format == "tsv"
                  else export_to_json(records, args.out))
            message = "written_to" if ok else "write_failed"
            self.err.write(self.tr(message).format(args.out) + "\n")
        return EXIT_OK

    # ---------- table ----------

    def _table_rows(self, name):
        if name == "data-simple":
            header = ["type", "dim", "h", "h_check", "r", "|P^v/Q^v|", "|P/Q^v|",
                      "|P^v/rQ|", "|Δ+|", "|Δ+_short|"]
            rows = []
            for letter, rank in all_simple_types(8):
                inv = cartan_invariants(build_root_system(letter, rank))
                rows.append([f"{letter}{rank}", inv.dim_g, inv.h, inv.h_check, inv.lacing,
                             inv.index_Pcheck_over_Qcheck, inv.index_P_over_Qcheck,
                             inv.index_Pcheck_over_rQ, inv.num_pos_roots,
                             inv.num_short_pos_roots])
            return header, rows
        type_name, _, kind = name.partition("-")
        if kind == "centralizers":
            header = ["label", "even", "g_nat", "k_nat"]
            rows = []
            for row in centralizer_table(type_name).values():
                natural = natural_type_text(row.center_dim, row.factors)
                rows.append([row.label, "yes" if row.even else "no", natural, "; ".join(row.forms)])
            return header, rows
        if kind == "results":
            header = ["O_k", "f", "p", "q", "k_nat+h", "c", "g", "A", "A_nat", "verdict", "check"]
            return header, read_tsv(golden_path(type_name))
        raise ParseError(self.tr("unknown_table").format(name))

    def cmd_table(self, args):
        if args.name not in TABLE_NAMES:
            raise ParseError(self.tr("unknown_table").format(args.name))
        header, rows = self._table_rows(args.name)
        if args.format == "json":
            records = [dict(zip(header, (str(x) for x in row))) for row in rows]
            self.write(json.dumps(records, indent=2, ensure_ascii=False))
        else:
            self.write("\t".join(header))
            for row in rows:
                self.write("\t".join(str(x) for x in row))
        if args.out:
            write_tsv(rows, args.out, header=header)
        return EXIT_OK

    # ---------- verify ----------

    def cmd_verify(self, args):
        name = args.suite_flag or args.suite
        if name is None:
            raise ParseError(f"需要校验集名称，可选 {', '.join(VERIFY_SUITES)}")
        results = run_suite(name)
        records = []
        for result in results:
            records.append({"suite": result.name, "checked": result.checked,
                            "failures": result.failures, "notes": result.notes})
            if args.format != "text":
                continue
            if result.passed:
                self.write(self.tr("suite_passed").format(result.name, result.checked))
            else:
                self.write(self.tr("suite_failed").format(
                    result.name, result.checked, len(result.failures)))
            for failure in result.failures:
                self.write(self.tr("failure_item").format(failure))
            for note in result.notes:
                self.write(self.tr("slice_analysis").format(note) if result.name == "conjecture"
                           else f"  {note}")
        if args.format != "text":
            self.write(json.dumps(records, indent=2, ensure_ascii=False))
        if args.out:
            export_to_json(records, args.out)
        return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED

    def dispatch(self, args):
        """执行子命令；EngineError 输出一行错误信息并返回 1"""
        saved = ENGINE_CONFIG["precision_bits"]
        if args.precision:
            ENGINE_CONFIG["precision_bits"] = args.precision
        handlers = {
            "invariants": self.cmd_invariants,
            "search": self.cmd_search,
            "table": self.cmd_table,
            "verify": self.cmd_verify,
        }
        try:
            return handlers[args.command](args)
        except EngineError as e:
            logger.debug("命令失败", exc_info=True)
            self.err.write(f"{self.tr('error')}: {e}\n")
            return EXIT_USAGE
        finally:
            ENGINE_CONFIG["precision_bits"] = saved


def natural_type_text(center_dim, factors):
    pieces = []
    if center_dim:
        pieces.append("C" if center_dim == 1 else f"C^{center_dim}")
    pieces.extend(f"{letter}{rank}" for letter, rank in factors)
    return "×".join(pieces) if pieces else "0"


def run(argv=None, out=None, err=None):
    """解析参数并执行；返回退出码"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    console = EngineConsole(args.lang, out=out, err=err)
    return console.dispatch(args)
