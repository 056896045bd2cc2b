"""
计算引擎配置文件
数值精度、容差以及静态数据位置
"""

from pathlib import Path

# 引擎配置
ENGINE_CONFIG = {
    # 区间求值的二进制精度
    "precision_bits": 128,

    # 渐近维数比较的相对容差
    "rel_tol": 1e-9,

    # 恒等式校验的相对容差
    "identity_tol": 1e-10,

    # 有限扩张检测的最大重数
    "max_multiplicity": 64,

    # 静态数据目录（例外型中心化子、O_k 表、结果表）
    "data_dir": Path(__file__).resolve().parent / "data",

    # 日志级别
    "log_level": "WARNING",
}

# 判定结果显示配置
VERDICT_DISPLAY_CONFIG = {
    "collapsing": {"icon": "✓", "lang_key": "verdict_collapsing"},
    "finite_extension": {"icon": "⊃", "lang_key": "verdict_finite_extension"},
    "central_charge_mismatch": {"icon": "✗c", "lang_key": "verdict_central_charge_mismatch"},
    "growth_mismatch": {"icon": "✗g", "lang_key": "verdict_growth_mismatch"},
    "not_admissible_knat": {"icon": "?♮", "lang_key": "verdict_not_admissible_knat"},
    "k0_nonzero": {"icon": "✗0", "lang_key": "verdict_k0_nonzero"},
    "conjectural_match": {"icon": "≈", "lang_key": "verdict_conjectural_match"},
    "unsupported": {"icon": "-", "lang_key": "verdict_unsupported"},
}

# 例外型
EXCEPTIONAL_TYPES = ("G2", "F4", "E6", "E7", "E8")

# table 子命令可用的表名
TABLE_NAMES = (
    ["data-simple"]
    + [f"{name}-centralizers" for name in EXCEPTIONAL_TYPES]
    + [f"{name}-results" for name in EXCEPTIONAL_TYPES]
)

# verify 子命令可用的测试集
VERIFY_SUITES = ("identities", "tables", "pyramids", "structural", "conjecture", "all")
