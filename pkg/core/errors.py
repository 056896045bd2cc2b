"""
异常定义
计算引擎中所有可预期的拒绝情形
"""


class EngineError(ValueError):
    """引擎异常基类"""


class InvalidAlgebraError(EngineError):
    """无效的单李代数类型/秩"""


class InvalidPartitionError(EngineError):
    """无效的划分或不满足奇偶条件的划分"""


class UnknownOrbitError(EngineError):
    """未知的幂零轨道标签"""


class UnsupportedDenominatorError(EngineError):
    """静态数据未覆盖的分母 q"""


class NotAdmissibleError(EngineError):
    """非容许水平"""


class CriticalLevelError(EngineError):
    """临界水平 k = -h^∨"""


class ParseError(EngineError):
    """命令行或文本格式解析失败"""
