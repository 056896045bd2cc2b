"""
语言配置模块
报告中的列名、判定名称与提示信息，支持中英文切换
"""


class LanguageManager:
    """语言管理器"""

    # 语言配置字典
    LANGUAGES = {
        'zh_CN': {
            'app_name': 'collapsing 水平计算引擎',

            # 报告字段
            'algebra': '李代数',
            'orbit': '轨道',
            'ok_orbit': 'O_k',
            'level': '水平',
            'level_kind': '容许类型',
            'natural_type': 'g♮',
            'natural_levels': 'k♮ + h∨',
            'central_charge': '中心荷 c',
            'growth': '渐近增长 g',
            'asymptotic_dimension': '渐近维数 A',
            'conformal_weight': '最小共形权 h',
            'effective_charge': '有效中心荷 c − 24h',
            'multiplicity': '重数',
            'proof': '依据',
            'reason': '说明',

            # 容许类型
            'kind_principal': 'principal',
            'kind_coprincipal': 'coprincipal',
            'kind_not_admissible': '不容许',
            'kind_critical': '临界',

            # 判定
            'verdict': '判定',
            'verdict_collapsing': 'collapsing',
            'verdict_finite_extension': '有限扩张',
            'verdict_central_charge_mismatch': '中心荷不等',
            'verdict_growth_mismatch': '增长不等',
            'verdict_not_admissible_knat': 'k♮ 不容许',
            'verdict_k0_nonzero': 'k0♮ ≠ 0',
            'verdict_conjectural_match': '猜想性一致',
            'verdict_unsupported': '不支持',

            # 消息提示
            'error': '错误',
            'no_results': '没有找到结果',
            'results_found': '共 {0} 条结果',
            'written_to': '结果已写入: {0}',
            'write_failed': '写入失败: {0}',
            'suite_passed': '{0}: 全部 {1} 项通过',
            'suite_failed': '{0}: {1} 项中 {2} 项失败',
            'failure_item': '  失败: {0}',
            'slice_analysis': '  需要切片分析: {0}',
            'unknown_table': '未知的表: {0}',
        },
        'en_US': {
            'app_name': 'Collapsing-level engine',

            # Report fields
            'algebra': 'Algebra',
            'orbit': 'Orbit',
            'ok_orbit': 'O_k',
            'level': 'Level',
            'level_kind': 'Admissibility',
            'natural_type': 'g♮',
            'natural_levels': 'k♮ + h∨',
            'central_charge': 'Central charge c',
            'growth': 'Growth g',
            'asymptotic_dimension': 'Asymptotic dimension A',
            'conformal_weight': 'Minimal conformal weight h',
            'effective_charge': 'Effective charge c − 24h',
            'multiplicity': 'Multiplicity',
            'proof': 'Evidence',
            'reason': 'Note',

            # Admissibility kinds
            'kind_principal': 'principal',
            'kind_coprincipal': 'coprincipal',
            'kind_not_admissible': 'not admissible',
            'kind_critical': 'critical',

            # Verdicts
            'verdict': 'Verdict',
            'verdict_collapsing': 'collapsing',
            'verdict_finite_extension': 'finite extension',
            'verdict_central_charge_mismatch': 'central charge mismatch',
            'verdict_growth_mismatch': 'growth mismatch',
            'verdict_not_admissible_knat': 'k♮ not admissible',
            'verdict_k0_nonzero': 'k0♮ ≠ 0',
            'verdict_conjectural_match': 'conjectural match',
            'verdict_unsupported': 'unsupported',

            # Messages
            'error': 'Error',
            'no_results': 'No results',
            'results_found': '{0} results',
            'written_to': 'Results written to: {0}',
            'write_failed': 'Failed to write: {0}',
            'suite_passed': '{0}: all {1} checks passed',
            'suite_failed': '{0}: {2} of {1} checks failed',
            'failure_item': '  FAIL: {0}',
            'slice_analysis': '  needs slice analysis: {0}',
            'unknown_table': 'Unknown table: {0}',
        }
    }

    def __init__(self, default_lang='en_US'):
        """初始化语言管理器"""
        self.current_language = default_lang

    def get_text(self, key):
        """获取指定键的文本"""
        return self.LANGUAGES.get(self.current_language, {}).get(key, key)

    def set_language(self, lang):
        """设置语言"""
        if lang in self.LANGUAGES:
            self.current_language = lang
            return True
        return False

    def get_available_languages(self):
        """获取可用语言列表"""
        return {
            'zh_CN': '中文',
            'en_US': 'English'
        }
