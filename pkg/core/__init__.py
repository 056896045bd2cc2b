"""
核心计算模块
包含根系、幂零轨道、金字塔、精确标量、渐近数据与 collapsing 判定
"""
