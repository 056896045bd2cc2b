"""
工具模块
包含数据文件读写与界面文本
"""
