"""
UI模块
命令行界面
"""
