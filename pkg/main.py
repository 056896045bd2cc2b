"""
collapsing 水平计算引擎
主程序入口

用法示例:
    python main.py invariants E6 --orbit A5 --level 13/6
    python main.py search F4 --q 2,3,4,6
    python main.py verify identities
"""

import logging
import sys

from engine_config import ENGINE_CONFIG
from ui.console import EngineConsole, build_parser


def main():
    """主函数"""
    args = build_parser().parse_args()

    level = logging.DEBUG if args.verbose else ENGINE_CONFIG["log_level"]
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    console = EngineConsole(args.lang)
    sys.exit(console.dispatch(args))


if __name__ == '__main__':
    main()
