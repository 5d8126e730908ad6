"""
可定向 Wicks 形式命令行
与 python -m wicks_forms 等价
"""

import sys

from wicks_forms.cli import main

if __name__ == "__main__":
    sys.exit(main())
