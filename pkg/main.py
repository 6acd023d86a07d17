# -*- coding: utf-8 -*-
"""
Точка входа командной строки.

Примеры:
    python main.py eval overshoot --alpha 1 --dim 3 --level 0.5 --lo 0.01 --hi 3 --n 50
    python main.py simulate --alpha 1 --dim 3 --paths 10000 --dt 1e-4 --tmax 20 --seed 7 --mode overshoot --level 0.5 --out overshoot.csv
    python main.py verify all --quick --format json
"""

from __future__ import annotations

import sys

from src.cli import run


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
