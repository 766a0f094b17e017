#!/usr/bin/env python3
"""
nilcayley - verify Cayley-Hamilton-type identities over Lie nilpotent rings.

    ./nilcayley.py verify ch --backend grassmann:4 --n 2 --k 2 --seed 7 --trials 20
    ./nilcayley.py sdet --backend rational --matrix "[[1,2],[3,4]]"
    ./nilcayley.py demo
"""

import sys
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).resolve().parent / 'src'))

from cli.main import main

if __name__ == "__main__":
    sys.exit(main())
