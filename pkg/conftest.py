"""
Shared pytest setup: src/ on sys.path and the --slow gate.
"""

import sys
from pathlib import Path

import pytest

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).resolve().parent / 'src'))


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False, help="run the slow n = 3 cases")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
