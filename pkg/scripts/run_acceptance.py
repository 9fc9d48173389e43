"""Run the acceptance criteria outside pytest and print one line per criterion.

usage: python scripts/run_acceptance.py [criterion numbers...]
"""
import runpy
import sys
from pathlib import Path

if __name__ == "__main__":
    sys.argv = [sys.argv[0]] + sys.argv[1:]
    runpy.run_path(str(Path(__file__).resolve().parents[1] / "tests" / "test_acceptance.py"), run_name="__main__")
