"""
Test Runner Script
Runs the unit, integration and battery suites, then a combined coverage pass
"""
import os
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]

SUITES = [
    ("UNIT TESTS", "pytest tests/unit -v --cov=src --cov-report=term-missing --cov-report=html:htmlcov/unit"),
    ("INTEGRATION TESTS", "pytest tests/integration -v -m 'not slow'"),
    ("VERIFICATION BATTERY (SLOW)", "pytest tests/integration/test_verify.py -v -m slow"),
]


def banner(title):
    rule = "=" * 80
    print(f"\n{rule}\n{title}\n{rule}\n")


def run_suite(title, cmd):
    banner(title)
    ok = subprocess.run(cmd, shell=True, cwd=ROOT).returncode == 0
    print(f"\n{'✅' if ok else '❌'} {title} {'PASSED' if ok else 'FAILED'}")
    return ok


def main():
    # Fixtures assume the default worker count
    os.environ.pop("EVANESCENT_WORKERS", None)

    results = {title: run_suite(title, cmd) for title, cmd in SUITES}

    banner("COMBINED COVERAGE")
    subprocess.run("pytest tests/ -q --cov=src --cov-report=html:htmlcov --cov-report=term",
                   shell=True, cwd=ROOT)

    banner("SUMMARY")
    for title, ok in results.items():
        print(f"  {'✅' if ok else '❌'} {title}")
    failed = [title for title, ok in results.items() if not ok]
    print(f"\n{len(results) - len(failed)}/{len(results)} suites passed")
    print(f"📊 Coverage report: {ROOT / 'htmlcov' / 'index.html'}")
    return 1 if failed else 0


if __name__ == "__main__":
    try:
        import pytest  # noqa: F401
    except ImportError:
        print("❌ pytest is not installed. Run: pip install -r requirements.txt")
        sys.exit(1)

    sys.exit(main())
