"""
Quick CLI Test - one anchor per subcommand
"""
import json
import math
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def cli(*args):
    return subprocess.run([sys.executable, "main.py", *args], cwd=ROOT, capture_output=True, text=True)


print("Smoke-testing the command line...")
print()

failures = 0

print("1. Cutoff table")
result = cli("cutoff", "--max-r", "1", "--max-s", "1")
if result.returncode == 0 and result.stdout.splitlines()[1].startswith("0,1,"):
    print(f"   ✅ lowest mode: {result.stdout.splitlines()[1]}")
else:
    failures += 1
    print(f"   ❌ exit {result.returncode}: {result.stderr.strip()}")

print("2. Propagator anchor D(0, 0) = 1/8")
result = cli("scan", "--grid", "0:0:1,0:0:1", "--quiet")
value = float(result.stdout.splitlines()[1].split(",")[3]) if result.returncode == 0 else math.nan
if abs(value - 0.125) <= 1e-10:
    print(f"   ✅ D(0, 0) = {value}")
else:
    failures += 1
    print(f"   ❌ got {value}: {result.stderr.strip()}")

print("3. Spacelike decay rate")
result = cli("fit", "--regime", "spacelike", "--b2", str(math.pi))
if result.returncode == 0:
    rate = json.loads(result.stdout)["fit"]["rate"]
    mark = "✅" if abs(rate - 1.0) < 5e-3 else "❌"
    failures += mark == "❌"
    print(f"   {mark} rate = {rate:.6f} (expected 1)")
else:
    failures += 1
    print(f"   ❌ exit {result.returncode}: {result.stderr.strip()}")

print()
if failures:
    print(f"❌ {failures} smoke check(s) failed")
    sys.exit(1)
print("✅ All smoke checks passed. Run `python main.py verify` for the full battery.")
