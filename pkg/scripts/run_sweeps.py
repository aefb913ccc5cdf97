"""Run every theorem sweep and the bound table, writing one report per id.

    python3 scripts/run_sweeps.py --out results/ [--timing] [--jobs 2]

Each report is the exact output of ``nspminor verify-theorem <id>``; the
script prints one line per sweep with its exit code and wall time, and
exits nonzero if any sweep failed.
"""

from __future__ import annotations

import argparse
import io
import sys
import time
from contextlib import redirect_stdout
from pathlib import Path

from nspminor.cli import THEOREMS, main

DEFAULT_ARGS = {
    "thm4.1": ["--n", "6..14"],
    "thm4.3": ["--n", "6..13"],
    "thm5.2": ["--orders", "11..15"],
    "thm6.3": ["--orders", "11..13"],
}


def run(argv: list[str]) -> tuple[int, str, float]:
    buf = io.StringIO()
    t0 = time.perf_counter()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue(), time.perf_counter() - t0


def parse_args(argv=None):
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--out", type=Path, default=Path("results"))
    p.add_argument("--only", nargs="*", choices=THEOREMS, help="subset of sweeps")
    p.add_argument("--timing", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    return p.parse_args(argv)


def main_sweeps(argv=None) -> int:
    args = parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    extra = ["--jobs", str(args.jobs)] + (["--timing"] if args.timing else [])
    failed = 0
    for tid in args.only or THEOREMS:
        code, out, secs = run(["verify-theorem", tid, *DEFAULT_ARGS.get(tid, []), *extra])
        (args.out / f"{tid}.csv").write_text(out)
        rows = sum(1 for line in out.splitlines()[1:] if not line.startswith("#"))
        print(f"{tid:8s} exit={code} rows={rows:5d} {secs:7.2f}s")
        failed += code != 0
    code, out, secs = run(["bounds", "--n", "6..100"])
    (args.out / "bounds.csv").write_text(out)
    print(f"{'bounds':8s} exit={code} rows={len(out.splitlines()) - 1:5d} {secs:7.2f}s")
    failed += code != 0
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main_sweeps())
