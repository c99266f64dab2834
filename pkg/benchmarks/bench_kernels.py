"""Compare the compiled and pure-Python term-map kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Micro timings call each backend directly; the end-to-end timings run the
x1 state closure and a length-5 kernel scan in a subprocess per backend
(WREATHREP_PURE=1 selects the fallback).
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from wreathrep import kernels

END_TO_END = """
import time
from wreathrep import RepContext, WreathElement, kernel_scan, state_closure, theorem4
t = time.perf_counter()
ctx = RepContext(theorem4(3, 2))
state_closure(ctx, WreathElement.gen_x(ctx.ring, 1))
kernel_scan(RepContext(theorem4(2, 2)), 5)
print(time.perf_counter() - t)
"""


def random_terms(rng, p, d, n, spread=20):
    out = {}
    for _ in range(n):
        e = tuple(rng.randint(-spread, spread) for _ in range(d))
        out[e] = rng.randrange(1, p)
    return out


def micro(repeat):
    rng = random.Random(0)
    p, d = 3, 2
    a = random_terms(rng, p, d, 40)
    b = random_terms(rng, p, d, 40)
    m = ((0, 1), (1, 1))
    cases = {
        "mul_terms 40x40": lambda k: k.mul_terms(a, b, p),
        "add_terms": lambda k: k.add_terms(a, b, p),
        "shift_terms": lambda k: k.shift_terms(a, (3, -2)),
        "subst_terms": lambda k: k.subst_terms(a, m, p),
    }
    rows = []
    for name, fn in cases.items():
        times = {}
        for label, mod in kernels.backends().items():
            times[label] = min(timeit.repeat(lambda: fn(mod), number=200, repeat=repeat)) / 200
        rows.append((name, times))
    return rows


def end_to_end():
    out = {}
    for label, env in (("compiled", {}), ("python", {"WREATHREP_PURE": "1"})):
        if label == "compiled" and "compiled" not in kernels.backends():
            continue
        res = subprocess.run(
            [sys.executable, "-c", END_TO_END], env={**os.environ, **env}, capture_output=True, text=True, check=True
        )
        out[label] = float(res.stdout)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"active backend: {kernels.BACKEND}")
    for name, times in micro(args.repeat):
        line = "  ".join(f"{k}={v * 1e6:9.1f}us" for k, v in times.items())
        speed = f"  x{times['python'] / times['compiled']:.1f}" if "compiled" in times else ""
        print(f"{name:18s} {line}{speed}")
    e2e = end_to_end()
    line = "  ".join(f"{k}={v:.2f}s" for k, v in e2e.items())
    print(f"{'closure + scan':18s} {line}")


if __name__ == "__main__":
    main()
