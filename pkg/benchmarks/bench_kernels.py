"""Compiled vs pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--seed 0] [--end-to-end]

Kernel timings call both implementations directly on the same inputs and
check that they agree. ``--end-to-end`` also times a full Betti table in
two subprocesses, one with TORIC_SPLIT_PURE=1.
"""
import argparse
import os
import random
import subprocess
import sys
import time

from toric_split import _pykernels as py

try:
    from toric_split import _ckernels as cy
except ImportError:  # extension not built
    cy = None


def boundary_like(rng, m, n, density=0.3):
    return [[rng.choice((-1, 1)) if rng.random() < density else 0 for _ in range(n)] for _ in range(m)]


def wide_entries(rng, m, n):
    return [[rng.randint(-50, 50) for _ in range(n)] for _ in range(m)]


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def bench_rank(rng, repeat):
    rows = []
    for label, gen, sizes in (
        ("rank ±1 sparse", boundary_like, [(30, 40), (80, 100), (160, 200)]),
        ("rank dense |x|<=50", wide_entries, [(20, 20), (40, 40)]),
    ):
        for m, n in sizes:
            mats = [gen(rng, m, n) for _ in range(5)]
            tp, rp = timeit(lambda: [py.int_rank(M, n) for M in mats], repeat)
            if cy is not None:
                tc, rc = timeit(lambda: [cy.int_rank(M, n) for M in mats], repeat)
                assert rp == rc, (rp, rc)
            else:
                tc = float("nan")
            rows.append((f"{label} {m}x{n}", tp, tc))
    return rows


def bench_divisor(rng, repeat):
    s = 13
    leads = [tuple(rng.randint(0, 2) for _ in range(s)) for _ in range(40)]
    leads = [l for l in leads if any(l)]
    monos = [tuple(rng.randint(0, 3) for _ in range(s)) for _ in range(20000)]
    tp, rp = timeit(lambda: [py.find_divisor(leads, m) for m in monos], repeat)
    if cy is not None:
        tc, rc = timeit(lambda: [cy.find_divisor(leads, m) for m in monos], repeat)
        assert rp == rc
    else:
        tc = float("nan")
    return [("find_divisor 20000 x 40", tp, tc)]


def end_to_end(graph):
    code = (
        "import time,sys;from toric_split import fixtures,kernels;"
        "from toric_split.toricgen import toric_ideal_of_graph;"
        "from toric_split.resolve import betti_multigraded;"
        f"I=toric_ideal_of_graph(fixtures.get({graph!r}));t=time.perf_counter();"
        "[betti_multigraded(I,backend=b) for b in ('divisor-complex','koszul')];"
        "print(kernels.BACKEND, time.perf_counter()-t)"
    )
    out = {}
    for pure in ("0", "1"):
        env = dict(os.environ, TORIC_SPLIT_PURE=pure)
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, secs = res.stdout.split()
        out[backend] = float(secs)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--end-to-end", action="store_true")
    ap.add_argument("--graph", default="grid")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    if cy is None:
        print("compiled kernels not built; showing pure-Python timings only")
    rows = bench_rank(rng, args.repeat) + bench_divisor(rng, args.repeat)
    print(f"{'kernel':<32}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for name, tp, tc in rows:
        print(f"{name:<32}{tp:>12.4f}{tc:>12.4f}{tp / tc:>10.1f}")
    if args.end_to_end:
        t = end_to_end(args.graph)
        print(f"\nBetti table of '{args.graph}', both backends:")
        for k, v in sorted(t.items()):
            print(f"  kernels={k:<8} {v:.2f} s")


if __name__ == "__main__":
    main()
