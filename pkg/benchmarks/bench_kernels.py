"""Compare the compiled kernel backend against the pure-numpy fallback.

Runs the same construction workloads through both backends (the fallback is
forced in a subprocess via LATGEN_PURE=1) and prints a timing table.

Usage: python benchmarks/bench_kernels.py
"""

import json
import os
import subprocess
import sys
import time

WORKLOADS = [
    ("cbc-dbd n=12 s=50", "dbd", {"n": 12, "s": 50}),
    ("cbc-dbd n=14 s=100", "dbd", {"n": 14, "s": 100}),
    ("korobov-cbc N=2039 s=50", "korobov", {"N": 2039, "s": 50}),
    ("std-cbc N=4096 s=50 alpha=2", "std", {"N": 4096, "s": 50}),
]


def run_workloads():
    import latgen

    results = {"backend": latgen.BACKEND, "timings": {}}
    for name, kind, p in WORKLOADS:
        w = latgen.ProductWeights(tuple(1.0 / j**2 for j in range(1, p["s"] + 1)))
        t0 = time.perf_counter()
        if kind == "dbd":
            latgen.construct_cbc_dbd(p["n"], p["s"], w)
        elif kind == "korobov":
            latgen.construct_korobov_cbc(p["N"], p["s"], w)
        else:
            latgen.construct_standard_cbc(
                p["N"], p["s"], 2.0, latgen.power_weights(w, 2.0)
            )
        results["timings"][name] = time.perf_counter() - t0
    return results


def main():
    here = run_workloads()
    env = dict(os.environ, LATGEN_PURE="1")
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--child"],
        env=env, capture_output=True, text=True, check=True,
    )
    other = json.loads(out.stdout)
    print("workload                          %-10s %-10s speedup" % (here["backend"], other["backend"]))
    for name, _, _ in WORKLOADS:
        a = here["timings"][name]
        b = other["timings"][name]
        print("%-33s %8.3fs  %8.3fs  %5.2fx" % (name, a, b, b / a))


if __name__ == "__main__":
    if "--child" in sys.argv:
        print(json.dumps(run_workloads()))
    else:
        main()
