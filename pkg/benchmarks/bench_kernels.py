"""Compare the compiled kernels against the pure-Python fallback.

Runs the same workloads in a subprocess with RQWORK_PURE=1 and in the
current process, checks that both backends agree, and prints timings.

Usage: python benchmarks/bench_kernels.py [--order 300]
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKLOAD = """
import json, sys, time
from fractions import Fraction
from rqwork._backend import BACKEND
from rqwork import quantities as Q
from rqwork.characters import RQSpec, tau_relation_scan
from rqwork.linalg import nullspace_rational

order = int(sys.argv[1])
results = {"backend": BACKEND}

t0 = time.perf_counter()
s = Q.rq_series(RQSpec(1, 2, 5), order)
results["rq_series"] = time.perf_counter() - t0
results["rq_checksum"] = str(sum(s.coeff(n) for n in range(order)))

t0 = time.perf_counter()
m = Q.m_series(RQSpec(1, 3, 8), order)
results["m_series"] = time.perf_counter() - t0

t0 = time.perf_counter()
rels = tau_relation_scan(RQSpec(1, 4, 17), 17, 120)
results["tau_scan"] = time.perf_counter() - t0
results["tau_checksum"] = str(sorted(tuple(r.coeffs) for r in rels))

print(json.dumps(results))
"""


def run(order, pure):
    env = dict(os.environ)
    if pure:
        env["RQWORK_PURE"] = "1"
    else:
        env.pop("RQWORK_PURE", None)
    out = subprocess.run([sys.executable, "-c", WORKLOAD, str(order)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--order", type=int, default=300)
    args = ap.parse_args()

    fast = run(args.order, pure=False)
    pure = run(args.order, pure=True)

    print(f"order {args.order}; backends: {fast['backend']} vs {pure['backend']}")
    if fast["backend"] == pure["backend"]:
        print("note: compiled extension not built; both runs are pure Python")
    for key in ("rq_series", "m_series", "tau_scan"):
        tf, tp = fast[key], pure[key]
        ratio = tp / tf if tf else float("inf")
        print(f"{key:12s}  compiled {tf:8.3f}s   pure {tp:8.3f}s   x{ratio:.2f}")
    agree = all(fast[k] == pure[k] for k in ("rq_checksum", "tau_checksum"))
    print("results agree:" , agree)
    return 0 if agree else 1


if __name__ == "__main__":
    sys.exit(main())
