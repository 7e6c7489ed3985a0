"""Time the compiled table kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py --sizes 4 8 12 --repeat 3
"""

import argparse
import sys
import timeit

import numpy as np

from emvkit import build_chain, product
from emvkit._kernels import compiled
from emvkit._kernels import python as py


def cases(alg):
    op, jn, mt, le = alg.oplus_table, alg.join_table, alg.meet_table, alg.leq_table
    top = alg.top
    row = alg.lambda_rows[top]
    members = list(alg.elements())
    mask = np.zeros(alg.size, dtype=np.int8)
    mask[1] = 1
    return {
        "assoc_violation": lambda k: k.assoc_violation(op),
        "distrib_violation": lambda k: k.distrib_violation(jn, mt),
        "lambda_row": lambda k: k.lambda_row(op, le, top),
        "closure": lambda k: k.closure(op, le, mask, True),
        "mv_law_violation": lambda k: k.mv_law_violation(op, row, members),
    }


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 12], help="chain orders n for product(chain(n), chain(n))")
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    if compiled is None:
        print("compiled kernels are not built; only the fallback is timed", file=sys.stderr)
    print(f"{'kernel':<20}{'|M|':>6}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for n in args.sizes:
        alg = product(build_chain(n), build_chain(n))
        for name, call in cases(alg).items():
            t_py = best(lambda: call(py), args.repeat)
            if compiled is None:
                print(f"{name:<20}{alg.size:>6}{t_py:>12.5f}{'-':>12}{'-':>10}")
                continue
            t_c = best(lambda: call(compiled), args.repeat)
            print(f"{name:<20}{alg.size:>6}{t_py:>12.5f}{t_c:>12.5f}{t_py / t_c:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
