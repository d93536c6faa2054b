"""Compare the compiled and interpreted table law checkers.

    python3 benchmarks/bench_tablecheck.py [--size 5] [--repeat 3]

Tabulates the potluck collective on a dish set of the given size (all
subsets are contributions, so the table has 2**size rows) and times a full
law check with each backend.
"""

import argparse
import time

from collectives import catalog
from collectives._kernels import BACKEND, check_table, check_table_py


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--variant", default="first_served", choices=catalog.POTLUCK_VARIANTS)
    args = ap.parse_args()

    dishes = [f"d{i}" for i in range(args.size)]
    P = catalog.potluck(dishes, args.variant)
    table = catalog.tabulate(P, P.enumerate_contributions(0))
    arrays = table.encode()
    n_cells = sum(len(rs) for rs in table.return_sets)
    print(f"potluck |U|={args.size} ({args.variant}): {table.size} contributions, {n_cells} returns")

    t_py, out_py = best_of(lambda: check_table_py(*arrays, table.unit_index), args.repeat)
    print(f"  python  {t_py * 1e3:10.2f} ms")
    if BACKEND != "cython":
        print("  cython  (extension not built)")
        return
    t_cy, out_cy = best_of(lambda: check_table(*arrays, table.unit_index), args.repeat)
    assert [list(r) for r in out_cy] == [list(r) for r in out_py], "backends disagree"
    print(f"  cython  {t_cy * 1e3:10.2f} ms   speedup x{t_py / t_cy:.1f}")


if __name__ == "__main__":
    main()
