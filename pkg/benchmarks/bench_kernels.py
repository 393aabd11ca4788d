"""Compare the compiled and pure-Python kernel backends.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Times three workloads per backend: expanding the sl_3 cubic invariant over
the box (2, 1), applying every adjoint derivation to its components, and the
exact rank of a random 60 x 60 integer matrix.
"""

from __future__ import annotations

import argparse
import random
import timeit

from mcinv import kernels
from mcinv.invariants import all_derivations, build_family, sl_n_fundamental_invariants
from mcinv.lie import sl_n_chevalley
from mcinv.multicurrent import MulticurrentAlgebra
from mcinv.staircase import from_box


def workloads():
    g = sl_n_chevalley(3)
    s = from_box((2, 1))
    mca = MulticurrentAlgebra(g, s)
    cubic = sl_n_fundamental_invariants(g)[1]
    fam = build_family(cubic, s, 2, "dual")
    derivs = all_derivations(mca, "dual")
    rng = random.Random(0)
    mat = [[rng.randint(-99, 99) for _ in range(60)] for _ in range(60)]

    def expand_cubic():
        build_family(cubic, s, 2, "dual")

    def derive_all():
        for comp in fam.components.values():
            for d in derivs:
                d(comp)

    def rank_60():
        kernels.rank_int(mat)

    return {"expand": expand_cubic, "derivations": derive_all, "rank": rank_60}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    jobs = workloads()
    table = {}
    for name in kernels.available_backends():
        prev = kernels.use_backend(name)
        try:
            for label, fn in jobs.items():
                table[(label, name)] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        finally:
            kernels.use_backend(prev)
    backends = kernels.available_backends()
    print(f"{'workload':<12}" + "".join(f"{b:>12}" for b in backends) + (f"{'speedup':>10}" if len(backends) > 1 else ""))
    for label in jobs:
        row = f"{label:<12}" + "".join(f"{table[(label, b)]:>11.4f}s" for b in backends)
        if "compiled" in backends and "python" in backends:
            row += f"{table[(label, 'python')] / table[(label, 'compiled')]:>9.2f}x"
        print(row)


if __name__ == "__main__":
    main()
