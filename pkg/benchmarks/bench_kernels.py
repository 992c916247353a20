"""Time the compiled kernels against the numpy reference.

    python3 benchmarks/bench_kernels.py [--quantale lukasiewicz(6)] [--size 40] [--repeat 5]

Both backends get identical random inputs; their outputs are compared
before any timing is reported.
"""

import argparse
import timeit

import numpy as np

from qorder import kernels
from qorder.generators import random_ordered, random_relation, random_subset
from qorder.quantale import builtin


def cases(Q, n, seed):
    kt = kernels.make_tables(Q)
    X = random_subset(Q, n, seed=seed, prefix="x")
    Y = random_subset(Q, n, seed=seed + 1, prefix="y")
    Z = random_subset(Q, n, seed=seed + 2, prefix="z")
    phi = random_relation(X, Y, seed=seed + 3)
    psi = random_relation(Y, Z, seed=seed + 4)
    xi = random_relation(X, Z, seed=seed + 5)
    xd, yd, zd = (np.ascontiguousarray(S.deg, dtype=np.int32) for S in (X, Y, Z))

    small = random_ordered(Q, min(n, 7), seed=seed + 6, density=0.4)
    alpha = np.ascontiguousarray(small.alpha, dtype=np.int32)
    sdeg = np.ascontiguousarray(small.deg, dtype=np.int32)

    def presheaves():
        return [kernels.enumerate_presheaves(kt, alpha, sdeg, q, 10**6) for q in range(Q.n)]

    return {
        "compose": lambda: kernels.compose(kt, psi, phi, yd),
        "imp_left": lambda: kernels.imp_left(kt, xi, phi, yd, zd),
        "imp_right": lambda: kernels.imp_right(kt, psi, xi, xd, yd),
        "enumerate_presheaves": presheaves,
    }


def _same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    if isinstance(a, (list, tuple)):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    return a == b


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quantale", default="lukasiewicz(6)")
    ap.add_argument("--size", type=int, default=40)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    Q = builtin(args.quantale)
    backends = kernels.available()
    if "cython" not in backends:
        print("compiled kernels not built; timing the python backend only")
    previous = kernels.backend
    timings, outputs = {}, {}
    try:
        for name in backends:
            kernels.use(name)
            for op, fn in cases(Q, args.size, args.seed).items():
                outputs[name, op] = fn()
                t = min(timeit.repeat(fn, number=1, repeat=args.repeat))
                timings[name, op] = t
    finally:
        kernels.use(previous)

    print(f"quantale {Q.name} ({Q.n} elements), |X| = |Y| = |Z| = {args.size}")
    print(f"{'kernel':<22}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for op in ("compose", "imp_left", "imp_right", "enumerate_presheaves"):
        row = f"{op:<22}" + "".join(f"{timings[b, op] * 1e3:>10.2f}ms" for b in backends)
        if len(backends) > 1:
            if not _same(outputs["cython", op], outputs["python", op]):
                raise SystemExit(f"{op}: backends disagree")
            row += f"{timings['python', op] / timings['cython', op]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
