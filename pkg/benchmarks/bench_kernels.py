"""Time the batch merge kernel on both backends.

    python3 benchmarks/bench_kernels.py [--lists 200000] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from esmerge import kernels
from esmerge.operators import ALL_OPERATORS


def make_batch(n_lists: int, max_len: int, max_rank: int, n_interp: int, seed: int):
    rng = np.random.default_rng(seed)
    lengths = rng.integers(1, max_len + 1, size=n_lists)
    stack = rng.integers(0, max_rank + 1, size=(n_lists, max_len, n_interp))
    stack[np.arange(max_len)[None, :] >= lengths[:, None]] = 0
    return stack, lengths


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--lists", type=int, default=200_000)
    parser.add_argument("--max-len", type=int, default=3)
    parser.add_argument("--max-rank", type=int, default=3)
    parser.add_argument("--interpretations", type=int, default=4)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    stack, lengths = make_batch(args.lists, args.max_len, args.max_rank, args.interpretations, 0)
    backends = ["python"] + (["compiled"] if kernels.COMPILED_AVAILABLE else [])
    print(f"{args.lists} lists, length <= {args.max_len}, ranks <= {args.max_rank}, "
          f"{args.interpretations} interpretations; best of {args.repeat}")
    print(f"{'operator':9}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for op in ALL_OPERATORS:
        times, results = [], []
        for name in backends:
            with kernels.using_backend(name):
                results.append(kernels.batch_merge(op, stack, lengths))  # also warms the tables
                times.append(min(timeit.repeat(lambda: kernels.batch_merge(op, stack, lengths),
                                               number=1, repeat=args.repeat)))
        assert all(np.array_equal(results[0], r) for r in results[1:]), op
        row = f"{op.value:9}" + "".join(f"{t * 1e3:10.1f}ms" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)
    if not kernels.COMPILED_AVAILABLE:
        print("compiled kernels not built; only the numpy path was timed")


if __name__ == "__main__":
    main()
