"""Compare the compiled kernels with the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py``; prints best-of-N wall times and the speedup.
"""

import argparse
import timeit

import numpy as np

from braidjones import kernels
from braidjones.braid import BraidWord, ClosureSpec
from braidjones.kauffman import kauffman_oracle
from braidjones.rep import apply_braid, irrep_block
from braidjones.young import RootParams


def random_braid(rng, n, m):
    return BraidWord(n, tuple((int(rng.integers(1, n)), int(rng.choice([-1, 1]))) for _ in range(m)))


def cases(rng):
    block = irrep_block((6, 6), RootParams(2, 9))
    vecs = np.eye(block.dim, dtype=complex)[:, :32].copy()
    word = random_braid(rng, 12, 400)
    yield f"apply_word: dim {block.dim}, 400 letters, 32 vectors", lambda: apply_braid(word, block, vecs)
    knot = random_braid(rng, 5, 14)
    yield "bracket_histogram: 5 strands, 14 crossings", lambda: kauffman_oracle(ClosureSpec.trace(5), knot, 7,
                                                                                 max_crossings=20)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    have = kernels.available_backends()
    print(f"backends: {', '.join(have)}")
    for name, fn in cases(np.random.default_rng(args.seed)):
        times = {}
        for be in have:
            with kernels.use_backend(be):
                fn()  # warm caches
                times[be] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        line = "  ".join(f"{be} {t * 1e3:9.2f} ms" for be, t in times.items())
        if "compiled" in times:
            line += f"  speedup {times['python'] / times['compiled']:.1f}x"
        print(f"{name:50s} {line}")


if __name__ == "__main__":
    main()
