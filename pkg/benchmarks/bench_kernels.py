"""Time the numba kernels against the numpy fallback.

    python benchmarks/bench_kernels.py --p 9973 --repeat 5

Each kernel is called once per backend before timing so JIT compilation is
not counted. The two backends must also agree, which is checked on the way.
"""

import argparse
import timeit

import numpy as np

from missgen import _kernels
from missgen.classify import classify_all
from missgen.modmath import is_prime, prime_context


def kernel_inputs(p):
    cls = classify_all(prime_context(p))
    gens = np.flatnonzero(cls.generator_mask).astype(np.int64)
    ginvs = np.array([pow(int(g), -1, p) for g in gens], dtype=np.int64)
    residues = np.array(cls.residues, dtype=np.int64)
    return {
        "missing_rows": (p, cls.generator_mask, residues, gens, ginvs),
        "ni_rows": (p, cls.ngnr_mask, residues, gens, ginvs),
        "exponent_mask": (p - 1, 0),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=int, default=9973, help="odd prime to benchmark at")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if args.p < 3 or not is_prime(args.p):
        parser.error("--p must be an odd prime")
    if _kernels.numba_impl is None:
        parser.error("numba is not importable; nothing to compare")

    inputs = kernel_inputs(args.p)
    impls = {"numba": _kernels.numba_impl, "numpy": _kernels.numpy_impl}
    print(f"p = {args.p}, best of {args.repeat}")
    print(f"{'kernel':<16}{'numba [s]':>12}{'numpy [s]':>12}{'speed-up':>10}")
    for name, call_args in inputs.items():
        best = {}
        outputs = {}
        for label, impl in impls.items():
            fn = getattr(impl, name)
            outputs[label] = fn(*call_args)  # warm-up, and JIT for numba
            best[label] = min(timeit.repeat(lambda: fn(*call_args), number=1, repeat=args.repeat))
        if not np.array_equal(outputs["numba"], outputs["numpy"]):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<16}{best['numba']:>12.4f}{best['numpy']:>12.4f}{best['numpy'] / best['numba']:>9.1f}x")


if __name__ == "__main__":
    main()
