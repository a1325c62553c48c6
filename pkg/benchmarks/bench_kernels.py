"""Time the compiled search kernels against the pure-Python reference.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

from lenslab import _pykernels
from lenslab.examples import build_state_machine_example
from lenslab.seeds import builtin_seeds

try:
    from lenslab import _kernels
except ImportError:  # extension not built
    _kernels = None


def lens_count(mod, A, B):
    n = 0
    for omap, mmap in mod.enumerate_functors(A.tables, B.tables):
        n += len(mod.enumerate_lifts(A.tables, B.tables, omap, mmap))
    return n


def cases():
    s = builtin_seeds()
    state = build_state_machine_example().state
    pairs = [("chain3", "chain3"), ("square", "chain3"), ("FopxR", "Bool"), ("square", "square"),
             ("retract", "FopxR")]
    for a, b in pairs:
        A, B = s[a], s[b]
        yield f"lenses {a} -> {b}", lambda mod, A=A, B=B: lens_count(mod, A, B)
    yield "associativity STATE", lambda mod: mod.associativity_violations(
        state.n_morphisms, state.src, state.tgt, state.comp)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    mods = [("python", _pykernels)] + ([("cython", _kernels)] if _kernels else [])
    print(f"{'case':32} " + " ".join(f"{name:>12}" for name, _ in mods) + "   speedup")
    for label, fn in cases():
        results, times = [], []
        for _, mod in mods:
            results.append(fn(mod))
            times.append(min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat)))
        if len(set(map(repr, results))) != 1:
            raise SystemExit(f"backends disagree on {label}")
        speed = f"{times[0] / times[1]:8.1f}x" if len(times) > 1 else ""
        print(f"{label:32} " + " ".join(f"{t * 1e3:10.2f}ms" for t in times) + f"  {speed}")


if __name__ == "__main__":
    main()
