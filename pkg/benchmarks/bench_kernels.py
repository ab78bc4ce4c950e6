"""Compare the compiled and pure-Python big-integer matrix kernels.

The dominant cost in bound evaluation is composing B matrices whose
entries grow into the hundreds of digits.  This benchmark times a short
chain of such compositions with each kernel implementation.

Usage: python benchmarks/bench_kernels.py [nprime] [layers]
"""
import sys
import time

from regionbound import _kernels_py, kernels, transfer
from regionbound.gamma import GammaProvider


def build_chain(nprime, layers):
    provider = GammaProvider("ours", cap=max(nprime, 4096))
    b = transfer.b_matrix(provider, nprime)
    m = transfer.m_matrix(nprime, nprime)
    factors = []
    for _ in range(layers):
        factors.extend((m, b))
    return factors


def run(impl, factors):
    start = time.perf_counter()
    t = factors[0].entries
    for f in factors[1:]:
        t = tuple(tuple(row) for row in impl.mat_mat(f.entries, t))
    vec = (0,) * (len(t[0]) - 1) + (1,)
    total = sum(impl.mat_vec(t, vec))
    return time.perf_counter() - start, total


def main():
    nprime = int(sys.argv[1]) if len(sys.argv) > 1 else 200
    layers = int(sys.argv[2]) if len(sys.argv) > 2 else 6
    factors = build_chain(nprime, layers)
    print(f"composing {2 * layers} transforms at n'={nprime}")
    if kernels.IMPLEMENTATION == "python":
        print("compiled extension not available; timing pure Python only")
        impls = [("python", _kernels_py)]
    else:
        impls = [("cython", kernels), ("python", _kernels_py)]
    results = {}
    for name, impl in impls:
        elapsed, check = run(impl, factors)
        results[name] = (elapsed, check)
        print(f"{name:>7}: {elapsed:8.3f}s  (checksum digits: {len(str(check))})")
    if len(results) == 2:
        checks = {c for _, c in results.values()}
        assert len(checks) == 1, "implementations disagree"
        speedup = results["python"][0] / results["cython"][0]
        print(f"speedup: {speedup:.2f}x")


if __name__ == "__main__":
    main()
