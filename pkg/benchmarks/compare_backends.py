"""Time the compiled step kernels against the numpy fallback.

Usage: python benchmarks/compare_backends.py
"""

import time

import numpy as np

import bloodfv._kernels_py as kpy

try:
    import bloodfv._kernels_c as kc
except ImportError:
    kc = None


def _state(n):
    a0 = np.pi * 4e-3 ** 2 * np.ones(n)
    A = a0 * (1.0 + 0.01 * np.sin(np.arange(n)))
    Q = 1e-7 * np.cos(np.arange(n))
    return A, Q, np.sqrt(a0)


def _time(fn, reps):
    t0 = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - t0) / reps


def main():
    k, rho = 1e8, 1060.0
    if kc is None:
        print("compiled backend not built; run `pip install -e .` first")
    backends = [("numpy", kpy)] + ([("compiled", kc)] if kc else [])
    print(f"{'J':>6} {'kernel':>12} " + " ".join(f"{n:>12}" for n, _ in backends)
          + ("       speedup" if kc else ""))
    for j in (50, 100, 200, 400, 800, 1600):
        A, Q, sa0 = _state(j + 2)
        reps = max(200, 20000 // j)
        for label, call in (
            ("first-order", lambda mod: mod.step_hydro_first(A, Q, sa0, 0.03, k, rho, 1)),
            ("phi-second", lambda mod: mod.phi_second(A, Q, sa0, 1e-4, k, rho, 1, 0, 0.25, 0.5)),
        ):
            times = [_time(lambda m=mod: call(m), reps) for _, mod in backends]
            row = f"{j:>6} {label:>12} " + " ".join(f"{1e6 * t:>10.1f}us" for t in times)
            if len(times) == 2:
                row += f" {times[0] / times[1]:>12.1f}x"
            print(row)
    # cross-check the backends agree bitwise on a representative call
    if kc is not None:
        A, Q, sa0 = _state(402)
        for fid in range(4):
            r1 = kpy.step_hydro_first(A, Q, sa0, 0.03, k, rho, fid)
            r2 = kc.step_hydro_first(A, Q, sa0, 0.03, k, rho, fid)
            assert all(np.array_equal(a, b) for a, b in zip(r1, r2))
        print("backends agree bitwise on step_hydro_first for all fluxes")


if __name__ == "__main__":
    main()
