#!/usr/bin/env python3
"""Benchmark the compiled propagation core against the NumPy fallback.

Runs the hot kernels (fixed-step RK4 over term Hamiltonians and the
rotation-angle integrator) on the preset workloads and prints a timing
table.  Usage: python benchmarks/bench_backends.py [repeats]
"""
import sys
import time

import numpy as np

from heliumq._kernels import fallback, pack
from heliumq._kernels.records import (const_record, linear_record,
                                      window_record)

try:
    from heliumq._kernels import _core
except ImportError:
    _core = None


def scrap_workload():
    m01 = np.zeros((3, 3), dtype=complex)
    m01[0, 1] = m01[1, 0] = 0.5
    mats = np.stack([m01, np.diag([0.0, 1.0, 0.0]).astype(complex),
                     np.diag([0.0, 0.0, 1.0]).astype(complex)])
    coeffs = pack([window_record(-0.4557, -35.0, 40.0),
                   linear_record(0.0524), linear_record(0.1398)])
    psi0 = np.array([0, 1, 0], dtype=complex)
    return ("3-level chirped passage, 10k steps",
            lambda impl: impl.propagate_terms(mats, coeffs, psi0,
                                              -50.0, 0.01, 10000))


def two_qubit_workload():
    sz = np.diag([1.0, -1.0]).astype(complex)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    mats = np.stack([sz, sz, sx])
    coeffs = pack([const_record(0.03), linear_record(0.472),
                   const_record(-0.324)])
    psi0 = np.array([1, 0], dtype=complex)
    return ("2-level exchange sweep, 100k steps",
            lambda impl: impl.propagate_terms(mats, coeffs, psi0,
                                              -50.0, 0.001, 100000))


def full_lab_workload():
    diag = np.diag([0.32, 0.35, 0.33, 0.36]).astype(complex)
    fdiag = np.diag([0.0236, 0.0758, 0.0420, 0.0941]).astype(complex)
    off01 = np.zeros((4, 4), dtype=complex)
    off01[1, 2] = 1.0
    mats = np.stack([diag, fdiag, off01, off01.T.conj().copy()])
    coeffs = pack([const_record(1.0), linear_record(6.0),
                   const_record(-0.324, omega=-0.4),
                   const_record(-0.324, omega=+0.4)])
    psi0 = np.array([0, 1, 0, 0], dtype=complex)
    return ("4-level lab frame with phases, 50k steps",
            lambda impl: impl.propagate_terms(mats, coeffs, psi0,
                                              -25.0, 0.001, 50000))


def euler_workload():
    a = pack([const_record(0.03), linear_record(0.101)])
    b = pack([const_record(-0.324)])
    w = pack([const_record(0.0)])
    return ("rotation-angle integrator, 40k steps",
            lambda impl: impl.propagate_euler(a, b, w, -200.0, 0.01, 40000))


def best_of(fn, impl, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn(impl)
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    workloads = [scrap_workload(), two_qubit_workload(),
                 full_lab_workload(), euler_workload()]
    print(f"{'workload':45s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, fn in workloads:
        t_py = best_of(fn, fallback, repeats)
        if _core is None:
            print(f"{name:45s} {t_py * 1e3:9.1f}ms {'n/a':>10s} {'n/a':>8s}")
            continue
        t_c = best_of(fn, _core, repeats)
        print(f"{name:45s} {t_py * 1e3:9.1f}ms {t_c * 1e3:9.1f}ms "
              f"{t_py / t_c:7.1f}x")
    if _core is None:
        print("\ncompiled core not built; showing fallback only")


if __name__ == "__main__":
    main()
