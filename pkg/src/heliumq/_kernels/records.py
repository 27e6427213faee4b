"""Packed coefficient records: the time-dependence language of the kernels.

A Hamiltonian handed to the compiled core is a sum of terms
c_k(t) * M_k, where each coefficient c_k is one packed record of six
floats [kind, p0, p1, p2, omega, 0]:

    kind 0  constant        p0
    kind 1  linear          p0 * t
    kind 2  gaussian        p0 * exp(-((t - p1)/p2)^2)
    kind 3  window          p0 on [p1, p2], else 0

with t in ns and the result in rad/ns.  A nonzero ``omega`` multiplies
the real base value by exp(i*omega*t) (rotating coupling phases); the
builders are responsible for adding the conjugate partner term so the
total stays Hermitian.
"""
from __future__ import annotations

import numpy as np

KIND_CONST = 0.0
KIND_LINEAR = 1.0
KIND_GAUSSIAN = 2.0
KIND_WINDOW = 3.0
REC_LEN = 6


def const_record(value: float, omega: float = 0.0) -> list:
    return [KIND_CONST, float(value), 0.0, 0.0, float(omega), 0.0]


def linear_record(rate_per_ns: float) -> list:
    return [KIND_LINEAR, float(rate_per_ns), 0.0, 0.0, 0.0, 0.0]


def gaussian_record(amplitude: float, center: float, width: float) -> list:
    return [KIND_GAUSSIAN, float(amplitude), float(center), float(width), 0.0, 0.0]


def window_record(amplitude: float, t_on: float, t_off: float) -> list:
    return [KIND_WINDOW, float(amplitude), float(t_on), float(t_off), 0.0, 0.0]


def pulse_record(pulse, gain: float) -> list:
    """Record for gain * pulse(t); gain converts V/m to rad/ns."""
    from ..pulses import GaussianPulse, LinearPulse, WindowPulse, ZeroPulse

    if isinstance(pulse, ZeroPulse):
        return const_record(0.0)
    if isinstance(pulse, LinearPulse):
        return linear_record(gain * pulse.rate * 1e-9)
    if isinstance(pulse, GaussianPulse):
        return gaussian_record(gain * pulse.amplitude, pulse.center, pulse.width)
    if isinstance(pulse, WindowPulse):
        return window_record(gain * pulse.amplitude, pulse.t_on, pulse.t_off)
    raise TypeError(f"unsupported pulse type {type(pulse).__name__}")


def pack(records) -> np.ndarray:
    arr = np.asarray(records, dtype=np.float64)
    if arr.size == 0:
        return np.zeros((0, REC_LEN))
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.shape[1] != REC_LEN:
        raise ValueError("records must have six fields")
    return np.ascontiguousarray(arr)


def eval_records(records: np.ndarray, t: float) -> complex:
    """Scalar sum of packed records at time t (reference semantics)."""
    total = 0.0 + 0.0j
    for rec in records:
        kind, p0, p1, p2, omega = rec[0], rec[1], rec[2], rec[3], rec[4]
        if kind == KIND_CONST:
            base = p0
        elif kind == KIND_LINEAR:
            base = p0 * t
        elif kind == KIND_GAUSSIAN:
            x = (t - p1) / p2
            base = p0 * np.exp(-x * x)
        elif kind == KIND_WINDOW:
            base = p0 if p1 <= t <= p2 else 0.0
        else:
            raise ValueError(f"unknown record kind {kind}")
        if omega != 0.0:
            total += base * np.exp(1j * omega * t)
        else:
            total += base
    return complex(total)


def eval_records_vec(records: np.ndarray, times: np.ndarray) -> np.ndarray:
    """Vectorized sum of packed records over an array of times."""
    times = np.asarray(times, dtype=np.float64)
    total = np.zeros(times.shape, dtype=np.complex128)
    for rec in records:
        kind, p0, p1, p2, omega = rec[0], rec[1], rec[2], rec[3], rec[4]
        if kind == KIND_CONST:
            base = np.full(times.shape, p0)
        elif kind == KIND_LINEAR:
            base = p0 * times
        elif kind == KIND_GAUSSIAN:
            x = (times - p1) / p2
            base = p0 * np.exp(-x * x)
        elif kind == KIND_WINDOW:
            base = np.where((times >= p1) & (times <= p2), p0, 0.0)
        else:
            raise ValueError(f"unknown record kind {kind}")
        if omega != 0.0:
            total += base * np.exp(1j * omega * times)
        else:
            total += base
    return total
