"""Pure-NumPy propagation kernels (reference implementation).

Same contract as the compiled core in ``_core.pyx``: fixed-step RK4 over
term-form Hamiltonians, and the rotation-angle ODE integrator.  The
compiled module is preferred at import time; this one is always
available and is the semantic reference the extension is tested against.
"""
from __future__ import annotations

import numpy as np

from .records import eval_records_vec

NAME = "python"


def propagate_terms(mats: np.ndarray, coeffs: np.ndarray, psi0: np.ndarray,
                    t0: float, dt: float, n_steps: int) -> np.ndarray:
    """RK4-propagate i dpsi/dt = H(t) psi, recording every step.

    H(t) = sum_k c_k(t) M_k with c_k given by packed records.  Returns an
    (n_steps+1, n) complex array of states including the initial one.
    """
    n = psi0.shape[0]
    half_times = t0 + 0.5 * dt * np.arange(2 * n_steps + 1)
    cvals = np.empty((len(coeffs), half_times.size), dtype=np.complex128)
    for k in range(len(coeffs)):
        cvals[k] = eval_records_vec(coeffs[k:k + 1], half_times)
    # (2N+1, n, n) stack of Hamiltonians at step and half-step times
    hs = np.einsum("kt,kij->tij", cvals, mats)

    out = np.empty((n_steps + 1, n), dtype=np.complex128)
    psi = psi0.astype(np.complex128, copy=True)
    out[0] = psi
    for i in range(n_steps):
        h0 = hs[2 * i]
        hm = hs[2 * i + 1]
        h1 = hs[2 * i + 2]
        k1 = -1j * (h0 @ psi)
        k2 = -1j * (hm @ (psi + (0.5 * dt) * k1))
        k3 = -1j * (hm @ (psi + (0.5 * dt) * k2))
        k4 = -1j * (h1 @ (psi + dt * k3))
        psi = psi + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        out[i + 1] = psi
    return out


def propagate_euler(a_recs: np.ndarray, b_recs: np.ndarray, w_recs: np.ndarray,
                    t0: float, dt: float, n_steps: int):
    """Integrate the rotation-angle equations for the 2-level propagator.

    d(alpha)/dt = -h cos(2 alpha) tan(2 beta) - B
    d(beta)/dt  =  h sin(2 alpha)
    d(gamma)/dt = -h cos(2 alpha) / cos(2 beta)

    with h(t) = A(t) - omega_dot(t)/2, all in rad/ns.  Returns
    (trajectory, n_done): trajectory is (n_done+1, 3); n_done < n_steps
    means cos(2 beta) vanished (or changed sign) at step n_done and the
    chart is singular there.
    """
    half_times = t0 + 0.5 * dt * np.arange(2 * n_steps + 1)
    avals = eval_records_vec(a_recs, half_times).real
    wvals = eval_records_vec(w_recs, half_times).real if len(w_recs) else 0.0
    hvals = avals - 0.5 * wvals
    bvals = eval_records_vec(b_recs, half_times).real

    def rhs(h, b, y):
        al, be, _ = y
        c2b = np.cos(2.0 * be)
        hc = h * np.cos(2.0 * al)
        return np.array([
            -hc * np.tan(2.0 * be) - b,
            h * np.sin(2.0 * al),
            -hc / c2b,
        ])

    traj = np.zeros((n_steps + 1, 3))
    y = np.zeros(3)
    sign_prev = 1.0
    for i in range(n_steps):
        k1 = rhs(hvals[2 * i], bvals[2 * i], y)
        k2 = rhs(hvals[2 * i + 1], bvals[2 * i + 1], y + 0.5 * dt * k1)
        k3 = rhs(hvals[2 * i + 1], bvals[2 * i + 1], y + 0.5 * dt * k2)
        k4 = rhs(hvals[2 * i + 2], bvals[2 * i + 2], y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        c2b = np.cos(2.0 * y[1])
        if (not np.all(np.isfinite(y))) or abs(c2b) < 1e-6 or c2b * sign_prev < 0.0:
            return traj[: i + 1], i
        sign_prev = np.sign(c2b) or 1.0
        traj[i + 1] = y
    return traj, n_steps
