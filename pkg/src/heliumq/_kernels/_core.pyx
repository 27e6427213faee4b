# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled propagation kernels: RK4 over term-form Hamiltonians and the
rotation-angle ODE integrator.  Mirrors ``fallback.py`` exactly; see the
record layout in ``records.py``.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, fabs, sin, tan

cnp.import_array()

NAME = "compiled"

DEF MAX_DIM = 8
DEF MAX_TERMS = 16


cdef inline double _base(double kind, double p0, double p1, double p2,
                         double t) noexcept nogil:
    if kind == 0.0:
        return p0
    elif kind == 1.0:
        return p0 * t
    elif kind == 2.0:
        x = (t - p1) / p2
        return p0 * exp(-x * x)
    elif kind == 3.0:
        return p0 if (p1 <= t <= p2) else 0.0
    return 0.0


cdef inline void _assemble(const double[:, ::1] coeffs,
                           const double complex[:, :, ::1] mats,
                           double t, int n, int nterms,
                           double complex* h) noexcept nogil:
    cdef int k, i, j
    cdef double b, om
    cdef double complex c
    for i in range(n * n):
        h[i] = 0
    for k in range(nterms):
        b = _base(coeffs[k, 0], coeffs[k, 1], coeffs[k, 2], coeffs[k, 3], t)
        if b == 0.0:
            continue
        om = coeffs[k, 4]
        if om != 0.0:
            c = b * (cos(om * t) + 1j * sin(om * t))
        else:
            c = b
        for i in range(n):
            for j in range(n):
                h[i * n + j] = h[i * n + j] + c * mats[k, i, j]


cdef inline void _deriv(const double complex* h, const double complex* psi,
                        int n, double complex* out) noexcept nogil:
    cdef int i, j
    cdef double complex acc
    for i in range(n):
        acc = 0
        for j in range(n):
            acc = acc + h[i * n + j] * psi[j]
        out[i] = -1j * acc


def propagate_terms(double complex[:, :, ::1] mats, double[:, ::1] coeffs,
                    double complex[::1] psi0, double t0, double dt,
                    Py_ssize_t n_steps):
    """RK4 propagation recording every step; see fallback.propagate_terms."""
    cdef int n = psi0.shape[0]
    cdef int nterms = mats.shape[0]
    if n > MAX_DIM or nterms > MAX_TERMS:
        raise ValueError("state dimension or term count exceeds kernel limits")
    out_arr = np.empty((n_steps + 1, n), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef double complex h[MAX_DIM * MAX_DIM]
    cdef double complex psi[MAX_DIM]
    cdef double complex tmp[MAX_DIM]
    cdef double complex k1[MAX_DIM]
    cdef double complex k2[MAX_DIM]
    cdef double complex k3[MAX_DIM]
    cdef double complex k4[MAX_DIM]
    cdef Py_ssize_t step
    cdef int i
    cdef double t

    with nogil:
        for i in range(n):
            psi[i] = psi0[i]
            out[0, i] = psi[i]
        for step in range(n_steps):
            t = t0 + step * dt
            _assemble(coeffs, mats, t, n, nterms, h)
            _deriv(h, psi, n, k1)
            _assemble(coeffs, mats, t + 0.5 * dt, n, nterms, h)
            for i in range(n):
                tmp[i] = psi[i] + 0.5 * dt * k1[i]
            _deriv(h, tmp, n, k2)
            for i in range(n):
                tmp[i] = psi[i] + 0.5 * dt * k2[i]
            _deriv(h, tmp, n, k3)
            _assemble(coeffs, mats, t + dt, n, nterms, h)
            for i in range(n):
                tmp[i] = psi[i] + dt * k3[i]
            _deriv(h, tmp, n, k4)
            for i in range(n):
                psi[i] = psi[i] + (dt / 6.0) * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i])
                out[step + 1, i] = psi[i]
    return out_arr


cdef inline double _sum_records(const double[:, ::1] recs, double t) noexcept nogil:
    cdef int k
    cdef double total = 0.0
    for k in range(recs.shape[0]):
        total += _base(recs[k, 0], recs[k, 1], recs[k, 2], recs[k, 3], t)
    return total


cdef inline void _euler_rhs(const double[:, ::1] a_recs,
                            const double[:, ::1] b_recs,
                            const double[:, ::1] w_recs,
                            double t, const double* y, double* dy) noexcept nogil:
    cdef double h = _sum_records(a_recs, t) - 0.5 * _sum_records(w_recs, t)
    cdef double b = _sum_records(b_recs, t)
    cdef double c2b = cos(2.0 * y[1])
    cdef double hc = h * cos(2.0 * y[0])
    dy[0] = -hc * tan(2.0 * y[1]) - b
    dy[1] = h * sin(2.0 * y[0])
    dy[2] = -hc / c2b


def propagate_euler(double[:, ::1] a_recs, double[:, ::1] b_recs,
                    double[:, ::1] w_recs, double t0, double dt,
                    Py_ssize_t n_steps):
    """Rotation-angle RK4; see fallback.propagate_euler for semantics."""
    traj_arr = np.zeros((n_steps + 1, 3))
    cdef double[:, ::1] traj = traj_arr
    cdef double y[3]
    cdef double tmp[3]
    cdef double k1[3]
    cdef double k2[3]
    cdef double k3[3]
    cdef double k4[3]
    cdef double t, c2b, sign_prev = 1.0
    cdef Py_ssize_t step, n_done = n_steps
    cdef int i
    cdef bint singular = False

    y[0] = y[1] = y[2] = 0.0
    with nogil:
        for step in range(n_steps):
            t = t0 + step * dt
            _euler_rhs(a_recs, b_recs, w_recs, t, y, k1)
            for i in range(3):
                tmp[i] = y[i] + 0.5 * dt * k1[i]
            _euler_rhs(a_recs, b_recs, w_recs, t + 0.5 * dt, tmp, k2)
            for i in range(3):
                tmp[i] = y[i] + 0.5 * dt * k2[i]
            _euler_rhs(a_recs, b_recs, w_recs, t + 0.5 * dt, tmp, k3)
            for i in range(3):
                tmp[i] = y[i] + dt * k3[i]
            _euler_rhs(a_recs, b_recs, w_recs, t + dt, tmp, k4)
            for i in range(3):
                y[i] = y[i] + (dt / 6.0) * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i])
            c2b = cos(2.0 * y[1])
            if (y[0] != y[0] or y[1] != y[1] or y[2] != y[2]
                    or fabs(c2b) < 1e-6 or c2b * sign_prev < 0.0):
                singular = True
                n_done = step
                break
            sign_prev = 1.0 if c2b > 0.0 else -1.0
            for i in range(3):
                traj[step + 1, i] = y[i]
    if singular:
        return traj_arr[: n_done + 1], n_done
    return traj_arr, n_steps
