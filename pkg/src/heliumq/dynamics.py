"""Time-dependent two/three/four-level propagation.

Two equivalent routes for a driven two-level system:

* direct fixed-step RK4 on the complex amplitudes (any dimension), and
* integration of the three rotation angles (alpha, beta, gamma) that
  parametrize the 2x2 propagator

      U = R_x(alpha) . R_y(beta) . diag(e^{i gamma}, e^{-i gamma})

  where R_x(a) = [[cos a, i sin a], [i sin a, cos a]] and
  R_y(b) = [[cos b, sin b], [-sin b, cos b]].  The angles obey

      alpha' = -h cos(2 alpha) tan(2 beta) - B
      beta'  =  h sin(2 alpha)
      gamma' = -h cos(2 alpha) / cos(2 beta)

  with h(t) = A(t) - omega_dot(t)/2 for the Hamiltonian
  H/hbar = [A - omega_dot/2] sigma_z + B sigma_x (A, B in rad/ns; the
  hbar division is absorbed so the Rabi limit alpha' = -B is exact).

The angle chart is singular at beta = pi/4: tan/sec(2 beta) diverge.
That is detected at run time and reported as CoordinateSingularityError;
the direct propagator is the documented fallback (regularizing instead
would silently corrupt gamma).

All Hamiltonians are handed in already transformed to their interaction
or rotating frame; nothing here applies frame changes.  Fixed-step RK4
is used everywhere for bit-reproducibility; steps are caller-chosen.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .errors import (CoordinateSingularityError, DegenerateFrameError,
                     PropagationAccuracyError)

__all__ = [
    "TermHamiltonian", "GenericDrive", "EulerAngles", "EulerTrajectory",
    "AdiabaticFrame", "PropagationResult", "propagate_state",
    "propagate_euler_angles", "propagate_unitary", "reconstruct_unitary",
    "reconstruct_series", "adiabatic_frame", "transfer_probabilities",
]

NORM_FLAG_TOL = 1e-6
NORM_HARD_TOL = 1e-4


@dataclass(frozen=True)
class TermHamiltonian:
    """H(t) = sum_k c_k(t) M_k in packed-record form (kernel-ready).

    Also callable, so it can be used anywhere a plain H(t) generator is
    expected.
    """

    matrices: np.ndarray   # (K, n, n) complex
    coefficients: np.ndarray  # (K, 6) float records

    @classmethod
    def from_terms(cls, terms: Sequence[tuple]) -> "TermHamiltonian":
        """terms: iterable of (record, matrix) pairs."""
        recs, mats = [], []
        for rec, mat in terms:
            recs.append(rec)
            mats.append(np.asarray(mat, dtype=np.complex128))
        return cls(matrices=np.ascontiguousarray(np.stack(mats)),
                   coefficients=_kernels.pack(recs))

    @property
    def dim(self) -> int:
        return self.matrices.shape[1]

    def __call__(self, t: float) -> np.ndarray:
        h = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for k in range(self.matrices.shape[0]):
            h += _kernels.eval_records(self.coefficients[k:k + 1], t) \
                * self.matrices[k]
        return h


@dataclass(frozen=True)
class GenericDrive:
    """Driven two-level system in the A sigma_z + B sigma_x + phase form.

    A, B map ns -> rad/ns; omega accumulates the rotating phase (rad)
    and enters the dynamics only through its analytic derivative
    omega_dot.  When the three pieces are built from pulse records
    (a_records etc.), the compiled kernel integrates them directly.
    """

    A: Callable[[float], float]
    B: Callable[[float], float]
    omega_dot: Callable[[float], float] = lambda t: 0.0
    a_records: np.ndarray | None = field(default=None, compare=False)
    b_records: np.ndarray | None = field(default=None, compare=False)
    w_records: np.ndarray | None = field(default=None, compare=False)

    @classmethod
    def from_records(cls, a_records, b_records, w_records=()) -> "GenericDrive":
        a = _kernels.pack(a_records)
        b = _kernels.pack(b_records)
        w = _kernels.pack(w_records)
        return cls(
            A=lambda t: _kernels.eval_records(a, t).real,
            B=lambda t: _kernels.eval_records(b, t).real,
            omega_dot=lambda t: _kernels.eval_records(w, t).real if len(w) else 0.0,
            a_records=a, b_records=b, w_records=w,
        )

    def sigma_z_coefficient(self, t: float) -> float:
        return self.A(t) - 0.5 * self.omega_dot(t)

    def hamiltonian(self, t: float) -> np.ndarray:
        hz = self.sigma_z_coefficient(t)
        b = self.B(t)
        return np.array([[hz, b], [b, -hz]], dtype=np.complex128)

    def term_hamiltonian(self) -> TermHamiltonian:
        if self.a_records is None:
            raise ValueError("drive was not built from records")
        sz = np.diag([1.0, -1.0]).astype(np.complex128)
        sx = np.array([[0, 1], [1, 0]], dtype=np.complex128)
        terms = [(rec, sz) for rec in self.a_records]
        terms += [(list(rec[:4]) + [0.0, 0.0], -0.5 * sz)
                  for rec in (self.w_records if self.w_records is not None else [])]
        terms += [(rec, sx) for rec in self.b_records]
        return TermHamiltonian.from_terms([(list(r), m) for r, m in terms])


@dataclass(frozen=True)
class EulerAngles:
    alpha: float
    beta: float
    gamma: float
    t: float = 0.0


@dataclass(frozen=True)
class EulerTrajectory:
    times: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray

    def at(self, i: int) -> EulerAngles:
        return EulerAngles(self.alpha[i], self.beta[i], self.gamma[i],
                           self.times[i])

    @property
    def final(self) -> EulerAngles:
        return self.at(-1)


@dataclass(frozen=True)
class AdiabaticFrame:
    """Instantaneous eigenframe of H/hbar = [[0, W/2], [W/2, D]].

    lambda_pm = [D +- sqrt(D^2 + W^2)] / 2 (rad/ns) and the mixing angle
    theta = atan2(W, D)/2, so the quadrant survives sign changes of the
    detuning (an arctan of the ratio would not distinguish theta and
    theta + pi/2).
    """

    theta: float
    lambda_plus: float
    lambda_minus: float

    def eigenvector_plus(self) -> np.ndarray:
        return np.array([math.sin(self.theta), math.cos(self.theta)])

    def eigenvector_minus(self) -> np.ndarray:
        return np.array([math.cos(self.theta), -math.sin(self.theta)])


def adiabatic_frame(delta: float, omega_rabi: float) -> AdiabaticFrame:
    if delta == 0.0 and omega_rabi == 0.0:
        raise DegenerateFrameError("frame undefined for delta = omega = 0")
    root = math.hypot(delta, omega_rabi)
    return AdiabaticFrame(
        theta=0.5 * math.atan2(omega_rabi, delta),
        lambda_plus=0.5 * (delta + root),
        lambda_minus=0.5 * (delta - root),
    )


@dataclass(frozen=True)
class PropagationResult:
    """Recorded trajectory: states at every accepted step."""

    times: np.ndarray
    states: np.ndarray            # (m, n) complex
    norm_drift: float
    flagged: bool                 # drift above 1e-6 but below the hard bound
    angles: EulerTrajectory | None = None

    @property
    def populations(self) -> np.ndarray:
        return np.abs(self.states) ** 2

    @property
    def norms(self) -> np.ndarray:
        return np.sum(np.abs(self.states) ** 2, axis=1)

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    @property
    def final_populations(self) -> np.ndarray:
        return self.populations[-1]

    def to_csv(self, path: str | Path, eta: np.ndarray | None = None) -> None:
        """Columns: t_ns, pop_0..pop_{n-1}, norm[, eta]; 9 significant digits."""
        n = self.states.shape[1]
        header = "t_ns," + ",".join(f"pop_{i}" for i in range(n)) + ",norm"
        if eta is not None:
            header += ",eta"
        pops = self.populations
        norms = self.norms
        lines = [header]
        for i in range(len(self.times)):
            row = [self.times[i], *pops[i], norms[i]]
            if eta is not None:
                row.append(eta[i])
            lines.append(",".join(f"{v:.9g}" for v in row))
        Path(path).write_text("\n".join(lines) + "\n")


def _steps(t0: float, t1: float, dt: float) -> tuple:
    if t1 <= t0:
        raise ValueError("require t1 > t0")
    if dt <= 0:
        raise ValueError("dt must be positive")
    n = max(1, int(round((t1 - t0) / dt)))
    return n, (t1 - t0) / n


def _check_norm(times, states, dt) -> tuple:
    norms = np.sum(np.abs(states) ** 2, axis=1)
    drift = float(np.max(np.abs(norms - 1.0)))
    if drift > NORM_HARD_TOL:
        raise PropagationAccuracyError(drift, dt)
    return drift, drift > NORM_FLAG_TOL


def propagate_state(hamiltonian, psi0, t0: float, t1: float, dt: float
                    ) -> PropagationResult:
    """Fixed-step RK4 for i dpsi/dt = H(t) psi, H in rad/ns.

    ``hamiltonian`` is either a TermHamiltonian (compiled fast path) or
    any callable t -> Hermitian ndarray.  dt must resolve the fastest
    frequency (dt * ||H|| well below ~0.1 rad); the run is flagged when
    the norm drifts beyond 1e-6 and aborted beyond 1e-4.
    """
    psi0 = np.asarray(psi0, dtype=np.complex128)
    if abs(np.sum(np.abs(psi0) ** 2) - 1.0) > 1e-8:
        raise ValueError("initial state is not normalized")
    n_steps, dt_eff = _steps(t0, t1, dt)
    times = t0 + dt_eff * np.arange(n_steps + 1)

    if isinstance(hamiltonian, TermHamiltonian):
        if psi0.shape[0] != hamiltonian.dim:
            raise ValueError("state dimension does not match the Hamiltonian")
        states = _kernels.propagate_terms(hamiltonian.matrices,
                                          hamiltonian.coefficients,
                                          np.ascontiguousarray(psi0),
                                          t0, dt_eff, n_steps)
    else:
        states = _propagate_callable(hamiltonian, psi0, t0, dt_eff, n_steps)

    drift, flagged = _check_norm(times, states, dt_eff)
    return PropagationResult(times=times, states=states,
                             norm_drift=drift, flagged=flagged)


def _propagate_callable(hf, psi0, t0, dt, n_steps) -> np.ndarray:
    states = np.empty((n_steps + 1, psi0.shape[0]), dtype=np.complex128)
    psi = psi0.copy()
    states[0] = psi
    h_next = np.asarray(hf(t0), dtype=np.complex128)
    for i in range(n_steps):
        t = t0 + i * dt
        h0 = h_next
        hm = np.asarray(hf(t + 0.5 * dt), dtype=np.complex128)
        h_next = np.asarray(hf(t + dt), dtype=np.complex128)
        k1 = -1j * (h0 @ psi)
        k2 = -1j * (hm @ (psi + (0.5 * dt) * k1))
        k3 = -1j * (hm @ (psi + (0.5 * dt) * k2))
        k4 = -1j * (h_next @ (psi + dt * k3))
        psi = psi + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        states[i + 1] = psi
    return states


def propagate_unitary(hamiltonian, dim: int, t0: float, t1: float, dt: float
                      ) -> np.ndarray:
    """Propagate all basis columns; returns U(t1) as a dim x dim matrix."""
    cols = []
    for j in range(dim):
        e = np.zeros(dim, dtype=np.complex128)
        e[j] = 1.0
        cols.append(propagate_state(hamiltonian, e, t0, t1, dt).final_state)
    return np.stack(cols, axis=1)


def propagate_euler_angles(drive: GenericDrive, t0: float, t1: float,
                           dt: float) -> EulerTrajectory:
    """Integrate the rotation angles from the identity at t0.

    Raises CoordinateSingularityError when cos(2 beta) vanishes (or
    flips sign between steps, i.e. the pole was crossed); the direct
    propagator is the fallback in that case.
    """
    n_steps, dt_eff = _steps(t0, t1, dt)
    if drive.a_records is not None:
        traj, n_done = _kernels.propagate_euler(
            drive.a_records, drive.b_records, drive.w_records,
            t0, dt_eff, n_steps)
    else:
        traj, n_done = _euler_callable(drive, t0, dt_eff, n_steps)
    if n_done < n_steps:
        raise CoordinateSingularityError(t0 + (n_done + 1) * dt_eff)
    times = t0 + dt_eff * np.arange(n_steps + 1)
    return EulerTrajectory(times=times, alpha=traj[:, 0], beta=traj[:, 1],
                           gamma=traj[:, 2])


def _euler_callable(drive, t0, dt, n_steps):
    def rhs(t, y):
        h = drive.A(t) - 0.5 * drive.omega_dot(t)
        b = drive.B(t)
        c2b = math.cos(2.0 * y[1])
        hc = h * math.cos(2.0 * y[0])
        return np.array([-hc * math.tan(2.0 * y[1]) - b,
                         h * math.sin(2.0 * y[0]),
                         -hc / c2b])

    traj = np.zeros((n_steps + 1, 3))
    y = np.zeros(3)
    sign_prev = 1.0
    for i in range(n_steps):
        t = t0 + i * dt
        k1 = rhs(t, y)
        k2 = rhs(t + 0.5 * dt, y + 0.5 * dt * k1)
        k3 = rhs(t + 0.5 * dt, y + 0.5 * dt * k2)
        k4 = rhs(t + dt, y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        c2b = math.cos(2.0 * y[1])
        if (not np.all(np.isfinite(y))) or abs(c2b) < 1e-6 or c2b * sign_prev < 0:
            return traj[: i + 1], i
        sign_prev = 1.0 if c2b > 0 else -1.0
        traj[i + 1] = y
    return traj, n_steps


def reconstruct_unitary(angles: EulerAngles) -> np.ndarray:
    """Propagator from the three rotation angles (see module docstring).

    The sigma_x rotation acts last and the phase factor first, matching
    the angle equations and the transfer-probability formulas; the
    result is unitary to machine precision by construction.
    """
    ca, sa = math.cos(angles.alpha), math.sin(angles.alpha)
    cb, sb = math.cos(angles.beta), math.sin(angles.beta)
    r1 = np.array([[ca, 1j * sa], [1j * sa, ca]])
    r2 = np.array([[cb, sb], [-sb, cb]])
    d = np.diag([np.exp(1j * angles.gamma), np.exp(-1j * angles.gamma)])
    return r1 @ r2 @ d


def reconstruct_series(traj: EulerTrajectory) -> np.ndarray:
    """Vectorized reconstruction: (m, 2, 2) array of propagators."""
    ca, sa = np.cos(traj.alpha), np.sin(traj.alpha)
    cb, sb = np.cos(traj.beta), np.sin(traj.beta)
    eg = np.exp(1j * traj.gamma)
    u = np.empty((len(traj.times), 2, 2), dtype=np.complex128)
    u[:, 0, 0] = (ca * cb - 1j * sa * sb) * eg
    u[:, 0, 1] = (ca * sb + 1j * sa * cb) / eg
    u[:, 1, 0] = (1j * sa * cb - ca * sb) * eg
    u[:, 1, 1] = (ca * cb + 1j * sa * sb) / eg
    return u


def transfer_probabilities(angles: EulerAngles) -> tuple:
    """(P1, P0): transfer out of state 0 and out of state 1.

    P1 = 1 - |<0|U|0>|^2 = 1 - |cos a cos b - i sin a sin b|^2 and
    P0 = 1 - |<1|U|1>|^2 = 1 - |cos a cos b + i sin a sin b|^2; the two
    are equal, as 2x2 unitarity demands.
    """
    ca, sa = math.cos(angles.alpha), math.sin(angles.alpha)
    cb, sb = math.cos(angles.beta), math.sin(angles.beta)
    p1 = 1.0 - abs(complex(ca * cb, -sa * sb)) ** 2
    p0 = 1.0 - abs(complex(ca * cb, sa * sb)) ** 2
    return p1, p0
