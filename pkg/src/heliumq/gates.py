"""Scenario Hamiltonians and gate-quality reports.

Single-qubit scenarios drive the lowest three image-potential levels
with a dc Stark chirp plus a resonant pump.  In the interaction picture
(rotating-wave approximation, pump-induced Stark shifts and dc-induced
coupling dropped) the Hamiltonian is, in rad/ns,

    [[0,        W(t)/2,                0              ],
     [W(t)/2,   e E_dc(t)(z11-z00)/hb, 0              ],
     [0,        0,                     e E_dc(t)(z22-z00)/hb]]

with W(t) = e xi(t) z01 / hb the Rabi frequency.  The second excited
level is retained to track leakage; in this truncated form it is driven
only by the chirp, so its population stays put (the neglected couplings
are off-resonant and are not re-added).

Two electrons a distance d apart couple through the z-z part of their
Coulomb interaction.  In the computational basis the 4x4 Hamiltonian is
diagonal except for an exchange coupling -2 alpha z1_01 z2_01 e^{-+ i w t}
between |01> and |10>; |00> and |11> are exact invariant subspaces.  The
chirp field on electron 2 also tilts electron 1 through the electrode
geometry, scaled by cross_factor (1/sqrt(8) for the reference layout).

Reported adiabatic parameter: single-qubit runs evaluate the
adiabaticity functional on (detuning, Rabi frequency) = (gap, 2 x
coupling), the standard chirped-drive pairing; two-qubit runs evaluate
it on the sigma_z/sigma_x coefficient pair of the reduced two-level
Hamiltonian, which is the pair the generic-drive equations use.  Both
conventions agree with the quoted figures for their scenarios; the
absolute normalization of this diagnostic is convention-dependent
either way (population transfer is the hard metric).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._kernels import const_record, pulse_record
from .dynamics import (GenericDrive, PropagationResult, TermHamiltonian,
                       propagate_state, propagate_unitary)
from .errors import DegenerateFrameError
from .pulses import (DrivePair, LinearPulse, Pulse, WindowPulse, ZeroPulse,
                     adiabaticity, field_gain, peak_adiabaticity)
from .spectral import DEFAULT_CONSTANTS, PhysicalConstants, SpectralData

__all__ = [
    "SingleQubitScenario", "TwoQubitConfig", "CoulombCoefficients",
    "GateReport", "rabi_evolution", "build_scrap_hamiltonian",
    "run_scrap_single", "coulomb_coefficients", "iswap_unitary",
    "build_two_qubit_full", "build_two_qubit_subspace", "run_two_qubit",
    "phase_gate", "stark_phase", "subspace_density", "gate_fidelity",
    "rwa_exchange_hamiltonian", "generic_drive_from_pair", "run_rabi",
    "run_nonadiabatic_single",
]

_SZ = np.diag([1.0, -1.0]).astype(np.complex128)
_SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)

TWO_QUBIT_BASIS = ("00", "01", "10", "11")


def rabi_evolution(omega_rabi: float, duration: float) -> np.ndarray:
    """Resonant-drive propagator cos(D/2) I - i sin(D/2) sigma_x, D = Omega*T."""
    if duration < 0:
        raise ValueError("duration must be >= 0")
    d = omega_rabi * duration
    return math.cos(d / 2) * np.eye(2, dtype=np.complex128) \
        - 1j * math.sin(d / 2) * _SX


@dataclass(frozen=True)
class SingleQubitScenario:
    """Three-level chirped-passage scenario: drive pair + time window."""

    spectral: SpectralData
    drive: DrivePair
    window: tuple

    def __post_init__(self):
        if len(self.spectral.energies) < 3:
            raise ValueError("scenario needs at least three levels")
        t0, t1 = self.window
        if not (math.isfinite(t0) and math.isfinite(t1) and t0 < t1):
            raise ValueError("window must be finite with t0 < t1")
        if self.drive.rabi_gain == 0.0:
            raise ValueError("zero Rabi gain cannot transfer population")

    @property
    def leak_gain(self) -> float:
        return field_gain(self.spectral.z(2, 2) - self.spectral.z(0, 0),
                          self.spectral.constants)

    def hamiltonian(self, t: float) -> np.ndarray:
        return build_scrap_hamiltonian(self, t)

    def term_hamiltonian(self) -> TermHamiltonian:
        m01 = np.zeros((3, 3), dtype=np.complex128)
        m01[0, 1] = m01[1, 0] = 0.5
        d1 = np.diag([0.0, 1.0, 0.0]).astype(np.complex128)
        d2 = np.diag([0.0, 0.0, 1.0]).astype(np.complex128)
        return TermHamiltonian.from_terms([
            (pulse_record(self.drive.pump, self.drive.rabi_gain), m01),
            (pulse_record(self.drive.stark, self.drive.detuning_gain), d1),
            (pulse_record(self.drive.stark, self.leak_gain), d2),
        ])

    def eta_series(self, times: np.ndarray) -> np.ndarray:
        out = np.zeros(len(times))
        for i, t in enumerate(times):
            try:
                out[i] = adiabaticity(self.drive, t)
            except DegenerateFrameError:
                out[i] = np.nan
        return out


def build_scrap_hamiltonian(scenario: SingleQubitScenario, t: float) -> np.ndarray:
    """Interaction-picture 3x3 matrix at time t, rad/ns (see module note)."""
    w = scenario.drive.rabi(t)
    return np.array([
        [0.0, w / 2, 0.0],
        [w / 2, scenario.drive.detuning(t), 0.0],
        [0.0, 0.0, scenario.leak_gain * scenario.drive.stark.value(t)],
    ], dtype=np.complex128)


def _peak_eta_samples(eta_fn, t0: float, t1: float, n: int = 2001) -> float:
    ts = np.linspace(t0, t1, n)
    best = 0.0
    for t in ts:
        try:
            best = max(best, eta_fn(t))
        except DegenerateFrameError:
            continue
    return best


def _safe_peak_eta(drive: DrivePair, t0: float, t1: float) -> float:
    try:
        return peak_adiabaticity(drive, t0, t1, (t1 - t0) / 2000)
    except DegenerateFrameError:
        return 0.0  # drive is off for the whole window


def run_scrap_single(scenario: SingleQubitScenario, initial: int, dt: float,
                     target=None) -> "GateReport":
    """Propagate a three-level passage and summarize it.

    ``target`` names what 'success' means for the fidelity field: a basis
    index (final population of that state) or "superposition01" (best
    overlap with an equal-weight 0/1 superposition of any relative
    phase).  Default: the partner qubit state of ``initial``.
    """
    if initial not in (0, 1, 2):
        raise ValueError("initial must be a basis index 0, 1 or 2")
    t0, t1 = scenario.window
    psi0 = np.zeros(3, dtype=np.complex128)
    psi0[initial] = 1.0
    result = propagate_state(scenario.term_hamiltonian(), psi0, t0, t1, dt)
    peak = _safe_peak_eta(scenario.drive, t0, t1)
    if target is None:
        target = {0: 1, 1: 0, 2: 2}[initial]
    fidelity = _state_fidelity(result.final_state, target)
    return GateReport(
        final_populations=result.final_populations,
        fidelity=fidelity,
        peak_eta=peak,
        duration=t1 - t0,
        norm_drift=result.norm_drift,
        result=result,
        eta_series=scenario.eta_series(result.times),
    )


def _state_fidelity(state: np.ndarray, target) -> float:
    if target == "superposition01":
        return (abs(state[0]) + abs(state[1])) ** 2 / 2.0
    return float(abs(state[int(target)]) ** 2)


@dataclass(frozen=True)
class CoulombCoefficients:
    """Pauli-basis coefficients of the dipole-dipole interaction, in J."""

    zeta1_z: float
    zeta2_z: float
    zeta1_x: float
    zeta2_x: float
    zeta12_zz: float
    zeta12_xx: float
    zeta12_zx: float
    zeta12_xz: float


def coulomb_coefficients(z1: tuple, z2: tuple, d: float,
                         constants: PhysicalConstants = DEFAULT_CONSTANTS
                         ) -> CoulombCoefficients:
    """All eight coefficients from the per-electron elements.

    z1, z2 are (z00, z11, z01) in micrometers; d in micrometers.
    """
    if d <= 0:
        raise ValueError("electrode spacing d must be positive")
    z1_00, z1_11, z1_01 = (v * 1e-6 for v in z1)
    z2_00, z2_11, z2_01 = (v * 1e-6 for v in z2)
    base = constants.coulomb_prefactor / (d * 1e-6) ** 3   # e^2/(4 pi eps0 d^3)
    q16, q8, q4 = base / 4.0, base / 2.0, base
    s12 = z1_00 + z1_11 - z2_00 - z2_11
    return CoulombCoefficients(
        zeta1_z=q16 * s12 * (z1_11 - z1_00),
        zeta2_z=q16 * (-s12) * (z2_11 - z2_00),
        zeta1_x=q8 * s12 * z1_01,
        zeta2_x=q8 * (-s12) * z2_01,
        zeta12_zz=-q16 * (z1_11 - z1_00) * (z2_11 - z2_00),
        zeta12_xx=-q4 * z1_01 * z2_01,
        zeta12_zx=-q8 * (z1_11 - z1_00) * z2_01,
        zeta12_xz=-q8 * (z2_11 - z2_00) * z1_01,
    )


def iswap_unitary(xi: float, phi: float) -> np.ndarray:
    """Exchange-generated two-qubit gate in the (00, 01, 10, 11) basis.

    exp(-i (phi zz + xi exchange)) has the zz phase on the whole inner
    block, swap entries included; leaving it off the -i sin(xi) entries
    would break unitarity for phi != 0.
    """
    u = np.zeros((4, 4), dtype=np.complex128)
    inner_phase = np.exp(1j * phi)
    u[0, 0] = u[3, 3] = np.exp(-1j * phi)
    u[1, 1] = u[2, 2] = inner_phase * math.cos(xi)
    u[1, 2] = u[2, 1] = inner_phase * -1j * math.sin(xi)
    return u


def rwa_exchange_hamiltonian(coeffs: CoulombCoefficients,
                             constants: PhysicalConstants = DEFAULT_CONSTANTS
                             ) -> TermHamiltonian:
    """Constant rotating-wave Hamiltonian zz + exchange, rad/ns.

    Valid under equal dressed splittings of the two electrons; generates
    exactly iswap_unitary(t*zeta12_xx/hb, t*zeta12_zz/hb).
    """
    per_ns = 1e-9 / constants.hbar
    zz = np.diag([1.0, -1.0, -1.0, 1.0]).astype(np.complex128)
    ex = np.zeros((4, 4), dtype=np.complex128)
    ex[1, 2] = ex[2, 1] = 1.0
    return TermHamiltonian.from_terms([
        (const_record(coeffs.zeta12_zz * per_ns), zz),
        (const_record(coeffs.zeta12_xx * per_ns), ex),
    ])


@dataclass(frozen=True)
class TwoQubitConfig:
    """Two exchange-coupled electrons with a chirp on electron 2.

    z1 and z2 are (z00, z11, z01) in micrometers — inputs, not solver
    output, because static holding fields shift the diagonal elements.
    ``omega`` is the splitting difference of the two qubits (rad/ns): it
    sets the rotating phase of the coupling and shifts where the chirp
    crosses resonance.  ``cross_factor`` scales how much of the chirp
    leaks onto electron 1.
    """

    d: float
    z1: tuple
    z2: tuple
    stark2: Pulse = field(default_factory=ZeroPulse)
    omega: float = 0.0
    cross_factor: float = 1.0 / math.sqrt(8.0)
    constants: PhysicalConstants = DEFAULT_CONSTANTS

    def __post_init__(self):
        if self.d <= 0:
            raise ValueError("spacing d must be positive")
        if len(self.z1) != 3 or len(self.z2) != 3:
            raise ValueError("z element sets are (z00, z11, z01)")

    @property
    def alpha_coulomb(self) -> float:
        """e^2/(2 d^3 4 pi eps0) in J/m^2."""
        return self.constants.coulomb_prefactor / (2.0 * (self.d * 1e-6) ** 3)

    @property
    def _per_ns(self) -> float:
        return 1e-9 / self.constants.hbar

    @property
    def coupling(self) -> float:
        """Exchange coupling -2 alpha z1_01 z2_01, rad/ns."""
        return -2.0 * self.alpha_coulomb * self.z1[2] * self.z2[2] * 1e-12 \
            * self._per_ns

    def delta_static(self, k: int) -> float:
        """Static Coulomb diagonal for basis state k (00,01,10,11), rad/ns."""
        z1_00, z1_11, z1_01 = (v * 1e-6 for v in self.z1)
        z2_00, z2_11, z2_01 = (v * 1e-6 for v in self.z2)
        a1 = (z1_00, z1_00, z1_11, z1_11)[k]
        a2 = (z2_00, z2_11, z2_00, z2_11)[k]
        val = self.alpha_coulomb * (a1 * a1 + z1_01 * z1_01
                                    + a2 * a2 + z2_01 * z2_01 - 2.0 * a1 * a2)
        return val * self._per_ns

    def field_factor(self, k: int) -> float:
        """Chirp-field diagonal coefficient for state k, rad/ns per V/m."""
        z1_00, z1_11, _ = self.z1
        z2_00, z2_11, _ = self.z2
        a1 = (z1_00, z1_00, z1_11, z1_11)[k]
        a2 = (z2_00, z2_11, z2_00, z2_11)[k]
        return field_gain(a2 + self.cross_factor * a1, self.constants)

    def sigma_z_coefficient(self, t: float) -> float:
        """(Delta_01 - Delta_10)/2 - omega/2 in the rotating frame, rad/ns."""
        e_dc = self.stark2.value(t)
        d01 = self.delta_static(1) + self.field_factor(1) * e_dc
        d10 = self.delta_static(2) + self.field_factor(2) * e_dc
        return 0.5 * (d01 - d10) - 0.5 * self.omega

    def sigma_z_rate(self, t: float) -> float:
        return 0.5 * (self.field_factor(1) - self.field_factor(2)) \
            * self.stark2.derivative(t)

    def crossing_time(self) -> float:
        """Where the rotating-frame detuning crosses zero (linear chirp only)."""
        if not isinstance(self.stark2, LinearPulse):
            raise ValueError("closed-form crossing requires a linear chirp")
        static = 0.5 * (self.delta_static(1) - self.delta_static(2)) \
            - 0.5 * self.omega
        rate = 0.5 * (self.field_factor(1) - self.field_factor(2)) \
            * self.stark2.rate * 1e-9
        return -static / rate

    def subspace_drive(self) -> GenericDrive:
        """Generic-drive form of the 01/10 block: A sigma_z + B sigma_x."""
        a_static = 0.5 * (self.delta_static(1) - self.delta_static(2))
        a_field = 0.5 * (self.field_factor(1) - self.field_factor(2))
        a_recs = [const_record(a_static)]
        if not isinstance(self.stark2, ZeroPulse):
            a_recs.append(pulse_record(self.stark2, a_field))
        return GenericDrive.from_records(
            a_records=a_recs,
            b_records=[const_record(self.coupling)],
            w_records=[const_record(self.omega)],
        )

    def term_hamiltonian_subspace(self, rotating_frame: bool = True
                                  ) -> TermHamiltonian:
        if rotating_frame:
            return self.subspace_drive().term_hamiltonian()
        off01 = np.array([[0, 1], [0, 0]], dtype=np.complex128)
        off10 = off01.T.copy()
        diag1 = np.diag([0.0, 1.0]).astype(np.complex128)
        terms = [
            (const_record(self.coupling, omega=-self.omega), off01),
            (const_record(self.coupling, omega=+self.omega), off10),
            (const_record(self.delta_static(2) - self.delta_static(1)), diag1),
        ]
        if not isinstance(self.stark2, ZeroPulse):
            terms.append((pulse_record(
                self.stark2, self.field_factor(2) - self.field_factor(1)), diag1))
        return TermHamiltonian.from_terms(terms)

    def term_hamiltonian_full(self) -> TermHamiltonian:
        static = np.diag([self.delta_static(k) for k in range(4)]) \
            .astype(np.complex128)
        fielddiag = np.diag([self.field_factor(k) for k in range(4)]) \
            .astype(np.complex128)
        off01 = np.zeros((4, 4), dtype=np.complex128)
        off01[1, 2] = 1.0
        off10 = off01.T.copy()
        terms = [
            (const_record(1.0), static),
            (const_record(self.coupling, omega=-self.omega), off01),
            (const_record(self.coupling, omega=+self.omega), off10),
        ]
        if not isinstance(self.stark2, ZeroPulse):
            terms.append((pulse_record(self.stark2, 1.0), fielddiag))
        return TermHamiltonian.from_terms(terms)

    def eta(self, t: float) -> float:
        hz = self.sigma_z_coefficient(t)
        b = self.coupling
        denom = hz * hz + b * b
        if denom == 0.0:
            raise DegenerateFrameError("vanishing two-qubit drive")
        return abs(b * self.sigma_z_rate(t)) / (2.0 * denom**1.5)

    def eta_series(self, times: np.ndarray) -> np.ndarray:
        out = np.zeros(len(times))
        for i, t in enumerate(times):
            try:
                out[i] = self.eta(t)
            except DegenerateFrameError:
                out[i] = np.nan
        return out


def build_two_qubit_full(cfg: TwoQubitConfig, t: float) -> np.ndarray:
    """Explicit 4x4 Hamiltonian at time t, rad/ns, basis (00, 01, 10, 11)."""
    e_dc = cfg.stark2.value(t)
    h = np.zeros((4, 4), dtype=np.complex128)
    for k in range(4):
        h[k, k] = cfg.delta_static(k) + cfg.field_factor(k) * e_dc
    c = cfg.coupling
    h[1, 2] = c * np.exp(-1j * cfg.omega * t)
    h[2, 1] = c * np.exp(+1j * cfg.omega * t)
    return h


def build_two_qubit_subspace(cfg: TwoQubitConfig, t: float,
                             rotating_frame: bool = False) -> np.ndarray:
    """The 01/10 block: explicit phases, or the rotating-frame sigma form."""
    if rotating_frame:
        hz = cfg.sigma_z_coefficient(t)
        b = cfg.coupling
        return np.array([[hz, b], [b, -hz]], dtype=np.complex128)
    e_dc = cfg.stark2.value(t)
    d01 = cfg.delta_static(1) + cfg.field_factor(1) * e_dc
    d10 = cfg.delta_static(2) + cfg.field_factor(2) * e_dc
    c = cfg.coupling
    return np.array([
        [0.0, c * np.exp(-1j * cfg.omega * t)],
        [c * np.exp(+1j * cfg.omega * t), d10 - d01],
    ], dtype=np.complex128)


def run_two_qubit(cfg: TwoQubitConfig, initial: str, t0: float, t1: float,
                  dt: float, mode: str = "subspace", target=None,
                  compute_unitary: bool = False) -> "GateReport":
    """Propagate a two-qubit passage and summarize it.

    mode "subspace" integrates the reduced rotating-frame 2-level system
    (fast path); mode "full" integrates the explicit 4x4 with its
    oscillating coupling phases as a cross-check.  Populations agree
    between the two; subspace coherences are reported in the frame of
    the propagated Hamiltonian.
    """
    if initial not in TWO_QUBIT_BASIS:
        raise ValueError(f"initial must be one of {TWO_QUBIT_BASIS}")
    t_span = (t0, t1)
    if mode == "subspace":
        if initial not in ("01", "10"):
            raise ValueError("subspace mode starts from 01 or 10")
        ham = cfg.term_hamiltonian_subspace(rotating_frame=True)
        psi0 = np.zeros(2, dtype=np.complex128)
        psi0[("01", "10").index(initial)] = 1.0
        result = propagate_state(ham, psi0, t0, t1, dt)
        c1, c2 = result.final_state
        rho = subspace_density(c1, c2)
        coherence = float(np.real(np.conj(c1) * c2))
        unitary = propagate_unitary(ham, 2, t0, t1, dt) if compute_unitary else None
    elif mode == "full":
        ham = cfg.term_hamiltonian_full()
        psi0 = np.zeros(4, dtype=np.complex128)
        psi0[TWO_QUBIT_BASIS.index(initial)] = 1.0
        result = propagate_state(ham, psi0, t0, t1, dt)
        sub = result.final_state[1:3]
        weight = float(np.sum(np.abs(sub) ** 2))
        if weight > 0.999:
            sub = sub / np.sqrt(weight)
            rho = subspace_density(sub[0], sub[1])
            coherence = float(np.real(np.conj(sub[0]) * sub[1]))
        else:
            rho, coherence = None, None
        unitary = propagate_unitary(ham, 4, t0, t1, dt) if compute_unitary else None
    else:
        raise ValueError("mode must be 'subspace' or 'full'")

    peak = _peak_eta_samples(cfg.eta, *t_span)
    if target is None:
        target = {"01": "10", "10": "01"}.get(initial, initial)
    fidelity = _two_qubit_fidelity(result.final_state, target, mode)
    return GateReport(
        final_populations=result.final_populations,
        fidelity=fidelity,
        peak_eta=peak,
        duration=t1 - t0,
        norm_drift=result.norm_drift,
        rho_sub=rho,
        coherence_re=coherence,
        unitary=unitary,
        result=result,
        eta_series=cfg.eta_series(result.times),
    )


def _two_qubit_fidelity(state: np.ndarray, target, mode: str) -> float:
    if target == "bell":
        if mode == "subspace":
            c1, c2 = state
        else:
            c1, c2 = state[1], state[2]
        return (abs(c1) + abs(c2)) ** 2 / 2.0
    if mode == "subspace":
        idx = ("01", "10").index(target)
    else:
        idx = TWO_QUBIT_BASIS.index(target)
    return float(abs(state[idx]) ** 2)


def generic_drive_from_pair(drive: DrivePair) -> GenericDrive:
    """Two-level generic-drive form of a chirp+pump pair.

    H/hb = [e E_dc (z11-z00)/2hb] sigma_z + [e xi z01/2hb] sigma_x, i.e.
    A = detuning/2 and B = rabi/2 with no rotating phase.
    """
    return GenericDrive.from_records(
        a_records=[pulse_record(drive.stark, 0.5 * drive.detuning_gain)],
        b_records=[pulse_record(drive.pump, 0.5 * drive.rabi_gain)],
        w_records=[],
    )


def run_rabi(omega_rabi: float, duration: float, dt: float) -> "GateReport":
    """Resonant constant drive from |0>: the duration-sensitive baseline."""
    if duration <= 0:
        raise ValueError("duration must be positive")
    ham = TermHamiltonian.from_terms([
        (const_record(0.5 * omega_rabi), _SX),
    ])
    psi0 = np.array([1.0, 0.0], dtype=np.complex128)
    result = propagate_state(ham, psi0, 0.0, duration, dt)
    return GateReport(
        final_populations=result.final_populations,
        fidelity=float(result.final_populations[1]),
        peak_eta=0.0,
        duration=duration,
        norm_drift=result.norm_drift,
        result=result,
    )


def run_nonadiabatic_single(spectral: SpectralData, drive: DrivePair,
                            window: tuple, initial: int, dt: float,
                            target=None) -> "GateReport":
    """Fast two-level passage driven against the adiabatic condition.

    Integrates the state directly and, when the angle chart stays
    regular, also the rotation angles (attached to the result for
    cross-checking and phase read-out).
    """
    from .errors import CoordinateSingularityError
    from .dynamics import propagate_euler_angles

    if initial not in (0, 1):
        raise ValueError("initial must be 0 or 1")
    t0, t1 = window
    gd = generic_drive_from_pair(drive)
    psi0 = np.zeros(2, dtype=np.complex128)
    psi0[initial] = 1.0
    result = propagate_state(gd.term_hamiltonian(), psi0, t0, t1, dt)
    try:
        angles = propagate_euler_angles(gd, t0, t1, dt)
    except CoordinateSingularityError:
        angles = None
    if angles is not None:
        result = PropagationResult(times=result.times, states=result.states,
                                   norm_drift=result.norm_drift,
                                   flagged=result.flagged, angles=angles)
    peak = _safe_peak_eta(drive, t0, t1)
    if target is None:
        target = 1 - initial
    scenario_eta = np.zeros(len(result.times))
    for i, t in enumerate(result.times):
        try:
            scenario_eta[i] = adiabaticity(drive, t)
        except DegenerateFrameError:
            scenario_eta[i] = np.nan
    return GateReport(
        final_populations=result.final_populations,
        fidelity=_state_fidelity(result.final_state, target),
        peak_eta=peak,
        duration=t1 - t0,
        norm_drift=result.norm_drift,
        result=result,
        eta_series=scenario_eta,
    )


def phase_gate(rho: float) -> np.ndarray:
    """diag(1, e^{i rho}): the chirp's residual phase on state |1>."""
    return np.diag([1.0, np.exp(1j * rho)]).astype(np.complex128)


def stark_phase(drive: DrivePair, t0: float, t1: float) -> float:
    """Accumulated phase-gate angle -integral of Delta(t) dt, radians."""
    from scipy.integrate import quad

    points = None
    if isinstance(drive.stark, WindowPulse):
        points = [e for e in drive.stark.edges() if t0 < e < t1] or None
    value, _ = quad(drive.detuning, t0, t1, points=points, epsabs=1e-8, limit=200)
    return -value


def subspace_density(c1: complex, c2: complex) -> np.ndarray:
    """Pure-state density matrix [[|C1|^2, C1* C2], [C2* C1, |C2|^2]]."""
    if abs(abs(c1) ** 2 + abs(c2) ** 2 - 1.0) > 1e-6:
        raise ValueError("amplitudes are not normalized")
    return np.array([
        [abs(c1) ** 2, np.conj(c1) * c2],
        [np.conj(c2) * c1, abs(c2) ** 2],
    ], dtype=np.complex128)


def gate_fidelity(u_actual: np.ndarray, u_target: np.ndarray) -> float:
    """Global-phase-invariant overlap |Tr(U_t^dag U_a)|^2 / n^2."""
    u_actual = np.asarray(u_actual)
    u_target = np.asarray(u_target)
    if u_actual.shape != u_target.shape:
        raise ValueError("unitaries must have equal dimensions")
    n = u_actual.shape[0]
    return float(abs(np.trace(u_target.conj().T @ u_actual)) ** 2 / n**2)


@dataclass(frozen=True)
class GateReport:
    """Summary of one gate run; serializes to JSON for the CLI."""

    final_populations: np.ndarray
    fidelity: float
    peak_eta: float
    duration: float
    norm_drift: float
    unitary: np.ndarray | None = None
    rho_sub: np.ndarray | None = None
    coherence_re: float | None = None
    result: PropagationResult | None = field(default=None, compare=False)
    eta_series: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        if not 0.0 <= self.fidelity <= 1.0 + 1e-12:
            raise ValueError("fidelity must lie in [0, 1]")
        if self.rho_sub is not None:
            rho = np.asarray(self.rho_sub)
            if np.max(np.abs(rho - rho.conj().T)) > 1e-9:
                raise ValueError("rho_sub must be Hermitian")
            if abs(np.trace(rho).real - 1.0) > 1e-6:
                raise ValueError("rho_sub must have unit trace")

    def to_json(self) -> str:
        def c_pairs(mat):
            return [[[float(v.real), float(v.imag)] for v in row] for row in mat]

        doc = {
            "final_populations": [float(p) for p in self.final_populations],
            "fidelity": float(self.fidelity),
            "peak_eta": float(self.peak_eta),
            "duration_ns": float(self.duration),
            "norm_drift": float(self.norm_drift),
            "rho_sub": None if self.rho_sub is None else c_pairs(self.rho_sub),
            "coherence_re": None if self.coherence_re is None
            else float(self.coherence_re),
            "unitary": None if self.unitary is None else c_pairs(self.unitary),
        }
        return json.dumps(doc, indent=2)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n")
