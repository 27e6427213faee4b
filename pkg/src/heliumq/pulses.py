"""Control pulses, pulse areas, and the adiabaticity functional.

Working units: time in ns, field amplitudes in V/m, angular frequencies
in rad/ns.  A field E applied to a dipole element z produces the angular
frequency e*E*z/hbar; ``field_gain`` returns that conversion per V/m.

Gaussian convention: amplitude * exp(-(t-center)^2 / width^2) — the width
enters squared but WITHOUT the factor 2 of a standard deviation.  Mixing
this up is a silent sqrt(2) error in every chirp; all code and configs in
this package use the convention above.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import DegenerateFrameError
from .spectral import DEFAULT_CONSTANTS, PhysicalConstants, SpectralData

__all__ = [
    "ZeroPulse", "LinearPulse", "GaussianPulse", "WindowPulse", "Pulse",
    "field_gain", "DrivePair", "pulse_area", "adiabaticity",
    "peak_adiabaticity",
]


@dataclass(frozen=True)
class ZeroPulse:
    """Identically zero field."""

    def value(self, t: float) -> float:
        return 0.0

    def derivative(self, t: float) -> float:
        return 0.0


@dataclass(frozen=True)
class LinearPulse:
    """Ramp rate * t with rate in V/(m s); t is in ns."""

    rate: float

    def value(self, t: float) -> float:
        return self.rate * t * 1e-9

    def derivative(self, t: float) -> float:
        # V/m per ns
        return self.rate * 1e-9


@dataclass(frozen=True)
class GaussianPulse:
    """amplitude * exp(-(t-center)^2/width^2); see module note on the width."""

    amplitude: float
    center: float
    width: float

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError("Gaussian width must be positive")

    def value(self, t: float) -> float:
        x = (t - self.center) / self.width
        return self.amplitude * math.exp(-x * x)

    def derivative(self, t: float) -> float:
        return self.value(t) * (-2.0 * (t - self.center) / self.width**2)


@dataclass(frozen=True)
class WindowPulse:
    """Constant amplitude on [t_on, t_off] (inclusive), zero elsewhere.

    The derivative is defined as 0 in the interior; the switching edges
    are step discontinuities and are excluded from adiabaticity sampling.
    """

    amplitude: float
    t_on: float
    t_off: float

    def __post_init__(self):
        if not self.t_on < self.t_off:
            raise ValueError("require t_on < t_off")

    def value(self, t: float) -> float:
        return self.amplitude if self.t_on <= t <= self.t_off else 0.0

    def derivative(self, t: float) -> float:
        return 0.0

    def edges(self) -> tuple:
        return (self.t_on, self.t_off)


Pulse = Union[ZeroPulse, LinearPulse, GaussianPulse, WindowPulse]


def field_gain(z_um: float, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """rad/ns of angular frequency per V/m of field on dipole element z (um)."""
    return constants.e_charge * z_um * 1e-6 / constants.hbar * 1e-9


@dataclass(frozen=True)
class DrivePair:
    """A Stark chirp plus a resonant pump, with their frequency gains.

    detuning_gain converts the dc field to the qubit detuning
    Delta(t) = e E_dc(t) (z11 - z00)/hbar, and rabi_gain converts the pump
    envelope to the Rabi frequency Omega(t) = e xi(t) z01/hbar (signed by
    the wavefunction convention, so z01 < 0 gives a negative gain).
    """

    stark: Pulse
    pump: Pulse
    detuning_gain: float
    rabi_gain: float

    @classmethod
    def from_spectral(cls, data: SpectralData, stark: Pulse, pump: Pulse
                      ) -> "DrivePair":
        constants = data.constants
        return cls(
            stark=stark,
            pump=pump,
            detuning_gain=field_gain(data.z(1, 1) - data.z(0, 0), constants),
            rabi_gain=field_gain(data.z(0, 1), constants),
        )

    def detuning(self, t: float) -> float:
        return self.detuning_gain * self.stark.value(t)

    def detuning_rate(self, t: float) -> float:
        return self.detuning_gain * self.stark.derivative(t)

    def rabi(self, t: float) -> float:
        return self.rabi_gain * self.pump.value(t)

    def rabi_rate(self, t: float) -> float:
        return self.rabi_gain * self.pump.derivative(t)


def pulse_area(drive: DrivePair, t0: float, t1: float) -> float:
    """Integral of the Rabi frequency over [t0, t1], in radians.

    Adaptive quadrature with the window edges passed as split points;
    absolute error below 1e-6 rad.
    """
    from scipy.integrate import quad

    if t0 > t1:
        raise ValueError("require t0 <= t1")
    if t0 == t1 or isinstance(drive.pump, ZeroPulse) or drive.rabi_gain == 0.0:
        return 0.0
    points = None
    if isinstance(drive.pump, WindowPulse):
        points = [e for e in drive.pump.edges() if t0 < e < t1] or None
    value, _ = quad(drive.rabi, t0, t1, points=points, epsabs=1e-8, limit=200)
    return value


def _eta(delta: float, omega: float, delta_dot: float, omega_dot: float) -> float:
    denom = delta * delta + omega * omega
    if denom == 0.0:
        raise DegenerateFrameError(
            "detuning and coupling both vanish; adiabaticity undefined"
        )
    return abs(omega * delta_dot - delta * omega_dot) / (2.0 * denom**1.5)


def adiabaticity(drive: DrivePair, t: float) -> float:
    """|Omega dDelta/dt - Delta dOmega/dt| / (2 (Delta^2 + Omega^2)^(3/2)).

    Values well below 1 mean the state tracks the instantaneous
    eigenstates.  Derivatives are analytic per pulse shape; window-pulse
    switching instants are not meaningful sample points.
    """
    return _eta(drive.detuning(t), drive.rabi(t),
                drive.detuning_rate(t), drive.rabi_rate(t))


def peak_adiabaticity(drive: DrivePair, t0: float, t1: float, dt: float) -> float:
    """Max of the adiabaticity over samples t0, t0+dt, ..., t1.

    Skips window-edge instants and points where the drive vanishes
    entirely; raises if every sample is skipped.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    edges = set()
    for pulse in (drive.stark, drive.pump):
        if isinstance(pulse, WindowPulse):
            edges.update(pulse.edges())
    best = None
    n = int(math.floor((t1 - t0) / dt + 1e-9))
    for i in range(n + 1):
        t = t0 + i * dt
        if any(abs(t - e) < 1e-12 for e in edges):
            continue
        try:
            value = adiabaticity(drive, t)
        except DegenerateFrameError:
            continue
        if best is None or value > best:
            best = value
    if best is None:
        raise DegenerateFrameError("drive vanished at every sample point")
    return best
