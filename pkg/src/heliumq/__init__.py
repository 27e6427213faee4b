"""Qubit gates for electrons on liquid helium via population passages.

Subpackages: spectral (bound states and dipole elements), pulses
(control fields and the adiabaticity functional), dynamics (direct and
rotation-angle propagation), gates (scenario Hamiltonians and reports),
cli (named-scenario runner).  Hot propagation loops run in a compiled
core when available (see heliumq._kernels.BACKEND).
"""
from ._kernels import BACKEND
from .dynamics import (AdiabaticFrame, EulerAngles, EulerTrajectory,
                       GenericDrive, PropagationResult, TermHamiltonian,
                       adiabatic_frame, propagate_euler_angles,
                       propagate_state, propagate_unitary,
                       reconstruct_series, reconstruct_unitary,
                       transfer_probabilities)
from .errors import (CoordinateSingularityError, DegenerateFrameError,
                     PropagationAccuracyError, SpectralResolutionError)
from .gates import (CoulombCoefficients, GateReport, SingleQubitScenario,
                    TwoQubitConfig, build_scrap_hamiltonian,
                    build_two_qubit_full, build_two_qubit_subspace,
                    coulomb_coefficients, gate_fidelity,
                    generic_drive_from_pair, iswap_unitary, phase_gate,
                    rabi_evolution, run_nonadiabatic_single, run_rabi,
                    run_scrap_single, run_two_qubit, rwa_exchange_hamiltonian,
                    stark_phase, subspace_density)
from .pulses import (DrivePair, GaussianPulse, LinearPulse, Pulse,
                     WindowPulse, ZeroPulse, adiabaticity, field_gain,
                     peak_adiabaticity, pulse_area)
from .spectral import (DEFAULT_CONSTANTS, BoundState, Grid,
                       PhysicalConstants, SpectralData,
                       analytic_bohr_radius, analytic_diagonal_dipole,
                       analytic_spectrum_oracle, build_hamiltonian,
                       default_grid, dipole_element, solve_bound_states,
                       spectral_data)

__version__ = "0.1.0"
