import json

import numpy as np
import pytest

from heliumq import (DEFAULT_CONSTANTS, Grid, PhysicalConstants,
                     SpectralData, analytic_bohr_radius,
                     analytic_diagonal_dipole, analytic_spectrum_oracle,
                     build_hamiltonian, default_grid, dipole_element,
                     solve_bound_states, spectral_data)
from heliumq.errors import SpectralResolutionError

MEV = 1.602176634e-22

# closed-form values at the default constants, frozen from the oracle
ORACLE_E = (-0.6449567939837338, -0.16123919849593346, -0.07166186599819266)
ORACLE_A_B = 0.007685925266272691
PAPER_E = (-0.65, -0.16, -0.072)
PAPER_Z = {"z00": 0.0115, "z11": 0.0461, "z22": 0.1038,
           "z01": 0.0043, "z12": 0.0142}


# ---------------------------------------------------------------- stencil

def test_fd_diagonal_entries():
    grid = default_grid(n_points=1000, z_max=0.3e-6)
    ham = build_hamiltonian(grid)
    c = DEFAULT_CONSTANTS
    expected = (c.hbar**2 / (c.m_e * grid.h**2)
                - c.lambda_image * c.coulomb_prefactor / grid.z)
    assert np.array_equal(ham.diagonal, expected)


def test_fd_offdiagonal_entries():
    grid = default_grid(n_points=1000, z_max=0.3e-6)
    ham = build_hamiltonian(grid)
    c = DEFAULT_CONSTANTS
    expected = -c.hbar**2 / (2 * c.m_e * grid.h**2)
    assert np.all(ham.off_diagonal == expected)
    assert len(ham.off_diagonal) == grid.n_points - 1


def test_fd_matrix_symmetric():
    ham = build_hamiltonian(default_grid(n_points=1000, z_max=0.3e-6))
    dense = ham.dense()
    assert np.max(np.abs(dense - dense.T)) == 0.0


def test_grid_rejects_nonpositive_zmin():
    with pytest.raises(ValueError):
        Grid(z_min=0.0, z_max=1e-6, n_points=2000)
    with pytest.raises(ValueError):
        Grid(z_min=-1e-9, z_max=1e-6, n_points=2000)


def test_grid_rejects_coarse_grid():
    with pytest.raises(ValueError):
        Grid(z_min=1e-10, z_max=1e-6, n_points=500)


# ---------------------------------------------------------------- energies

def test_oracle_frozen_values():
    for n, expected in enumerate(ORACLE_E):
        assert analytic_spectrum_oracle(n) == pytest.approx(expected, rel=1e-12)
    assert analytic_bohr_radius() == pytest.approx(ORACLE_A_B, rel=1e-12)


def test_oracle_scaling_law():
    e0 = analytic_spectrum_oracle(0)
    for n in range(1, 6):
        assert analytic_spectrum_oracle(n) / e0 == pytest.approx(
            1.0 / (n + 1) ** 2, rel=1e-14)
    with pytest.raises(ValueError):
        analytic_spectrum_oracle(-1)


def test_energies_match_oracle(bound_states):
    for n in range(3):
        assert bound_states[n].energy == pytest.approx(
            analytic_spectrum_oracle(n), rel=1e-3)


def test_energies_match_reported_values(bound_states):
    for n in range(3):
        assert bound_states[n].energy == pytest.approx(PAPER_E[n], rel=0.01)


def test_convergence_on_doubling(bound_states):
    fine = solve_bound_states(default_grid(n_points=12000), k=3)
    for n in range(3):
        change = abs((fine[n].energy - bound_states[n].energy)
                     / bound_states[n].energy)
        assert change < 1e-3


def test_orthonormality(bound_states):
    grid = bound_states[0].grid
    for i in range(4):
        for j in range(4):
            overlap = np.sum(bound_states[i].wavefunction
                             * bound_states[j].wavefunction) * grid.h
            assert abs(overlap - (1.0 if i == j else 0.0)) < 1e-6


def test_normalization(bound_states):
    grid = bound_states[0].grid
    for state in bound_states:
        norm = np.sum(state.wavefunction**2) * grid.h
        assert abs(norm - 1.0) < 1e-8


def test_node_counts(bound_states):
    for state in bound_states:
        assert state.node_count() == state.index


def test_sign_convention(bound_states):
    for state in bound_states:
        assert np.sum(state.wavefunction[:100]) > 0


def test_energies_negative_and_ascending(bound_states):
    energies = [s.energy for s in bound_states]
    assert all(e < 0 for e in energies)
    assert energies == sorted(energies)


def test_resolution_error_on_small_box():
    grid = default_grid(n_points=1000, z_max=0.02e-6)
    with pytest.raises(SpectralResolutionError, match="bound states"):
        solve_bound_states(grid, k=3)


# ---------------------------------------------------------------- dipoles

def test_diagonal_dipoles_match_analytic(bound_states):
    for n in range(3):
        got = dipole_element(bound_states[n], bound_states[n])
        assert got == pytest.approx(analytic_diagonal_dipole(n), rel=0.01)


def test_dipoles_match_reported_values(bound_states):
    s = bound_states
    assert dipole_element(s[0], s[0]) == pytest.approx(PAPER_Z["z00"], rel=0.05)
    assert dipole_element(s[1], s[1]) == pytest.approx(PAPER_Z["z11"], rel=0.05)
    assert dipole_element(s[2], s[2]) == pytest.approx(PAPER_Z["z22"], rel=0.05)
    assert abs(dipole_element(s[0], s[1])) == pytest.approx(PAPER_Z["z01"],
                                                            rel=0.05)
    assert abs(dipole_element(s[1], s[2])) == pytest.approx(PAPER_Z["z12"],
                                                            rel=0.05)


def test_z01_sign_under_convention(bound_states):
    # positive-slope wavefunctions make the 0-1 element come out negative
    assert dipole_element(bound_states[0], bound_states[1]) < 0


def test_dipole_symmetric_bitwise(bound_states):
    a, b = bound_states[0], bound_states[2]
    assert dipole_element(a, b) == dipole_element(b, a)


def test_dipole_grid_mismatch_rejected(bound_states):
    other = solve_bound_states(default_grid(n_points=2000), k=1)
    with pytest.raises(ValueError, match="different grids"):
        dipole_element(bound_states[0], other[0])


# ---------------------------------------------------------------- packaging

def test_omega10(spectral):
    assert spectral.omega10 == pytest.approx(2 * np.pi * 117e9, rel=0.02)
    expected = (spectral.energies[1] - spectral.energies[0]) * MEV \
        / DEFAULT_CONSTANTS.hbar
    assert spectral.omega10 == pytest.approx(expected, rel=1e-12)


def test_spectral_data_validation(spectral):
    bad = spectral.z_elements.copy()
    bad[0, 1] += 1e-9
    with pytest.raises(ValueError, match="symmetric"):
        SpectralData(energies=spectral.energies, z_elements=bad,
                     omega10=spectral.omega10)
    with pytest.raises(ValueError, match="increase"):
        SpectralData(energies=(-0.1, -0.2, -0.3),
                     z_elements=spectral.z_elements, omega10=spectral.omega10)


def test_spectral_json_roundtrip(spectral, tmp_path):
    path = tmp_path / "spec.json"
    spectral.save(path)
    loaded = SpectralData.load(path)
    assert loaded.energies == spectral.energies
    assert np.array_equal(loaded.z_elements, spectral.z_elements)
    assert loaded.omega10 == spectral.omega10
    doc = json.loads(path.read_text())
    assert set(doc) == {"energies_mev", "z_elements_um", "omega10_rad_per_s"}


def test_spectral_json_missing_field():
    with pytest.raises(ValueError, match="energies_mev"):
        SpectralData.from_json('{"z_elements_um": [[0.1]]}')


def test_constants_validation():
    c = PhysicalConstants()
    assert c.lambda_image == pytest.approx(
        (c.helium_dielectric - 1) / (4 * (c.helium_dielectric + 1)), abs=1e-15)
    with pytest.raises(ValueError, match="lambda_image"):
        PhysicalConstants(lambda_image=0.009)
    with pytest.raises(ValueError, match="positive"):
        PhysicalConstants(m_e=-1.0)


def test_spectral_data_k4():
    data = spectral_data(k=4)
    assert len(data.energies) == 4
    assert data.z_elements.shape == (4, 4)
