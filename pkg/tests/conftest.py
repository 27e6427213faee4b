import numpy as np
import pytest

from heliumq import default_grid, solve_bound_states, spectral_data
from heliumq.cli import ScenarioConfig, build_report, parse_config
from heliumq.presets import preset_config


@pytest.fixture(scope="session")
def spectral():
    return spectral_data(default_grid())


@pytest.fixture(scope="session")
def bound_states():
    return solve_bound_states(default_grid(), k=4)


@pytest.fixture(scope="session")
def preset_report():
    """Run a preset once per session and cache the report."""
    cache = {}

    def run(name, **overrides):
        key = (name, repr(sorted(overrides.items())))
        if key not in cache:
            doc = preset_config(name)
            for dotted, value in overrides.items():
                node = doc
                keys = dotted.split(".")
                for k in keys[:-1]:
                    node = node[k]
                node[keys[-1]] = value
            cache[key] = build_report(parse_config(doc))
        return cache[key]

    return run


@pytest.fixture(scope="session")
def preset_cfg():
    def make(name) -> ScenarioConfig:
        return parse_config(preset_config(name))

    return make


@pytest.fixture()
def rng():
    return np.random.default_rng(20260810)
