"""Named-scenario runner.

Subcommands:

* ``spectrum``            solve the bound-state problem, emit JSON
* ``run <scenario>``      execute a scenario from --preset or --config
* ``list-presets``        show the built-in presets

Configs are YAML; the full schema is documented in the README.  Every
run writes a CSV time series (t_ns, pop_0.., norm[, eta]) and a JSON
gate report, then prints a one-line summary.  Exit codes: 0 success,
2 config/usage error, 3 propagation accuracy failure.
"""
from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from . import gates, presets
from ._kernels import BACKEND
from .errors import PropagationAccuracyError
from .pulses import (DrivePair, GaussianPulse, LinearPulse, Pulse,
                     WindowPulse, ZeroPulse)
from .spectral import SpectralData, default_grid, spectral_data

SCENARIOS = ("spectrum", "rabi", "scrap-single", "scrap-two",
             "nonadiabatic-single", "nonadiabatic-two", "bell")

_TWO_QUBIT_SCENARIOS = ("scrap-two", "nonadiabatic-two", "bell")


class ConfigError(ValueError):
    """Config document failed to validate; message names the field."""


@dataclass
class ScenarioConfig:
    scenario: str
    initial: object = 0
    target: object = None
    spectral_source: object = "solve"
    pulses: dict = field(default_factory=dict)
    dt: float = 0.01
    window: tuple = (0.0, 1.0)
    two_qubit: dict | None = None
    csv_path: str = "run.csv"
    json_path: str = "run.json"
    mode: str = "subspace"


def _require(doc: dict, key: str, where: str):
    if key not in doc:
        raise ConfigError(f"missing field '{where}.{key}'" if where
                          else f"missing field '{key}'")
    return doc[key]


def parse_pulse(doc: dict, where: str) -> Pulse:
    if not isinstance(doc, dict):
        raise ConfigError(f"'{where}' must be a mapping with a 'shape' tag")
    shape = _require(doc, "shape", where)
    try:
        if shape == "zero":
            return ZeroPulse()
        if shape == "linear":
            return LinearPulse(rate=float(_require(doc, "rate", where)))
        if shape == "gaussian":
            return GaussianPulse(amplitude=float(_require(doc, "amplitude", where)),
                                 center=float(_require(doc, "center", where)),
                                 width=float(_require(doc, "width", where)))
        if shape == "window":
            return WindowPulse(amplitude=float(_require(doc, "amplitude", where)),
                               t_on=float(_require(doc, "t_on", where)),
                               t_off=float(_require(doc, "t_off", where)))
    except ValueError as exc:
        raise ConfigError(f"invalid pulse '{where}': {exc}") from None
    raise ConfigError(f"unknown pulse shape '{shape}' in '{where}'")


def pulse_to_dict(pulse: Pulse) -> dict:
    if isinstance(pulse, ZeroPulse):
        return {"shape": "zero"}
    if isinstance(pulse, LinearPulse):
        return {"shape": "linear", "rate": pulse.rate}
    if isinstance(pulse, GaussianPulse):
        return {"shape": "gaussian", "amplitude": pulse.amplitude,
                "center": pulse.center, "width": pulse.width}
    return {"shape": "window", "amplitude": pulse.amplitude,
            "t_on": pulse.t_on, "t_off": pulse.t_off}


def parse_config(doc: dict) -> ScenarioConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config must be a mapping")
    scenario = _require(doc, "scenario", "")
    if scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario '{scenario}'; expected one of "
                          + ", ".join(SCENARIOS))
    cfg = ScenarioConfig(scenario=scenario)

    if scenario != "spectrum":
        numerics = _require(doc, "numerics", "")
        cfg.dt = float(_require(numerics, "dt", "numerics"))
        if cfg.dt <= 0:
            raise ConfigError("'numerics.dt' must be positive")
        if scenario != "rabi" or "window" in numerics:
            window = _require(numerics, "window", "numerics")
            if len(window) != 2 or not window[0] < window[1]:
                raise ConfigError("'numerics.window' must be [t0, t1] with t0 < t1")
            cfg.window = (float(window[0]), float(window[1]))
        else:
            cfg.window = None  # rabi default: one pi pulse

    cfg.initial = doc.get("initial", 0)
    cfg.target = doc.get("target")
    cfg.spectral_source = doc.get("spectral_source", "solve")
    cfg.mode = doc.get("mode", "subspace")
    if cfg.mode not in ("subspace", "full"):
        raise ConfigError("'mode' must be 'subspace' or 'full'")

    pulses = doc.get("pulses", {})
    for name, pdoc in pulses.items():
        cfg.pulses[name] = parse_pulse(pdoc, f"pulses.{name}")

    if scenario in _TWO_QUBIT_SCENARIOS:
        tq = _require(doc, "two_qubit", "")
        for electron in ("z1", "z2"):
            zdoc = _require(tq, electron, "two_qubit")
            for zkey in ("z00", "z11", "z01"):
                _require(zdoc, zkey, f"two_qubit.{electron}")
        _require(tq, "d", "two_qubit")
        cfg.two_qubit = tq
        if "stark2" not in cfg.pulses:
            raise ConfigError("missing field 'pulses.stark2'")
        if str(cfg.initial) not in gates.TWO_QUBIT_BASIS:
            raise ConfigError("'initial' must be one of 00, 01, 10, 11")
        cfg.initial = str(cfg.initial)
    elif scenario in ("scrap-single", "nonadiabatic-single"):
        for name in ("stark", "pump"):
            if name not in cfg.pulses:
                raise ConfigError(f"missing field 'pulses.{name}'")
        if cfg.initial not in (0, 1, 2):
            raise ConfigError("'initial' must be a basis index 0, 1 or 2")
    elif scenario == "rabi":
        if "pump" not in cfg.pulses:
            raise ConfigError("missing field 'pulses.pump'")

    output = doc.get("output", {})
    cfg.csv_path = output.get("csv", f"{scenario}.csv")
    cfg.json_path = output.get("json", f"{scenario}.json")
    return cfg


def config_to_dict(cfg: ScenarioConfig) -> dict:
    doc: dict = {"scenario": cfg.scenario}
    if cfg.scenario != "spectrum":
        doc["numerics"] = {"dt": cfg.dt}
        if cfg.window is not None:
            doc["numerics"]["window"] = [cfg.window[0], cfg.window[1]]
        doc["initial"] = cfg.initial
        if cfg.target is not None:
            doc["target"] = cfg.target
    if cfg.pulses:
        doc["pulses"] = {k: pulse_to_dict(v) for k, v in cfg.pulses.items()}
    if cfg.two_qubit is not None:
        doc["two_qubit"] = cfg.two_qubit
        doc["mode"] = cfg.mode
    elif cfg.scenario not in ("spectrum",):
        doc["spectral_source"] = cfg.spectral_source
    doc["output"] = {"csv": cfg.csv_path, "json": cfg.json_path}
    return doc


_SPECTRAL_CACHE: dict = {}


def _load_spectral(source) -> SpectralData:
    if source == "solve":
        if "default" not in _SPECTRAL_CACHE:
            _SPECTRAL_CACHE["default"] = spectral_data(default_grid())
        return _SPECTRAL_CACHE["default"]
    if isinstance(source, dict) and "cache" in source:
        path = Path(source["cache"])
        if not path.exists():
            raise ConfigError(f"spectral cache file not found: {path}")
        return SpectralData.load(path)
    raise ConfigError("'spectral_source' must be 'solve' or {cache: <path>}")


def _two_qubit_config(cfg: ScenarioConfig) -> gates.TwoQubitConfig:
    tq = cfg.two_qubit
    return gates.TwoQubitConfig(
        d=float(tq["d"]),
        z1=(float(tq["z1"]["z00"]), float(tq["z1"]["z11"]), float(tq["z1"]["z01"])),
        z2=(float(tq["z2"]["z00"]), float(tq["z2"]["z11"]), float(tq["z2"]["z01"])),
        stark2=cfg.pulses["stark2"],
        omega=float(tq.get("omega", 0.0)),
    )


def build_report(cfg: ScenarioConfig) -> gates.GateReport:
    """Run a (non-spectrum) scenario and return its report."""
    if cfg.scenario == "rabi":
        data = _load_spectral(cfg.spectral_source)
        drive = DrivePair.from_spectral(data, ZeroPulse(), cfg.pulses["pump"])
        pump = cfg.pulses["pump"]
        amplitude = getattr(pump, "amplitude", 0.0)
        omega = drive.rabi_gain * amplitude
        if omega == 0.0:
            raise ConfigError("rabi scenario needs a nonzero pump amplitude")
        duration = (cfg.window[1] - cfg.window[0]) if cfg.window is not None \
            else float(np.pi / abs(omega))
        return gates.run_rabi(omega, duration, cfg.dt)
    if cfg.scenario == "scrap-single":
        data = _load_spectral(cfg.spectral_source)
        drive = DrivePair.from_spectral(data, cfg.pulses["stark"],
                                        cfg.pulses["pump"])
        scenario = gates.SingleQubitScenario(spectral=data, drive=drive,
                                             window=cfg.window)
        return gates.run_scrap_single(scenario, int(cfg.initial), cfg.dt,
                                      target=cfg.target)
    if cfg.scenario == "nonadiabatic-single":
        data = _load_spectral(cfg.spectral_source)
        drive = DrivePair.from_spectral(data, cfg.pulses["stark"],
                                        cfg.pulses["pump"])
        return gates.run_nonadiabatic_single(data, drive, cfg.window,
                                             int(cfg.initial), cfg.dt,
                                             target=cfg.target)
    if cfg.scenario in _TWO_QUBIT_SCENARIOS:
        tq = _two_qubit_config(cfg)
        return gates.run_two_qubit(tq, cfg.initial, cfg.window[0],
                                   cfg.window[1], cfg.dt, mode=cfg.mode,
                                   target=cfg.target)
    raise ConfigError(f"unknown scenario '{cfg.scenario}'")


def execute(cfg: ScenarioConfig, out_dir: Path) -> str:
    """Run one scenario; writes output files, returns the summary line."""
    started = time.perf_counter()
    out_dir.mkdir(parents=True, exist_ok=True)

    if cfg.scenario == "spectrum":
        data = _load_spectral(cfg.spectral_source)
        json_path = out_dir / cfg.json_path
        data.save(json_path)
        elapsed = time.perf_counter() - started
        levels = ", ".join(f"{e:.4f}" for e in data.energies)
        return (f"spectrum: E = [{levels}] meV, omega10 = "
                f"{data.omega10:.4e} rad/s -> {json_path} "
                f"[{elapsed:.2f} s, {BACKEND} backend]")

    report = build_report(cfg)
    csv_path = out_dir / cfg.csv_path
    json_path = out_dir / cfg.json_path
    report.result.to_csv(csv_path, eta=report.eta_series)
    report.save(json_path)
    elapsed = time.perf_counter() - started
    pops = ", ".join(f"{p:.4f}" for p in report.final_populations)
    return (f"{cfg.scenario}: P = [{pops}], peak eta = {report.peak_eta:.3f}, "
            f"fidelity = {report.fidelity:.4f} -> {csv_path}, {json_path} "
            f"[{elapsed:.2f} s, {BACKEND} backend]")


def _apply_override(doc: dict, dotted: str, value):
    keys = dotted.split(".")
    node = doc
    for key in keys[:-1]:
        node = node.setdefault(key, {})
    node[keys[-1]] = value


def _sweep_values(spec: str):
    if "=" not in spec:
        raise ConfigError("--sweep expects KEY=V1,V2,... (dotted config key)")
    key, _, raw = spec.partition("=")
    try:
        values = [float(v) for v in raw.split(",") if v != ""]
    except ValueError:
        raise ConfigError(f"--sweep values for '{key}' must be numbers") from None
    if not values:
        raise ConfigError("--sweep needs at least one value")
    return key, values


def _resolve_doc(args) -> dict:
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        try:
            doc = yaml.safe_load(path.read_text())
        except yaml.YAMLError as exc:
            raise ConfigError(f"could not parse {path}: {exc}") from None
    elif args.preset:
        try:
            doc = presets.preset_config(args.preset)
        except KeyError as exc:
            raise ConfigError(str(exc.args[0])) from None
    else:
        raise ConfigError("provide --preset <name> or --config <file>")
    if getattr(args, "scenario", None) and doc.get("scenario") != args.scenario:
        raise ConfigError(
            f"scenario argument '{args.scenario}' does not match the config's "
            f"'{doc.get('scenario')}'")
    if args.dt is not None:
        _apply_override(doc, "numerics.dt", args.dt)
    return doc


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="heliumq",
        description="Population-passage qubit gates for surface electrons "
                    "on liquid helium.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_spec = sub.add_parser("spectrum", help="solve bound states, emit JSON")
    p_spec.add_argument("--out-dir", default=".")
    p_spec.add_argument("--json", default="spectrum.json")

    p_run = sub.add_parser("run", help="run a named scenario")
    p_run.add_argument("scenario", nargs="?", default=None,
                       help="one of " + ", ".join(SCENARIOS))
    p_run.add_argument("--preset", default=None)
    p_run.add_argument("--config", default=None)
    p_run.add_argument("--out-dir", default=".")
    p_run.add_argument("--dt", type=float, default=None,
                       help="override numerics.dt (ns)")
    p_run.add_argument("--dump-config", action="store_true",
                       help="print the resolved config YAML and exit")
    p_run.add_argument("--sweep", default=None, metavar="KEY=V1,V2,...",
                       help="fan out runs over a numeric config key")

    sub.add_parser("list-presets", help="show built-in presets")

    args = parser.parse_args(argv)

    try:
        if args.command == "list-presets":
            print(presets.preset_summary())
            return 0

        if args.command == "spectrum":
            cfg = ScenarioConfig(scenario="spectrum", json_path=args.json)
            print(execute(cfg, Path(args.out_dir)))
            return 0

        doc = _resolve_doc(args)
        if args.dump_config:
            print(yaml.safe_dump(config_to_dict(parse_config(doc)),
                                 sort_keys=False), end="")
            return 0

        out_dir = Path(args.out_dir)
        if args.sweep:
            key, values = _sweep_values(args.sweep)
            docs = []
            for i, value in enumerate(values):
                d = yaml.safe_load(yaml.safe_dump(doc))
                _apply_override(d, key, value)
                cfg = parse_config(d)
                cfg.csv_path = f"{Path(cfg.csv_path).stem}_{i:03d}.csv"
                cfg.json_path = f"{Path(cfg.json_path).stem}_{i:03d}.json"
                docs.append(cfg)
            with ThreadPoolExecutor(max_workers=min(8, len(docs))) as pool:
                for line in pool.map(lambda c: execute(c, out_dir), docs):
                    print(line)
            return 0

        print(execute(parse_config(doc), out_dir))
        return 0

    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except PropagationAccuracyError as exc:
        print(f"accuracy error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
