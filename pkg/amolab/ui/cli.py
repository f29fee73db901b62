"""Command-line surface: one subcommand per experiment, artifacts written through ResultWriter."""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from amolab.arithmetic import NearRational, find_resonances, following_resonance_growth, parse_frequency
from amolab.cocycle import SchrodingerCocycle, lyapunov, lyapunov_complex, lyapunov_sweep
from amolab.periodic import (
    as_rational, band_energy_at_rho, bands, butterfly, ids_eigencount, ids_periodic, x_set,
)
from amolab.regime import (
    build_shadowing, cancellation_sweep, dynamical_cancellation, integrated_cancellation,
    point_with_phi_ratio,
)
from amolab.reports import ResultWriter, TABLE_FORMATS
from amolab.spectral import (
    IDSTable, density_sweep, holder_probe, m_sample, thouless_increment, thouless_L,
)
from amolab.utils.errors import NumericalFailure
from amolab.utils.settings import get_output_dir, get_seed, get_thread_count

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

REQUIRED = object()


class UsageError(ValueError):
    pass


def _frequency(value: Any):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    return parse_frequency(str(value))


def _rational(value: Any) -> Fraction:
    return as_rational(str(value))


PARAMETERS: Dict[str, Dict[str, Tuple[Callable, Any]]] = {
    "butterfly": {"lambda": (float, REQUIRED), "qmax": (int, REQUIRED), "theta": (float, 0.0)},
    "bands": {"lambda": (float, REQUIRED), "pq": (_rational, REQUIRED), "theta": (float, 0.0)},
    "lyapunov": {
        "lambda": (float, REQUIRED), "alpha": (_frequency, REQUIRED), "E": (float, None),
        "eps": (float, 0.0), "e_min": (float, None), "e_max": (float, None), "e_count": (int, 101),
        "n": (int, 200_000), "grid": (int, 64),
    },
    "ids": {
        "lambda": (float, REQUIRED), "pq": (_rational, REQUIRED), "theta": (float, 0.0),
        "e_min": (float, REQUIRED), "e_max": (float, REQUIRED), "e_count": (int, 201),
        "method": (str, "bands"), "n": (int, 100_000),
    },
    "density": {
        "lambda": (float, REQUIRED), "alpha": (_frequency, REQUIRED), "theta": (float, 0.0),
        "eps": (float, 1e-3), "e_min": (float, REQUIRED), "e_max": (float, REQUIRED),
        "e_count": (int, 101), "depth": (int, 16),
    },
    "mfunc": {
        "lambda": (float, REQUIRED), "alpha": (_frequency, REQUIRED), "theta": (float, 0.0),
        "E": (float, REQUIRED), "eps": (float, 1e-3), "depth": (int, 16),
    },
    "thouless": {
        "lambda": (float, REQUIRED), "pq": (_rational, REQUIRED), "E": (float, REQUIRED),
        "delta": (float, 0.05), "alpha": (_frequency, None), "theta_samples": (int, 8),
        "spacing": (float, 1e-3), "n": (int, 20_000),
    },
    "holder": {
        "lambda": (float, REQUIRED), "pq": (_rational, REQUIRED), "theta": (float, 0.0),
        "spacing": (float, 4e-6), "samples": (int, 50),
    },
    "resonances": {
        "theta": (float, REQUIRED), "alpha": (_frequency, REQUIRED), "epsilon0": (float, 0.1),
        "K": (int, 10_000),
    },
    "cancel-test": {"trials": (int, 1000), "seed": (int, None), "s_max": (int, 97)},
    "shadow": {
        "lambda": (float, REQUIRED), "pq": (_rational, REQUIRED), "dev": (float, 0.0),
        "theta": (float, 0.0), "E": (float, None), "b": (int, 50), "phi_ratio": (float, 2.0),
    },
    "integrated": {
        "lambda": (float, REQUIRED), "pq": (_rational, REQUIRED), "dev": (float, 0.0),
        "theta": (float, 0.0), "b": (int, 4), "energy_samples": (int, 32), "eps": (float, 1e-3),
    },
}
COMMANDS = tuple(PARAMETERS)


@dataclass
class RunConfig:
    command: str
    params: Dict[str, Any] = field(default_factory=dict)
    output: Optional[str] = None
    fmt: str = "csv"
    header: bool = True
    threads: int = 1

    def resolved(self) -> Dict[str, Any]:
        """Parameters converted to their types, with defaults filled in and required keys checked."""
        if self.command not in PARAMETERS:
            raise UsageError(f"Unknown command {self.command}")
        if self.fmt not in TABLE_FORMATS:
            raise UsageError(f"Unknown output format {self.fmt}")
        schema = PARAMETERS[self.command]
        unknown = sorted(set(self.params) - set(schema))
        if unknown:
            raise UsageError(f"Unknown parameters for {self.command}: {', '.join(unknown)}")

        values = {}
        for name, (convert, default) in schema.items():
            raw = self.params.get(name)
            if raw is None:
                if default is REQUIRED:
                    raise UsageError(f"{self.command} needs --{name.replace('_', '-')}")
                values[name] = default
                continue
            try:
                values[name] = convert(raw)
            except (TypeError, ValueError, ZeroDivisionError) as e:
                raise UsageError(f"Bad value for {name}: {raw!r} ({e})")
        return values


def _energies(params: Dict[str, Any]) -> np.ndarray:
    if params["e_min"] is None or params["e_max"] is None:
        raise UsageError("an energy range needs --e-min and --e-max")
    if params["e_count"] < 1 or params["e_max"] < params["e_min"]:
        raise UsageError("energy range must satisfy e_min <= e_max and e_count >= 1")
    return np.linspace(params["e_min"], params["e_max"], params["e_count"])


def _near_rational(params: Dict[str, Any]) -> NearRational:
    pq = params["pq"]
    return NearRational(pq.numerator, pq.denominator, params["dev"])


def run_butterfly(params, config):
    return butterfly(params["lambda"], params["qmax"], params["theta"], threads=config.threads)


def run_bands(params, config):
    bs = bands(params["lambda"], params["pq"], params["theta"])
    return {**bs.to_dict(), "x_set": x_set(bs).to_dict()}


def run_lyapunov(params, config):
    if params["E"] is not None:
        cocycle = SchrodingerCocycle(params["lambda"], params["alpha"], complex(params["E"], params["eps"]))
        if params["eps"] > 0:
            value = lyapunov_complex(cocycle, params["n"], params["grid"])
        else:
            value = lyapunov(cocycle, params["n"], params["grid"])
        print(f"{value:.17g}")
        return {"lambda": params["lambda"], "alpha": float(params["alpha"]), "E": params["E"],
                "eps": params["eps"], "n": params["n"], "grid": params["grid"], "lyap": value}

    energies = _energies(params) + 1j * params["eps"]
    return lyapunov_sweep(params["lambda"], params["alpha"], energies, params["n"], params["grid"],
                          threads=config.threads)


def run_ids(params, config):
    energies = _energies(params)
    method = params["method"]
    if method == "bands":
        values = ids_periodic(bands(params["lambda"], params["pq"], params["theta"]), energies)
    elif method == "eigencount":
        values = ids_eigencount(params["lambda"], params["pq"], params["theta"], energies)
    elif method == "rotation":
        values = IDSTable.from_rotation_number(params["lambda"], params["pq"], energies, params["n"]).values
    else:
        raise UsageError(f"Unknown IDS method {method}, expected bands, eigencount or rotation")
    return pd.DataFrame({"E": energies, "N": values})


def run_density(params, config):
    return density_sweep(params["lambda"], params["alpha"], params["theta"], _energies(params),
                         params["eps"], depth=params["depth"])


def run_mfunc(params, config):
    sample = m_sample(params["lambda"], params["alpha"], params["theta"], params["E"], params["eps"],
                      depth=params["depth"])
    return sample.to_dict()


def run_thouless(params, config):
    table = IDSTable.from_periodic_average(params["lambda"], params["pq"], params["theta_samples"],
                                           params["spacing"])
    E = complex(params["E"], params["delta"])
    report = {
        "E": params["E"],
        "delta": params["delta"],
        "L": thouless_L(table, E),
        "increment": thouless_increment(table, params["E"], params["delta"]),
        "ids_source": table.source,
    }
    if params["alpha"] is not None:
        cocycle = SchrodingerCocycle(params["lambda"], params["alpha"], E)
        report["lyap"] = lyapunov_complex(cocycle, params["n"])
    return report


def run_holder(params, config):
    bs = bands(params["lambda"], params["pq"], params["theta"])
    return holder_probe(IDSTable.from_periodic(bs, params["spacing"]), samples=params["samples"]).to_dict()


def run_resonances(params, config):
    report = find_resonances(params["theta"], float(params["alpha"]), params["epsilon0"], params["K"])
    return {**report.to_dict(), "growth": following_resonance_growth(report)}


def run_cancel_test(params, config):
    seed = get_seed() if params["seed"] is None else params["seed"]
    return cancellation_sweep(params["trials"], seed, params["s_max"], threads=config.threads)


def _shadow_energy(params) -> float:
    if params["E"] is not None:
        return params["E"]
    bs = bands(params["lambda"], params["pq"], params["theta"])
    return band_energy_at_rho(bs, (bs.q + 1) // 2, 0.25)


def run_shadow(params, config):
    alpha_true = _near_rational(params)
    E = _shadow_energy(params)
    report = build_shadowing(params["lambda"], params["pq"], alpha_true, params["theta"], E, params["b"])
    z = point_with_phi_ratio(report.m, params["phi_ratio"])
    dynamical = dynamical_cancellation(params["lambda"], params["pq"], alpha_true, params["theta"],
                                       E, z, params["b"])
    return {"E": E, "shadowing": report.to_dict(), "dynamical": dynamical}


def run_integrated(params, config):
    return integrated_cancellation(params["lambda"], params["pq"], _near_rational(params),
                                   params["theta"], params["b"], params["energy_samples"], params["eps"])


HANDLERS: Dict[str, Callable] = {
    "butterfly": run_butterfly,
    "bands": run_bands,
    "lyapunov": run_lyapunov,
    "ids": run_ids,
    "density": run_density,
    "mfunc": run_mfunc,
    "thouless": run_thouless,
    "holder": run_holder,
    "resonances": run_resonances,
    "cancel-test": run_cancel_test,
    "shadow": run_shadow,
    "integrated": run_integrated,
}


def _output_path(config: RunConfig, is_table: bool) -> Path:
    if config.output:
        return Path(config.output)
    suffix = f".{config.fmt}" if is_table else ".json"
    return Path(get_output_dir()) / f"{config.command}{suffix}"


def run(config: RunConfig) -> int:
    try:
        params = config.resolved()
    except UsageError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        result = HANDLERS[config.command](params, config)
    except UsageError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalFailure as e:
        target = _output_path(config, is_table=False)
        writer = ResultWriter(target.parent, header=config.header)
        writer.write_error(e, config.command, target.with_name(f"{target.stem}.error.json"))
        return EXIT_NUMERICAL
    except ValueError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    is_table = isinstance(result, pd.DataFrame)
    target = _output_path(config, is_table)
    writer = ResultWriter(target.parent, header=config.header)
    if is_table:
        writer.write_table(result, target, config.fmt)
    else:
        writer.write_report(result, target.with_suffix(".json") if target.suffix != ".json" else target)
    return EXIT_OK


def _add_common_options(parser: argparse.ArgumentParser):
    parser.add_argument('--out', default=None, help='Output file (default: <output dir>/<command>.<format>)')
    parser.add_argument('--format', dest='fmt', choices=TABLE_FORMATS, default=None,
                        help='Table format for tabular commands')
    parser.add_argument('--config', default=None, help='JSON file with parameter values')
    parser.add_argument('--threads', type=int, default=None,
                        help='Worker processes (default: AMO_LAB_THREADS, then logical cores)')
    parser.add_argument('--no-header', action='store_true', help='Omit the timestamp header line')


def build_parser() -> argparse.ArgumentParser:
    arg_parser = argparse.ArgumentParser(prog='amo-lab',
                                         description='Spectral experiments for the almost Mathieu operator')
    subparsers = arg_parser.add_subparsers(dest='command', required=True)
    for command, schema in PARAMETERS.items():
        sub = subparsers.add_parser(command)
        for name in schema:
            sub.add_argument(f"--{name.replace('_', '-')}", dest=name, default=None)
        _add_common_options(sub)
    subparsers.add_parser('menu', help='Interactive menu')
    return arg_parser


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    try:
        with open(path, 'r') as file_handle:
            payload = json.load(file_handle)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"Cannot read config file {path}: {e}")
    if not isinstance(payload, dict):
        raise UsageError(f"Config file {path} must hold a JSON object")
    return payload


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Flags override the JSON config file, which overrides environment and defaults."""
    options = vars(args)
    file_values = load_config_file(args.config) if args.config else {}
    output = file_values.pop("out", None)
    fmt = file_values.pop("format", None)
    threads = file_values.pop("threads", None)

    params = dict(file_values)
    for name in PARAMETERS[args.command]:
        if options.get(name) is not None:
            params[name] = options[name]

    threads = args.threads if args.threads is not None else threads
    return RunConfig(
        command=args.command,
        params=params,
        output=args.out if args.out is not None else output,
        fmt=args.fmt or fmt or "csv",
        header=not args.no_header,
        threads=int(threads) if threads else get_thread_count(),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == 'menu':
        from amolab.ui.menu_ui import MenuUI
        MenuUI().run()
        return EXIT_OK

    try:
        config = config_from_args(args)
    except UsageError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return run(config)
