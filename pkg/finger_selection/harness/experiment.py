"""Experiment documents: parsing, validation and the per-point configurations.

An experiment is a YAML document such as::

    name: ebn0_sweep
    seed: 2005
    realizations: 500
    algorithms: [conventional, ga, exhaustive]
    system:
      num_users: 5
      num_paths: 15
      num_fingers: 5
      num_chips: 20
      energy_profile: equal
    sweep:
      axis: ebn0_db
      values: [0, 4, 8, 12, 16, 20]
    ga:
      initial_population: 32
      population: 16
      parents: 8
      mutations: 8
      iterations: 10
      report_iterations: [1, 5, 10]

Every key outside the documented schema is rejected with its dotted path.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Callable, TypeVar

import yaml
from loguru import logger

from finger_selection.algorithm.exhaustive import DEFAULT_ENUMERATION_CAP
from finger_selection.algorithm.genetic.population import GaParams
from finger_selection.algorithm.selection import Algorithm
from finger_selection.errors import ConfigError
from finger_selection.system.config import (
    EnergyProfile,
    SystemConfig,
    profile_energies,
)

T = TypeVar("T")


class SweepAxis(str, Enum):
    """Quantity varied across the points of a sweep."""

    EBN0_DB = "ebn0_db"
    NUM_FINGERS = "num_fingers"


class Averaging(str, Enum):
    """How SINR values are averaged across realizations."""

    LINEAR = "linear"
    DB = "db"


def iteration_label(iteration: int) -> str:
    """Row name of the GA best SINR after a given number of iterations."""
    return f"{Algorithm.GA.value}@{iteration}"


@dataclass(frozen=True)
class ExperimentSpec:
    """Fully validated description of a Monte Carlo sweep.

    :param name: label echoed in the output metadata
    :param system: scenario constants at the fixed operating point
    :param energy_profile: how the energies of system were built
    :param interferer_gain_db: interferer power above the desired user for the
        near-far profile
    :param sweep_axis: what the sweep varies
    :param sweep_values: Eb/N0 values in dB, or finger counts
    :param ebn0_db: fixed Eb/N0 of a finger sweep (ignored for Eb/N0 sweeps)
    :param algorithms: algorithms to run on every realization, in output order
    :param ga: genetic algorithm settings
    :param realizations: Monte Carlo realizations per sweep point
    :param seed: master seed of every random stream
    :param averaging: linear mean of SINR, or mean of SINR in dB
    :param exhaustive_cap: largest C(L, M) exhaustive search may enumerate
    :param report_iterations: GA iteration counts whose best SINR is also
        averaged, as rows named ga@<iteration>
    """

    name: str
    system: SystemConfig
    energy_profile: EnergyProfile
    interferer_gain_db: float
    sweep_axis: SweepAxis
    sweep_values: tuple[float, ...]
    ebn0_db: float
    algorithms: tuple[Algorithm, ...]
    ga: GaParams
    realizations: int = 500
    seed: int = 0
    averaging: Averaging = Averaging.LINEAR
    exhaustive_cap: int = DEFAULT_ENUMERATION_CAP
    report_iterations: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        """Check counts, seed, sweep points and algorithm feasibility."""
        if self.realizations < 1:
            raise ConfigError(
                "realizations", f"must be at least 1, got {self.realizations}"
            )
        if self.seed < 0:
            raise ConfigError("seed", f"must be non-negative, got {self.seed}")
        if self.exhaustive_cap < 1:
            raise ConfigError(
                "exhaustive_cap", f"must be at least 1, got {self.exhaustive_cap}"
            )
        self._check_report_iterations()
        if not self.sweep_values:
            raise ConfigError("sweep.values", "at least one sweep point is required")
        for position, value in enumerate(self.sweep_values):
            self._check_point(position, value)
        if Algorithm.EXHAUSTIVE in self.algorithms and not any(
            self.exhaustive_feasible(value) for value in self.sweep_values
        ):
            error_msg: str = (
                "exhaustive search exceeds the enumeration cap "
                f"{self.exhaustive_cap} at every sweep point"
            )
            raise ConfigError("algorithms", error_msg)

    def _check_report_iterations(self) -> None:
        field: str = "ga.report_iterations"
        if not self.report_iterations:
            return
        if Algorithm.GA not in self.algorithms:
            raise ConfigError(field, "needs ga among the algorithms")
        if len(set(self.report_iterations)) != len(self.report_iterations):
            raise ConfigError(field, "iterations are listed more than once")
        for iteration in self.report_iterations:
            if not 0 <= iteration <= self.ga.iterations:
                error_msg: str = (
                    f"{iteration} is outside 0..{self.ga.iterations} "
                    "(ga.iterations)"
                )
                raise ConfigError(field, error_msg)

    @property
    def row_labels(self) -> tuple[str, ...]:
        """Algorithm column of the rows written per sweep point, in order."""
        labels: list[str] = []
        for algorithm in self.algorithms:
            labels.append(algorithm.value)
            if algorithm is Algorithm.GA:
                labels.extend(
                    iteration_label(iteration) for iteration in self.report_iterations
                )
        return tuple(labels)

    def _check_point(self, position: int, value: float) -> None:
        field: str = f"sweep.values[{position}]"
        try:
            config: SystemConfig = self.config_at(value)
        except ConfigError as error:
            raise ConfigError(field, f"{error.field}: {error.message}") from error
        if (
            Algorithm.GA in self.algorithms
            and self.ga.initial_population > config.num_subsets
        ):
            error_msg: str = (
                f"ga.initial_population = {self.ga.initial_population} exceeds "
                f"C({config.num_paths}, {config.num_fingers}) = {config.num_subsets}"
            )
            raise ConfigError(field, error_msg)

    def config_at(self, value: float) -> SystemConfig:
        """Scenario constants at one sweep point.

        :param value: Eb/N0 in dB or finger count, depending on the sweep axis
        :return: config with the noise variance and finger count of that point
        """
        if self.sweep_axis is SweepAxis.EBN0_DB:
            return self.system.with_ebn0_db(float(value))
        if float(value) != int(value):
            error_msg: str = f"finger count must be an integer, got {value}"
            raise ConfigError("sweep.values", error_msg)
        return self.system.with_fingers(int(value))

    def exhaustive_feasible(self, value: float) -> bool:
        """Whether exhaustive search fits under the cap at a sweep point."""
        return self.config_at(value).num_subsets <= self.exhaustive_cap

    def to_document(self) -> dict[str, Any]:
        """Plain mapping that parse_spec turns back into this spec."""
        system: SystemConfig = self.system
        return {
            "name": self.name,
            "seed": self.seed,
            "realizations": self.realizations,
            "algorithms": [algorithm.value for algorithm in self.algorithms],
            "averaging": self.averaging.value,
            "exhaustive_cap": self.exhaustive_cap,
            "system": {
                "num_users": system.num_users,
                "num_paths": system.num_paths,
                "num_fingers": system.num_fingers,
                "num_chips": system.num_chips,
                "th_alphabet_size": system.alphabet_size,
                "decay": system.decay,
                "log_variance": system.log_variance,
                "energy_profile": self.energy_profile.value,
                "interferer_gain_db": self.interferer_gain_db,
            },
            "sweep": {
                "axis": self.sweep_axis.value,
                "values": list(self.sweep_values),
                "ebn0_db": self.ebn0_db,
            },
            "ga": {
                **dataclasses.asdict(self.ga),
                "report_iterations": list(self.report_iterations),
            },
        }


_TOP_KEYS: frozenset[str] = frozenset(
    {
        "name",
        "seed",
        "realizations",
        "algorithms",
        "averaging",
        "exhaustive_cap",
        "system",
        "sweep",
        "ga",
    }
)
_SYSTEM_KEYS: frozenset[str] = frozenset(
    {
        "num_users",
        "num_paths",
        "num_fingers",
        "num_chips",
        "th_alphabet_size",
        "decay",
        "log_variance",
        "energy_profile",
        "interferer_gain_db",
    }
)
_SWEEP_KEYS: frozenset[str] = frozenset({"axis", "values", "ebn0_db"})
_GA_KEYS: frozenset[str] = frozenset(
    [*(field.name for field in dataclasses.fields(GaParams)), "report_iterations"]
)

_MISSING: Any = object()


def _section(document: dict[str, Any], key: str) -> dict[str, Any]:
    value: Any = document.get(key, {})
    if not isinstance(value, dict):
        raise ConfigError(key, f"expected a mapping, got {type(value).__name__}")
    return value


def _reject_unknown(
    section: dict[str, Any], allowed: frozenset[str], path: str
) -> None:
    for key in section:
        if key not in allowed:
            field: str = f"{path}.{key}" if path else str(key)
            raise ConfigError(field, "unknown key")


def _take(
    section: dict[str, Any],
    key: str,
    path: str,
    convert: Callable[[Any], T],
    default: Any = _MISSING,
) -> T:
    """Read one value, converting it and naming the key path on failure."""
    field: str = f"{path}.{key}" if path else key
    if key not in section:
        if default is _MISSING:
            raise ConfigError(field, "required key is missing")
        return default  # type: ignore[no-any-return]
    value: Any = section[key]
    try:
        return convert(value)
    except (TypeError, ValueError) as error:
        raise ConfigError(field, f"invalid value {value!r}: {error}") from error


def _integer(value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        error_msg: str = f"expected an integer, got {type(value).__name__}"
        raise TypeError(error_msg)
    return value


def _number(value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        error_msg: str = f"expected a number, got {type(value).__name__}"
        raise TypeError(error_msg)
    if not math.isfinite(value):
        error_msg = "expected a finite number"
        raise ValueError(error_msg)
    return float(value)


def _flag(value: Any) -> bool:
    if not isinstance(value, bool):
        error_msg: str = f"expected true or false, got {type(value).__name__}"
        raise TypeError(error_msg)
    return value


def _text(value: Any) -> str:
    if not isinstance(value, str):
        error_msg: str = f"expected a string, got {type(value).__name__}"
        raise TypeError(error_msg)
    return value


def _sweep_values(value: Any) -> tuple[float, ...]:
    if not isinstance(value, list):
        error_msg: str = f"expected a list, got {type(value).__name__}"
        raise TypeError(error_msg)
    if not value:
        error_msg = "at least one sweep point is required"
        raise ValueError(error_msg)
    return tuple(_integer(v) if isinstance(v, int) else _number(v) for v in value)


def _integer_list(value: Any) -> tuple[int, ...]:
    if not isinstance(value, list):
        error_msg: str = f"expected a list, got {type(value).__name__}"
        raise TypeError(error_msg)
    return tuple(_integer(v) for v in value)


def _algorithms(value: Any) -> tuple[Algorithm, ...]:
    if not isinstance(value, list):
        error_msg: str = f"expected a list, got {type(value).__name__}"
        raise TypeError(error_msg)
    algorithms: tuple[Algorithm, ...] = tuple(Algorithm(_text(v)) for v in value)
    if len(set(algorithms)) != len(algorithms):
        error_msg = "algorithms are listed more than once"
        raise ValueError(error_msg)
    return algorithms


def _parse_ga(section: dict[str, Any]) -> GaParams:
    _reject_unknown(section, _GA_KEYS, "ga")
    defaults: GaParams = GaParams()
    converters: dict[str, Callable[[Any], Any]] = {
        "inject_conventional": _flag,
        "random_mutations": _flag,
    }
    values: dict[str, Any] = {
        field.name: _take(
            section,
            field.name,
            "ga",
            converters.get(field.name, _integer),
            getattr(defaults, field.name),
        )
        for field in dataclasses.fields(GaParams)
    }
    return GaParams(**values)


def parse_spec(config_text: str) -> ExperimentSpec:
    """Parse and validate an experiment document.

    :param config_text: YAML text of the experiment
    :return: validated ExperimentSpec
    :raises ConfigError: naming the key path of the first invalid value
    """
    try:
        document: Any = yaml.safe_load(config_text)
    except yaml.YAMLError as error:
        raise ConfigError("<document>", f"malformed YAML: {error}") from error
    if not isinstance(document, dict):
        raise ConfigError("<document>", "expected a mapping at the top level")

    _reject_unknown(document, _TOP_KEYS, "")
    system: dict[str, Any] = _section(document, "system")
    sweep: dict[str, Any] = _section(document, "sweep")
    _reject_unknown(system, _SYSTEM_KEYS, "system")
    _reject_unknown(sweep, _SWEEP_KEYS, "sweep")

    num_users: int = _take(system, "num_users", "system", _integer)
    energy_profile: EnergyProfile = _take(
        system, "energy_profile", "system", EnergyProfile, EnergyProfile.EQUAL
    )
    interferer_gain_db: float = _take(
        system, "interferer_gain_db", "system", _number, 10.0
    )
    sweep_axis: SweepAxis = _take(sweep, "axis", "sweep", SweepAxis)
    sweep_values: tuple[float, ...] = _take(sweep, "values", "sweep", _sweep_values)
    ebn0_db: float = _take(
        sweep,
        "ebn0_db",
        "sweep",
        _number,
        float(sweep_values[0]) if sweep_axis is SweepAxis.EBN0_DB else 20.0,
    )
    # a finger sweep needs no base finger count; any sweep point will do
    default_fingers: Any = (
        int(sweep_values[0]) if sweep_axis is SweepAxis.NUM_FINGERS else _MISSING
    )

    try:
        base: SystemConfig = SystemConfig(
            num_users=num_users,
            num_paths=_take(system, "num_paths", "system", _integer),
            num_fingers=_take(
                system, "num_fingers", "system", _integer, default_fingers
            ),
            num_chips=_take(system, "num_chips", "system", _integer),
            energies=profile_energies(energy_profile, num_users, interferer_gain_db),
            noise_var=10.0 ** (-ebn0_db / 10.0),
            decay=_take(system, "decay", "system", _number, 0.1),
            log_variance=_take(system, "log_variance", "system", _number, 0.5),
            th_alphabet_size=_take(
                system, "th_alphabet_size", "system", _integer, None
            ),
        )
    except ConfigError as error:
        if error.field.startswith("system."):
            raise
        raise ConfigError(f"system.{error.field}", error.message) from error

    ga: dict[str, Any] = _section(document, "ga")
    spec = ExperimentSpec(
        name=_take(document, "name", "", _text, "experiment"),
        system=base,
        energy_profile=energy_profile,
        interferer_gain_db=interferer_gain_db,
        sweep_axis=sweep_axis,
        sweep_values=sweep_values,
        ebn0_db=ebn0_db,
        algorithms=_take(document, "algorithms", "", _algorithms),
        ga=_parse_ga(ga),
        realizations=_take(document, "realizations", "", _integer, 500),
        seed=_take(document, "seed", "", _integer, 0),
        averaging=_take(document, "averaging", "", Averaging, Averaging.LINEAR),
        exhaustive_cap=_take(
            document, "exhaustive_cap", "", _integer, DEFAULT_ENUMERATION_CAP
        ),
        report_iterations=_take(ga, "report_iterations", "ga", _integer_list, ()),
    )
    logger.debug("parsed experiment {} ({} sweep points)", spec.name, len(sweep_values))
    return spec


def load_spec(path: Path | str) -> ExperimentSpec:
    """Read and parse an experiment document from disk.

    :param path: location of the YAML document
    :return: validated ExperimentSpec
    """
    return parse_spec(Path(path).read_text(encoding="utf-8"))
