# -*- coding: utf-8 -*-

"""Control parameters shared by the commands, and the validated run settings.

Each command declares its parameters as a table of the form

    "name": {
        "default": ...,
        "kind": "integer" | "float" | "string" | "enumeration" | "boolean"
                | "float list" | "integer list",
        "default_units": "",
        "enumeration": (...),
        "format_string": "...",
        "description": "Label:",
        "help_text": "...",
    }

The tables are held by seamm.Parameters. They also drive the command-line
flags ("name" becomes --name, spaces turning into hyphens) and the checking
of values read from a configuration file, and the values end in a RunConfig.
"""

import argparse
from dataclasses import dataclass
from importlib import resources
import logging
from pathlib import Path

import psutil
import seamm

from .atlas import SelectionParameters
from .field_model import MAX_DEGREE
from .metadata import metadata
from .oracle import OracleParameters

logger = logging.getLogger(__name__)

NONE_VALUES = ("", "none", "None", None)


def convert_value(data, key, value):
    """The value of a parameter in the type its table entry declares."""
    kind = data["kind"]
    if value in NONE_VALUES and kind not in ("string",):
        return None
    try:
        if kind == "integer":
            return int(value)
        if kind == "float":
            return float(value)
        if kind == "boolean":
            if isinstance(value, bool):
                return value
            if str(value).lower() in ("yes", "true", "1"):
                return True
            if str(value).lower() in ("no", "false", "0"):
                return False
            raise ValueError(value)
        if kind in ("float list", "integer list"):
            convert = float if kind == "float list" else int
            if isinstance(value, str):
                value = value.replace(",", " ").split()
            elif not isinstance(value, (list, tuple)):
                value = [value]
            return tuple(convert(v) for v in value)
        if kind == "enumeration":
            if value not in data["enumeration"]:
                raise ValueError(value)
            return value
        return "" if value is None else str(value)
    except (TypeError, ValueError):
        raise ValueError("Invalid value '{}' for {}".format(value, key)) from None


class RunParameters(seamm.Parameters):
    """The parameters common to all commands."""

    parameters = {
        "system": {
            "default": "",
            "kind": "string",
            "default_units": "",
            "enumeration": tuple(metadata["examples"]),
            "format_string": "s",
            "description": "System:",
            "help_text": (
                "The system definition file, or the name of a bundled example "
                "such as 'example1'."
            ),
        },
        "out": {
            "default": ".",
            "kind": "string",
            "default_units": "",
            "enumeration": tuple(),
            "format_string": "s",
            "description": "Output directory:",
            "help_text": "The directory for the files written.",
        },
        "ncores": {
            "default": "available",
            "kind": "string",
            "default_units": "",
            "enumeration": ("available",),
            "format_string": "s",
            "description": "Number of cores:",
            "help_text": "The maximum number of worker threads to use.",
        },
    }

    def __init__(self, defaults={}, data=None):
        """Initialize the instance, by default from the default
        parameters given in the class"""

        self._table = {**RunParameters.parameters, **defaults}
        super().__init__(defaults=self._table)
        for key, item in self._table.items():
            self[key].value = item["default"]
        if data is not None:
            self.assign(data)

    def assign(self, data):
        """Set values from a {name: value} map, converting and checking them.

        Underscores and hyphens in the names stand for spaces.
        """
        for key, value in data.items():
            key = key.replace("_", " ").replace("-", " ")
            if key not in self._table:
                raise ValueError("Unknown parameter '{}'".format(key))
            self[key].value = convert_value(self._table[key], key, value)

    def add_arguments(self, parser):
        """Add a flag for every parameter; unset flags leave no value."""
        for key, data in self._table.items():
            flag = "--" + key.replace(" ", "-")
            options = {
                "dest": key,
                "default": argparse.SUPPRESS,
                "help": "{} (default: {})".format(
                    data.get("help_text", ""), data["default"]
                ),
            }
            if data["kind"] == "enumeration":
                options["choices"] = data["enumeration"]
            parser.add_argument(flag, **options)


oracle_parameters = {
    "t final": {
        "default": 50.0,
        "kind": "float",
        "default_units": "",
        "enumeration": tuple(),
        "format_string": ".1f",
        "description": "Integration time:",
        "help_text": "Trajectories not decided by this time are undecided.",
    },
    "dt": {
        "default": 1.0e-3,
        "kind": "float",
        "default_units": "",
        "enumeration": tuple(),
        "format_string": ".2e",
        "description": "Time step:",
        "help_text": "The fixed step of the Runge-Kutta integration.",
    },
    "eps conv": {
        "default": 1.0e-3,
        "kind": "float",
        "default_units": "",
        "enumeration": tuple(),
        "format_string": ".2e",
        "description": "Convergence radius:",
        "help_text": "A trajectory has converged once its norm is this small.",
    },
    "r max": {
        "default": 1.0e3,
        "kind": "float",
        "default_units": "",
        "enumeration": tuple(),
        "format_string": ".2e",
        "description": "Blow-up radius:",
        "help_text": "A trajectory has diverged once its norm is this large.",
    },
}

degree_parameters = {
    "degree": {
        "default": None,
        "kind": "integer",
        "default_units": "",
        "enumeration": tuple(),
        "format_string": "d",
        "description": "Degree:",
        "help_text": (
            "The truncation degree p of the series. By default 50 for example1 "
            "and 30 otherwise."
        ),
    },
}

grid_parameters = {
    "atlas": {
        "default": "",
        "kind": "string",
        "default_units": "",
        "enumeration": tuple(),
        "format_string": "s",
        "description": "Atlas file:",
        "help_text": "The atlas to use; by default <out>/<system>.atlas.json.",
    },
    "bounds": {
        "default": None,
        "kind": "float list",
        "default_units": "",
        "enumeration": tuple(),
        "format_string": "",
        "description": "Bounds:",
        "help_text": (
            "Lower and upper limit for each coordinate, e.g. '-3,5,-4,4'. "
            "The bundled examples have their own defaults; otherwise -2 to 2."
        ),
    },
}


def bundled_system(name):
    """The path of a bundled example system, or None."""
    data = metadata["examples"].get(name)
    if data is None:
        return None
    return resources.files("lyapunov_da").joinpath("data", data["file"])


def resolve_ncores(value):
    """The number of worker threads for an --ncores value."""
    available = psutil.cpu_count(logical=False) or 1
    if value in NONE_VALUES or value == "available":
        return available
    try:
        requested = int(value)
    except ValueError:
        raise ValueError("Invalid number of cores '{}'".format(value)) from None
    if requested < 1:
        raise ValueError("The number of cores must be at least 1")
    return min(requested, available)


def parse_slice(text, n):
    """A slice 'x3=0' as (axis index, value)."""
    if text in NONE_VALUES:
        return None
    name, sep, value = str(text).partition("=")
    name = name.strip()
    if not sep or not name.startswith("x") or not name[1:].isdigit():
        raise ValueError("Invalid slice '{}'; expected e.g. 'x3=0'".format(text))
    axis = int(name[1:]) - 1
    if axis < 0 or axis >= n:
        raise ValueError("Slice variable {} in a {}-dimensional system".format(name, n))
    try:
        return axis, float(value)
    except ValueError:
        raise ValueError("Invalid slice value '{}'".format(value)) from None


@dataclass(frozen=True)
class RunConfig:
    """Validated settings for one command."""

    system: str = ""
    out: Path = Path(".")
    degree: int = None
    steps: int = 3
    points: int = 3
    bounds: tuple = None
    resolution: tuple = (201,)
    slice: str = ""
    oracle: OracleParameters = OracleParameters()
    selection: SelectionParameters = SelectionParameters()
    level: float = 1.0
    criterion: str = "top"
    verify: bool = True
    verify_directions: int = 64
    shrink: float = 0.9
    safety: float = 0.9
    min_level: float = 0.1
    ncores: int = 1
    atlas: str = ""
    samples: int = 500
    sensitivity: tuple = ()

    def __post_init__(self):
        if self.degree is not None and not 2 <= self.degree <= MAX_DEGREE:
            raise ValueError("The degree must be between 2 and {}".format(MAX_DEGREE))
        if self.steps < 0:
            raise ValueError("The number of steps must be non-negative")
        if self.points < 1:
            raise ValueError("At least one point per step is needed")
        if self.samples < 0:
            raise ValueError("The number of samples must be non-negative")
        if any(r < 2 for r in self.resolution):
            raise ValueError("The resolution must be at least 2 along every axis")
        if self.bounds is not None:
            if len(self.bounds) % 2 != 0 or not self.bounds:
                raise ValueError("The bounds need a lower and upper limit per axis")
            for lo, hi in zip(self.bounds[0::2], self.bounds[1::2]):
                if not lo < hi:
                    raise ValueError("Each lower bound must be below the upper bound")
        if not self.level > 0:
            raise ValueError("The level must be positive")
        if self.verify_directions < 1 or self.ncores < 1:
            raise ValueError("Counts must be positive")
        for name in ("shrink", "safety", "min_level"):
            if not 0 < getattr(self, name) <= 1:
                raise ValueError("{} must be in (0, 1]".format(name))
        if any(not 2 <= p <= MAX_DEGREE for p in self.sensitivity):
            raise ValueError("Sensitivity degrees must be between 2 and {}".format(
                MAX_DEGREE
            ))
        selection = self.selection
        if not (0 < selection.tol < 1 and selection.w_max_factor > 0):
            raise ValueError("tol must be in (0, 1) and the W_max factor positive")
        if selection.w_max is not None and not selection.w_max > 0:
            raise ValueError("W_max must be positive")
        if selection.directions_per_point < 1:
            raise ValueError("At least one direction per point is needed")

    @classmethod
    def from_values(cls, values):
        """Build the configuration from merged parameter values."""
        values = {
            key.replace(" ", "_"): value
            for key, value in values.items()
            if value is not None or key in ("degree", "bounds", "w max")
        }
        oracle = OracleParameters(
            **{
                key: values.pop(key)
                for key in ("t_final", "dt", "eps_conv", "r_max")
                if key in values
            }
        )
        selection = {}
        for key in ("tol", "w_max_factor", "w_max", "directions_per_point"):
            if key in values:
                value = values.pop(key)
                if value is not None or key == "w_max":
                    selection[key] = value
        selection = SelectionParameters(**selection)
        ncores = resolve_ncores(values.pop("ncores", "available"))
        values["out"] = Path(values.get("out") or ".")
        return cls(oracle=oracle, selection=selection, ncores=ncores, **values)

    @property
    def system_name(self):
        """The stem used for output file names."""
        return Path(str(self.system)).stem if self.system else "system"

    def system_path(self):
        """The system file, resolving names of bundled examples."""
        if not self.system:
            raise ValueError("No system given; use --system")
        path = Path(self.system)
        if not path.exists():
            bundled = bundled_system(str(self.system))
            if bundled is not None:
                return bundled
            raise FileNotFoundError("The system file '{}' does not exist".format(path))
        return path

    def default_degree(self):
        if self.degree is not None:
            return self.degree
        data = metadata["examples"].get(self.system_name)
        return data["degree"] if data is not None else 30

    def default_bounds(self, n, system_name=None):
        """The sampling box as (lower, upper) arrays of length n."""
        bounds = self.bounds
        if bounds is None:
            data = metadata["examples"].get(system_name or self.system_name)
            if data is not None and data["dimension"] == n:
                bounds = data["bounds"]
            else:
                bounds = (-2.0, 2.0) * n
        if len(bounds) == 2 and n > 1:
            bounds = tuple(bounds) * n
        if len(bounds) != 2 * n:
            raise ValueError(
                "{} bounds given for {} coordinates".format(len(bounds), n)
            )
        return bounds[0::2], bounds[1::2]

    def grid_resolution(self, n):
        if len(self.resolution) == 1:
            return tuple(self.resolution) * n
        if len(self.resolution) != n:
            raise ValueError(
                "{} resolutions given for {} coordinates".format(
                    len(self.resolution), n
                )
            )
        return tuple(self.resolution)

    def atlas_path(self, system_name=None):
        if self.atlas:
            return Path(self.atlas)
        return self.out / "{}.atlas.json".format(system_name or self.system_name)
