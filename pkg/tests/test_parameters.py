#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Tests for the parameter tables and the run configuration."""

import argparse
from pathlib import Path

import psutil
import pytest
import seamm

from lyapunov_da import GrowParameters, RunConfig, SampleParameters
from lyapunov_da.parameters import parse_slice, resolve_ncores


def test_defaults():
    P = GrowParameters()
    assert P["steps"].value == 3
    assert P["points"].value == 3
    assert P["degree"].value is None
    assert P["verify"].value is True
    assert P["verify directions"].value == 64
    assert P["t final"].value == 50.0
    assert "system" in P
    values = P.values_to_dict()
    assert values["safety"] == 0.9
    assert values["min level"] == 0.1


def test_assign_converts():
    P = SampleParameters()
    P.assign({"resolution": "11, 21", "bounds": "-1,1,-2,2", "slice": "x3=0.5"})
    assert P["resolution"].value == (11, 21)
    assert P["bounds"].value == (-1.0, 1.0, -2.0, 2.0)
    P = GrowParameters(data={"w_max": "none", "verify": "no", "t-final": 10})
    assert P["w max"].value is None
    assert P["verify"].value is False
    assert P["t final"].value == 10.0


def test_assign_rejects():
    P = GrowParameters()
    with pytest.raises(ValueError):
        P.assign({"steps": "three"})
    with pytest.raises(ValueError):
        P.assign({"criterion": "limsup"})
    with pytest.raises(ValueError):
        P.assign({"colour": "blue"})
    assert P["steps"].value == 3


def test_flags_from_table():
    P = GrowParameters()
    assert isinstance(P, seamm.Parameters)
    parser = argparse.ArgumentParser()
    P.add_arguments(parser)
    args = parser.parse_args(["--min-level", "0.2", "--verify", "no"])
    assert vars(args) == {"min level": "0.2", "verify": "no"}
    P.assign(vars(args))
    assert P["min level"].value == 0.2
    assert P["verify"].value is False


def test_config_from_values():
    P = GrowParameters(data={"system": "example1", "tol": 0.05, "dt": 0.01})
    config = RunConfig.from_values(P.values_to_dict())
    assert config.selection.tol == 0.05
    assert config.oracle.dt == 0.01
    assert config.verify is True
    assert config.safety == 0.9
    assert config.default_degree() == 50
    assert config.atlas_path() == Path(".") / "example1.atlas.json"
    assert config.system_path().name == "example1.sys"
    lows, highs = config.default_bounds(2)
    assert tuple(lows) == (-3.0, -4.0)
    assert tuple(highs) == (5.0, 4.0)


def test_default_degree_for_other_systems():
    assert RunConfig(system="mine.sys").default_degree() == 30
    assert RunConfig(system="example3", degree=12).default_degree() == 12


def test_bounds_and_resolution():
    config = RunConfig(bounds=(-1.0, 1.0), resolution=(3,))
    lows, highs = config.default_bounds(3)
    assert tuple(lows) == (-1.0, -1.0, -1.0)
    assert config.grid_resolution(2) == (3, 3)
    with pytest.raises(ValueError):
        RunConfig(bounds=(-1.0, 1.0, 2.0, 2.0)).default_bounds(2)
    with pytest.raises(ValueError):
        RunConfig(resolution=(5, 5)).grid_resolution(3)


@pytest.mark.parametrize(
    "values",
    [
        {"degree": 1},
        {"degree": 61},
        {"steps": -1},
        {"points": 0},
        {"resolution": (1,)},
        {"bounds": (1.0, -1.0)},
        {"bounds": (1.0,)},
        {"level": 0.0},
        {"samples": -5},
        {"sensitivity": (1,)},
        {"safety": 0.0},
        {"shrink": 1.5},
        {"min_level": -0.1},
    ],
)
def test_invalid_config(values):
    with pytest.raises(ValueError):
        RunConfig(**values)


def test_missing_system(tmp_path):
    with pytest.raises(ValueError):
        RunConfig().system_path()
    with pytest.raises(FileNotFoundError):
        RunConfig(system=str(tmp_path / "none.sys")).system_path()


def test_slices():
    assert parse_slice("x3=0", 3) == (2, 0.0)
    assert parse_slice(" x1 = -0.5", 4) == (0, -0.5)
    assert parse_slice("", 3) is None
    for text in ("x4=0", "z=1", "x2", "x2=a"):
        with pytest.raises(ValueError):
            parse_slice(text, 3)


def test_ncores():
    available = psutil.cpu_count(logical=False) or 1
    assert resolve_ncores("available") == available
    assert resolve_ncores("1") == 1
    assert resolve_ncores(10000) == available
    with pytest.raises(ValueError):
        resolve_ncores("0")
    with pytest.raises(ValueError):
        resolve_ncores("lots")
