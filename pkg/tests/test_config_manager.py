#!/usr/bin/env python
# -*- coding: utf-8 -*-

import pytest

from core.config_manager import ConfigManager
from core.errors import ConfigError
from models.config_models import GridSpacing, MatrixMode, RunConfig
from utils.constants import DEFAULT_TOLERANCES, OUTPUT_DIR_ENV


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    """Sin config.ini ni variable de entorno heredados"""
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv(OUTPUT_DIR_ENV, raising=False)


def write_config(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_defaults_without_file():
    run = ConfigManager().to_run_config()
    assert run.general.group == "SU(2)"
    assert run.general.seed == 20240601
    assert run.state.a_mode is MatrixMode.RANDOM
    assert run.grid.spacing is GridSpacing.LINEAR
    assert len(run.grid.values()) == 13
    assert run.tolerances == DEFAULT_TOLERANCES


def test_empty_weights_and_xi_are_filled():
    run = ConfigManager().to_run_config()
    assert run.weights.lambdas == [(0,), (1,), (2,), (3,)]
    assert run.points.xi == [1.3]


def test_su3_fill_uses_rank(tmp_path):
    path = write_config(tmp_path / "su3.ini", "[General]\ngroup = su(3)\nenable_sun = true\n")
    run = ConfigManager(path).to_run_config()
    assert run.rank == 2
    assert run.weights.lambdas[1] == (1, 0)
    assert run.points.xi == [1.3, 1.3]


def test_missing_explicit_file_raises(tmp_path):
    with pytest.raises(ConfigError):
        ConfigManager(str(tmp_path / "nope.ini"))


@pytest.mark.parametrize(
    "text",
    [
        "[General]\nseed = abc\n",
        "[General]\ngroup = SO(3)\n",
        "[Potentials]\nh = zero\n",
        "[Potentials]\ng = cubic\n",
        "[Grid]\nt_start = 5\nt_stop = 1\n",
        "[Grid]\nspacing = spiral\n",
        "[State]\na_mode = diagonal\n",
        "[Weights]\nlambdas = 1;-2\n",
        "[Points]\nxi = 0\n",
        "[Scan]\nbs_step = 0\n",
        "[Tolerances]\nplancherel = -1\n",
        "[Tolerances]\nunknown_check = 1e-3\n",
    ],
)
def test_invalid_values_raise_config_error(tmp_path, text):
    path = write_config(tmp_path / "bad.ini", text)
    with pytest.raises(ConfigError):
        ConfigManager(path).to_run_config()


def test_tolerance_override(tmp_path):
    path = write_config(tmp_path / "tol.ini", "[Tolerances]\npairing_relative = 0.05\n")
    run = ConfigManager(path).to_run_config()
    assert run.tolerance("pairing_relative") == 0.05
    assert run.tolerance("plancherel") == DEFAULT_TOLERANCES["plancherel"]


def test_explicit_grid_and_potentials(tmp_path):
    text = "[Grid]\nt_values = 1, 2.5, 10\n[Potentials]\ng = radial:0.5,0.25\nh = quartic\n"
    run = ConfigManager(write_config(tmp_path / "grid.ini", text)).to_run_config()
    assert run.grid.values() == [1.0, 2.5, 10.0]
    assert run.potentials.g == "radial:0.5,0.25"


def test_log_grid(tmp_path):
    text = "[Grid]\nt_start = 1\nt_stop = 100\nt_count = 3\nspacing = log\n"
    run = ConfigManager(write_config(tmp_path / "log.ini", text)).to_run_config()
    assert run.grid.values() == pytest.approx([1.0, 10.0, 100.0])


def test_cli_overrides(tmp_path):
    run = ConfigManager().to_run_config({"output_dir": tmp_path / "out", "seed": 5, "threads": 3})
    assert run.paths.output_dir == str(tmp_path / "out")
    assert run.general.seed == 5
    assert run.general.threads == 3


def test_environment_output_dir(monkeypatch, tmp_path):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path / "env"))
    assert ConfigManager().to_run_config().paths.output_dir == str(tmp_path / "env")
    # la línea de comandos tiene prioridad
    run = ConfigManager().to_run_config({"output_dir": "cli"})
    assert run.paths.output_dir == "cli"


def test_config_hash_ignores_paths_and_threads():
    base = ConfigManager().to_run_config()
    moved = ConfigManager().to_run_config({"output_dir": "elsewhere", "threads": 7})
    reseeded = ConfigManager().to_run_config({"seed": 1})
    assert base.config_hash() == moved.config_hash()
    assert base.config_hash() != reseeded.config_hash()
    assert len(base.config_hash()) == 64


def test_run_config_dict_round_trip():
    run = ConfigManager().to_run_config()
    again = RunConfig.from_dict(run.to_dict())
    assert again.to_dict() == run.to_dict()
    assert again.is_valid()


def test_partial_file_gets_defaults(tmp_path):
    path = write_config(tmp_path / "partial.ini", "[General]\nseed = 3\n")
    manager = ConfigManager(path)
    assert manager.get("Scan", "bs_step") == "0.01"
    assert manager.getint("Quadrature", "torus_nodes") == 128
    assert manager.getboolean("General", "enable_sun") is False
    assert manager.getfloat("Tolerances", "plancherel") == DEFAULT_TOLERANCES["plancherel"]
    assert manager.to_run_config().general.seed == 3


def test_typed_readers_report_location(tmp_path):
    path = write_config(tmp_path / "typed.ini", "[Scan]\nbs_upper = mucho\n")
    manager = ConfigManager(path)
    with pytest.raises(ConfigError, match=r"\[Scan\] bs_upper"):
        manager.getfloat("Scan", "bs_upper")
    with pytest.raises(ConfigError, match=r"\[Scan\] bs_upper"):
        manager.to_run_config()
    grid = ConfigManager(write_config(tmp_path / "grid.ini", "[Grid]\nt_values = 1, dos\n"))
    with pytest.raises(ConfigError, match=r"\[Grid\] t_values"):
        grid.getfloats("Grid", "t_values")
    with pytest.raises(ConfigError):
        manager.get("Nada", "opcion")


def test_weight_reader(tmp_path):
    path = write_config(tmp_path / "w.ini", "[Weights]\nlambdas = 0; 2 ;5\n")
    assert ConfigManager(path).getweights("Weights", "lambdas") == [(0,), (2,), (5,)]


def test_default_tolerances_are_spelled_out(tmp_path):
    manager = ConfigManager()
    assert sorted(manager.config.options("Tolerances")) == sorted(DEFAULT_TOLERANCES)
