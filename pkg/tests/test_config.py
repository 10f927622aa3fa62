from pathlib import Path

import pytest

from fuzzytoc.config import ConfigError, load_config, parse_config

BASE = """\
problem:
  start:
    x1: [-6, -5, -4]
    x2: [2, 3, 4]
  target:
    x1: [-0.5, 0, 0.5]
    x2: [-0.5, 0, 0.5]
discretization:
  alpha_step: 0.25
  nodes_per_edge: 8
"""

SHIPPED = Path(__file__).resolve().parents[1] / "configs" / "pendulum.yaml"


def test_minimal():
    cfg = parse_config(BASE)
    assert cfg.problem.alpha_levels == (0, 0.25, 0.5, 0.75, 1)
    assert cfg.problem.nodes_per_edge == 8
    assert cfg.problem.start.x1.left == -6
    assert cfg.oracle is None and cfg.backend is None and cfg.verify_tol == 1e-6


def test_shipped_config():
    cfg = load_config(SHIPPED)
    assert len(cfg.problem.alpha_levels) == 21
    assert cfg.problem.nodes_per_edge == 128
    assert cfg.oracle.tau_steps == 512 and cfg.oracle.accept_radius == 0.02
    assert cfg.output_dir == SHIPPED.parent / "../results"


def test_scientific_notation_strings():
    cfg = parse_config(BASE + "tolerances:\n  verify: 1e-7\n")
    assert cfg.verify_tol == 1e-7


def test_crisp_component():
    text = BASE.replace("x2: [2, 3, 4]", "x2: 3")
    assert parse_config(text).problem.start.x2.left == 3


def test_explicit_levels():
    text = BASE.replace("alpha_step: 0.25", "alpha_levels: [0, 0.3, 1]")
    assert parse_config(text).problem.alpha_levels == (0, 0.3, 1)


def test_levels_missing_one_reports_line_and_field():
    text = BASE.replace("alpha_step: 0.25", "alpha_levels: [0, 0.5, 0.9]")
    with pytest.raises(ConfigError) as info:
        parse_config(text, source="run.yaml")
    err = info.value
    assert err.field == "discretization.alpha_levels"
    assert err.line == 9
    assert str(err).startswith("run.yaml:9: discretization.alpha_levels:")


@pytest.mark.parametrize("extra, field", [
    ("tolerances:\n  verify: -1\n", "tolerances.verify"),
    ("tolerances:\n  verfy: 1\n", "tolerances.verfy"),
    ("runtime:\n  backend: gpu\n", "runtime.backend"),
    ("runtime:\n  threads: two\n", "runtime.threads"),
    ("oracle:\n  tau_steps: 0\n", "oracle.tau_steps"),
    ("bogus: 1\n", "bogus"),
])
def test_field_errors(extra, field):
    with pytest.raises(ConfigError) as info:
        parse_config(BASE + extra)
    assert info.value.field == field
    assert info.value.line is not None


def test_bad_triangle():
    with pytest.raises(ConfigError) as info:
        parse_config(BASE.replace("[2, 3, 4]", "[2, 5, 4]"))
    assert info.value.field == "problem.start.x2" and info.value.line == 4


def test_missing_problem():
    with pytest.raises(ConfigError, match="problem"):
        parse_config("discretization:\n  nodes_per_edge: 4\n")


def test_parse_error_has_line():
    with pytest.raises(ConfigError) as info:
        parse_config(BASE + "outputs: [unclosed\n")
    assert info.value.line is not None


def test_both_level_forms():
    with pytest.raises(ConfigError):
        parse_config(BASE + "  alpha_levels: [0, 1]\n")


def test_overrides():
    cfg = parse_config(BASE).with_overrides(nodes_per_edge=3, alpha_step=0.5, interior_grid=True, threads=2)
    assert cfg.problem.nodes_per_edge == 3
    assert cfg.problem.alpha_levels == (0, 0.5, 1)
    assert cfg.problem.interior_grid and cfg.threads == 2
