"""Run configuration: YAML loading and validation with line-numbered errors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

import yaml

from .fuzzy_core import FuzzyInputError, FuzzyState, TriangularFuzzyNumber, alpha_grid, validate_alpha_levels
from .fuzzy_time import FuzzyProblem
from .oracle import OracleConfig
from .solver import RADIUS_TOL, VERIFY_TOL


class ConfigError(ValueError):
    def __init__(self, message: str, field: str = "", line: int | None = None, source: str = "<config>"):
        self.field = field
        self.line = line
        self.source = source
        where = source if line is None else f"{source}:{line}"
        super().__init__(f"{where}: {field}: {message}" if field else f"{where}: {message}")


@dataclass(frozen=True)
class ValidationSettings:
    pairs: int = 50
    seed: int = 0
    box: float = 8.0
    tolerance: float = 0.02


@dataclass(frozen=True)
class RunConfig:
    problem: FuzzyProblem
    verify_tol: float = VERIFY_TOL
    radius_tol: float = RADIUS_TOL
    oracle: OracleConfig | None = None
    validation: ValidationSettings = field(default_factory=ValidationSettings)
    threads: int = 0
    backend: str | None = None
    output_dir: Path = Path("results")
    membership_csv: str = "membership.csv"
    summary: str = "summary.json"
    source: str = "<config>"

    def with_overrides(self, nodes_per_edge=None, alpha_step=None, interior_grid=None,
                       threads=None, backend=None, output_dir=None) -> RunConfig:
        problem = self.problem
        if nodes_per_edge is not None:
            problem = replace(problem, nodes_per_edge=nodes_per_edge)
        if alpha_step is not None:
            problem = replace(problem, alpha_levels=tuple(alpha_grid(alpha_step)))
        if interior_grid:
            problem = replace(problem, interior_grid=True)
        out = replace(self, problem=problem)
        if threads is not None:
            out = replace(out, threads=threads)
        if backend is not None:
            out = replace(out, backend=backend)
        if output_dir is not None:
            out = replace(out, output_dir=Path(output_dir))
        return out


class _Tree:
    """Plain Python values from a YAML node tree, remembering each node's line."""

    def __init__(self, text: str, source: str):
        self.source = source
        self.lines: dict[str, int] = {}
        try:
            node = yaml.compose(text)
        except yaml.YAMLError as exc:
            mark = getattr(exc, "problem_mark", None)
            raise ConfigError(f"parse error: {getattr(exc, 'problem', exc)}",
                              line=None if mark is None else mark.line + 1, source=source) from None
        self.data = {} if node is None else self._convert(node, "")

    def _convert(self, node, path):
        self.lines[path] = node.start_mark.line + 1
        if isinstance(node, yaml.MappingNode):
            out = {}
            for k, v in node.value:
                key = str(k.value)
                sub = f"{path}.{key}" if path else key
                if key in out:
                    raise self.error(sub, "duplicate key")
                out[key] = self._convert(v, sub)
            return out
        if isinstance(node, yaml.SequenceNode):
            return [self._convert(v, f"{path}[{i}]") for i, v in enumerate(node.value)]
        return yaml.safe_load(yaml.serialize(node))

    def line_of(self, path: str) -> int | None:
        while path:
            if path in self.lines:
                return self.lines[path]
            path = path.rpartition(".")[0]
        return self.lines.get("")

    def error(self, path: str, message: str) -> ConfigError:
        return ConfigError(message, field=path, line=self.line_of(path), source=self.source)


def _number(tree: _Tree, path: str, value: Any) -> float:
    if isinstance(value, bool):
        raise tree.error(path, f"expected a number, got {value!r}")
    try:
        out = float(value)  # YAML 1.1 reads 1e-6 as a string
    except (TypeError, ValueError):
        raise tree.error(path, f"expected a number, got {value!r}") from None
    if not math.isfinite(out):
        raise tree.error(path, f"expected a finite number, got {value!r}")
    return out


def _integer(tree: _Tree, path: str, value: Any, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise tree.error(path, f"expected an integer, got {value!r}")
    if value < minimum:
        raise tree.error(path, f"must be >= {minimum}, got {value}")
    return value


def _section(tree: _Tree, data: dict, key: str, path: str, allowed: set[str], required: bool = False) -> dict:
    sub = f"{path}.{key}" if path else key
    if key not in data:
        if required:
            raise tree.error(path or key, f"missing required section '{key}'")
        return {}
    value = data[key]
    if not isinstance(value, dict):
        raise tree.error(sub, "expected a mapping")
    unknown = sorted(set(value) - allowed)
    if unknown:
        raise tree.error(f"{sub}.{unknown[0]}", "unknown key")
    return value


def _fuzzy_number(tree: _Tree, path: str, value: Any) -> TriangularFuzzyNumber:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return TriangularFuzzyNumber.crisp(float(value))
    if not isinstance(value, list) or len(value) != 3:
        raise tree.error(path, "expected [left, peak, right] or a single number")
    vals = [_number(tree, f"{path}[{i}]", v) for i, v in enumerate(value)]
    try:
        return TriangularFuzzyNumber(*vals)
    except FuzzyInputError as exc:
        raise tree.error(path, str(exc)) from None


def _state(tree: _Tree, data: dict, key: str) -> FuzzyState:
    sec = _section(tree, data, key, "problem", {"x1", "x2"}, required=True)
    comps = []
    for comp in ("x1", "x2"):
        path = f"problem.{key}.{comp}"
        if comp not in sec:
            raise tree.error(f"problem.{key}", f"missing '{comp}'")
        comps.append(_fuzzy_number(tree, path, sec[comp]))
    return FuzzyState(*comps)


TOP_KEYS = {"problem", "discretization", "tolerances", "oracle", "validation", "runtime", "outputs"}


def parse_config(text: str, source: str = "<config>", base_dir: Path | None = None) -> RunConfig:
    tree = _Tree(text, source)
    data = tree.data
    if not isinstance(data, dict):
        raise ConfigError("top level must be a mapping", line=1, source=source)
    unknown = sorted(set(data) - TOP_KEYS)
    if unknown:
        raise tree.error(unknown[0], "unknown section")

    prob = _section(tree, data, "problem", "", {"start", "target"}, required=True)
    start = _state(tree, prob, "start")
    target = _state(tree, prob, "target")

    disc = _section(tree, data, "discretization", "",
                    {"alpha_levels", "alpha_step", "nodes_per_edge", "interior_grid", "interior_per_axis"})
    if "alpha_levels" in disc and "alpha_step" in disc:
        raise tree.error("discretization.alpha_step", "give either alpha_levels or alpha_step, not both")
    try:
        if "alpha_levels" in disc:
            raw = disc["alpha_levels"]
            if not isinstance(raw, list):
                raise tree.error("discretization.alpha_levels", "expected a list")
            levels = validate_alpha_levels(
                _number(tree, f"discretization.alpha_levels[{i}]", a) for i, a in enumerate(raw))
        else:
            step = _number(tree, "discretization.alpha_step", disc.get("alpha_step", 0.05))
            levels = alpha_grid(step)
    except FuzzyInputError as exc:
        key = "alpha_levels" if "alpha_levels" in disc else "alpha_step"
        raise tree.error(f"discretization.{key}", str(exc)) from None
    nodes = _integer(tree, "discretization.nodes_per_edge", disc.get("nodes_per_edge", 64))
    interior = disc.get("interior_grid", False)
    if not isinstance(interior, bool):
        raise tree.error("discretization.interior_grid", "expected true or false")
    per_axis = _integer(tree, "discretization.interior_per_axis", disc.get("interior_per_axis", 17))
    problem = FuzzyProblem(start, target, tuple(levels), nodes, interior, per_axis)

    tol = _section(tree, data, "tolerances", "", {"verify", "radius_match"})
    verify = _number(tree, "tolerances.verify", tol.get("verify", VERIFY_TOL))
    radius = _number(tree, "tolerances.radius_match", tol.get("radius_match", RADIUS_TOL))
    for name, v in (("verify", verify), ("radius_match", radius)):
        if v <= 0:
            raise tree.error(f"tolerances.{name}", "must be > 0")

    oracle = None
    if "oracle" in data:
        osec = _section(tree, data, "oracle", "", {"tau_steps", "sigma_steps", "k_max_search",
                                                   "accept_radius", "refine_iters"})
        kw = {}
        for key in ("tau_steps", "sigma_steps", "k_max_search", "refine_iters"):
            if key in osec:
                kw[key] = _integer(tree, f"oracle.{key}", osec[key])
        if "accept_radius" in osec:
            kw["accept_radius"] = _number(tree, "oracle.accept_radius", osec["accept_radius"])
            if kw["accept_radius"] <= 0:
                raise tree.error("oracle.accept_radius", "must be > 0")
        oracle = OracleConfig(**kw)

    vsec = _section(tree, data, "validation", "", {"pairs", "seed", "box", "tolerance"})
    validation = ValidationSettings(
        pairs=_integer(tree, "validation.pairs", vsec.get("pairs", 50)),
        seed=_integer(tree, "validation.seed", vsec.get("seed", 0), minimum=0),
        box=_number(tree, "validation.box", vsec.get("box", 8.0)),
        tolerance=_number(tree, "validation.tolerance", vsec.get("tolerance", 0.02)),
    )

    rt = _section(tree, data, "runtime", "", {"threads", "backend"})
    threads = _integer(tree, "runtime.threads", rt.get("threads", 0), minimum=0)
    backend = rt.get("backend", "auto")
    if backend not in ("auto", "cython", "python"):
        raise tree.error("runtime.backend", f"expected auto, cython or python, got {backend!r}")

    out = _section(tree, data, "outputs", "", {"directory", "membership_csv", "summary"})
    out_dir = Path(str(out.get("directory", "results")))
    if not out_dir.is_absolute() and base_dir is not None:
        out_dir = base_dir / out_dir

    return RunConfig(
        problem=problem,
        verify_tol=verify,
        radius_tol=radius,
        oracle=oracle,
        validation=validation,
        threads=threads,
        backend=None if backend == "auto" else backend,
        output_dir=out_dir,
        membership_csv=str(out.get("membership_csv", "membership.csv")),
        summary=str(out.get("summary", "summary.json")),
        source=source,
    )


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", source=str(path)) from None
    return parse_config(text, source=str(path), base_dir=path.parent)
