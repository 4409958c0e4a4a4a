"""Strict JSON scenario files.

A scenario bundles the firm parameters (including the ability
distribution literal), an initial meaning level, a horizon, and optional
experiment blocks. Unknown fields are rejected so that typos surface as
errors instead of silently falling back to defaults.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .analytics import PARAMETER_NAMES
from .distributions import Empirical, Lognormal, TalentDistribution
from .dynamics import FirmParams
from .errors import ValidationError
from .workers import WorkerParams

_TOP_KEYS = {
    "name",
    "params",
    "initial_meaning",
    "horizon",
    "gamma_list",
    "shift_list",
    "statics_parameters",
    "statics_step",
}
_PARAM_KEYS = {"alpha", "beta", "a_e", "a_k", "c", "delta", "lambda", "distribution"}


@dataclass(frozen=True)
class Scenario:
    name: str
    params: FirmParams
    initial_meaning: float = 0.0
    horizon: int = 30
    gamma_list: tuple[float, ...] = ()
    shift_list: tuple[float, ...] = ()
    statics_parameters: tuple[str, ...] = field(default=PARAMETER_NAMES)
    statics_step: float = 1e-5


def _require_number(value: object, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{path}: expected a number, got {value!r}")
    return float(value)


def _parse_distribution(node: object, path: str) -> TalentDistribution:
    if not isinstance(node, dict) or len(node) != 1:
        raise ValidationError(
            f"{path}: expected exactly one of 'lognormal' or 'empirical'"
        )
    (kind, body), = node.items()
    if not isinstance(body, dict):
        raise ValidationError(f"{path}.{kind}: expected an object")
    if kind == "lognormal":
        allowed = {"mu", "sigma2", "power"}
        unknown = set(body) - allowed
        if unknown:
            raise ValidationError(f"{path}.lognormal: unknown fields {sorted(unknown)}")
        missing = {"mu", "sigma2"} - set(body)
        if missing:
            raise ValidationError(f"{path}.lognormal: missing fields {sorted(missing)}")
        return Lognormal(
            mu=_require_number(body["mu"], f"{path}.lognormal.mu"),
            sigma2=_require_number(body["sigma2"], f"{path}.lognormal.sigma2"),
            power=_require_number(body.get("power", 1.0), f"{path}.lognormal.power"),
        )
    if kind == "empirical":
        unknown = set(body) - {"support", "weights"}
        if unknown:
            raise ValidationError(f"{path}.empirical: unknown fields {sorted(unknown)}")
        missing = {"support", "weights"} - set(body)
        if missing:
            raise ValidationError(f"{path}.empirical: missing fields {sorted(missing)}")
        for key in ("support", "weights"):
            if not isinstance(body[key], list):
                raise ValidationError(f"{path}.empirical.{key}: expected a list")
        support = tuple(
            _require_number(v, f"{path}.empirical.support[{i}]")
            for i, v in enumerate(body["support"])
        )
        weights = tuple(
            _require_number(v, f"{path}.empirical.weights[{i}]")
            for i, v in enumerate(body["weights"])
        )
        return Empirical(support=support, weights=weights)
    raise ValidationError(f"{path}: unknown distribution kind {kind!r}")


def parse_scenario(doc: object) -> Scenario:
    """Build a validated Scenario from a decoded JSON document."""
    if not isinstance(doc, dict):
        raise ValidationError("scenario root: expected an object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ValidationError(f"scenario root: unknown fields {sorted(unknown)}")
    for key in ("name", "params"):
        if key not in doc:
            raise ValidationError(f"scenario root: missing field {key!r}")
    if not isinstance(doc["name"], str) or not doc["name"]:
        raise ValidationError("name: expected a non-empty string")

    params = doc["params"]
    if not isinstance(params, dict):
        raise ValidationError("params: expected an object")
    unknown = set(params) - _PARAM_KEYS
    if unknown:
        raise ValidationError(f"params: unknown fields {sorted(unknown)}")
    missing = _PARAM_KEYS - set(params)
    if missing:
        raise ValidationError(f"params: missing fields {sorted(missing)}")

    try:
        worker = WorkerParams(
            alpha=_require_number(params["alpha"], "params.alpha"),
            beta=_require_number(params["beta"], "params.beta"),
            a_e=_require_number(params["a_e"], "params.a_e"),
            a_k=_require_number(params["a_k"], "params.a_k"),
        )
        fp = FirmParams(
            worker=worker,
            delta=_require_number(params["delta"], "params.delta"),
            lambda_=_require_number(params["lambda"], "params.lambda"),
            c=_require_number(params["c"], "params.c"),
            dist=_parse_distribution(params["distribution"], "params.distribution"),
        )
    except ValidationError as exc:
        raise ValidationError(f"params: {exc}") from exc

    initial_meaning = _require_number(doc.get("initial_meaning", 0.0), "initial_meaning")
    if initial_meaning < 0.0:
        raise ValidationError("initial_meaning: must be >= 0")
    horizon = doc.get("horizon", 30)
    if isinstance(horizon, bool) or not isinstance(horizon, int) or horizon < 1:
        raise ValidationError("horizon: expected a positive integer")

    def _number_list(key: str) -> tuple[float, ...]:
        node = doc.get(key, [])
        if not isinstance(node, list):
            raise ValidationError(f"{key}: expected a list of numbers")
        return tuple(_require_number(v, f"{key}[{i}]") for i, v in enumerate(node))

    statics_parameters = doc.get("statics_parameters", list(PARAMETER_NAMES))
    if not isinstance(statics_parameters, list) or not all(
        isinstance(p, str) for p in statics_parameters
    ):
        raise ValidationError("statics_parameters: expected a list of parameter names")
    bad = [p for p in statics_parameters if p not in PARAMETER_NAMES]
    if bad:
        raise ValidationError(
            f"statics_parameters: unknown parameters {bad}; expected {list(PARAMETER_NAMES)}"
        )
    statics_step = _require_number(doc.get("statics_step", 1e-5), "statics_step")
    if statics_step <= 0.0:
        raise ValidationError("statics_step: must be > 0")

    return Scenario(
        name=doc["name"],
        params=fp,
        initial_meaning=initial_meaning,
        horizon=horizon,
        gamma_list=_number_list("gamma_list"),
        shift_list=_number_list("shift_list"),
        statics_parameters=tuple(statics_parameters),
        statics_step=statics_step,
    )


def load_scenario(path: str | Path) -> Scenario:
    """Load and validate a scenario JSON file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read scenario file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"scenario file {path} is not valid JSON: {exc}") from exc
    return parse_scenario(doc)


def bundled_scenario_path(name: str) -> Path:
    """Path to a scenario shipped with the package (e.g. 's0')."""
    ref = resources.files("purposedyn").joinpath("scenarios", f"{name}.json")
    with resources.as_file(ref) as p:
        if not p.exists():
            raise ValidationError(f"no bundled scenario named {name!r}")
        return Path(p)
