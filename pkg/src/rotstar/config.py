"""Flat ``section.key = value`` run configuration."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError

# key -> (type, validator or None, description of the constraint)
_POS = (lambda v: v > 0, "must be positive")
_NONNEG = (lambda v: v >= 0, "must be nonnegative")
_INT2 = (lambda v: v >= 2, "must be at least 2")
_INT1 = (lambda v: v >= 1, "must be at least 1")

SCHEMA: dict[str, tuple[type, tuple | None]] = {
    "gamma": (float, (lambda v: v > 1, "must exceed 1")),
    "mass": (float, _POS),
    "central_value": (float, _POS),
    "kappa": (float, _NONNEG),
    "radial.step": (float, _POS),
    "radial.tol": (float, _POS),
    "radial.xi_max": (float, _POS),
    "maclaurin.e_min": (float, (lambda v: v >= 1, "must be >= 1 (oblate spheroids)")),
    "maclaurin.e_max": (float, (lambda v: v >= 1, "must be >= 1 (oblate spheroids)")),
    "maclaurin.n": (int, _INT1),
    "maclaurin.npts": (int, _INT2),
    "maclaurin.tol": (float, _POS),
    "rotation.kind": (str, (lambda v: v in ("power_decay", "gaussian", "tabulated"),
                            "must be power_decay, gaussian or tabulated")),
    "rotation.omega_bar": (float, _NONNEG),
    "rotation.p": (float, (lambda v: v > 1, "must exceed 1")),
    "rotation.table_path": (str, None),
    "scf.relax": (float, (lambda v: 0 < v <= 1, "must lie in (0, 1]")),
    "scf.tol": (float, _POS),
    "scf.max_iter": (int, _INT1),
    "scf.mass_tol": (float, _POS),
    "scf.eps_boundary": (float, _POS),
    "grid.nr": (int, _INT2),
    "grid.nz": (int, _INT2),
    "grid.rmax": (float, _POS),
    "grid.zmax": (float, _POS),
    "norm.s": (float, _NONNEG),
    "continuation.kappa_max": (float, _POS),
    "continuation.step0": (float, _POS),
    "continuation.step_min": (float, _POS),
    "continuation.support_frac": (float, (lambda v: 0 < v < 1, "must lie in (0, 1)")),
    "continuation.rho_factor": (float, (lambda v: v > 1, "must exceed 1")),
    "continuation.snapshot_every": (int, _NONNEG),
}


@dataclass
class RunConfig:
    values: dict = field(default_factory=dict)
    source: str = "<string>"

    def get(self, key, default=None):
        if key not in SCHEMA:
            raise KeyError(key)
        return self.values.get(key, default)

    def __contains__(self, key):
        return key in self.values


def parse_config(text: str, source: str = "<string>") -> RunConfig:
    """Parse and validate config text; raises ``ConfigError`` naming the key."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in SCHEMA:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        kind, check = SCHEMA[key]
        try:
            parsed = kind(value)
        except ValueError:
            raise ConfigError(
                f"{source}:{lineno}: key {key!r} expects {kind.__name__}, got {value!r}"
            ) from None
        if kind is str and not parsed:
            raise ConfigError(f"{source}:{lineno}: key {key!r} is empty")
        if check is not None and not check[0](parsed):
            raise ConfigError(f"{source}:{lineno}: key {key!r} {check[1]} (got {value})")
        values[key] = parsed
    cfg = RunConfig(values, source)
    _cross_check(cfg)
    return cfg


def _cross_check(cfg: RunConfig) -> None:
    v = cfg.values
    if "maclaurin.e_min" in v and "maclaurin.e_max" in v and v["maclaurin.e_max"] < v["maclaurin.e_min"]:
        raise ConfigError("key 'maclaurin.e_max' must not be below maclaurin.e_min")
    step0 = v.get("continuation.step0")
    step_min = v.get("continuation.step_min")
    if step0 is not None and step_min is not None and step_min > step0:
        raise ConfigError("key 'continuation.step_min' must not exceed continuation.step0")
    if v.get("rotation.kind") == "tabulated" and "rotation.table_path" not in v:
        raise ConfigError("key 'rotation.table_path' is required for a tabulated rotation")
    if "mass" in v and "central_value" in v:
        raise ConfigError("key 'mass' conflicts with 'central_value'; give one")


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text, str(path))
