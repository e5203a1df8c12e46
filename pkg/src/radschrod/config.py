"""Run configuration and its flat ``key=value`` file format."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Optional, Union

from .eigen import DEFAULT_IMAG_TOL
from .potential import PotentialKind, PotentialSpec
from .stencil import MAX_HALF_WIDTH
from .transform import TransformKind

__all__ = ["RunConfig", "ConfigError", "parse_config", "render_config", "load_config"]

DEFAULT_MAX_ORDER = 8
FORMATS = ("csv", "json", "table")
REFERENCES = ("exact", "high-n")
NAMED_POTENTIALS = ("hydrogen", "hulthen", "yukawa")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    potential: str = "hydrogen"
    alpha: float = 0.0
    ell: int = 0
    transform: str = "tcii"
    order: int = 8
    npoints: tuple[int, ...] = (200,)
    xi: Union[str, float] = "auto"
    format: str = "csv"
    imag_tol: float = DEFAULT_IMAG_TOL
    reference: str = "exact"
    nref: int = 1500
    order_ref: int = 8
    levels: tuple[int, ...] = ()
    min_lambda: Optional[float] = None
    allow_high_order: bool = False

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.potential not in NAMED_POTENTIALS:
            raise ConfigError(f"unknown potential {self.potential!r}; choose from {', '.join(NAMED_POTENTIALS)}")
        if self.potential != "hydrogen" and not self.alpha > 0:
            raise ConfigError(f"{self.potential} needs --alpha > 0")
        if self.ell < 0:
            raise ConfigError("ell must be >= 0")
        try:
            TransformKind(self.transform)
        except ValueError:
            raise ConfigError(f"unknown transform {self.transform!r}; choose tds, tcii or atcii") from None
        cap = 2 * MAX_HALF_WIDTH if self.allow_high_order else DEFAULT_MAX_ORDER
        for name, p in (("order", self.order), ("order_ref", self.order_ref)):
            if p % 2 or not 2 <= p <= cap:
                raise ConfigError(f"{name} must be even and in [2, {cap}], got {p}")
        if not self.npoints:
            raise ConfigError("at least one N is required")
        k = self.order // 2
        for n in self.npoints:
            if n < 2 * k + 1:
                raise ConfigError(f"N={n} too small for order {self.order}; need N >= {2 * k + 1}")
        if self.xi != "auto" and not (isinstance(self.xi, float) and self.xi > 0):
            raise ConfigError(f"xi must be 'auto' or a positive number, got {self.xi!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {', '.join(FORMATS)}")
        if self.reference not in REFERENCES:
            raise ConfigError(f"reference must be one of {', '.join(REFERENCES)}")
        if not self.imag_tol > 0:
            raise ConfigError("imag_tol must be positive")
        for n in self.levels:
            if n < self.ell + 1:
                raise ConfigError(f"level n={n} needs n >= ell + 1 = {self.ell + 1}")

    @property
    def k(self) -> int:
        return self.order // 2

    @property
    def xi_value(self) -> Optional[float]:
        return None if self.xi == "auto" else float(self.xi)

    def potential_spec(self) -> PotentialSpec:
        kind = PotentialKind(self.potential)
        return PotentialSpec(kind, 0.0 if kind is PotentialKind.HYDROGEN else self.alpha)

    def replace(self, **changes) -> "RunConfig":
        return dataclasses.replace(self, **changes)


def _render_value(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return ",".join(str(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_config(cfg: RunConfig) -> str:
    """Serialise every field as ``key=value``, one per line, in field order."""
    return "".join(f"{f.name}={_render_value(getattr(cfg, f.name))}\n" for f in dataclasses.fields(cfg))


def _parse_value(name: str, text: str):
    text = text.strip()
    try:
        if name in ("alpha", "imag_tol"):
            return float(text)
        if name in ("ell", "order", "nref", "order_ref"):
            return int(text)
        if name in ("npoints", "levels"):
            return tuple(int(x) for x in text.split(",") if x.strip())
        if name == "xi":
            return "auto" if text == "auto" else float(text)
        if name == "min_lambda":
            return None if text == "none" else float(text)
        if name == "allow_high_order":
            if text not in ("true", "false"):
                raise ValueError(text)
            return text == "true"
    except ValueError:
        raise ConfigError(f"bad value for {name}: {text!r}") from None
    return text


def parse_config(text: str, base: Optional[RunConfig] = None) -> RunConfig:
    """Parse ``key=value`` lines; blank lines and ``#`` comments are ignored."""
    names = {f.name for f in dataclasses.fields(RunConfig)}
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in names:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        values[key] = _parse_value(key, value)
    return dataclasses.replace(base or RunConfig(), **values)


def load_config(path: str, base: Optional[RunConfig] = None) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), base)
