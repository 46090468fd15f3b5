"""YAML configuration: curve records and experiment configs.

Every field has a default; unknown keys are rejected with the offending path.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field, fields
from pathlib import Path

import yaml

from .curve import Curve, CurveError

THREADS_ENV = "CFTCURVES_THREADS"


class ConfigError(ValueError):
    """Malformed configuration or curve input."""


BUILTIN_CURVES = {
    "X+": {"q": 3, "f": [-1, -1, 1, 1, 0, 1]},
    "X-": {"q": 3, "f": [-1, -1, 1, -1, 0, 1]},
    "E": {"q": 3, "f": [1, 1, 0, 1]},
}


@dataclass
class CurveSpec:
    """A curve record: ``q`` (int or "p^r"), ``f`` ascending coefficients, optional ``name``.

    Integer coefficients are reduced mod p; over q = p^r a coefficient may
    also be a list of r digits in the field's power basis.
    """

    q: int | str = 3
    f: list = field(default_factory=lambda: list(BUILTIN_CURVES["X+"]["f"]))
    name: str | None = None

    def build(self) -> Curve:
        try:
            return Curve(self.q, self.f, self.name)
        except CurveError as exc:
            raise ConfigError(f"curve {self.name or ''}: {exc}") from None


@dataclass
class Bounds:
    """Search bounds; ``None`` selects the automatic default.

    B        generator degree bound for ray class groups
    n_max    Riemann-Roch level for relation harvesting
    N        truncation order for L-series
    """

    B: int | None = None
    n_max: int | None = None
    N: int | None = None


@dataclass
class ExperimentConfig:
    """Cover experiment over a family of moduli.

    curves          curve records (default: X+ and X-)
    shape           modulus shape over distinct places, e.g. "2P+Q+R"
    shape_degree    degree of the places filling the shape
    order           character order (cover degree)
    split_place     "remaining": the place of shape_degree not used by D must
                    split completely; "none": no constraint
    orientation     "arithmetic", "geometric" or "both"
    expected        curve name -> expected number of S-choices for which every
                    qualifying cover has a rational point
    require_pattern exit with a verdict failure when ``expected`` is not met,
                    even if the L-spectrum comparison separates the curves
    spectrum        also compare L-spectra of the first two curves
    seed            seed for every randomized step
    bounds          see Bounds
    """

    curves: list[CurveSpec] = field(default_factory=lambda: [
        CurveSpec(name="X+", **BUILTIN_CURVES["X+"]),
        CurveSpec(name="X-", **BUILTIN_CURVES["X-"]),
    ])
    shape: str = "2P+Q+R"
    shape_degree: int = 2
    order: int = 3
    split_place: str = "remaining"
    orientation: str = "both"
    expected: dict = field(default_factory=lambda: {"X+": 2, "X-": 0})
    require_pattern: bool = False
    spectrum: bool = True
    seed: int = 0
    bounds: Bounds = field(default_factory=Bounds)

    def validate(self) -> None:
        parse_shape(self.shape)
        if self.order < 1:
            raise ConfigError("order must be positive")
        if self.shape_degree < 1:
            raise ConfigError("shape_degree must be positive")
        if self.split_place not in ("remaining", "none"):
            raise ConfigError(f"split_place must be 'remaining' or 'none', not {self.split_place!r}")
        if self.orientation not in ("arithmetic", "geometric", "both"):
            raise ConfigError(f"unknown orientation {self.orientation!r}")
        if not self.curves:
            raise ConfigError("at least one curve is required")

    @property
    def orientations(self) -> list[str]:
        return ["arithmetic", "geometric"] if self.orientation == "both" else [self.orientation]


def parse_shape(shape: str) -> list[int]:
    """'2P+Q+R' -> [2, 1, 1] (multiplicities of distinct places)."""
    terms = [t.strip() for t in shape.replace(" ", "").split("+")]
    mults, letters = [], set()
    for t in terms:
        m = re.fullmatch(r"(\d*)([A-Za-z]\w*)", t)
        if not m:
            raise ConfigError(f"bad modulus shape term {t!r} in {shape!r}")
        k = int(m.group(1)) if m.group(1) else 1
        if k < 1:
            raise ConfigError(f"multiplicity must be positive in {shape!r}")
        if m.group(2) in letters:
            raise ConfigError(f"place {m.group(2)} repeated in {shape!r}")
        letters.add(m.group(2))
        mults.append(k)
    return mults


# ---------------------------------------------------------------------------
# generic dataclass loading with unknown-key rejection


def _load(cls, data, path: str):
    if data is None:
        return cls()
    if not isinstance(data, dict):
        raise ConfigError(f"{path or 'config'}: expected a mapping")
    known = {f.name: f for f in fields(cls)}
    unknown = sorted(set(data) - set(known))
    if unknown:
        raise ConfigError(f"{path or 'config'}: unknown key(s) {', '.join(unknown)}")
    kwargs = {}
    for k, v in data.items():
        sub = f"{path}.{k}" if path else k
        if cls is ExperimentConfig and k == "curves":
            if not isinstance(v, list):
                raise ConfigError(f"{sub}: expected a list of curve records")
            kwargs[k] = [curve_spec(item, f"{sub}[{i}]") for i, item in enumerate(v)]
        elif cls is ExperimentConfig and k == "bounds":
            kwargs[k] = _load(Bounds, v, sub)
        else:
            kwargs[k] = v
    return cls(**kwargs)


def curve_spec(data, path: str = "curve") -> CurveSpec:
    if isinstance(data, str):
        if data in BUILTIN_CURVES:
            return CurveSpec(name=data, **BUILTIN_CURVES[data])
        raise ConfigError(f"{path}: unknown builtin curve {data!r}")
    spec = _load(CurveSpec, data, path)
    if not isinstance(spec.f, list) or not spec.f:
        raise ConfigError(f"{path}.f: expected a nonempty coefficient list")
    return spec


def _read_yaml(path: str | os.PathLike):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" (line {mark.line + 1}, column {mark.column + 1})" if mark else ""
        raise ConfigError(f"{path}: invalid YAML{where}") from None


def load_curve(arg: str) -> Curve:
    """A builtin name (X+, X-, E) or a path to a YAML curve record."""
    if arg in BUILTIN_CURVES:
        return curve_spec(arg).build()
    spec = curve_spec(_read_yaml(arg), str(arg))
    if spec.name is None:
        spec.name = Path(arg).stem
    return spec.build()


def load_experiment(path: str | os.PathLike) -> ExperimentConfig:
    cfg = _load(ExperimentConfig, _read_yaml(path), "")
    try:
        cfg.validate()
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    return cfg


def parse_yaml_value(text: str, what: str):
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError:
        raise ConfigError(f"{what}: invalid YAML literal") from None


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n
