# cli/config.py
"""
Validated inputs for the command line: the family document, an optional class
map and the experiment switches. Every failure surfaces as ConfigError with one
diagnostic per offending field (pydantic `loc`) or the JSON line/column.
"""
from pathlib import Path
from typing import Dict, List, Optional, Union
import hashlib
import logging
import os

from pydantic import BaseModel, ConfigDict, Field, RootModel, ValidationError, field_validator, model_validator

from ingham.exceptions import InghamError
from ingham.frequency_types import FrequencyFamily, PartitionedFamily
from ingham.spectra import residue_partition

logger = logging.getLogger(__name__)

DEFAULT_GUARD_BAND = 1e-9
DEFAULT_GRID_COUNT = 8
INLINE_SOURCE = "<inline>"

Label = Union[int, str]


class ConfigError(ValueError):
    """Unusable configuration; the CLI maps this to exit status 2."""

    def __init__(self, source: str, diagnostics: List[str]):
        self.source = source
        self.diagnostics = diagnostics
        super().__init__(f"{source}: " + "; ".join(diagnostics))


def _diagnostics(exc: ValidationError) -> List[str]:
    lines = []
    for err in exc.errors():
        where = ".".join(str(part) for part in err["loc"]) or "<document>"
        lines.append(f"{where}: {err['msg']}")
    return lines


class FamilyDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dimension: int = Field(ge=1, le=10)
    points: List[Union[float, List[float]]] = Field(min_length=1)
    labels: Optional[List[Label]] = None
    classes: Optional[Dict[str, int]] = None

    @field_validator("points")
    @classmethod
    def rows_as_vectors(cls, v):
        return [row if isinstance(row, list) else [row] for row in v]

    @model_validator(mode="after")
    def check_shape(self):
        for i, row in enumerate(self.points):
            if len(row) != self.dimension:
                raise ValueError(f"points[{i}] has {len(row)} components, dimension is {self.dimension}")
        if self.labels is not None and len(self.labels) != len(self.points):
            raise ValueError(f"{len(self.labels)} labels for {len(self.points)} points")
        return self

    def to_family(self) -> FrequencyFamily:
        return FrequencyFamily(self.dimension, self.points, tuple(self.labels or ()))


class ClassMap(RootModel[Dict[str, int]]):
    pass


def _read(path: Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ConfigError(str(path), [f"cannot read file: {exc.strerror}"]) from exc


def parse_family(text: str, source: str = INLINE_SOURCE) -> FamilyDocument:
    try:
        return FamilyDocument.model_validate_json(text)
    except ValidationError as exc:
        raise ConfigError(source, _diagnostics(exc)) from exc


def load_family(path: Path) -> FamilyDocument:
    return parse_family(_read(path), str(path))


def load_class_map(path: Path) -> Dict[str, int]:
    try:
        return ClassMap.model_validate_json(_read(path)).root
    except ValidationError as exc:
        raise ConfigError(str(path), _diagnostics(exc)) from exc


def family_hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _env_guard_band() -> float:
    raw = os.getenv("INGHAM_TOL")
    if raw is None or raw == "":
        return DEFAULT_GUARD_BAND
    return float(raw)


def _env_workers() -> int:
    return int(os.getenv("INGHAM_WORKERS", "1"))


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    family_path: Optional[Path] = None
    family_inline: Optional[str] = None
    m: Optional[int] = Field(default=None, ge=1)
    classes_path: Optional[Path] = None
    radius: Optional[float] = Field(default=None, gt=0)
    grid_count: Optional[int] = Field(default=None, ge=1)
    r_span: float = Field(default=1e-3, gt=0, lt=1)
    paper_uniform: bool = False
    dump_matrix: Optional[Path] = None
    check_quadrature: bool = False
    dump_profile: Optional[Path] = None
    dimension: Optional[int] = Field(default=None, ge=1, le=10)
    out: Optional[Path] = None
    csv: Optional[Path] = None
    workers: int = Field(default_factory=_env_workers, ge=1)
    fit_points: int = Field(default=4, ge=2)
    guard_band: float = Field(default_factory=_env_guard_band, gt=0, lt=1)

    @model_validator(mode="after")
    def check_exclusive(self):
        if self.family_path is not None and self.family_inline is not None:
            raise ValueError("family given both as a file and inline")
        if self.m is not None and self.classes_path is not None:
            raise ValueError("--m and --classes are mutually exclusive")
        if self.radius is not None and self.grid_count is not None:
            raise ValueError("--R and --R-grid are mutually exclusive")
        return self

    @classmethod
    def build(cls, **values) -> "ExperimentConfig":
        try:
            return cls(**{k: v for k, v in values.items() if v is not None})
        except ValidationError as exc:
            raise ConfigError("arguments", _diagnostics(exc)) from exc
        except ValueError as exc:
            # INGHAM_TOL / INGHAM_WORKERS that are not numbers
            raise ConfigError("environment", [str(exc)]) from exc

    @property
    def grid_size(self) -> int:
        return self.grid_count or DEFAULT_GRID_COUNT

    @property
    def has_family(self) -> bool:
        return self.family_path is not None or self.family_inline is not None

    @property
    def family_source(self) -> str:
        return INLINE_SOURCE if self.family_inline is not None else str(self.family_path)

    def family_text(self) -> str:
        if self.family_inline is not None:
            return self.family_inline
        if self.family_path is None:
            raise ConfigError("arguments", ["--family is required"])
        return _read(self.family_path)


def load_partition(config: ExperimentConfig) -> PartitionedFamily:
    """Family document plus the class choice: --classes, then --m, then the document's own map, then one class."""
    document = parse_family(config.family_text(), config.family_source)
    try:
        family = document.to_family()
        if config.classes_path is not None:
            return _explicit(family, load_class_map(config.classes_path))
        if config.m is not None and config.m > 1:
            return residue_partition(family, config.m)
        if config.m is None and document.classes is not None:
            return _explicit(family, document.classes)
        return PartitionedFamily.single_class(family)
    except InghamError as exc:
        raise ConfigError(config.family_source, [str(exc)]) from exc


def _explicit(family: FrequencyFamily, mapping: Dict[str, int]) -> PartitionedFamily:
    by_name = {str(lbl): lbl for lbl in family.labels}
    class_of = {by_name.get(key, key): j for key, j in mapping.items()}
    m = max(class_of.values()) if class_of else 0
    return PartitionedFamily(family, class_of, m)
