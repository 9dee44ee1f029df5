# cli/report.py
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence
import logging
import math

import numpy as np
import pandas as pd
import ujson

logger = logging.getLogger(__name__)

REPORT_SCHEMA = "ingham-report/1"
SWEEP_COLUMNS = ["R", "r", "L", "lambda_min", "lambda_max", "c1", "c2"]


@dataclass
class RadiusRecord:
    """Outcome for one radius; `error` is set when the chain or the oracle raised."""
    R: float
    r: Optional[float] = None
    chain: Optional[Dict[str, Any]] = None
    lambda_min: Optional[float] = None
    lambda_max: Optional[float] = None
    eigen_residual: Optional[float] = None
    lower_certificate: Optional[bool] = None
    upper_certificate: Optional[bool] = None
    L_sharp: Optional[float] = None
    max_dual_norm: Optional[float] = None
    biorthogonality_residual: Optional[float] = None
    interpolation_residual: Optional[float] = None
    quadrature_deviation: Optional[float] = None
    notes: List[str] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and bool(self.lower_certificate) and bool(self.upper_certificate)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["passed"] = self.passed
        return data


@dataclass
class Report:
    command: str
    metadata: Dict[str, Any]
    records: List[RadiusRecord] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.records) and all(rec.passed for rec in self.records)

    def sorted(self) -> "Report":
        self.records.sort(key=lambda rec: rec.R)
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": REPORT_SCHEMA,
            "command": self.command,
            "metadata": self.metadata,
            "records": [rec.to_dict() for rec in self.records],
            "summary": self.summary,
            "passed": self.passed,
        }


def json_safe(value: Any) -> Any:
    """Plain JSON types only: numpy scalars unwrapped, non-finite floats as null."""
    if isinstance(value, dict):
        return {str(k): json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    if isinstance(value, np.ndarray):
        return json_safe(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value) if math.isfinite(value) else None
    if isinstance(value, Path):
        return str(value)
    return value


class ReportWriter:
    """JSON reports (sorted keys, fixed indent) and CSV tables."""

    def __init__(self, indent: int = 2):
        self.indent = indent

    def dumps(self, payload: Dict[str, Any]) -> str:
        return ujson.dumps(json_safe(payload), sort_keys=True, indent=self.indent, ensure_ascii=False) + "\n"

    def write_json(self, payload: Dict[str, Any], path: Optional[Path]) -> str:
        text = self.dumps(payload)
        if path is not None:
            Path(path).write_text(text)
            logger.info(f"Report written to {path}")
        return text

    def write_sweep_csv(self, records: Sequence[RadiusRecord], path: Path) -> pd.DataFrame:
        rows = []
        for rec in records:
            chain = rec.chain or {}
            rows.append({
                "R": rec.R,
                "r": rec.r,
                "L": chain.get("L"),
                "lambda_min": rec.lambda_min,
                "lambda_max": rec.lambda_max,
                "c1": chain.get("c1"),
                "c2": chain.get("c2"),
            })
        df = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
        df.to_csv(path, index=False, float_format="%.17g")
        logger.info(f"Sweep table ({len(df)} rows) written to {path}")
        return df

    def write_matrix_csv(self, entries: np.ndarray, labels: Sequence[Any], path: Path) -> None:
        names = [str(lbl) for lbl in labels]
        pd.DataFrame(entries, index=names, columns=names).to_csv(path, float_format="%.17g")
        logger.info(f"Gram matrix {entries.shape[0]}x{entries.shape[1]} written to {path}")

    def write_profile_csv(self, rows: Sequence[Sequence[float]], path: Path) -> None:
        pd.DataFrame(rows, columns=["rho", "H", "h", "g"]).to_csv(path, index=False, float_format="%.17g")
        logger.info(f"Profile table ({len(rows)} rows) written to {path}")


def now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()
