from .config import ConfigError, ExperimentConfig, FamilyDocument, load_family, load_partition, parse_family
from .report import RadiusRecord, Report, ReportWriter
from .runner import CertificationEngine
from .commands import build_parser, run

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "FamilyDocument",
    "load_family",
    "load_partition",
    "parse_family",
    "RadiusRecord",
    "Report",
    "ReportWriter",
    "CertificationEngine",
    "build_parser",
    "run",
]
