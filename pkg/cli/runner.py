# cli/runner.py
import asyncio
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from ingham import __version__
from ingham.ball_analysis import RadialWindow, eigen_profile, min_h_squared, profile_table
from ingham.constants import assembly_lower_bound, exponent, theorem_constants
from ingham.exceptions import ConditioningError, InghamError
from ingham.frequency_types import ConstantsMode, GapGeometry, PartitionedFamily
from ingham.gram_oracle import (
    BIORTHOGONAL_TOL,
    INTERPOLATION_TOL,
    GramMatrix,
    KahaneAssembly,
    RieszBounds,
    dual_family,
    gram_matrix,
    quadrature_check,
    riesz_bounds,
)
from ingham.performance import PerformanceMonitor
from ingham.spectra import geometry, remark_radius

from .config import ConfigError, ExperimentConfig, family_hash, load_partition
from .report import RadiusRecord, Report, ReportWriter, now_iso

logger = logging.getLogger(__name__)

QUADRATURE_TOL = 1e-6
SLOPE_SLACK = 0.1
MIN_SWEEP_POINTS = 5
DEFAULT_SWEEP_CSV = Path("sweep.csv")


class CertificationEngine:
    """
    Runs the constant chain and the Gram oracle over a set of radii.

    Each radius is independent: evaluations go to a thread pool and are merged
    back in R order by a single writer.
    """

    def __init__(self, config: ExperimentConfig, writer: Optional[ReportWriter] = None):
        self.config = config
        self.writer = writer or ReportWriter()
        self.perf = PerformanceMonitor()
        self.mode = ConstantsMode.PAPER_UNIFORM if config.paper_uniform else ConstantsMode.SHARP
        self._executor = ThreadPoolExecutor(max_workers=config.workers)

    def shutdown(self):
        self._executor.shutdown(wait=True)

    # ---- setup ----------------------------------------------------------

    def _prepare(self):
        pf = load_partition(self.config)
        window = eigen_profile(pf.dimension)
        min_h_squared(window)
        geo = geometry(pf, window.mu)
        logger.info(
            f"Family K={pf.family.size} N={pf.dimension} m={pf.m}: gamma={geo.gamma:.6g} R0={geo.critical_radius:.6g}"
        )
        return pf, window, geo

    def radius_grid(self, geo: GapGeometry, count: int) -> List[float]:
        """Radii R0 + 2 m r with r geometric in [r_span * R0/(2m), R0/(2m)]."""
        R0, m = geo.critical_radius, geo.m
        r_max = R0 / (2 * m)
        if count == 1:
            return [2.0 * R0]
        r = np.geomspace(self.config.r_span * r_max, r_max, count)
        return [float(R0 + 2 * m * ri) for ri in r]

    def radii(self, geo: GapGeometry) -> List[float]:
        if self.config.radius is not None:
            return [self.config.radius]
        if not geo.critical_radius > 0:
            return []
        return self.radius_grid(geo, self.config.grid_size)

    def _metadata(self, pf: PartitionedFamily, geo: GapGeometry) -> Dict[str, Any]:
        try:
            remark = remark_radius(pf.family, pf.m) if pf.dimension == 1 else None
        except InghamError:
            remark = None
        return {
            "version": __version__,
            "generated_at": now_iso(),
            "family_sha256": family_hash(self.config.family_text()),
            "dimension": pf.dimension,
            "size": pf.family.size,
            "m": pf.m,
            "partition": pf.source.value,
            "mode": self.mode.value,
            "gamma": geo.gamma,
            "class_gammas": list(geo.class_gammas),
            "mu": geo.mu,
            "critical_radius": geo.critical_radius,
            "theorem_radius": geo.theorem_radius,
            "remark_radius": remark,
            "exponent": exponent(pf.m, pf.dimension),
            "tolerances": {
                "guard_band": self.config.guard_band,
                "biorthogonality": BIORTHOGONAL_TOL,
                "interpolation": INTERPOLATION_TOL,
                "quadrature": QUADRATURE_TOL,
            },
        }

    # ---- one radius -------------------------------------------------------

    def evaluate_radius(self, pf: PartitionedFamily, R: float, window: RadialWindow) -> RadiusRecord:
        start = time.perf_counter()
        record = RadiusRecord(R=float(R))
        try:
            chain = theorem_constants(pf, R, self.mode, window)
            record.r = chain.r
            record.chain = chain.to_dict()

            gram_start = time.perf_counter()
            gram = gram_matrix(pf.family, R)
            bounds = riesz_bounds(gram)
            self.perf.record_gram_latency((time.perf_counter() - gram_start) * 1000)

            band = 1.0 + self.config.guard_band
            record.lambda_min = bounds.lambda_min
            record.lambda_max = bounds.lambda_max
            record.eigen_residual = bounds.residual
            record.lower_certificate = chain.L <= bounds.lambda_min * band
            record.upper_certificate = bounds.lambda_max <= chain.c2 * band
            if not record.lower_certificate:
                logger.error(f"R={R:.6g}: L={chain.L:.6e} exceeds lambda_min={bounds.lambda_min:.6e}")
            if not record.upper_certificate:
                logger.error(f"R={R:.6g}: lambda_max={bounds.lambda_max:.6e} exceeds c2={chain.c2:.6e}")

            self._oracle_checks(pf, R, window, chain, gram, bounds, record)
        except InghamError as exc:
            logger.error(f"R={R:.6g}: {type(exc).__name__}: {exc}")
            record.error = f"{type(exc).__name__}: {exc}"
        self.perf.record_radius_latency((time.perf_counter() - start) * 1000)
        return record

    def _oracle_checks(self, pf, R, window, chain, gram: GramMatrix, bounds: RieszBounds, record: RadiusRecord):
        try:
            duals = dual_family(gram, bounds)
            record.max_dual_norm = duals.max_dual_norm
            record.biorthogonality_residual = duals.biorthogonality_residual
            if not duals.norm_bounds_hold:
                record.notes.append("dual norm exceeds 1/sqrt(lambda_min)")
        except ConditioningError as exc:
            logger.warning(f"R={R:.6g}: duals skipped: {exc}")
            record.notes.append(f"duals skipped: {exc}")

        try:
            assembly = KahaneAssembly(pf, R, window)
            record.L_sharp = assembly_lower_bound(chain, assembly.sharp_p_factors())
            record.interpolation_residual = assembly.interpolation_residual()
            if record.interpolation_residual > INTERPOLATION_TOL:
                record.notes.append(f"interpolation residual {record.interpolation_residual:.3e}")
        except ConditioningError as exc:
            logger.warning(f"R={R:.6g}: assembly skipped: {exc}")
            record.notes.append(f"assembly skipped: {exc}")

        if self.config.check_quadrature:
            record.quadrature_deviation = quadrature_check(gram)
            if record.quadrature_deviation > QUADRATURE_TOL:
                logger.warning(f"R={R:.6g}: closed-form entries off quadrature by {record.quadrature_deviation:.2e} V_R")
                record.notes.append("quadrature cross-check failed")

    # ---- campaigns ------------------------------------------------------

    async def _evaluate_all(self, command: str) -> Report:
        pf, window, geo = self._prepare()
        radii = self.radii(geo)
        report = Report(command, self._metadata(pf, geo))
        if not radii:
            logger.error("Critical radius is zero: every class is a singleton")
            report.records.append(RadiusRecord(R=0.0, error="HypothesisViolationError: critical radius is zero"))
            return report

        loop = asyncio.get_running_loop()
        tasks = [loop.run_in_executor(self._executor, self.evaluate_radius, pf, R, window) for R in radii]
        report.records.extend(await asyncio.gather(*tasks))
        report.sorted()

        failed = sum(1 for rec in report.records if not rec.passed)
        report.summary = {"radii": len(report.records), "failed": failed}
        logger.info(f"{command}: {len(report.records) - failed}/{len(report.records)} radii certified")
        logger.info(self.perf.generate_report())
        return report

    async def run_verify(self) -> Report:
        report = await self._evaluate_all("verify")
        self.writer.write_json(report.to_dict(), self.config.out)
        return report

    async def run_sweep(self) -> Report:
        if self.config.radius is not None:
            raise ConfigError("arguments", ["sweep needs --R-grid, not --R"])
        if self.config.grid_size < MIN_SWEEP_POINTS:
            raise ConfigError("arguments", [f"sweep needs at least {MIN_SWEEP_POINTS} radii, got {self.config.grid_size}"])
        report = await self._evaluate_all("sweep")
        report.summary.update(self.fit_slope(report))

        csv_path = self.config.csv or (self.config.out.with_suffix(".csv") if self.config.out else DEFAULT_SWEEP_CSV)
        self.writer.write_sweep_csv(report.records, csv_path)
        logger.info(f"Sweep table written to {csv_path}")
        self.writer.write_json(report.to_dict(), self.config.out)
        return report

    def fit_slope(self, report: Report) -> Dict[str, Any]:
        """Least-squares slope of log L against log r over the smallest r."""
        target = report.metadata["exponent"]
        points = sorted(
            (rec.r, rec.chain["L"]) for rec in report.records
            if rec.error is None and rec.chain is not None and rec.chain["L"] > 0
        )[: self.config.fit_points]
        if len(points) < 2:
            logger.warning("Too few radii for a slope fit")
            return {"fitted_slope": None, "target_exponent": target, "slope_ok": False}
        r, L = np.log(np.array(points)).T
        slope = float(np.polyfit(r, L, 1)[0])
        ok = slope >= target - SLOPE_SLACK
        logger.info(f"Fitted slope of log L vs log r: {slope:.4f} (target {target})")
        return {"fitted_slope": slope, "target_exponent": target, "slope_ok": ok, "fit_points": len(points)}

    # ---- single evaluations ---------------------------------------------

    def _single_radius(self, geo: GapGeometry) -> float:
        if self.config.radius is not None:
            return self.config.radius
        if not geo.critical_radius > 0:
            raise ConfigError("arguments", ["critical radius is zero: pass --R explicitly"])
        return 2.0 * geo.critical_radius

    def constants(self) -> Dict[str, Any]:
        pf, window, geo = self._prepare()
        radii = self.radii(geo) if self.config.grid_count is not None else [self._single_radius(geo)]
        chains, errors = [], []
        for R in radii:
            try:
                chain = theorem_constants(pf, R, self.mode, window)
                logger.info(chain.summary())
                chains.append(chain.to_dict())
            except InghamError as exc:
                logger.error(f"R={R:.6g}: {type(exc).__name__}: {exc}")
                errors.append({"R": R, "error": f"{type(exc).__name__}: {exc}"})
        payload = {"command": "constants", "metadata": self._metadata(pf, geo), "chains": chains, "errors": errors}
        self.writer.write_json(payload, self.config.out)
        return payload

    def gram(self) -> Dict[str, Any]:
        if self.config.grid_count is not None:
            raise ConfigError("arguments", ["gram evaluates one radius: use --R, not --R-grid"])
        pf, window, geo = self._prepare()
        R = self._single_radius(geo)
        gram = gram_matrix(pf.family, R)
        bounds = riesz_bounds(gram)
        payload: Dict[str, Any] = {
            "command": "gram",
            "metadata": self._metadata(pf, geo),
            "R": R,
            "entries": gram.entries,
            "lambda_min": bounds.lambda_min,
            "lambda_max": bounds.lambda_max,
            "eigen_residual": bounds.residual,
        }
        try:
            duals = dual_family(gram, bounds)
            payload["dual_norms"] = duals.dual_norms
            payload["biorthogonality_residual"] = duals.biorthogonality_residual
        except ConditioningError as exc:
            logger.warning(f"Duals skipped: {exc}")
            payload["dual_norms"] = None
            payload["error"] = str(exc)
        if self.config.check_quadrature:
            payload["quadrature_deviation"] = quadrature_check(gram)
        if self.config.dump_matrix is not None:
            self.writer.write_matrix_csv(gram.entries, pf.family.labels, self.config.dump_matrix)
        self.writer.write_json(payload, self.config.out)
        return payload

    def dump_profile(self, dimension: int) -> None:
        self.writer.write_profile_csv(profile_table(dimension), self.config.dump_profile)


def exit_status(report: Report) -> int:
    return 0 if report.passed else 1


