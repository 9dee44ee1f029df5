import os
import statistics
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import List

import psutil


@dataclass
class PerformanceMetrics:
    """Container for run metrics"""
    radius_latency_ms: float
    gram_latency_ms: float
    radii_per_second: float
    memory_usage_mb: float
    timestamp: datetime


class PerformanceMonitor:
    """Timing and memory figures for verify/sweep runs"""

    def __init__(self, window: int = 1000):
        self.radius_latencies: List[float] = []
        self.gram_latencies: List[float] = []
        self.radius_count = 0
        self.window = window
        self.start_time = time.time()

    def record_radius_latency(self, latency_ms: float):
        """Record the latency of one full radius evaluation"""
        self.radius_latencies.append(latency_ms)
        self.radius_count += 1
        if len(self.radius_latencies) > self.window:
            self.radius_latencies.pop(0)

    def record_gram_latency(self, latency_ms: float):
        self.gram_latencies.append(latency_ms)
        if len(self.gram_latencies) > self.window:
            self.gram_latencies.pop(0)

    def get_metrics(self) -> PerformanceMetrics:
        elapsed_time = time.time() - self.start_time
        return PerformanceMetrics(
            radius_latency_ms=statistics.mean(self.radius_latencies) if self.radius_latencies else 0.0,
            gram_latency_ms=statistics.mean(self.gram_latencies) if self.gram_latencies else 0.0,
            radii_per_second=self.radius_count / elapsed_time if elapsed_time > 0 else 0.0,
            memory_usage_mb=self._get_memory_usage(),
            timestamp=datetime.now(timezone.utc),
        )

    def _get_memory_usage(self) -> float:
        """Resident memory in MB"""
        try:
            return psutil.Process(os.getpid()).memory_info().rss / 1024 / 1024
        except psutil.Error:
            return 0.0

    def generate_report(self) -> str:
        metrics = self.get_metrics()

        if not self.radius_latencies:
            return f"""
# Run Performance
Generated: {metrics.timestamp.isoformat()}

No radii evaluated.

## Resource Usage
- Memory Usage: {metrics.memory_usage_mb:.2f} MB
"""

        return f"""
# Run Performance
Generated: {metrics.timestamp.isoformat()}

## Latency
- Radius evaluation: {metrics.radius_latency_ms:.2f}ms avg
- Gram + eigenvalues: {metrics.gram_latency_ms:.2f}ms avg
- P50: {self._percentile(self.radius_latencies, 50):.2f}ms
- P95: {self._percentile(self.radius_latencies, 95):.2f}ms
- Max: {max(self.radius_latencies):.2f}ms

## Throughput
- Radii per second: {metrics.radii_per_second:.2f}
- Total radii: {self.radius_count}

## Resource Usage
- Memory Usage: {metrics.memory_usage_mb:.2f} MB
"""

    def _percentile(self, data: List[float], percentile: int) -> float:
        if not data:
            return 0.0
        sorted_data = sorted(data)
        index = int(len(sorted_data) * percentile / 100)
        return sorted_data[min(index, len(sorted_data) - 1)]
