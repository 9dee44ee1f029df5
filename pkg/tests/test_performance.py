import os
import sys

import pytest

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from ingham.performance import PerformanceMonitor


def test_empty_report():
    """No radii yet"""
    report = PerformanceMonitor().generate_report()
    assert "No radii evaluated." in report
    assert "Memory Usage" in report


def test_latency_window():
    monitor = PerformanceMonitor(window=3)
    for latency in (5.0, 1.0, 2.0, 3.0):
        monitor.record_radius_latency(latency)
    assert monitor.radius_latencies == [1.0, 2.0, 3.0]
    assert monitor.radius_count == 4
    assert monitor.get_metrics().radius_latency_ms == pytest.approx(2.0)


def test_report_contents():
    monitor = PerformanceMonitor()
    monitor.record_radius_latency(10.0)
    monitor.record_radius_latency(30.0)
    monitor.record_gram_latency(4.0)
    report = monitor.generate_report()
    assert "Radius evaluation: 20.00ms avg" in report
    assert "Gram + eigenvalues: 4.00ms avg" in report
    assert "Max: 30.00ms" in report
    assert "Total radii: 2" in report
    assert monitor.get_metrics().memory_usage_mb > 0


def test_percentile():
    monitor = PerformanceMonitor()
    data = [float(i) for i in range(1, 101)]
    assert monitor._percentile(data, 50) == 51.0
    assert monitor._percentile(data, 100) == 100.0
    assert monitor._percentile([], 95) == 0.0
