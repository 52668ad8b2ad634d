"""
Metrics Collection Module for paracert

Tracks what a verification run did using the Prometheus client library:
how many certificates of each kind were issued, which reduction cases
were reached, how long length searches ran and how reconstruction
attempts ended. Metrics live in a private registry and are exported to
a Prometheus text file at the end of a run.

Key Features:
- Per-run CollectorRegistry, so repeated runs in one process never clash
- Labelled counters for certificates, reductions and reconstructions
- Histograms for sweep durations and exact length values
- File-based export via `write_to_textfile`
"""

from datetime import datetime
from pathlib import Path
from typing import Optional

from loguru import logger
from prometheus_client import Counter, Histogram, write_to_textfile
from prometheus_client.core import CollectorRegistry


class MetricsCollector:
    """
    Prometheus metrics for certification sweeps.

    Attributes:
        registry (CollectorRegistry): Prometheus metrics registry
        metrics_dir (Path): Directory for storing metrics files
        certificates (Counter): Certificates by type, level, t and tag
        reductions (Counter): Reduction results by type and case
        length_queries (Counter): Exact length searches by type
        length_cap_hits (Counter): Length searches that ran past their cap
        reconstructions (Counter): Reconstruction outcomes by type, level and stage
        sweep_seconds (Histogram): Wall time of whole commands
        length_values (Histogram): Distribution of exact lengths
    """

    def __init__(self, metrics_dir: Optional[str] = None):
        """
        Initialize the metrics registry and collectors.

        Args:
            metrics_dir (Optional[str], optional):
                Directory path to store metrics files.
                Defaults to 'metrics' in the current directory.
        """
        self.registry = CollectorRegistry()
        self.metrics_dir = Path(metrics_dir) if metrics_dir else Path("metrics")
        self.metrics_dir.mkdir(parents=True, exist_ok=True)

        self.certificates = Counter(
            'paracert_certificates_total',
            'Weight certificates issued',
            ['type', 'k', 't', 'tag'],
            registry=self.registry
        )

        self.reductions = Counter(
            'paracert_reductions_total',
            'Coset reductions by reduction case',
            ['type', 'case'],
            registry=self.registry
        )

        self.length_queries = Counter(
            'paracert_length_queries_total',
            'Exact length searches',
            ['type'],
            registry=self.registry
        )

        self.length_cap_hits = Counter(
            'paracert_length_cap_hits_total',
            'Length searches that exceeded their cap',
            ['type'],
            registry=self.registry
        )

        self.reconstructions = Counter(
            'paracert_reconstructions_total',
            'Reconstruction pipeline outcomes',
            ['type', 'k', 'outcome'],
            registry=self.registry
        )

        self.sweep_seconds = Histogram(
            'paracert_sweep_seconds',
            'Time spent in a command',
            ['command'],
            buckets=(0.1, 0.5, 1, 5, 10, 30, 60, 300),
            registry=self.registry
        )

        self.length_values = Histogram(
            'paracert_length_values',
            'Exact lengths returned by the search',
            ['type'],
            buckets=(0, 1, 2, 3, 4, 6, 8, 12, 16, 24),
            registry=self.registry
        )

    def save_metrics(self) -> None:
        """
        Save metrics to a timestamped Prometheus text file.

        Failures are logged and swallowed; metrics never abort a run.
        """
        try:
            prom_file = self.metrics_dir / f"metrics_{datetime.now().strftime('%Y%m%d_%H%M%S')}.prom"
            write_to_textfile(str(prom_file), self.registry)
            logger.info(f"Metrics saved to {prom_file}")
        except Exception as e:
            logger.error(f"Failed to save metrics: {str(e)}")

    def record_certificate(self, type_name: str, k: int, t: int, tag: str) -> None:
        self.certificates.labels(type=type_name, k=str(k), t=str(t), tag=tag).inc()

    def record_reduction(self, type_name: str, case: str) -> None:
        self.reductions.labels(type=type_name, case=case).inc()

    def record_length(self, type_name: str, value: Optional[int]) -> None:
        """
        Record one exact length search.

        Args:
            type_name (str): Root system type
            value (Optional[int]): The length found, or None when the cap was hit
        """
        self.length_queries.labels(type=type_name).inc()
        if value is None:
            self.length_cap_hits.labels(type=type_name).inc()
        else:
            self.length_values.labels(type=type_name).observe(value)

    def record_reconstruction(self, type_name: str, k: int, outcome: str) -> None:
        """
        Record how a reconstruction attempt ended.

        Args:
            outcome (str): 'accepted' or the name of the failing stage
        """
        self.reconstructions.labels(type=type_name, k=str(k), outcome=outcome).inc()

    def time_sweep(self, command: str = ''):
        """Context manager timing one command."""
        return self.sweep_seconds.labels(command=command).time()
