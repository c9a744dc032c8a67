"""
Census of pattern sets: classify every Π ⊆ S_k with |Π| = p by whether S_n(Π) is
symmetric over a window of n, writing results in Parquet batches with resume support.
"""

import json
import logging
from datetime import datetime
from itertools import combinations, islice
from math import comb
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

import pyarrow as pa
import pyarrow.parquet as pq

from src.combinatorics.perm import PermSet, avoiders, format_permutation, symmetric_group
from src.combinatorics.qsym import generating_function, is_symmetric
from src.errors import BudgetExceededError, PreconditionError
from src.models.config_schema import RunConfig

logger = logging.getLogger(__name__)


class CensusRunner:
    """Runs the census in batches, saving each batch as ``batch_XXXX.parquet``."""

    def __init__(
        self,
        k: int,
        size: int,
        window: Tuple[int, int],
        output_dir: Path,
        batch_size: int = 500,
        config: Optional[RunConfig] = None,
    ):
        """
        Initialize the census.

        Args:
            k: Degree of the patterns
            size: Number of patterns per set
            window: Inclusive range (a, b) of n to test
            output_dir: Directory for Parquet batches and metadata.json
            batch_size: Pattern sets per batch
            config: Run configuration (caps and budget)
        """
        self.config = config or RunConfig()
        a, b = window
        if not 1 <= a <= b:
            raise PreconditionError(f"window must satisfy 1 <= a <= b, got {a}:{b}")
        if b > self.config.enumeration_cap:
            raise BudgetExceededError(b, self.config.enumeration_cap, what="enumeration degree")
        if size < 1:
            raise PreconditionError(f"size must be positive, got {size}")
        self.k = k
        self.size = size
        self.window = (a, b)
        self.batch_size = batch_size
        self.patterns = symmetric_group(k, self.config.enumeration_cap)
        self.total = comb(len(self.patterns), size)
        if self.total > self.config.node_budget:
            raise BudgetExceededError(self.total, self.config.node_budget, what="pattern sets")

        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.metadata_file = self.output_dir / "metadata.json"
        self.metadata = self._load_metadata()

    def _parameters(self) -> Dict:
        return {"k": self.k, "size": self.size, "window": list(self.window)}

    def _load_metadata(self) -> Dict:
        if self.metadata_file.exists():
            with open(self.metadata_file) as f:
                metadata = json.load(f)
            if metadata.get("parameters") != self._parameters():
                raise PreconditionError(
                    f"{self.metadata_file} belongs to a census with {metadata.get('parameters')}"
                )
            return metadata
        return {
            "created_at": datetime.now().isoformat(),
            "parameters": self._parameters(),
            "batches": {},
            "total_processed": 0,
            "total_symmetric": 0,
            "last_batch": -1,
        }

    def _save_metadata(self) -> None:
        with open(self.metadata_file, "w") as f:
            json.dump(self.metadata, f, indent=2)

    def _pattern_sets(self) -> Iterator[PermSet]:
        for chosen in combinations(self.patterns, self.size):
            yield PermSet(self.k, chosen)

    def classify(self, patterns: PermSet) -> Dict:
        """One census record: per-n verdicts and the first failing n."""
        a, b = self.window
        verdicts: List[bool] = []
        sizes: List[int] = []
        for n in range(a, b + 1):
            avoiding = avoiders(n, patterns, self.config.enumeration_cap)
            sizes.append(len(avoiding))
            verdicts.append(is_symmetric(generating_function(avoiding)))
        first_failure = next((a + i for i, ok in enumerate(verdicts) if not ok), None)
        return {
            "patterns": ";".join(format_permutation(p) for p in patterns),
            "verdicts": verdicts,
            "avoider_counts": sizes,
            "first_failing_n": first_failure,
            "symmetric_on_window": first_failure is None,
        }

    def _save_batch(self, batch_num: int, records: List[Dict]) -> None:
        if not records:
            logger.warning(f"Batch {batch_num} has no records to save")
            return
        table = pa.Table.from_pylist(records)
        output_file = self.output_dir / f"batch_{batch_num:04d}.parquet"
        pq.write_table(table, output_file, compression="snappy", use_dictionary=True)
        file_size = output_file.stat().st_size / 1024
        symmetric = sum(r["symmetric_on_window"] for r in records)
        logger.info(f"✓ Saved batch {batch_num}: {len(records)} sets, {file_size:.1f}KB")

        self.metadata["batches"][str(batch_num)] = {
            "count": len(records),
            "symmetric": symmetric,
            "file_size_kb": round(file_size, 2),
            "timestamp": datetime.now().isoformat(),
            "file": output_file.name,
        }
        self.metadata["total_processed"] += len(records)
        self.metadata["total_symmetric"] += symmetric
        self.metadata["last_batch"] = batch_num
        self._save_metadata()

    def run(self, resume: bool = True) -> Dict:
        """
        Classify every pattern set, skipping batches already on disk when resuming.

        Returns:
            The metadata dict
        """
        total_batches = (self.total + self.batch_size - 1) // self.batch_size
        start = self.metadata["last_batch"] + 1 if resume else 0
        if not resume:
            self.metadata.update(batches={}, total_processed=0, total_symmetric=0, last_batch=-1)

        logger.info(f"{'=' * 60}")
        logger.info("CENSUS PLAN")
        logger.info(f"{'=' * 60}")
        logger.info(f"Pattern sets: {self.total:,} (k={self.k}, size={self.size})")
        logger.info(f"Window: n={self.window[0]}..{self.window[1]}")
        logger.info(f"Batches: {start} to {total_batches - 1} of {total_batches}")
        logger.info(f"{'=' * 60}")

        started = datetime.now()
        sets = islice(self._pattern_sets(), start * self.batch_size, None)
        for batch_num in range(start, total_batches):
            try:
                records = [self.classify(p) for p in islice(sets, self.batch_size)]
                self._save_batch(batch_num, records)
            except KeyboardInterrupt:
                logger.warning("⚠ Interrupted by user. Progress saved.")
                break

        elapsed = (datetime.now() - started).total_seconds()
        logger.info(f"{'=' * 60}")
        logger.info("CENSUS COMPLETE")
        logger.info(f"Processed: {self.metadata['total_processed']:,}")
        logger.info(f"Symmetric on window: {self.metadata['total_symmetric']:,}")
        logger.info(f"Time elapsed: {elapsed:.1f}s")
        logger.info(f"{'=' * 60}")
        return self.metadata

    def symmetric_sets(self) -> List[str]:
        """Pattern sets symmetric on the whole window, read back from the batches."""
        found = []
        for batch_file in sorted(self.output_dir.glob("batch_*.parquet")):
            for row in pq.read_table(batch_file).to_pylist():
                if row["symmetric_on_window"]:
                    found.append(row["patterns"])
        return found
