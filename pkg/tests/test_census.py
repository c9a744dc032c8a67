"""Tests for the pattern-set census."""

import json

import pyarrow.parquet as pq
import pytest

from src.combinatorics.perm import PermSet
from src.errors import BudgetExceededError, PreconditionError
from src.models.config_schema import RunConfig
from src.verification.census import CensusRunner


@pytest.fixture
def config(tmp_path):
    return RunConfig(threads=1, cache_path=tmp_path / "kostka.json")


class TestCensusRunner:
    """Test CensusRunner batches, metadata and resume."""

    def test_singletons_of_s3(self, tmp_path, config):
        """Test only the monotone singletons are symmetric on n = 1..5."""
        runner = CensusRunner(3, 1, (1, 5), tmp_path / "census", batch_size=4, config=config)
        metadata = runner.run()
        assert metadata["total_processed"] == 6
        assert metadata["total_symmetric"] == 2
        assert metadata["last_batch"] == 1
        assert runner.symmetric_sets() == ["[1,2,3]", "[3,2,1]"]
        assert (tmp_path / "census" / "batch_0000.parquet").exists()
        assert (tmp_path / "census" / "batch_0001.parquet").exists()

    def test_records(self, tmp_path, config):
        """Test per-n verdicts and the first failing n."""
        runner = CensusRunner(3, 1, (1, 5), tmp_path, config=config)
        record = runner.classify(PermSet(3, [[1, 3, 2]]))
        assert record["patterns"] == "[1,3,2]"
        assert record["verdicts"][:2] == [True, True]
        assert record["first_failing_n"] == 3
        assert record["avoider_counts"] == [1, 2, 5, 14, 42]
        assert not record["symmetric_on_window"]

    def test_parquet_contents(self, tmp_path, config):
        """Test batches hold one row per pattern set."""
        runner = CensusRunner(3, 2, (1, 4), tmp_path, batch_size=10, config=config)
        runner.run()
        table = pq.read_table(tmp_path / "batch_0000.parquet")
        assert table.num_rows == 10
        assert "first_failing_n" in table.column_names

    def test_resume(self, tmp_path, config):
        """Test a second run skips finished batches."""
        CensusRunner(3, 1, (1, 4), tmp_path, batch_size=4, config=config).run()
        again = CensusRunner(3, 1, (1, 4), tmp_path, batch_size=4, config=config)
        metadata = again.run()
        assert metadata["total_processed"] == 6
        fresh = again.run(resume=False)
        assert fresh["total_processed"] == 6

    def test_parameter_mismatch(self, tmp_path, config):
        """Test an output directory belongs to one census."""
        CensusRunner(3, 1, (1, 4), tmp_path, config=config).run()
        with pytest.raises(PreconditionError):
            CensusRunner(3, 1, (1, 5), tmp_path, config=config)
        metadata = json.loads((tmp_path / "metadata.json").read_text())
        assert metadata["parameters"] == {"k": 3, "size": 1, "window": [1, 4]}

    def test_limits(self, tmp_path, config):
        """Test window, cap and budget checks."""
        with pytest.raises(PreconditionError):
            CensusRunner(3, 1, (4, 2), tmp_path, config=config)
        with pytest.raises(BudgetExceededError):
            CensusRunner(3, 1, (1, 11), tmp_path, config=config)
        config.node_budget = 10
        with pytest.raises(BudgetExceededError):
            CensusRunner(3, 2, (1, 4), tmp_path, config=config)
