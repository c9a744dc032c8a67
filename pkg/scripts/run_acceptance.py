"""
Acceptance run for the verification harness.

Runs every acceptance check at desk scale, prints a summary and saves the reports
to a timestamped JSON file under data/test_results/.
"""

import argparse
import json
import logging
import sys
import time
from datetime import datetime
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.combinatorics.perm import inverse_descent_class
from src.models.report_schema import CheckReport
from src.settings import load_config
from src.verification.checks import run_check

logger = logging.getLogger(__name__)

ACCEPTANCE_RUNS = [
    ("main-theorem", {"k": 5, "p": 3}),
    ("min-symmetric-size", {"n": 5, "max_size": 4}),
    ("knuth-exception", {}),
    ("bose-generalized", {"n_max": 6}),
    ("case2-lemma", {"k_max": 4, "n_max": 10}),
    ("symmetrically-avoided", {"patterns": "D4", "n_from": 1, "n_to": 8}),
    ("symmetrically-avoided", {"patterns": "D5", "n_from": 1, "n_to": 8}),
    ("non-positive-set", {"n": 4}),
    ("non-positive-set", {"n": 5}),
    ("non-positive-set", {"n": 6}),
    ("classical-sanity", {"n_max": 10}),
    ("complement-reduction", {"n": 5, "samples": 1000}),
    ("extraction-lemma", {"n": 4, "max_size": 3}),
]


def _resolve(params: dict) -> dict:
    patterns = params.get("patterns")
    if patterns == "D4":
        return {**params, "patterns": inverse_descent_class(4, {3})}
    if patterns == "D5":
        return {**params, "patterns": inverse_descent_class(5, {4})}
    return params


def print_results(reports: list[CheckReport]) -> None:
    print('\n' + '=' * 80)
    print('ACCEPTANCE RESULTS')
    print('=' * 80)
    for report in reports:
        marker = {'holds': '✅', 'fails': '❌', 'out_of_budget': '⚠️'}[report.verdict]
        params = {k: v for k, v in report.parameters.items() if k != 'patterns'}
        print(
            f'{marker} {report.check_name:<24} {json.dumps(params):<40} '
            f'{report.verdict:<14} {report.stats.wall_time_s:>8.1f}s'
        )


def save_results(reports: list[CheckReport], output_dir: Path) -> Path:
    output_dir.mkdir(parents=True, exist_ok=True)
    timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
    results_file = output_dir / f'acceptance_{timestamp}.json'
    with open(results_file, 'w', encoding='utf-8') as f:
        json.dump([r.model_dump(mode='json') for r in reports], f, indent=2, ensure_ascii=False)
    return results_file


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Run the acceptance checks")
    parser.add_argument("--config", type=Path, help="YAML config file")
    parser.add_argument("--output-dir", type=Path, default=Path("data/test_results"))
    parser.add_argument("--only", nargs="*", help="Run only these check names")
    args = parser.parse_args(argv)

    config = load_config(args.config)
    logging.basicConfig(
        level=getattr(logging, config.log_level, logging.INFO),
        format='%(asctime)s - %(levelname)s - %(message)s',
    )

    started = time.perf_counter()
    reports = []
    for name, params in ACCEPTANCE_RUNS:
        if args.only and name not in args.only:
            continue
        reports.append(run_check(name, _resolve(params), config))

    print_results(reports)
    results_file = save_results(reports, args.output_dir)
    print(f'\nSaved {len(reports)} reports to {results_file}')
    print(f'Total time: {time.perf_counter() - started:.1f}s')

    failed = [r for r in reports if r.verdict != 'holds']
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
