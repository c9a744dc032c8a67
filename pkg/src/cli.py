"""Command-line interface for pattern avoidance, quasisymmetric generating functions,
set-family tools and the verification harness.

Exit codes: 0 success or verdict holds, 1 verdict fails, 2 usage / precondition / file
error, 3 budget exceeded without ``--partial``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from src.combinatorics.family import (
    SetFamily,
    classify,
    extract_family,
    run_search,
    scaled_tridiagonal,
    tridiag_det,
)
from src.combinatorics.formats import format_family, read_family, read_perm_set
from src.combinatorics.kostka_cache import KostkaCache
from src.combinatorics.perm import (
    PermSet,
    avoiders,
    format_permutation,
    inverse_descent_class,
    parse_permutation,
    respects,
)
from src.combinatorics.qsym import (
    generating_function,
    is_schur_positive,
    is_symmetric,
    kostka,
    set_kostka_cache,
)
from src.combinatorics.shape import Partition, parse_composition
from src.errors import BudgetExceededError, DegreeMismatchError, SymAvoidError
from src.models.config_schema import RunConfig
from src.models.report_schema import CheckReport, CheckStats, SubVerdict
from src.settings import load_config, read_section
from src.verification.census import CensusRunner
from src.verification.checks import CHECKS, run_check
from src.verification.report_writer import write_reports

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILS, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
VERDICT_EXIT = {"holds": EXIT_OK, "fails": EXIT_FAILS, "out_of_budget": EXIT_OK}

# CLI option -> check parameter
CHECK_OPTIONS = {
    "k": "k",
    "p": "p",
    "n": "n",
    "max_size": "max_size",
    "n_max": "n_max",
    "k_max": "k_max",
    "n_from": "n_from",
    "n_to": "n_to",
}


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s - %(levelname)s - %(message)s",
    )


def _common_options() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the subcommand from being reset by the subparser.
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", type=Path, help="YAML config file")
    common.add_argument("--log-level", help="Logging level (DEBUG, INFO, WARNING, ERROR)")
    common.add_argument("--format", choices=["text", "csv", "machine"], help="Output format")
    common.add_argument("--output", type=Path, help="Write the report to this file")
    common.add_argument("--cache-path", type=Path, help="Kostka cache file")
    common.add_argument("--partial", action="store_true", help="Allow partial coverage")
    common.add_argument(
        "--sample",
        "--samples",
        dest="samples",
        type=int,
        nargs="?",
        const=-1,
        help="Sampling mode; without a count, sample_count from the config",
    )
    common.add_argument("--enumeration-cap", type=int, help="Largest enumerated degree")
    common.add_argument("--seed", type=int, help="Random seed for sampling")
    common.add_argument("--threads", type=int, help="Worker processes")
    common.add_argument("--budget", type=int, help="Node / candidate budget")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="symavoid",
        description="Symmetric pattern avoidance and intersecting-family verification",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    avoid = sub.add_parser("avoid", parents=[common], help="List S_n(Π)")
    avoid.add_argument("n", type=int)
    avoid.add_argument("--patterns", type=Path, required=True, help="Pattern file")

    for name, text in (
        ("qsym", "Print Q_n(S) in the monomial basis"),
        ("check-sym", "Is Q_n(S) symmetric?"),
        ("check-schur", "Is S Schur-positive?"),
    ):
        command = sub.add_parser(name, parents=[common], help=text)
        command.add_argument("n", type=int)
        command.add_argument("--set", type=Path, required=True, help="Permutation-set file")

    family = sub.add_parser("family", help="Set-family tools")
    family_sub = family.add_subparsers(dest="family_command", required=True)
    extract = family_sub.add_parser("extract", parents=[common], help="Family of a set")
    extract.add_argument("--set", type=Path, required=True, help="Permutation-set file")
    classify_cmd = family_sub.add_parser("classify", parents=[common], help="Profile")
    classify_cmd.add_argument("file", type=Path, help="Family file")
    search = family_sub.add_parser("search", parents=[common], help="Extremal search")
    for flag in ("--n", "--k", "--l1", "--l2", "--m"):
        search.add_argument(flag, type=int, required=True)
    search.add_argument("--prune", action="store_true", help="Prune isomorphic branches")

    tridiag = sub.add_parser("tridiag", parents=[common], help="d_m(α) of the tridiagonal")
    tridiag.add_argument("m", type=int)
    tridiag.add_argument("alpha", type=Fraction, help="Exact ratio such as 1/3 or -1")
    tridiag.add_argument("--matrix", action="store_true", help="Also print the matrix")

    kostka_cmd = sub.add_parser("kostka", parents=[common], help="Kostka number K_λμ")
    kostka_cmd.add_argument("shape", help="λ, e.g. 3,1")
    kostka_cmd.add_argument("content", help="μ, e.g. 2,1,1")

    inverse = sub.add_parser("inverse-descent", parents=[common], help="List D⁻¹ of a subset")
    inverse.add_argument("k", type=int)
    inverse.add_argument("subset", help="Subset of [k-1], e.g. 2,3 or - for the empty set")

    respects_cmd = sub.add_parser("respects", parents=[common], help="Does σ respect α?")
    respects_cmd.add_argument("perm", help="Permutation, e.g. 4,2,5,6,1,3")
    respects_cmd.add_argument("composition", help="Composition, e.g. 1,3,2")

    verify = sub.add_parser("verify", parents=[common], help="Run a named check")
    verify.add_argument("check", help="Check name, or 'list'")
    for option in CHECK_OPTIONS:
        verify.add_argument(f"--{option.replace('_', '-')}", dest=option, type=int)
    verify.add_argument("--patterns", type=Path, help="Pattern file (symmetrically-avoided)")

    census = sub.add_parser("census", parents=[common], help="Classify all Π of one size")
    census.add_argument("k", type=int)
    census.add_argument("--size", type=int, required=True)
    census.add_argument("--window", required=True, help="a:b")
    census.add_argument("--output-dir", type=Path, help="Parquet output directory")
    census.add_argument("--batch-size", type=int, help="Pattern sets per batch")
    census.add_argument("--no-resume", action="store_true", help="Start from batch 0")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    overrides = {
        "log_level": getattr(args, "log_level", None),
        "output_format": getattr(args, "format", None),
        "cache_path": getattr(args, "cache_path", None),
        "partial_allowed": True if getattr(args, "partial", False) else None,
        "enumeration_cap": getattr(args, "enumeration_cap", None),
        "seed": getattr(args, "seed", None),
        "threads": getattr(args, "threads", None),
        "node_budget": getattr(args, "budget", None),
    }
    return load_config(getattr(args, "config", None), overrides)


def _emit(text: str, args: argparse.Namespace) -> None:
    output = getattr(args, "output", None)
    if output is not None:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _read_set(path: Path, n: int) -> PermSet:
    perms = read_perm_set(path)
    if perms.degree != n:
        raise DegreeMismatchError(n, perms.degree)
    return perms


def _cmd_avoid(args: argparse.Namespace, cfg: RunConfig) -> int:
    result = avoiders(args.n, read_perm_set(args.patterns), cfg.enumeration_cap)
    if cfg.output_format == "machine":
        _emit(json.dumps([list(p) for p in result]) + "\n", args)
    else:
        _emit("".join(format_permutation(p) + "\n" for p in result), args)
    logger.info("|S_%s(Π)| = %s", args.n, len(result))
    return EXIT_OK


def _cmd_qsym(args: argparse.Namespace, cfg: RunConfig) -> int:
    f = generating_function(_read_set(args.set, args.n), cfg.composition_cap)
    triples = f.to_triples()
    if cfg.output_format == "machine":
        _emit(json.dumps(triples) + "\n", args)
    elif cfg.output_format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["basis", "composition", "coefficient"])
        writer.writerows(triples)
        _emit(buffer.getvalue(), args)
    else:
        _emit("".join(f"{basis}{key} {value}\n" for basis, key, value in triples), args)
    return EXIT_OK


def _emit_report(report: CheckReport, args: argparse.Namespace, cfg: RunConfig, text: str) -> None:
    # Text keeps the short answer; csv and machine go through the report writer.
    if cfg.output_format == "text":
        _emit(text, args)
        return
    output = getattr(args, "output", None)
    rendered = write_reports([report], cfg.output_format, output)
    if output is None:
        sys.stdout.write(rendered)


def _verdict(ok: bool) -> str:
    return "holds" if ok else "fails"


def _cmd_check_sym(args: argparse.Namespace, cfg: RunConfig) -> int:
    perms = _read_set(args.set, args.n)
    symmetric = is_symmetric(generating_function(perms, cfg.composition_cap))
    report = CheckReport(
        check_name="check-sym",
        parameters={"n": args.n, "set": str(args.set)},
        verdict=_verdict(symmetric),
        witnesses=[[format_permutation(p) for p in perms]],
        sub_verdicts=[
            SubVerdict(label="symmetric", verdict=_verdict(symmetric), detail=f"|S|={len(perms)}")
        ],
        stats=CheckStats(candidates_tested=1),
    )
    _emit_report(report, args, cfg, f"symmetric: {str(symmetric).lower()}\n")
    return EXIT_OK if symmetric else EXIT_FAILS


def _cmd_check_schur(args: argparse.Namespace, cfg: RunConfig) -> int:
    perms = _read_set(args.set, args.n)
    positive, expansion = is_schur_positive(perms)
    lines = [f"schur-positive: {str(positive).lower()}"]
    lines.append(f"expansion: {expansion!r}" if expansion is not None else "symmetric: false")
    report = CheckReport(
        check_name="check-schur",
        parameters={"n": args.n, "set": str(args.set)},
        verdict=_verdict(positive),
        witnesses=[
            {
                "set": [format_permutation(p) for p in perms],
                "expansion": expansion.to_triples() if expansion is not None else None,
            }
        ],
        sub_verdicts=[
            SubVerdict(label="symmetric", verdict=_verdict(expansion is not None)),
            SubVerdict(label="Schur-positive", verdict=_verdict(positive), detail=repr(expansion)),
        ],
        stats=CheckStats(candidates_tested=1),
    )
    _emit_report(report, args, cfg, "\n".join(lines) + "\n")
    return EXIT_OK if positive else EXIT_FAILS


def _extract_report(args: argparse.Namespace, family: SetFamily) -> CheckReport:
    return CheckReport(
        check_name="family-extract",
        parameters={"set": str(args.set)},
        verdict="holds",
        witnesses=[{"n": family.ground_n, "family": family.as_lists()}],
        sub_verdicts=[
            SubVerdict(label=f"A_{i}", verdict="holds", detail=",".join(map(str, members)))
            for i, members in enumerate(family.as_lists(), start=1)
        ],
    )


def _cmd_family(args: argparse.Namespace, cfg: RunConfig) -> int:
    if args.family_command == "extract":
        family = extract_family(read_perm_set(args.set))
        _emit_report(_extract_report(args, family), args, cfg, format_family(family))
        return EXIT_OK
    if args.family_command == "classify":
        profile = classify(read_family(args.file))
        if cfg.output_format == "machine":
            _emit(profile.model_dump_json(indent=2) + "\n", args)
        else:
            _emit("".join(f"{k}: {v}\n" for k, v in profile.model_dump().items()), args)
        return EXIT_OK

    result = run_search(
        args.n,
        args.k,
        args.l1,
        args.l2,
        args.m,
        node_budget=cfg.node_budget,
        prune_isomorphs=args.prune or cfg.isomorph_pruning,
        allow_partial=cfg.partial_allowed,
        workers=getattr(args, "threads", 1),
    )
    if result.family is None:
        _emit("out of budget\n" if result.budget_hit else "no family\n", args)
        return EXIT_OK if result.budget_hit else EXIT_FAILS
    _emit(format_family(result.family), args)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, cfg: RunConfig) -> int:
    if args.check == "list":
        _emit("".join(f"{name}: {entry.summary}\n" for name, entry in CHECKS.items()), args)
        return EXIT_OK
    params: Dict[str, Any] = {
        param: getattr(args, option, None) for option, param in CHECK_OPTIONS.items()
    }
    params["samples"] = getattr(args, "samples", None)
    if args.patterns is not None:
        params["patterns"] = read_perm_set(args.patterns)
    report = run_check(args.check, params, cfg)
    text = write_reports([report], cfg.output_format, getattr(args, "output", None))
    if getattr(args, "output", None) is None:
        sys.stdout.write(text)
    return VERDICT_EXIT[report.verdict]


def _cmd_tridiag(args: argparse.Namespace, cfg: RunConfig) -> int:
    det = tridiag_det(args.m, args.alpha)
    matrix = scaled_tridiagonal(args.m, args.alpha) if args.matrix else None
    if cfg.output_format == "machine":
        payload: Dict[str, Any] = {"m": args.m, "alpha": str(args.alpha), "det": str(det)}
        if matrix is not None:
            payload["matrix"] = [[str(x) for x in row] for row in matrix]
        _emit(json.dumps(payload) + "\n", args)
        return EXIT_OK
    lines = [f"d_{args.m}({args.alpha}) = {det}"]
    if matrix is not None:
        lines.extend(" ".join(str(x) for x in row) for row in matrix)
    _emit("\n".join(lines) + "\n", args)
    return EXIT_OK


def _cmd_kostka(args: argparse.Namespace, cfg: RunConfig) -> int:
    lam, mu = Partition(parse_composition(args.shape)), Partition(parse_composition(args.content))
    value = kostka(lam, mu)
    if cfg.output_format == "machine":
        _emit(json.dumps({"lambda": list(lam), "mu": list(mu), "kostka": value}) + "\n", args)
    else:
        _emit(f"K_{lam!r},{mu!r} = {value}\n", args)
    return EXIT_OK


def _parse_subset(text: str) -> frozenset[int]:
    stripped = text.strip().strip("{}")
    if stripped in ("", "-"):
        return frozenset()
    try:
        return frozenset(int(t) for t in stripped.replace(" ", "").split(",") if t)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse subset {text!r}") from exc


def _cmd_inverse_descent(args: argparse.Namespace, cfg: RunConfig) -> int:
    result = inverse_descent_class(args.k, _parse_subset(args.subset))
    if cfg.output_format == "machine":
        _emit(json.dumps([list(p) for p in result]) + "\n", args)
    else:
        _emit("".join(format_permutation(p) + "\n" for p in result), args)
    logger.info("|D^-1| = %s", len(result))
    return EXIT_OK


def _cmd_respects(args: argparse.Namespace, cfg: RunConfig) -> int:
    ok = respects(parse_permutation(args.perm), parse_composition(args.composition))
    _emit(f"respects: {str(ok).lower()}\n", args)
    return EXIT_OK if ok else EXIT_FAILS


def _parse_window(text: str) -> tuple[int, int]:
    try:
        a, b = (int(part) for part in text.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"window must look like a:b, got {text!r}") from exc
    return a, b


def _cmd_census(args: argparse.Namespace, cfg: RunConfig) -> int:
    defaults = read_section(getattr(args, "config", None), "census")
    runner = CensusRunner(
        k=args.k,
        size=args.size,
        window=_parse_window(args.window),
        output_dir=args.output_dir or Path(defaults.get("output_dir", "data/census")),
        batch_size=args.batch_size or int(defaults.get("batch_size", 500)),
        config=cfg,
    )
    metadata = runner.run(resume=not args.no_resume)
    symmetric = runner.symmetric_sets()
    summary = {
        "total_processed": metadata["total_processed"],
        "total_symmetric": metadata["total_symmetric"],
        "symmetric_on_window": symmetric,
    }
    _emit(json.dumps(summary, indent=2, ensure_ascii=False) + "\n", args)
    return EXIT_OK


COMMANDS = {
    "avoid": _cmd_avoid,
    "qsym": _cmd_qsym,
    "check-sym": _cmd_check_sym,
    "check-schur": _cmd_check_schur,
    "family": _cmd_family,
    "tridiag": _cmd_tridiag,
    "kostka": _cmd_kostka,
    "inverse-descent": _cmd_inverse_descent,
    "respects": _cmd_respects,
    "verify": _cmd_verify,
    "census": _cmd_census,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        cfg = _config_from_args(args)
    except (ValueError, FileNotFoundError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    _configure_logging(cfg.log_level)

    cache: Optional[KostkaCache] = None
    try:
        cache = KostkaCache(cfg.cache_path)
        set_kostka_cache(cache)
        return COMMANDS[args.command](args, cfg)
    except BudgetExceededError as exc:
        logger.error(f"✗ {exc}")
        sys.stderr.write(f"budget exceeded: {exc} (use --partial or raise --budget)\n")
        return EXIT_BUDGET
    except (SymAvoidError, ValueError, OSError, argparse.ArgumentTypeError) as exc:
        logger.error(f"✗ {exc}")
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    finally:
        if cache is not None:
            try:
                cache.save()
            except OSError as exc:
                logger.warning(f"⚠ Could not save Kostka cache: {exc}")


def run(argv: Optional[List[str]] = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
