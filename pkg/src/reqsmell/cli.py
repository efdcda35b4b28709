"""Command-line interface: analyze, eval and serve.

Exit codes: 0 success, 1 file-level error, 2 usage error, 3 density gate
exceeded (``--fail-on-density``). Defaults can come from an INI config file
(section ``[reqsmell]``, keys named exactly like the long flags) at
``./reqsmell.ini`` or the path given with ``--config``; explicit flags win.
Environment variables ``REQSMELL_LEXICON_DIR``, ``REQSMELL_DICTIONARY_DIR``
and ``REQSMELL_PORT`` override the built-in defaults.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import socket
import sys
from pathlib import Path

from .evalkit import (
    EvalReport,
    MatchPolicy,
    ambiguity_group_map,
    cohen_kappa,
    load_gold_file,
    percent_fp_agreement,
    render_eval_table,
    report_from_matches,
)
from .ingest import CsvConfig, DocumentFormat
from .metrics import metrics_report_csv, metrics_report_json, round_half_up
from .pipeline import AnalysisConfig, analyze_paths, findings_to_json
from .smells import Finding, SmellKind, DetectorConfig

EXIT_OK = 0
EXIT_FILE_ERROR = 1
EXIT_USAGE = 2
EXIT_DENSITY_GATE = 3

DEFAULT_CONFIG_PATH = "reqsmell.ini"
_FORMATS = {
    "text": DocumentFormat.PLAIN_TEXT,
    "markdown": DocumentFormat.MARKDOWN,
    "csv": DocumentFormat.CSV,
    "jsonl": DocumentFormat.JSON_LINES,
}


class _UsageError(Exception):
    pass


def _port(value: str) -> int:
    try:
        port = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a port number: {value!r}")
    if not (1 <= port <= 65535):
        raise argparse.ArgumentTypeError(f"port out of range 1-65535: {port}")
    return port


def _smell_set(value: str) -> frozenset[SmellKind]:
    kinds = set()
    for name in value.split(","):
        name = name.strip()
        if not name:
            continue
        try:
            kinds.add(SmellKind(name))
        except ValueError:
            raise argparse.ArgumentTypeError(f"unknown smell kind: {name}")
    if not kinds:
        raise argparse.ArgumentTypeError("smell list is empty")
    return frozenset(kinds)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reqsmell",
        description="Requirements-smell linter: analyze artifacts, evaluate "
        "against gold annotations, or serve the review UI.",
    )
    parser.add_argument("--config", help="config file path (INI, section [reqsmell])")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="detect smells and write reports")
    analyze.add_argument("inputs", nargs="+", help="files or directories")
    analyze.add_argument("--format", choices=sorted(_FORMATS), help="override format detection")
    analyze.add_argument("--csv-id", help="CSV column holding item ids")
    analyze.add_argument("--csv-text", help="CSV column holding requirement text")
    analyze.add_argument("--lexicon-dir", help="lexicon directory (default: bundled English)")
    analyze.add_argument("--dictionary-dir", help="dictionary directory (default: bundled)")
    analyze.add_argument(
        "--smells", type=_smell_set, help="comma-separated smell kinds to enable"
    )
    analyze.add_argument(
        "--condition-suppression",
        action="store_true",
        help="flag negations inside if/unless/when clauses as suppressed",
    )
    analyze.add_argument(
        "--numeric-suppression",
        action="store_true",
        help="flag comparatives against numbers ('more than 1 second') as suppressed",
    )
    analyze.add_argument(
        "--include-suppressed",
        action="store_true",
        help="count suppressed findings in metrics",
    )
    analyze.add_argument("--report", choices=["csv", "json"], default="csv")
    analyze.add_argument("--out", default="-", help="report destination ('-' for stdout)")
    analyze.add_argument("--findings-out", help="write raw findings JSON to this path")
    analyze.add_argument(
        "--fail-on-density",
        type=float,
        help="exit 3 when overall findings per 1000 words exceed this value",
    )
    analyze.add_argument("--jobs", type=int, default=os.cpu_count() or 1)

    evaluate = sub.add_parser("eval", help="precision/recall against gold annotations")
    evaluate.add_argument("predictions", help="findings JSON produced by analyze")
    evaluate.add_argument("gold", help="gold JSON (findings plus verdict/rater_id)")
    evaluate.add_argument(
        "--policy", choices=["exact", "overlap"], default="overlap",
        help="span matching policy for recall",
    )
    evaluate.add_argument(
        "--group-ambiguity",
        action="store_true",
        help="merge the four dictionary smells into one recall row",
    )
    evaluate.add_argument(
        "--agreement",
        action="store_true",
        help="also report rater agreement (kappa over shared verdicts, "
        "Jaccard over false-positive sets) when gold has two raters",
    )
    evaluate.add_argument("--json-out", help="write the report as JSON to this path")
    evaluate.add_argument(
        "--sample", type=int, help="evaluate a deterministic sample of N findings per smell"
    )

    serve = sub.add_parser("serve", help="run the review HTTP service")
    serve.add_argument("runs_dir", nargs="?", default="runs", help="run store directory")
    serve.add_argument("--analyze", action="append", default=[], metavar="PATH",
                       help="analyze this path into the store before serving")
    serve.add_argument("--port", type=_port, default=None)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--ui-dir", help="built web UI directory to serve at /")
    serve.add_argument("--dev", action="store_true", help="enable permissive CORS")
    return parser


def _apply_config_file(argv: list[str], parser: argparse.ArgumentParser) -> list[str]:
    """Prepend config-file values as defaults; explicit flags keep priority."""
    path = None
    for i, arg in enumerate(argv):
        if arg == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif arg.startswith("--config="):
            path = arg.split("=", 1)[1]
    config_path = Path(path) if path else Path(DEFAULT_CONFIG_PATH)
    if not config_path.is_file():
        if path:
            raise _UsageError(f"config file not found: {config_path}")
        return argv
    ini = configparser.ConfigParser()
    ini.read(config_path, encoding="utf-8")
    if not ini.has_section("reqsmell"):
        return argv
    injected: list[str] = []
    flag_args = {arg for arg in argv if arg.startswith("--")}
    for key, value in ini.items("reqsmell"):
        flag = f"--{key}"
        if flag in flag_args or any(a.startswith(flag + "=") for a in argv):
            continue
        if value.strip().lower() in ("true", "yes", "on"):
            injected.append(flag)
        elif value.strip().lower() in ("false", "no", "off"):
            continue
        else:
            injected.extend([flag, value])
    if not injected:
        return argv
    # Insert after the subcommand so subparser options resolve.
    for i, arg in enumerate(argv):
        if arg in ("analyze", "eval", "serve"):
            return argv[: i + 1] + injected + argv[i + 1 :]
    return argv + injected


def _analysis_config(args: argparse.Namespace) -> AnalysisConfig:
    csv_config = None
    if args.csv_id or args.csv_text:
        if not (args.csv_id and args.csv_text):
            raise _UsageError("--csv-id and --csv-text must be given together")
        csv_config = CsvConfig(id_col=args.csv_id, text_col=args.csv_text)
    lexicon_dir = args.lexicon_dir or os.environ.get("REQSMELL_LEXICON_DIR")
    dictionary_dir = args.dictionary_dir or os.environ.get("REQSMELL_DICTIONARY_DIR")
    detector = DetectorConfig(
        enabled_smells=args.smells or frozenset(SmellKind),
        enable_condition_suppression=args.condition_suppression,
        enable_numeric_comparison_suppression=args.numeric_suppression,
        dictionary_dir=Path(dictionary_dir) if dictionary_dir else None,
    )
    return AnalysisConfig(
        format_hint=_FORMATS[args.format] if args.format else None,
        csv_config=csv_config,
        lexicon_dir=Path(lexicon_dir) if lexicon_dir else None,
        dictionary_dir=Path(dictionary_dir) if dictionary_dir else None,
        detector=detector,
        jobs=args.jobs,
    )


def _write_out(destination: str, text: str) -> None:
    if destination == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(destination).write_text(text, encoding="utf-8")


def cmd_analyze(args: argparse.Namespace) -> int:
    config = _analysis_config(args)
    missing = [p for p in args.inputs if not Path(p).exists()]
    if missing:
        for path in missing:
            print(f"reqsmell: input not found: {path}", file=sys.stderr)
        return EXIT_FILE_ERROR
    result = analyze_paths(args.inputs, config)
    for diagnostic in result.diagnostics:
        print(f"reqsmell: warning: {diagnostic}", file=sys.stderr)

    findings = result.findings()
    if args.findings_out:
        _write_out(args.findings_out, findings_to_json(findings))
    metrics = result.metrics(include_suppressed=args.include_suppressed)
    report = (
        metrics_report_csv(metrics) if args.report == "csv" else metrics_report_json(metrics)
    )
    _write_out(args.out, report)

    if args.fail_on_density is not None:
        words = sum(m.word_count for m in metrics)
        total = sum(m.findings_total for m in metrics)
        density = total / words * 1000 if words else 0.0
        if density > args.fail_on_density:
            print(
                f"reqsmell: density gate failed: {round_half_up(density)} findings per "
                f"1000 words exceeds {args.fail_on_density}",
                file=sys.stderr,
            )
            return EXIT_DENSITY_GATE
    return EXIT_FILE_ERROR if result.diagnostics else EXIT_OK


def _load_predictions(path: str) -> list[Finding]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(data, dict):
        data = data.get("findings", [])
    return [Finding.from_dict(d) for d in data]


def cmd_eval(args: argparse.Namespace) -> int:
    for path in (args.predictions, args.gold):
        if not Path(path).is_file():
            print(f"reqsmell: file not found: {path}", file=sys.stderr)
            return EXIT_FILE_ERROR
    try:
        findings = _load_predictions(args.predictions)
        gold = load_gold_file(args.gold)
    except (ValueError, KeyError) as exc:
        print(f"reqsmell: cannot parse input: {exc}", file=sys.stderr)
        return EXIT_FILE_ERROR
    if args.sample:
        findings = _sample_per_smell(findings, args.sample)
    policy = MatchPolicy.EXACT_SPAN if args.policy == "exact" else MatchPolicy.OVERLAP
    group_map = ambiguity_group_map() if args.group_ambiguity else None
    report = report_from_matches(findings, gold, policy=policy, group_map=group_map)
    print(render_eval_table(report))

    payload = report.to_dict()
    if args.agreement:
        agreement = _agreement_section(gold)
        if agreement:
            payload["agreement"] = agreement
            print()
            if "cohen_kappa" in agreement:
                print(f"Cohen's kappa (shared verdicts): {agreement['cohen_kappa']:.2f}")
            print(f"False-positive agreement (Jaccard): {agreement['fp_agreement']:.2f}")
    if args.json_out:
        _write_out(args.json_out, json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_OK


def _sample_per_smell(findings: list[Finding], n: int) -> list[Finding]:
    """First N findings of each smell in reading order (deterministic)."""
    ordered = sorted(findings, key=lambda f: (f.artifact_id, f.item_id, f.char_range))
    kept: list[Finding] = []
    counts: dict[SmellKind, int] = {}
    for finding in ordered:
        if counts.get(finding.smell, 0) < n:
            counts[finding.smell] = counts.get(finding.smell, 0) + 1
            kept.append(finding)
    return kept


def _agreement_section(gold) -> dict | None:
    by_rater: dict[str, dict] = {}
    for span in gold:
        if span.verdict is None or not span.rater_id:
            continue
        key = (span.artifact_id, span.item_id, span.smell.value, span.char_range)
        by_rater.setdefault(span.rater_id, {})[key] = span.verdict
    if len(by_rater) != 2:
        return None
    (rater_a, verdicts_a), (rater_b, verdicts_b) = sorted(by_rater.items())
    shared = sorted(set(verdicts_a) & set(verdicts_b))
    section: dict = {"raters": [rater_a, rater_b]}
    if shared:
        labels_a = [verdicts_a[k].value for k in shared]
        labels_b = [verdicts_b[k].value for k in shared]
        section["cohen_kappa"] = cohen_kappa(labels_a, labels_b)
    from .evalkit import GoldVerdict

    fp_a = {k for k, v in verdicts_a.items() if v is GoldVerdict.FALSE_POSITIVE}
    fp_b = {k for k, v in verdicts_b.items() if v is GoldVerdict.FALSE_POSITIVE}
    section["fp_agreement"] = percent_fp_agreement(map(str, fp_a), map(str, fp_b))
    return section


def cmd_serve(args: argparse.Namespace) -> int:
    from .reviewsvc import RunStore, create_app

    store = RunStore(args.runs_dir)
    if args.analyze:
        run_id = store.analyze_and_store(args.analyze)
        print(f"reqsmell: analyzed into run {run_id}")

    port = args.port or int(os.environ.get("REQSMELL_PORT", "8400"))
    ui_dir = args.ui_dir or _default_ui_dir()
    app = create_app(store, ui_dir=ui_dir, dev_cors=args.dev)

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((args.host, port))
    except OSError as exc:
        print(f"reqsmell: cannot bind {args.host}:{port}: {exc}", file=sys.stderr)
        return EXIT_FILE_ERROR
    finally:
        probe.close()

    import uvicorn

    print(f"reqsmell: serving on http://{args.host}:{port}/api/v1 (runs: {args.runs_dir})")
    uvicorn.run(app, host=args.host, port=port, log_level="warning")
    return EXIT_OK


def _default_ui_dir() -> str | None:
    for candidate in (Path("frontend/dist"), Path(__file__).resolve().parents[2] / "frontend/dist"):
        if candidate.is_dir():
            return str(candidate)
    return None


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config_file(argv, parser)
        args = parser.parse_args(argv)
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "serve":
            return cmd_serve(args)
        parser.error(f"unknown command {args.command}")
    except _UsageError as exc:
        print(f"reqsmell: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; normalize other codes.
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
