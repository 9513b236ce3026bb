"""Command-line entry point.

Subcommands:
  validate  parse corpus + inventory from a config, print per-language counts
  run       full experiment, write records.tsv / report.json / report.md
  stats     recompute H1/H2 from an existing records.tsv
  report    re-render a report.json into another format

Exit codes: 0 success, 1 validation error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from soundskew import runner, stats as stats_mod
from soundskew.corpus import CorpusError, load_corpus
from soundskew.runner import ConfigError, ExperimentConfig


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="soundskew",
        description="Deterministic FP-skew experiment harness")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate corpus and inventory files")
    p.add_argument("--config", required=True)

    p = sub.add_parser("run", help="run the full experiment")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=None,
                   help="override the config's master seed")
    p.add_argument("--out", default=None,
                   help="override the config's output directory")

    p = sub.add_parser("stats", help="recompute H1/H2 from a record file")
    p.add_argument("--records", required=True)

    p = sub.add_parser("report", help="re-render a JSON report")
    p.add_argument("--json", dest="json_path", required=True)
    p.add_argument("--format", choices=("md", "json"), default="md")
    return parser


def _cmd_validate(args) -> int:
    config = ExperimentConfig.from_json(args.config)
    entries, inventories = load_corpus(
        config.corpus_path, config.inventory_path)
    counts: dict[str, int] = {}
    for e in entries:
        counts[e.language] = counts.get(e.language, 0) + 1
    print(f"corpus: {len(entries)} entries, "
          f"{len(counts)} languages")
    for language in sorted(counts):
        size = len(inventories[language])
        print(f"  {language}: {counts[language]} entries, "
              f"{size} inventory tokens")
    return 0


def _cmd_run(args) -> int:
    config = ExperimentConfig.from_json(args.config)
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.out is not None:
        overrides["out_dir"] = args.out
    if overrides:
        config = dataclasses.replace(config, **overrides)
    report = runner.run_experiment(config)
    written = runner.emit_report(report, config.formats, config.out_dir)
    print(f"{len(report.records)} iterations, "
          f"{len(report.failures)} failed groups")
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_stats(args) -> int:
    records = runner.parse_records_tsv(args.records)
    # Variable grouping comes from the default config partition.
    config = ExperimentConfig(corpus_path="", inventory_path="")
    for entry in runner.hypothesis_h1(records, config):
        if entry.result is None:
            print(f"H1 {entry.group}: untestable "
                  f"({entry.untestable_reason})")
        else:
            r = entry.result
            print(f"H1 {entry.group}: n={entry.n} t({r.df})={r.t:.3f} "
                  f"p={r.p:.4g}")
    result, combat, size, reason = runner.hypothesis_h2(records, config)
    if result is None:
        print(f"H2: untestable ({reason})")
    else:
        print(f"H2: combat M={combat.mean:.4f} SD={combat.sd:.4f} "
              f"vs size M={size.mean:.4f} SD={size.sd:.4f}; "
              f"t({result.df})={result.t:.3f} p={result.p:.4g}")
    return 0


def _cmd_report(args) -> int:
    with open(args.json_path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if args.format == "md":
        sys.stdout.write(runner.report_markdown(doc))
    else:
        json.dump(doc, sys.stdout, indent=1, sort_keys=True)
        sys.stdout.write("\n")
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "run": _cmd_run,
    "stats": _cmd_stats,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, CorpusError, stats_mod.StatsError,
            FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - runtime failures exit 2
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
