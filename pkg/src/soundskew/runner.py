"""Experiment orchestration: languages x variables x folds, tests, reports.

Each (language, variable) group runs median_split -> balance -> make_folds,
then trains and evaluates one boosted model per fold.  Hypothesis tests run
on the per-iteration skew-adjusted FP rates; name-length regressions run on
the full corpus (no median or balance filtering).  Everything downstream of
the config is deterministic; sub-seeds are derived per group so removing a
language never perturbs the others.
"""

from __future__ import annotations

import dataclasses
import datetime
import json
import os
from dataclasses import dataclass, field

import numpy as np

from soundskew import boost, corpus as corpus_mod, labeling, metrics, stats
from soundskew.boost import BoostParams
from soundskew.corpus import ATTRIBUTE_NAMES, NameEntry, TokenInventory
from soundskew.labeling import BinaryLabeledSet, subseed
from soundskew.metrics import ConfusionMatrix, IterationRecord

REPORT_FORMAT_VERSION = 1

RECORD_COLUMNS = ("language", "variable", "fold", "seed",
                  "tp", "fp", "fn", "tn", "accuracy", "fp_pct")


class ConfigError(ValueError):
    """Raised for invalid experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    corpus_path: str
    inventory_path: str
    languages: tuple[str, ...] | None = None   # None: every corpus language
    variables: tuple[str, ...] = ATTRIBUTE_NAMES
    threat_direction: dict[str, str] = field(
        default_factory=dict)                  # variable -> "high" | "low"
    combat_set: tuple[str, ...] = ("Attack", "Defend")
    size_set: tuple[str, ...] = ("Height", "Weight")
    k: int = 3
    seed: int = 20220307
    boost_params: BoostParams = field(default_factory=BoostParams)
    out_dir: str = "out"
    formats: tuple[str, ...] = ("tsv", "json", "md")

    def __post_init__(self):
        if self.k < 2:
            raise ConfigError("k must be >= 2")
        if set(self.combat_set) & set(self.size_set):
            raise ConfigError("combat_set and size_set must be disjoint")
        if self.languages is not None and not self.languages:
            raise ConfigError("languages must be non-empty when given")
        for var, direction in self.threat_direction.items():
            if direction not in ("high", "low"):
                raise ConfigError(
                    f"threat_direction[{var!r}] must be 'high' or 'low'")
        bad = set(self.formats) - {"tsv", "json", "md"}
        if bad:
            raise ConfigError(f"unknown report formats: {sorted(bad)}")

    def threat_class(self, variable: str) -> str:
        return self.threat_direction.get(variable, "high")

    @classmethod
    def from_json(cls, path: str) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        if "corpus_path" not in raw or "inventory_path" not in raw:
            raise ConfigError(
                "config must set corpus_path and inventory_path")
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        kwargs = dict(raw)
        for key in ("languages", "variables", "combat_set", "size_set",
                    "formats"):
            if key in kwargs and kwargs[key] is not None:
                kwargs[key] = tuple(kwargs[key])
        if "boost_params" in kwargs:
            kwargs["boost_params"] = BoostParams(**kwargs["boost_params"])
        # Config paths are relative to the config file's directory.
        base = os.path.dirname(os.path.abspath(path))
        for key in ("corpus_path", "inventory_path"):
            if not os.path.isabs(kwargs[key]):
                kwargs[key] = os.path.join(base, kwargs[key])
        return cls(**kwargs)


@dataclass
class GroupFailure:
    language: str
    variable: str
    stage: str
    reason: str


@dataclass
class GroupAggregate:
    language: str
    variable: str
    mean_accuracy: float
    mean_fp_pct: float | None       # mean over defined per-iteration values
    pooled_accuracy: float
    pooled_fp_pct: float | None
    n_iterations: int
    n_undefined_fp: int


@dataclass
class HypothesisEntry:
    group: str                      # variable name, "combat", or "size"
    n: int
    n_excluded: int
    result: stats.TTestResult | None
    untestable_reason: str | None = None


@dataclass
class LengthRegressionEntry:
    language: str                   # language code or "combined"
    variable: str
    n: int
    result: stats.OlsResult | None
    untestable_reason: str | None = None


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    records: list[IterationRecord]
    failures: list[GroupFailure]
    aggregates: list[GroupAggregate]
    h1: list[HypothesisEntry]
    h2_result: stats.TTestResult | None
    h2_combat: stats.GroupSummary | None
    h2_size: stats.GroupSummary | None
    h2_untestable_reason: str | None
    length_regressions: list[LengthRegressionEntry]
    languages: tuple[str, ...]
    version: int = REPORT_FORMAT_VERSION
    timestamp: str = ""


def _resolve_languages(config: ExperimentConfig,
                       entries: list[NameEntry]) -> tuple[str, ...]:
    if config.languages is not None:
        return tuple(config.languages)
    seen: list[str] = []
    for e in entries:
        if e.language not in seen:
            seen.append(e.language)
    if not seen:
        raise ConfigError("corpus contains no entries")
    return tuple(seen)


def _run_group(entries: list[NameEntry], inventory: TokenInventory,
               language: str, variable: str, config: ExperimentConfig
               ) -> list[IterationRecord]:
    values = [(e.id, e.attributes[variable]) for e in entries
              if e.language == language and e.attributes[variable] is not None]
    if not values:
        raise labeling.LabelingError(
            f"no values for {variable} in {language}")
    split = labeling.median_split(values)
    by_id = {e.id: e for e in entries}
    samples = tuple(
        (sid, corpus_mod.featurize(by_id[sid], inventory), label)
        for sid, label in ((sid, split[sid]) for sid, _ in values)
        if label != labeling.OMITTED)
    threat = config.threat_class(variable)
    labeled = BinaryLabeledSet(variable=variable, language=language,
                               samples=samples, threat_class=threat,
                               seed=config.seed)
    labeled = labeling.balance(
        labeled, subseed(config.seed, language, variable, "balance"))
    folds = labeling.make_folds(
        labeled, config.k, subseed(config.seed, language, variable, "folds"))

    X = np.array([feat for _, feat, _ in labeled.samples], dtype=float)
    y = np.array([1 if lab == threat else 0
                  for _, _, lab in labeled.samples])
    fold_of = np.array([folds.assignment[sid]
                        for sid, _, _ in labeled.samples])
    records = []
    for fold in range(config.k):
        train_seed = subseed(config.seed, language, variable, "train",
                             str(fold))
        params = dataclasses.replace(config.boost_params,
                                     seed=train_seed & (2 ** 63 - 1))
        in_test = fold_of == fold
        model = boost.train(X[~in_test], y[~in_test], params)
        pred = boost.predict_prob(model, X[in_test]) >= 0.5
        truth = y[in_test] == 1
        cm = ConfusionMatrix(
            tp=int(np.sum(pred & truth)),
            fp=int(np.sum(pred & ~truth)),
            fn=int(np.sum(~pred & truth)),
            tn=int(np.sum(~pred & ~truth)),
            threat_class=threat)
        records.append(IterationRecord(
            language=language, variable=variable, fold=fold,
            seed=params.seed, cm=cm, accuracy=metrics.accuracy(cm),
            fp_pct=metrics.fp_rate_skew_adjusted(cm)))
    return records


def _aggregate(records: list[IterationRecord]) -> list[GroupAggregate]:
    groups: dict[tuple[str, str], list[IterationRecord]] = {}
    for r in records:
        groups.setdefault((r.language, r.variable), []).append(r)
    out = []
    for (language, variable), recs in sorted(groups.items()):
        defined = [r.fp_pct for r in recs if r.fp_pct is not None]
        pooled = metrics.pool([r.cm for r in recs])
        out.append(GroupAggregate(
            language=language, variable=variable,
            mean_accuracy=float(np.mean([r.accuracy for r in recs])),
            mean_fp_pct=float(np.mean(defined)) if defined else None,
            pooled_accuracy=metrics.accuracy(pooled),
            pooled_fp_pct=metrics.fp_rate_skew_adjusted(pooled),
            n_iterations=len(recs),
            n_undefined_fp=len(recs) - len(defined)))
    return out


def _fp_values(records, variables) -> tuple[list[float], int]:
    vals = [r.fp_pct for r in records if r.variable in variables]
    defined = [v for v in vals if v is not None]
    return defined, len(vals) - len(defined)


def hypothesis_h1(records: list[IterationRecord],
                  config: ExperimentConfig) -> list[HypothesisEntry]:
    """Per-variable and per-group one-sample t-tests of FP% against 0.5."""
    groups = [(v, (v,)) for v in config.variables]
    groups.append(("combat", config.combat_set))
    groups.append(("size", config.size_set))
    out = []
    for name, variables in groups:
        values, excluded = _fp_values(records, variables)
        if len(values) < 2:
            out.append(HypothesisEntry(
                group=name, n=len(values), n_excluded=excluded, result=None,
                untestable_reason="fewer than 2 defined FP values"))
            continue
        try:
            result = stats.one_sample_t(values, 0.5)
        except stats.StatsError as exc:
            out.append(HypothesisEntry(
                group=name, n=len(values), n_excluded=excluded, result=None,
                untestable_reason=str(exc)))
            continue
        out.append(HypothesisEntry(group=name, n=len(values),
                                   n_excluded=excluded, result=result))
    return out


def hypothesis_h2(records: list[IterationRecord], config: ExperimentConfig):
    """Pooled two-sample t-test: combat-variable FP% vs size-variable FP%."""
    combat, _ = _fp_values(records, config.combat_set)
    size, _ = _fp_values(records, config.size_set)
    if len(combat) < 2 or len(size) < 2:
        return None, None, None, "fewer than 2 defined FP values in a group"
    try:
        result, sa, sb = stats.two_sample_pooled_t(combat, size)
    except stats.StatsError as exc:
        return None, None, None, str(exc)
    return result, sa, sb, None


def length_regression(entries: list[NameEntry],
                      inventories: dict[str, TokenInventory],
                      config: ExperimentConfig,
                      languages: tuple[str, ...]
                      ) -> list[LengthRegressionEntry]:
    """Regress each attribute on tone-excluding name length.

    Runs per language and pooled over all configured languages, on every
    sample with the attribute present (no median or balance filtering).
    """
    out = []
    scopes = [(lang, (lang,)) for lang in languages]
    scopes.append(("combined", languages))
    for scope_name, scope_langs in scopes:
        pool_entries = [e for e in entries if e.language in scope_langs]
        for variable in config.variables:
            pairs = [(corpus_mod.name_length(e, inventories[e.language]),
                      e.attributes[variable])
                     for e in pool_entries
                     if e.attributes[variable] is not None]
            if len(pairs) < 3:
                out.append(LengthRegressionEntry(
                    language=scope_name, variable=variable, n=len(pairs),
                    result=None,
                    untestable_reason="fewer than 3 samples"))
                continue
            x = [p[0] for p in pairs]
            y = [p[1] for p in pairs]
            try:
                result = stats.simple_ols(x, y)
            except stats.StatsError as exc:
                out.append(LengthRegressionEntry(
                    language=scope_name, variable=variable, n=len(pairs),
                    result=None, untestable_reason=str(exc)))
                continue
            out.append(LengthRegressionEntry(
                language=scope_name, variable=variable, n=len(pairs),
                result=result))
    return out


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Run the full pipeline and collect every result into one report."""
    entries, inventories = corpus_mod.load_corpus(
        config.corpus_path, config.inventory_path)
    languages = _resolve_languages(config, entries)
    for lang in languages:
        if lang not in inventories:
            raise ConfigError(f"no inventory for configured language {lang!r}")
    records: list[IterationRecord] = []
    failures: list[GroupFailure] = []
    for language in languages:
        for variable in config.variables:
            try:
                records.extend(_run_group(
                    entries, inventories[language], language, variable,
                    config))
            except (labeling.LabelingError, boost.BoostError,
                    metrics.MetricsError, corpus_mod.CorpusError) as exc:
                failures.append(GroupFailure(
                    language=language, variable=variable,
                    stage=type(exc).__name__, reason=str(exc)))
    records.sort(key=lambda r: (r.language, r.variable, r.fold))
    h2_result, h2_combat, h2_size, h2_reason = hypothesis_h2(records, config)
    return ExperimentReport(
        config=config,
        records=records,
        failures=failures,
        aggregates=_aggregate(records),
        h1=hypothesis_h1(records, config),
        h2_result=h2_result, h2_combat=h2_combat, h2_size=h2_size,
        h2_untestable_reason=h2_reason,
        length_regressions=length_regression(
            entries, inventories, config, languages),
        languages=languages,
        timestamp=datetime.datetime.now(
            datetime.timezone.utc).isoformat(timespec="seconds"))


# ---------------------------------------------------------------------------
# Report emission


def _fmt_pct(value: float | None) -> str:
    return "NA" if value is None else f"{100.0 * value:.2f}%"


def _fmt_p(p: float) -> str:
    return f"{p:.3g}" if p >= 1e-3 else f"{p:.2e}"


def records_tsv(records: list[IterationRecord]) -> str:
    lines = ["\t".join(RECORD_COLUMNS)]
    for r in records:
        fp = "NA" if r.fp_pct is None else f"{r.fp_pct:.10g}"
        lines.append("\t".join(map(str, (
            r.language, r.variable, r.fold, r.seed,
            r.cm.tp, r.cm.fp, r.cm.fn, r.cm.tn,
            f"{r.accuracy:.10g}", fp))))
    return "\n".join(lines) + "\n"


def parse_records_tsv(path: str) -> list[IterationRecord]:
    with open(path, encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    if not lines or tuple(lines[0].split("\t")) != RECORD_COLUMNS:
        raise ConfigError(f"{path}: bad records header")
    records = []
    for ln in lines[1:]:
        cells = ln.split("\t")
        if len(cells) != len(RECORD_COLUMNS):
            raise ConfigError(f"{path}: bad record row {ln!r}")
        lang, var, fold, seed, tp, fp, fn, tn, acc, fp_pct = cells
        records.append(IterationRecord(
            language=lang, variable=var, fold=int(fold), seed=int(seed),
            cm=ConfusionMatrix(tp=int(tp), fp=int(fp), fn=int(fn),
                               tn=int(tn)),
            accuracy=float(acc),
            fp_pct=None if fp_pct == "NA" else float(fp_pct)))
    return records


def _ttest_dict(r: stats.TTestResult | None):
    if r is None:
        return None
    return {"estimate": r.estimate, "t": r.t, "df": r.df, "p": r.p}


def _summary_dict(s: stats.GroupSummary | None):
    if s is None:
        return None
    return {"mean": s.mean, "sd": s.sd, "n": s.n}


def _ols_dict(r: stats.OlsResult | None):
    if r is None:
        return None
    return {"slope": r.slope, "intercept": r.intercept, "F": r.F,
            "df1": r.df1, "df2": r.df2, "p": r.p, "r2": r.r2}


def report_to_dict(report: ExperimentReport) -> dict:
    config = dataclasses.asdict(report.config)
    config["boost_params"] = dataclasses.asdict(report.config.boost_params)
    return {
        "version": report.version,
        "timestamp": report.timestamp,
        "config": config,
        "languages": list(report.languages),
        "records": [
            {"language": r.language, "variable": r.variable, "fold": r.fold,
             "seed": r.seed, "tp": r.cm.tp, "fp": r.cm.fp, "fn": r.cm.fn,
             "tn": r.cm.tn, "accuracy": r.accuracy, "fp_pct": r.fp_pct}
            for r in report.records],
        "failures": [dataclasses.asdict(f) for f in report.failures],
        "aggregates": [dataclasses.asdict(a) for a in report.aggregates],
        "h1": [
            {"group": e.group, "n": e.n, "n_excluded": e.n_excluded,
             "result": _ttest_dict(e.result),
             "untestable_reason": e.untestable_reason}
            for e in report.h1],
        "h2": {
            "result": _ttest_dict(report.h2_result),
            "combat": _summary_dict(report.h2_combat),
            "size": _summary_dict(report.h2_size),
            "untestable_reason": report.h2_untestable_reason,
        },
        "length_regressions": [
            {"language": e.language, "variable": e.variable, "n": e.n,
             "result": _ols_dict(e.result),
             "untestable_reason": e.untestable_reason}
            for e in report.length_regressions],
    }


def report_markdown(doc: dict) -> str:
    """Render the report dict as markdown tables (accuracy/FP% and OLS)."""
    lines = ["# Experiment report", "",
             f"Generated: {doc['timestamp']}", ""]
    lines += ["## Accuracy and skew-adjusted FP rate (mean over folds)", "",
              "| Language | Variable | Accuracy | FP% |",
              "|---|---|---|---|"]
    for a in doc["aggregates"]:
        lines.append(
            f"| {a['language']} | {a['variable']} "
            f"| {_fmt_pct(a['mean_accuracy'])} "
            f"| {_fmt_pct(a['mean_fp_pct'])} |")
    lines += ["", "## H1: FP% vs 50% chance (per-iteration values)", "",
              "| Group | n | t | df | p |", "|---|---|---|---|---|"]
    for e in doc["h1"]:
        if e["result"] is None:
            lines.append(f"| {e['group']} | {e['n']} | - | - | "
                         f"untestable: {e['untestable_reason']} |")
        else:
            r = e["result"]
            lines.append(f"| {e['group']} | {e['n']} | {r['t']:.2f} "
                         f"| {r['df']} | {_fmt_p(r['p'])} |")
    lines += ["", "## H2: combat FP% vs size FP%", ""]
    if doc["h2"]["result"] is None:
        lines.append(f"Untestable: {doc['h2']['untestable_reason']}")
    else:
        r = doc["h2"]["result"]
        ca, sz = doc["h2"]["combat"], doc["h2"]["size"]
        lines.append(
            f"combat (M = {_fmt_pct(ca['mean'])}, SD = {_fmt_pct(ca['sd'])}) "
            f"vs size (M = {_fmt_pct(sz['mean'])}, SD = {_fmt_pct(sz['sd'])}); "
            f"t({r['df']}) = {r['t']:.2f}, p = {_fmt_p(r['p'])}")
    lines += ["", "## Name-length regressions", "",
              "| Scope | Variable | df | F | p | R^2 |",
              "|---|---|---|---|---|---|"]
    for e in doc["length_regressions"]:
        if e["result"] is None:
            lines.append(f"| {e['language']} | {e['variable']} | - | - | - | "
                         f"untestable: {e['untestable_reason']} |")
        else:
            r = e["result"]
            lines.append(
                f"| {e['language']} | {e['variable']} "
                f"| {r['df1']}, {r['df2']} | {r['F']:.2f} "
                f"| {_fmt_p(r['p'])} | {r['r2']:.3f} |")
    if doc["failures"]:
        lines += ["", "## Failures", ""]
        for f in doc["failures"]:
            lines.append(f"- {f['language']}/{f['variable']} "
                         f"({f['stage']}): {f['reason']}")
    return "\n".join(lines) + "\n"


def emit_report(report: ExperimentReport, formats, out_dir: str) -> list[str]:
    """Write records.tsv / report.json / report.md; returns written paths."""
    os.makedirs(out_dir, exist_ok=True)
    doc = report_to_dict(report)
    written = []
    if "tsv" in formats:
        path = os.path.join(out_dir, "records.tsv")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(records_tsv(report.records))
        written.append(path)
    if "json" in formats:
        path = os.path.join(out_dir, "report.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
            fh.write("\n")
        written.append(path)
    if "md" in formats:
        path = os.path.join(out_dir, "report.md")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(report_markdown(doc))
        written.append(path)
    return written
