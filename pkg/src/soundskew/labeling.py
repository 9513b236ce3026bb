"""Median-split labeling, class balancing, and stratified fold assignment.

The stage order is fixed: median_split -> balance -> make_folds, so every
fold is approximately balanced.  Everything is seeded; the same corpus,
variable, language, seed and k always produce the same folds.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, replace

import numpy as np

LOW, HIGH, OMITTED = "low", "high", "omitted"


class LabelingError(ValueError):
    """Raised for degenerate labeling inputs (empty class, k too large...)."""


@dataclass(frozen=True)
class BinaryLabeledSet:
    """Balanced binary dataset for one (language, variable) pair.

    ``samples`` holds (entry id, feature vector, label) with label in
    {"low", "high"}; ``threat_class`` names the positive class for error
    accounting.
    """

    variable: str
    language: str
    samples: tuple[tuple[str, np.ndarray, str], ...]
    threat_class: str = HIGH
    seed: int = 0

    def __post_init__(self):
        if self.threat_class not in (LOW, HIGH):
            raise LabelingError(f"bad threat_class {self.threat_class!r}")

    def class_ids(self, label: str) -> list[str]:
        return [sid for sid, _, lab in self.samples if lab == label]


@dataclass(frozen=True)
class FoldAssignment:
    """Mapping entry id -> fold index in [0, k)."""

    k: int
    assignment: dict[str, int]

    def fold_ids(self, fold: int) -> list[str]:
        return [sid for sid, f in self.assignment.items() if f == fold]


def subseed(master_seed: int, *parts: str) -> int:
    """Derive an independent 64-bit sub-seed from a master seed and labels.

    Splitting is by SHA-256 over the master seed and the canonical label
    string, so adding a (language, variable) pair never perturbs the streams
    of the others.
    """
    text = f"{master_seed}|" + "|".join(parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def median_split(values: list[tuple[str, float]]) -> dict[str, str]:
    """Partition ids around the median of their values.

    The median is the midpoint of the two central order statistics for even
    counts.  Values strictly below map to "low", strictly above to "high",
    and exact ties with the median to "omitted".
    """
    if not values:
        raise LabelingError("median_split: empty input")
    arr = np.asarray([v for _, v in values], dtype=float)
    if not np.all(np.isfinite(arr)):
        raise LabelingError("median_split: non-finite value")
    ordered = np.sort(arr)
    n = len(ordered)
    if n % 2 == 1:
        median = float(ordered[n // 2])
    else:
        median = float(ordered[n // 2 - 1] + ordered[n // 2]) / 2.0
    out = {}
    for sid, v in values:
        if v < median:
            out[sid] = LOW
        elif v > median:
            out[sid] = HIGH
        else:
            out[sid] = OMITTED
    return out


def balance(labeled: BinaryLabeledSet, seed: int) -> BinaryLabeledSet:
    """Down-sample the majority class uniformly at random to the minority size.

    The minority class is untouched and the relative order of retained
    samples is preserved.  An already balanced set is returned unchanged.
    """
    low_idx = [i for i, (_, _, lab) in enumerate(labeled.samples) if lab == LOW]
    high_idx = [i for i, (_, _, lab) in enumerate(labeled.samples) if lab == HIGH]
    if not low_idx or not high_idx:
        raise LabelingError(
            f"balance: class with zero samples for "
            f"({labeled.language}, {labeled.variable})")
    if len(low_idx) == len(high_idx):
        return labeled
    if len(low_idx) > len(high_idx):
        majority, target = low_idx, len(high_idx)
    else:
        majority, target = high_idx, len(low_idx)
    rng = np.random.default_rng(seed)
    keep = set(rng.choice(len(majority), size=target, replace=False).tolist())
    dropped = {majority[i] for i in range(len(majority)) if i not in keep}
    samples = tuple(s for i, s in enumerate(labeled.samples)
                    if i not in dropped)
    return replace(labeled, samples=samples, seed=seed)


def make_folds(labeled: BinaryLabeledSet, k: int, seed: int) -> FoldAssignment:
    """Stratified k-fold assignment via a seeded shuffle within each class.

    Each class is shuffled and dealt round-robin over the k folds, so fold
    sizes per class differ by at most one.
    """
    if k < 2:
        raise LabelingError(f"make_folds: k must be >= 2, got {k}")
    rng = np.random.default_rng(seed)
    assignment: dict[str, int] = {}
    for label in (LOW, HIGH):
        ids = labeled.class_ids(label)
        if len(ids) < k:
            raise LabelingError(
                f"make_folds: class {label!r} has {len(ids)} samples, "
                f"need at least k={k}")
        order = rng.permutation(len(ids))
        for pos, idx in enumerate(order):
            assignment[ids[idx]] = pos % k
    return FoldAssignment(k=k, assignment=assignment)
