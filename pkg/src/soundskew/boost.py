"""Second-order gradient-boosted decision trees for binary logistic loss.

Exact greedy split search over sorted unique feature values; leaf weights are
the regularized second-order optimum, stored pre-multiplied by the learning
rate.  Training is bit-for-bit deterministic for a given seed: candidate
splits are reduced in a fixed order (lowest feature index, then lowest
threshold, wins ties) and the row/column subsampler consumes the seeded
generator in a fixed depth-first order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, asdict

import numpy as np

MODEL_FORMAT_VERSION = 1


class BoostError(ValueError):
    """Raised for invalid hyperparameters or malformed training inputs."""


@dataclass(frozen=True)
class BoostParams:
    rounds: int = 200
    learning_rate: float = 0.1
    max_depth: int = 4
    l2_lambda: float = 1.0
    min_split_gain: float = 0.0
    min_child_weight: float = 1.0
    row_subsample: float = 0.8
    col_subsample_per_node: float = 0.8
    base_score: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.rounds < 1:
            raise BoostError("rounds must be >= 1")
        if not 0.0 < self.learning_rate <= 1.0:
            raise BoostError("learning_rate must be in (0, 1]")
        if self.max_depth < 1:
            raise BoostError("max_depth must be >= 1")
        if self.l2_lambda < 0 or self.min_split_gain < 0:
            raise BoostError("l2_lambda and min_split_gain must be >= 0")
        if self.min_child_weight < 0:
            raise BoostError("min_child_weight must be >= 0")
        if not 0.0 < self.row_subsample <= 1.0:
            raise BoostError("row_subsample must be in (0, 1]")
        if not 0.0 < self.col_subsample_per_node <= 1.0:
            raise BoostError("col_subsample_per_node must be in (0, 1]")
        if not 0.0 < self.base_score < 1.0:
            raise BoostError("base_score must be in (0, 1)")


@dataclass
class TreeNode:
    """Internal node (feature/threshold/children) or leaf (weight only).

    Internal nodes route x[feature] < threshold to the left child.
    ``gain`` records the realized split gain for feature importance.
    """

    feature: int | None = None
    threshold: float | None = None
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None
    weight: float | None = None
    gain: float | None = None

    @property
    def is_leaf(self) -> bool:
        return self.feature is None


@dataclass
class BoostModel:
    trees: list[TreeNode]
    params: BoostParams
    n_features: int
    base_margin: float
    # Audit trails: per-round training loss and every realized split gain in
    # training order.
    train_loss: list[float] = field(default_factory=list)
    split_gain_log: list[tuple[int, float]] = field(default_factory=list)


def sigmoid(margin):
    return 1.0 / (1.0 + np.exp(-np.asarray(margin, dtype=float)))


def logit(p: float) -> float:
    return math.log(p / (1.0 - p))


def grad_hess(label: int, prob: float) -> tuple[float, float]:
    """Gradient and hessian of the logistic loss at probability ``prob``."""
    if not 0.0 < prob < 1.0:
        raise BoostError(f"prob must be strictly inside (0, 1), got {prob}")
    if label not in (0, 1):
        raise BoostError(f"label must be 0 or 1, got {label!r}")
    return prob - label, prob * (1.0 - prob)


def split_gain(GL: float, HL: float, GR: float, HR: float,
               l2_lambda: float, min_split_gain: float = 0.0) -> float:
    """Gain of splitting a node with child stats (GL, HL) and (GR, HR)."""
    if HL < 0 or HR < 0:
        raise BoostError("hessian sums must be >= 0")

    def score(G, H):
        denom = H + l2_lambda
        return 0.0 if denom == 0.0 else G * G / denom

    return 0.5 * (score(GL, HL) + score(GR, HR)
                  - score(GL + GR, HL + HR)) - min_split_gain


def leaf_weight(G: float, H: float, l2_lambda: float) -> float:
    """Regularized second-order optimum -G/(H + lambda)."""
    if H < 0:
        raise BoostError("hessian sum must be >= 0")
    if H + l2_lambda == 0.0:
        raise BoostError("H + l2_lambda must be positive")
    return -G / (H + l2_lambda)


def _best_split(X: np.ndarray, g: np.ndarray, h: np.ndarray,
                cols: np.ndarray, params: BoostParams):
    """Exact greedy search over the given columns; returns the winning split.

    Candidate thresholds are midpoints between consecutive distinct sorted
    values.  Gains for all candidates of all columns are evaluated in one
    2-D pass; the flattened argmax in column-major order implements the
    lowest-feature-then-lowest-threshold tie break.
    """
    n = X.shape[0]
    if n < 2:
        return None
    Xs = X[:, cols].astype(float, copy=False)
    order = np.argsort(Xs, axis=0, kind="stable")
    xs = np.take_along_axis(Xs, order, axis=0)
    gs = g[order]
    hs = h[order]
    GL = np.cumsum(gs, axis=0)[:-1]
    HL = np.cumsum(hs, axis=0)[:-1]
    Gtot, Htot = g.sum(), h.sum()
    GR = Gtot - GL
    HR = Htot - HL
    lam = params.l2_lambda

    def score(G, H):
        denom = H + lam
        return np.divide(G * G, denom, out=np.zeros_like(G),
                         where=denom > 0)

    parent = score(np.array(Gtot), np.array(Htot))
    gains = 0.5 * (score(GL, HL) + score(GR, HR) - parent) \
        - params.min_split_gain
    valid = (xs[:-1] < xs[1:]) \
        & (HL >= params.min_child_weight) \
        & (HR >= params.min_child_weight)
    gains = np.where(valid, gains, -np.inf)
    flat = gains.ravel(order="F")
    best = int(np.argmax(flat))
    best_gain = float(flat[best])
    if not np.isfinite(best_gain) or best_gain <= 0.0:
        return None
    col_pos, row = divmod(best, gains.shape[0])
    feature = int(cols[col_pos])
    threshold = float(xs[row, col_pos] + xs[row + 1, col_pos]) / 2.0
    return feature, threshold, best_gain


def _build_tree(X: np.ndarray, g: np.ndarray, h: np.ndarray,
                idx: np.ndarray, depth: int, params: BoostParams,
                rng: np.random.Generator,
                gain_log: list[tuple[int, float]]) -> TreeNode:
    G = float(g[idx].sum())
    H = float(h[idx].sum())

    def leaf():
        return TreeNode(weight=params.learning_rate
                        * leaf_weight(G, H, params.l2_lambda))

    if depth >= params.max_depth or len(idx) < 2:
        return leaf()
    n_features = X.shape[1]
    if params.col_subsample_per_node < 1.0:
        m = max(1, math.ceil(params.col_subsample_per_node * n_features))
        cols = np.sort(rng.choice(n_features, size=m, replace=False))
    else:
        cols = np.arange(n_features)
    found = _best_split(X[idx], g[idx], h[idx], cols, params)
    if found is None:
        return leaf()
    feature, threshold, gain = found
    gain_log.append((feature, gain))
    go_left = X[idx, feature] < threshold
    left = _build_tree(X, g, h, idx[go_left], depth + 1, params, rng, gain_log)
    right = _build_tree(X, g, h, idx[~go_left], depth + 1, params, rng,
                        gain_log)
    return TreeNode(feature=feature, threshold=threshold,
                    left=left, right=right, gain=gain)


def _apply_tree(node: TreeNode, X: np.ndarray, out: np.ndarray,
                idx: np.ndarray) -> None:
    if node.is_leaf:
        out[idx] = node.weight
        return
    go_left = X[idx, node.feature] < node.threshold
    _apply_tree(node.left, X, out, idx[go_left])
    _apply_tree(node.right, X, out, idx[~go_left])


def _tree_output(node: TreeNode, X: np.ndarray) -> np.ndarray:
    out = np.empty(X.shape[0], dtype=float)
    _apply_tree(node, X, out, np.arange(X.shape[0]))
    return out


def train(X: np.ndarray, y: np.ndarray, params: BoostParams) -> BoostModel:
    """Fit a boosted ensemble; deterministic for fixed (X, y, params)."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or X.shape[0] == 0 or X.shape[1] == 0:
        raise BoostError("X must be a non-empty 2-D matrix")
    if y.shape != (X.shape[0],):
        raise BoostError("y length must match X rows")
    if not np.all((y == 0) | (y == 1)):
        raise BoostError("labels must be 0 or 1")
    n = X.shape[0]
    rng = np.random.default_rng(params.seed)
    base_margin = logit(params.base_score)
    margins = np.full(n, base_margin)
    model = BoostModel(trees=[], params=params, n_features=X.shape[1],
                       base_margin=base_margin)
    for _ in range(params.rounds):
        p = sigmoid(margins)
        g = p - y
        h = p * (1.0 - p)
        if params.row_subsample < 1.0:
            m = max(1, int(math.floor(params.row_subsample * n)))
            idx = np.sort(rng.choice(n, size=m, replace=False))
        else:
            idx = np.arange(n)
        tree = _build_tree(X, g, h, idx, 0, params, rng, model.split_gain_log)
        model.trees.append(tree)
        margins += _tree_output(tree, X)
        p = np.clip(sigmoid(margins), 1e-15, 1.0 - 1e-15)
        model.train_loss.append(
            float(-np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p))))
    return model


def predict_margin(model: BoostModel, x: np.ndarray):
    """Raw margin: base margin plus the sum of (scaled) leaf weights."""
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    X = x[None, :] if single else x
    if X.shape[1] != model.n_features:
        raise BoostError(
            f"expected {model.n_features} features, got {X.shape[1]}")
    margins = np.full(X.shape[0], model.base_margin)
    for tree in model.trees:
        margins += _tree_output(tree, X)
    return float(margins[0]) if single else margins


def predict_prob(model: BoostModel, x: np.ndarray):
    return sigmoid(predict_margin(model, x))


def classify(model: BoostModel, x: np.ndarray):
    """Threshold at exactly 0.5; a tie goes to the positive (threat) class."""
    prob = predict_prob(model, x)
    return np.asarray(prob) >= 0.5 if np.ndim(prob) else prob >= 0.5


def feature_importance(model: BoostModel) -> dict[int, float]:
    """Total realized split gain per feature; unused features map to 0."""
    totals = {i: 0.0 for i in range(model.n_features)}

    def walk(node: TreeNode):
        if node.is_leaf:
            return
        totals[node.feature] += node.gain
        walk(node.left)
        walk(node.right)

    for tree in model.trees:
        walk(tree)
    return totals


def _node_to_dict(node: TreeNode) -> dict:
    if node.is_leaf:
        return {"weight": node.weight}
    return {"feature": node.feature, "threshold": node.threshold,
            "gain": node.gain, "left": _node_to_dict(node.left),
            "right": _node_to_dict(node.right)}


def _node_from_dict(d: dict) -> TreeNode:
    if "weight" in d:
        return TreeNode(weight=d["weight"])
    return TreeNode(feature=d["feature"], threshold=d["threshold"],
                    gain=d.get("gain"), left=_node_from_dict(d["left"]),
                    right=_node_from_dict(d["right"]))


def model_to_json(model: BoostModel) -> str:
    """Versioned JSON serialization for audit and golden-file tests."""
    doc = {
        "format_version": MODEL_FORMAT_VERSION,
        "params": asdict(model.params),
        "n_features": model.n_features,
        "base_margin": model.base_margin,
        "trees": [_node_to_dict(t) for t in model.trees],
    }
    return json.dumps(doc, indent=1, sort_keys=True)


def model_from_json(text: str) -> BoostModel:
    doc = json.loads(text)
    if doc.get("format_version") != MODEL_FORMAT_VERSION:
        raise BoostError(
            f"unsupported model format {doc.get('format_version')!r}")
    return BoostModel(
        trees=[_node_from_dict(t) for t in doc["trees"]],
        params=BoostParams(**doc["params"]),
        n_features=doc["n_features"],
        base_margin=doc["base_margin"])
