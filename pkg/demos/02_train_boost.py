"""Train one boosted model by hand and inspect it.

Builds the Attack classifier for the Japanese fixture names: median split,
balance, stratified folds, then a second-order boosted tree ensemble on the
count features.  Prints the loss curve, the confusion matrix of one fold,
and the highest-gain features.
"""

import os

import numpy as np

from soundskew import (
    BinaryLabeledSet,
    BoostParams,
    ConfusionMatrix,
    accuracy,
    balance,
    feature_importance,
    featurize,
    fp_rate_skew_adjusted,
    load_corpus,
    make_folds,
    median_split,
    predict_prob,
    subseed,
    train,
)

DATA = os.path.join(os.path.dirname(__file__), "..", "data")
SEED = 20220307

entries, inventories = load_corpus(
    os.path.join(DATA, "corpus.csv"), os.path.join(DATA, "inventory.csv"))
inventory = inventories["jpn"]
jpn = [e for e in entries if e.language == "jpn"]

split = median_split([(e.id, e.attributes["Attack"]) for e in jpn])
samples = tuple((e.id, featurize(e, inventory), split[e.id])
                for e in jpn if split[e.id] != "omitted")
labeled = BinaryLabeledSet(variable="Attack", language="jpn",
                           samples=samples)
labeled = balance(labeled, subseed(SEED, "jpn", "Attack", "balance"))
folds = make_folds(labeled, 3, subseed(SEED, "jpn", "Attack", "folds"))
print(f"{len(jpn)} names -> {len(labeled.samples)} after split+balance")

X = np.array([f for _, f, _ in labeled.samples], dtype=float)
y = np.array([1 if lab == "high" else 0 for _, _, lab in labeled.samples])
in_test = np.array([folds.assignment[sid] == 0
                    for sid, _, _ in labeled.samples])

model = train(X[~in_test], y[~in_test], BoostParams(seed=SEED))
print(f"trained {len(model.trees)} trees; "
      f"loss {model.train_loss[0]:.4f} -> {model.train_loss[-1]:.4f}")

pred = predict_prob(model, X[in_test]) >= 0.5
truth = y[in_test] == 1
cm = ConfusionMatrix(tp=int((pred & truth).sum()),
                     fp=int((pred & ~truth).sum()),
                     fn=int((~pred & truth).sum()),
                     tn=int((~pred & ~truth).sum()))
print(f"fold 0: tp={cm.tp} fp={cm.fp} fn={cm.fn} tn={cm.tn}")
print(f"accuracy {accuracy(cm):.3f}, "
      f"skew-adjusted FP% {fp_rate_skew_adjusted(cm):.3f}")

top = sorted(feature_importance(model).items(), key=lambda kv: -kv[1])[:5]
print("top-gain tokens:",
      {inventory.tokens[i]: round(g, 2) for i, g in top})
