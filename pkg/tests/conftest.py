import os

import pytest

from soundskew.corpus import load_corpus

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "data")
CORPUS_CSV = os.path.join(DATA_DIR, "corpus.csv")
INVENTORY_CSV = os.path.join(DATA_DIR, "inventory.csv")

# The original study's dataset is behind a dead-tree shortlink; when a copy
# is available, drop it at these paths (same CSV schemas) to enable the
# dataset-dependent acceptance tests.
PAPER_CORPUS_CSV = os.environ.get(
    "SOUNDSKEW_PAPER_CORPUS",
    os.path.join(DATA_DIR, "paper_corpus.csv"))
PAPER_INVENTORY_CSV = os.environ.get(
    "SOUNDSKEW_PAPER_INVENTORY",
    os.path.join(DATA_DIR, "paper_inventory.csv"))


@pytest.fixture(scope="session")
def fixture_corpus():
    return load_corpus(CORPUS_CSV, INVENTORY_CSV)


@pytest.fixture
def write_corpus(tmp_path):
    """Write small corpus/inventory CSVs and return their paths."""

    def _write(corpus_rows, inventory_rows):
        corpus = tmp_path / "corpus.csv"
        inventory = tmp_path / "inventory.csv"
        corpus.write_text(
            "id,language,name,transcription,attack,defend,height,weight\n"
            + "".join(r + "\n" for r in corpus_rows), encoding="utf-8")
        inventory.write_text(
            "language,token,is_tone\n"
            + "".join(r + "\n" for r in inventory_rows), encoding="utf-8")
        return str(corpus), str(inventory)

    return _write
