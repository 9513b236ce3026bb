"""Walk through corpus loading and count-based featurization.

Loads the fixture corpus, featurizes a few names, and shows how tone tokens
are excluded from name length but kept in the count vectors.
"""

import os

from soundskew import featurize, load_corpus, name_length

DATA = os.path.join(os.path.dirname(__file__), "..", "data")

entries, inventories = load_corpus(
    os.path.join(DATA, "corpus.csv"), os.path.join(DATA, "inventory.csv"))

print(f"{len(entries)} entries across {sorted(inventories)} languages\n")

for entry in [entries[0], next(e for e in entries if e.language == "cmn")]:
    inventory = inventories[entry.language]
    counts = featurize(entry, inventory)
    print(f"{entry.id}  name={entry.name!r}")
    print(f"  transcription: {' '.join(entry.transcription)}")
    nonzero = {inventory.tokens[i]: int(c)
               for i, c in enumerate(counts) if c}
    print(f"  counts: {nonzero}")
    print(f"  transcription tokens: {len(entry.transcription)}, "
          f"name length (tones excluded): {name_length(entry, inventory)}")
    print(f"  attributes: {entry.attributes}\n")
