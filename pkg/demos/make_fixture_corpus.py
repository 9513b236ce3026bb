"""Generate the fixture corpus shipped in data/.

The original experiment used video-game character names from an online
encyclopedia whose token inventories were never published, so the repository
ships a synthetic reconstruction instead: three languages with plausible
token inventories (including tone tokens for Chinese), names of 3-9 tokens,
and attributes that carry a planted sound-symbolic signal (certain "heavy"
tokens and longer names raise the combat and size attributes).

Running this script rewrites data/corpus.csv and data/inventory.csv
byte-identically; everything is driven by one fixed seed.
"""

import csv
import os

import numpy as np

SEED = 898
N_PER_LANGUAGE = 300

INVENTORIES = {
    "jpn": {
        "tokens": ["a", "i", "u", "e", "o", "k", "g", "s", "z", "t", "d",
                   "n", "h", "b", "p", "m", "y", "r", "w", "N"],
        "tones": [],
        "heavy": ["g", "z", "d", "b"],
    },
    "cmn": {
        "tokens": ["a", "i", "u", "e", "o", "k", "t", "p", "ts", "tɕ", "ɕ",
                   "s", "m", "n", "ŋ", "l", "w", "j"],
        "tones": ["T:1", "T:2", "T:3", "T:4"],
        "heavy": ["ŋ", "tɕ", "ts"],
    },
    "kor": {
        "tokens": ["a", "i", "u", "e", "o", "ʌ", "k", "kʰ", "t", "tʰ", "p",
                   "pʰ", "s", "m", "n", "ŋ", "l", "j", "w", "h"],
        "tones": [],
        "heavy": ["kʰ", "tʰ", "pʰ"],
    },
}


def generate_entry(rng, language, spec, index):
    n_tokens = int(rng.integers(3, 10))
    segments = list(rng.choice(spec["tokens"], size=n_tokens))
    transcription = []
    for i, seg in enumerate(segments):
        transcription.append(seg)
        # Chinese: a tone token roughly every other segment.
        if spec["tones"] and i % 2 == 1:
            transcription.append(str(rng.choice(spec["tones"])))
    heavy = sum(1 for t in transcription if t in spec["heavy"])
    length = len(segments)

    noise = rng.normal(0.0, 12.0, size=4)
    attack = 40 + 9 * heavy + 4 * length + noise[0]
    defend = 40 + 8 * heavy + 4 * length + noise[1]
    height = 30 + 3 * heavy + 6 * length + noise[2]
    weight = 35 + 3 * heavy + 6 * length + noise[3]
    attrs = [max(0, round(v)) for v in (attack, defend, height, weight)]
    return {
        "id": f"{language}-{index:04d}",
        "language": language,
        "name": "".join(segments),
        "transcription": " ".join(transcription),
        "attack": attrs[0], "defend": attrs[1],
        "height": attrs[2], "weight": attrs[3],
    }


def main():
    out_dir = os.path.join(os.path.dirname(__file__), "..", "data")
    os.makedirs(out_dir, exist_ok=True)
    rng = np.random.default_rng(SEED)

    rows = []
    for language, spec in INVENTORIES.items():
        for i in range(N_PER_LANGUAGE):
            rows.append(generate_entry(rng, language, spec, i))

    corpus_path = os.path.join(out_dir, "corpus.csv")
    with open(corpus_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=[
            "id", "language", "name", "transcription",
            "attack", "defend", "height", "weight"])
        writer.writeheader()
        writer.writerows(rows)

    inventory_path = os.path.join(out_dir, "inventory.csv")
    with open(inventory_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["language", "token", "is_tone"])
        for language, spec in INVENTORIES.items():
            for token in spec["tokens"]:
                writer.writerow([language, token, 0])
            for tone in spec["tones"]:
                writer.writerow([language, tone, 1])

    print(f"wrote {corpus_path} ({len(rows)} entries) and {inventory_path}")


if __name__ == "__main__":
    main()
