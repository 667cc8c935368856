#!/usr/bin/env python3
"""Regenerate data/pos/tag_lexicon.tsv.

Inputs:
  * Brill's tagger lexicon (shipped inside the TextBlob wheel as
    textblob/en/en-lexicon.txt, "word TAG1 TAG2 ..." with the most
    likely Penn tag first).
  * the `wordfreq` package for the most frequent English words.

Each word's most likely Penn tag is collapsed onto the coarse tagset used by
the tagger.

Usage:
  build_tag_lexicon.py --brill en-lexicon.txt --top 5000 \
      --extra-words data/lexicon/*.csv tests/fixtures/pos/golden.txt \
      --out data/pos/tag_lexicon.tsv
"""
import argparse
import csv
import re

from wordfreq import top_n_list

NEGATIONS = {
    "not", "never", "no", "cannot", "nor", "neither",
    "don't", "can't", "won't", "isn't", "wasn't", "ain't", "aren't",
    "weren't", "doesn't", "didn't", "couldn't", "wouldn't", "shouldn't",
    "hasn't", "haven't", "hadn't", "mustn't", "dont", "cant", "wont",
    "aint", "didnt", "doesnt", "isnt", "wasnt",
}

# Brill tags these NN; the coarse tagset files pronouns under OTHER.
INDEFINITE_PRONOUNS = {
    "anybody", "anyone", "anything", "everybody", "everyone", "everything",
    "nobody", "nothing", "somebody", "someone", "something",
}

WORD_RE = re.compile(r"^[a-z][a-z']*$")


def coarse(penn):
    if penn.startswith("NN"):
        return "NOUN"
    if penn.startswith("VB"):
        return "VERB"
    if penn.startswith("JJ"):
        return "ADJ"
    if penn in ("RB", "RBR", "RBS"):
        return "ADV"
    return "OTHER"


def load_brill(path):
    table = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith(";;;"):
                continue
            parts = line.split()
            if len(parts) < 2:
                continue
            word, tags = parts[0], parts[1:]
            key = word.lower()
            # Prefer the lowercase spelling's entry over capitalized forms.
            if key in table and word != key:
                continue
            table[key] = tags
    return table


def extra_words(paths):
    words = []
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            if path.endswith(".csv"):
                for row in csv.DictReader(fh):
                    words.append(row["word"].strip().lower())
            else:
                for line in fh:
                    if line.startswith("#"):
                        continue
                    for tok in line.split():
                        words.append(tok.split("/")[0].lower())
    return words


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--brill", required=True)
    ap.add_argument("--top", type=int, default=5000)
    ap.add_argument("--extra-words", nargs="*", default=[])
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    brill = load_brill(args.brill)
    wanted = []
    seen = set()
    for word in top_n_list("en", args.top) + extra_words(args.extra_words):
        if word in seen or word in NEGATIONS or not WORD_RE.match(word):
            continue
        seen.add(word)
        if word in brill:
            wanted.append(word)

    with open(args.out, "w", encoding="utf-8") as out:
        out.write("# Coarse tag lexicon: word<TAB>TAG.\n")
        out.write("# Generated by tools/scripts/build_tag_lexicon.py from Brill's tagger\n")
        out.write("# lexicon and the wordfreq English frequency list.\n")
        for word in sorted(wanted):
            tag = "OTHER" if word in INDEFINITE_PRONOUNS else coarse(brill[word][0])
            out.write(f"{word}\t{tag}\n")


if __name__ == "__main__":
    main()
