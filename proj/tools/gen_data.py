#!/usr/bin/env python3
"""Regenerate data/pos_lexicon.tsv, data/sentiment.csv and data/lemma_exceptions.tsv.

Sources: the Brill tagger lexicon (MIT) and the pattern subjectivity lexicon
(PDDL), both as distributed inside the textblob wheel:

    pip download textblob --no-deps -d /tmp/tb
    python3 -m zipfile -e /tmp/tb/textblob-*.whl /tmp/tb
    python3 tools/gen_data.py /tmp/tb/textblob/en
"""
import collections
import re
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

WORD = re.compile(r"^[a-z']+$")

PENN_TO_COARSE = {
    "NN": "NOUN", "NNS": "NOUN", "NNP": "NOUN", "NNPS": "NOUN", "NP": "NOUN",
    "VB": "VERB", "VBD": "VERB", "VBG": "VERB", "VBN": "VERB", "VBP": "VERB",
    "VBZ": "VERB", "MD": "VERB",
    "JJ": "ADJ", "JJR": "ADJ", "JJS": "ADJ",
    "RB": "ADV", "RBR": "ADV", "RBS": "ADV", "WRB": "ADV",
    "PRP": "PRON", "PRP$": "PRON", "PP": "PRON", "WP": "PRON", "WP$": "PRON",
    "EX": "PRON",
    "DT": "DET", "PDT": "DET", "WDT": "DET",
    "IN": "ADP",
    "CC": "CONJ",
    "CD": "NUM",
    "RP": "PRT", "TO": "PRT", "POS": "PRT",
}
PRIORITY = ["NOUN", "VERB", "ADJ", "ADV", "PRON", "DET", "ADP", "CONJ", "NUM",
            "PRT", "X"]

CONTRACTIONS = {
    "PRON": ["it's", "that's", "there's", "here's", "what's", "who's", "he's",
             "she's", "i'm", "i've", "i'll", "i'd", "you're", "you've",
             "you'll", "you'd", "we're", "we've", "we'll", "we'd", "they're",
             "they've", "they'll", "they'd", "he'd", "she'd", "he'll",
             "she'll", "it'll", "let's"],
    "VERB": ["don't", "doesn't", "didn't", "can't", "won't", "isn't",
             "wasn't", "aren't", "weren't", "couldn't", "wouldn't",
             "shouldn't", "haven't", "hasn't", "hadn't", "mustn't",
             "needn't", "ain't"],
}

NEGATORS = ["not", "no", "never", "nor", "neither", "nobody", "nothing",
            "nowhere", "none", "cannot", "without", "hardly", "don't",
            "doesn't", "didn't", "can't", "won't", "isn't", "wasn't",
            "aren't", "weren't", "couldn't", "wouldn't", "shouldn't",
            "haven't", "hasn't", "hadn't", "mustn't", "needn't", "ain't"]


def coarse(tag):
    return PENN_TO_COARSE.get(tag.split("|")[0], "X")


def build_pos(src):
    exact = {}
    variants = collections.defaultdict(set)
    fine = {}
    for line in (src / "en-lexicon.txt").read_text(encoding="utf-8").splitlines():
        if line.startswith(";;;") or not line.strip():
            continue
        parts = line.split()
        if len(parts) < 2:
            continue
        word, tag = parts[0], parts[1]
        low = word.lower()
        if not WORD.match(low) or low.strip("'") == "":
            continue
        if word == low:
            exact[low] = coarse(tag)
            fine[low] = tag.split("|")[0]
        else:
            variants[low].add(coarse(tag))
    lexicon = dict(exact)
    for low, classes in variants.items():
        if low not in lexicon:
            lexicon[low] = min(classes, key=PRIORITY.index)
    for cls, words in CONTRACTIONS.items():
        for w in words:
            lexicon[w] = cls
    return lexicon, fine


def build_exceptions(fine):
    """Base forms the suffix lemmatizer would otherwise mangle."""
    rows = []
    for word, tag in sorted(fine.items()):
        if len(word) < 3 or "'" in word:
            continue
        if tag == "NN" and word.endswith("s") and not word.endswith(("ss", "us", "is")):
            rows.append((word, "NOUN"))
        elif tag in ("VB", "VBP") and word.endswith(("ing", "ed", "s")) \
                and not word.endswith(("ss", "us", "is")):
            rows.append((word, "VERB"))
        elif tag == "JJ" and word.endswith(("er", "est")):
            rows.append((word, "ADJ"))
    return rows


def build_sentiment(src):
    acc = collections.defaultdict(lambda: [0.0, 0.0, 0])
    root = ET.parse(src / "en-sentiment.xml").getroot()
    for w in root.iter("word"):
        form = w.get("form", "").lower()
        if not WORD.match(form):
            continue
        a = acc[form]
        a[0] += float(w.get("polarity", "0"))
        a[1] += float(w.get("intensity", "1"))
        a[2] += 1
    rows = {}
    for form, (p, i, n) in acc.items():
        rows[form] = (round(p / n, 3), round(i / n, 3), 0)
    for neg in NEGATORS:
        rows[neg] = (0.0, 1.0, 1)
    return rows


def main():
    src = Path(sys.argv[1])
    out = Path(__file__).resolve().parent.parent / "data"
    lexicon, fine = build_pos(src)
    with open(out / "pos_lexicon.tsv", "w", encoding="utf-8") as f:
        f.write("# word<TAB>CLASS; derived from the Brill tagger lexicon (MIT), see NOTICE\n")
        for w in sorted(lexicon):
            f.write(f"{w}\t{lexicon[w]}\n")
    with open(out / "lemma_exceptions.tsv", "w", encoding="utf-8") as f:
        f.write("# base forms protected from suffix stripping: surface<TAB>lemma<TAB>CLASS\n")
        for w, cls in build_exceptions(fine):
            f.write(f"{w}\t{w}\t{cls}\n")
    rows = build_sentiment(src)
    with open(out / "sentiment.csv", "w", encoding="utf-8") as f:
        f.write("word,polarity,factor,negator\n")
        for w in sorted(rows):
            p, i, n = rows[w]
            f.write(f"{w},{p:g},{i:g},{n}\n")


if __name__ == "__main__":
    main()
