#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 biblio contributors
"""Regenerates tests/data/porter_vocabulary.tsv.

Reference stems come from NLTK's PorterStemmer in MARTIN_EXTENSIONS mode,
which follows the original C release of the algorithm.

usage: make_porter_vocabulary.py OUT.tsv TEXT_FILE...
"""
import re
import sys

from nltk.stem.porter import PorterStemmer


def main():
    out, sources = sys.argv[1], sys.argv[2:]
    words = set()
    for path in sources:
        with open(path, encoding="utf-8", errors="ignore") as f:
            words.update(re.findall(r"[a-z]+", f.read().lower()))
    # Hand-picked words that exercise every rule group.
    words.update("""caresses ponies ties caress cats feed agreed plastered bled motoring sing
        conflated troubled sized hopping tanned falling hissing fizzed failing filing happy sky
        relational conditional rational valenci hesitanci digitizer conformabli radicalli
        differentli vileli analogousli vietnamization predication operator feudalism
        decisiveness hopefulness callousness formaliti sensitiviti sensibiliti triplicate
        formative formalize electriciti electrical hopeful goodness revival allowance inference
        airliner gyroscopic adjustable defensible irritant replacement adjustment dependent
        adoption homologou communism activate angulariti homologous effective bowdlerize
        probate rate cease controll roll generalization oscillators bibliographic
        nanotubes polymers spectroscopy spintronics archaeology informetrics""".split())
    stemmer = PorterStemmer(mode=PorterStemmer.MARTIN_EXTENSIONS)
    with open(out, "w", encoding="utf-8") as f:
        f.write("word\tstem\n")
        for w in sorted(words):
            if len(w) <= 30:
                f.write(f"{w}\t{stemmer.stem(w, to_lowercase=False)}\n")


if __name__ == "__main__":
    main()
