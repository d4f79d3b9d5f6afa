"""Census threshold sweep: how flexibility rates react to the gates.

Runs the census on one or more CoNLL-U files while varying the minimum
occurrence count and the minority-share threshold, and prints one row per
setting. Useful for checking how sensitive a language's noun and verb
flexibility rates are to the two per-lemma gates.

Usage: python3 scripts/threshold_sensitivity.py corpus.conllu [more.conllu ...]
"""
import argparse
import sys
from pathlib import Path

from flexlex.census import classify, count_classes, language_census
from flexlex.conllu import load_language_corpus
from flexlex.merge import build_clusters


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("corpus", nargs="+", type=Path, help="CoNLL-U files, one language")
    parser.add_argument("--language", default="und")
    parser.add_argument("--min-totals", type=int, nargs="+", default=[5, 10, 20, 50])
    parser.add_argument("--minority-fracs", type=float, nargs="+",
                        default=[0.01, 0.05, 0.1, 0.2])
    args = parser.parse_args(argv)

    corpus = load_language_corpus(tuple(args.corpus), args.language)
    clusters = build_clusters(corpus)
    counts = count_classes(corpus, clusters)

    sys.stdout.write("min_total\tmin_minority_frac\tnouns\tverbs\t"
                     "noun_flexibility\tverb_flexibility\n")
    for min_total in args.min_totals:
        for minority_frac in args.minority_fracs:
            records = [classify(c, min_total, minority_frac) for c in counts]
            census = language_census(records, corpus.token_count)
            sys.stdout.write(
                f"{min_total}\t{minority_frac:g}\t{census.noun_lemmas}\t"
                f"{census.verb_lemmas}\t{census.noun_flexibility:.6g}\t"
                f"{census.verb_flexibility:.6g}\n"
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
