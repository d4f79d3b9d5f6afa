"""Per-cluster noun/verb counts and language-level flexibility rates."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .conllu import TaggedCorpus
from .errors import ConfigurationError
from .merge import ClusterSet

NOUN = "noun"
VERB = "verb"
TIE = "tie"

COUNTED_UPOS = {"NOUN": NOUN, "VERB": VERB}


@dataclass(frozen=True, slots=True)
class ClassCounts:
    """Noun and verb occurrence counts for one cluster."""

    cluster: str
    noun_count: int
    verb_count: int

    @property
    def total(self) -> int:
        return self.noun_count + self.verb_count


@dataclass(frozen=True, slots=True)
class FlexibilityRecord:
    """A cluster's counts plus its flexibility and dominance classification."""

    counts: ClassCounts
    flexible: bool
    dominant: str


@dataclass(frozen=True, slots=True)
class LanguageCensus:
    """Language-level lemma tallies, flexibility rates, and inclusion flag."""

    noun_lemmas: int
    verb_lemmas: int
    noun_flexibility: float
    verb_flexibility: float
    included: bool
    degenerate: bool = False


def count_classes(corpus: TaggedCorpus, clusters: ClusterSet) -> list[ClassCounts]:
    """Count NOUN and VERB occurrences per cluster, sorted by cluster key."""
    noun: Counter[str] = Counter()
    verb: Counter[str] = Counter()
    for token in corpus.tokens():
        label = COUNTED_UPOS.get(token.upos)
        if label is None:
            continue
        key = clusters.resolve(token.lemma_key)
        if label == NOUN:
            noun[key] += 1
        else:
            verb[key] += 1
    return [
        ClassCounts(key, noun.get(key, 0), verb.get(key, 0))
        for key in sorted(set(noun) | set(verb))
    ]


def classify(
    counts: ClassCounts, min_total: int = 10, min_minority_frac: float = 0.05
) -> FlexibilityRecord:
    """Label a cluster flexible/inflexible and noun-/verb-dominant (or tie)."""
    if min_total < 1:
        raise ConfigurationError(f"min_total must be >= 1, got {min_total}")
    if not 0.0 <= min_minority_frac <= 0.5:
        raise ConfigurationError(
            f"min_minority_frac must lie in [0, 0.5], got {min_minority_frac}"
        )
    minority = min(counts.noun_count, counts.verb_count)
    flexible = (
        counts.total >= min_total
        and minority >= 1
        and minority / counts.total >= min_minority_frac
    )
    if counts.noun_count > counts.verb_count:
        dominant = NOUN
    elif counts.verb_count > counts.noun_count:
        dominant = VERB
    else:
        dominant = TIE
    return FlexibilityRecord(counts, flexible, dominant)


def language_census(
    records: Sequence[FlexibilityRecord],
    token_count: int,
    token_gate: int = 100_000,
    flexibility_gate: float = 0.025,
) -> LanguageCensus:
    """Aggregate cluster records into language-level flexibility rates.

    A language is included when it has at least ``token_gate`` tokens and
    both class flexibilities reach ``flexibility_gate``. An empty dominance
    group yields flexibility 0.0 and sets the degenerate flag.
    """
    if token_gate < 0:
        raise ConfigurationError(f"token_gate must be >= 0, got {token_gate}")
    if not 0.0 <= flexibility_gate <= 1.0:
        raise ConfigurationError(
            f"flexibility_gate must lie in [0, 1], got {flexibility_gate}"
        )
    noun_dominant = [r for r in records if r.dominant == NOUN]
    verb_dominant = [r for r in records if r.dominant == VERB]
    degenerate = not noun_dominant or not verb_dominant
    noun_flexibility = (
        sum(r.flexible for r in noun_dominant) / len(noun_dominant) if noun_dominant else 0.0
    )
    verb_flexibility = (
        sum(r.flexible for r in verb_dominant) / len(verb_dominant) if verb_dominant else 0.0
    )
    included = (
        token_count >= token_gate
        and noun_flexibility >= flexibility_gate
        and verb_flexibility >= flexibility_gate
    )
    return LanguageCensus(
        noun_lemmas=len(noun_dominant),
        verb_lemmas=len(verb_dominant),
        noun_flexibility=noun_flexibility,
        verb_flexibility=verb_flexibility,
        included=included,
        degenerate=degenerate,
    )
