"""Independent reference implementations and random-input builders.

The oracles here recompute results with plain dicts, BFS, and math.fsum
loops so they share no code path with the package internals they check.
"""
from __future__ import annotations

import math
import unicodedata
from collections import defaultdict

from flexlex.conllu import TaggedCorpus, Token
from flexlex.metrics import downsample_indices
from flexlex.store import EmbeddingStore, make_record

UPOS_POOL = ("NOUN", "VERB", "ADJ", "ADV", "PRON", "DET", "ADP", "PUNCT", "NUM", "X")


def make_corpus(sentences, language_code="und") -> TaggedCorpus:
    """Build a TaggedCorpus from [[(form, lemma, upos), ...], ...]."""
    built = []
    for sentence_index, sentence in enumerate(sentences):
        built.append(
            tuple(
                Token(form, lemma, upos, sentence_index, token_index + 1)
                for token_index, (form, lemma, upos) in enumerate(sentence)
            )
        )
    return TaggedCorpus(tuple(built), language_code)


def random_corpus(rng, max_tokens, vocab_size=40, language_code="und") -> TaggedCorpus:
    """Random corpus with heavy form/lemma collisions to exercise merging."""
    total = rng.randint(0, max_tokens)
    sentences = []
    produced = 0
    while produced < total:
        length = min(rng.randint(1, 12), total - produced)
        sentence = []
        for _ in range(length):
            roll = rng.random()
            if roll < 0.05:
                form = rng.choice(("3-4", "...", "100", "!?", "12"))
            else:
                form = f"w{rng.randrange(vocab_size)}"
                if rng.random() < 0.1:
                    form = form.upper()
            if rng.random() < 0.08:
                lemma = "_"
            else:
                # lemmas drawn from the same pool as forms, forcing shared keys
                lemma = f"w{rng.randrange(vocab_size)}"
            upos = rng.choice(UPOS_POOL)
            sentence.append((form, lemma, upos))
        sentences.append(sentence)
        produced += length
    return make_corpus(sentences, language_code)


def _mergeable(form: str) -> bool:
    return not all(unicodedata.category(c)[0] in ("P", "N") for c in form)


def bfs_cluster_map(corpus: TaggedCorpus) -> dict[str, str]:
    """Connected components of the form-lemma graph, by breadth-first search."""
    adjacency: dict[str, set[str]] = defaultdict(set)
    for token in corpus.tokens():
        if not _mergeable(token.form):
            continue
        form = token.form.lower()
        lemma = token.lemma_key.lower()
        adjacency[form].add(lemma)
        adjacency[lemma].add(form)
    representative: dict[str, str] = {}
    visited: set[str] = set()
    for start in adjacency:
        if start in visited:
            continue
        component = []
        queue = [start]
        visited.add(start)
        while queue:
            node = queue.pop()
            component.append(node)
            for neighbor in adjacency[node]:
                if neighbor not in visited:
                    visited.add(neighbor)
                    queue.append(neighbor)
        smallest = min(component)
        for node in component:
            representative[node] = smallest
    return representative


def census_oracle(corpus: TaggedCorpus, min_total=10, min_minority_frac=0.05,
                  token_gate=100_000, flexibility_gate=0.025):
    """Recompute per-cluster counts and the language census with plain dicts."""
    cluster_map = bfs_cluster_map(corpus)
    counts: dict[str, list[int]] = defaultdict(lambda: [0, 0])
    for token in corpus.tokens():
        if token.upos not in ("NOUN", "VERB"):
            continue
        key = token.lemma_key.lower()
        key = cluster_map.get(key, key)
        counts[key][0 if token.upos == "NOUN" else 1] += 1
    records = {}
    for key in sorted(counts):
        noun, verb = counts[key]
        total = noun + verb
        minority = min(noun, verb)
        flexible = total >= min_total and minority >= 1 and minority / total >= min_minority_frac
        dominant = "noun" if noun > verb else ("verb" if verb > noun else "tie")
        records[key] = (noun, verb, flexible, dominant)
    noun_dominant = [r for r in records.values() if r[3] == "noun"]
    verb_dominant = [r for r in records.values() if r[3] == "verb"]
    noun_flexibility = (
        sum(r[2] for r in noun_dominant) / len(noun_dominant) if noun_dominant else 0.0
    )
    verb_flexibility = (
        sum(r[2] for r in verb_dominant) / len(verb_dominant) if verb_dominant else 0.0
    )
    included = (
        corpus.token_count >= token_gate
        and noun_flexibility >= flexibility_gate
        and verb_flexibility >= flexibility_gate
    )
    summary = (
        len(noun_dominant),
        len(verb_dominant),
        noun_flexibility,
        verb_flexibility,
        included,
    )
    return records, summary


def prototype_oracle(vectors) -> list[float]:
    n = len(vectors)
    dimension = len(vectors[0])
    return [math.fsum(float(v[j]) for v in vectors) / n for j in range(dimension)]


def variation_oracle(vectors) -> float:
    center = prototype_oracle(vectors)
    distances = [
        math.sqrt(math.fsum((float(x) - c) ** 2 for x, c in zip(v, center))) for v in vectors
    ]
    return math.fsum(distances) / len(distances)


def cosine_distance_oracle(a, b) -> float:
    dot = math.fsum(x * y for x, y in zip(a, b))
    norm_a = math.sqrt(math.fsum(x * x for x in a))
    norm_b = math.sqrt(math.fsum(y * y for y in b))
    return 1.0 - dot / (norm_a * norm_b)


def lemma_semantics_oracle(record, seed: int, downsample_prototypes=False):
    """Recompute one record's prototypes, variations, and shift by hand.

    The sampled row subset is part of the documented contract, so the
    oracle reuses downsample_indices and recomputes everything after it.
    """
    noun = [list(map(float, row)) for row in record.noun_vectors]
    verb = [list(map(float, row)) for row in record.verb_vectors]
    if len(noun) == len(verb):
        noun_sampled, verb_sampled = noun, verb
    elif len(noun) > len(verb):
        rows = downsample_indices(seed, record.cluster_key, len(noun), len(verb))
        noun_sampled, verb_sampled = [noun[i] for i in rows], verb
    else:
        rows = downsample_indices(seed, record.cluster_key, len(verb), len(noun))
        noun_sampled, verb_sampled = noun, [verb[i] for i in rows]
    if downsample_prototypes:
        prototype_noun, prototype_verb = prototype_oracle(noun_sampled), prototype_oracle(verb_sampled)
    else:
        prototype_noun, prototype_verb = prototype_oracle(noun), prototype_oracle(verb)
    return {
        "shift": cosine_distance_oracle(prototype_noun, prototype_verb),
        "noun_variation": variation_oracle(noun_sampled),
        "verb_variation": variation_oracle(verb_sampled),
    }


def mean_oracle(values) -> float:
    return math.fsum(values) / len(values)


def store_with_distances(distances: dict[str, float], layer_label: str = "layer0") -> EmbeddingStore:
    """One record per word whose noun/verb mean cosine distance is as given."""
    records = []
    for word, distance in distances.items():
        cosine = 1.0 - distance
        angle = math.acos(max(-1.0, min(1.0, cosine)))
        records.append(
            make_record(word, [[1.0, 0.0]], [[math.cos(angle), math.sin(angle)]], 2)
        )
    return EmbeddingStore(2, layer_label, records)


def random_store(rng, max_records=8, max_vectors=6, max_dimension=5,
                 layer_label="layer0") -> EmbeddingStore:
    """Random store with unique keys and finite float32 payloads."""
    dimension = rng.randint(1, max_dimension)
    records = []
    for index in range(rng.randint(0, max_records)):
        key = f"k{index}-{rng.randrange(1000)}"
        noun = [
            [rng.uniform(-50, 50) for _ in range(dimension)]
            for _ in range(rng.randint(0, max_vectors))
        ]
        verb = [
            [rng.uniform(-50, 50) for _ in range(dimension)]
            for _ in range(rng.randint(0, max_vectors))
        ]
        records.append(make_record(key, noun, verb, dimension))
    return EmbeddingStore(dimension, layer_label, records)
