"""Lemma clustering by shared surface forms.

One union-find pass unions each token's folded form with its folded lemma,
so two lemmas land in the same cluster exactly when some inflected form is
attested under both. This merges noun/verb pairs that share a paradigm
(conflating unrelated homographs is the accepted cost).
"""
from __future__ import annotations

import unicodedata

from .conllu import TaggedCorpus


def fold(key: str) -> str:
    """Case-fold a form or lemma with simple Unicode lowercasing."""
    return key.lower()


def is_mergeable_form(form: str) -> bool:
    """Forms made solely of punctuation or digits build meaningless bridges."""
    return not all(unicodedata.category(c)[0] in ("P", "N") for c in form)


class UnionFind:
    """Disjoint sets over strings with path compression and union by size."""

    def __init__(self):
        self._parent: dict[str, str] = {}
        self._size: dict[str, int] = {}

    def add(self, key: str) -> None:
        if key not in self._parent:
            self._parent[key] = key
            self._size[key] = 1

    def find(self, key: str) -> str:
        root = key
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[key] != root:
            self._parent[key], key = root, self._parent[key]
        return root

    def union(self, a: str, b: str) -> None:
        self.add(a)
        self.add(b)
        root_a, root_b = self.find(a), self.find(b)
        if root_a == root_b:
            return
        if self._size[root_a] < self._size[root_b]:
            root_a, root_b = root_b, root_a
        self._parent[root_b] = root_a
        self._size[root_a] += self._size[root_b]

    def groups(self) -> dict[str, set[str]]:
        members: dict[str, set[str]] = {}
        for key in self._parent:
            members.setdefault(self.find(key), set()).add(key)
        return members


class ClusterSet:
    """Finalized partition of folded forms and lemmas into clusters."""

    def __init__(self, groups: dict[str, set[str]]):
        self._members: dict[str, tuple[str, ...]] = {}
        self._representative: dict[str, str] = {}
        for group in groups.values():
            representative = min(group)
            self._members[representative] = tuple(sorted(group))
            for member in group:
                self._representative[member] = representative

    def resolve(self, key: str) -> str:
        """Representative (lexicographically smallest member) for a key.

        Unknown keys resolve to their own folded form, so lookups never fail.
        """
        folded = fold(key)
        return self._representative.get(folded, folded)

    def members(self, key: str) -> tuple[str, ...]:
        representative = self.resolve(key)
        return self._members.get(representative, (representative,))

    def clusters(self) -> dict[str, tuple[str, ...]]:
        """All observed clusters, keyed and sorted by representative."""
        return dict(sorted(self._members.items()))

    def dump_tsv(self) -> str:
        lines = [
            f"{representative}\t{','.join(members)}"
            for representative, members in sorted(self._members.items())
        ]
        return "\n".join(lines) + ("\n" if lines else "")


def build_clusters(corpus: TaggedCorpus) -> ClusterSet:
    """Build the form/lemma partition for a corpus in one union-find pass."""
    uf = UnionFind()
    for token in corpus.tokens():
        if not is_mergeable_form(token.form):
            continue
        uf.union(fold(token.form), fold(token.lemma_key))
    return ClusterSet(uf.groups())
