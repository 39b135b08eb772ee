"""Demonstration selection: greedy operator-set coverage and Okapi BM25.

Set coverage
------------
For a structure set S and candidate demonstrations z with operator sets S_z,

    setcov(S, Z) = sum over s in S of max over z in Z of [s in S_z]

i.e. the number of structures covered by at least one member of Z.  Greedy
selection repeatedly picks the candidate maximizing setcov over the current
cover; when no candidate strictly improves it, the current cover is reset and
a fresh cover is started, until k demonstrations are selected.  Ties in the
argmax go to the lowest pool index (golden traces depend on this).  Note that
right after a reset any candidate strictly improves the (-inf) score, so a
zero-gain candidate can legitimately be picked then.

BM25
----
Okapi scoring with k1=1.5, b=0.75 by default.  Documents and queries are
tokenized by lowercasing and splitting on non-alphanumerics.  With document
frequency n over N documents,

    idf(t) = max(0, ln((N - n + 0.5) / (n + 0.5)))

(the IDF is floored at zero) and a document d of length |d| scores

    score(q, d) = sum over t in q of idf(t) * f(t,d) * (k1 + 1)
                  / (f(t,d) + k1 * (1 - b + b * |d| / avgdl))

Ranking sorts by descending score with ascending id as the tiebreak.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass

from .errors import PoolExhaustedError

BM25_K1 = 1.5
BM25_B = 0.75

_TOKEN = re.compile(r"[a-z0-9]+")


def tokenize(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


def setcov(structures: frozenset[str], candidate_sets) -> int:
    """Number of structures covered by at least one of the candidate sets."""
    covered = set()
    for s_z in candidate_sets:
        covered |= s_z
    return len(structures & covered)


def coverage_fraction(candidate_sets, structures: frozenset[str]) -> float:
    if not structures:
        return 0.0
    return setcov(structures, candidate_sets) / len(structures)


@dataclass(frozen=True)
class GreedyTrace:
    """One greedy step: which candidate was taken, or a cover reset."""

    picked: str | None  # candidate id, None for a reset
    coverage: int | None


def greedy_select(pool: list[tuple[str, frozenset[str]]], structures: frozenset[str],
                  k: int, with_trace: bool = False):
    """Greedy set-coverage selection over (id, operator set) candidates.

    Returns the selected ids in pick order (and the step trace when asked).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > len(pool):
        raise PoolExhaustedError(f"requested k={k} from a pool of {len(pool)}")
    selected: list[str] = []
    selected_ids: set[str] = set()
    cover_sets: list[frozenset[str]] = []
    current_cov = -math.inf
    trace: list[GreedyTrace] = []
    while len(selected) < k:
        best_id, best_set, best_cov = None, None, -math.inf
        for cand_id, cand_set in pool:
            if cand_id in selected_ids:
                continue
            cov = setcov(structures, [*cover_sets, cand_set])
            if cov > best_cov:
                best_id, best_set, best_cov = cand_id, cand_set, cov
        if best_cov > current_cov:
            current_cov = best_cov
            selected.append(best_id)
            selected_ids.add(best_id)
            cover_sets.append(best_set)
            trace.append(GreedyTrace(picked=best_id, coverage=best_cov))
        else:
            cover_sets = []
            current_cov = -math.inf
            trace.append(GreedyTrace(picked=None, coverage=None))
    return (selected, trace) if with_trace else selected


class Bm25Index:
    """Okapi BM25 over a fixed pool of (id, text) documents."""

    def __init__(self, documents: list[tuple[str, str]], k1: float = BM25_K1, b: float = BM25_B):
        self.ids = [doc_id for doc_id, _ in documents]
        self.k1 = k1
        self.b = b
        self.term_freqs = [Counter(tokenize(text)) for _, text in documents]
        self.doc_lens = [sum(tf.values()) for tf in self.term_freqs]
        n_docs = len(documents)
        self.avgdl = (sum(self.doc_lens) / n_docs) if n_docs else 0.0
        df: Counter = Counter()
        for tf in self.term_freqs:
            df.update(tf.keys())
        self.idf = {term: max(0.0, math.log((n_docs - n + 0.5) / (n + 0.5)))
                    for term, n in df.items()}

    def scores(self, query: str) -> list[float]:
        terms = tokenize(query)
        out = []
        for tf, dl in zip(self.term_freqs, self.doc_lens):
            norm = self.k1 * (1 - self.b + self.b * (dl / self.avgdl if self.avgdl else 0.0))
            score = 0.0
            for term in terms:
                f = tf.get(term, 0)
                if f:
                    score += self.idf.get(term, 0.0) * f * (self.k1 + 1) / (f + norm)
            out.append(score)
        return out


def bm25_rank(query: str, pool: list[tuple[str, str]], k: int,
              k1: float = BM25_K1, b: float = BM25_B) -> list[str]:
    """Top-k pool ids by Okapi BM25 score; ties and empty queries fall back to id order."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > len(pool):
        raise PoolExhaustedError(f"requested k={k} from a pool of {len(pool)}")
    index = Bm25Index(pool, k1=k1, b=b)
    scored = sorted(zip(index.ids, index.scores(query)), key=lambda p: (-p[1], p[0]))
    return [doc_id for doc_id, _ in scored[:k]]
