"""Shared instance corpora for the test suite."""

from __future__ import annotations

import random
from functools import lru_cache

from supportrank import generate_random
from supportrank.fixtures import wfence_network

CORPUS_SIZE = 1200
MAX_ARCS = 20


def corpus_params(seed: int) -> tuple[int, int]:
    """(leaf_count, extra_arcs) for corpus member ``seed``, with at most 20 arcs."""
    rng = random.Random(seed)
    leaves = rng.randint(2, 7)
    # 2n - 2 tree arcs, three more per extra arc
    most = (MAX_ARCS - (2 * leaves - 2)) // 3
    # half the corpus takes the most extra arcs that fit: more reticulations
    # give larger families and longer rankings
    extra = most if rng.random() < 0.5 else rng.randint(0, most)
    return leaves, extra


@lru_cache(maxsize=None)
def corpus():
    return tuple(generate_random(*corpus_params(s), s) for s in range(CORPUS_SIZE))


@lru_cache(maxsize=None)
def wfence_corpus(n: int = 100):
    return tuple(wfence_network(s) for s in range(n))
