"""Finitely generated semigroups as word streams over a generator list.

A word is a tuple of generator indices applied first-to-last: the word
(i1, ..., ik) denotes the composition f_{ik} o ... o f_{i1}. Composition
order in the literature reads right-to-left; orbit generation reads a word
left-to-right, and this module fixes the latter as the storage order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

import numpy as np

from .maps import MapDescriptor, eval_map, eval_map_array
from .rng import counter_u64, index_stream

Word = tuple[int, ...]

DEFAULT_WORD_BUDGET = 100_000


class BudgetExceededError(RuntimeError):
    """Word enumeration would exceed the configured budget."""


@dataclass(frozen=True)
class SemigroupSpec:
    generators: tuple[MapDescriptor, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if len(self.generators) < 1:
            raise ValueError("a semigroup needs at least one generator")
        for g in self.generators:
            if not isinstance(g, MapDescriptor):
                raise TypeError(f"generator {g!r} is not a catalog map")

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def is_cyclic(self) -> bool:
        return self.n == 1


def validate_word(spec: SemigroupSpec, w: Word) -> None:
    if len(w) == 0:
        raise ValueError("words are nonempty")
    for i in w:
        if not 0 <= i < spec.n:
            raise ValueError(f"letter {i} out of range for {spec.n} generators")


def concat(u: Word, v: Word) -> Word:
    """Word applying u first, then v: eval(concat(u, v), z) = eval(v, eval(u, z))."""
    return tuple(u) + tuple(v)


def word_count(n: int, L: int) -> int:
    """Exact number of words of length 1..L over n letters."""
    if n == 1:
        return L
    return (n ** (L + 1) - n) // (n - 1)


def words_up_to(spec: SemigroupSpec, L: int, budget: int = DEFAULT_WORD_BUDGET) -> Iterator[Word]:
    """All words of length <= L, shortest first.

    Within one length, words come in lexicographic order of their
    composition notation (outermost letter first), i.e. for n = 2, L = 2:
    (0,), (1,), (0,0), (1,0), (0,1), (1,1).
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    total = word_count(spec.n, L)
    if total > budget:
        raise BudgetExceededError(f"{total} words of length <= {L} exceed the budget of {budget}")
    for k in range(1, L + 1):
        for p in product(range(spec.n), repeat=k):
            yield p[::-1]


def eval_word(spec: SemigroupSpec, w: Word, z: complex) -> complex:
    """Apply the generators named by w, in letter order, at one point."""
    validate_word(spec, w)
    for i in w:
        z = eval_map(spec.generators[i], z)
    return z


def eval_word_array(spec: SemigroupSpec, w: Word, z: np.ndarray) -> np.ndarray:
    """Array version of eval_word; the overflow sentinel propagates."""
    validate_word(spec, w)
    for i in w:
        z = eval_map_array(spec.generators[i], z)
    return z


def random_word_stream(spec: SemigroupSpec, seed: int) -> Iterator[int]:
    """Infinite deterministic stream of uniform generator indices.

    Draw t is counter_u64(seed, t) mod n; identical (n, seed) pairs give
    identical streams regardless of platform or consumer chunking.
    """
    t = 0
    while True:
        yield counter_u64(seed, t) % spec.n
        t += 1


def random_word_indices(spec: SemigroupSpec, seed: int, count: int, offset: int = 0) -> np.ndarray:
    """First `count` draws of random_word_stream as an array."""
    return index_stream(seed, spec.n, count, offset)
