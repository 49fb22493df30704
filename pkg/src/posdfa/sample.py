"""Finite positive samples and their prefix tries."""
from __future__ import annotations

import operator

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .automata import Alphabet, Dfa, Word, _require_same_alphabet
from .errors import InvalidWordError


class PrefixTrie:
    """Trie of all prefixes of a word set.

    Nodes are numbered breadth-first with children in ascending symbol
    order, so node 0 is the empty word and every parent precedes its
    children. The root is always present, even for an empty word set.
    """

    def __init__(self, words: Iterable[Sequence[int]], sigma: int):
        children: list = [{}]
        ends = [False]
        for w in words:
            node = 0
            for a in w:
                nxt = children[node].get(a)
                if nxt is None:
                    nxt = len(children)
                    children[node][a] = nxt
                    children.append({})
                    ends.append(False)
                node = nxt
            ends[node] = True
        # renumber breadth-first
        order = [0]
        parent = [-1]
        symbol = [-1]
        depth = [0]
        new_id = {0: 0}
        head = 0
        while head < len(order):
            old = order[head]
            for a in sorted(children[old]):
                c = children[old][a]
                new_id[c] = len(order)
                order.append(c)
                parent.append(head)
                symbol.append(a)
                depth.append(depth[head] + 1)
            head += 1
        self.sigma = sigma
        self.parent = parent
        self.symbol = symbol
        self.depth = depth
        self.terminal = [ends[old] for old in order]
        self.children = [{a: new_id[c] for a, c in sorted(children[old].items())} for old in order]

    def __len__(self) -> int:
        return len(self.parent)

    def node_of(self, word: Sequence[int]) -> int | None:
        node = 0
        for a in word:
            node = self.children[node].get(a)
            if node is None:
                return None
        return node

    def word_of(self, node: int) -> Word:
        out = []
        while node:
            out.append(self.symbol[node])
            node = self.parent[node]
        return tuple(reversed(out))

    def terminal_nodes(self) -> list:
        return [i for i, t in enumerate(self.terminal) if t]

    def level_ranges(self) -> list:
        """(start, stop) node ranges of each depth >= 1."""
        ranges = []
        start = 1
        n = len(self.depth)
        while start < n:
            d = self.depth[start]
            stop = start
            while stop < n and self.depth[stop] == d:
                stop += 1
            ranges.append((start, stop))
            start = stop
        return ranges


@dataclass(frozen=True)
class Sample:
    """A finite set of words over a fixed alphabet."""

    alphabet: Alphabet
    words: frozenset
    trie: PrefixTrie = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        sigma = self.alphabet.size
        try:
            words = frozenset(tuple(operator.index(a) for a in w) for w in self.words)
        except TypeError:
            raise InvalidWordError("word symbols must be integers") from None
        for w in words:
            for a in w:
                if not 0 <= a < sigma:
                    raise InvalidWordError(f"symbol {a!r} outside alphabet of size {sigma}")
        object.__setattr__(self, "words", words)
        object.__setattr__(self, "trie", PrefixTrie(sorted(words, key=lambda w: (len(w), w)), sigma))

    @classmethod
    def from_words(cls, words: Iterable[Sequence[int]], sigma: int | Alphabet) -> "Sample":
        alphabet = sigma if isinstance(sigma, Alphabet) else Alphabet.of_size(sigma)
        return cls(alphabet, frozenset(tuple(w) for w in words))

    @property
    def sigma(self) -> int:
        return self.alphabet.size

    def sorted_words(self) -> list:
        return sorted(self.words, key=lambda w: (len(w), w))

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word) -> bool:
        return tuple(word) in self.words


def reached_states(dfa: Dfa, sample: Sample, start: int | None = None) -> set:
    """States reached by reading each word of the sample from `start`."""
    trie = sample.trie
    q0 = dfa.init if start is None else start
    state = [0] * len(trie)
    state[0] = q0
    reached = set()
    delta = dfa.delta
    for node in range(len(trie)):
        if node:
            state[node] = delta[state[trie.parent[node]]][trie.symbol[node]]
        if trie.terminal[node]:
            reached.add(state[node])
    return reached


def recognizes_sample(dfa: Dfa, sample: Sample) -> bool:
    """True when every word of the sample is accepted."""
    _require_same_alphabet(dfa, sample)
    return reached_states(dfa, sample) <= dfa.final
