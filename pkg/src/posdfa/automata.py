"""Complete DFAs over small alphabets and the language operations used
throughout the package: runs, counting accepted words up to a length,
shortest distinguishing words and language inclusion.

Words are tuples of symbol indices. Counts are exact Python integers.
"""
from __future__ import annotations

import enum
import string
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import AlphabetMismatchError, InvalidDfaError, InvalidWordError

Word = tuple


@dataclass(frozen=True)
class Alphabet:
    """Ordered symbol labels; symbol i is written as ``symbols[i]``."""

    symbols: tuple

    def __post_init__(self):
        syms = tuple(str(s) for s in self.symbols)
        if not syms:
            raise InvalidDfaError("alphabet must not be empty")
        if len(set(syms)) != len(syms):
            raise InvalidDfaError("alphabet symbols must be distinct")
        object.__setattr__(self, "symbols", syms)

    @classmethod
    def of_size(cls, size: int) -> "Alphabet":
        """Default labels: letters a, b, c, ... up to 26, integers beyond."""
        if size < 1:
            raise InvalidDfaError("alphabet size must be at least 1")
        if size <= 26:
            return cls(tuple(string.ascii_lowercase[:size]))
        return cls(tuple(str(i) for i in range(size)))

    @property
    def size(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def index(self, label: str) -> int:
        try:
            return self.symbols.index(label)
        except ValueError:
            raise InvalidWordError(f"unknown symbol {label!r}") from None

    def parse(self, text: str) -> Word:
        """Parse a word given as concatenated single-character labels or
        whitespace separated labels."""
        text = text.strip()
        if text in ("", "ε", "eps"):
            return ()
        parts = text.split() if (" " in text or any(len(s) > 1 for s in self.symbols)) else list(text)
        return tuple(self.index(p) for p in parts)

    def render(self, word: Sequence[int]) -> str:
        if not word:
            return "ε"
        sep = "" if all(len(s) == 1 for s in self.symbols) else " "
        return sep.join(self.symbols[a] for a in word)


@dataclass(frozen=True)
class Dfa:
    """A complete DFA with dense states ``0..n_states-1``."""

    alphabet: Alphabet
    delta: tuple
    final: frozenset
    init: int = 0

    def __post_init__(self):
        sigma = self.alphabet.size
        rows = tuple(tuple(int(x) for x in row) for row in self.delta)
        n = len(rows)
        if n < 1:
            raise InvalidDfaError("a DFA needs at least one state")
        for p, row in enumerate(rows):
            if len(row) != sigma:
                raise InvalidDfaError(f"transition row {p} has {len(row)} entries, expected {sigma}")
            for q in row:
                if not 0 <= q < n:
                    raise InvalidDfaError(f"transition from state {p} targets unknown state {q}")
        final = frozenset(int(q) for q in self.final)
        if any(not 0 <= q < n for q in final):
            raise InvalidDfaError("final state out of range")
        if not 0 <= self.init < n:
            raise InvalidDfaError("initial state out of range")
        object.__setattr__(self, "delta", rows)
        object.__setattr__(self, "final", final)

    @property
    def n_states(self) -> int:
        return len(self.delta)

    @property
    def sigma(self) -> int:
        return self.alphabet.size

    def with_init(self, init: int) -> "Dfa":
        return Dfa(self.alphabet, self.delta, self.final, init)

    def canonical(self) -> "Dfa":
        """Relabel states by swapping the initial state with state 0."""
        if self.init == 0:
            return self
        s = self.init
        perm = list(range(self.n_states))
        perm[0], perm[s] = s, 0
        delta = [None] * self.n_states
        for p, row in enumerate(self.delta):
            delta[perm[p]] = tuple(perm[q] for q in row)
        return Dfa(self.alphabet, tuple(delta), frozenset(perm[q] for q in self.final), 0)


def _check_word(dfa: Dfa, word: Sequence[int]) -> None:
    for a in word:
        if not (isinstance(a, int) and 0 <= a < dfa.sigma):
            raise InvalidWordError(f"symbol {a!r} is not in an alphabet of size {dfa.sigma}")


def delta_star(dfa: Dfa, q: int, word: Sequence[int]) -> int:
    _check_word(dfa, word)
    delta = dfa.delta
    for a in word:
        q = delta[q][a]
    return q


def accepts(dfa: Dfa, word: Sequence[int]) -> bool:
    return delta_star(dfa, dfa.init, word) in dfa.final


def max_count(n: int, sigma: int) -> int:
    """Number of words of length at most 2n-2 over an alphabet of size sigma."""
    if n < 1 or sigma < 1:
        raise ValueError("n and sigma must be positive")
    m = 2 * n - 2
    if sigma == 1:
        return m + 1
    return (sigma ** (m + 1) - 1) // (sigma - 1)


def _successor_multiplicities(dfa: Dfa) -> list:
    succ = []
    for row in dfa.delta:
        mult: dict = {}
        for q in row:
            mult[q] = mult.get(q, 0) + 1
        succ.append(tuple(mult.items()))
    return succ


def count_vectors(dfa: Dfa, m: int) -> Iterator[list]:
    """Yield, for i = 0..m, the list of word counts reaching each state
    after exactly i symbols."""
    if m < 0:
        raise ValueError("m must be non-negative")
    succ = _successor_multiplicities(dfa)
    vec = [0] * dfa.n_states
    vec[dfa.init] = 1
    yield vec
    for _ in range(m):
        nxt = [0] * dfa.n_states
        for p, c in enumerate(vec):
            if c:
                for q, k in succ[p]:
                    nxt[q] += c * k
        vec = nxt
        yield vec


def coreachable_states(dfa: Dfa) -> set:
    """States from which some final state can be reached."""
    preds: list = [set() for _ in range(dfa.n_states)]
    for p, row in enumerate(dfa.delta):
        for q in row:
            preds[q].add(p)
    seen = set(dfa.final)
    todo = list(seen)
    while todo:
        q = todo.pop()
        for p in preds[q]:
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


def count_accepted_up_to(dfa: Dfa, m: int) -> int:
    """Number of words of length at most m accepted by the DFA.

    Only states that can still reach a final state are tracked, so the
    walk stops early once every remaining word is rejected for good.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    live = coreachable_states(dfa)
    if dfa.init not in live:
        return 0
    succ = []
    for row in dfa.delta:
        mult: dict = {}
        for q in row:
            if q in live:
                mult[q] = mult.get(q, 0) + 1
        succ.append(tuple(mult.items()))
    final = dfa.final
    vec = {dfa.init: 1}
    total = 0
    for i in range(m + 1):
        total += sum(c for q, c in vec.items() if q in final)
        if i == m:
            break
        nxt: dict = {}
        for p, c in vec.items():
            for q, k in succ[p]:
                nxt[q] = nxt.get(q, 0) + c * k
        if not nxt:
            break
        vec = nxt
    return total


def count_accepted_by_length(dfa: Dfa, m: int) -> list:
    """Accepted word counts for each exact length 0..m."""
    return [sum(vec[q] for q in dfa.final) for vec in count_vectors(dfa, m)]


def _require_same_alphabet(a: Dfa, b: Dfa) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError("DFAs are defined over different alphabets")


def distinguishing_witness(a: Dfa, b: Dfa) -> Optional[Word]:
    """Shortlex-least word in the symmetric difference of the two
    languages, or None when they are equal."""
    _require_same_alphabet(a, b)
    start = (a.init, b.init)
    parent = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        if (pair[0] in a.final) != (pair[1] in b.final):
            word = []
            while parent[pair] is not None:
                pair, sym = parent[pair]
                word.append(sym)
            return tuple(reversed(word))
        for sym in range(a.sigma):
            nxt = (a.delta[pair[0]][sym], b.delta[pair[1]][sym])
            if nxt not in parent:
                parent[nxt] = (pair, sym)
                queue.append(nxt)
    return None


class LanguageRelation(enum.Enum):
    EQUAL = "equal"
    A_STRICT_SUBSET_B = "a_strict_subset_b"
    B_STRICT_SUBSET_A = "b_strict_subset_a"
    INCOMPARABLE = "incomparable"


def language_relation(a: Dfa, b: Dfa) -> LanguageRelation:
    _require_same_alphabet(a, b)
    a_only = b_only = False
    start = (a.init, b.init)
    seen = {start}
    todo = [start]
    while todo:
        p, q = todo.pop()
        in_a, in_b = p in a.final, q in b.final
        if in_a and not in_b:
            a_only = True
        elif in_b and not in_a:
            b_only = True
        for sym in range(a.sigma):
            nxt = (a.delta[p][sym], b.delta[q][sym])
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    if not a_only and not b_only:
        return LanguageRelation.EQUAL
    if not a_only:
        return LanguageRelation.A_STRICT_SUBSET_B
    if not b_only:
        return LanguageRelation.B_STRICT_SUBSET_A
    return LanguageRelation.INCOMPARABLE


def trivial_dfa(alphabet: Alphabet, accept_all: bool = True) -> Dfa:
    """One-state DFA accepting everything (or nothing)."""
    return Dfa(alphabet, ((0,) * alphabet.size,), frozenset({0}) if accept_all else frozenset())


def unary_ring(n: int, final: Iterable[int], alphabet: Optional[Alphabet] = None) -> Dfa:
    """Unary cycle 0 -> 1 -> ... -> n-1 -> 0."""
    alphabet = alphabet or Alphabet.of_size(1)
    return Dfa(alphabet, tuple(((i + 1) % n,) for i in range(n)), frozenset(final))


def unary_sink_chain(n: int, final: Iterable[int], alphabet: Optional[Alphabet] = None) -> Dfa:
    """Unary chain 0 -> 1 -> ... -> n-1 whose last state loops on itself."""
    alphabet = alphabet or Alphabet.of_size(1)
    return Dfa(alphabet, tuple((min(i + 1, n - 1),) for i in range(n)), frozenset(final))
