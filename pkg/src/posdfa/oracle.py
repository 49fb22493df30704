"""Exhaustive enumeration of small DFAs, used as ground truth.

Transition tables are visited in row-major lexicographic order with the
initial state fixed to 0; for each table the final-state sets are
visited as ascending bitmasks. The first optimum found is kept.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .automata import Dfa, LanguageRelation, count_vectors, language_relation
from .errors import InvalidConfigError, TooLargeError
from .sample import Sample

DEFAULT_MAX_ENUM = 10 ** 7


@dataclass(frozen=True)
class OracleResult:
    min_count: int
    witness: Dfa
    enumerated: int


def enumeration_size(n: int, sigma: int) -> int:
    return n ** (n * sigma) * 2 ** n


def _guard(n: int, sigma: int, max_enum: int) -> None:
    if n < 1:
        raise InvalidConfigError("n must be at least 1")
    size = enumeration_size(n, sigma)
    if size > max_enum:
        raise TooLargeError(f"{size} DFAs to enumerate exceeds the limit of {max_enum}")


def _tables(n: int, sigma: int) -> Iterator[tuple]:
    for flat in itertools.product(range(n), repeat=n * sigma):
        yield tuple(flat[i * sigma:(i + 1) * sigma] for i in range(n))


def _sample_endpoints(table, p: Sample) -> int:
    """Bitmask of the states where sample words end, starting from 0."""
    mask = 0
    for w in p.words:
        q = 0
        for a in w:
            q = table[q][a]
        mask |= 1 << q
    return mask


def _state_totals(table, horizon: int, alphabet) -> list:
    dfa = Dfa(alphabet, table, frozenset(), 0)
    totals = [0] * len(table)
    for vec in count_vectors(dfa, horizon):
        for q, c in enumerate(vec):
            totals[q] += c
    return totals


def enumerate_min_count(p: Sample, n: int, max_enum: int = DEFAULT_MAX_ENUM,
                        horizon: Optional[int] = None) -> OracleResult:
    """Least number of accepted words of length <= horizon (default 2n-2)
    over every n-state DFA accepting all of P."""
    sigma = p.sigma
    _guard(n, sigma, max_enum)
    h = 2 * n - 2 if horizon is None else horizon
    best = None
    enumerated = 0
    for table in _tables(n, sigma):
        need = _sample_endpoints(table, p)
        totals = _state_totals(table, h, p.alphabet)
        for mask in range(2 ** n):
            enumerated += 1
            if need & ~mask:
                continue
            c = sum(totals[q] for q in range(n) if mask >> q & 1)
            if best is None or c < best[0]:
                best = (c, table, mask)
    c, table, mask = best
    witness = Dfa(p.alphabet, table, frozenset(q for q in range(n) if mask >> q & 1), 0)
    return OracleResult(c, witness, enumerated)


def decide_problem1(p: Sample, n: int, k: int, max_enum: int = DEFAULT_MAX_ENUM) -> bool:
    """Does some DFA with at most n states accept P and at most k words of
    length <= 2n-2?"""
    return enumerate_min_count(p, n, max_enum).min_count <= k


def consistent_dfas(p: Sample, n: int, max_enum: int = DEFAULT_MAX_ENUM) -> Iterator[Dfa]:
    """Every n-state DFA (initial state 0) accepting all of P."""
    _guard(n, p.sigma, max_enum)
    for table in _tables(n, p.sigma):
        need = _sample_endpoints(table, p)
        for mask in range(2 ** n):
            if need & ~mask:
                continue
            yield Dfa(p.alphabet, table, frozenset(q for q in range(n) if mask >> q & 1), 0)


def certify_language_minimal(dfa: Dfa, p: Sample, n: int, max_enum: int = DEFAULT_MAX_ENUM) -> bool:
    """True when no DFA with at most n states accepting P recognises a
    strict subset of L(dfa).

    DFAs with fewer states are covered because padding them with
    unreachable states keeps their language.
    """
    for other in consistent_dfas(p, n, max_enum):
        if language_relation(other, dfa) is LanguageRelation.A_STRICT_SUBSET_B:
            return False
    return True
