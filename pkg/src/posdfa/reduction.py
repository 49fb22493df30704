"""Polynomial reduction from satisfiability of formulas made of all-positive
and all-negative clauses to the minimum-count DFA problem.

Given an instance, the reduction produces a positive sample P over {a, b},
a state bound n and an error budget k. For a satisfying valuation it also
builds a witness DFA that accepts P, fits in the state bound, and accepts
exactly k words outside P.

Word sets are huge but highly regular, so they are stored as unions of
blocks. A block is a concatenation of segments, each segment being a
short list of alternative words; its language is every choice of one
alternative per segment.

Throughout, ``U(i, x)`` is the set {y^j x : 1 <= j <= i} where y is the
letter other than x; it has exactly i elements.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional

from .automata import Alphabet, Dfa, count_accepted_up_to
from .errors import InvalidConfigError, InvalidValuationError, ParseError, UnsupportedError
from .sample import Sample

AB = Alphabet(("a", "b"))
_CODE = {"a": 0, "b": 1}


# --- instances ---------------------------------------------------------------

@dataclass(frozen=True)
class ApnSatInstance:
    """Variables are 1..r. Each clause is (positive, set of variables); a
    positive clause needs a true variable, a negative one a false one."""

    r: int
    clauses: tuple

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("an instance needs at least one variable")
        cl = tuple((bool(pos), frozenset(int(v) for v in vs)) for pos, vs in self.clauses)
        if not cl:
            raise ValueError("an instance needs at least one clause")
        for _, vs in cl:
            if not vs or any(not 1 <= v <= self.r for v in vs):
                raise ValueError("clauses must be non-empty sets of variables 1..r")
        object.__setattr__(self, "clauses", cl)

    @property
    def s(self) -> int:
        return len(self.clauses)

    @property
    def positive_clauses(self) -> list:
        return [vs for pos, vs in self.clauses if pos]

    @property
    def negative_clauses(self) -> list:
        return [vs for pos, vs in self.clauses if not pos]

    def is_satisfied(self, valuation: Mapping[int, bool]) -> bool:
        for pos, vs in self.clauses:
            if not any(bool(valuation.get(v, False)) == pos for v in vs):
                return False
        return True

    def satisfying_valuations(self) -> Iterator[dict]:
        if self.r > 20:
            raise UnsupportedError("exhaustive satisfiability search is limited to 20 variables")
        for bits in itertools.product((False, True), repeat=self.r):
            val = {i + 1: b for i, b in enumerate(bits)}
            if self.is_satisfied(val):
                yield val

    def padded(self) -> "ApnSatInstance":
        """Add an unused variable when there is only one, so that r >= 2."""
        return self if self.r >= 2 else ApnSatInstance(2, self.clauses)


def parse_apn(text: str) -> ApnSatInstance:
    """Format: ``p apn <r> <s>`` then one clause per line, ``+ i j ...`` or
    ``- i j ...``. Lines starting with ``c`` are comments."""
    header = None
    clauses = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        ln = raw.strip()
        if not ln or ln.startswith("c"):
            continue
        parts = ln.split()
        if header is None:
            if len(parts) != 4 or parts[:2] != ["p", "apn"]:
                raise ParseError("expected header 'p apn <r> <s>'", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            continue
        if parts[0] not in "+-" or len(parts[0]) != 1:
            raise ParseError("clause lines start with '+' or '-'", lineno)
        try:
            vs = [int(x) for x in parts[1:]]
        except ValueError:
            raise ParseError("clause variables must be integers", lineno) from None
        if not vs or any(not 1 <= v <= header[0] for v in vs):
            raise ParseError("clause variables must lie in 1..r", lineno)
        clauses.append((parts[0] == "+", frozenset(vs)))
    if header is None:
        raise ParseError("missing header", 1)
    if len(clauses) != header[1]:
        raise ParseError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return ApnSatInstance(header[0], tuple(clauses))


def format_apn(inst: ApnSatInstance) -> str:
    out = [f"p apn {inst.r} {inst.s}"]
    for pos, vs in inst.clauses:
        out.append(("+ " if pos else "- ") + " ".join(str(v) for v in sorted(vs)))
    return "\n".join(out) + "\n"


def parse_valuation(text: str, r: Optional[int] = None) -> dict:
    """Parse ``"1=T 2=F ..."``."""
    val = {}
    for tok in text.replace(",", " ").split():
        try:
            var, _, truth = tok.partition("=")
            i = int(var)
        except ValueError:
            raise InvalidValuationError(f"bad valuation entry {tok!r}") from None
        if truth.upper() not in ("T", "F", "TRUE", "FALSE", "1", "0"):
            raise InvalidValuationError(f"bad truth value in {tok!r}")
        val[i] = truth.upper() in ("T", "TRUE", "1")
    if r is not None:
        missing = [i for i in range(1, r + 1) if i not in val]
        if missing:
            raise InvalidValuationError(f"no value for variables {missing}")
    return val


# --- parameters --------------------------------------------------------------

@dataclass(frozen=True)
class ReductionParams:
    r: int
    s: int
    M: int
    T: int
    k: int
    omega1: int
    omega2: int
    d: int
    n: int
    m: int
    census: str = "formula"


def witness_state_count(r: int, s: int, M: int, T: int, k: int, d: int) -> int:
    """Exact number of states of the witness DFA built below."""
    per_variable = 1 + (d + 1) + 2 * s + r * T
    return 5 + (s + 1) + (2 + M + r * per_variable) + 2 * (d + k + 4) + 2 * (k + 1)


def choose_params(inst: ApnSatInstance, census: str = "formula") -> ReductionParams:
    """Derive the reduction parameters from r and s.

    ``census="formula"`` uses the closed-form census for the second
    weight. That census is r states short of the witness DFA, so
    ``census="exact"`` adds r to it and the witness fits within n.
    """
    if census not in ("formula", "exact"):
        raise InvalidConfigError("census must be 'formula' or 'exact'")
    inst = inst.padded()
    r, s = inst.r, inst.s
    M = 3 * (s + r)
    T = 2 * s + 3 * r
    k = s * (T + s - 1) + M * r
    omega2 = 18 + s + M + 4 * k + r + 2 * r * s + r * r * T
    if census == "exact":
        omega2 += r
    d = omega2 + 1
    omega1 = d * (2 + r)
    n = omega1 + omega2
    return ReductionParams(r, s, M, T, k, omega1, omega2, d, n, 2 * n - 2, census)


def tiny_params(inst: ApnSatInstance, *, k: int, d: int, T: int, M: int) -> ReductionParams:
    """User-chosen small parameters for demonstrations. The state bound is
    set to the witness size; the audit reports which assumptions fail."""
    inst = inst.padded()
    r, s = inst.r, inst.s
    n = witness_state_count(r, s, M, T, k, d)
    omega1 = d * (2 + r)
    return ReductionParams(r, s, M, T, k, omega1, n - omega1, d, n, 2 * n - 2, "tiny")


# --- symbolic word sets ------------------------------------------------------

@dataclass(frozen=True)
class Block:
    segments: tuple

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(tuple(seg) for seg in self.segments))

    @property
    def size(self) -> int:
        return math.prod(len(seg) for seg in self.segments)

    @property
    def max_length(self) -> int:
        return sum(max(len(w) for w in seg) for seg in self.segments)

    @property
    def min_length(self) -> int:
        return sum(min(len(w) for w in seg) for seg in self.segments)

    def words(self) -> Iterator[str]:
        for combo in itertools.product(*self.segments):
            yield "".join(combo)

    def pattern(self) -> re.Pattern:
        body = "".join("(?:" + "|".join(sorted(seg, key=len, reverse=True)) + ")" for seg in self.segments)
        return re.compile(body)


@dataclass(frozen=True)
class Stratum:
    label: str
    blocks: tuple


@dataclass
class ReductionWordSet:
    strata: tuple
    params: ReductionParams
    alphabet: Alphabet = AB
    _patterns: list = field(default_factory=list, repr=False)

    def blocks(self) -> Iterator[Block]:
        for st in self.strata:
            yield from st.blocks

    def __len__(self) -> int:
        return sum(b.size for b in self.blocks())

    @property
    def max_length(self) -> int:
        return max(b.max_length for b in self.blocks())

    def stratum(self, label: str) -> Stratum:
        for st in self.strata:
            if st.label == label:
                return st
        raise KeyError(label)

    def __contains__(self, word) -> bool:
        if not isinstance(word, str):
            word = "".join(AB.symbols[x] for x in word)
        if not self._patterns:
            self._patterns.extend(b.pattern() for b in self.blocks())
        return any(p.fullmatch(word) for p in self._patterns)

    def __iter__(self) -> Iterator[str]:
        for b in self.blocks():
            yield from b.words()

    def to_sample(self) -> Sample:
        table = str.maketrans("ab", "\x00\x01")
        return Sample(AB, frozenset(tuple(w.translate(table).encode()) for w in self))


def U(i: int, x: str) -> tuple:
    y = "b" if x == "a" else "a"
    return tuple(y * j + x for j in range(1, i + 1))


def appearances(inst: ApnSatInstance, i: int) -> tuple:
    app = tuple(j for j, (_, vs) in enumerate(inst.clauses, 1) if i in vs)
    not_app = tuple(j for j, (_, vs) in enumerate(inst.clauses, 1) if i not in vs)
    return app, not_app


def index_parts(inst: ApnSatInstance, params: ReductionParams, i: int) -> tuple:
    """The three index groups whose union is the accepted b-exponents
    after the gadget of variable i."""
    s, r, T = params.s, params.r, params.T
    app, not_app = appearances(inst, i)
    return (set(app), {s + j for j in not_app}, {2 * s + i + t * r for t in range(T)})


def indices(inst: ApnSatInstance, params: ReductionParams, i: int) -> set:
    a, b, c = index_parts(inst, params, i)
    return a | b | c


def index_overlaps(inst: ApnSatInstance, params: ReductionParams) -> dict:
    """Variables whose index groups intersect (empty for valid parameters)."""
    out = {}
    for i in range(1, params.r + 1):
        a, b, c = index_parts(inst, params, i)
        common = (a & b) | (a & c) | (b & c)
        if common:
            out[i] = sorted(common)
    return out


def build_word_sets(inst: ApnSatInstance, params: ReductionParams) -> ReductionWordSet:
    inst = inst.padded()
    r, s, d, k, M, T = params.r, params.s, params.d, params.k, params.M, params.T
    ua = U(k + 1, "a")
    ub = U(k + 1, "b")
    long_a = tuple("a" * (d + 1) + u for u in ua)
    long_b = tuple("b" * (2 * s + T * r) + u for u in ub)
    strata = [
        Stratum("top", (Block((("aa",), ua, ("a" * d,) + long_a)),)),
        Stratum("bot", (Block((("ab",), ua, ("a" * (d + 1),) + long_a)),)),
    ]
    for i in range(1, r + 1):
        tails = long_a + tuple("b" * e for e in sorted(indices(inst, params, i))) + long_b
        strata.append(Stratum(f"var{i}", (Block((("ba",), U(M, "b"), ("b" * i + "a" + "b" * d,), tails)),)))
    for j, (pos, _) in enumerate(inst.clauses, 1):
        head = ("bb" + "a" * j + "b" + "b" * d,)
        strata.append(Stratum(f"clause{j}", (Block((head, ("b" * j,) + long_b)),)))
        accept = "a" * d if pos else "a" * (d + 1)
        strata.append(Stratum(f"clause{j}_acc", (Block((head, (accept,) + long_a)),)))
    return ReductionWordSet(tuple(strata), params)


# --- witness DFA -------------------------------------------------------------

class _Builder:
    def __init__(self):
        self.names = []
        self.delta = []
        self.final = set()

    def new(self, name) -> int:
        self.names.append(name)
        self.delta.append([None, None])
        return len(self.names) - 1

    def chain(self, prefix, count, start=1) -> list:
        return [self.new((prefix, i)) for i in range(start, start + count)]

    def on(self, p, letter, q):
        self.delta[p][_CODE[letter]] = q


def clause_witness_variables(inst: ApnSatInstance, valuation: Mapping[int, bool]) -> list:
    """For each clause, the smallest variable that satisfies it."""
    out = []
    for pos, vs in inst.clauses:
        ok = [v for v in sorted(vs) if bool(valuation.get(v, False)) == pos]
        if not ok:
            raise InvalidValuationError("valuation does not satisfy the instance")
        out.append(ok[0])
    return out


def build_witness_dfa(inst: ApnSatInstance, valuation: Mapping[int, bool], params: ReductionParams,
                      with_names: bool = False):
    """DFA accepting the whole sample and exactly k other words, built from
    a satisfying valuation."""
    if not inst.is_satisfied(valuation):
        raise InvalidValuationError("valuation does not satisfy the instance")
    inst = inst.padded()
    r, s, d, k, M, T = params.r, params.s, params.d, params.k, params.M, params.T
    pick = clause_witness_variables(inst, valuation)
    B = _Builder()
    init = B.new("init")
    qa, qb = B.new("a"), B.new("b")
    acc, rej = B.new("acc"), B.new("rej")
    B.final.add(acc)

    def truth_gadget(tag, final_at):
        head = B.new((tag,))
        u = B.chain((tag, "u"), k + 1)
        body = B.chain((tag, "x"), d + 2, start=0)
        B.on(head, "b", u[0])
        for i, q in enumerate(u):
            if i + 1 < len(u):
                B.on(q, "b", u[i + 1])
            B.on(q, "a", body[0])
        for i in range(d + 1):
            B.on(body[i], "a", body[i + 1])
        B.final.add(body[final_at])
        return head, body

    top, top_body = truth_gadget("top", d)
    bot, bot_body = truth_gadget("bot", d + 1)
    ua = B.chain("ua", k + 1)
    ub = B.chain("ub", k + 1)
    for chain, step, close in ((ua, "b", "a"), (ub, "a", "b")):
        for i, q in enumerate(chain):
            if i + 1 < len(chain):
                B.on(q, step, chain[i + 1])
            B.on(q, close, acc)
    B.on(top_body[d + 1], "b", ua[0])
    B.on(bot_body[d + 1], "b", ua[0])

    qcl = B.new("cl")
    qc = B.chain("C", s)
    qvar, qx = B.new("var"), B.new("X")
    vu = B.chain("varu", M)
    xs = B.chain("x", r)
    gadget = {}
    for i in range(1, r + 1):
        entry = B.chain(("x", i), d + 1, start=0)
        in_c = B.chain(("in", i), s)
        not_c = B.chain(("notin", i), s)
        tail = [B.new(("tail", i, l, t)) for t in range(T) for l in range(1, r + 1)]
        gadget[i] = (entry, in_c, not_c, tail)

    B.on(init, "a", qa)
    B.on(init, "b", qb)
    B.on(qa, "a", top)
    B.on(qa, "b", bot)
    B.on(qb, "a", qvar)
    B.on(qb, "b", qcl)
    B.on(qcl, "a", qc[0])
    for j in range(s):
        if j + 1 < s:
            B.on(qc[j], "a", qc[j + 1])
        B.on(qc[j], "b", gadget[pick[j]][0][0])
    B.on(qvar, "a", vu[0])
    for i, q in enumerate(vu):
        if i + 1 < M:
            B.on(q, "a", vu[i + 1])
        B.on(q, "b", qx)
    B.on(qx, "b", xs[0])
    for i in range(1, r + 1):
        entry, in_c, not_c, tail = gadget[i]
        if i < r:
            B.on(xs[i - 1], "b", xs[i])
        B.on(xs[i - 1], "a", entry[0])
        for l in range(d):
            B.on(entry[l], "b", entry[l + 1])
        B.on(entry[d], "a", top_body[1] if valuation.get(i, False) else bot_body[1])
        line = [entry[d]] + in_c + not_c + tail
        for p, q in zip(line, line[1:]):
            B.on(p, "b", q)
        B.on(tail[-1], "a", ub[0])
        app, not_app = appearances(inst, i)
        B.final.update(in_c[j - 1] for j in app)
        B.final.update(not_c[j - 1] for j in not_app)
        B.final.update(tail[t * r + (i - 1)] for t in range(T))

    delta = [[rej if q is None else q for q in row] for row in B.delta]
    dfa = Dfa(AB, delta, frozenset(B.final), init)
    if with_names:
        return dfa, list(B.names)
    return dfa


# --- audit -------------------------------------------------------------------

def _walk(dfa: Dfa, q: int, word: tuple) -> int:
    delta = dfa.delta
    for x in word:
        q = delta[q][x]
    return q


def accepted_in_word_set(dfa: Dfa, ws: ReductionWordSet, max_len: Optional[int] = None) -> int:
    """How many words of the set (of length <= max_len) the DFA accepts,
    computed block by block without expanding the set."""
    total = 0
    for block in ws.blocks():
        track = max_len is not None and block.max_length > max_len
        dist = {(dfa.init, 0): 1}
        for seg in block.segments:
            enc = [tuple(_CODE[c] for c in w) for w in seg]
            nxt: dict = {}
            for (q, ln), c in dist.items():
                for w in enc:
                    key = (_walk(dfa, q, w), ln + len(w) if track else 0)
                    nxt[key] = nxt.get(key, 0) + c
            dist = nxt
        total += sum(c for (q, ln), c in dist.items()
                     if q in dfa.final and (not track or ln <= max_len))
    return total


def words_up_to(ws: ReductionWordSet, m: int) -> int:
    """Size of the set restricted to words of length <= m."""
    if ws.max_length <= m:
        return len(ws)
    return accepted_in_word_set(_ACCEPT_ALL, ws, m)


_ACCEPT_ALL = Dfa(AB, ((0, 0),), frozenset({0}))


@dataclass(frozen=True)
class AuditReport:
    n_states: int
    state_bound: int
    sample_size: int
    accepts_sample: bool
    accepted_count: int
    error_count: int
    error_bound: int
    assumptions: dict
    index_overlaps: dict

    @property
    def fits(self) -> bool:
        return self.n_states <= self.state_bound

    @property
    def within_budget(self) -> bool:
        return self.error_count <= self.error_bound

    @property
    def suitable(self) -> bool:
        return self.fits and self.accepts_sample and self.within_budget

    def lines(self) -> list:
        out = [
            f"states={self.n_states} bound={self.state_bound} fits={_tf(self.fits)}",
            f"sample_size={self.sample_size} accepts_sample={_tf(self.accepts_sample)}",
            f"errors={self.error_count} budget={self.error_bound} within_budget={_tf(self.within_budget)}",
        ]
        out += [f"assumption_{k}={_tf(v)}" for k, v in self.assumptions.items()]
        out.append(f"index_overlaps={self.index_overlaps or 'none'}")
        out.append(f"suitable={_tf(self.suitable)}")
        return out


def _tf(b: bool) -> str:
    return "true" if b else "false"


def check_assumptions(params: ReductionParams, max_word_length: int) -> dict:
    r, s, M, T, k, d, n, m = params.r, params.s, params.M, params.T, params.k, params.d, params.n, params.m
    return {
        "states_cover_weights": n >= params.omega1 + params.omega2,
        "budget_covers_forced_errors": k >= M * r + s * (s + T - 1),
        "A_horizon": m >= 2 * max_word_length + max(r, d),
        "B_budget_below_MT": k < M * T,
        "C_states_below": n < d * (2 + r) + d,
        "D_budget_at_most": k <= s * (T + s - 1) + M * r,
    }


def audit_suitability(dfa: Dfa, ws: ReductionWordSet, params: ReductionParams,
                      inst: Optional[ApnSatInstance] = None) -> AuditReport:
    """Check state count, acceptance of the sample and the error budget.
    Errors are accepted words of length <= m that are not in the sample."""
    m = params.m
    size = words_up_to(ws, m)
    accepted_p = accepted_in_word_set(dfa, ws, m)
    total = count_accepted_up_to(dfa, m)
    overlaps = index_overlaps(inst.padded(), params) if inst is not None else {}
    return AuditReport(
        n_states=dfa.n_states,
        state_bound=params.n,
        sample_size=size,
        accepts_sample=accepted_p == size,
        accepted_count=total,
        error_count=total - accepted_p,
        error_bound=params.k,
        assumptions=check_assumptions(params, ws.max_length),
        index_overlaps=overlaps,
    )


def problem1_instance(ws: ReductionWordSet, params: ReductionParams) -> tuple:
    """(sample, n, count bound) for the decision problem: the count bound
    is the error budget plus the number of sample words of length <= m."""
    return ws.to_sample(), params.n, params.k + words_up_to(ws, params.m)


def problem1_bound(ws: ReductionWordSet, params: ReductionParams) -> int:
    return params.k + words_up_to(ws, params.m)


EXAMPLE_INSTANCE = ApnSatInstance(3, ((True, {1, 3}), (False, {2, 3})))
