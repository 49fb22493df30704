"""Reading and writing sample files, DFA JSON files and CSV bench records."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .automata import Alphabet, Dfa
from .errors import InvalidDfaError, ParseError
from .sample import Sample

PathLike = Union[str, Path]


def parse_sample(text: str) -> Sample:
    """Parse the sample format: a header ``<num_words> <alphabet_size>``
    followed by one ``<len> <sym> ...`` line per word."""
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise ParseError("empty sample file", 1)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError("header must be '<num_words> <alphabet_size>'", lineno)
    try:
        num_words, sigma = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError("header fields must be integers", lineno) from None
    if num_words < 0 or sigma < 1:
        raise ParseError("invalid header values", lineno)
    body = lines[1:]
    if len(body) != num_words:
        raise ParseError(f"header announces {num_words} words but {len(body)} follow", lineno)
    words = []
    for lineno, ln in body:
        try:
            fields = [int(x) for x in ln.split()]
        except ValueError:
            raise ParseError("non-integer token", lineno) from None
        length, syms = fields[0], fields[1:]
        if length != len(syms):
            raise ParseError(f"word length {length} does not match {len(syms)} symbols", lineno)
        for a in syms:
            if not 0 <= a < sigma:
                raise ParseError(f"symbol {a} outside alphabet of size {sigma}", lineno)
        words.append(tuple(syms))
    return Sample.from_words(words, sigma)


def format_sample(sample: Sample) -> str:
    words = sample.sorted_words()
    out = [f"{len(words)} {sample.sigma}"]
    for w in words:
        out.append(" ".join(str(x) for x in (len(w), *w)))
    return "\n".join(out) + "\n"


def read_sample(path: PathLike) -> Sample:
    return parse_sample(Path(path).read_text())


def write_sample(sample: Sample, path: PathLike) -> None:
    Path(path).write_text(format_sample(sample))


def dfa_to_json(dfa: Dfa) -> str:
    """Serialize with the initial state relabelled to 0."""
    d = dfa.canonical()
    doc = {
        "alphabet": list(d.alphabet.symbols),
        "states": d.n_states,
        "init": 0,
        "delta": [list(row) for row in d.delta],
        "final": sorted(d.final),
    }
    return json.dumps(doc, indent=None, separators=(", ", ": ")) + "\n"


def dfa_from_json(text: str) -> Dfa:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("DFA document must be an object")
    for key in ("alphabet", "states", "delta", "final"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")
    try:
        alphabet = Alphabet(tuple(doc["alphabet"]))
        n = int(doc["states"])
        delta = doc["delta"]
        if len(delta) != n:
            raise ParseError(f"'states' is {n} but delta has {len(delta)} rows")
        dfa = Dfa(alphabet, delta, frozenset(doc["final"]), int(doc.get("init", 0)))
    except ParseError:
        raise
    except InvalidDfaError as exc:
        raise ParseError(str(exc)) from None
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed DFA document: {exc}") from None
    return dfa


def read_dfa(path: PathLike) -> Dfa:
    return dfa_from_json(Path(path).read_text())


def write_dfa(dfa: Dfa, path: PathLike) -> None:
    Path(path).write_text(dfa_to_json(dfa))
