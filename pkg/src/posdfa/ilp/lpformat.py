"""CPLEX-LP text output and the plain-text solution format.

Solution files start with ``STATUS <optimal|feasible|infeasible>`` and
then hold one ``<variable> <value>`` pair per line. Variables that are
not listed take the value 0.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import SolverProtocolError
from .model import IlpModel, IlpSolution

_TERMS_PER_LINE = 8


def _expr(terms) -> list:
    chunks = []
    for i, (c, v) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = v if mag == 1 else f"{mag} {v}"
        if i == 0:
            chunks.append(body if sign == "+" else f"- {body}")
        else:
            chunks.append(f"{sign} {body}")
    lines = []
    for i in range(0, len(chunks), _TERMS_PER_LINE):
        lines.append(" ".join(chunks[i:i + _TERMS_PER_LINE]))
    return lines or ["0"]


def emit_lp(model: IlpModel) -> str:
    """Deterministic LP document: same model, same bytes."""
    out = ["\\ positive-sample DFA model", "Minimize"]
    if model.objective:
        obj = _expr(model.objective)
    else:
        obj = ["0 xF"]
    out.append(f" obj: {obj[0]}")
    out.extend(f"   {ln}" for ln in obj[1:])
    out.append("Subject To")
    for con in model.constraints:
        body = _expr(con.terms)
        rel = "<=" if con.sense == "<=" else ">=" if con.sense == ">=" else "="
        if len(body) == 1:
            out.append(f" {con.name}: {body[0]} {rel} {con.rhs}")
        else:
            out.append(f" {con.name}: {body[0]}")
            out.extend(f"   {ln}" for ln in body[1:-1])
            out.append(f"   {body[-1]} {rel} {con.rhs}")
    out.append("Bounds")
    for v in model.variables:
        if v.kind == "integer":
            upper = "+inf" if v.upper is None else str(v.upper)
            out.append(f" {v.lower} <= {v.name} <= {upper}")
    generals = [v.name for v in model.variables if v.kind == "integer"]
    binaries = [v.name for v in model.variables if v.kind == "binary"]
    if generals:
        out.append("General")
        out.extend(_wrap(generals))
    if binaries:
        out.append("Binary")
        out.extend(_wrap(binaries))
    out.append("End")
    return "\n".join(out) + "\n"


def _wrap(names, per_line: int = 10) -> list:
    return [" " + " ".join(names[i:i + per_line]) for i in range(0, len(names), per_line)]


def _number(token: str):
    try:
        return int(token)
    except ValueError:
        pass
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise SolverProtocolError(f"cannot read value {token!r}") from None
    return int(value) if value.denominator == 1 else float(token)


def parse_solution(text: str) -> IlpSolution:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise SolverProtocolError("empty solution file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "STATUS":
        raise SolverProtocolError("solution file must start with 'STATUS <status>'")
    status = head[1].lower()
    if status not in ("optimal", "feasible", "infeasible"):
        raise SolverProtocolError(f"unknown status {head[1]!r}")
    values = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise SolverProtocolError(f"malformed solution line {ln!r}")
        values[parts[0]] = _number(parts[1])
    return IlpSolution(status, values)


def format_solution(solution: IlpSolution) -> str:
    out = [f"STATUS {solution.status}"]
    out.extend(f"{k} {v}" for k, v in solution.values.items())
    return "\n".join(out) + "\n"
