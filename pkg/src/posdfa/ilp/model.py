"""A small in-memory representation of integer linear programs."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional


@dataclass(frozen=True)
class IlpVariable:
    name: str
    kind: str  # "binary" or "integer"
    lower: int = 0
    upper: Optional[int] = None

    @property
    def ub(self) -> int:
        return 1 if self.kind == "binary" else self.upper


@dataclass(frozen=True)
class IlpConstraint:
    name: str
    terms: tuple  # ((coef, var_name), ...)
    sense: str  # "<=", ">=" or "="
    rhs: int


@dataclass
class IlpModel:
    variables: list = field(default_factory=list)
    constraints: list = field(default_factory=list)
    objective: tuple = ()  # ((coef, var_name), ...), minimised
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self._index = {v.name: v for v in self.variables}

    def add_variable(self, name: str, kind: str, lower: int = 0, upper: Optional[int] = None) -> str:
        if name in self._index:
            raise ValueError(f"duplicate variable {name}")
        v = IlpVariable(name, kind, lower, upper)
        self.variables.append(v)
        self._index[name] = v
        return name

    def add_constraint(self, name: str, terms, sense: str, rhs: int) -> None:
        self.constraints.append(IlpConstraint(name, tuple(terms), sense, rhs))

    def variable(self, name: str) -> IlpVariable:
        return self._index[name]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def value_of(self, assignment: Mapping[str, object], name: str):
        return assignment.get(name, 0)

    def objective_value(self, assignment: Mapping[str, object]):
        return sum(c * assignment.get(v, 0) for c, v in self.objective)

    def violations(self, assignment: Mapping[str, object]):
        """Yield (name, reason) for every violated bound, integrality
        requirement or constraint, in model order."""
        for name in assignment:
            if name not in self._index:
                yield name, "unknown variable"
        for v in self.variables:
            x = assignment.get(v.name, 0)
            if Fraction(x).denominator != 1:
                yield v.name, "fractional value"
                continue
            if x < v.lower or (v.ub is not None and x > v.ub):
                yield v.name, "bound"
        vals = {k: (x if isinstance(x, int) else Fraction(x)) for k, x in assignment.items()}
        for con in self.constraints:
            lhs = sum(c * vals.get(v, 0) for c, v in con.terms)
            ok = lhs <= con.rhs if con.sense == "<=" else lhs >= con.rhs if con.sense == ">=" else lhs == con.rhs
            if not ok:
                yield con.name, "constraint"

    def first_violation(self, assignment: Mapping[str, object]):
        return next(iter(self.violations(assignment)), None)


@dataclass(frozen=True)
class IlpSolution:
    status: str  # optimal | feasible | infeasible
    values: dict

    @property
    def is_feasible(self) -> bool:
        return self.status in ("optimal", "feasible")
