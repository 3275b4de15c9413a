"""DIMACS export of arrow queries and a small DPLL evaluator.

Copy ``i`` getting color ``c`` is variable ``i * r + c + 1``. The formula
is satisfiable exactly when the arrow fails; a model decodes to a
counterexample coloring.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations

from polyramsey.arrow import ArrowInstance, ArrowQuery, build_instance
from polyramsey.budget import SearchBudget, resolve_budget
from polyramsey.exceptions import InvalidInputError

logger = logging.getLogger(__name__)

Clause = tuple[int, ...]


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...]
    comments: tuple[str, ...] = field(default=())

    def to_dimacs(self) -> str:
        lines = [f"c {line}" for line in self.comments]
        lines.append(f"p cnf {self.num_vars} {len(self.clauses)}")
        lines.extend(
            " ".join(map(str, (*clause, 0))) for clause in self.clauses
        )
        return "\n".join(lines) + "\n"


def variable(copy: int, color: int, r: int) -> int:
    return copy * r + color + 1


def encode_instance(instance: ArrowInstance) -> CnfFormula:
    """Clauses saying "this coloring leaves every B' bichromatic"."""
    r = instance.r
    count = len(instance.a_copies)
    clauses: list[Clause] = []
    for copy in range(count):
        clauses.append(tuple(variable(copy, c, r) for c in range(r)))
        for c1, c2 in combinations(range(r), 2):
            clauses.append((-variable(copy, c1, r), -variable(copy, c2, r)))
    for edge in instance.edges:
        for c in range(r):
            clauses.append(tuple(-variable(copy, c, r) for copy in edge))
    comments = [
        f"arrow negation: {count} copies of A, "
        f"{len(instance.edges)} copies of B, {r} colors",
        "satisfiable iff the arrow fails",
    ]
    comments.extend(
        f"var {variable(copy, c, r)} = copy {copy} "
        f"{sorted(instance.a_copies[copy].vertices)} color {c}"
        for copy in range(count)
        for c in range(r)
    )
    logger.debug(
        "cnf: %d variables, %d clauses for %d copies",
        count * r,
        len(clauses),
        count,
    )
    return CnfFormula(count * r, tuple(clauses), tuple(comments))


def export_cnf(
    q: ArrowQuery, *, budget: SearchBudget | None = None
) -> CnfFormula:
    """Encode the negation of ``C -> (B)^A_r`` as CNF."""
    return encode_instance(build_instance(q, budget=budget))


def parse_dimacs(text: str) -> CnfFormula:
    """Read DIMACS CNF; comment lines are kept, clauses may span lines."""
    comments: list[str] = []
    header: tuple[int, int] | None = None
    literals: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            comments.append(line[1:].strip())
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InvalidInputError("bad DIMACS problem line", value=line)
            header = (int(parts[2]), int(parts[3]))
            continue
        try:
            literals.extend(int(tok) for tok in line.split())
        except ValueError as exc:
            raise InvalidInputError("bad DIMACS clause", value=line) from exc
    if header is None:
        raise InvalidInputError("DIMACS text has no problem line")
    clauses: list[Clause] = []
    current: list[int] = []
    for lit in literals:
        if lit == 0:
            clauses.append(tuple(current))
            current = []
        else:
            current.append(lit)
    if current:
        raise InvalidInputError("last DIMACS clause is not terminated")
    num_vars, expected = header
    if len(clauses) != expected:
        raise InvalidInputError(
            f"DIMACS header announces {expected} clauses, found {len(clauses)}"
        )
    if any(abs(lit) > num_vars for clause in clauses for lit in clause):
        raise InvalidInputError("literal beyond the declared variable count")
    return CnfFormula(num_vars, tuple(clauses), tuple(comments))


def _simplify(
    clauses: Iterable[Clause], literal: int
) -> list[Clause] | None:
    """Set ``literal`` true; None signals an empty clause."""
    reduced: list[Clause] = []
    for clause in clauses:
        if literal in clause:
            continue
        if -literal in clause:
            shorter = tuple(x for x in clause if x != -literal)
            if not shorter:
                return None
            reduced.append(shorter)
        else:
            reduced.append(clause)
    return reduced


def solve_cnf(
    cnf: CnfFormula, *, budget: SearchBudget | None = None
) -> dict[int, bool] | None:
    """DPLL with unit propagation; returns a total model or None."""
    actual = resolve_budget(budget)
    if any(not clause for clause in cnf.clauses):
        return None

    def search(
        clauses: list[Clause], assigned: dict[int, bool]
    ) -> dict[int, bool] | None:
        actual.tick()
        while True:
            unit = next((c[0] for c in clauses if len(c) == 1), None)
            if unit is None:
                break
            assigned = {**assigned, abs(unit): unit > 0}
            simplified = _simplify(clauses, unit)
            if simplified is None:
                return None
            clauses = simplified
        if not clauses:
            return assigned
        literal = clauses[0][0]
        for choice in (literal, -literal):
            simplified = _simplify(clauses, choice)
            if simplified is None:
                continue
            model = search(simplified, {**assigned, abs(choice): choice > 0})
            if model is not None:
                return model
        return None

    model = search(list(cnf.clauses), {})
    if model is None:
        logger.debug("dpll: unsatisfiable after %d nodes", actual.nodes)
        return None
    return {v: model.get(v, False) for v in range(1, cnf.num_vars + 1)}


def decode_model(
    model: dict[int, bool], copies: int, r: int
) -> tuple[int, ...]:
    """Coloring read off a model of :func:`encode_instance`'s output."""
    coloring = []
    for copy in range(copies):
        colors = [c for c in range(r) if model.get(variable(copy, c, r))]
        if len(colors) != 1:
            raise InvalidInputError(
                f"model gives copy {copy} {len(colors)} colors"
            )
        coloring.append(colors[0])
    return tuple(coloring)


def satisfies(cnf: CnfFormula, model: dict[int, bool]) -> bool:
    return all(
        any(model.get(abs(lit), False) == (lit > 0) for lit in clause)
        for clause in cnf.clauses
    )


def decode_sequence(
    model: Sequence[int], copies: int, r: int
) -> tuple[int, ...]:
    """Decode a model given as a signed literal list (solver output)."""
    return decode_model({abs(x): x > 0 for x in model if x}, copies, r)
