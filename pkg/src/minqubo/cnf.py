"""DIMACS CNF ingestion and direct clause evaluation."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    ClauseCountMismatch,
    DuplicateVariableInClause,
    LengthMismatch,
    MalformedToken,
    MissingHeader,
    OversizedClause,
    VariableOutOfRange,
)

MAX_CLAUSE_LEN = 3


@dataclass(frozen=True)
class Literal:
    variable: int
    negated: bool = False

    @classmethod
    def from_int(cls, lit: int) -> "Literal":
        return cls(abs(lit), lit < 0)

    def to_int(self) -> int:
        return -self.variable if self.negated else self.variable

    def value(self, bit: int) -> bool:
        return bool(bit) != self.negated


@dataclass(frozen=True)
class Clause:
    literals: tuple[Literal, ...]

    def __post_init__(self):
        if not 1 <= len(self.literals) <= MAX_CLAUSE_LEN:
            raise OversizedClause(
                f"clause has {len(self.literals)} literals, expected 1..{MAX_CLAUSE_LEN}")
        seen: set[int] = set()
        for lit in self.literals:
            if lit.variable < 1:
                raise VariableOutOfRange(f"variable index {lit.variable} < 1")
            if lit.variable in seen:
                raise DuplicateVariableInClause(
                    f"variable {lit.variable} repeated in clause {self.to_ints()}")
            seen.add(lit.variable)

    @classmethod
    def from_ints(cls, lits: Sequence[int]) -> "Clause":
        return cls(tuple(Literal.from_int(v) for v in lits))

    def to_ints(self) -> list[int]:
        return [lit.to_int() for lit in self.literals]

    def satisfied(self, assignment: Sequence[int]) -> bool:
        return any(lit.value(assignment[lit.variable - 1]) for lit in self.literals)

    def __len__(self) -> int:
        return len(self.literals)


@dataclass(frozen=True)
class CnfInstance:
    num_vars: int
    clauses: tuple[Clause, ...]
    source_name: str = ""

    def __post_init__(self):
        if len(self.clauses) < 1:
            raise ClauseCountMismatch("instance must contain at least one clause")
        for clause in self.clauses:
            for lit in clause.literals:
                if lit.variable > self.num_vars:
                    raise VariableOutOfRange(
                        f"variable {lit.variable} exceeds declared count {self.num_vars}")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def fingerprint(self) -> str:
        """Short content hash, independent of the source label."""
        body = to_dimacs(self, comments=False).encode()
        return hashlib.sha256(body).hexdigest()[:16]


def parse_dimacs(text: str | bytes, source_name: str = "") -> CnfInstance:
    """Parse DIMACS CNF text into a validated instance.

    Clauses may span lines. A ``%`` line ends the clause section (SATLIB
    trailer) and bare ``0`` lines between clauses are ignored.
    """
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8", errors="replace")

    num_vars = num_clauses = None
    clauses: list[Clause] = []
    current: list[int] = []

    def close_clause():
        if len(current) > MAX_CLAUSE_LEN:
            raise OversizedClause(f"clause {current} has more than {MAX_CLAUSE_LEN} literals")
        for v in current:
            if abs(v) > num_vars:
                raise VariableOutOfRange(f"literal {v} exceeds declared variable count {num_vars}")
        clauses.append(Clause.from_ints(current))
        current.clear()

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if num_vars is not None:
                raise MalformedToken(f"line {lineno}: second problem line")
            if len(parts) != 4 or parts[1] != "cnf":
                raise MalformedToken(f"line {lineno}: bad problem line {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise MalformedToken(f"line {lineno}: bad problem line {line!r}") from None
            if num_vars < 0 or num_clauses < 0:
                raise MalformedToken(f"line {lineno}: negative counts in {line!r}")
            continue
        if num_vars is None:
            raise MissingHeader(f"line {lineno}: clause data before 'p cnf' header")
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError:
                raise MalformedToken(f"line {lineno}: token {tok!r} is not an integer") from None
            if v == 0:
                if current:
                    close_clause()
            else:
                current.append(v)

    if num_vars is None:
        raise MissingHeader("no 'p cnf' header found")
    if current:
        close_clause()
    if len(clauses) != num_clauses:
        raise ClauseCountMismatch(f"header declares {num_clauses} clauses, found {len(clauses)}")
    return CnfInstance(num_vars, tuple(clauses), source_name)


def to_dimacs(instance: CnfInstance, comments: bool = True) -> str:
    lines = []
    if comments and instance.source_name:
        lines.append(f"c {instance.source_name}")
    lines.append(f"p cnf {instance.num_vars} {instance.num_clauses}")
    for clause in instance.clauses:
        lines.append(" ".join(str(v) for v in clause.to_ints()) + " 0")
    return "\n".join(lines) + "\n"


def count_satisfied(instance: CnfInstance, assignment: Sequence[int]) -> int:
    """Number of clauses with at least one true literal."""
    if len(assignment) != instance.num_vars:
        raise LengthMismatch(
            f"assignment has length {len(assignment)}, instance has {instance.num_vars} variables")
    return sum(1 for clause in instance.clauses if clause.satisfied(assignment))


def random_3sat(num_vars: int, num_clauses: int, seed: int, name: str | None = None) -> CnfInstance:
    """Uniform random 3-SAT: three distinct variables per clause, each negated with p=1/2."""
    if num_vars < 3:
        raise ValueError("need at least 3 variables for 3-literal clauses")
    rng = random.Random(seed)
    clauses = []
    for _ in range(num_clauses):
        vs = rng.sample(range(1, num_vars + 1), 3)
        clauses.append(Clause.from_ints([v if rng.random() < 0.5 else -v for v in vs]))
    return CnfInstance(num_vars, tuple(clauses), name or f"rand-n{num_vars}-m{num_clauses}-s{seed}")
