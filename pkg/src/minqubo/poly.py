"""Multilinear pseudo-Boolean polynomials and the Max 3-SAT reward objective."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping, Sequence

from .cnf import Clause, CnfInstance
from .errors import UnassignedVariable

Monomial = tuple[int, ...]


def monomial(*variables: int) -> Monomial:
    """Normalize a product of variables: x*x == x, indices sorted."""
    return tuple(sorted(set(variables)))


class Polynomial:
    """Immutable multilinear polynomial with integer coefficients.

    ``terms`` maps sorted variable tuples to coefficients; the empty tuple
    holds the constant. Zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        acc: dict[Monomial, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coef in items:
            acc[monomial(*mono)] += int(coef)
        self._terms = {m: c for m, c in sorted(acc.items(), key=_order) if c != 0}
        self._hash = None

    @classmethod
    def constant(cls, value: int) -> "Polynomial":
        return cls({(): value})

    @classmethod
    def var(cls, i: int) -> "Polynomial":
        return cls({(i,): 1})

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, *variables: int) -> int:
        return self._terms.get(monomial(*variables), 0)

    @property
    def offset(self) -> int:
        return self._terms.get((), 0)

    @property
    def degree(self) -> int:
        return max((len(m) for m in self._terms), default=0)

    @property
    def variables(self) -> set[int]:
        return {v for m in self._terms for v in m}

    def __add__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(other)
        return Polynomial(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial({m: c * other for m, c in self._terms.items()})
        out = [(a + b, ca * cb) for a, ca in self._terms.items() for b, cb in other._terms.items()]
        return Polynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __len__(self):
        return len(self._terms)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)})"


def _order(item):
    mono = item[0]
    return (len(mono), mono)


def format_polynomial(poly: Polynomial) -> str:
    if not len(poly):
        return "0"
    parts = []
    for mono, coef in poly.items():
        body = "*".join(f"x{v}" for v in mono)
        if not body:
            parts.append(f"{coef:+d}")
        elif coef == 1:
            parts.append(f"+{body}")
        elif coef == -1:
            parts.append(f"-{body}")
        else:
            parts.append(f"{coef:+d}{body}")
    return " ".join(parts).lstrip("+")


def literal_value(variable: int, negated: bool) -> Polynomial:
    x = Polynomial.var(variable)
    return 1 - x if negated else x


def clause_reward(clause: Clause) -> Polynomial:
    """Polynomial equal to 1 on assignments satisfying the clause, 0 otherwise.

    Built as ``1 - prod(1 - v(lit))``; for three literals this expands to the
    four familiar cases by negation count.
    """
    falsified = Polynomial.constant(1)
    for lit in clause.literals:
        falsified = falsified * (1 - literal_value(lit.variable, lit.negated))
    return 1 - falsified


def build_objective(instance: CnfInstance) -> Polynomial:
    """Sum of clause rewards; its value at x is the number of satisfied clauses."""
    terms: list[tuple[Monomial, int]] = []
    for clause in instance.clauses:
        terms.extend(clause_reward(clause).items())
    return Polynomial(terms)


def evaluate(poly: Polynomial, assignment: Sequence[int]) -> int:
    """Exact value of ``poly`` with variable i bound to ``assignment[i-1]``."""
    n = len(assignment)
    total = 0
    for mono, coef in poly.items():
        if mono and mono[-1] > n:
            raise UnassignedVariable(f"variable x{mono[-1]} has no value (assignment length {n})")
        if all(assignment[v - 1] for v in mono):
            total += coef
    return total
