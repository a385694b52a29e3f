# src/models/formula.py
"""First-order formulas over the membership signature."""
from dataclasses import dataclass
from typing import FrozenSet, Union

from src.utils.errors import WorkbenchError


class UnboundVariable(WorkbenchError):
    pass


@dataclass(frozen=True)
class Member:
    left: str
    right: str


@dataclass(frozen=True)
class Equal:
    left: str
    right: str


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[Member, Equal, Const, Not, And, Or, Exists, Forall]


def free_variables(phi: Formula) -> FrozenSet[str]:
    if isinstance(phi, (Member, Equal)):
        return frozenset({phi.left, phi.right})
    if isinstance(phi, Const):
        return frozenset()
    if isinstance(phi, Not):
        return free_variables(phi.body)
    if isinstance(phi, (And, Or)):
        return free_variables(phi.left) | free_variables(phi.right)
    if isinstance(phi, (Exists, Forall)):
        return free_variables(phi.body) - {phi.var}
    raise TypeError(f"not a formula: {phi!r}")


def formula_size(phi: Formula) -> int:
    """Number of atoms and connectives."""
    if isinstance(phi, (Member, Equal, Const)):
        return 1
    if isinstance(phi, Not):
        return 1 + formula_size(phi.body)
    if isinstance(phi, (And, Or)):
        return 1 + formula_size(phi.left) + formula_size(phi.right)
    if isinstance(phi, (Exists, Forall)):
        return 1 + formula_size(phi.body)
    raise TypeError(f"not a formula: {phi!r}")


def format_formula(phi: Formula) -> str:
    return _fmt(phi, 0, True)


def _fmt(phi, level, at_end):
    if isinstance(phi, Member):
        return f"in({phi.left},{phi.right})"
    if isinstance(phi, Equal):
        return f"{phi.left} = {phi.right}"
    if isinstance(phi, Const):
        return "true" if phi.value else "false"
    if isinstance(phi, Not):
        return "!" + _fmt(phi.body, 3, at_end)
    if isinstance(phi, Or):
        text = _fmt(phi.left, 1, False) + " | " + _fmt(phi.right, 2, at_end or level > 1)
        return f"({text})" if level > 1 else text
    if isinstance(phi, And):
        text = _fmt(phi.left, 2, False) + " & " + _fmt(phi.right, 3, at_end or level > 2)
        return f"({text})" if level > 2 else text
    if isinstance(phi, (Exists, Forall)):
        word = "exists" if isinstance(phi, Exists) else "forall"
        # a quantifier's scope runs to the right, so it needs parentheses unless it ends the text
        text = f"{word} {phi.var}. {_fmt(phi.body, 0, True)}"
        return text if at_end else f"({text})"
    raise TypeError(f"not a formula: {phi!r}")


def eval_formula(structure, phi: Formula, assignment) -> bool:
    if isinstance(phi, Member):
        return (_lookup(assignment, phi.left), _lookup(assignment, phi.right)) in structure.membership
    if isinstance(phi, Equal):
        return _lookup(assignment, phi.left) == _lookup(assignment, phi.right)
    if isinstance(phi, Const):
        return phi.value
    if isinstance(phi, Not):
        return not eval_formula(structure, phi.body, assignment)
    if isinstance(phi, And):
        return eval_formula(structure, phi.left, assignment) and eval_formula(structure, phi.right, assignment)
    if isinstance(phi, Or):
        return eval_formula(structure, phi.left, assignment) or eval_formula(structure, phi.right, assignment)
    if isinstance(phi, Exists):
        return any(eval_formula(structure, phi.body, {**assignment, phi.var: e}) for e in structure.domain)
    if isinstance(phi, Forall):
        return all(eval_formula(structure, phi.body, {**assignment, phi.var: e}) for e in structure.domain)
    raise TypeError(f"not a formula: {phi!r}")


def _lookup(assignment, var):
    try:
        return assignment[var]
    except KeyError:
        raise UnboundVariable(f"variable {var!r} has no value") from None
