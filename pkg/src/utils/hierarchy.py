# src/utils/hierarchy.py
"""Finite levels of the constructible hierarchy and the codes read off them."""
import logging
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from src.models.borel_code import BorelCode, Kind, intersection, lazy, leaf, negate
from src.models.clopen import ClopenCode
from src.models.fin_structure import FinStructure
from src.models.formula import (Equal, Formula, Member, Not, Or, UnboundVariable, eval_formula,
                                format_formula, formula_size, free_variables)
from src.models.ordinal import ONE, Ordinal
from src.utils.constants import MAX_STRUCTURE_SIZE
from src.utils.errors import WorkbenchError

logger = logging.getLogger(__name__)

DEFINED_VAR = "x"


class TooLarge(WorkbenchError):
    pass


class NonInjectiveNumbering(WorkbenchError):
    pass


def _param(i: int) -> str:
    return f"z{i + 1}"


def candidate_definitions(s: FinStructure) -> List[Tuple[Formula, Tuple[int, ...]]]:
    """Formula-parameter pairs in canonical order: by size, then text, then parameters.

    This is a fixed pool rather than an enumeration of all formulas. On a
    finite extensional structure every subset is definable with parameters,
    by a disjunction of equalities, so the pool already reaches each
    definable set and ``def_step`` adds the same elements a full enumeration
    would.
    """
    x = DEFINED_VAR
    pool = [
        (Not(Equal(x, x)), ()),
        (Equal(x, x), ()),
    ]
    pool.extend((Member(x, _param(0)), (e,)) for e in s.domain)
    for k in range(1, s.size + 1):
        phi = Equal(x, _param(0))
        for i in range(1, k):
            phi = Or(phi, Equal(x, _param(i)))
        pool.extend((phi, params) for params in combinations(s.domain, k))
    return sorted(pool, key=lambda pair: (formula_size(pair[0]), format_formula(pair[0]), pair[1]))


def defined_set(s: FinStructure, phi: Formula, params: Sequence[int]) -> frozenset:
    assignment = {_param(i): p for i, p in enumerate(params)}
    return frozenset(e for e in s.domain if eval_formula(s, phi, {**assignment, DEFINED_VAR: e}))


def _set_label(s: FinStructure, members) -> str:
    if not members:
        return "0"
    return "{" + ",".join(s.name(e) for e in sorted(members)) + "}"


def def_step(s: FinStructure) -> FinStructure:
    """Add one element for every definable subset not already represented."""
    known = set(s.member_sets())
    fresh = []
    for phi, params in candidate_definitions(s):
        subset = defined_set(s, phi, params)
        if subset in known:
            continue
        known.add(subset)
        fresh.append(subset)
        logger.debug("new element from %s with %s", format_formula(phi), params)
    return s.extended(fresh, [_set_label(s, members) for members in fresh])


def build_hierarchy(n: int, cap: int = MAX_STRUCTURE_SIZE) -> List[FinStructure]:
    levels = [FinStructure.empty()]
    for stage in range(n):
        current = levels[-1]
        if 2 ** current.size > cap:
            raise TooLarge(f"level {stage + 1} would have {2 ** current.size} elements, over the cap of {cap}")
        following = def_step(current)
        if not current.is_initial_segment_of(following):
            raise AssertionError(f"level {stage} is not an initial segment of level {stage + 1}")
        levels.append(following)
        logger.info("level %d has %d elements", stage + 1, following.size)
    return levels


def natural_numbering(s: FinStructure) -> Dict[int, int]:
    """Map n to the element coding the von Neumann numeral n, for every numeral present."""
    by_members = s.member_sets()
    numbering = {}
    members = frozenset()
    while members in by_members:
        n = len(numbering)
        numbering[n] = by_members[members]
        members = members | {numbering[n]}
    return numbering


def code_of_definable(s: FinStructure, phi: Formula, params: Mapping[str, int],
                      h: Mapping[int, int], var: str = DEFINED_VAR) -> BorelCode:
    """A code for the reals represented, through ``h``, by some element satisfying ``phi``.

    Element ``e`` represents X when X(n) = 1 exactly for the n with h(n) a member
    of ``e``, over the positions 0 .. max(h); unnumbered positions are 0.

    Only that window is checked. Bits past max(h) are unconstrained, so a
    formula satisfied by the empty element codes every point that is 0 on
    the window, not just the all-zero point.
    """
    if len(set(h.values())) != len(h):
        raise NonInjectiveNumbering("the numbering sends two numbers to the same element")
    missing = free_variables(phi) - {var} - set(params)
    if missing:
        raise UnboundVariable(f"no values for {', '.join(sorted(missing))}")
    # bits past the window stay free
    window = range(max(h) + 1) if h else range(0)
    elements = list(s.domain)

    def branch(i):
        element = elements[i]
        satisfied = eval_formula(s, phi, {**params, var: element})
        decided = leaf(ClopenCode.full() if satisfied else ClopenCode.empty(), rank=Ordinal())

        def position(n):
            bit = int(n in h and (h[n], element) in s.membership)
            return leaf(ClopenCode.bit_equals(n, bit), rank=Ordinal())

        represents = lazy(Kind.INTERSECTION, position, count=len(window), rank=ONE)
        return intersection(decided, represents, rank=Ordinal.natural(2))

    return lazy(Kind.UNION, branch, count=len(elements), rank=Ordinal.natural(3))


def layered_difference(codes: Sequence[BorelCode]) -> List[BorelCode]:
    """The k-th output denotes the k-th input minus every earlier one."""
    out = []
    for k, code in enumerate(codes):
        parts = (code,) + tuple(negate(c) for c in codes[:k])
        ranks = [p.rank for p in parts]
        rank = None if any(r is None for r in ranks) else max(ranks) + ONE
        out.append(intersection(*parts, rank=rank))
    return out


def least_stage(levels: Sequence[FinStructure], sentence: Formula,
                params: Optional[Mapping[str, int]] = None) -> Optional[int]:
    """Index of the first level satisfying ``sentence``, or None."""
    params = dict(params or {})
    for stage, level in enumerate(levels):
        if any(e >= level.size for e in params.values()):
            continue
        if eval_formula(level, sentence, params):
            return stage
    return None


def stage_codes(levels: Sequence[FinStructure], phi: Formula,
                params: Optional[Mapping[str, int]] = None) -> Tuple[List[BorelCode], List[BorelCode]]:
    """Codes for every level, numbered by the top level's numerals, and their layered differences."""
    params = dict(params or {})
    h = natural_numbering(levels[-1])
    hats = [code_of_definable(level, phi, params, h) for level in levels]
    return hats, layered_difference(hats)
