"""Complete pairs of rooted cluster subalgebras.

A complete pair with coefficient set fx ⊔ ex' is an ordered pair of
subseeds of the freezing at ex', each a gluing of indecomposable
components, whose exchangeable sets partition ex ∖ ex'; isolated frozen
variables are attached to both sides.  Enumerating these pairs over
freezings is the combinatorial classification of cotorsion pairs with a
given core; the categorical hypotheses are recorded as an assumption
flag, not verified.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Union

from .errors import NotExchangeable, SubsetBudgetExceeded
from .seed import Seed, component_structure, freeze, subseed

__all__ = [
    "CompletePair",
    "component_report",
    "enumerate_complete_pairs",
    "classify_cotorsion_pairs",
    "t_structure_pairs",
    "verify_complete_pair",
    "ASSUMPTION_NOTE",
]

ASSUMPTION_NOTE = (
    "cotorsion-pair representative; functorial finiteness of the core is "
    "assumed, not verified"
)

DEFAULT_SUBSET_LIMIT = 12


@dataclass(frozen=True)
class CompletePair:
    freezing: tuple  # names of ex'
    coefficient_set: tuple  # names of fx ⊔ ex'
    side1: tuple  # component indices of the freezing
    side2: tuple
    seed1: Seed
    seed2: Seed
    assumption: str = ASSUMPTION_NOTE


def _component_data(frozen_seed: Seed):
    comps, isolated = component_structure(frozen_seed.matrix)
    rows = frozen_seed.rows
    data = []
    for ex_pos, fx_pos in comps:
        data.append(
            (
                tuple(rows[i] for i in ex_pos),
                tuple(rows[i] for i in fx_pos),
            )
        )
    return data, tuple(rows[i] for i in isolated)


def _side_seed(frozen_seed: Seed, comps, indices, isolated) -> Seed:
    keep_ex = []
    keep_fx = set(isolated)
    for ci in indices:
        ex_vars, fx_vars = comps[ci]
        keep_ex.extend(ex_vars)
        keep_fx.update(fx_vars)
    return subseed(frozen_seed, keep_ex, keep_fx)


def component_report(seed: Seed, ex0: Iterable) -> dict:
    """Component partition of the freezing at ex0, by variable name."""
    ex0_vars = [seed.var(v) for v in ex0]
    frozen_seed = freeze(seed, ex0_vars)
    comps, isolated = _component_data(frozen_seed)
    return {
        "components": [
            {
                "exchangeable": [v.name for v in ex_vars],
                "frozen": [v.name for v in fx_vars],
            }
            for ex_vars, fx_vars in comps
        ],
        "isolated_frozen": [v.name for v in isolated],
    }


def enumerate_complete_pairs(seed: Seed, ex0: Iterable) -> tuple:
    """All ordered complete pairs for the freezing at ex0: one per
    assignment of the components to the two sides (2^c pairs)."""
    ex0_vars = [seed.var(v) for v in ex0]
    for v in ex0_vars:
        if v not in seed.matrix.ex:
            raise NotExchangeable(f"{v.name} is not exchangeable")
    frozen_seed = freeze(seed, ex0_vars)
    comps, isolated = _component_data(frozen_seed)
    c = len(comps)
    coefficient = tuple(v.name for v in seed.matrix.fx) + tuple(
        v.name for v in seed.matrix.ex if v in ex0_vars
    )
    pairs = []
    for mask in range(1 << c):
        side1 = tuple(ci for ci in range(c) if mask >> ci & 1)
        side2 = tuple(ci for ci in range(c) if not mask >> ci & 1)
        pairs.append(
            CompletePair(
                freezing=tuple(v.name for v in ex0_vars),
                coefficient_set=coefficient,
                side1=side1,
                side2=side2,
                seed1=_side_seed(frozen_seed, comps, side1, isolated),
                seed2=_side_seed(frozen_seed, comps, side2, isolated),
            )
        )
    return tuple(pairs)


def classify_cotorsion_pairs(
    seed: Seed,
    subsets: Union[Iterable, None] = None,
    allow_large: bool = False,
    subset_limit: int = DEFAULT_SUBSET_LIMIT,
) -> dict:
    """Complete pairs per freezing set, keyed by the ex0 name tuple.

    With subsets=None every subset of ex is used, refused beyond
    2^subset_limit freezings unless allow_large is set.
    """
    if subsets is None:
        ex = seed.matrix.ex
        if len(ex) > subset_limit and not allow_large:
            raise SubsetBudgetExceeded(
                f"{len(ex)} exchangeable variables give 2^{len(ex)} freezings; "
                "pass allow_large to enumerate them all"
            )
        subsets = [
            combo
            for size in range(len(ex) + 1)
            for combo in combinations([v.name for v in ex], size)
        ]
    out = {}
    for subset in subsets:
        names = tuple(seed.var(v).name for v in subset)
        out[names] = enumerate_complete_pairs(seed, names)
    return out


def t_structure_pairs(classification: dict) -> list:
    """Pairs without coefficients; nonempty exactly when the seed has no
    frozen variables and the freezing set is empty."""
    return [
        pair
        for pairs in classification.values()
        for pair in pairs
        if not pair.coefficient_set
    ]


def verify_complete_pair(seed: Seed, pair: CompletePair) -> bool:
    """Re-derive the definition's three clauses from scratch."""
    frozen_seed = freeze(seed, list(pair.freezing))
    comps, isolated = _component_data(frozen_seed)
    if set(pair.side1) & set(pair.side2):
        return False
    if set(pair.side1) | set(pair.side2) != set(range(len(comps))):
        return False
    # (1) both sides are gluings of components: exchangeable sets and the
    # adjacency-closed frozen sets must match the selection exactly
    for indices, side in ((pair.side1, pair.seed1), (pair.side2, pair.seed2)):
        want_ex = {v.name for ci in indices for v in comps[ci][0]}
        want_fx = {v.name for ci in indices for v in comps[ci][1]}
        want_fx |= {v.name for v in isolated}
        if {v.name for v in side.matrix.ex} != want_ex:
            return False
        if {v.name for v in side.matrix.fx} != want_fx:
            return False
    # (2) the exchangeable sets partition ex ∖ ex'
    ex1 = {v.name for v in pair.seed1.matrix.ex}
    ex2 = {v.name for v in pair.seed2.matrix.ex}
    ex_all = {v.name for v in seed.matrix.ex}
    if ex1 & ex2:
        return False
    if ex1 | ex2 | set(pair.freezing) != ex_all:
        return False
    if len(ex1) + len(ex2) + len(pair.freezing) != len(ex_all):
        return False
    # (3) isolated frozen variables lie on both sides
    iso = {v.name for v in isolated}
    fx1 = {v.name for v in pair.seed1.matrix.fx}
    fx2 = {v.name for v in pair.seed2.matrix.fx}
    return iso <= fx1 & fx2
