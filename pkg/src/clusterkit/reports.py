"""JSON payload builders shared by the CLI and the HTTP service."""

from __future__ import annotations

from typing import Union

from .morphism import (
    IdealVerdict,
    InjectionReport,
    MorphismSpec,
    MorphismVerdict,
    Witness,
)
from .seed import MutationClass, Seed, decompose_seed, digest, seed_to_json

__all__ = [
    "witness_json",
    "verdict_json",
    "ideal_json",
    "injection_json",
    "spec_json",
    "decomposition_json",
    "pair_json",
    "graph_json",
]


def witness_json(w: Union[Witness, None]):
    if w is None:
        return None
    return {
        "axiom": w.axiom,
        "variable": w.variable,
        "sequence": list(w.sequence),
        "lhs": w.lhs,
        "rhs": w.rhs,
        "detail": w.detail,
    }


def verdict_json(v: MorphismVerdict) -> dict:
    return {
        "cm1": v.cm1,
        "cm2": v.cm2,
        "cm3": v.cm3,
        "ok": v.ok,
        "inducible": v.inducible,
        "checked_depth": v.checked_depth,
        "witness": witness_json(v.witness),
    }


def ideal_json(v: IdealVerdict) -> dict:
    return {
        "status": v.status,
        "fast_path": v.fast_path,
        "witness": None if v.witness is None else str(v.witness),
        "detail": v.detail,
    }


def injection_json(r: InjectionReport) -> dict:
    return {
        "ex0": list(r.ex0),
        "ex1": list(r.ex1),
        "ex2": list(r.ex2),
        "fx0": list(r.fx0),
        "fx1": list(r.fx1),
        "is_section": r.is_section,
        "component_map": [
            {
                "source": m.source_index,
                "freezing": m.freezing_index,
                "opposite": m.opposite,
            }
            for m in r.component_map
        ],
    }


def spec_json(spec: MorphismSpec) -> dict:
    out = {
        "source": seed_to_json(spec.source),
        "target": seed_to_json(spec.target),
        "images": {v.name: str(p) for v, p in spec.images.items()},
    }
    if spec.generator_table:
        out["generator_table"] = {
            str(k): str(v) for k, v in spec.generator_table.items()
        }
    return out


def decomposition_json(seed: Seed) -> dict:
    dec = decompose_seed(seed)
    return {
        "components": [seed_to_json(c) for c in dec.components],
        "identification": {
            orig.name: [[ci, copy.name] for ci, copy in copies]
            for orig, copies in dec.identification.items()
        },
        "isolated_frozen": [v.name for v in dec.isolated_frozen],
    }


def pair_json(pair) -> dict:
    return {
        "freezing": list(pair.freezing),
        "coefficient_set": list(pair.coefficient_set),
        "side1": {"components": list(pair.side1), "seed": seed_to_json(pair.seed1)},
        "side2": {"components": list(pair.side2), "seed": seed_to_json(pair.seed2)},
        "assumption": pair.assumption,
    }


def graph_json(mclass: MutationClass, current: Union[str, None] = None) -> dict:
    nodes = []
    for s in mclass.seeds:
        dg = digest(s)
        node = {
            "digest": dg,
            "variables": [str(v) for v in s.values[: len(s.matrix.ex)]],
        }
        if current is not None:
            node["current"] = dg == current
        nodes.append(node)
    edges = sorted({tuple(e) for e in mclass.edges})
    return {
        "nodes": nodes,
        "edges": [list(e) for e in edges],
        "complete": mclass.complete,
        "depth_reached": mclass.depth_reached,
    }
