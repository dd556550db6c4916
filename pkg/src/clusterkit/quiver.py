"""Ice valued quivers and the bijection with extended skew-symmetrizable
matrices.

Principal arrows (between exchangeable vertices) carry a valuation pair
(v1, v2); arrows incident to frozen vertices carry a plain multiplicity.
There are no loops, no 2-cycles, and no arrows between frozen vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import NotFrozen
from .laurent import VarId
from .seed import ExtMatrix, Seed, decompose_seed, glue_seeds, initial_seed

__all__ = [
    "ValuedArrow",
    "MultiArrow",
    "IceQuiver",
    "DecompositionResult",
    "matrix_to_quiver",
    "quiver_to_matrix",
    "quiver_of_seed",
    "seed_of_quiver",
    "is_indecomposable",
    "decompose",
    "glue",
    "to_dot",
]


@dataclass(frozen=True)
class ValuedArrow:
    """Arrow between exchangeable vertices with valuation (v1, v2)."""

    source: VarId
    target: VarId
    v1: int
    v2: int


@dataclass(frozen=True)
class MultiArrow:
    """Bundle of `mult` parallel arrows incident to a frozen vertex."""

    source: VarId
    target: VarId
    mult: int


@dataclass(frozen=True)
class IceQuiver:
    exchangeable: tuple
    frozen: tuple
    valued_arrows: tuple
    frozen_arrows: tuple
    symmetrizer: tuple  # aligned with exchangeable, positive integers

    def __post_init__(self):
        ex = set(self.exchangeable)
        fr = set(self.frozen)
        if ex & fr:
            raise ValueError("a vertex cannot be both exchangeable and frozen")
        if len(self.symmetrizer) != len(self.exchangeable):
            raise ValueError("symmetrizer must cover the exchangeable vertices")
        if any(d <= 0 for d in self.symmetrizer):
            raise ValueError("symmetrizer entries must be positive")
        seen_pairs = set()
        for a in self.valued_arrows + self.frozen_arrows:
            if a.source == a.target:
                raise ValueError(f"loop at {a.source.name}")
            if (a.target, a.source) in seen_pairs or (a.source, a.target) in seen_pairs:
                raise ValueError(
                    f"parallel or 2-cycle arrows between {a.source.name} and {a.target.name}"
                )
            seen_pairs.add((a.source, a.target))
        d = {v: self.symmetrizer[i] for i, v in enumerate(self.exchangeable)}
        for a in self.valued_arrows:
            if a.source not in ex or a.target not in ex:
                raise ValueError("valued arrows must join exchangeable vertices")
            if a.v1 <= 0 or a.v2 <= 0:
                raise ValueError("valuations must be positive")
            if d[a.source] * a.v1 != a.v2 * d[a.target]:
                raise ValueError(
                    f"valuation of {a.source.name}->{a.target.name} breaks the symmetrizer"
                )
        for a in self.frozen_arrows:
            ends_frozen = (a.source in fr) + (a.target in fr)
            if ends_frozen == 2:
                raise ValueError("no arrows between frozen vertices")
            if ends_frozen == 0:
                raise ValueError("frozen arrows must touch a frozen vertex")
            if a.mult <= 0:
                raise ValueError("multiplicities must be positive")

    @property
    def vertices(self) -> tuple:
        return self.exchangeable + self.frozen

    def d_of(self, v: VarId) -> int:
        return self.symmetrizer[self.exchangeable.index(v)]


def matrix_to_quiver(matrix: ExtMatrix, d: Mapping[VarId, int]) -> IceQuiver:
    """Bijective image of a validated extended skew-symmetrizable matrix."""
    ex, fx = matrix.ex, matrix.fx
    n = len(ex)
    valued = []
    for i in range(n):
        for j in range(i + 1, n):
            b = matrix.entries[i][j]
            if b > 0:
                valued.append(ValuedArrow(ex[i], ex[j], b, -matrix.entries[j][i]))
            elif b < 0:
                valued.append(ValuedArrow(ex[j], ex[i], matrix.entries[j][i], -b))
    frozen_arrows = []
    for r, f in enumerate(fx, start=n):
        for j in range(n):
            b = matrix.entries[r][j]
            if b > 0:
                frozen_arrows.append(MultiArrow(f, ex[j], b))
            elif b < 0:
                frozen_arrows.append(MultiArrow(ex[j], f, -b))
    return IceQuiver(
        exchangeable=ex,
        frozen=fx,
        valued_arrows=tuple(valued),
        frozen_arrows=tuple(frozen_arrows),
        symmetrizer=tuple(d[v] for v in ex),
    )


def quiver_to_matrix(q: IceQuiver) -> ExtMatrix:
    """Inverse of matrix_to_quiver."""
    n, m = len(q.exchangeable), len(q.vertices)
    pos = {v: i for i, v in enumerate(q.vertices)}
    entries = [[0] * n for _ in range(m)]
    for a in q.valued_arrows:
        i, j = pos[a.source], pos[a.target]
        entries[i][j] = a.v1
        entries[j][i] = -a.v2
    for a in q.frozen_arrows:
        i, j = pos[a.source], pos[a.target]
        if i >= n:  # frozen source
            entries[i][j] = a.mult
        else:  # frozen target
            entries[j][i] = -a.mult
    return ExtMatrix(
        ex=q.exchangeable,
        fx=q.frozen,
        entries=tuple(tuple(row) for row in entries),
    )


def quiver_of_seed(seed: Seed, d: Mapping[VarId, int]) -> IceQuiver:
    return matrix_to_quiver(seed.matrix, d)


def seed_of_quiver(q: IceQuiver) -> Seed:
    matrix = quiver_to_matrix(q)
    return initial_seed(
        [v.name for v in matrix.ex],
        [v.name for v in matrix.fx],
        [list(row) for row in matrix.entries],
    )


# -- connectivity ------------------------------------------------------------


def _connected(vertices: tuple, edges) -> bool:
    if not vertices:
        return False
    adj = {v: set() for v in vertices}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vertices)


def is_indecomposable(q: IceQuiver) -> bool:
    """Connected, with connected principal part."""
    all_edges = [(a.source, a.target) for a in q.valued_arrows + q.frozen_arrows]
    principal_edges = [(a.source, a.target) for a in q.valued_arrows]
    return _connected(q.vertices, all_edges) and _connected(
        q.exchangeable, principal_edges
    )


# -- decomposition / gluing ----------------------------------------------------


@dataclass(frozen=True)
class DecompositionResult:
    components: tuple
    identification: dict  # original frozen VarId -> ((component idx, copy VarId), ...)
    isolated_frozen: tuple


def decompose(q: IceQuiver) -> DecompositionResult:
    """Indecomposable components, ordered by least contained vertex.

    Frozen vertices adjacent to several components are copied into each;
    the identification map records which copies share an original.
    """
    dec = decompose_seed(seed_of_quiver(q))
    d_by_name = {v.name: q.symmetrizer[i] for i, v in enumerate(q.exchangeable)}
    comps = []
    for comp_seed in dec.components:
        d = {v: d_by_name[v.name] for v in comp_seed.matrix.ex}
        comps.append(matrix_to_quiver(comp_seed.matrix, d))
    identification = {}
    for orig, copies in dec.identification.items():
        q_orig = q.frozen[[v.name for v in q.frozen].index(orig.name)]
        entries = []
        for ci, copy in copies:
            comp = comps[ci]
            names = [v.name for v in comp.frozen]
            entries.append((ci, comp.frozen[names.index(copy.name)]))
        identification[q_orig] = tuple(entries)
    names = [v.name for v in q.frozen]
    isolated = tuple(
        q.frozen[names.index(v.name)] for v in dec.isolated_frozen
    )
    return DecompositionResult(
        components=tuple(comps),
        identification=identification,
        isolated_frozen=isolated,
    )


def glue(a: IceQuiver, b: IceQuiver, pairing: Mapping) -> IceQuiver:
    """Glue along a bijection between frozen vertices; valuations and
    symmetrizers are inherited from the respective sides."""
    sa, sb = seed_of_quiver(a), seed_of_quiver(b)
    norm = {}
    for av, bv in pairing.items():
        a_name = av.name if isinstance(av, VarId) else av
        b_name = bv.name if isinstance(bv, VarId) else bv
        if a_name not in {v.name for v in a.frozen}:
            raise NotFrozen(f"{a_name} is not frozen in the left quiver")
        if b_name not in {v.name for v in b.frozen}:
            raise NotFrozen(f"{b_name} is not frozen in the right quiver")
        norm[a_name] = b_name
    glued = glue_seeds(sa, sb, norm)
    d_by_name = {v.name: a.symmetrizer[i] for i, v in enumerate(a.exchangeable)}
    d_by_name.update(
        {v.name: b.symmetrizer[i] for i, v in enumerate(b.exchangeable)}
    )
    d = {v: d_by_name[v.name] for v in glued.matrix.ex}
    return matrix_to_quiver(glued.matrix, d)


# -- rendering -------------------------------------------------------------------


def to_dot(q: IceQuiver) -> str:
    """DOT digraph; frozen vertices boxed, valuations as edge labels,
    multiplicities as parallel edges."""
    lines = ["digraph quiver {"]
    for v in q.exchangeable:
        lines.append(f'  "{v.name}";')
    for v in q.frozen:
        lines.append(f'  "{v.name}" [shape=box];')
    for a in q.valued_arrows:
        if (a.v1, a.v2) == (1, 1):
            lines.append(f'  "{a.source.name}" -> "{a.target.name}";')
        else:
            lines.append(
                f'  "{a.source.name}" -> "{a.target.name}" [label="{a.v1},{a.v2}"];'
            )
    for a in q.frozen_arrows:
        for _ in range(a.mult):
            lines.append(f'  "{a.source.name}" -> "{a.target.name}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
