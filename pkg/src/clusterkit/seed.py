"""Seeds, mutation, admissible sequences, and mutation-class enumeration.

A seed couples an extended skew-symmetrizable integer matrix with the
current values of its cluster variables, which are exact Laurent
polynomials in the variables of the initial seed.  Mutation tracks
positions: the variable replacing x occupies x's slot, so re-mutating a
previously mutated slot is legal and mutation is an involution on the
nose.

Seeds are immutable values; every operation returns a new seed.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    NameClash,
    NotAdmissible,
    NotContained,
    NotExchangeable,
    NotFrozen,
    NotSkewSymmetrizable,
    ParseError,
)
from .laurent import LaurentPoly, Ring, VarId, div_exact, parse

__all__ = [
    "ExtMatrix",
    "Seed",
    "MutationClass",
    "ClusterVariables",
    "SeedDecomposition",
    "initial_seed",
    "validate",
    "mutate",
    "apply_sequence",
    "enumerate_class",
    "cluster_variables",
    "subseed",
    "opposite",
    "freeze",
    "decompose_seed",
    "glue_seeds",
    "reglue",
    "canonical_key",
    "canonical_form",
    "digest",
    "named_form",
    "seed_to_json",
    "seed_from_json",
]

DEFAULT_MAX_SEEDS = 10000
DEFAULT_MAX_DEPTH = 16

VarLike = Union[VarId, str]


@dataclass(frozen=True)
class ExtMatrix:
    """Extended integer matrix: rows over all variables, columns over the
    exchangeable ones.  Row order is ex + fx; column order matches ex."""

    ex: tuple
    fx: tuple
    entries: tuple

    def __post_init__(self):
        m, n = len(self.ex) + len(self.fx), len(self.ex)
        if len(self.entries) != m or any(len(r) != n for r in self.entries):
            raise ValueError(f"matrix shape does not match {m} rows x {n} cols")

    @property
    def rows(self) -> tuple:
        return self.ex + self.fx

    def principal(self) -> tuple:
        n = len(self.ex)
        return tuple(row[:n] for row in self.entries[:n])


@dataclass(frozen=True)
class Seed:
    """A seed: matrix plus current variable values in the initial ring."""

    ring: Ring
    matrix: ExtMatrix
    values: tuple

    @property
    def ex(self) -> tuple:
        return self.matrix.ex

    @property
    def fx(self) -> tuple:
        return self.matrix.fx

    @property
    def rows(self) -> tuple:
        return self.matrix.rows

    def var(self, name: VarLike) -> VarId:
        if isinstance(name, VarId):
            return name
        for v in self.rows:
            if v.name == name:
                return v
        raise ValueError(f"no variable named {name!r} in this seed")

    def row_position(self, v: VarLike) -> int:
        v = self.var(v)
        for i, w in enumerate(self.rows):
            if w == v:
                return i
        raise ValueError(f"{v!r} is not a variable of this seed")

    def value_of(self, v: VarLike) -> LaurentPoly:
        return self.values[self.row_position(v)]

    def is_initial(self) -> bool:
        return all(
            self.values[i] == self.ring.gen(v) for i, v in enumerate(self.rows)
        )

    def is_trivial(self) -> bool:
        return not self.matrix.ex


def initial_seed(
    ex_names: Sequence[str],
    fx_names: Sequence[str],
    entries: Sequence[Sequence[int]],
) -> Seed:
    """Build an initial seed; every variable's value is itself."""
    ring = Ring(tuple(ex_names) + tuple(fx_names))
    n = len(ex_names)
    matrix = ExtMatrix(
        ex=ring.vars[:n],
        fx=ring.vars[n:],
        entries=tuple(tuple(int(x) for x in row) for row in entries),
    )
    values = tuple(ring.gen(v) for v in ring.vars)
    return Seed(ring=ring, matrix=matrix, values=values)


# -- validation ---------------------------------------------------------------


def validate(seed: Seed) -> dict:
    """Check skew-symmetrizability of the principal part.

    Returns the componentwise least positive integer symmetrizer d with
    d_i * b_ij == -d_j * b_ji, keyed by exchangeable VarId.  Raises
    NotSkewSymmetrizable when the sign pattern is violated or no
    consistent integer scaling exists.
    """
    ex = seed.matrix.ex
    n = len(ex)
    p = seed.matrix.principal()
    for i in range(n):
        if p[i][i] != 0:
            raise NotSkewSymmetrizable(f"nonzero diagonal entry at {ex[i].name}")
        for j in range(i + 1, n):
            a, b = p[i][j], p[j][i]
            if (a == 0) != (b == 0):
                raise NotSkewSymmetrizable(
                    f"exactly one of b[{ex[i].name},{ex[j].name}], "
                    f"b[{ex[j].name},{ex[i].name}] is zero"
                )
            if a * b > 0:
                raise NotSkewSymmetrizable(
                    f"entries b[{ex[i].name},{ex[j].name}] and its transpose "
                    "have the same sign"
                )

    d: dict = {}
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        ratio = {start: Fraction(1)}
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(n):
                if p[i][j] != 0 and not seen[j]:
                    # d_i * b_ij = -d_j * b_ji
                    ratio[j] = ratio[i] * Fraction(p[i][j], -p[j][i])
                    seen[j] = True
                    comp.append(j)
                    queue.append(j)
        for i in comp:
            for j in comp:
                if ratio[i] * p[i][j] != -ratio[j] * p[j][i]:
                    raise NotSkewSymmetrizable(
                        f"no consistent symmetrizer across {ex[i].name}, {ex[j].name}"
                    )
        scale = lcm(*(r.denominator for r in ratio.values())) if comp else 1
        ints = {i: int(ratio[i] * scale) for i in comp}
        shrink = gcd(*ints.values()) if ints else 1
        for i in comp:
            d[ex[i]] = ints[i] // shrink
    return d


# -- mutation -----------------------------------------------------------------


def mutate(seed: Seed, x: VarLike) -> Seed:
    """Mutation in the direction of the exchangeable variable x."""
    try:
        x = seed.var(x)
    except ValueError as exc:
        raise NotExchangeable(str(exc)) from None
    ex = seed.matrix.ex
    try:
        j = ex.index(x)
    except ValueError:
        raise NotExchangeable(f"{x.name} is not exchangeable in this seed") from None

    entries = seed.matrix.entries
    m = len(entries)
    pos = seed.ring.one()
    neg = seed.ring.one()
    for i in range(m):
        b = entries[i][j]
        if b > 0:
            pos = pos * seed.values[i] ** b
        elif b < 0:
            neg = neg * seed.values[i] ** (-b)
    new_value = div_exact(pos + neg, seed.values[j])

    row_x = entries[j]
    new_entries = []
    for i in range(m):
        row = entries[i]
        byx = row[j]
        new_row = []
        for k in range(len(ex)):
            if i == j or k == j:
                new_row.append(-row[k])
            else:
                bxz = row_x[k]
                new_row.append(row[k] + (abs(byx) * bxz + byx * abs(bxz)) // 2)
        new_entries.append(tuple(new_row))

    values = list(seed.values)
    values[j] = new_value
    return Seed(
        ring=seed.ring,
        matrix=ExtMatrix(ex=ex, fx=seed.matrix.fx, entries=tuple(new_entries)),
        values=tuple(values),
    )


def apply_sequence(seed: Seed, seq: Iterable[VarLike]) -> Seed:
    """Apply mutations left to right; NotAdmissible names the first bad step."""
    current = seed
    for step, x in enumerate(seq):
        try:
            current = mutate(current, x)
        except (NotExchangeable, ValueError) as exc:
            raise NotAdmissible(step, f"step {step}: {exc}") from None
    return current


# -- canonical form -----------------------------------------------------------


def canonical_key(seed: Seed) -> tuple:
    """Hashable canonical form: exchangeable slots sorted by value,
    frozen slots by VarId; matrix permuted to match.  Seeds of one
    mutation class are equal as unordered structures iff keys match."""
    matrix = seed.matrix
    n = len(matrix.ex)
    m = n + len(matrix.fx)
    rows = matrix.rows
    ex_order = sorted(range(n), key=lambda i: (seed.values[i].sort_key(), i))
    fx_order = sorted(range(n, m), key=lambda i: (rows[i].index, rows[i].name))
    perm = ex_order + fx_order
    return (
        tuple(seed.values[i].sort_key() for i in ex_order),
        tuple((rows[i].name, seed.values[i].sort_key()) for i in fx_order),
        tuple(tuple(matrix.entries[r][c] for c in ex_order) for r in perm),
    )


def canonical_form(seed: Seed) -> Seed:
    """The seed permuted into canonical slot order: exchangeable slots
    sorted by value, frozen slots by VarId.  Two seeds of one mutation
    class are equal as unordered structures iff their canonical forms are
    equal."""
    matrix = seed.matrix
    n = len(matrix.ex)
    m = n + len(matrix.fx)
    rows = matrix.rows
    ex_order = sorted(range(n), key=lambda i: (seed.values[i].sort_key(), i))
    fx_order = sorted(range(n, m), key=lambda i: (rows[i].index, rows[i].name))
    perm = ex_order + fx_order
    return Seed(
        ring=seed.ring,
        matrix=ExtMatrix(
            ex=tuple(rows[i] for i in ex_order),
            fx=tuple(rows[i] for i in fx_order),
            entries=tuple(
                tuple(matrix.entries[r][c] for c in ex_order) for r in perm
            ),
        ),
        values=tuple(seed.values[i] for i in perm),
    )


def digest(seed: Seed, _key: Union[tuple, None] = None) -> str:
    """Short stable identifier of the canonical form."""
    key = canonical_key(seed) if _key is None else _key
    return hashlib.sha256(repr(key).encode()).hexdigest()[:16]


def named_form(seed: Seed) -> tuple:
    """Order-insensitive structural form keyed by variable names.

    Useful for comparing seeds produced along different construction
    paths (decompose/glue, subseed) where list order and internal indices
    differ but the seed is mathematically the same.
    """
    rows = seed.matrix.rows
    entries = frozenset(
        ((rows[i].name, x.name), seed.matrix.entries[i][j])
        for i in range(len(rows))
        for j, x in enumerate(seed.matrix.ex)
        if seed.matrix.entries[i][j] != 0
    )
    values = frozenset(
        (rows[i].name, str(seed.values[i]))
        for i in range(len(rows))
        if seed.values[i] != seed.ring.gen(rows[i])
    )
    return (
        frozenset(v.name for v in seed.matrix.ex),
        frozenset(v.name for v in seed.matrix.fx),
        entries,
        values,
    )


# -- mutation class enumeration -------------------------------------------------


@dataclass(frozen=True)
class MutationClass:
    root: Seed
    seeds: tuple
    edges: frozenset  # (digest, variable name, digest), symmetric
    complete: bool
    depth_reached: int

    def digests(self) -> dict:
        return {digest(s): s for s in self.seeds}


def enumerate_class(
    seed: Seed,
    max_seeds: int = DEFAULT_MAX_SEEDS,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> MutationClass:
    """Breadth-first closure of the seed under mutation, deduplicated by
    canonical form.  complete is True iff the closure was verified within
    both budgets; exceeding a budget is reported, never raised."""
    root_key = canonical_key(seed)
    found = {root_key: seed}
    digests = {root_key: digest(seed, _key=root_key)}
    edges = set()
    complete = True
    depth = 0
    depth_reached = 0
    frontier = [(seed, root_key)]
    while frontier:
        nxt = []
        for s, ks in frontier:
            for x in s.matrix.ex:
                t = mutate(s, x)
                kt = canonical_key(t)
                if kt not in found:
                    if depth + 1 > max_depth or len(found) >= max_seeds:
                        complete = False
                        continue
                    found[kt] = t
                    digests[kt] = digest(t, _key=kt)
                    nxt.append((t, kt))
                edges.add((digests[ks], x.name, digests[kt]))
                edges.add((digests[kt], x.name, digests[ks]))
        if nxt:
            depth += 1
            depth_reached = depth
        frontier = nxt
    ordered = tuple(found[k] for k in sorted(found))
    return MutationClass(
        root=seed,
        seeds=ordered,
        edges=frozenset(edges),
        complete=complete,
        depth_reached=depth_reached,
    )


@dataclass(frozen=True)
class ClusterVariables:
    exchangeable: tuple
    frozen: tuple


def cluster_variables(mclass: MutationClass) -> ClusterVariables:
    """Union of all values over the class, deduplicated canonically and
    partitioned into exchangeable and frozen."""
    ex_pool: dict = {}
    fx_pool: dict = {}
    for s in mclass.seeds:
        n = len(s.matrix.ex)
        for i, v in enumerate(s.values):
            (ex_pool if i < n else fx_pool)[v] = None
    ex_sorted = tuple(sorted(ex_pool, key=LaurentPoly.sort_key))
    fx_sorted = tuple(sorted(fx_pool, key=LaurentPoly.sort_key))
    return ClusterVariables(exchangeable=ex_sorted, frozen=fx_sorted)


# -- subseed / opposite / freezing ---------------------------------------------


def _as_var_set(seed: Seed, vars: Iterable[VarLike]) -> set:
    return {seed.var(v) for v in vars}


def subseed(seed: Seed, keep_ex: Iterable[VarLike], keep_fx: Iterable[VarLike]) -> Seed:
    """Restriction to kept variables with the induced submatrix.

    The result is an initial seed on the kept variables; mutation history
    of the input does not transfer to the restricted ring.
    """
    keep_ex = _as_var_set(seed, keep_ex)
    keep_fx = _as_var_set(seed, keep_fx)
    if not keep_ex <= set(seed.matrix.ex):
        raise NotContained("keep_ex contains variables outside the exchangeable list")
    if not keep_fx <= set(seed.matrix.fx):
        raise NotContained("keep_fx contains variables outside the frozen list")
    rows = seed.matrix.rows
    n = len(seed.matrix.ex)
    ex_pos = [i for i in range(n) if rows[i] in keep_ex]
    fx_pos = [i for i in range(n, len(rows)) if rows[i] in keep_fx]
    entries = [
        [seed.matrix.entries[r][c] for c in ex_pos] for r in ex_pos + fx_pos
    ]
    return initial_seed(
        [rows[i].name for i in ex_pos],
        [rows[i].name for i in fx_pos],
        entries,
    )


def opposite(seed: Seed) -> Seed:
    """Same variables and values, negated matrix."""
    entries = tuple(tuple(-x for x in row) for row in seed.matrix.entries)
    return Seed(
        ring=seed.ring,
        matrix=ExtMatrix(ex=seed.matrix.ex, fx=seed.matrix.fx, entries=entries),
        values=seed.values,
    )


def freeze(seed: Seed, ex0: Iterable[VarLike]) -> Seed:
    """Freezing at ex0: demote the chosen exchangeable variables and
    delete their matrix columns.  The variable set and values are kept."""
    ex0 = _as_var_set(seed, ex0)
    if not ex0 <= set(seed.matrix.ex):
        raise NotExchangeable("freeze requested at non-exchangeable variables")
    rows = seed.matrix.rows
    n = len(seed.matrix.ex)
    keep_cols = [j for j in range(n) if rows[j] not in ex0]
    new_ex_pos = keep_cols
    new_fx_pos = list(range(n, len(rows))) + [j for j in range(n) if rows[j] in ex0]
    perm = new_ex_pos + new_fx_pos
    entries = tuple(
        tuple(seed.matrix.entries[r][c] for c in keep_cols) for r in perm
    )
    return Seed(
        ring=seed.ring,
        matrix=ExtMatrix(
            ex=tuple(rows[i] for i in new_ex_pos),
            fx=tuple(rows[i] for i in new_fx_pos),
            entries=entries,
        ),
        values=tuple(seed.values[i] for i in perm),
    )


# -- decomposition and gluing ----------------------------------------------------


def component_structure(matrix: ExtMatrix) -> tuple:
    """Connected components of the principal part with their adjacent
    frozen variables, plus the isolated frozen variables.

    Returns (components, isolated) where components is a tuple of
    (ex_positions, fx_positions) into matrix.rows, ordered by least
    contained VarId, and isolated is a tuple of frozen row positions.
    """
    n = len(matrix.ex)
    m = len(matrix.rows)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(n):
                if not seen[j] and (
                    matrix.entries[i][j] != 0 or matrix.entries[j][i] != 0
                ):
                    seen[j] = True
                    comp.append(j)
                    queue.append(j)
        comp.sort()
        fx_adj = [
            r
            for r in range(n, m)
            if any(matrix.entries[r][j] != 0 for j in comp)
        ]
        comps.append((tuple(comp), tuple(fx_adj)))
    comps.sort(key=lambda c: min(matrix.rows[i].index for i in c[0]))
    used_fx = {r for _, fxs in comps for r in fxs}
    isolated = tuple(r for r in range(n, m) if r not in used_fx)
    return tuple(comps), isolated


@dataclass(frozen=True)
class SeedDecomposition:
    source: Seed
    components: tuple
    identification: dict = field(compare=False)  # original VarId -> ((comp idx, VarId), ...)
    isolated_frozen: tuple = ()


def decompose_seed(seed: Seed) -> SeedDecomposition:
    """Indecomposable components: each connected component of the
    principal part together with its adjacent frozen variables.  Frozen
    variables adjacent to several components are copied into each; the
    first copy keeps the original name, later ones get the component
    index as a suffix.  The identification map is authoritative; names
    are cosmetic."""
    matrix = seed.matrix
    rows = matrix.rows
    comps, isolated = component_structure(matrix)
    copies: dict = {r: [] for _, fxs in comps for r in fxs}
    for r in copies:
        copies[r] = [ci for ci, (_, fxs) in enumerate(comps) if r in fxs]

    components = []
    ident: dict = {row: [] for row in copies}
    for ci, (ex_pos, fx_pos) in enumerate(comps):
        ex_names = [rows[i].name for i in ex_pos]
        fx_names = []
        taken = set(ex_names)
        copy_names = {}
        for r in fx_pos:
            if copies[r][0] == ci:
                name = rows[r].name
            else:
                name = f"{rows[r].name}_{ci}"
            while name in taken:
                name += "_"
            taken.add(name)
            fx_names.append(name)
            copy_names[r] = name
        entries = [
            [matrix.entries[r][c] for c in ex_pos] for r in list(ex_pos) + list(fx_pos)
        ]
        comp_seed = initial_seed(ex_names, fx_names, entries)
        components.append(comp_seed)
        for r in fx_pos:
            ident[r].append((ci, comp_seed.var(copy_names[r])))

    identification = {rows[r]: tuple(v) for r, v in ident.items()}
    return SeedDecomposition(
        source=seed,
        components=tuple(components),
        identification=identification,
        isolated_frozen=tuple(rows[r] for r in isolated),
    )


def glue_seeds(a: Seed, b: Seed, pairing: Mapping[VarLike, VarLike]) -> Seed:
    """Glue along a bijection between frozen variables of a and of b.

    Paired variables are merged (keeping a's name); the merged row carries
    a's entries under a's columns and b's entries under b's columns, with
    no interaction entries created.
    """
    norm = {}
    for av, bv in pairing.items():
        norm[a.var(av)] = b.var(bv)
    if len(set(norm.values())) != len(norm):
        raise ValueError("pairing is not a bijection")
    for av in norm:
        if av not in a.matrix.fx:
            raise NotFrozen(f"{av.name} is not frozen in the left seed")
    for bv in norm.values():
        if bv not in b.matrix.fx:
            raise NotFrozen(f"{bv.name} is not frozen in the right seed")

    paired_b = set(norm.values())
    a_names = {v.name for v in a.rows}
    for v in b.rows:
        if v not in paired_b and v.name in a_names:
            raise NameClash(f"variable name {v.name!r} appears on both sides")

    ex_names = [v.name for v in a.matrix.ex] + [v.name for v in b.matrix.ex]
    fx_names = [v.name for v in a.matrix.fx] + [
        v.name for v in b.matrix.fx if v not in paired_b
    ]
    na, nb = len(a.matrix.ex), len(b.matrix.ex)
    b_row_of = {v: i for i, v in enumerate(b.rows)}

    def b_row(bv):
        return b.matrix.entries[b_row_of[bv]]

    entries = []
    for i, v in enumerate(a.rows):
        row = list(a.matrix.entries[i]) + [0] * nb
        if v in norm:
            bv = norm[v]
            row[na:] = b_row(bv)
        entries.append(row)
    # b's exchangeable rows sit after a's exchangeable rows
    for i in range(nb):
        entries.insert(na + i, [0] * na + list(b.matrix.entries[i]))
    for v in b.matrix.fx:
        if v not in paired_b:
            entries.append([0] * na + list(b_row(v)))
    return initial_seed(ex_names, fx_names, entries)


def reglue(dec: SeedDecomposition) -> Seed:
    """Glue the components back along the identification map; isolated
    frozen variables are re-attached as a trivial disjoint summand."""
    comps = dec.components
    if not comps:
        acc = initial_seed(
            [], [v.name for v in dec.isolated_frozen], [[] for _ in dec.isolated_frozen]
        )
        return acc
    merged = {}  # original VarId -> current name in acc
    for orig, cps in dec.identification.items():
        for ci, copy in cps:
            if ci == 0:
                merged[orig] = copy.name
    acc = comps[0]
    for ci in range(1, len(comps)):
        pairing = {}
        for orig, cps in dec.identification.items():
            here = [copy for c, copy in cps if c == ci]
            if not here:
                continue
            if orig in merged:
                pairing[merged[orig]] = here[0].name
            else:
                merged[orig] = here[0].name
        acc = glue_seeds(acc, comps[ci], pairing)
    if dec.isolated_frozen:
        iso = initial_seed(
            [], [v.name for v in dec.isolated_frozen], [[] for _ in dec.isolated_frozen]
        )
        acc = glue_seeds(acc, iso, {})
    return acc


# -- JSON ------------------------------------------------------------------------


def seed_to_json(seed: Seed) -> dict:
    """Seed JSON: rows ordered exchangeable-then-frozen, columns in
    exchangeable order; a values map is present only for non-initial seeds."""
    out = {
        "exchangeable": [v.name for v in seed.matrix.ex],
        "frozen": [v.name for v in seed.matrix.fx],
        "matrix": [list(row) for row in seed.matrix.entries],
    }
    if not seed.is_initial():
        out["values"] = {
            seed.rows[i].name: str(seed.values[i]) for i in range(len(seed.values))
        }
    return out


def seed_from_json(obj: Mapping) -> Seed:
    if not isinstance(obj, Mapping):
        raise ParseError("seed JSON must be an object")
    try:
        ex = list(obj["exchangeable"])
        fx = list(obj.get("frozen", []))
        matrix = obj["matrix"]
    except KeyError as exc:
        raise ParseError(f"seed JSON lacks key {exc}") from None
    if not all(isinstance(x, str) for x in ex + fx):
        raise ParseError("variable names must be strings")
    if len(matrix) != len(ex) + len(fx):
        raise ParseError(
            f"matrix must have {len(ex) + len(fx)} rows, got {len(matrix)}"
        )
    for row in matrix:
        if len(row) != len(ex) or not all(isinstance(x, int) for x in row):
            raise ParseError("matrix rows must be integer lists, one per column")
    try:
        seed = initial_seed(ex, fx, matrix)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    values_obj = obj.get("values")
    if values_obj:
        values = list(seed.values)
        for name, text in values_obj.items():
            pos = seed.row_position(name)
            values[pos] = parse(str(text), seed.ring)
        seed = Seed(ring=seed.ring, matrix=seed.matrix, values=tuple(values))
    return seed


def canonical_json(obj) -> str:
    """Deterministic JSON used by the CLI and digests."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
