"""Rooted cluster morphism specifications and their verdicts.

A candidate morphism is given by images of the source's initial cluster
variables in the target's initial Laurent ring, optionally extended by a
generator table for non-inducible specs (an exchangeable variable may map
to 0, in which case images of non-initial cluster variables cannot be
derived by substitution).

The three axioms are checked exactly:

- CM1: exchangeable variables land in target exchangeables or integers.
- CM2: frozen variables land in target variables or integers.
- CM3: mutation commutes along biadmissible sequences.  The check walks
  the graph of (source seed, target seed) pairs reachable by common
  mutations; if that graph closes within the depth budget the verdict is
  a full "pass", otherwise "exhausted" with the depth stated.

The ideal check is sound but three-valued: fast paths from the structure
theorems, then a variable-support certificate for "not_ideal", then
bounded-degree exact linear algebra for "ideal"; anything else is
"unknown".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    MissingImage,
    NonUnitNegativePower,
    NotComponentEmbedding,
    NotIdeal,
    NotInjective,
    ParseError,
    ZeroIntoNegativePower,
)
from .laurent import LaurentPoly, parse, substitute, transport
from .seed import (
    Seed,
    SeedDecomposition,
    cluster_variables,
    component_structure,
    decompose_seed,
    enumerate_class,
    freeze,
    initial_seed,
    mutate,
    seed_from_json,
    subseed,
)

__all__ = [
    "MorphismSpec",
    "MorphismVerdict",
    "Witness",
    "IdealVerdict",
    "InjectionReport",
    "ComponentMatch",
    "TensorReport",
    "IdentGenerator",
    "morphism_spec",
    "morphism_from_json",
    "check_morphism",
    "image_seed",
    "ideal_check",
    "analyze_injection",
    "factorize_ideal",
    "specialize",
    "tensor_decomposition_report",
]

DEFAULT_DEGREE_CAP = 4000


@dataclass(frozen=True)
class MorphismSpec:
    source: Seed
    target: Seed
    images: dict = field(compare=False)  # source VarId -> LaurentPoly in target ring
    generator_table: dict = field(compare=False, default_factory=dict)
    explicit_claim: Union[bool, None] = None  # user-asserted metadata only

    @property
    def inducible(self) -> bool:
        """No exchangeable initial variable maps to zero."""
        return all(not self.images[x].is_zero() for x in self.source.matrix.ex)

    def image_of(self, v) -> LaurentPoly:
        return self.images[self.source.var(v)]


def morphism_spec(
    source: Seed,
    target: Seed,
    images: Mapping,
    generator_table: Union[Mapping, None] = None,
    explicit: Union[bool, None] = None,
) -> MorphismSpec:
    """Build a spec; image values may be polynomials, integers, or text."""

    def to_poly(val) -> LaurentPoly:
        if isinstance(val, LaurentPoly):
            if val.ring != target.ring:
                raise ValueError("image polynomial lives outside the target ring")
            return val
        if isinstance(val, int):
            return target.ring.const(val)
        return parse(str(val), target.ring)

    imgs = {}
    for key, val in images.items():
        imgs[source.var(key)] = to_poly(val)
    missing = [v.name for v in source.rows if v not in imgs]
    if missing:
        raise ValueError(f"missing images for initial variables: {', '.join(missing)}")
    table = {}
    for key, val in (generator_table or {}).items():
        kp = key if isinstance(key, LaurentPoly) else parse(str(key), source.ring)
        table[kp] = to_poly(val)
    return MorphismSpec(
        source=source,
        target=target,
        images=imgs,
        generator_table=table,
        explicit_claim=explicit,
    )


def morphism_from_json(obj: Mapping, load_seed=None) -> MorphismSpec:
    """Morphism JSON: source/target seeds (inline or via `load_seed` on a
    path string), an images map, and an optional generator table."""
    if not isinstance(obj, Mapping):
        raise ParseError("morphism JSON must be an object")

    def resolve(key):
        raw = obj.get(key)
        if raw is None:
            raise ParseError(f"morphism JSON lacks key {key!r}")
        if isinstance(raw, str):
            if load_seed is None:
                raise ParseError(f"{key} is a path but path loading is not available")
            return load_seed(raw)
        return seed_from_json(raw)

    source = resolve("source")
    target = resolve("target")
    images = obj.get("images")
    if not isinstance(images, Mapping):
        raise ParseError("morphism JSON needs an images object")
    try:
        return morphism_spec(
            source,
            target,
            images,
            generator_table=obj.get("generator_table"),
            explicit=obj.get("explicit"),
        )
    except (ValueError, ParseError) as exc:
        raise ParseError(str(exc)) from None


# -- CM1-CM3 -------------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    axiom: str
    variable: Union[str, None] = None
    sequence: tuple = ()
    lhs: Union[str, None] = None
    rhs: Union[str, None] = None
    detail: str = ""


@dataclass(frozen=True)
class MorphismVerdict:
    cm1: bool
    cm2: bool
    cm3: str  # "pass" | "fail" | "exhausted" | "skipped"
    witness: Union[Witness, None]
    inducible: bool
    checked_depth: int

    @property
    def ok(self) -> bool:
        return self.cm1 and self.cm2 and self.cm3 in ("pass", "exhausted")


def _f_eval(spec: MorphismSpec, p: LaurentPoly) -> LaurentPoly:
    """Image of a source cluster variable value under the spec."""
    if p in spec.generator_table:
        return spec.generator_table[p]
    try:
        return substitute(p, spec.images, spec.target.ring)
    except (ZeroIntoNegativePower, NonUnitNegativePower):
        raise MissingImage(
            f"no image available for cluster variable {p}; "
            "extend the generator table of this non-inducible spec"
        ) from None


def default_depth(spec: MorphismSpec) -> int:
    return len(spec.source.matrix.ex) + 2


def check_morphism(spec: MorphismSpec, depth: Union[int, None] = None) -> MorphismVerdict:
    """Check CM1 and CM2 directly and CM3 on all biadmissible sequences of
    length <= depth (default |ex| + 2).  The CM3 walk deduplicates
    (source, target) seed pairs, so a "pass" means the pair class closed
    and the axiom holds for sequences of every length."""
    if depth is None:
        depth = default_depth(spec)
    src, tgt = spec.source, spec.target
    witness = None

    cm1 = True
    for x in src.matrix.ex:
        img = spec.images[x]
        if img.as_int() is None and img.as_variable() not in tgt.matrix.ex:
            cm1 = False
            witness = Witness(
                axiom="CM1",
                variable=x.name,
                lhs=str(img),
                detail=f"image of exchangeable {x.name} is neither a target "
                "exchangeable variable nor an integer",
            )
            break
    cm2 = True
    if cm1:
        for v in src.matrix.fx:
            img = spec.images[v]
            if img.as_int() is None and img.as_variable() not in tgt.rows:
                cm2 = False
                witness = Witness(
                    axiom="CM2",
                    variable=v.name,
                    lhs=str(img),
                    detail=f"image of frozen {v.name} is neither a target "
                    "variable nor an integer",
                )
                break

    if not (cm1 and cm2):
        return MorphismVerdict(
            cm1=cm1,
            cm2=cm2,
            cm3="skipped",
            witness=witness,
            inducible=spec.inducible,
            checked_depth=depth,
        )

    cm3, witness = _check_cm3(spec, depth)
    return MorphismVerdict(
        cm1=True,
        cm2=True,
        cm3=cm3,
        witness=witness,
        inducible=spec.inducible,
        checked_depth=depth,
    )


def _check_cm3(spec: MorphismSpec, depth: int):
    src, tgt = spec.source, spec.target
    bislots = []
    for x in src.matrix.ex:
        v = spec.images[x].as_variable()
        if v is not None and v in tgt.matrix.ex:
            bislots.append((x, v))

    int_image = {
        v: spec.images[v].as_int() for v in src.rows if spec.images[v].as_int() is not None
    }

    def verify(s: Seed, t: Seed, seq: tuple) -> Union[Witness, None]:
        for i, y in enumerate(s.rows):
            lhs = _f_eval(spec, s.values[i])
            if y in int_image:
                rhs = tgt.ring.const(int_image[y])
            else:
                rhs = t.value_of(spec.images[y].as_variable())
            if lhs != rhs:
                return Witness(
                    axiom="CM3",
                    variable=y.name,
                    sequence=seq,
                    lhs=str(lhs),
                    rhs=str(rhs),
                    detail="mutation does not commute with the variable map",
                )
        return None

    def state_key(s: Seed, t: Seed) -> tuple:
        return (s.values, s.matrix.entries, t.values, t.matrix.entries)

    w = verify(src, tgt, ())
    if w is not None:
        return "fail", w
    visited = {state_key(src, tgt)}
    frontier = [(src, tgt, ())]
    closed = True
    level = 0
    while frontier:
        nxt = []
        for s, t, seq in frontier:
            for x, fx_img in bislots:
                s2 = mutate(s, x)
                t2 = mutate(t, fx_img)
                key = state_key(s2, t2)
                if key in visited:
                    continue
                if level + 1 > depth:
                    closed = False
                    continue
                visited.add(key)
                w = verify(s2, t2, seq + (x.name,))
                if w is not None:
                    return "fail", w
                nxt.append((s2, t2, seq + (x.name,)))
        if nxt:
            level += 1
        frontier = nxt
    return ("pass" if closed else "exhausted"), None


# -- image seed -----------------------------------------------------------------


def image_seed(spec: MorphismSpec) -> Seed:
    """The subseed of the target supported on the image of the cluster,
    with exchangeables ex' ∩ f(ex); target exchangeables hit only by
    frozen images lose their columns."""
    tgt = spec.target
    hit = set()
    ex_hit = set()
    for v in spec.source.rows:
        tv = spec.images[v].as_variable()
        if tv is not None and tv in tgt.rows:
            hit.add(tv)
            if v in spec.source.matrix.ex and tv in tgt.matrix.ex:
                ex_hit.add(tv)
    new_ex = [v for v in tgt.matrix.ex if v in ex_hit]
    new_fx = [v for v in tgt.rows if v in hit and v not in ex_hit]
    rows = list(tgt.rows)
    col_of = {v: j for j, v in enumerate(tgt.matrix.ex)}
    entries = [
        [tgt.matrix.entries[rows.index(r)][col_of[c]] for c in new_ex]
        for r in new_ex + new_fx
    ]
    return initial_seed(
        [v.name for v in new_ex], [v.name for v in new_fx], entries
    )


# -- ideal check ------------------------------------------------------------------


@dataclass(frozen=True)
class IdealVerdict:
    status: str  # "ideal" | "not_ideal" | "unknown"
    witness: Union[LaurentPoly, None]
    fast_path: Union[str, None]
    detail: str = ""


def _source_acyclic(seed: Seed) -> bool:
    n = len(seed.matrix.ex)
    p = seed.matrix.principal()
    color = [0] * n  # 0 unseen, 1 active, 2 done

    def dfs(i) -> bool:
        color[i] = 1
        for j in range(n):
            if p[i][j] > 0:
                if color[j] == 1:
                    return False
                if color[j] == 0 and not dfs(j):
                    return False
        color[i] = 2
        return True

    return all(color[i] == 2 or dfs(i) for i in range(n))


def _surjective_on_slots(spec: MorphismSpec) -> bool:
    ex_images = {
        spec.images[x].as_variable() for x in spec.source.matrix.ex
    }
    all_images = {spec.images[v].as_variable() for v in spec.source.rows}
    return set(spec.target.matrix.ex) <= ex_images and set(spec.target.rows) <= all_images


def _exact_solve(columns: Sequence[LaurentPoly], goal: LaurentPoly):
    """Solve sum c_i * columns[i] == goal over Q; return the integral
    solution or None when inconsistent/non-integral/underdetermined."""
    monomials = {}
    for p in list(columns) + [goal]:
        for e, _ in p.terms():
            monomials.setdefault(e, len(monomials))
    rows = len(monomials)
    mat = [[Fraction(0)] * (len(columns) + 1) for _ in range(rows)]
    for j, p in enumerate(columns):
        for e, c in p.terms():
            mat[monomials[e]][j] = Fraction(c)
    for e, c in goal.terms():
        mat[monomials[e]][len(columns)] = Fraction(c)

    pivots = []
    r = 0
    for col in range(len(columns)):
        sel = next((i for i in range(r, rows) if mat[i][col]), None)
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(rows):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if mat[i][len(columns)]:
            return None  # inconsistent
    solution = [Fraction(0)] * len(columns)
    for i, col in enumerate(pivots):
        solution[col] = mat[i][len(columns)]
    if any(s.denominator != 1 for s in solution):
        return None
    return [int(s) for s in solution]


def _membership(candidate: LaurentPoly, gens: Sequence[LaurentPoly], bound: int) -> str:
    """Sound-incomplete membership in Z[gens]: 'member', 'not_member'
    (by variable support), or 'unknown'."""
    allowed = set()
    for g in gens:
        allowed |= g.support()
    if not candidate.support() <= allowed:
        return "not_member"
    if candidate.as_int() is not None:
        return "member"
    if any(candidate == g for g in gens):
        return "member"
    # monomials in the generators up to total degree `bound`
    products = [candidate.ring.one()]
    seen = {(0,) * len(gens)}
    layer = {(0,) * len(gens): candidate.ring.one()}
    for _ in range(bound):
        nxt = {}
        for alpha, p in layer.items():
            for i, g in enumerate(gens):
                beta = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1 :]
                if beta not in nxt:
                    nxt[beta] = p * g
        for beta in sorted(nxt):
            if beta not in seen:
                seen.add(beta)
                products.append(nxt[beta])
        layer = nxt
        if len(products) > DEFAULT_DEGREE_CAP:
            return "unknown"
    solution = _exact_solve(products, candidate)
    if solution is None:
        return "unknown"
    return "member"


def ideal_check(
    spec: MorphismSpec,
    depth: Union[int, None] = None,
    degree_bound: Union[int, None] = None,
    precheck: bool = True,
) -> IdealVerdict:
    """Decide whether f(A(source)) equals A(image seed), three-valued.

    Fast paths: images of exchangeables all exchangeable; inducible with
    acyclic source; inducible and surjective.  Otherwise generators of
    both sides are enumerated within budgets and compared by the sound
    membership test; the not_ideal certificate is a generator of the
    image algebra whose variable support escapes the image seed.
    """
    if depth is None:
        depth = default_depth(spec)
    if precheck and not check_morphism(spec, depth).ok:
        raise ValueError("ideal_check requires a spec that passes check_morphism")

    tgt = spec.target
    if all(
        spec.images[x].as_variable() in tgt.matrix.ex for x in spec.source.matrix.ex
    ):
        return IdealVerdict(
            status="ideal",
            witness=None,
            fast_path="exchangeables-to-exchangeables",
            detail="f(ex) is contained in the target exchangeables",
        )
    if spec.inducible and _source_acyclic(spec.source):
        return IdealVerdict(
            status="ideal",
            witness=None,
            fast_path="inducible-acyclic-source",
            detail="inducible with finite acyclic source",
        )
    if spec.inducible and _surjective_on_slots(spec):
        return IdealVerdict(
            status="ideal",
            witness=None,
            fast_path="inducible-surjective",
            detail="inducible and surjective onto the target cluster",
        )

    img = image_seed(spec)
    src_class = enumerate_class(spec.source, max_depth=depth)
    source_values = cluster_variables(src_class)
    try:
        f_gens = []
        for value in source_values.exchangeable + source_values.frozen:
            g = _f_eval(spec, value)
            if g.as_int() is None and not any(g == h for h in f_gens):
                f_gens.append(g)
    except MissingImage as exc:
        return IdealVerdict(
            status="unknown",
            witness=None,
            fast_path=None,
            detail=f"cannot enumerate the image algebra: {exc}",
        )

    # support certificate: every element of A(f(Sigma)) is Laurent in the
    # image seed's variables, so a generator using any other target
    # variable lies outside
    allowed = {tgt.ring.position(v.name) for v in img.rows}
    for g in sorted(f_gens, key=LaurentPoly.sort_key):
        if not g.support() <= allowed:
            return IdealVerdict(
                status="not_ideal",
                witness=g,
                fast_path=None,
                detail=f"f(A) contains {g}, which involves variables outside "
                "the image seed",
            )

    img_class = enumerate_class(img, max_depth=max(depth, len(img.matrix.ex) + 2))
    if not (src_class.complete and img_class.complete):
        return IdealVerdict(
            status="unknown",
            witness=None,
            fast_path=None,
            detail="enumeration budget exhausted before closure",
        )
    img_values = cluster_variables(img_class)
    img_gens = [
        transport(v, tgt.ring)
        for v in img_values.exchangeable + img_values.frozen
    ]
    img_gens = [g for g in img_gens if g.as_int() is None]
    if degree_bound is None:
        degree = max(
            (max(sum(abs(x) for x in e) for e, _ in g.terms()) for g in img_gens + f_gens),
            default=1,
        )
        degree_bound = 2 * max(1, degree)
    for g in sorted(f_gens, key=LaurentPoly.sort_key):
        if _membership(g, img_gens, degree_bound) != "member":
            return IdealVerdict(
                status="unknown",
                witness=None,
                fast_path=None,
                detail=f"membership of {g} in the image algebra is undecided "
                f"at degree bound {degree_bound}",
            )
    for g in sorted(img_gens, key=LaurentPoly.sort_key):
        if _membership(g, f_gens, degree_bound) != "member":
            return IdealVerdict(
                status="unknown",
                witness=None,
                fast_path=None,
                detail=f"membership of {g} in f(A) is undecided at degree "
                f"bound {degree_bound}",
            )
    return IdealVerdict(
        status="ideal",
        witness=None,
        fast_path=None,
        detail="both generator inclusions certified by bounded membership",
    )


# -- injections ---------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentMatch:
    source_index: int
    freezing_index: int
    opposite: bool


@dataclass(frozen=True)
class InjectionReport:
    ex0: tuple  # target names: images of source exchangeables
    ex1: tuple  # target exchangeables outside the image
    ex2: tuple  # images of source frozen variables that are exchangeable
    fx0: tuple  # images of source frozen variables that are frozen
    fx1: tuple  # target frozen variables outside the image
    is_section: bool
    component_map: tuple


def analyze_injection(spec: MorphismSpec) -> InjectionReport:
    """Partition of the injection structure theorem: writes the target as
    ex0 ⊔ ex1 ⊔ ex2 ⊔ fx0 ⊔ fx1, verifies that every indecomposable
    component of the source (or its opposite) is a component of the
    freezing of the target at ex2, and reports whether the injection is a
    section (exactly when ex2 is empty)."""
    src, tgt = spec.source, spec.target
    imap = {}
    for v in src.rows:
        tv = spec.images[v].as_variable()
        if tv is None or tv not in tgt.rows:
            raise NotInjective(
                f"image of {v.name} is not a target initial variable"
            )
        imap[v] = tv
    if len(set(imap.values())) != len(imap):
        raise NotInjective("images of initial variables are not pairwise distinct")

    tgt_ex = set(tgt.matrix.ex)
    for x in src.matrix.ex:
        if imap[x] not in tgt_ex:
            raise NotComponentEmbedding(
                f"exchangeable {x.name} maps to a frozen target variable; "
                "the spec is not a rooted cluster morphism"
            )
    ex0 = [imap[x] for x in src.matrix.ex]
    ex2 = [imap[v] for v in src.matrix.fx if imap[v] in tgt_ex]
    fx0 = [imap[v] for v in src.matrix.fx if imap[v] not in tgt_ex]
    ex1 = [v for v in tgt.matrix.ex if v not in set(ex0) | set(ex2)]
    fx1 = [v for v in tgt.matrix.fx if v not in set(fx0)]

    frozen_target = freeze(tgt, ex2)
    src_names = {v: imap[v].name for v in src.rows}
    src_comps, _ = component_structure(src.matrix)
    tgt_comps, _ = component_structure(frozen_target.matrix)

    def comp_entries(matrix, comp, names):
        ex_pos, fx_pos = comp
        rows = matrix.rows
        out = {}
        for i in list(ex_pos) + list(fx_pos):
            for j in ex_pos:
                b = matrix.entries[i][j]
                if b:
                    out[(names.get(rows[i], rows[i].name), names.get(rows[j], rows[j].name))] = b
        return out

    tgt_by_exset = {}
    for ti, comp in enumerate(tgt_comps):
        ex_pos, _ = comp
        key = frozenset(frozen_target.rows[i].name for i in ex_pos)
        tgt_by_exset[key] = (ti, comp)

    matches = []
    for si, comp in enumerate(src_comps):
        ex_pos, _ = comp
        key = frozenset(src_names[src.rows[i]] for i in ex_pos)
        if key not in tgt_by_exset:
            raise NotComponentEmbedding(
                f"no component of the freezing has exchangeable set {sorted(key)}"
            )
        ti, tcomp = tgt_by_exset[key]
        src_entries = comp_entries(src.matrix, comp, src_names)
        tgt_entries = comp_entries(frozen_target.matrix, tcomp, {})
        if src_entries == tgt_entries:
            matches.append(ComponentMatch(si, ti, opposite=False))
        elif {k: -b for k, b in src_entries.items()} == tgt_entries:
            matches.append(ComponentMatch(si, ti, opposite=True))
        else:
            raise NotComponentEmbedding(
                f"source component {sorted(key)} does not match the freezing "
                "component (nor its opposite)"
            )

    return InjectionReport(
        ex0=tuple(v.name for v in ex0),
        ex1=tuple(v.name for v in ex1),
        ex2=tuple(v.name for v in ex2),
        fx0=tuple(v.name for v in fx0),
        fx1=tuple(v.name for v in fx1),
        is_section=not ex2,
        component_map=tuple(matches),
    )


# -- factorization / specialization ----------------------------------------------


def factorize_ideal(
    spec: MorphismSpec,
    depth: Union[int, None] = None,
    degree_bound: Union[int, None] = None,
):
    """Split an ideal morphism as surjection onto A(f(Sigma)) followed by
    the injection of the image seed into the target."""
    verdict = ideal_check(spec, depth=depth, degree_bound=degree_bound)
    if verdict.status != "ideal":
        raise NotIdeal(f"morphism is not certified ideal: {verdict.status}")
    img = image_seed(spec)

    def into_image(p: LaurentPoly) -> LaurentPoly:
        n = p.as_int()
        if n is not None:
            return img.ring.const(n)
        try:
            return transport(p, img.ring)
        except ValueError:
            raise NotIdeal(
                f"image value {p} escapes the image seed variables"
            ) from None

    surj_images = {v: into_image(spec.images[v]) for v in spec.source.rows}
    surj_table = {k: into_image(v) for k, v in spec.generator_table.items()}
    surjection = MorphismSpec(
        source=spec.source,
        target=img,
        images=surj_images,
        generator_table=surj_table,
    )
    inj_images = {v: spec.target.ring.gen(v.name) for v in img.rows}
    injection = MorphismSpec(source=img, target=spec.target, images=inj_images)
    return surjection, injection


def specialize(
    seed: Seed,
    drop: Iterable,
    values: Union[Mapping, None] = None,
) -> MorphismSpec:
    """Spec sending dropped variables to integers and keeping the rest.

    Dropping frozen variables to 1 always yields a morphism; any other
    request is built as stated and judged by check_morphism.
    """
    drop_vars = [seed.var(v) for v in drop]
    values = values or {}
    assigned = {seed.var(v): int(n) for v, n in values.items()}
    for v in drop_vars:
        assigned.setdefault(v, 1)
    keep_ex = [v for v in seed.matrix.ex if v not in drop_vars]
    keep_fx = [v for v in seed.matrix.fx if v not in drop_vars]
    target = subseed(seed, keep_ex, keep_fx)
    images = {}
    for v in seed.rows:
        if v in assigned:
            images[v] = target.ring.const(assigned[v])
        else:
            images[v] = target.ring.gen(v.name)
    return MorphismSpec(source=seed, target=target, images=images)


# -- tensor decomposition -----------------------------------------------------------


@dataclass(frozen=True)
class IdentGenerator:
    original: str
    left: tuple  # (component index, copy name)
    right: tuple
    display: str


@dataclass(frozen=True)
class TensorReport:
    decomposition: SeedDecomposition
    ideal_generators: tuple
    complete: bool
    variable_sets_match: Union[bool, None]
    detail: str = ""


def _tensor_display(t: int, left, right) -> str:
    def slot(pos, name):
        parts = ["1"] * t
        parts[pos] = name
        return "⊗".join(parts)

    return f"{slot(*left)} - {slot(*right)}"


def tensor_decomposition_report(
    seed: Seed,
    max_seeds: int = 10000,
    max_depth: int = 16,
) -> TensorReport:
    """Verify the variable-set partition of the tensor decomposition and
    report the identification ideal.

    The ideal is generated by one identification per extra copy of a
    shared frozen variable; the variable check compares the cluster
    variables of the whole seed with the disjoint union over components
    (frozen copies identified) plus the frozen variables.
    """
    dec = decompose_seed(seed)
    t = len(dec.components)
    gens = []
    for orig in sorted(dec.identification, key=lambda v: v.index):
        copies = dec.identification[orig]
        if len(copies) < 2:
            continue
        first = (copies[0][0], copies[0][1].name)
        for ci, copy in copies[1:]:
            gens.append(
                IdentGenerator(
                    original=orig.name,
                    left=first,
                    right=(ci, copy.name),
                    display=_tensor_display(t, first, (ci, copy.name)),
                )
            )

    whole = enumerate_class(seed, max_seeds=max_seeds, max_depth=max_depth)
    comp_classes = [
        enumerate_class(c, max_seeds=max_seeds, max_depth=max_depth)
        for c in dec.components
    ]
    complete = whole.complete and all(c.complete for c in comp_classes)
    match: Union[bool, None] = None
    detail = ""
    if complete:
        rename = {}
        for orig, copies in dec.identification.items():
            for _, copy in copies:
                rename[copy.name] = orig.name
        whole_vars = cluster_variables(whole)
        lhs = set(whole_vars.exchangeable) | set(whole_vars.frozen)
        rhs_parts = []
        for mc in comp_classes:
            cv = cluster_variables(mc)
            rhs_parts.append(
                {transport(v, seed.ring, rename=rename) for v in cv.exchangeable}
            )
        rhs = {seed.ring.gen(v) for v in seed.matrix.fx}
        total = sum(len(p) for p in rhs_parts) + len(rhs)
        for p in rhs_parts:
            rhs |= p
        match = rhs == lhs and total == len(rhs)
        if not match:
            detail = "variable sets differ or the union is not disjoint"
    else:
        detail = "enumeration budget exhausted before closure"
    return TensorReport(
        decomposition=dec,
        ideal_generators=tuple(gens),
        complete=complete,
        variable_sets_match=match,
        detail=detail,
    )
