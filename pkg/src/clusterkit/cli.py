"""Command-line front end: JSON in, JSON or DOT out.

Exit codes: 0 success, 1 negative mathematical verdict (not a morphism,
not ideal, not skew-symmetrizable, not a section), 2 usage or input
error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import (
    ClusterKitError,
    NotComponentEmbedding,
    NotInjective,
    NotSkewSymmetrizable,
    ParseError,
)
from .morphism import (
    MorphismSpec,
    analyze_injection,
    check_morphism,
    ideal_check,
    image_seed,
    morphism_from_json,
    specialize,
)
from .pairs import (
    classify_cotorsion_pairs,
    component_report,
    enumerate_complete_pairs,
)
from .quiver import quiver_of_seed, to_dot
from .reports import (
    decomposition_json,
    graph_json,
    ideal_json,
    injection_json,
    pair_json,
    spec_json,
    verdict_json,
)
from .seed import (
    DEFAULT_MAX_DEPTH,
    DEFAULT_MAX_SEEDS,
    Seed,
    apply_sequence,
    canonical_json,
    cluster_variables,
    digest,
    enumerate_class,
    freeze,
    glue_seeds,
    mutate,
    seed_from_json,
    seed_to_json,
    validate,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ParseError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from None


def _load_seed(path: str, check: bool = True) -> Seed:
    seed = seed_from_json(_read_json(path))
    if check:
        # mutation and enumeration presuppose a skew-symmetrizable seed
        validate(seed)
    return seed


def _load_morphism(path: str) -> MorphismSpec:
    base = Path(path).parent if path != "-" else Path.cwd()

    def load_seed_at(rel: str) -> Seed:
        return _load_seed(str((base / rel) if not Path(rel).is_absolute() else Path(rel)))

    spec = morphism_from_json(_read_json(path), load_seed=load_seed_at)
    validate(spec.source)
    validate(spec.target)
    return spec


def _emit(obj) -> None:
    sys.stdout.write(canonical_json(obj))


def _emit_text(text: str) -> None:
    sys.stdout.write(text)


def _names(csv: str) -> list:
    return [part for part in csv.split(",") if part] if csv else []


def _max_seeds_default() -> int:
    env = os.environ.get("CLUSTERKIT_MAX_SEEDS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ParseError(
                f"CLUSTERKIT_MAX_SEEDS must be an integer, got {env!r}"
            ) from None
    return DEFAULT_MAX_SEEDS


# -- subcommand handlers -------------------------------------------------------


def _cmd_validate(args) -> int:
    seed = _load_seed(args.seed, check=False)
    try:
        d = validate(seed)
    except NotSkewSymmetrizable as exc:
        _emit({"valid": False, "detail": str(exc)})
        return EXIT_NEGATIVE
    _emit({"valid": True, "symmetrizer": {v.name: n for v, n in d.items()}})
    return EXIT_OK


def _cmd_mutate(args) -> int:
    seed = _load_seed(args.seed)
    if args.at:
        result = mutate(seed, args.at)
    else:
        result = apply_sequence(seed, _names(args.seq))
    _emit(seed_to_json(result))
    return EXIT_OK


def _cmd_variables(args) -> int:
    seed = _load_seed(args.seed)
    mclass = enumerate_class(seed, max_seeds=args.max_seeds, max_depth=args.max_depth)
    cv = cluster_variables(mclass)
    _emit(
        {
            "exchangeable": [str(v) for v in cv.exchangeable],
            "frozen": [str(v) for v in cv.frozen],
            "complete": mclass.complete,
            "seed_count": len(mclass.seeds),
            "depth_reached": mclass.depth_reached,
        }
    )
    return EXIT_OK


def _cmd_exchange_graph(args) -> int:
    seed = _load_seed(args.seed)
    mclass = enumerate_class(seed, max_seeds=args.max_seeds, max_depth=args.max_depth)
    if args.dot:
        lines = ["graph exchange {"]
        for s in mclass.seeds:
            label = ", ".join(str(v) for v in s.values[: len(s.matrix.ex)])
            lines.append(f'  "{digest(s)}" [label="{label}"];')
        seen = set()
        for a, x, b in sorted(mclass.edges):
            if frozenset((a, b)) in seen:
                continue
            seen.add(frozenset((a, b)))
            lines.append(f'  "{a}" -- "{b}" [label="{x}"];')
        lines.append("}")
        _emit_text("\n".join(lines) + "\n")
    else:
        _emit(graph_json(mclass))
    return EXIT_OK


def _cmd_decompose(args) -> int:
    seed = _load_seed(args.seed)
    payload = decomposition_json(seed)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, comp in enumerate(payload["components"]):
            (out / f"component{i}.json").write_text(canonical_json(comp))
        (out / "identification.json").write_text(
            canonical_json(
                {
                    "identification": payload["identification"],
                    "isolated_frozen": payload["isolated_frozen"],
                }
            )
        )
    _emit(payload)
    return EXIT_OK


def _cmd_glue(args) -> int:
    left = _load_seed(args.left)
    right = _load_seed(args.right)
    pairing = {}
    for item in args.pair or []:
        if ":" not in item:
            raise ParseError(f"--pair wants left:right, got {item!r}")
        a, b = item.split(":", 1)
        pairing[a] = b
    _emit(seed_to_json(glue_seeds(left, right, pairing)))
    return EXIT_OK


def _cmd_freeze(args) -> int:
    seed = _load_seed(args.seed)
    _emit(seed_to_json(freeze(seed, _names(args.at))))
    return EXIT_OK


def _cmd_specialize(args) -> int:
    seed = _load_seed(args.seed)
    drop = []
    values = {}
    for item in args.drop or []:
        if "=" in item:
            name, raw = item.split("=", 1)
            try:
                values[name] = int(raw)
            except ValueError:
                raise ParseError(f"--drop value must be an integer: {item!r}") from None
        else:
            name = item
        drop.append(name)
    spec = specialize(seed, drop, values)
    verdict = check_morphism(spec, depth=args.depth)
    _emit({"spec": spec_json(spec), "verdict": verdict_json(verdict)})
    return EXIT_OK if verdict.ok else EXIT_NEGATIVE


def _cmd_quiver(args) -> int:
    seed = _load_seed(args.seed)
    d = validate(seed)
    q = quiver_of_seed(seed, d)
    if args.dot:
        _emit_text(to_dot(q))
        return EXIT_OK
    _emit(
        {
            "seed": seed_to_json(seed),
            "symmetrizer": {v.name: n for v, n in d.items()},
            "valued_arrows": [
                {"source": a.source.name, "target": a.target.name, "v": [a.v1, a.v2]}
                for a in q.valued_arrows
            ],
            "frozen_arrows": [
                {"source": a.source.name, "target": a.target.name, "mult": a.mult}
                for a in q.frozen_arrows
            ],
        }
    )
    return EXIT_OK


def _cmd_check_morphism(args) -> int:
    spec = _load_morphism(args.morphism)
    verdict = check_morphism(spec, depth=args.depth)
    _emit(verdict_json(verdict))
    return EXIT_OK if verdict.ok else EXIT_NEGATIVE


def _cmd_image_seed(args) -> int:
    spec = _load_morphism(args.morphism)
    verdict = check_morphism(spec, depth=args.depth)
    if not (verdict.cm1 and verdict.cm2):
        _emit({"error": "not a morphism", "verdict": verdict_json(verdict)})
        return EXIT_NEGATIVE
    _emit(seed_to_json(image_seed(spec)))
    return EXIT_OK


def _cmd_ideal_check(args) -> int:
    spec = _load_morphism(args.morphism)
    verdict = check_morphism(spec, depth=args.depth)
    if not verdict.ok:
        _emit({"error": "not a morphism", "verdict": verdict_json(verdict)})
        return EXIT_NEGATIVE
    result = ideal_check(
        spec, depth=args.depth, degree_bound=args.degree_bound, precheck=False
    )
    _emit(ideal_json(result))
    return EXIT_NEGATIVE if result.status == "not_ideal" else EXIT_OK


def _cmd_analyze_injection(args) -> int:
    spec = _load_morphism(args.morphism)
    try:
        report = analyze_injection(spec)
    except (NotInjective, NotComponentEmbedding) as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return EXIT_NEGATIVE
    _emit(injection_json(report))
    return EXIT_OK if report.is_section else EXIT_NEGATIVE


def _cmd_complete_pairs(args) -> int:
    seed = _load_seed(args.seed)
    if args.all:
        classification = classify_cotorsion_pairs(seed, allow_large=args.allow_large)
        payload = [
            {
                "freezing": list(ex0),
                **component_report(seed, ex0),
                "pairs": [pair_json(p) for p in pairs],
            }
            for ex0, pairs in classification.items()
        ]
        _emit({"classifications": payload})
    else:
        freezing = _names(args.freeze or "")
        pairs = enumerate_complete_pairs(seed, freezing)
        _emit(
            {
                **component_report(seed, freezing),
                "pairs": [pair_json(p) for p in pairs],
            }
        )
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clusterkit",
        description="Exact toolkit for rooted cluster algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def seed_arg(p):
        p.add_argument("seed", help="seed JSON file, or - for stdin")

    def budget_args(p):
        p.add_argument("--max-seeds", type=int, default=None)
        p.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)

    p = sub.add_parser("validate", help="check skew-symmetrizability")
    seed_arg(p)
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("mutate", help="mutate at a variable or along a sequence")
    seed_arg(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--at", metavar="VAR")
    group.add_argument("--seq", metavar="V1,V2,...")
    p.set_defaults(fn=_cmd_mutate)

    p = sub.add_parser("variables", help="enumerate cluster variables")
    seed_arg(p)
    budget_args(p)
    p.set_defaults(fn=_cmd_variables)

    p = sub.add_parser("exchange-graph", help="enumerate the exchange graph")
    seed_arg(p)
    budget_args(p)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(fn=_cmd_exchange_graph)

    p = sub.add_parser("decompose", help="indecomposable components")
    seed_arg(p)
    p.add_argument("--out-dir", metavar="DIR")
    p.set_defaults(fn=_cmd_decompose)

    p = sub.add_parser("glue", help="glue two seeds along frozen variables")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--pair", action="append", metavar="LEFT:RIGHT")
    p.set_defaults(fn=_cmd_glue)

    p = sub.add_parser("freeze", help="freeze exchangeable variables")
    seed_arg(p)
    p.add_argument("--at", required=True, metavar="V1,V2,...")
    p.set_defaults(fn=_cmd_freeze)

    p = sub.add_parser("specialize", help="send variables to integers")
    seed_arg(p)
    p.add_argument("--drop", action="append", metavar="VAR[=INT]")
    p.add_argument("--depth", type=int, default=None)
    p.set_defaults(fn=_cmd_specialize)

    p = sub.add_parser("quiver", help="ice valued quiver of a seed")
    seed_arg(p)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(fn=_cmd_quiver)

    p = sub.add_parser("check-morphism", help="verify CM1-CM3")
    p.add_argument("morphism", help="morphism JSON file, or - for stdin")
    p.add_argument("--depth", type=int, default=None)
    p.set_defaults(fn=_cmd_check_morphism)

    p = sub.add_parser("image-seed", help="image seed of a morphism")
    p.add_argument("morphism")
    p.add_argument("--depth", type=int, default=None)
    p.set_defaults(fn=_cmd_image_seed)

    p = sub.add_parser("ideal-check", help="three-valued ideal verdict")
    p.add_argument("morphism")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--degree-bound", type=int, default=None)
    p.set_defaults(fn=_cmd_ideal_check)

    p = sub.add_parser("analyze-injection", help="section analysis of an injection")
    p.add_argument("morphism")
    p.set_defaults(fn=_cmd_analyze_injection)

    p = sub.add_parser("complete-pairs", help="enumerate complete pairs")
    seed_arg(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--freeze", metavar="V1,V2,...")
    group.add_argument("--all", action="store_true")
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(fn=_cmd_complete_pairs)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8642)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(fn=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    if getattr(args, "max_seeds", "absent") is None:
        try:
            args.max_seeds = _max_seeds_default()
        except ParseError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.fn(args)
    except ClusterKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
