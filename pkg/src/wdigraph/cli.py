"""Command-line interface.

Subcommands build digraphs (family, lv, regular, example), decide validity
(validate, oracle), and compute module-level data (analyze, character,
identities, bar-op, theorems, export-dot).  Exit codes: 0 for success or
acceptance, 1 for rejection or inconsistency, 2 for usage errors.  All output
is deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import sys

from .coxeter import CoxeterSystem, DiagramAutomorphism
from .digraph import SLabeledDigraph, load_digraph
from .exactalg import char_poly, lampoly_str
from .families import (EXAMPLE_NAMES, FamilySpec, build_example, build_family,
                       build_lv, build_regular)
from .modrep import (ModuleRep, bar_from_source, linear_char_dims,
                     reversal_identities, theorem_checkers, zero_hecke_action)
from .validator import brute_force_check, is_w_digraph


class UsageError(Exception):
    pass


def _emit_digraph(g: SLabeledDigraph) -> int:
    print(json.dumps(g.to_json(), indent=2, sort_keys=True))
    return 0


def _load_system(path: str) -> CoxeterSystem:
    try:
        return CoxeterSystem.from_json(path)
    except FileNotFoundError as exc:
        raise UsageError(f"system file not found: {exc.filename}") from exc
    except (json.JSONDecodeError, KeyError, ValueError) as exc:
        raise UsageError(f"bad system file {path}: {exc}") from exc


def _load_digraph(path: str) -> SLabeledDigraph:
    try:
        return load_digraph(path)
    except FileNotFoundError as exc:
        raise UsageError(f"digraph file not found: {exc.filename}") from exc
    except (json.JSONDecodeError, KeyError, ValueError) as exc:
        raise UsageError(f"bad digraph file {path}: {exc}") from exc


def _parse_star(system: CoxeterSystem, text: str | None) -> DiagramAutomorphism:
    if not text or text == "id":
        return DiagramAutomorphism.identity(system)
    mapping = {}
    for part in text.split(","):
        if ":" not in part:
            raise UsageError(f"bad automorphism entry {part!r}; use src:dst")
        src, dst = part.split(":", 1)
        mapping[src.strip()] = dst.strip()
    try:
        return DiagramAutomorphism.from_mapping(system, mapping)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _parse_words(system: CoxeterSystem, text: str):
    try:
        return [system.element(word) for word in text.split(",") if word != ""]
    except ValueError as exc:
        raise UsageError(f"bad word list {text!r}: {exc}") from exc


def _apply_config(args, obj):
    """Propagate global bounds onto a loaded system or digraph."""
    system = obj.system if hasattr(obj, "system") else obj
    if args.orbit_bound:
        if args.orbit_bound <= 0:
            raise UsageError("--orbit-bound must be positive")
        system.orbit_bound = args.orbit_bound
    return obj


def cmd_family(args) -> int:
    if args.system:
        system = _load_system(args.system)
    elif args.n:
        system = CoxeterSystem.dihedral(args.n, (args.s, args.t))
    else:
        raise UsageError("family needs --system or --n")
    _apply_config(args, system)
    try:
        spec = FamilySpec(args.figure, args.m, args.s, args.t)
        return _emit_digraph(build_family(system, spec))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_lv(args) -> int:
    system = _apply_config(args, _load_system(args.system))
    star = _parse_star(system, args.star)
    try:
        return _emit_digraph(build_lv(system, star, args.length_bound))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_regular(args) -> int:
    system = _apply_config(args, _load_system(args.system))
    try:
        return _emit_digraph(build_regular(system, args.length_bound))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_example(args) -> int:
    try:
        return _emit_digraph(build_example(args.name))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_validate(args) -> int:
    g = _apply_config(args, _load_digraph(args.digraph))
    use_oracle = args.oracle or args.both
    use_classifier = not args.oracle or args.both
    accepted = True
    if use_classifier:
        verdict = is_w_digraph(g)
        accepted = verdict.is_w_digraph
        if args.explain or verdict.structural_violations:
            print(verdict.describe())
        else:
            print("accepted" if accepted else "rejected")
    if use_oracle:
        witness = brute_force_check(g)
        oracle_ok = witness is None
        print("oracle: ok" if oracle_ok else
              f"oracle: failing {witness.kind} relation for "
              f"{','.join(witness.generators)} at column {witness.column}")
        if args.both and oracle_ok != accepted:
            print("DISAGREEMENT between classifier and oracle")
            return 1
        accepted = accepted and oracle_ok if args.both else oracle_ok
    return 0 if accepted else 1


def cmd_oracle(args) -> int:
    g = _apply_config(args, _load_digraph(args.digraph))
    witness = brute_force_check(g)
    if witness is None:
        print("oracle: ok")
        return 0
    print(f"oracle: failing {witness.kind} relation for "
          f"{','.join(witness.generators)} at column {witness.column}")
    return 1


def cmd_analyze(args) -> int:
    g = _apply_config(args, _load_digraph(args.digraph))
    analysis = g.analyze()
    dims = linear_char_dims(g)
    if args.format == "json":
        payload = {
            "components": [
                {"vertices": list(c.vertices), "sources": list(c.sources),
                 "sinks": list(c.sinks), "acyclic": c.acyclic}
                for c in analysis.components],
            "dim_ind": dims.dim_ind,
            "dim_sgn": dims.dim_sgn,
            "violations": g.validate_structure(),
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for problem in g.validate_structure():
            print(f"violation: {problem}")
        for i, c in enumerate(analysis.components):
            print(f"component {i}: {len(c.vertices)} vertices, "
                  f"sources {list(c.sources)}, sinks {list(c.sinks)}, "
                  f"{'acyclic' if c.acyclic else 'cyclic'}")
        print(f"dim ind = {dims.dim_ind} (components {dims.predicted_ind}), "
              f"dim sgn = {dims.dim_sgn} (acyclic {dims.predicted_sgn})")
    return 0


def cmd_character(args) -> int:
    g = _apply_config(args, _load_digraph(args.digraph))
    rep = ModuleRep(g)
    words = _parse_words(g.system, args.words)
    for w in words:
        value = rep.character(w)
        print(f"character(T[{w}]) = {value}")
        if args.charpoly:
            cp = char_poly(rep.rho(w))
            print(f"charpoly(T[{w}]) = {lampoly_str(cp)}")
    return 0


def cmd_identities(args) -> int:
    g = _apply_config(args, _load_digraph(args.digraph))
    words = _parse_words(g.system, args.words)
    all_ok = True
    for report in reversal_identities(g, words):
        bits = [f"word {report.word}:",
                f"twist matrix {'ok' if report.twist_matrix else 'FAIL'}",
                f"trace {'ok' if report.twist_trace else 'FAIL'}"]
        if report.skipped:
            bits.append(f"sign skipped ({report.skipped})")
        else:
            bits.append(f"sign matrix {'ok' if report.sign_matrix else 'FAIL'}")
            bits.append(f"trace {'ok' if report.sign_trace else 'FAIL'}")
            all_ok = all_ok and report.sign_matrix and report.sign_trace
        all_ok = all_ok and report.twist_matrix and report.twist_trace
        print("  ".join(bits))
    return 0 if all_ok else 1


def cmd_bar_op(args) -> int:
    g = _apply_config(args, _load_digraph(args.digraph))
    try:
        sol = bar_from_source(g)
    except ValueError as exc:
        print(f"error: {exc}")
        return 1
    if sol.consistent:
        print("bar operator: consistent source-fixing solution found")
        return 0
    edge, got, tree = sol.witness
    print(f"bar operator: inconsistent at edge {edge.src} -> {edge.dst} "
          f"[{edge.label}, {edge.style}]")
    return 1


def cmd_theorems(args) -> int:
    g = _apply_config(args, _load_digraph(args.digraph))
    report = theorem_checkers(g)
    payload = {
        "source_sink": report.source_sink,
        "index_bound": report.index_bound,
        "vertex_bound": report.vertex_bound,
        "equal_lengths": report.equal_lengths,
        "wgraph_obstruction": report.wgraph_obstruction,
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")
    failed = any(isinstance(v, dict) and v.get("status") == "fail"
                 for v in payload.values())
    return 1 if failed else 0


def cmd_export_dot(args) -> int:
    print(_load_digraph(args.digraph).to_dot())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wdigraph",
        description="Exact computation with labeled digraphs for Coxeter "
                    "systems and their Hecke-algebra modules.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--orbit-bound", type=int, default=0,
                        help="safety bound on braid-orbit sizes")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for any randomized subcommand")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", help="emit a dihedral template digraph")
    p.add_argument("--figure", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", default="s")
    p.add_argument("--t", default="t")
    p.add_argument("--n", type=int, help="build over the dihedral system I2(n)")
    p.add_argument("--system", help="system file to build over")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("lv", help="twisted-involution digraph of a system")
    p.add_argument("--system", required=True)
    p.add_argument("--star", help="diagram automorphism, e.g. r:t,s:s,t:r")
    p.add_argument("--length-bound", type=int)
    p.set_defaults(func=cmd_lv)

    p = sub.add_parser("regular", help="left-regular digraph of a system")
    p.add_argument("--system", required=True)
    p.add_argument("--length-bound", type=int)
    p.set_defaults(func=cmd_regular)

    p = sub.add_parser("example", help="a named example digraph")
    p.add_argument("name", choices=EXAMPLE_NAMES)
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("validate", help="decide validity by classification")
    p.add_argument("digraph")
    p.add_argument("--explain", action="store_true")
    p.add_argument("--oracle", action="store_true",
                   help="use the brute-force relation check instead")
    p.add_argument("--both", action="store_true",
                   help="run both deciders and cross-check")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("oracle", help="brute-force relation check")
    p.add_argument("digraph")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("analyze", help="components, sources, sinks, acyclicity")
    p.add_argument("digraph")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("character", help="character values at given words")
    p.add_argument("digraph")
    p.add_argument("--words", required=True)
    p.add_argument("--charpoly", action="store_true")
    p.set_defaults(func=cmd_character)

    p = sub.add_parser("identities", help="reversal identities at given words")
    p.add_argument("digraph")
    p.add_argument("--words", required=True)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("bar-op", help="source-fixing bar operator propagation")
    p.add_argument("digraph")
    p.set_defaults(func=cmd_bar_op)

    p = sub.add_parser("theorems", help="structure theorem report")
    p.add_argument("digraph")
    p.set_defaults(func=cmd_theorems)

    p = sub.add_parser("export-dot", help="emit the digraph in DOT format")
    p.add_argument("digraph")
    p.set_defaults(func=cmd_export_dot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already; normalize others
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
