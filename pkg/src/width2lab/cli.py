"""Command line interface and the text document format.

Documents start with a header line (``graph n``, ``poset n``, ``bichain n``
or ``labelled <kind> n``) followed by order-insensitive body lines; blank
lines and ``#`` comments are ignored. Printing is canonical.
"""
from __future__ import annotations

import argparse
import os
import re
import sys

import numpy as np

from . import catalog, decomposition, families, metrics, verify, wqo
from .structures import (Bichain, Graph, LabelledStructure, Poset, StructureError,
                         bichain_of_realizer, comp, cycle_graph, embeds, inc, o,
                         obstructions, poset_from_relations, realizers,
                         recognize_bipartite_permutation, width)

EXIT_OK, EXIT_USAGE, EXIT_PROPERTY = 0, 1, 2


class DocumentError(ValueError):
    pass


# ---------------------------------------------------------------- parsing

def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise DocumentError(f"line {no}: expected an integer, got {tok!r}") from None


def _check_vertex(v: int, n: int, no: int) -> int:
    if not 0 <= v < n:
        raise DocumentError(f"line {no}: vertex {v} out of range 0..{n - 1}")
    return v


def _parse_base(kind: str, n: int, body) -> object:
    if kind == "graph":
        edges = []
        for no, line in body:
            parts = line.split()
            if len(parts) != 2:
                raise DocumentError(f"line {no}: expected 'u v'")
            u, v = (_check_vertex(_int(t, no), n, no) for t in parts)
            if u == v:
                raise DocumentError(f"line {no}: loop at {u}")
            edges.append((u, v))
        return Graph.from_edges(n, edges)
    if kind == "poset":
        pairs = []
        for no, line in body:
            m = re.fullmatch(r"(\S+)\s*<\s*(\S+)", line)
            if not m:
                raise DocumentError(f"line {no}: expected 'u < v'")
            u, v = (_check_vertex(_int(t, no), n, no) for t in m.groups())
            if u == v:
                raise DocumentError(f"line {no}: cycle {u} < {u}")
            pairs.append((u, v))
        try:
            return poset_from_relations(pairs, n)
        except StructureError as exc:
            raise DocumentError(f"invariant violation: {exc} (cycle)") from None
    if kind == "bichain":
        body = list(body)
        if n == 0 and not body:
            return Bichain([])
        if len(body) != 1:
            raise DocumentError("bichain body must be one line of integers")
        no, line = body[0]
        sigma = [_int(t, no) for t in line.split()]
        if sorted(sigma) != list(range(n)):
            raise DocumentError(f"line {no}: not a bijection of 0..{n - 1}")
        return Bichain(sigma)
    raise DocumentError(f"unknown kind {kind!r}")


def parse(text: str):
    """Parse one document into a Graph, Poset, Bichain or LabelledStructure."""
    lines = list(_lines(text))
    if not lines:
        raise DocumentError("empty document")
    no, header = lines[0]
    parts = header.split()
    labelled = parts[0] == "labelled"
    if labelled:
        parts = parts[1:]
    if len(parts) != 2 or parts[0] not in ("graph", "poset", "bichain"):
        raise DocumentError(f"line {no}: bad header {header!r}")
    kind, n = parts[0], _int(parts[1], no)
    if n < 0:
        raise DocumentError(f"line {no}: negative size")
    body = lines[1:]
    if not labelled:
        return _parse_base(kind, n, body)
    base_lines, labels, order = [], {}, []
    for no, line in body:
        tok = line.split()
        if tok[0] == "label":
            if len(tok) != 3:
                raise DocumentError(f"line {no}: expected 'label u l'")
            u = _check_vertex(_int(tok[1], no), n, no)
            labels[u] = _int(tok[2], no)
        elif tok[0] == "order":
            m = re.fullmatch(r"order\s+(\S+)\s*<=\s*(\S+)", line)
            if not m:
                raise DocumentError(f"line {no}: expected 'order a <= b'")
            order.append(tuple(_int(t, no) for t in m.groups()))
        else:
            base_lines.append((no, line))
    base = _parse_base(kind, n, base_lines)
    if len(labels) != n:
        raise DocumentError("every vertex needs a label line")
    k = 1 + max([*labels.values(), *(x for pair in order for x in pair)], default=0)
    if any(x < 0 for x in labels.values()):
        raise DocumentError("labels must be nonnegative")
    try:
        rel = poset_from_relations(order, k).leq
    except StructureError as exc:
        raise DocumentError(f"invariant violation in label order: {exc}") from None
    return LabelledStructure(base, [labels[v] for v in range(n)], rel)


def _base_lines(X) -> list[str]:
    if isinstance(X, Graph):
        return [f"{u} {v}" for u, v in sorted(X.edges())]
    if isinstance(X, Poset):
        return [f"{u} < {v}" for u, v in sorted(X.cover_pairs())]
    if isinstance(X, Bichain):
        return [" ".join(map(str, X.sigma))] if X.n else []
    raise DocumentError(f"cannot print {type(X).__name__}")


def to_text(X) -> str:
    """Canonical text of a document (covers only for posets)."""
    if isinstance(X, LabelledStructure):
        out = [f"labelled {X.base.kind} {X.n}", *_base_lines(X.base)]
        out += [f"label {v} {x}" for v, x in enumerate(X.labels)]
        k = X.label_order.shape[0]
        out += [f"order {a} <= {b}" for a in range(k) for b in range(k)
                if a != b and X.label_order[a, b]]
        return "\n".join(out) + "\n"
    return "\n".join([f"{X.kind} {X.n}", *_base_lines(X)]) + "\n"


# -------------------------------------------------------- structure names

_SHORT = {
    "DF": families.double_fork, "P": families.path_graph, "C": cycle_graph,
    "H": families.half_graph,
    "K": lambda k: Graph(~np.eye(k, dtype=bool)),
}


def structure_from_name(name: str):
    """``DF5``, ``P6`` (path), ``C5``, ``H3``, ``K3``, ``Tag:params`` for any
    family tag (``P2:12``, ``Kite1:5``), or a document file path."""
    if os.path.exists(name):
        with open(name) as fh:
            return parse(fh.read())
    if ":" in name:
        tag, _, rest = name.partition(":")
        params = [int(x) for x in rest.split(",") if x]
        return families.family(tag, *params)
    m = re.fullmatch(r"(DF|P|C|H|K)(\d+)", name)
    if not m:
        raise StructureError(f"unknown structure name {name!r}")
    return _SHORT[m.group(1)](int(m.group(2)))


# ---------------------------------------------------------------- output

def _fmt(v) -> str:
    if isinstance(v, float) and v in (float("inf"), float("-inf")):
        return "inf" if v > 0 else "-inf"
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt(x) for x in v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def emit(prose: str, machine: dict, out=None) -> None:
    out = out or sys.stdout
    if prose:
        out.write(prose if prose.endswith("\n") else prose + "\n")
    out.write("---\n")
    for k, v in machine.items():
        out.write(f"{k}={_fmt(v)}\n")


def _read_doc(path: str | None):
    if path in (None, "-"):
        return parse(sys.stdin.read())
    with open(path) as fh:
        return parse(fh.read())


# -------------------------------------------------------------- commands

def cmd_convert(args) -> int:
    X = _read_doc(args.input)
    to = args.to
    if to in ("comp", "inc"):
        P = o(X) if isinstance(X, Bichain) else X
        if not isinstance(P, Poset):
            raise StructureError(f"{to} needs a poset or bichain")
        Y = comp(P) if to == "comp" else inc(P)
    elif to == "poset":
        if isinstance(X, Bichain):
            Y = o(X)
        elif isinstance(X, Graph):
            Y = recognize_bipartite_permutation(X)
            if Y is None:
                raise StructureError("graph is not a bipartite permutation graph")
        else:
            Y = X
    elif to == "bichain":
        P = X if isinstance(X, Poset) else recognize_bipartite_permutation(X) \
            if isinstance(X, Graph) else None
        if P is None:
            raise StructureError("no poset to realize")
        found = realizers(P)
        if not found:
            raise StructureError("dimension exceeds two")
        Y = bichain_of_realizer(*found[0])
    else:  # pragma: no cover - argparse restricts choices
        raise StructureError(f"unknown target {to!r}")
    sys.stdout.write(to_text(Y))
    return EXIT_OK


def cmd_metric(args) -> int:
    X = _read_doc(args.input)
    P = o(X) if isinstance(X, Bichain) else X if isinstance(X, Poset) else None
    G = inc(P) if P is not None else X
    if args.oscillation and P is None:
        raise StructureError("--oscillation needs a poset or bichain")
    rep = metrics.metric_report(G, P if args.oscillation else None)
    machine = {"n": G.n, "connected": G.is_connected(), "diameter": rep.diameter,
               "detour": rep.detour, "deg3_diameter": rep.deg3_diameter}
    prose = [f"{G.n}-vertex graph: diameter {rep.diameter}, detour {rep.detour}"]
    if args.oscillation:
        prose.append("oscillation distance:")
        prose += [" ".join(str(int(x)) for x in row) for row in rep.oscillation]
        audit = metrics.audit_metric_inequalities(P)
        machine["oscillation_diameter"] = int(rep.oscillation.max(initial=0))
        machine["inequalities_ok"] = audit.ok
    emit("\n".join(prose), machine)
    return EXIT_OK


def _sets(family) -> str:
    return " ".join("{" + ",".join(map(str, sorted(M))) + "}" for M in family) or "(none)"


def cmd_decompose(args) -> int:
    X = _read_doc(args.input)
    what = args.what
    if what == "modules":
        fam = decomposition.modules_of(X)
        emit(f"modules: {_sets(fam.nontrivial)}\nstrong: {_sets(fam.strong)}\n"
             f"components: {_sets(fam.components)}",
             {"modules": len(fam.modules), "strong": len(fam.strong),
              "components": len(fam.components)})
    elif what == "prime":
        p = decomposition.is_prime(X)
        emit("prime" if p else "not prime", {"prime": p})
    elif what == "quotient":
        if isinstance(X, Poset):
            cq = decomposition.chain_module_quotient(X)
            sys.stdout.write(to_text(cq.quotient))
            emit(f"classes: {_sets(cq.classes)}",
                 {"classes": len(cq.classes), "lex_sum_ok": cq.lex_sum_ok,
                  "quotient_chain_free": cq.quotient_chain_free})
        else:
            fam = decomposition.modules_of(X)
            sys.stdout.write(to_text(fam.quotient))
            emit(f"components: {_sets(fam.components)}", {"components": len(fam.components)})
    elif what in ("realizers", "unique"):
        if not isinstance(X, Poset):
            raise StructureError(f"{what} needs a poset")
        found = realizers(X)
        if what == "realizers":
            prose = "\n".join(f"{' '.join(map(str, a))} | {' '.join(map(str, b))}"
                              for a, b in found) or "dimension exceeds two"
            emit(prose, {"realizers": len(found)})
        else:
            rep = decomposition.realizability_report(X)
            emit("uniquely realizable" if rep.criterion else "not uniquely realizable",
                 {"unique": rep.criterion, "oracle": rep.oracle,
                  "realizers": rep.realizer_count})
    return EXIT_OK


def cmd_recognize(args) -> int:
    X = _read_doc(args.input)
    if isinstance(X, Poset):
        w = width(X)
        emit(f"width {w}", {"width": w, "width_two": w <= 2})
        return EXIT_OK
    if not isinstance(X, Graph):
        raise StructureError("recognize needs a graph or poset")
    P = recognize_bipartite_permutation(X)
    if P is None:
        found = obstructions(X)
        emit(f"not a bipartite permutation graph; obstructions: {', '.join(found) or 'other'}",
             {"bipartite_permutation": False, "obstructions": found})
        return EXIT_OK
    sys.stdout.write(to_text(P))
    emit("bipartite permutation graph", {"bipartite_permutation": True})
    return EXIT_OK


def cmd_embed(args) -> int:
    A, B = _read_doc(args.a), _read_doc(args.b)
    allow = ["direct"] + [s for s in (args.allow or "").split(",") if s]
    emb = embeds(A, B, allow)
    if emb is None:
        emit("no embedding", {"embeds": False})
    else:
        emit(f"embedding ({emb.variant}): " + " ".join(f"{i}->{j}" for i, j in enumerate(emb.map)),
             {"embeds": True, "variant": emb.variant, "map": list(emb.map)})
    return EXIT_OK


def cmd_family(args) -> int:
    X = families.family(args.tag, *args.params)
    if isinstance(X, families.SturmianOrientation):
        emit(f"word {X.word}", {"p": X.p, "q": X.q, "word": X.word,
                                "arcs": [f"{u}>{v}" for u, v in X.arcs]})
        return EXIT_OK
    sys.stdout.write(to_text(X))
    return EXIT_OK


def _class_spec(args) -> wqo.ClassSpec:
    if (args.age is None) == (args.avoid is None):
        raise StructureError("give exactly one of --age and --avoid")
    raw = args.age if args.age is not None else args.avoid
    names = [] if raw.lower() in ("", "none") else raw.split(",")
    structs = [structure_from_name(x) for x in names if x]
    if args.age is not None:
        return wqo.age_of(*structs, universe=args.universe, size_cap=args.cap)
    return wqo.avoiders(*structs, universe=args.universe or "bp", size_cap=args.cap)


def cmd_class(args) -> int:
    C = _class_spec(args)
    action = args.action
    if action == "member":
        X = _read_doc(args.input)
        m = wqo.member(C, X)
        emit("member" if m else "not a member", {"member": m})
    elif action == "enumerate":
        found = wqo.enumerate_class(C, args.cap)
        sys.stdout.write("\n".join(to_text(X) for X in found))
        emit(f"{len(found)} members up to size {args.cap}", {"count": len(found)})
    elif action == "bounds":
        found = wqo.bounds_up_to(C, args.cap)
        sys.stdout.write("\n".join(to_text(X) for X in found))
        emit(f"{len(found)} bounds up to size {args.cap}", {"count": len(found)})
    elif action == "wqo":
        v = wqo.decide_wqo(C)
        fork = "inf" if v.max_fork_length is None else v.max_fork_length
        prose = f"{v.verdict} maxfork={fork}"
        if v.witnesses and v.verdict == "NOT_WQO":
            prose += "\nwitness sizes: " + " ".join(str(X.n) for X in v.witnesses)
        emit(prose, {"verdict": v.verdict, "max_fork_length": fork,
                     "deg3_diameter_sup": "inf" if v.deg3_diameter_sup is None
                     else v.deg3_diameter_sup,
                     "witnesses": len(v.witnesses)})
    elif action == "audit":
        rep = wqo.theorem2_audit(C, args.cap)
        emit("consistent" if rep.ok else f"inconsistent: {rep.counterexample}",
             {"ok": rep.ok, **{k: v for k, v in rep.stats.items() if not isinstance(v, dict)}})
        return EXIT_OK if rep.ok else EXIT_PROPERTY
    return EXIT_OK


def cmd_verify(args) -> int:
    selected = [args.suite] if args.suite else None
    if args.suite and args.suite not in verify.SUITES:
        raise StructureError(f"unknown suite {args.suite!r}; choose from {', '.join(verify.names())}")
    results = verify.run(selected, args.max_size)
    failed = [r for r in results if not r.ok]
    lines = [f"{r.line()} ({r.seconds}s)" for r in results]
    for r in failed:
        X = r.counterexample
        lines.append(f"counterexample for {r.name}:")
        lines.append(to_text(X).rstrip() if hasattr(X, "kind") else repr(X))
    emit("\n".join(lines), {"suites": len(results), "failed": len(failed),
                            **{r.name: "pass" if r.ok else "fail" for r in results}})
    return EXIT_PROPERTY if failed else EXIT_OK


# ------------------------------------------------------------------ main

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="width2lab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="convert between documents")
    p.add_argument("--to", required=True, choices=("comp", "inc", "poset", "bichain"))
    p.add_argument("input", nargs="?")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("metric", help="distances, detour, oscillation")
    p.add_argument("--oscillation", action="store_true")
    p.add_argument("input", nargs="?")
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("decompose", help="modules and realizers")
    p.add_argument("what", choices=("modules", "prime", "quotient", "realizers", "unique"))
    p.add_argument("input", nargs="?")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("recognize", help="bipartite permutation recognition")
    p.add_argument("input", nargs="?")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("embed", help="induced embedding of A into B")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--allow", default="")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("family", help="print a named family member")
    p.add_argument("tag", choices=families.FAMILY_TAGS)
    p.add_argument("params", nargs="*", type=int)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("class", help="hereditary class queries")
    p.add_argument("action", choices=("member", "enumerate", "bounds", "wqo", "audit"))
    p.add_argument("input", nargs="?")
    p.add_argument("--age")
    p.add_argument("--avoid")
    p.add_argument("--universe")
    p.add_argument("--cap", type=int, default=6)
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--suite")
    p.add_argument("--max-size", type=int)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (DocumentError, StructureError, OSError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
