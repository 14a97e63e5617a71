"""Exhaustive desk-scale checks, one suite per acceptance criterion.

Each suite takes an optional ``max_size`` that replaces its default scale
and returns a :class:`SuiteResult`. ``run`` executes suites in a fixed order.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from . import catalog, kernels
from .decomposition import (embedding_equivalence_audit, is_prime, orientation_audit,
                            realizability_report, strong_module_audit)
from .families import (bichain_B1, bichain_B2, double_fork, half_graph, path_graph,
                       poset_P1, poset_P2)
from .metrics import audit_metric_inequalities, is_path
from .structures import (Bichain, avoids, cycle_graph, embeds, has_triangle, inc,
                         is_bipartite, is_comparability_graph, o,
                         recognize_bipartite_permutation, width)
from .universal import (construct_long_path, embed_into_D, embeds_in_Dm,
                        induced_path_grid_search)
from .wqo import (age_of, avoiders, decide_wqo, labelled_path_antichain,
                  powerset_embedding_check, validate_stabilization)


@dataclass
class SuiteResult:
    number: int
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)
    counterexample: object = None
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        info = ", ".join(f"{k}={v}" for k, v in self.detail.items())
        return f"{status} [{self.number:2d}] {self.name}: {info}"


SUITES: dict[str, tuple[int, object]] = {}


def suite(number: int, name: str):
    def register(func):
        SUITES[name] = (number, func)
        return func
    return register


def _result(number, name, failures, detail, witness=None):
    detail = {"failures": failures, **detail}
    return SuiteResult(number, name, failures == 0, detail, witness)


@suite(1, "forks")
def fork_antichain(max_size=None):
    top = max_size or 8
    bad, witness = 0, None
    for i, j in itertools.combinations(range(2, top + 1), 2):
        A, B = double_fork(i), double_fork(j)
        if embeds(A, B) is not None or embeds(B, A) is not None:
            bad += 1
            witness = witness or (i, j)
    return _result(1, "forks", bad, {"pairs": (top - 1) * (top - 2) // 2}, witness)


@suite(2, "metric")
def metric_inequalities(max_size=None):
    top = max_size or 8
    bad, witness, count = 0, None, 0
    for n in range(1, top + 1):
        for P in catalog.connected_width2_posets(n):
            count += 1
            rep = audit_metric_inequalities(P)
            if not rep.ok:
                bad += 1
                witness = witness or (P, rep.counterexample)
    return _result(2, "metric", bad, {"posets": count}, witness)


@suite(3, "gallai-kelly")
def gallai_kelly(max_size=None):
    top = max_size or 7
    bad, witness, posets, graphs = 0, None, 0, 0
    for n in range(1, top + 1):
        for P in catalog.posets(n):
            posets += 1
            if not strong_module_audit(P).ok:
                bad += 1
                witness = witness or P
        for G in catalog.graphs(n):
            if n < 3 or not is_prime(G) or not is_comparability_graph(G):
                continue
            graphs += 1
            if not orientation_audit(G).ok:
                bad += 1
                witness = witness or G
    return _result(3, "gallai-kelly", bad, {"posets": posets, "prime_graphs": graphs}, witness)


@suite(4, "realizers")
def unique_realizability(max_size=None):
    top = max_size or 7
    bad, witness, count = 0, None, 0
    for n in range(1, top + 1):
        for P in catalog.dimension2_posets(n):
            count += 1
            if not realizability_report(P).agree:
                bad += 1
                witness = witness or P
    return _result(4, "realizers", bad, {"posets": count}, witness)


@suite(5, "prime-transfer")
def prime_transfer(max_size=None):
    top = max_size or 6
    bad, witness, count = 0, None, 0
    for n in range(1, top + 1):
        for p in catalog.permutations(n):
            count += 1
            if not embedding_equivalence_audit("prime-transfer", Bichain(p)).ok:
                bad += 1
                witness = witness or p
    return _result(5, "prime-transfer", bad, {"bichains": count}, witness)


@suite(6, "universal")
def universal_path(max_size=None):
    top = max_size or 3
    bad, witness = 0, None
    for n in range(1, top + 1):
        L = construct_long_path(n)
        ok = (L.valid and len(L.points) == 6 * n + 1
              and all(v == 3 for v in L.edges_per_level_pair.values())
              and len(L.edges_per_level_pair) == 2 * n)
        if not ok:
            bad += 1
            witness = witness or ("long path", n, L.failure)
    grid = induced_path_grid_search(1, 12)
    if not (grid.max_vertices <= 7 and grid.within_bound):
        bad += 1
        witness = witness or ("grid", grid)
    literal_ok = [construct_long_path(n, "literal").valid for n in range(1, top + 1)]
    return _result(6, "universal", bad, {
        "path_vertices": [6 * n + 1 for n in range(1, top + 1)],
        "grid_max_vertices": grid.max_vertices,
        "resolved": f"{grid.max_vertices} vertices = 6n+1 at n=1",
        "literal_offsets_valid": literal_ok,
    }, witness)


@suite(7, "recognition")
def recognition(max_size=None):
    top = max_size or 8
    bad, witness, count, accepted = 0, None, 0, 0
    for n in range(1, top + 1):
        known = {catalog.canonical_key(G) for G in catalog.bp_graphs(n)}
        for G in catalog.graphs(n):
            count += 1
            verdict = recognize_bipartite_permutation(G) is not None
            criterion = not has_triangle(G) and is_comparability_graph(G.complement())
            oracle = catalog.canonical_key(G) in known
            good = verdict == criterion == oracle
            if verdict:
                accepted += 1
                good = good and is_bipartite(G) and all(
                    embeds(cycle_graph(k), G) is None for k in (6, 8) if k <= n)
            if not good:
                bad += 1
                witness = witness or G
    return _result(7, "recognition", bad, {"graphs": count, "accepted": accepted}, witness)


@suite(8, "wqo")
def wqo_decisions(max_size=None):
    bad, notes = 0, []
    v = decide_wqo(age_of(double_fork(5)))
    if not (v.verdict == "WQO" and v.max_fork_length == 5):
        bad += 1
        notes.append(("age DF5", v))
    v = decide_wqo(avoiders(universe="BipartitePermutation"))
    fork_sizes = [X.n - 4 for X in v.witnesses]
    if not (v.verdict == "NOT_WQO" and fork_sizes == list(range(2, 9))):
        bad += 1
        notes.append(("universe", v))
    v6 = decide_wqo(avoiders(path_graph(6), universe="BipartitePermutation"))
    if v6.verdict != "WQO":
        bad += 1
        notes.append(("P6", v6))
    stab = validate_stabilization("graph", max_size or 7, 12)
    if not stab.ok:
        bad += 1
        notes.append(("stabilization", stab.counterexample))
    return _result(8, "wqo", bad, {
        "fork_witnesses": f"DF{fork_sizes[0]}..DF{fork_sizes[-1]}" if fork_sizes else "none",
        "p6_maxfork": v6.max_fork_length,
        "stabilization_checked": stab.checked,
    }, notes or None)


@suite(9, "powerset")
def powerset(max_size=None):
    top = max_size or 5
    rep = powerset_embedding_check(range(2, top + 1))
    return _result(9, "powerset", 0 if rep.ok else 1, {"pairs": rep.stats["pairs"]},
                   rep.counterexample)


def _prime_induced(G, min_size):
    return [G.induced([v for v in range(G.n) if S >> v & 1])
            for S in kernels.prime_subsets(G.module_rows(), min_size)]


@suite(10, "minimal-prime")
def minimal_prime(max_size=None):
    k = max_size or 8
    bad, witness = 0, None
    classes = catalog.dedupe(_prime_induced(half_graph(k), 4))
    classes.sort(key=lambda G: G.n)
    if any(G.n % 2 for G in classes):
        bad += 1
        witness = ("odd order", [G.n for G in classes])
    for A, B in zip(classes, classes[1:]):
        if embeds(A, B) is None:
            bad += 1
            witness = witness or ("not a chain", A, B)
    path_len = 20 if max_size is None else max(3, 2 * max_size + 4)
    prime_paths = _prime_induced(path_graph(path_len), 3)
    non_path = [G for G in prime_paths if not is_path(G)]
    bad += len(non_path)
    if non_path:
        witness = witness or ("path", non_path[0])
    return _result(10, "minimal-prime", bad, {
        "half_graph_orders": [G.n for G in classes],
        "path_prime_subsets": len(prime_paths),
    }, witness)


@suite(11, "families")
def family_identities(max_size=None):
    top = max_size or 10
    bad, witness = 0, None
    for k in range(1, top + 1):
        checks = {
            "o(B1)": catalog.is_isomorphic(o(bichain_B1(2 * k)), poset_P1(2 * k)),
            "o(B2)": catalog.is_isomorphic(o(bichain_B2(2 * k)), poset_P2(2 * k)),
            "inc(P1)": catalog.is_isomorphic(inc(poset_P1(2 * k)), half_graph(k)),
            "inc(P2)": catalog.is_isomorphic(inc(poset_P2(2 * k)), path_graph(2 * k)),
        }
        for name, good in checks.items():
            if not good:
                bad += 1
                witness = witness or (name, k)
    return _result(11, "families", bad, {"k_max": top}, witness)


@suite(12, "labelled")
def labelled(max_size=None):
    top = max_size or 8
    rep = labelled_path_antichain(top)
    return _result(12, "labelled", 0 if rep.ok else 1, {"pairs": rep.stats["pairs"]},
                   rep.counterexample)


@suite(13, "321")
def correspondence_321(max_size=None):
    top = max_size or 6
    bad, witness, count = 0, None, 0
    for n in range(1, top + 1):
        for p in catalog.permutations(n):
            count += 1
            if avoids(p, (2, 1, 0)) != (width(o(Bichain(p))) <= 2):
                bad += 1
                witness = witness or p
    return _result(13, "321", bad, {"permutations": count}, witness)


@suite(14, "embed-d")
def embed_soundness(max_size=None):
    top = max_size or 7
    bad, witness, count, m_max = 0, None, 0, 0
    for n in range(1, top + 1):
        for P in catalog.connected_width2_posets(n):
            count += 1
            e = embed_into_D(P)
            m_max = max(m_max, e.m)
            minimal = e.m == 1 or embeds_in_Dm(P, e.m - 1) is None
            if not (e.verified and minimal):
                bad += 1
                witness = witness or P
    return _result(14, "embed-d", bad, {"posets": count, "max_m": m_max}, witness)


def names() -> list[str]:
    return sorted(SUITES, key=lambda k: SUITES[k][0])


def run_suite(name: str, max_size: int | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(names())}")
    start = time.perf_counter()
    res = SUITES[name][1](max_size)
    res.seconds = round(time.perf_counter() - start, 2)
    return res


def run(selected=None, max_size: int | None = None) -> list[SuiteResult]:
    return [run_suite(name, max_size) for name in (selected or names())]


if __name__ == "__main__":  # pragma: no cover
    for r in run():
        print(r.line(), f"({r.seconds}s)")
