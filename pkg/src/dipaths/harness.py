"""Batch verification: per-instance theorem suite, sweeps and the
orthogonality searches over cycle orientations.

Records are plain dicts so that a sweep can be streamed as JSON lines.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from dipaths import certificates as certs
from dipaths import knorm
from dipaths.constructive import (
    ConstructionError,
    NotMinimumDicoloring,
    good_path_partition,
    greedy_dicoloring,
    linial_dual_certificate,
    linial_primal_certificate,
    orthogonal_partition_to_mas,
    orthogonal_path,
)
from dipaths.digraph import Digraph, iter_paths
from dipaths.generators import GeneratorSpec, cycle_orientation, instances
from dipaths.solvers import (
    all_max_induced_acyclic,
    all_max_stable_sets,
    iter_min_partitions,
    longest_path,
    max_induced_acyclic,
    max_stable_set,
    min_coloring,
    min_dicoloring,
    min_path_partition,
)

ENUMERATE_ALL_CAP = 6
SEARCH_MAX_N = 9


# --------------------------------------------------------------------------
# Brute-force existence oracles
# --------------------------------------------------------------------------


def has_orthogonal_path_partition(D: Digraph, T: Iterable[int]) -> bool:
    """Is there a path partition in which every path has exactly one vertex of T?

    Exact cover over all paths meeting T once, memoised on the covered set.
    """
    T = frozenset(T)
    through: dict[int, list[int]] = {v: [] for v in D.vertices}
    for p in iter_paths(D):
        if sum(1 for v in p if v in T) == 1:
            m = 0
            for v in p:
                m |= 1 << v
            for v in p:
                through[v].append(m)
    full = D.full_mask

    @lru_cache(maxsize=None)
    def solve(covered: int) -> bool:
        if covered == full:
            return True
        low = (~covered & full) & -(~covered & full)
        v = low.bit_length() - 1
        return any(not m & covered and solve(covered | m) for m in through[v])

    return solve(0)


def has_orthogonal_path(D: Digraph, classes) -> bool:
    """Is there a path with exactly one vertex in each class?"""
    index = {v: i for i, c in enumerate(classes) for v in c}
    t = len(classes)

    def extend(v: int, used_vertices: int, used_classes: int, length: int) -> bool:
        if length == t:
            return True
        for w in D.successors(v):
            if not used_vertices >> w & 1 and not used_classes >> index[w] & 1:
                if extend(w, used_vertices | 1 << w, used_classes | 1 << index[w], length + 1):
                    return True
        return False

    return any(extend(v, 1 << v, 1 << index[v], 1) for v in D.vertices)


# --------------------------------------------------------------------------
# Cycle-orientation searches
# --------------------------------------------------------------------------


def _check_search_n(n: int) -> None:
    if n < 3 or n % 2 == 0 or n > SEARCH_MAX_N:
        raise ValueError(f"cycle length must be odd and between 3 and {SEARCH_MAX_N}")


def search_question1(n: int) -> list[tuple[int, tuple[int, ...]]]:
    """(mask, T) for every C_n orientation and maximum stable set T with no
    orthogonal path partition."""
    _check_search_n(n)
    out = []
    for mask in range(1 << n):
        D = cycle_orientation(n, mask)
        for T in all_max_stable_sets(D):
            if not has_orthogonal_path_partition(D, T):
                out.append((mask, tuple(sorted(T))))
    return out


def search_question3(n: int) -> list[tuple[int, tuple[int, ...]]]:
    """As :func:`search_question1` with maximum induced acyclic sets."""
    _check_search_n(n)
    out = []
    for mask in range(1 << n):
        D = cycle_orientation(n, mask)
        for T in all_max_induced_acyclic(D):
            if not has_orthogonal_path_partition(D, T):
                out.append((mask, tuple(sorted(T))))
    return out


def _search_paths(n: int, kind: str):
    _check_search_n(n)
    out = []
    for mask in range(1 << n):
        D = cycle_orientation(n, mask)
        for classes in iter_min_partitions(D, kind):
            if not has_orthogonal_path(D, classes):
                out.append((mask, tuple(tuple(sorted(c)) for c in classes)))
    return out


def search_question2(n: int):
    """(mask, coloring) for every minimum coloring with no orthogonal path."""
    return _search_paths(n, "stable")


def search_question4(n: int):
    """(mask, dicoloring) for every minimum dicoloring with no orthogonal path."""
    return _search_paths(n, "acyclic")


SEARCHES = {1: search_question1, 2: search_question2, 3: search_question3, 4: search_question4}


# --------------------------------------------------------------------------
# Per-instance theorem suite
# --------------------------------------------------------------------------


@dataclass
class _Recorder:
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    def record(self, name: str, ok: bool, detail: str = "", certificate: Optional[certs.Certificate] = None):
        self.checks[name] = self.checks.get(name, True) and bool(ok)
        if not ok:
            entry = {"check": name, "detail": detail}
            if certificate is not None:
                entry["certificate"] = {"kind": certificate.kind, "payload": certificate.payload}
            self.failures.append(entry)

    def verify(self, name: str, D: Digraph, cert: certs.Certificate) -> bool:
        verdict = certs.verify_certificate(D, cert)
        self.record(name, verdict.ok, verdict.reason, cert)
        return verdict.ok

    def timed(self, name: str):
        rec = self

        class _T:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                rec.timing[name] = round(rec.timing.get(name, 0.0) + time.perf_counter() - self.t0, 6)

        return _T()


def instance_suite(
    D: Digraph,
    kmax: Optional[int] = None,
    enumerate_cap: int = ENUMERATE_ALL_CAP,
    descriptor: Optional[dict] = None,
) -> dict:
    """Run every theorem check on one digraph and return a report record."""
    rec = _Recorder()
    n = D.n
    kmax = n if kmax is None else min(kmax, n)

    with rec.timed("base"):
        part = min_path_partition(D)
        stab = max_stable_set(D)
        lpath = longest_path(D)
        col = min_coloring(D)
        dicol = min_dicoloring(D)
        mas = max_induced_acyclic(D)
    values = {
        "alpha": len(stab),
        "alpha_prime": len(mas),
        "chi": len(col),
        "chi_prime": len(dicol),
        "pi": len(part),
        "lambda": len(lpath),
    }

    with rec.timed("verify_base"):
        rec.verify("witnesses", D, certs.certify_report(D, knorm.KNormReport("pi", 1, len(part), part)))
        rec.verify("witnesses", D, certs.certify_report(D, knorm.KNormReport("alpha", 1, len(stab), (stab,))))
        rec.verify("witnesses", D, certs.certify_report(D, knorm.KNormReport("chi", 1, len(col), col)))
        rec.verify("witnesses", D, certs.certify_report(D, knorm.KNormReport("chi_prime", 1, len(dicol), dicol)))
        rec.verify("witnesses", D, certs.certify_report(D, knorm.KNormReport("lambda", 1, len(lpath), (lpath,))))
        rec.verify(
            "witnesses", D, certs.certify_report(D, knorm.KNormReport("alpha_prime", 1, len(mas), (mas,)))
        )
    rec.record("gallai_milgram", values["pi"] <= values["alpha"], f"pi={values['pi']} alpha={values['alpha']}")
    rec.record("gallai_roy", values["chi"] <= values["lambda"], f"chi={values['chi']} lambda={values['lambda']}")
    rec.record("acyclic_vs_stable", values["alpha_prime"] >= values["alpha"] and values["chi_prime"] <= values["chi"])

    with rec.timed("good_partition"):
        try:
            G = greedy_dicoloring(D)
            good = good_path_partition(D, G)
        except ConstructionError as exc:
            rec.record("good_partition", False, str(exc))
            good = None
    if good is not None:
        sizes = G.sizes()
        rec.record("greedy_sizes", all(a >= b for a, b in zip(sizes, sizes[1:])), f"sizes={sizes}")
        rec.verify("good_partition", D, certs.certify_good_partition(D, good))
        for i, m in enumerate(good.matchings):
            ok = len(m.arcs) == len(G.classes[i + 1]) and m.covers_side2
            rec.verify("good_partition", D, certs.certify_matching(D, m))
            rec.record("stage_bookkeeping", ok, f"stage {i + 1}: {len(m.arcs)} arcs for |S|={len(G.classes[i + 1])}")
        S1 = G.classes[0] if G.classes else frozenset()
        rec.record("good_partition_orthogonal", certs.check_orthogonal(good.paths, S1))

    with rec.timed("orthogonal_mas"):
        targets = all_max_induced_acyclic(D) if n <= enumerate_cap else [mas]
        for T in targets:
            try:
                T, paths = orthogonal_partition_to_mas(D, T)
            except ConstructionError as exc:
                rec.record("orthogonal_mas", False, f"T={sorted(T)}: {exc}")
                continue
            rec.verify("orthogonal_mas", D, certs.certify_orthogonal_partition(D, T, paths))

    with rec.timed("orthogonal_path"):
        dicolorings = iter_min_partitions(D, "acyclic") if n <= enumerate_cap else [dicol]
        for classes in dicolorings:
            try:
                path = orthogonal_path(D, classes)
            except NotMinimumDicoloring as exc:
                rec.record("orthogonal_path", False, f"classes={[sorted(c) for c in classes]}: {exc}")
                continue
            rec.record("orthogonal_path", len(path) == values["chi_prime"], f"order {len(path)}")
            rec.verify("orthogonal_path", D, certs.certify_orthogonal_path(D, classes, path))

    with rec.timed("linial"):
        for k in range(1, kmax + 1):
            primal = linial_primal_certificate(D, k, good=good)
            dual = linial_dual_certificate(D, k, good=good)
            bad = primal.violations() + dual.violations()
            cert = certs.certify_linial(D, primal, dual)
            rec.record("linial", not bad, f"k={k}: {bad}", cert)
            rec.verify("linial", D, cert)
            rec.record(
                "relaxed_linial",
                primal.pi_k.value <= primal.alpha_prime_k.value and dual.chi_prime_k.value <= dual.lambda_k.value,
                f"k={k}",
            )
            if primal.good.greedy.t > k:
                rec.record(
                    "primal_arithmetic",
                    primal.long_paths == primal.size_s_k and primal.norm == primal.union_k,
                    f"k={k}",
                )
            if len(dual.good.paths) > k:
                rec.record("dual_arithmetic", dual.pack_cover == k * dual.j + dual.tail_union, f"k={k}")

    with rec.timed("k1_collapse"):
        if n:
            one = {name: fn(D, 1).value for name, fn in knorm.PARAMETERS.items()}
            rec.record("k1_collapse", one == values, f"k=1 values {one} vs {values}")

    return {
        "instance": descriptor or {"n": n, "arcs": [list(a) for a in D.sorted_arcs()]},
        "n": n,
        "values": values,
        "checks": rec.checks,
        "passed": not rec.failures,
        "failures": rec.failures,
        "timing": rec.timing,
    }


def _suite_job(args):
    spec_dict, D, kmax, cap = args
    return instance_suite(D, kmax=kmax, enumerate_cap=cap, descriptor=spec_dict)


@dataclass
class RunReport:
    records: list
    elapsed: float

    @property
    def failures(self) -> list:
        return [r for r in self.records if not r["passed"]]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        names: dict[str, list[int]] = {}
        for r in self.records:
            for name, ok in r["checks"].items():
                tally = names.setdefault(name, [0, 0])
                tally[0 if ok else 1] += 1
        return {
            "instances": len(self.records),
            "failed_instances": len(self.failures),
            "checks": {k: {"pass": v[0], "fail": v[1]} for k, v in sorted(names.items())},
            "elapsed_s": round(self.elapsed, 3),
        }


def sweep_theorems(
    items: Iterable[tuple[GeneratorSpec, Digraph]],
    kmax: Optional[int] = None,
    enumerate_cap: int = ENUMERATE_ALL_CAP,
    workers: int = 1,
) -> RunReport:
    t0 = time.perf_counter()
    jobs = ((spec.describe(), D, kmax, enumerate_cap) for spec, D in items)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_suite_job, jobs, chunksize=16))
    else:
        records = [_suite_job(j) for j in jobs]
    return RunReport(records, time.perf_counter() - t0)


def exhaustive_items(max_n: int = 4) -> Iterator[tuple[GeneratorSpec, Digraph]]:
    for n in range(1, max_n + 1):
        yield from instances("all-digraphs", n)


def randomized_items(
    gnp_count: int = 200, gnp_n: int = 7, tournaments: int = 50, tournament_n: int = 8
) -> Iterator[tuple[GeneratorSpec, Digraph]]:
    """Pinned randomized corpus: gnp seeds 0.. cycling p over 0.2/0.5/0.8,
    then tournaments with seeds 0.."""
    probs = (0.2, 0.5, 0.8)
    for seed in range(gnp_count):
        spec = GeneratorSpec("gnp", gnp_n, probs[seed % 3], seed)
        yield spec, spec.build()
    for seed in range(tournaments):
        spec = GeneratorSpec("tournament", tournament_n, seed=seed)
        yield spec, spec.build()
