"""Witness certificates: JSON serialization and independent verification.

The checkers here deliberately avoid the bitmask machinery used by the
solvers and constructors.  Acyclicity is tested with a DFS colouring,
maximality with plain ``itertools.combinations`` and minimality of a
dicoloring with a small backtracking search, so a bug in a constructor
cannot certify its own output.

Certificate document::

    {"digraph_fingerprint": "<sha256 of canonical edge list>",
     "kind": "<kind>",
     "payload": {...}}

Keys are sorted and vertex lists are emitted in a fixed order, so
serialization is byte-stable.
"""

from __future__ import annotations

import functools
import hashlib
import itertools
import json
from dataclasses import dataclass
from typing import Any, Iterable, Optional, Sequence

from dipaths import knorm
from dipaths.digraph import Digraph, to_edge_list

KINDS = (
    "path-partition",
    "dicoloring",
    "coloring",
    "k-pack",
    "partial-k-dicoloring",
    "partial-k-coloring",
    "directed-matching",
    "good-path-partition",
    "orthogonal-pair",
    "linial-chain",
)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


ACCEPT = Verdict(True)


def reject(reason: str) -> Verdict:
    return Verdict(False, reason)


def fingerprint(D: Digraph) -> str:
    return hashlib.sha256(to_edge_list(D).encode()).hexdigest()


@dataclass(frozen=True)
class Certificate:
    kind: str
    digraph_fingerprint: str
    payload: dict

    def to_json(self) -> str:
        doc = {"digraph_fingerprint": self.digraph_fingerprint, "kind": self.kind, "payload": self.payload}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        doc = json.loads(text)
        if not isinstance(doc, dict) or set(doc) != {"digraph_fingerprint", "kind", "payload"}:
            raise ValueError("certificate must have exactly the keys digraph_fingerprint, kind, payload")
        return cls(doc["kind"], doc["digraph_fingerprint"], doc["payload"])


# --------------------------------------------------------------------------
# Independent primitives
# --------------------------------------------------------------------------


def _has_cycle(D: Digraph, vertices: Iterable[int]) -> bool:
    inside = set(vertices)
    succ = {v: [] for v in inside}
    for u, v in D.arcs:
        if u in inside and v in inside:
            succ[u].append(v)
    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(inside, WHITE)
    for root in inside:
        if colour[root] != WHITE:
            continue
        colour[root] = GREY
        stack = [(root, iter(succ[root]))]
        while stack:
            v, it = stack[-1]
            for w in it:
                if colour[w] == GREY:
                    return True
                if colour[w] == WHITE:
                    colour[w] = GREY
                    stack.append((w, iter(succ[w])))
                    break
            else:
                colour[v] = BLACK
                stack.pop()
    return False


def _is_stable(D: Digraph, vertices: Iterable[int]) -> bool:
    inside = set(vertices)
    return not any(u in inside and v in inside for u, v in D.arcs)


def _vertex_list(x: Any, n: int, what: str) -> list[int]:
    if not isinstance(x, (list, tuple)) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        raise _Bad(f"{what} must be a list of integers")
    for v in x:
        if not 0 <= v < n:
            raise _Bad(f"{what}: vertex {v} out of range")
    return list(x)


class _Bad(Exception):
    pass


def _check_path(D: Digraph, path: Sequence[int]) -> Optional[str]:
    if len(path) == 0:
        return "empty path"
    if len(set(path)) != len(path):
        return f"path {list(path)} repeats a vertex"
    for i, (u, v) in enumerate(zip(path, path[1:])):
        if (u, v) not in D.arcs:
            return f"path {list(path)}: no arc {u}->{v} at position {i + 1}"
    return None


def _disjoint(members: Iterable[Iterable[int]]) -> Optional[str]:
    seen: set[int] = set()
    for m in members:
        for v in m:
            if v in seen:
                return f"vertex {v} appears twice"
            seen.add(v)
    return None


def _exists_acyclic_of_size(D: Digraph, pool: Sequence[int], size: int) -> bool:
    return any(not _has_cycle(D, combo) for combo in itertools.combinations(pool, size))


def _dicolorable_with(D: Digraph, colours: int) -> bool:
    """Backtracking: can V be split into ``colours`` acyclic classes?"""
    classes: list[list[int]] = []

    def place(v: int) -> bool:
        if v == D.n:
            return True
        for cls in classes:
            cls.append(v)
            if not _has_cycle(D, cls) and place(v + 1):
                return True
            cls.pop()
        if len(classes) < colours:
            classes.append([v])
            if place(v + 1):
                return True
            classes.pop()
        return False

    return place(0)


# --------------------------------------------------------------------------
# Structural checkers
# --------------------------------------------------------------------------


def _guard(fn):
    @functools.wraps(fn)
    def wrapped(*args, **kwargs) -> Verdict:
        try:
            return fn(*args, **kwargs)
        except _Bad as exc:
            return reject(str(exc))

    return wrapped


def check_orthogonal(family: Iterable[Iterable[int]], Q: Iterable[int]) -> bool:
    """Each member of the (disjoint) family meets Q in exactly one vertex."""
    family = [set(h) for h in family]
    if _disjoint(family):
        raise ValueError("family members overlap")
    q = set(Q)
    return all(len(h & q) == 1 for h in family)


@_guard
def check_path_partition(D: Digraph, paths) -> Verdict:
    paths = [_vertex_list(p, D.n, "path") for p in paths]
    for p in paths:
        err = _check_path(D, p)
        if err:
            return reject(err)
    err = _disjoint(paths)
    if err:
        return reject(err)
    covered = {v for p in paths for v in p}
    if covered != set(D.vertices):
        return reject(f"vertices {sorted(set(D.vertices) - covered)} not covered")
    return ACCEPT


def _check_partition_classes(D: Digraph, classes, stable: bool) -> Verdict:
    classes = [_vertex_list(c, D.n, "class") for c in classes]
    if any(len(c) == 0 for c in classes):
        return reject("empty class")
    err = _disjoint(classes)
    if err:
        return reject(err)
    covered = {v for c in classes for v in c}
    if covered != set(D.vertices):
        return reject(f"vertices {sorted(set(D.vertices) - covered)} not covered")
    for c in classes:
        if stable and not _is_stable(D, c):
            return reject(f"class {sorted(c)} is not stable")
        if not stable and _has_cycle(D, c):
            return reject(f"class {sorted(c)} induces a directed cycle")
    return ACCEPT


@_guard
def check_dicoloring(D: Digraph, classes) -> Verdict:
    return _check_partition_classes(D, classes, stable=False)


@_guard
def check_coloring(D: Digraph, classes) -> Verdict:
    return _check_partition_classes(D, classes, stable=True)


def _check_k(k) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise _Bad(f"k must be a positive integer, got {k!r}")


@_guard
def check_k_pack(D: Digraph, paths, k: int) -> Verdict:
    _check_k(k)
    paths = [_vertex_list(p, D.n, "path") for p in paths]
    if len(paths) > k:
        return reject(f"{len(paths)} paths exceed k={k}")
    for p in paths:
        err = _check_path(D, p)
        if err:
            return reject(err)
    err = _disjoint(paths)
    return reject(err) if err else ACCEPT


def _check_partial(D: Digraph, sets, k: int, stable: bool) -> Verdict:
    _check_k(k)
    sets = [_vertex_list(s, D.n, "set") for s in sets]
    if len(sets) > k:
        return reject(f"{len(sets)} sets exceed k={k}")
    err = _disjoint(sets)
    if err:
        return reject(err)
    for s in sets:
        if stable and not _is_stable(D, s):
            return reject(f"set {sorted(s)} is not stable")
        if not stable and _has_cycle(D, s):
            return reject(f"set {sorted(s)} induces a directed cycle")
    return ACCEPT


@_guard
def check_partial_k_dicoloring(D: Digraph, sets, k: int) -> Verdict:
    return _check_partial(D, sets, k, stable=False)


@_guard
def check_partial_k_coloring(D: Digraph, sets, k: int) -> Verdict:
    return _check_partial(D, sets, k, stable=True)


@_guard
def check_greedy_dicoloring(D: Digraph, classes) -> Verdict:
    """Dicoloring whose every class is maximum acyclic in the remainder."""
    v = _check_partition_classes(D, classes, stable=False)
    if not v:
        return v
    remaining = list(D.vertices)
    for i, c in enumerate(classes, start=1):
        if _exists_acyclic_of_size(D, remaining, len(c) + 1):
            return reject(f"class {i} ({sorted(c)}) is not a maximum acyclic set of the remainder")
        remaining = [x for x in remaining if x not in set(c)]
    return ACCEPT


@_guard
def check_good_path_partition(D: Digraph, classes, paths, check_greedy: bool = True) -> Verdict:
    """Positional membership: the i-th vertex of each path lies in class i."""
    v = check_greedy_dicoloring(D, classes) if check_greedy else _check_partition_classes(D, classes, False)
    if not v:
        return v
    v = check_path_partition(D, paths)
    if not v:
        return v
    where = {x: i for i, c in enumerate(classes) for x in c}
    for p in paths:
        for pos, x in enumerate(p):
            if where[x] != pos:
                return reject(f"path {list(p)}: position {pos + 1} holds {x} from class {where[x] + 1}")
    return ACCEPT


@_guard
def check_directed_matching(D: Digraph, side1, side2, arcs, covering: bool = True) -> Verdict:
    s1 = set(_vertex_list(side1, D.n, "side1"))
    s2 = set(_vertex_list(side2, D.n, "side2"))
    if s1 & s2:
        return reject("sides overlap")
    if _has_cycle(D, s1) or _has_cycle(D, s2):
        return reject("a side induces a directed cycle")
    tails, heads = set(), set()
    for a in arcs:
        if not isinstance(a, (list, tuple)) or len(a) != 2:
            return reject(f"malformed arc {a!r}")
        u, v = _vertex_list(a, D.n, "arc")
        if (u, v) not in D.arcs:
            return reject(f"arc {u}->{v} not in digraph")
        if u not in s1 or v not in s2:
            return reject(f"arc {u}->{v} not directed from side1 to side2")
        if u in tails or v in heads:
            return reject(f"arc {u}->{v} shares an endpoint")
        tails.add(u)
        heads.add(v)
    if covering and heads != s2:
        return reject(f"side2 vertices {sorted(s2 - heads)} uncovered")
    return ACCEPT


def _check_max_acyclic(D: Digraph, T) -> Verdict:
    if _has_cycle(D, T):
        return reject(f"set {sorted(T)} induces a directed cycle")
    if _exists_acyclic_of_size(D, list(D.vertices), len(T) + 1):
        return reject(f"set {sorted(T)} is not a maximum acyclic set")
    return ACCEPT


# --------------------------------------------------------------------------
# Certificate construction
# --------------------------------------------------------------------------


def _sets(family) -> list[list[int]]:
    return [sorted(s) for s in family]


def _paths(paths) -> list[list[int]]:
    return [list(p) for p in paths]


def make(D: Digraph, kind: str, payload: dict) -> Certificate:
    return Certificate(kind, fingerprint(D), payload)


def certify_report(D: Digraph, report: knorm.KNormReport) -> Certificate:
    """Certificate for a k-parameter report, marked as claiming optimality."""
    kind, key, conv = {
        "pi": ("path-partition", "paths", _paths),
        "chi": ("coloring", "classes", _sets),
        "chi_prime": ("dicoloring", "classes", _sets),
        "lambda": ("k-pack", "paths", _paths),
        "alpha": ("partial-k-coloring", "sets", _sets),
        "alpha_prime": ("partial-k-dicoloring", "sets", _sets),
    }[report.name]
    return make(D, kind, {"k": report.k, key: conv(report.witness), "value": report.value, "optimal": True})


def certify_matching(D: Digraph, m) -> Certificate:
    return make(
        D,
        "directed-matching",
        {"side1": sorted(m.side1), "side2": sorted(m.side2), "arcs": [list(a) for a in sorted(m.arcs)]},
    )


def certify_good_partition(D: Digraph, good) -> Certificate:
    return make(D, "good-path-partition", {"classes": _sets(good.greedy.classes), "paths": _paths(good.paths)})


def certify_orthogonal_partition(D: Digraph, T, paths) -> Certificate:
    return make(
        D, "orthogonal-pair", {"mode": "partition-to-acyclic-set", "set": sorted(T), "paths": _paths(paths)}
    )


def certify_orthogonal_path(D: Digraph, classes, path) -> Certificate:
    return make(D, "orthogonal-pair", {"mode": "path-to-dicoloring", "classes": _sets(classes), "path": list(path)})


def certify_linial(D: Digraph, primal, dual) -> Certificate:
    good = primal.good
    payload = {
        "k": primal.k,
        "classes": _sets(good.greedy.classes),
        "paths": _paths(good.paths),
        "primal": {
            "norm": primal.norm,
            "union_k": primal.union_k,
            "pi_k": primal.pi_k.value,
            "alpha_prime_k": primal.alpha_prime_k.value,
            "long_paths": primal.long_paths,
            "size_s_k": primal.size_s_k,
            "short_cover": primal.short_cover,
        },
        "dual": {
            "pack": _paths(dual.pack),
            "pack_cover": dual.pack_cover,
            "s_norm": dual.s_norm,
            "j": dual.j,
            "tail_union": dual.tail_union,
            "chi_prime_k": dual.chi_prime_k.value,
            "lambda_k": dual.lambda_k.value,
        },
    }
    return make(D, "linial-chain", payload)


# --------------------------------------------------------------------------
# Verification dispatch
# --------------------------------------------------------------------------


def _need(payload: dict, *keys: str) -> list:
    if not isinstance(payload, dict):
        raise _Bad("payload must be an object")
    missing = [k for k in keys if k not in payload]
    if missing:
        raise _Bad(f"payload missing {missing}")
    return [payload[k] for k in keys]


def _check_optimal_flag(flag) -> None:
    if not isinstance(flag, bool):
        raise _Bad("optimal must be a boolean")


_ORACLE = {
    "path-partition": "pi",
    "coloring": "chi",
    "dicoloring": "chi_prime",
    "k-pack": "lambda",
    "partial-k-coloring": "alpha",
    "partial-k-dicoloring": "alpha_prime",
}


def _verify_family(D: Digraph, kind: str, payload: dict) -> Verdict:
    key = "paths" if kind in ("path-partition", "k-pack") else ("classes" if kind in ("coloring", "dicoloring") else "sets")
    k, family, value, optimal = _need(payload, "k", key, "value", "optimal")
    _check_k(k)
    _check_optimal_flag(optimal)
    check = {
        "path-partition": lambda: check_path_partition(D, family),
        "coloring": lambda: check_coloring(D, family),
        "dicoloring": lambda: check_dicoloring(D, family),
        "k-pack": lambda: check_k_pack(D, family, k),
        "partial-k-coloring": lambda: check_partial_k_coloring(D, family, k),
        "partial-k-dicoloring": lambda: check_partial_k_dicoloring(D, family, k),
    }[kind]
    v = check()
    if not v:
        return v
    if kind in ("path-partition", "coloring", "dicoloring"):
        actual = sum(min(len(m), k) for m in family)
    else:
        actual = sum(len(m) for m in family)
    if value != actual:
        return reject(f"stated value {value} but witness gives {actual}")
    if optimal:
        best = knorm.PARAMETERS[_ORACLE[kind]](D, k).value
        if best != value:
            return reject(f"claimed optimal value {value}, oracle gives {best}")
    return ACCEPT


def _verify_orthogonal(D: Digraph, payload: dict) -> Verdict:
    (mode,) = _need(payload, "mode")
    if mode == "partition-to-acyclic-set":
        T, paths = _need(payload, "set", "paths")
        T = _vertex_list(T, D.n, "set")
        if len(set(T)) != len(T):
            return reject("set repeats a vertex")
        v = _check_max_acyclic(D, T)
        if not v:
            return v
        v = check_path_partition(D, paths)
        if not v:
            return v
        if not check_orthogonal(paths, T):
            return reject("some path does not meet the acyclic set exactly once")
        return ACCEPT
    if mode == "path-to-dicoloring":
        classes, path = _need(payload, "classes", "path")
        v = check_dicoloring(D, classes)
        if not v:
            return v
        path = _vertex_list(path, D.n, "path")
        err = _check_path(D, path)
        if err:
            return reject(err)
        if len(classes) > 1 and _dicolorable_with(D, len(classes) - 1):
            return reject(f"dicoloring with {len(classes)} classes is not minimum")
        if not check_orthogonal(classes, path):
            return reject("path does not meet every class exactly once")
        return ACCEPT
    return reject(f"unknown orthogonal-pair mode {mode!r}")


def _verify_linial(D: Digraph, payload: dict) -> Verdict:
    k, classes, paths, primal, dual = _need(payload, "k", "classes", "paths", "primal", "dual")
    _check_k(k)
    v = check_good_path_partition(D, classes, paths)
    if not v:
        return v
    n = D.n
    t = len(classes)
    sizes = [len(c) for c in classes]

    # primal side, recomputed from the witness
    norm = sum(min(len(p), k) for p in paths)
    union_k = sum(sizes[:k])
    pk = knorm.pi_k(D, k).value
    apk = knorm.alpha_prime_k(D, k).value
    want = {"norm": norm, "union_k": union_k, "pi_k": pk, "alpha_prime_k": apk}
    if t > k:
        want.update(
            long_paths=sum(1 for p in paths if len(p) >= k),
            size_s_k=sizes[k - 1],
            short_cover=sum(len(p) for p in paths if len(p) < k),
        )
    else:
        want.update(long_paths=None, size_s_k=None, short_cover=None)
    got = dict(zip(want, _need(primal, *want)))
    for key in want:
        if got[key] != want[key]:
            return reject(f"primal.{key}: stated {got[key]}, recomputed {want[key]}")
    if not pk <= norm == union_k <= apk:
        return reject(f"primal chain fails: {pk} <= {norm} = {union_k} <= {apk}")
    if t > k:
        if want["long_paths"] != want["size_s_k"]:
            return reject("|P_2| != |S_k|")
        if norm != want["short_cover"] + k * want["long_paths"]:
            return reject("|P|_k != |V(P_1)| + k|P_2|")
        if want["short_cover"] != sum(sizes[: k - 1]) - (k - 1) * sizes[k - 1]:
            return reject("|V(P_1)| mismatches class accounting")
    elif apk != n:
        return reject(f"t <= k but alpha'_k = {apk} != {n}")

    # dual side
    (pack,) = _need(dual, "pack")
    vpk = check_k_pack(D, pack, k)
    if not vpk:
        return vpk
    partition_paths = [tuple(p) for p in paths]
    pack_paths = [tuple(p) for p in pack]
    if len(set(pack_paths)) != len(pack_paths) or any(p not in partition_paths for p in pack_paths):
        return reject("pack contains a path outside the good path partition")
    if len(pack_paths) != min(k, len(partition_paths)):
        return reject(f"pack has {len(pack_paths)} paths, expected {min(k, len(partition_paths))}")
    top = sorted((len(p) for p in partition_paths), reverse=True)[:k]
    if sorted((len(p) for p in pack_paths), reverse=True) != top:
        return reject("pack is not a set of k longest paths of the partition")
    s_norm = sum(min(s, k) for s in sizes)
    cpk = knorm.chi_prime_k(D, k).value
    lk = knorm.lambda_k(D, k).value
    dwant = {"pack_cover": sum(len(p) for p in pack), "s_norm": s_norm, "chi_prime_k": cpk, "lambda_k": lk}
    if len(paths) > k:
        j = max(i for i, s in enumerate(sizes, start=1) if s > k)
        dwant.update(j=j, tail_union=sum(sizes[j:]))
    else:
        dwant.update(j=None, tail_union=None)
    dgot = dict(zip(dwant, _need(dual, *dwant)))
    for key in dwant:
        if dgot[key] != dwant[key]:
            return reject(f"dual.{key}: stated {dgot[key]}, recomputed {dwant[key]}")
    if len(paths) > k:
        mid = k * dwant["j"] + dwant["tail_union"]
        if not (cpk <= s_norm == mid == dwant["pack_cover"] <= lk):
            return reject(f"dual chain fails: {cpk} <= {s_norm} = {mid} = {dwant['pack_cover']} <= {lk}")
    elif not (cpk <= s_norm and lk == n == dwant["pack_cover"]):
        return reject(f"|P| <= k but lambda_k = {lk}, |V(P')| = {dwant['pack_cover']}, |V| = {n}")
    return ACCEPT


def verify_certificate(D: Digraph, cert: Certificate) -> Verdict:
    if not isinstance(cert.digraph_fingerprint, str) or cert.digraph_fingerprint != fingerprint(D):
        return reject("digraph fingerprint mismatch")
    if cert.kind not in KINDS:
        return reject(f"unknown certificate kind {cert.kind!r}")
    try:
        p = cert.payload
        if cert.kind in _ORACLE:
            return _verify_family(D, cert.kind, p)
        if cert.kind == "directed-matching":
            side1, side2, arcs = _need(p, "side1", "side2", "arcs")
            return check_directed_matching(D, side1, side2, arcs)
        if cert.kind == "good-path-partition":
            classes, paths = _need(p, "classes", "paths")
            return check_good_path_partition(D, classes, paths)
        if cert.kind == "orthogonal-pair":
            return _verify_orthogonal(D, p)
        return _verify_linial(D, p)
    except _Bad as exc:
        return reject(str(exc))
    except (TypeError, ValueError, KeyError, IndexError) as exc:
        return reject(f"malformed payload: {exc}")
