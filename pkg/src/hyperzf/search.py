"""Exact minimum-set search for Z0, I, Zpd and pd.

The search is exhaustive.  Parameters are additive over connected components,
so each component is solved on its own.  Within a component, subsets of a
candidate pool are tried in order of size and then lexicographically, so the
first success is the lexicographically least minimum witness.

Two prunings are used, both sound for the three forcing rules (closures are
monotone and idempotent):

* the pool excludes ``derived(∅)``, because a minimum witness never contains a
  vertex that the empty set already colors;
* while extending a prefix ``P``, a vertex already in ``derived(P)`` is skipped:
  ``P + v + R`` has the same closure as ``P + R``, a smaller set that was
  already ruled out at the previous size.

``pd`` is not a closure of its dominating set, so it gets neither pruning.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .hypergraph import Hypergraph, cartesian_product, connected_components, relabel, to_json
from .propagation import (
    Compiled,
    compile_hypergraph,
    from_mask,
    infect_close_mask,
    observe_mask,
    pdzf_close_mask,
    zf_close_mask,
    zf_propagate,
)

PARAMETERS = {"Z0": "zf", "I": "infect", "Zpd": "pdzf", "pd": "pd"}


@dataclass(frozen=True)
class SearchResult:
    parameter: str
    value: int
    witness: tuple[int, ...]
    subsets_examined: int
    certificate: str

    def to_json(self) -> dict:
        return {
            "parameter": self.parameter,
            "value": self.value,
            "witness": list(self.witness),
            "subsets_examined": self.subsets_examined,
        }


class _Engine:
    """Incremental closure states for one rule on one compiled hypergraph."""

    def __init__(self, c: Compiled, rule: str):
        self.c = c
        self.rule = rule
        self.prunes = rule != "pd"

    def start(self, mask: int):
        c = self.c
        if self.rule == "zf":
            return zf_close_mask(c, mask)
        if self.rule == "infect":
            return infect_close_mask(c, mask)
        if self.rule == "pdzf":
            return pdzf_close_mask(c, mask)
        return mask

    def add(self, state, v: int):
        bit = 1 << v
        if self.rule == "zf":
            blue, counts = state
            counts = counts[:]
            queue = []
            for t in self.c.comp_of[v]:
                counts[t] -= 1
                if counts[t] == 1:
                    queue.append(t)
            return zf_propagate(self.c, blue | bit, counts, queue), counts
        if self.rule == "pd":
            return state | bit
        return self.start(state | bit)

    def covered(self, state) -> int:
        if self.rule == "zf":
            return state[0]
        if self.rule == "pd":
            return pdzf_close_mask(self.c, observe_mask(self.c, state))
        return state


def _subtree(engine: _Engine, pool: list[int], k: int, first: int, root) -> tuple[tuple[int, ...] | None, int]:
    """Search size-``k`` subsets of ``pool`` whose least element is ``pool[first]``."""
    full = engine.c.full
    examined = 0
    chosen = [pool[first]]

    def dfs(state, start: int) -> bool:
        nonlocal examined
        depth = len(chosen)
        if depth == k:
            examined += 1
            return engine.covered(state) == full
        have = engine.covered(state) if engine.prunes else 0
        for j in range(start, len(pool) - (k - depth) + 1):
            v = pool[j]
            if have >> v & 1:
                continue
            chosen.append(v)
            if dfs(engine.add(state, v), j + 1):
                return True
            chosen.pop()
        return False

    if dfs(engine.add(root, pool[first]), first + 1):
        return tuple(chosen), examined
    return None, examined


def _subtree_job(args) -> tuple[tuple[int, ...] | None, int]:
    H, rule, pool, k, first = args
    engine = _Engine(compile_hypergraph(H), rule)
    root = engine.start(0)
    return _subtree(engine, pool, k, first, root)


def _component_search(H: Hypergraph, rule: str, executor: ProcessPoolExecutor | None
                      ) -> tuple[tuple[int, ...], int]:
    engine = _Engine(compile_hypergraph(H), rule)
    root = engine.start(0)
    full = engine.c.full
    examined = 1
    if engine.covered(root) == full:
        return (), examined
    base = engine.covered(root) if engine.prunes else 0
    pool = [v for v in H.vertices if not base >> v & 1]
    for k in range(1, len(pool) + 1):
        firsts = [i for i in range(len(pool) - k + 1)]
        if executor is None:
            results = (_subtree(engine, pool, k, i, root) for i in firsts)
        else:
            results = executor.map(_subtree_job, [(H, rule, pool, k, i) for i in firsts])
        for witness, count in results:
            examined += count
            if witness is not None:
                return witness, examined
    raise AssertionError("the whole candidate pool must be a witness")  # pragma: no cover


def minimum_set(H: Hypergraph, parameter: str, workers: int = 1) -> SearchResult:
    """Exact value and canonical witness of ``parameter`` (one of Z0, I, Zpd, pd).

    With ``workers > 1`` the subsets of each size are split by their least
    element and searched in separate processes; the lowest chunk holding a
    witness wins, so the answer does not depend on the worker count.
    """
    try:
        rule = PARAMETERS[parameter]
    except KeyError:
        raise ValueError(f"unknown parameter {parameter!r}; expected one of {', '.join(PARAMETERS)}") from None
    executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        witness: list[int] = []
        examined = 0
        comps = connected_components(H)
        for comp in comps:
            sub, mapping = relabel(H, comp)
            back = {new: old for old, new in mapping.items()}
            w, count = _component_search(sub, rule, executor)
            witness.extend(back[v] for v in w)
            examined += count
    finally:
        if executor is not None:
            executor.shutdown(cancel_futures=True)
    witness.sort()
    pruning = "pool excludes derived(∅); prefixes skip already-colored vertices" if rule != "pd" else "no pruning"
    certificate = (
        f"exhaustive over {len(comps)} component(s): every smaller subset of each candidate pool "
        f"was ruled out in ascending-size lexicographic order ({pruning})"
    )
    return SearchResult(parameter, len(witness), tuple(witness), examined, certificate)


def min_zf_set(H: Hypergraph, workers: int = 1) -> SearchResult:
    return minimum_set(H, "Z0", workers)


def min_infection_set(H: Hypergraph, workers: int = 1) -> SearchResult:
    return minimum_set(H, "I", workers)


def min_pdzf_set(H: Hypergraph, workers: int = 1) -> SearchResult:
    return minimum_set(H, "Zpd", workers)


def min_pd_set(H: Hypergraph, workers: int = 1) -> SearchResult:
    return minimum_set(H, "pd", workers)


def z0(H: Hypergraph) -> int:
    return min_zf_set(H).value


# ------------------------------------------------------------ Cartesian probe


@dataclass
class ProbeReport:
    d: int
    size_bound: int
    trials: int
    seed: int
    counts: dict[str, int] = field(default_factory=dict)
    strict: list[dict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "size_bound": self.size_bound,
            "trials": self.trials,
            "seed": self.seed,
            "counts": self.counts,
            "strict_inequalities": self.strict,
            "violations": self.violations,
        }


def probe_cartesian_equality(d: int, size_bound: int, trials: int, seed: int,
                             edge_probability: tuple[float, float] = (0.15, 0.5),
                             sampler: Callable[[random.Random], tuple[Hypergraph, Hypergraph]] | None = None,
                             ) -> ProbeReport:
    """Compare ``Z0(H □ H')`` with ``Z0(H) Z0(H')`` on random pairs.

    Each factor has between ``d`` and ``size_bound`` vertices.  The upper
    bound is checked on every pair, equality whenever either factor has
    ``Z0 <= 1``; pairs with a strict inequality are collected, since any such
    pair would settle the open equality question in the negative.
    """
    from .families import random_hypergraph

    if d < 3:
        raise ValueError("the product bound is stated for d >= 3")
    rng = random.Random(seed)

    def draw(r: random.Random) -> tuple[Hypergraph, Hypergraph]:
        pair = []
        for _ in range(2):
            n = r.randint(d, max(d, size_bound))
            p = r.uniform(*edge_probability)
            pair.append(random_hypergraph(n, d, p, r.randrange(2**32)))
        return pair[0], pair[1]

    sampler = sampler or draw
    report = ProbeReport(d, size_bound, trials, seed,
                         counts={"pairs": 0, "factor_zero": 0, "factor_one": 0, "other": 0, "equal": 0})
    for _ in range(trials):
        H, Hp = sampler(rng)
        a, b = z0(H), z0(Hp)
        prod = z0(cartesian_product(H, Hp))
        report.counts["pairs"] += 1
        kind = "factor_zero" if min(a, b) == 0 else "factor_one" if min(a, b) == 1 else "other"
        report.counts[kind] += 1
        record = {"H": to_json(H), "H'": to_json(Hp), "Z0(H)": a, "Z0(H')": b, "Z0(product)": prod}
        if prod > a * b:
            report.violations.append({**record, "statement": "Z0(H □ H') <= Z0(H) Z0(H')"})
        elif kind != "other" and prod != a * b:
            report.violations.append({**record, "statement": "equality when a factor has Z0 <= 1"})
        if prod == a * b:
            report.counts["equal"] += 1
        elif prod < a * b:
            report.strict.append(record)
    return report


__all__ = [
    "PARAMETERS",
    "ProbeReport",
    "SearchResult",
    "min_infection_set",
    "min_pd_set",
    "min_pdzf_set",
    "min_zf_set",
    "minimum_set",
    "probe_cartesian_equality",
    "z0",
    "from_mask",
]
