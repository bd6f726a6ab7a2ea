"""Closure engines for the three color change rules and power domination.

Rules, by name:

``zf``
    hypergraph zero forcing: a (d-1)-set ``S``, blue or not, forces white ``w``
    when ``S | {w}`` is an edge and no other white ``u`` has ``S | {u}`` an edge.
``infect``
    infection: a nonempty infected ``S`` inside edge ``e`` infects the rest of
    ``e`` when no uninfected ``u`` outside ``e`` has ``S | {u}`` inside an edge.
``pdzf``
    power domination zero forcing: a blue ``v`` colors its white neighbors
    when one edge through ``v`` contains all of them.
``pd``
    power domination: ``D`` and its neighbors are observed once, then ``pdzf``
    runs to a fixpoint.

Every closure returns the derived set together with a :class:`ForceTrace`
that :func:`replay` can re-check step by step.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .hypergraph import Hypergraph, HypergraphError

RULES = ("zf", "infect", "pdzf", "pd")


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def from_mask(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


class Compiled:
    """Bitmask tables for one hypergraph, shared by all closure calls."""

    def __init__(self, H: Hypergraph):
        self.H = H
        self.n = H.n
        self.full = to_mask(H.vertices)
        self.edge_masks = [to_mask(e) for e in H.edges]
        self.bsets = list(H.boundary_index)
        self.completions = [H.boundary_index[t] for t in self.bsets]
        self.comp_of: list[list[int]] = [[] for _ in range(H.n + 1)]
        for i, ws in enumerate(self.completions):
            for w in ws:
                self.comp_of[w].append(i)
        self.edges_of: list[list[int]] = [[] for _ in range(H.n + 1)]
        self.nbr = [0] * (H.n + 1)
        for v in H.vertices:
            for idx in H.incidence[v]:
                em = self.edge_masks[idx]
                self.edges_of[v].append(idx)
                self.nbr[v] |= em
            self.nbr[v] &= ~(1 << v)


@lru_cache(maxsize=512)
def compile_hypergraph(H: Hypergraph) -> Compiled:
    return Compiled(H)


# ----------------------------------------------------------------- zero forcing


def zf_counts(c: Compiled, blue: int) -> list[int]:
    return [sum(1 for w in ws if not blue >> w & 1) for ws in c.completions]


def zf_propagate(c: Compiled, blue: int, counts: list[int], queue: list[int],
                 trace: list | None = None, rng: random.Random | None = None) -> int:
    """Run forces until quiescent; ``counts`` is updated in place.

    ``counts[t]`` is the number of white completions of boundary set ``t``;
    ``t`` can force exactly when it is 1.  Each newly blue ``w`` decrements the
    boundary sets it completes, so total work is bounded by the incidence size.
    """
    comps, comp_of = c.completions, c.comp_of
    pending = deque(queue) if rng is None else list(queue)
    while pending:
        if rng is None:
            t = pending.popleft()
        else:
            k = rng.randrange(len(pending))
            pending[k], pending[-1] = pending[-1], pending[k]
            t = pending.pop()
        if counts[t] != 1:
            continue
        for w in comps[t]:
            if not blue >> w & 1:
                break
        blue |= 1 << w
        if trace is not None:
            trace.append((t, w))
        for t2 in comp_of[w]:
            counts[t2] -= 1
            if counts[t2] == 1:
                pending.append(t2)
    return blue


def zf_close_mask(c: Compiled, blue: int, rng: random.Random | None = None,
                  trace: list | None = None) -> tuple[int, list[int]]:
    counts = zf_counts(c, blue)
    queue = [t for t, k in enumerate(counts) if k == 1]
    if rng is not None:
        rng.shuffle(queue)
    blue = zf_propagate(c, blue, counts, queue, trace, rng)
    return blue, counts


# -------------------------------------------------------------------- infection


def infect_close_mask(c: Compiled, infected: int, rng: random.Random | None = None,
                      trace: list | None = None) -> int:
    """Infection fixpoint, testing only the largest acting set ``e & infected``.

    A larger ``S`` lies in fewer edges, so if any ``S`` inside ``e`` may act,
    the maximal one may too.
    """
    edges = c.edge_masks
    order = list(range(len(edges)))
    changed = True
    while changed:
        changed = False
        if rng is not None:
            rng.shuffle(order)
        for i in order:
            e = edges[i]
            S = e & infected
            if not S or S == e:
                continue
            outside = ~infected & ~e
            if any(f & S == S and f & outside for f in edges):
                continue
            if trace is not None:
                trace.append((S, i, e & ~infected))
            infected |= e
            changed = True
    return infected


# ------------------------------------------------------ power domination forcing


def pdzf_close_mask(c: Compiled, blue: int, rng: random.Random | None = None,
                    trace: list | None = None) -> int:
    edges, nbr, edges_of = c.edge_masks, c.nbr, c.edges_of
    order = list(range(1, c.n + 1))
    changed = True
    while changed:
        changed = False
        if rng is not None:
            rng.shuffle(order)
        for v in order:
            if not blue >> v & 1:
                continue
            white = nbr[v] & ~blue
            if not white:
                continue
            for i in edges_of[v]:
                if white & ~edges[i] == 0:
                    if trace is not None:
                        trace.append((v, i, white))
                    blue |= white
                    changed = True
                    break
    return blue


def observe_mask(c: Compiled, dominators: int) -> int:
    out = dominators
    for v in from_mask(dominators):
        out |= c.nbr[v]
    return out


# ------------------------------------------------------------------ public API


@dataclass(frozen=True)
class Step:
    """One application of a rule.

    ``actor`` is the acting set ``S`` for ``zf``/``infect`` and ``(v,)`` for
    ``pdzf`` and the observation step of ``pd``.  ``edge`` is the edge the
    step relies on (``None`` for observation).  ``colored`` are the vertices
    that change color.
    """

    kind: str
    actor: tuple[int, ...]
    edge: tuple[int, ...] | None
    colored: tuple[int, ...]

    def __str__(self) -> str:
        def fmt(vs: tuple[int, ...]) -> str:
            return "{" + ",".join(map(str, vs)) + "}"

        if self.kind == "zf":
            return f"{fmt(self.actor)} -> {self.colored[0]}"
        if self.kind == "infect":
            return f"{fmt(self.actor)} -> {fmt(self.colored)}"
        if self.kind == "observe":
            return f"{self.actor[0]} observes {fmt(self.colored)}"
        return f"{self.actor[0]} -> {fmt(self.colored)}"


@dataclass
class ForceTrace:
    rule: str
    initial: frozenset[int]
    steps: list[Step] = field(default_factory=list)

    def lines(self) -> list[str]:
        return [str(s) for s in self.steps]


def _sorted(mask: int) -> tuple[int, ...]:
    return tuple(sorted(from_mask(mask)))


def zf_closure(H: Hypergraph, B: Iterable[int] = (), rng: random.Random | None = None
               ) -> tuple[frozenset[int], ForceTrace]:
    """Derived set of ``B`` under the hypergraph color change rule."""
    B = H.check_vertices(B)
    c = compile_hypergraph(H)
    raw: list[tuple[int, int]] = []
    blue, _ = zf_close_mask(c, to_mask(B), rng, raw)
    steps = []
    for t, w in raw:
        S = c.bsets[t]
        steps.append(Step("zf", S, tuple(sorted(S + (w,))), (w,)))
    return from_mask(blue), ForceTrace("zf", B, steps)


def infection_closure(H: Hypergraph, B: Iterable[int] = (), rng: random.Random | None = None
                      ) -> tuple[frozenset[int], ForceTrace]:
    B = H.check_vertices(B)
    c = compile_hypergraph(H)
    raw: list[tuple[int, int, int]] = []
    infected = infect_close_mask(c, to_mask(B), rng, raw)
    steps = [Step("infect", _sorted(S), H.edges[i], _sorted(new)) for S, i, new in raw]
    return from_mask(infected), ForceTrace("infect", B, steps)


def pdzf_closure(H: Hypergraph, B: Iterable[int] = (), rng: random.Random | None = None
                 ) -> tuple[frozenset[int], ForceTrace]:
    B = H.check_vertices(B)
    c = compile_hypergraph(H)
    raw: list[tuple[int, int, int]] = []
    blue = pdzf_close_mask(c, to_mask(B), rng, raw)
    steps = [Step("pdzf", (v,), H.edges[i], _sorted(new)) for v, i, new in raw]
    return from_mask(blue), ForceTrace("pdzf", B, steps)


def pd_observe(H: Hypergraph, D: Iterable[int] = (), rng: random.Random | None = None
               ) -> tuple[frozenset[int], ForceTrace]:
    """Observation rule (1) once from ``D``, then rule (2) to a fixpoint."""
    D = H.check_vertices(D)
    c = compile_hypergraph(H)
    steps = [Step("observe", (v,), None, tuple(sorted(H.neighbors(v) | {v}))) for v in sorted(D)]
    raw: list[tuple[int, int, int]] = []
    observed = pdzf_close_mask(c, observe_mask(c, to_mask(D)), rng, raw)
    steps += [Step("pdzf", (v,), H.edges[i], _sorted(new)) for v, i, new in raw]
    return from_mask(observed), ForceTrace("pd", D, steps)


CLOSURES = {
    "zf": zf_closure,
    "infect": infection_closure,
    "pdzf": pdzf_closure,
    "pd": pd_observe,
}


def closure(H: Hypergraph, rule: str, B: Iterable[int] = (), rng: random.Random | None = None
            ) -> tuple[frozenset[int], ForceTrace]:
    try:
        fn = CLOSURES[rule]
    except KeyError:
        raise ValueError(f"unknown rule {rule!r}; expected one of {', '.join(RULES)}") from None
    return fn(H, B, rng)


def derived_set(H: Hypergraph, rule: str, B: Iterable[int] = ()) -> frozenset[int]:
    return closure(H, rule, B)[0]


# --------------------------------------------------------------------- replay


class ReplayError(ValueError):
    """A recorded step is not a legal move at the point it is replayed."""


def _check_zf(H: Hypergraph, colored: set[int], step: Step) -> None:
    S = set(step.actor)
    (w,) = step.colored
    if len(S) != H.d - 1 or w in S:
        raise ReplayError(f"{step}: acting set must be d-1 vertices not containing {w}")
    if w in colored:
        raise ReplayError(f"{step}: {w} is already blue")
    if not H.has_edge(S | {w}):
        raise ReplayError(f"{step}: S + {w} is not an edge")
    for u in H.vertices:
        if u != w and u not in colored and u not in S and H.has_edge(S | {u}):
            raise ReplayError(f"{step}: white {u} also completes S to an edge")


def _check_infect(H: Hypergraph, colored: set[int], step: Step) -> None:
    S, e = set(step.actor), set(step.edge or ())
    if not S or not S <= colored:
        raise ReplayError(f"{step}: acting set must be nonempty and infected")
    if not H.has_edge(e) or not S < e:
        raise ReplayError(f"{step}: acting set must lie properly inside an edge")
    for u in H.vertices:
        if u in colored or u in e:
            continue
        for f in H.edges:
            if S | {u} <= set(f):
                raise ReplayError(f"{step}: uninfected {u} with S lies in edge {list(f)}")
    if set(step.colored) != e - colored:
        raise ReplayError(f"{step}: must infect exactly the uninfected part of the edge")


def _check_pdzf(H: Hypergraph, colored: set[int], step: Step) -> None:
    (v,) = step.actor
    e = set(step.edge or ())
    if v not in colored:
        raise ReplayError(f"{step}: {v} is not blue")
    white = H.neighbors(v) - colored
    if not white:
        raise ReplayError(f"{step}: {v} has no white neighbors")
    if not H.has_edge(e) or v not in e or not white <= e:
        raise ReplayError(f"{step}: white neighbors of {v} are not inside one edge through {v}")
    if set(step.colored) != white:
        raise ReplayError(f"{step}: must color exactly the white neighbors of {v}")


def replay(H: Hypergraph, trace: ForceTrace) -> frozenset[int]:
    """Re-apply ``trace`` from its initial set, validating every step when applied."""
    colored = set(trace.initial)
    observing = trace.rule == "pd"
    for step in trace.steps:
        if step.kind == "observe":
            if not observing:
                raise ReplayError(f"{step}: observation step after forcing began")
            (v,) = step.actor
            if v not in trace.initial or set(step.colored) != H.neighbors(v) | {v}:
                raise ReplayError(f"{step}: not a closed neighborhood of a dominator")
        else:
            observing = False
            check = {"zf": _check_zf, "infect": _check_infect, "pdzf": _check_pdzf}.get(step.kind)
            if check is None:
                raise ReplayError(f"unknown step kind {step.kind!r}")
            check(H, colored, step)
        colored.update(step.colored)
    return frozenset(colored)


__all__ = [
    "RULES",
    "ForceTrace",
    "Step",
    "ReplayError",
    "HypergraphError",
    "closure",
    "derived_set",
    "infection_closure",
    "pd_observe",
    "pdzf_closure",
    "replay",
    "zf_closure",
]
