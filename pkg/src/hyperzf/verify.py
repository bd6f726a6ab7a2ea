"""Desk-scale re-derivation of the stated values and inequalities.

Each case runs a deterministic grid of instances and records every violation
together with the hypergraph that produced it (in ``.uhg`` text), so a failure
can be replayed with the other subcommands.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator

from .families import (
    complete,
    enumerate_connected_circular_arc,
    enumerate_connected_interval,
    circular_arc,
    interval,
    is_rotation_of,
    random_hypergraph,
    special_circular_arc,
    special_interval,
    special_interval_endpoints,
    star,
    tight_circular_arc,
)
from .hypergraph import (
    Hypergraph,
    cartesian_product,
    connected_components,
    delete_edge,
    delete_vertex,
    induced_subhypergraph,
    relabel,
    to_uhg,
    zero_forcing_superhypergraph,
)
from .nullity import exhaustive_cost, max_nullity_exhaustive
from .propagation import derived_set, zf_closure
from .search import minimum_set, z0

H1 = Hypergraph(5, 3, [[1, 2, 3], [3, 4, 5]])
H2 = Hypergraph(4, 3, [[1, 2, 3], [2, 3, 4]])
TREE10 = Hypergraph(10, 3, [[1, 2, 3], [2, 3, 4], [2, 5, 6], [3, 7, 8], [4, 9, 10]])


@dataclass
class CaseResult:
    name: str
    statement: str
    checked: int = 0
    failures: list[dict] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, condition: bool, H: Hypergraph | None, detail: str) -> None:
        self.checked += 1
        if not condition:
            self.failures.append({"detail": detail, "hypergraph": to_uhg(H) if H is not None else None})

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "statement": self.statement,
            "ok": self.ok,
            "checked": self.checked,
            "failures": self.failures,
            "seconds": round(self.seconds, 3),
        }


def random_instances(count: int, seed: int, d: int, n_range: tuple[int, int],
                     prob_range: tuple[float, float]) -> Iterator[Hypergraph]:
    """Deterministic stream of independent-edge random hypergraphs."""
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(*n_range)
        p = rng.uniform(*prob_range)
        yield random_hypergraph(n, d, p, rng.randrange(2**32))


def sample_with_z0(rng: random.Random, d: int, n_range: tuple[int, int], target: Callable[[int], bool],
                   prob_range: tuple[float, float] = (0.05, 0.6), attempts: int = 10_000) -> tuple[Hypergraph, int]:
    """Rejection-sample a random hypergraph whose Z0 satisfies ``target``."""
    for _ in range(attempts):
        H = random_hypergraph(rng.randint(*n_range), d, rng.uniform(*prob_range), rng.randrange(2**32))
        value = z0(H)
        if target(value):
            return H, value
    raise RuntimeError("no hypergraph with the requested zero forcing number found")


def random_linear(rng: random.Random, n: int, d: int, max_overlap: int) -> Hypergraph:
    """Random d-hypergraph with pairwise edge overlaps at most ``max_overlap``, isolated vertices removed."""
    candidates = list(combinations(range(1, n + 1), d))
    rng.shuffle(candidates)
    chosen: list[tuple[int, ...]] = []
    for e in candidates:
        if all(len(set(e) & set(f)) <= max_overlap for f in chosen):
            chosen.append(e)
    keep = max(1, rng.randint(1, len(chosen)))
    H = Hypergraph(n, d, chosen[:keep])
    covered = {v for e in H.edges for v in e}
    return relabel(H, covered)[0]


def _param(H: Hypergraph, name: str) -> int:
    return minimum_set(H, name).value


# ------------------------------------------------------------------- cases


def case_knd_z(r: CaseResult, ctx: dict) -> None:
    for d in (2, 3, 4):
        for n in range(d, d + 5):
            K = complete(n, d)
            r.check(_param(K, "Z0") == n - d, K, f"Z0(K_{n}^({d})) != {n - d}")


def case_knd_m(r: CaseResult, ctx: dict) -> None:
    for d in (2, 3, 4):
        for n in range(d + 1, d + 5):
            K = complete(n, d)
            for p in (2, 3):
                if exhaustive_cost(K, p) > ctx["budget"]:
                    continue
                M = max_nullity_exhaustive(K, p, ctx["budget"]).value
                r.check(M <= n - d - 1, K, f"M_GF({p})(K_{n}^({d})) = {M} > {n - d - 1}")
    for d in (3, 4):
        K = complete(d + 1, d)
        for p in (2, 3):
            M = max_nullity_exhaustive(K, p, ctx["budget"]).value
            r.check(M == 0, K, f"M_GF({p})(K_{d + 1}^({d})) = {M}, expected 0")


def case_knd_i_zpd(r: CaseResult, ctx: dict) -> None:
    for d in (2, 3, 4):
        for n in range(d, d + 5):
            K = complete(n, d)
            for name in ("I", "Zpd"):
                r.check(_param(K, name) == n - d + 1, K, f"{name}(K_{n}^({d})) != {n - d + 1}")


def case_linear(r: CaseResult, ctx: dict) -> None:
    rng = random.Random(ctx["seed"])
    for _ in range(60):
        d = rng.choice((3, 4))
        H = random_linear(rng, rng.randint(d, 9), d, max_overlap=rng.choice((1, d - 2)))
        zf = _param(H, "Z0")
        M = max_nullity_exhaustive(H, 3, ctx["budget"]).value
        r.check(zf == 0 and M == 0, H, f"Z0 = {zf}, M_GF(3) = {M}; expected both 0")


def case_star(r: CaseResult, ctx: dict) -> None:
    for d in (3, 4):
        for p in range(2, 6):
            S = star(p, d)
            r.check(_param(S, "Z0") == 0, S, f"Z0(S_{p}^({d})) != 0")
            r.check(_param(S, "I") == p - 1, S, f"I(S_{p}^({d})) != {p - 1}")


def case_interval_char(r: CaseResult, ctx: dict) -> None:
    for d, top in ((3, 12), (4, 13)):
        for n in range(d + 1, top + 1):
            for L in enumerate_connected_interval(n, d):
                H = interval(n, d, L)
                special = (n - 1) % d == 0 and L == special_interval_endpoints(d, (n - 1) // d)
                zf = _param(H, "Z0")
                r.check(zf == (1 if special else 0), H, f"n={n} L={L}: Z0 = {zf}, special = {special}")
                if H.m <= 12:
                    M = max_nullity_exhaustive(H, 3, ctx["budget"]).value
                    r.check(M == zf, H, f"n={n} L={L}: M_GF(3) = {M} != Z0 = {zf}")


def _first_step_forced(H: Hypergraph) -> set[int]:
    return {ws[0] for ws in H.boundary_index.values() if len(ws) == 1}


def interval_lemma_checks(r: CaseResult, H: Hypergraph, L: list[int]) -> None:
    n, d, m = H.n, H.d, len(L)
    full = frozenset(H.vertices)
    for end in (1, n):
        r.check(derived_set(H, "zf", {end}) == full, H, f"L={L}: {{{end}}} is not a zero forcing set")
    one_step = _first_step_forced(H)
    pos = {l: i for i, l in enumerate(L)}
    for k in range(2, n):
        i = pos.get(k)
        exception = (i is not None and 0 < i < m - 1 and k == L[i - 1] + d - 1 and L[i + 1] == k + 1)
        if not exception:
            r.check(k in one_step, H, f"L={L}: the empty set does not force {k}")
    if not (m >= 2 and L[1] == 2):
        r.check(1 in one_step, H, f"L={L}: the empty set does not force 1")
    if not (m >= 2 and L[-2] == n - d):
        r.check(n in one_step, H, f"L={L}: the empty set does not force {n}")
    for start in range(1, n - d + 2):
        block = range(start, start + d)
        r.check(derived_set(H, "zf", block) == full, H, f"L={L}: {list(block)} is not a zero forcing set")


def case_interval_lemmas(r: CaseResult, ctx: dict) -> None:
    for d, top in ((3, 12), (4, 13)):
        for n in range(d + 1, top + 1):
            for L in enumerate_connected_interval(n, d):
                interval_lemma_checks(r, interval(n, d, L), L)


def case_interval_pd(r: CaseResult, ctx: dict) -> None:
    for d, top in ((2, 10), (3, 12), (4, 13)):
        for n in range(d, top + 1):
            for L in enumerate_connected_interval(n, d):
                H = interval(n, d, L)
                value = _param(H, "Zpd")
                r.check(value == 1, H, f"n={n} L={L}: Zpd = {value}")


def case_interval_components(r: CaseResult, ctx: dict) -> None:
    rng = random.Random(ctx["seed"])
    for _ in range(80):
        d = rng.choice((3, 4))
        n = rng.randint(d, 11)
        L = sorted(rng.sample(range(1, n - d + 2), rng.randint(0, n - d + 1)))
        H = interval(n, d, L, connected=False)
        c1 = c2 = 0
        for comp in connected_components(H):
            if len(comp) == 1:
                c1 += 1
                continue
            sub = induced_subhypergraph(H, comp)
            if (sub.n - 1) % d == 0 and sub == special_interval(d, (sub.n - 1) // d):
                c2 += 1
        zf = _param(H, "Z0")
        M = max_nullity_exhaustive(H, 3, ctx["budget"]).value
        r.check(zf == c1 + c2 and M == c1 + c2, H, f"L={L}: Z0 = {zf}, M_GF(3) = {M}, c1 + c2 = {c1 + c2}")


def case_circular_char(r: CaseResult, ctx: dict) -> None:
    for d, top in ((3, 12), (4, 12)):
        for n in range(d + 2, top + 1):
            special = special_circular_arc(d, n // d) if n % d == 0 and n // d >= 2 else None
            for L in enumerate_connected_circular_arc(n, d):
                H = circular_arc(n, d, L)
                is_special = special is not None and is_rotation_of(H, special)
                zf = _param(H, "Z0")
                r.check(zf == (1 if is_special else 0), H, f"n={n} L={L}: Z0 = {zf}, special = {is_special}")


def case_tight_z(r: CaseResult, ctx: dict) -> None:
    for d in (3, 4, 5, 6):
        for t in range(1, d):
            if (d + 1) % (d - t) == 0:
                C = tight_circular_arc(d, t, (d + 1) // (d - t))
                r.check(_param(C, "Z0") == 1, C, f"Z0(C_{d + 1}^({d})({t})) != 1")
                M = max_nullity_exhaustive(C, 3, ctx["budget"]).value
                r.check(M <= 1, C, f"M_GF(3)(C_{d + 1}^({d})({t})) = {M} > 1")


def case_tight_i(r: CaseResult, ctx: dict) -> None:
    # not for d = 7: from {1,2}, S = {1} infects the edge missing only 2, so I = 2
    for d in (3, 5):
        C = tight_circular_arc(d, d - 2, (d + 1) // 2)
        value = _param(C, "I")
        r.check(value == (d - 1) // 2, C, f"I(C_{d + 1}^({d})({d - 2})) = {value}, expected {(d - 1) // 2}")


def case_tight_zpd(r: CaseResult, ctx: dict) -> None:
    for d in (3, 4):
        for n in range(2 * d - 1, 2 * d + 3):
            C = tight_circular_arc(d, d - 1, n)
            zpd, inf = _param(C, "Zpd"), _param(C, "I")
            r.check(zpd == d, C, f"Zpd(C_{n}^({d})({d - 1})) = {zpd}, expected {d}")
            r.check(inf == 2, C, f"I(C_{n}^({d})({d - 1})) = {inf}, expected 2")


CHAIN_ENSEMBLE = dict(d=3, n_range=(1, 8), prob_range=(0.05, 0.35))


def case_chain(r: CaseResult, ctx: dict) -> None:
    for H in random_instances(ctx.get("chain_count", 500), ctx["seed"], **CHAIN_ENSEMBLE):
        M = max_nullity_exhaustive(H, 3, ctx["budget"]).value
        zf, inf, zpd = (_param(H, k) for k in ("Z0", "I", "Zpd"))
        r.check(M <= zf <= inf <= zpd, H, f"M_GF(3)={M}, Z0={zf}, I={inf}, Zpd={zpd}")


def case_deletion(r: CaseResult, ctx: dict) -> None:
    for d, prob in ((3, (0.1, 0.5)), (2, (0.2, 0.6))):
        for H in random_instances(ctx.get("ops_count", 100), ctx["seed"] + d, d, (d, 8), prob):
            base = z0(H)
            for e in H.edges:
                after = z0(delete_edge(H, e))
                r.check(base - d <= after <= base + d, H, f"Z0 = {base}, Z0(H - {list(e)}) = {after}")
            for v in H.vertices:
                after = z0(delete_vertex(H, v)[0])
                r.check(base - 1 <= after, H, f"Z0 = {base}, Z0(H - {v}) = {after}")
                if d == 2:
                    r.check(after <= base + 1, H, f"Z0 = {base}, Z0(H - {v}) = {after}")


def case_superhypergraph(r: CaseResult, ctx: dict) -> None:
    rng = random.Random(ctx["seed"])
    count = ctx.get("ops_count", 100)
    # the criterion ensemble (d = 3, n <= 8) followed by a smaller mixed-d tail
    grid = [(3, 8)] * count + [(2, 10), (4, 10)] * (count // 4)
    for d, top in grid:
        H = random_hypergraph(rng.randint(d - 1, top), d, rng.uniform(0.0, 0.5), rng.randrange(2**32))
        Hp = zero_forcing_superhypergraph(H)
        r.check(induced_subhypergraph(Hp, H.vertices) == H, H, "H'[V] != H")
        r.check(z0(Hp) == 0, H, f"Z0(H') = {z0(Hp)}")


def case_cart_le(r: CaseResult, ctx: dict) -> None:
    rng = random.Random(ctx["seed"])
    for _ in range(ctx.get("ops_count", 100)):
        H, a = sample_with_z0(rng, 3, (3, 8), lambda z: True)
        Hp, b = sample_with_z0(rng, 3, (3, 8), lambda z: True)
        prod = z0(cartesian_product(H, Hp))
        r.check(prod <= a * b, H, f"Z0(H □ H') = {prod} > {a} * {b}; H' = {to_uhg(Hp)!r}")


def case_cart_eq1(r: CaseResult, ctx: dict) -> None:
    rng = random.Random(ctx["seed"])
    for target in (1, 0):
        for _ in range(ctx.get("ops_count", 100)):
            H, a = sample_with_z0(rng, 3, (3, 8), lambda z: True)
            Hp, _ = sample_with_z0(rng, 3, (3, 8), lambda z: z == target)
            prod = z0(cartesian_product(H, Hp))
            r.check(prod == a * target, H, f"Z0(H □ H') = {prod} != {a} * {target}; H' = {to_uhg(Hp)!r}")


def case_cart_eq3(r: CaseResult, ctx: dict) -> None:
    rng = random.Random(ctx["seed"])
    for _ in range(ctx.get("ops_count", 100)):
        Hp, b = sample_with_z0(rng, 3, (3, 8), lambda z: z <= 3)
        H, a = sample_with_z0(rng, 3, (3, 8), lambda z: z * b <= 3)
        prod = z0(cartesian_product(H, Hp))
        r.check(prod == a * b, H, f"Z0(H □ H') = {prod} != {a} * {b}; H' = {to_uhg(Hp)!r}")


def case_tree10(r: CaseResult, ctx: dict) -> None:
    F = TREE10
    full = frozenset(F.vertices)
    for name, want in (("Z0", 0), ("I", 1), ("Zpd", 2)):
        got = _param(F, name)
        r.check(got == want, F, f"{name} = {got}, expected {want}")
    r.check(derived_set(F, "pdzf", {1, 5}) == full, F, "{1,5} is not a power domination zero forcing set")
    for v in F.vertices:
        r.check(derived_set(F, "pdzf", {v}) != full, F, f"{{{v}}} is a power domination zero forcing set")


def case_h1_h2(r: CaseResult, ctx: dict) -> None:
    for H, zf, M in ((H1, 0, 0), (H2, 1, 1)):
        got_z, got_m = _param(H, "Z0"), max_nullity_exhaustive(H, 3).value
        r.check(got_z == zf, H, f"Z0 = {got_z}, expected {zf}")
        r.check(got_m == M, H, f"M_GF(3) = {got_m}, expected {M}")
    r.check(zf_closure(H1)[0] == frozenset(H1.vertices), H1, "the empty set does not force H1")
    r.check(zf_closure(H2, {1})[0] == frozenset(H2.vertices), H2, "{1} does not force H2")


def case_skew_d2(r: CaseResult, ctx: dict) -> None:
    for n in range(1, 13):
        P = interval(n, 2, list(range(1, n))) if n >= 2 else Hypergraph(1, 2)
        r.check(z0(P) == n % 2, P, f"Z0(P_{n}) = {z0(P)}, expected {n % 2}")
    for s in range(2, 7):
        C = circular_arc(2 * s, 2, list(range(1, 2 * s + 1)))
        r.check(z0(C) == 2, C, f"Z0(C_{2 * s}) = {z0(C)}, expected 2")


CASES: dict[str, tuple[str, Callable[[CaseResult, dict], None]]] = {
    "knd_z": ("Z0(K_n^(d)) = n - d", case_knd_z),
    "knd_m": ("M(K_n^(d)) <= n - d - 1, M(K_{d+1}^(d)) = 0", case_knd_m),
    "knd_i_zpd": ("I(K_n^(d)) = Zpd(K_n^(d)) = n - d + 1", case_knd_i_zpd),
    "linear": ("pairwise overlaps <= d - 2, no isolated vertices => M = Z0 = 0", case_linear),
    "star": ("Z0(S_p^(d)) = 0 and I(S_p^(d)) = p - 1", case_star),
    "interval_char": ("connected interval: M = Z0 = 1 iff H = SI^d_{(n-1)/d}, else 0", case_interval_char),
    "interval_lemmas": ("{1},{n} force; empty set forces all but the listed exceptions; d consecutive vertices force",
                        case_interval_lemmas),
    "interval_pd": ("connected interval: Zpd = 1", case_interval_pd),
    "interval_components": ("interval: M = Z0 = c1 + c2", case_interval_components),
    "circular_char": ("circular arc, n >= d + 2: Z0 = 1 iff H is SCA^d_{n/d}, else 0", case_circular_char),
    "tight_z": ("Z0(C_{d+1}^(d)(t)) = 1 when (d - t) | (d + 1)", case_tight_z),
    "tight_i": ("I(C_{d+1}^(d)(d-2)) = (d - 1)/2 for d in {3, 5}", case_tight_i),
    "tight_zpd": ("Zpd(C_n^(d)(d-1)) = d and I = 2 for n >= 2d - 1", case_tight_zpd),
    "chain": ("M <= Z0 <= I <= Zpd", case_chain),
    "deletion": ("Z0(H)-d <= Z0(H-e) <= Z0(H)+d; Z0(H)-1 <= Z0(H-v); d=2: Z0(H-v) <= Z0(H)+1", case_deletion),
    "superhypergraph": ("H = H'[V] and Z0(H') = 0", case_superhypergraph),
    "cart_le": ("Z0(H □ H') <= Z0(H) Z0(H')", case_cart_le),
    "cart_eq1": ("Z0(H') <= 1 => Z0(H □ H') = Z0(H) Z0(H')", case_cart_eq1),
    "cart_eq3": ("Z0(H) Z0(H') <= 3 => Z0(H □ H') = Z0(H) Z0(H')", case_cart_eq3),
    "tree10": ("ten-vertex tree: Z0 = 0, I = 1, Zpd = 2", case_tree10),
    "h1_h2": ("Z0(H1) = 0, Z0(H2) = 1, M(H1) = 0, M(H2) = 1", case_h1_h2),
    "skew_d2": ("d = 2: Z0(P_n) = n mod 2, Z0(C_2s) = 2", case_skew_d2),
}


def select_cases(pattern: str | None) -> list[str]:
    """Case names matching a comma-separated list of names or prefixes ending in ``*``."""
    if not pattern:
        return list(CASES)
    names: list[str] = []
    for token in (t.strip() for t in pattern.split(",") if t.strip()):
        if token.endswith("*"):
            hits = [c for c in CASES if c.startswith(token[:-1])]
        else:
            hits = [token] if token in CASES else []
        if not hits:
            raise KeyError(f"unknown verify case {token!r}")
        names.extend(h for h in hits if h not in names)
    return names


def run_case(name: str, seed: int = 2024, budget: int = 10**7, **overrides) -> CaseResult:
    statement, fn = CASES[name]
    ctx = {"seed": seed, "budget": budget, **overrides}
    result = CaseResult(name, statement)
    start = time.perf_counter()
    fn(result, ctx)
    result.seconds = time.perf_counter() - start
    return result


def run_verify(suite: str | None = None, seed: int = 2024, budget: int = 10**7, **overrides) -> list[CaseResult]:
    return [run_case(name, seed, budget, **overrides) for name in select_cases(suite)]
