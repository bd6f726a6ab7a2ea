"""Null vectors and maximum nullity over prime fields GF(p).

A weight assignment gives every edge a nonzero field element and so
describes one symmetric graphical hypermatrix of the hypergraph.  Its
null vectors are computed through the edge-restricted flattening: one row per
boundary set ``T`` and one column per vertex ``j``, holding the weight of
``T | {j}`` when that is an edge and 0 otherwise.

Every value computed here is exact and tied to the field it was computed in.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations
from typing import Mapping, Sequence

import numpy as np

from .hypergraph import Hypergraph, connected_components, relabel

DEFAULT_EXHAUSTIVE_PRIME = 3
DEFAULT_GENERIC_PRIME = 1_000_003
DEFAULT_BUDGET = 10**7


class FieldError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """Exhaustive enumeration would exceed the configured assignment budget."""

    def __init__(self, needed: int, budget: int):
        super().__init__(f"exhaustive search needs {needed} weight assignments, budget is {budget}")
        self.needed = needed
        self.budget = budget


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise FieldError(f"modulus {p} is not prime")


@dataclass(frozen=True)
class WeightAssignment:
    """Nonzero GF(p) weights indexed like ``hypergraph.edges``."""

    hypergraph: Hypergraph
    modulus: int
    weights: tuple[int, ...]

    def __post_init__(self):
        _require_prime(self.modulus)
        if len(self.weights) != self.hypergraph.m:
            raise ValueError(f"{len(self.weights)} weights for {self.hypergraph.m} edges")
        for e, w in zip(self.hypergraph.edges, self.weights):
            if w % self.modulus == 0:
                raise FieldError(f"weight of edge {list(e)} is zero mod {self.modulus}")
        object.__setattr__(self, "weights", tuple(w % self.modulus for w in self.weights))

    @classmethod
    def ones(cls, H: Hypergraph, p: int) -> WeightAssignment:
        return cls(H, p, (1,) * H.m)

    @classmethod
    def from_mapping(cls, H: Hypergraph, p: int, mapping: Mapping[Sequence[int], int]) -> WeightAssignment:
        by_edge = {tuple(sorted(e)): w for e, w in mapping.items()}
        missing = [list(e) for e in H.edges if e not in by_edge]
        if missing or len(by_edge) != H.m:
            raise ValueError(f"weights must cover exactly the edges; missing {missing}")
        return cls(H, p, tuple(by_edge[e] for e in H.edges))

    @classmethod
    def random(cls, H: Hypergraph, p: int, rng: random.Random) -> WeightAssignment:
        return cls(H, p, tuple(rng.randrange(1, p) for _ in range(H.m)))

    def weight(self, vertices: Sequence[int]) -> int:
        return self.weights[self.hypergraph.edge_index(vertices)]

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(zip(self.hypergraph.edges, self.weights))


@dataclass(frozen=True)
class FlattenedMatrix:
    rows: tuple[tuple[int, ...], ...]
    n: int
    modulus: int
    entries: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.n

    def to_numpy(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(len(self.rows), self.n)

    def apply(self, x: Sequence[int]) -> list[int]:
        p = self.modulus
        return [sum(a * b for a, b in zip(row, x)) % p for row in self.entries]


@dataclass(frozen=True)
class KernelBasis:
    vectors: tuple[tuple[int, ...], ...]
    modulus: int

    def __len__(self) -> int:
        return len(self.vectors)


def flatten(H: Hypergraph, W: WeightAssignment) -> FlattenedMatrix:
    if W.hypergraph != H:
        raise ValueError("weight assignment belongs to a different hypergraph")
    weight = W.as_dict()
    rows, entries = [], []
    for T, completions in H.boundary_index.items():
        row = [0] * H.n
        for j in completions:
            row[j - 1] = weight[tuple(sorted(T + (j,)))]
        rows.append(T)
        entries.append(tuple(row))
    return FlattenedMatrix(tuple(rows), H.n, W.modulus, tuple(entries))


def hypermatrix(H: Hypergraph, W: WeightAssignment) -> np.ndarray:
    """Dense symmetric graphical d-hypermatrix (0-based axes) for ``W``."""
    A = np.zeros((H.n,) * H.d, dtype=np.int64)
    for e, w in zip(H.edges, W.weights):
        for perm in permutations(v - 1 for v in e):
            A[perm] = w
    return A


def last_flattening(A: np.ndarray) -> np.ndarray:
    """n x n^(d-1) matrix whose ``(j, i)`` entry is ``A[i_1..i_{d-1}, j]``.

    Columns follow the lexicographic order of ``(i_1, ..., i_{d-1})``.
    """
    n, d = A.shape[0], A.ndim
    return np.moveaxis(A, -1, 0).reshape(n, n ** (d - 1))


def rank_nullity(M: FlattenedMatrix) -> tuple[int, int, KernelBasis]:
    """Rank, nullity and a right-kernel basis over GF(p), by Gauss-Jordan.

    Pivots are taken as the first nonzero entry in column order.
    """
    p, n = M.modulus, M.n
    A = [list(r) for r in M.entries]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, len(A)) if A[i][c] % p), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = pow(A[r][c], p - 2, p)
        A[r] = [v * inv % p for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for i, pc in enumerate(pivots):
            x[pc] = -A[i][f] % p
        basis.append(tuple(x))
    return len(pivots), len(free), KernelBasis(tuple(basis), p)


def nullity(H: Hypergraph, W: WeightAssignment) -> int:
    return rank_nullity(flatten(H, W))[1]


def is_null_vector(H: Hypergraph, W: WeightAssignment, x: Sequence[int]) -> bool:
    """Check the null-vector condition literally on the full hypermatrix.

    For every multiset ``{i_1, ..., i_{d-1}}`` of vertices (repeats allowed)
    the sum over ``j`` of ``a[i_1..i_{d-1}, j] * x_j`` must vanish, where the
    entry is the edge weight when the indices are distinct and form an edge
    and 0 otherwise.
    """
    if len(x) != H.n:
        raise ValueError(f"vector has length {len(x)}, expected {H.n}")
    p = W.modulus
    weight = W.as_dict()
    for idx in combinations_with_replacement(H.vertices, H.d - 1):
        total = 0
        for j in H.vertices:
            key = tuple(sorted(idx + (j,)))
            if len(set(key)) == H.d and key in weight:
                total += weight[key] * x[j - 1]
        if total % p:
            return False
    return True


def generic_nullity(H: Hypergraph, p: int = DEFAULT_GENERIC_PRIME, trials: int = 5, seed: int = 0) -> int:
    """Smallest nullity seen over ``trials`` uniform nonzero weight assignments.

    With high probability (growing with ``p``) this is the nullity of a
    generic member of the pattern, i.e. the minimum over all assignments.
    """
    _require_prime(p)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    return min(nullity(H, WeightAssignment.random(H, p, rng)) for _ in range(trials))


# ------------------------------------------------------- exhaustive maximum


@dataclass(frozen=True)
class MaxNullity:
    value: int
    field: int
    witness: WeightAssignment
    kernel: KernelBasis
    assignments: int


def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


def batch_nullities(H: Hypergraph, weights: np.ndarray, p: int) -> np.ndarray:
    """Nullity of the flattening for every row of ``weights`` (shape ``(B, m)``).

    All ``B`` matrices share the same support, so Gauss-Jordan runs in
    lockstep: per column each matrix picks its first unused nonzero row.
    """
    rows_of = {T: i for i, T in enumerate(H.boundary_index)}
    r_idx, c_idx, e_idx = [], [], []
    for k, e in enumerate(H.edges):
        for pos, w in enumerate(e):
            r_idx.append(rows_of[e[:pos] + e[pos + 1:]])
            c_idx.append(w - 1)
            e_idx.append(k)
    B, R, n = weights.shape[0], len(rows_of), H.n
    if R == 0:
        return np.full(B, n, dtype=np.int64)
    inv = _inverse_table(p)
    M = np.zeros((B, R, n), dtype=np.int64)
    M[:, r_idx, c_idx] = weights[:, e_idx] % p
    used = np.zeros((B, R), dtype=bool)
    rank = np.zeros(B, dtype=np.int64)
    ar = np.arange(B)
    for col in range(n):
        colv = M[:, :, col]
        cand = (colv != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = cand.argmax(axis=1)
        prow = M[ar, piv, :]
        prow = prow * inv[prow[:, col]][:, None] % p
        factor = colv * has[:, None]
        factor[ar, piv] = 0
        M = (M - factor[:, :, None] * prow[:, None, :]) % p
        used[ar[has], piv[has]] = True
        rank += has
    return n - rank


def _max_over_assignments(H: Hypergraph, p: int, fix_first: bool, chunk: int = 1 << 14
                          ) -> tuple[int, tuple[int, ...], int]:
    m = H.m
    if m == 0:
        return H.n, (), 1
    free = m - 1 if fix_first else m
    total = (p - 1) ** free
    best, best_w = -1, ()
    base = p - 1
    powers = np.array([base**j for j in range(free)], dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % base + 1
        if fix_first:
            digits = np.concatenate([np.ones((len(idx), 1), dtype=np.int64), digits], axis=1)
        nul = batch_nullities(H, digits, p)
        k = int(nul.argmax())
        if nul[k] > best:
            best, best_w = int(nul[k]), tuple(int(v) for v in digits[k])
            if best == H.n:
                break
    return best, best_w, total


def exhaustive_cost(H: Hypergraph, p: int, reduce: bool = True) -> int:
    if not reduce:
        return (p - 1) ** H.m
    return sum((p - 1) ** max(sum(1 for e in H.edges if e[0] in comp) - 1, 0)
               for comp in connected_components(H))


def max_nullity_exhaustive(H: Hypergraph, p: int = DEFAULT_EXHAUSTIVE_PRIME,
                           budget: int = DEFAULT_BUDGET, reduce: bool = True) -> MaxNullity:
    """Maximum nullity over every nonzero weight assignment in GF(p).

    With ``reduce`` the work is split over connected components (the
    flattening is block diagonal, so nullities add) and, inside a component,
    the first edge's weight is fixed to 1 (scaling all weights of a
    component by one nonzero constant does not change the rank).  Without it
    all ``(p-1)^m`` assignments of the whole hypergraph are tried.
    """
    _require_prime(p)
    needed = exhaustive_cost(H, p, reduce)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    if not reduce:
        value, weights, count = _max_over_assignments(H, p, fix_first=False)
    else:
        value, count = 0, 0
        chosen: dict[tuple[int, ...], int] = {}
        for comp in connected_components(H):
            sub, mapping = relabel(H, comp)
            back = {new: old for old, new in mapping.items()}
            v, w, c = _max_over_assignments(sub, p, fix_first=True)
            value += v
            count += c
            for e, wt in zip(sub.edges, w):
                chosen[tuple(sorted(back[x] for x in e))] = wt
        weights = tuple(chosen[e] for e in H.edges)
    witness = WeightAssignment(H, p, weights)
    rank, nul, kernel = rank_nullity(flatten(H, witness))
    if nul != value:
        raise AssertionError(f"batched nullity {value} disagrees with direct elimination {nul}")
    return MaxNullity(value, p, witness, kernel, count)


# ---------------------------------------------------------- M <= Z0 report


@dataclass(frozen=True)
class MZReport:
    field: int
    max_nullity: int
    z0: int
    bound_holds: bool
    prescribed_zero_sets: int
    prescribed_zeros_hold: bool
    witness: WeightAssignment

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "M": self.max_nullity,
            "Z0": self.z0,
            "bound_holds": self.bound_holds,
            "prescribed_zero_sets": self.prescribed_zero_sets,
            "prescribed_zeros_hold": self.prescribed_zeros_hold,
            "witness_weights": list(self.witness.weights),
        }


def vanishing_kernel_vector(M: FlattenedMatrix, kernel: KernelBasis, alpha: Sequence[int]) -> tuple[int, ...] | None:
    """A nonzero kernel vector with zeros at the (1-based) positions ``alpha``, if any."""
    p = kernel.modulus
    if not kernel.vectors:
        return None
    # coefficients c with sum_i c_i v_i vanishing on alpha
    restricted = FlattenedMatrix(
        tuple((a,) for a in alpha), len(kernel.vectors), p,
        tuple(tuple(v[a - 1] for v in kernel.vectors) for a in alpha),
    )
    _, free, coeffs = rank_nullity(restricted)
    if not free:
        return None
    c = coeffs.vectors[0]
    x = tuple(sum(ci * v[j] for ci, v in zip(c, kernel.vectors)) % p for j in range(M.n))
    return x if any(x) else None


def verify_mz_bound(H: Hypergraph, p: int = DEFAULT_EXHAUSTIVE_PRIME, budget: int = DEFAULT_BUDGET) -> MZReport:
    """Check ``M_GF(p)(H) <= Z0(H)`` and the prescribed-zeros property.

    For the maximizing assignment with nullity ``r``, every ``k < r`` and every
    ``k``-subset ``alpha`` of vertices, a nonzero kernel vector vanishing on
    ``alpha`` is constructed and re-checked against the flattening.
    """
    from .search import z0

    best = max_nullity_exhaustive(H, p, budget)
    zf = z0(H)
    M = flatten(H, best.witness)
    checked, ok = 0, True
    for k in range(best.value):
        for alpha in combinations(H.vertices, k):
            checked += 1
            x = vanishing_kernel_vector(M, best.kernel, alpha)
            if x is None or any(x[a - 1] for a in alpha) or any(M.apply(x)):
                ok = False
    return MZReport(p, best.value, zf, best.value <= zf, checked, ok, best.witness)


__all__ = [
    "BudgetExceeded",
    "FieldError",
    "FlattenedMatrix",
    "KernelBasis",
    "MaxNullity",
    "MZReport",
    "WeightAssignment",
    "batch_nullities",
    "flatten",
    "generic_nullity",
    "hypermatrix",
    "is_null_vector",
    "is_prime",
    "last_flattening",
    "max_nullity_exhaustive",
    "nullity",
    "rank_nullity",
    "verify_mz_bound",
]
