"""Seeded instance generators and evaluators: knapsack, NK, TSP, QAP.

Distributions are fixed here so relative comparisons are reproducible:
profits/weights uniform in [10,100] with capacity ceil(sum w / 2); NK with
K=4 neighbors and table values on a 1/2^20 fixed-point grid; TSP city
coordinates on a 10^4 x 10^4 integer grid with nearest-integer Euclidean
distances; QAP distances/flows uniform in [1,100] (symmetric distances,
asymmetric flows). Everything is integer-exact: knapsack/TSP/QAP objective
values are integers, NK values are rationals over n*2^20.

Knapsack and NK are maximized; TSP and QAP are minimized. The evaluators
here report the original orientation; negation for the engine happens at
the problem boundary (see smsemoa.engine).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..core import BitString, ObjectiveVector, Permutation
from ..rng import RngState

NK_FIXED_POINT = 1 << 20
TSP_GRID = 10_000


@dataclass
class KpInstance:
    n: int
    seed: int
    profits1: np.ndarray
    profits2: np.ndarray
    weights: np.ndarray
    capacity: int

    def __post_init__(self):
        for arr in (self.profits1, self.profits2, self.weights):
            if arr.shape != (self.n,) or np.any(arr < 1):
                raise ValueError("profits and weights must be >= 1, one per item")
        total = int(self.weights.sum())
        if not 0 < self.capacity < total:
            raise ValueError("capacity must lie strictly between 0 and the total weight")

    def __eq__(self, other):
        return (isinstance(other, KpInstance) and self.n == other.n
                and self.seed == other.seed and self.capacity == other.capacity
                and np.array_equal(self.profits1, other.profits1)
                and np.array_equal(self.profits2, other.profits2)
                and np.array_equal(self.weights, other.weights))

    def repair_order(self) -> np.ndarray:
        """Items sorted by increasing max(p1, p2)/w, ties by index."""
        keys = sorted(range(self.n),
                      key=lambda i: (Fraction(int(max(self.profits1[i], self.profits2[i])),
                                              int(self.weights[i])), i))
        return np.array(keys, dtype=np.int64)


@dataclass
class NkInstance:
    n: int
    seed: int
    k: int
    neighbors1: np.ndarray
    tables1: np.ndarray
    neighbors2: np.ndarray
    tables2: np.ndarray

    def __post_init__(self):
        cols = 1 << (self.k + 1)
        for nb, tab in ((self.neighbors1, self.tables1), (self.neighbors2, self.tables2)):
            if nb.shape != (self.n, self.k) or tab.shape != (self.n, cols):
                raise ValueError("neighbor/table shapes do not match n and K")
            for i in range(self.n):
                row = nb[i]
                if len(set(int(v) for v in row)) != self.k or i in row:
                    raise ValueError("neighbors must be distinct and exclude the own index")
            if np.any(tab < 0) or np.any(tab > NK_FIXED_POINT):
                raise ValueError("table values must lie in [0, 2^20]")

    def __eq__(self, other):
        return (isinstance(other, NkInstance) and self.n == other.n
                and self.seed == other.seed and self.k == other.k
                and np.array_equal(self.neighbors1, other.neighbors1)
                and np.array_equal(self.tables1, other.tables1)
                and np.array_equal(self.neighbors2, other.neighbors2)
                and np.array_equal(self.tables2, other.tables2))


@dataclass
class TspInstance:
    n: int
    seed: int
    dist1: np.ndarray
    dist2: np.ndarray

    def __post_init__(self):
        for d in (self.dist1, self.dist2):
            if d.shape != (self.n, self.n) or np.any(d < 0):
                raise ValueError("distance matrices must be nonnegative and n x n")
            if np.any(np.diag(d) != 0) or not np.array_equal(d, d.T):
                raise ValueError("distance matrices must be symmetric with zero diagonal")

    def __eq__(self, other):
        return (isinstance(other, TspInstance) and self.n == other.n
                and self.seed == other.seed
                and np.array_equal(self.dist1, other.dist1)
                and np.array_equal(self.dist2, other.dist2))


@dataclass
class QapInstance:
    n: int
    seed: int
    dist: np.ndarray
    flow1: np.ndarray
    flow2: np.ndarray

    def __post_init__(self):
        for m in (self.dist, self.flow1, self.flow2):
            if m.shape != (self.n, self.n) or np.any(m < 0):
                raise ValueError("matrices must be nonnegative and n x n")
            if np.any(np.diag(m) != 0):
                raise ValueError("matrices must have zero diagonals")

    def __eq__(self, other):
        return (isinstance(other, QapInstance) and self.n == other.n
                and self.seed == other.seed
                and np.array_equal(self.dist, other.dist)
                and np.array_equal(self.flow1, other.flow1)
                and np.array_equal(self.flow2, other.flow2))


Instance = KpInstance | NkInstance | TspInstance | QapInstance


# ---------------------------------------------------------------------------
# generators (draw order is part of the determinism contract)


def generate_kp(n: int, seed: int) -> KpInstance:
    """Profits and weights uniform in [10,100]; capacity = ceil(sum w / 2).

    Draw order: profits1, profits2, weights (each item-ascending).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    rng = RngState.from_seed(seed)
    p1 = np.array([10 + rng.randint(91) for _ in range(n)], dtype=np.int64)
    p2 = np.array([10 + rng.randint(91) for _ in range(n)], dtype=np.int64)
    w = np.array([10 + rng.randint(91) for _ in range(n)], dtype=np.int64)
    capacity = (int(w.sum()) + 1) // 2
    return KpInstance(n=n, seed=seed, profits1=p1, profits2=p2, weights=w,
                      capacity=capacity)


def generate_nk(n: int, seed: int, k: int = 4) -> NkInstance:
    """Two independent landscapes with K neighbors per variable.

    Per landscape: neighbor rows first (K distinct indices != i, drawn by
    rejection, kept in draw order), then table rows of 2^(K+1) values on
    the 1/2^20 grid.
    """
    if n < k + 1:
        raise ValueError("n must exceed the neighbor count")
    rng = RngState.from_seed(seed)
    cols = 1 << (k + 1)

    def one_landscape():
        nb = np.empty((n, k), dtype=np.int64)
        for i in range(n):
            chosen: list[int] = []
            while len(chosen) < k:
                c = rng.randint(n)
                if c != i and c not in chosen:
                    chosen.append(c)
            nb[i] = chosen
        tab = np.empty((n, cols), dtype=np.int64)
        for i in range(n):
            for col in range(cols):
                tab[i, col] = rng.randint(NK_FIXED_POINT + 1)
        return nb, tab

    nb1, t1 = one_landscape()
    nb2, t2 = one_landscape()
    return NkInstance(n=n, seed=seed, k=k, neighbors1=nb1, tables1=t1,
                      neighbors2=nb2, tables2=t2)


def _nint(v: float) -> int:
    return int(math.floor(v + 0.5))


def generate_tsp(n: int, seed: int) -> TspInstance:
    """Per objective, city coordinates uniform on the integer grid; the
    distance matrix is the nearest-integer Euclidean distance.

    Draw order: coords for objective 1 (x, y per city), then objective 2.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    rng = RngState.from_seed(seed)

    def one_matrix():
        xs = np.array([rng.randint(TSP_GRID) for _ in range(2 * n)], dtype=np.int64)
        cx, cy = xs[0::2], xs[1::2]
        d = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(i + 1, n):
                dx = float(cx[i] - cx[j])
                dy = float(cy[i] - cy[j])
                d[i, j] = d[j, i] = _nint(math.sqrt(dx * dx + dy * dy))
        return d

    d1 = one_matrix()
    d2 = one_matrix()
    return TspInstance(n=n, seed=seed, dist1=d1, dist2=d2)


def generate_qap(n: int, seed: int) -> QapInstance:
    """Distances uniform in [1,100] (symmetric), two asymmetric flow
    matrices uniform in [1,100]; zero diagonals.

    Draw order: distance upper triangle row by row, then flow1, then flow2
    (row-major, skipping the diagonal).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    rng = RngState.from_seed(seed)
    dist = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            dist[i, j] = dist[j, i] = 1 + rng.randint(100)

    def one_flow():
        f = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                if i != j:
                    f[i, j] = 1 + rng.randint(100)
        return f

    f1 = one_flow()
    f2 = one_flow()
    return QapInstance(n=n, seed=seed, dist=dist, flow1=f1, flow2=f2)


# ---------------------------------------------------------------------------
# evaluation (original orientation) and repair


def kp_weight(x: BitString, inst: KpInstance) -> int:
    return int(inst.weights[x.bits == 1].sum())


def kp_repair(x: BitString, inst: KpInstance) -> BitString:
    """Greedily drop selected items (worst max-profit/weight ratio first)
    until the weight fits; feasible inputs pass through unchanged."""
    if kp_weight(x, inst) <= inst.capacity:
        return x
    bits = x.bits.copy()
    w = kp_weight(x, inst)
    for item in inst.repair_order():
        if w <= inst.capacity:
            break
        if bits[item] == 1:
            bits[item] = 0
            w -= int(inst.weights[item])
    return BitString(bits)


def kp_eval(x: BitString, inst: KpInstance) -> ObjectiveVector:
    """Profit sums of the selected items; input must be feasible."""
    if kp_weight(x, inst) > inst.capacity:
        raise ValueError("infeasible selection: apply kp_repair first")
    sel = x.bits == 1
    return ObjectiveVector(int(inst.profits1[sel].sum()), int(inst.profits2[sel].sum()))


def nk_eval(x: BitString, inst: NkInstance) -> ObjectiveVector:
    """Mean of the component tables; exact rationals over n * 2^20."""
    if x.n != inst.n:
        raise ValueError("size mismatch")

    def value(nb, tab) -> int:
        total = 0
        for i in range(inst.n):
            col = int(x.bits[i]) << inst.k
            for j, nbr in enumerate(nb[i]):
                col += int(x.bits[nbr]) << (inst.k - 1 - j)
            total += int(tab[i, col])
        return total

    den = inst.n * NK_FIXED_POINT
    return ObjectiveVector(Fraction(value(inst.neighbors1, inst.tables1), den),
                           Fraction(value(inst.neighbors2, inst.tables2), den))


def tsp_eval(tour: Permutation, inst: TspInstance) -> ObjectiveVector:
    """Closed-tour length under each distance matrix (minimized)."""
    if tour.n != inst.n:
        raise ValueError("size mismatch")
    s1 = s2 = 0
    for i in range(tour.n):
        u = tour[i]
        v = tour[(i + 1) % tour.n]
        s1 += int(inst.dist1[u, v])
        s2 += int(inst.dist2[u, v])
    return ObjectiveVector(s1, s2)


def qap_eval(p: Permutation, inst: QapInstance) -> ObjectiveVector:
    """Flow-weighted distance sums under the assignment (minimized)."""
    if p.n != inst.n:
        raise ValueError("size mismatch")
    s1 = s2 = 0
    for i in range(p.n):
        for j in range(p.n):
            d = int(inst.dist[p[i], p[j]])
            s1 += int(inst.flow1[i, j]) * d
            s2 += int(inst.flow2[i, j]) * d
    return ObjectiveVector(s1, s2)


# ---------------------------------------------------------------------------
# JSON serialization (bit-exact round trip)

KIND_OF = {KpInstance: "kp", NkInstance: "nk", TspInstance: "tsp", QapInstance: "qap"}


def instance_to_dict(inst: Instance) -> dict:
    kind = KIND_OF[type(inst)]
    doc = {"kind": kind, "n": inst.n, "seed": inst.seed}
    if isinstance(inst, KpInstance):
        doc["payload"] = {"profits1": inst.profits1.tolist(),
                          "profits2": inst.profits2.tolist(),
                          "weights": inst.weights.tolist(),
                          "capacity": inst.capacity}
    elif isinstance(inst, NkInstance):
        doc["payload"] = {"k": inst.k,
                          "neighbors1": inst.neighbors1.tolist(),
                          "tables1": inst.tables1.tolist(),
                          "neighbors2": inst.neighbors2.tolist(),
                          "tables2": inst.tables2.tolist()}
    elif isinstance(inst, TspInstance):
        doc["payload"] = {"dist1": inst.dist1.tolist(), "dist2": inst.dist2.tolist()}
    else:
        doc["payload"] = {"dist": inst.dist.tolist(),
                          "flow1": inst.flow1.tolist(),
                          "flow2": inst.flow2.tolist()}
    return doc


def instance_from_dict(doc: dict) -> Instance:
    kind = doc["kind"]
    n = doc["n"]
    seed = doc["seed"]
    pl = doc["payload"]
    arr = lambda key: np.array(pl[key], dtype=np.int64)  # noqa: E731
    if kind == "kp":
        return KpInstance(n=n, seed=seed, profits1=arr("profits1"),
                          profits2=arr("profits2"), weights=arr("weights"),
                          capacity=pl["capacity"])
    if kind == "nk":
        return NkInstance(n=n, seed=seed, k=pl["k"],
                          neighbors1=arr("neighbors1"), tables1=arr("tables1"),
                          neighbors2=arr("neighbors2"), tables2=arr("tables2"))
    if kind == "tsp":
        return TspInstance(n=n, seed=seed, dist1=arr("dist1"), dist2=arr("dist2"))
    if kind == "qap":
        return QapInstance(n=n, seed=seed, dist=arr("dist"),
                           flow1=arr("flow1"), flow2=arr("flow2"))
    raise ValueError(f"unknown instance kind {kind!r}")


def save_instance(inst: Instance, path) -> None:
    with open(path, "w") as fh:
        json.dump(instance_to_dict(inst), fh)


def load_instance(path) -> Instance:
    with open(path) as fh:
        return instance_from_dict(json.load(fh))


GENERATORS = {"kp": generate_kp, "nk": generate_nk, "tsp": generate_tsp,
              "qap": generate_qap}


def generate(kind: str, n: int, seed: int) -> Instance:
    if kind not in GENERATORS:
        raise ValueError(f"unknown instance kind {kind!r}")
    return GENERATORS[kind](n, seed)
