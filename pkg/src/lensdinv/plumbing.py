"""d-invariants of negative-definite plumbed 3-manifolds.

A plumbing graph encodes a 4-manifold X built from disc bundles over
spheres; the boundary is the plumbed 3-manifold.  The intersection form
Q on H_2(X) has the vertex weights on the diagonal and a 1 for each
edge.  When Q is negative definite and the graph has at most one bad
vertex (weight strictly greater than minus the valence), the d-invariant
of the boundary in the Spin^c structure of class [w] is

    d = max (w^T Q^{-1} w + |G|) / 4

over characteristic vectors w in the class.  The maximiser lies among
the characteristic vectors that support a maximising path of the
push-down procedure: starting from a vector in the box
e_i + 2 <= w_i <= -e_i, repeatedly pick a vertex j with w_j = -e_j and
replace w by w + 2 Q e_j.  The path ends inside the closed box
[e_i, -e_i - 2] (maximising) or with some entry above -e_i
(non-maximising).  The quantity w^T Q^{-1} w is constant along a path,
since a step at j adds 4<w, Sigma_j> + 4 e_j = 0 when <w, Sigma_j> = -e_j.

push_down is the single-vector reference implementation; enumeration
over the whole starting box runs through a vectorised engine that
advances many vectors in lockstep (the two are equivalence-tested).
"""

import itertools
import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .exactlin import CharVector, IntersectionForm, SpincClass, is_negative_definite


class AlgorithmInapplicableError(ValueError):
    """The graph violates a precondition of the d-invariant algorithm."""


class StepBudgetExceededError(RuntimeError):
    """A push-down path exceeded its step budget.

    Signals either a non-definite form (the procedure need not
    terminate) or a budget chosen too small.
    """


@dataclass(frozen=True)
class PlumbingGraph:
    """A weighted simple connected graph with vertex ids 0..n-1."""

    weights: tuple
    edges: tuple

    def __init__(self, weights, edges):
        weights = tuple(int(w) for w in weights)
        n = len(weights)
        norm = []
        seen = set()
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError("loops are not allowed")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a},{b}) out of range for {n} vertices")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            norm.append(key)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if n and not self._connected():
            raise ValueError("graph must be connected")

    def _connected(self):
        n = len(self.weights)
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == n

    @property
    def size(self):
        return len(self.weights)

    def adjacency(self):
        adj = {i: [] for i in range(self.size)}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def valences(self):
        val = [0] * self.size
        for a, b in self.edges:
            val[a] += 1
            val[b] += 1
        return val

    def to_dict(self):
        return {
            "vertices": [{"id": i, "weight": w} for i, w in enumerate(self.weights)],
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_dict(cls, data):
        vertices = data["vertices"]
        ids = sorted(v["id"] for v in vertices)
        if ids != list(range(len(vertices))):
            raise ValueError("vertex ids must be exactly 0..N-1")
        weights = [0] * len(vertices)
        for v in vertices:
            weights[v["id"]] = v["weight"]
        return cls(weights, [tuple(e) for e in data["edges"]])

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=1)
            fh.write("\n")


@lru_cache(maxsize=None)
def intersection_form(graph: PlumbingGraph) -> IntersectionForm:
    """The symmetric matrix with weights on the diagonal and 1 on edges."""
    n = graph.size
    rows = [[0] * n for _ in range(n)]
    for i, w in enumerate(graph.weights):
        rows[i][i] = w
    for a, b in graph.edges:
        rows[a][b] = rows[b][a] = 1
    return IntersectionForm(rows)


def count_bad_vertices(graph: PlumbingGraph) -> int:
    """Vertices whose weight is strictly greater than minus their valence."""
    return sum(1 for w, v in zip(graph.weights, graph.valences()) if w > -v)


def default_step_budget(graph: PlumbingGraph) -> int:
    """Generous path-length bound: 64 |G| (1 + max|e_i|) |det Q|."""
    max_weight = max(abs(w) for w in graph.weights)
    return 64 * graph.size * (1 + max_weight) * abs(intersection_form(graph).det())


class PathKind(Enum):
    MAXIMISING = "maximising"
    NON_MAXIMISING = "non-maximising"


@dataclass(frozen=True)
class PathOutcome:
    kind: PathKind
    terminal: CharVector
    steps: int


def push_down(w, graph: PlumbingGraph, max_steps=None, rng=None) -> PathOutcome:
    """Run the push-down procedure from the characteristic vector w.

    The vertex pushed at each step is the smallest index j with
    w_j = -e_j; passing a random.Random as rng picks j uniformly from
    the candidates instead (used to probe order-independence of the
    outcome kind).  Raises StepBudgetExceededError past max_steps.
    """
    form = intersection_form(graph)
    vec = list(CharVector(w, form))
    weights = graph.weights
    n = graph.size
    if max_steps is None:
        max_steps = default_step_budget(graph)
    cols = [tuple(2 * form.rows[j][i] for i in range(n)) for j in range(n)]

    steps = 0
    while True:
        if any(vec[i] > -weights[i] for i in range(n)):
            return PathOutcome(PathKind.NON_MAXIMISING, CharVector(vec, form), steps)
        if all(vec[i] <= -weights[i] - 2 for i in range(n)):
            assert all(vec[i] >= weights[i] for i in range(n)), \
                "maximising terminal escaped the closed box"
            return PathOutcome(PathKind.MAXIMISING, CharVector(vec, form), steps)
        if steps >= max_steps:
            raise StepBudgetExceededError(
                f"no termination within {max_steps} steps")
        candidates = [i for i in range(n) if vec[i] == -weights[i]]
        j = candidates[0] if rng is None else rng.choice(candidates)
        assert vec[j] == -weights[j]
        col = cols[j]
        for i in range(n):
            vec[i] += col[i]
        steps += 1


def _box_geometry(form: IntersectionForm):
    los = np.array([e + 2 for e in form.diagonal], dtype=np.int64)
    his = np.array([-e for e in form.diagonal], dtype=np.int64)
    sizes = (his - los) // 2 + 1
    if (sizes <= 0).any():
        raise AlgorithmInapplicableError("empty starting box; "
                                         "is the form negative definite?")
    return los, sizes


def _chain_components(graph: PlumbingGraph):
    """Connected components of the subgraph of weight -2, valence <= 2 vertices."""
    val = graph.valences()
    members = {i for i, w in enumerate(graph.weights) if w == -2 and val[i] <= 2}
    adj = graph.adjacency()
    components = []
    todo = set(members)
    while todo:
        start = todo.pop()
        comp = {start}
        stack = [start]
        while stack:
            for u in adj[stack.pop()]:
                if u in members and u not in comp:
                    comp.add(u)
                    stack.append(u)
        todo -= comp
        if len(comp) >= 2:
            components.append(sorted(comp))
    return components


def _supporter_chunk(args):
    """Initial vectors in [start, stop) of the box that support a maximising path.

    Lockstep variant of push_down: every live vector receives one push
    per sweep, at its smallest index with entry -e_j.  Returns plain
    tuples, in box (lexicographic) order.
    """
    q_rows, los, sizes, start, stop, budget, prune_components = args
    q = np.asarray(q_rows, dtype=np.int64)
    los = np.asarray(los, dtype=np.int64)
    sizes = np.asarray(sizes, dtype=np.int64)
    neg_e = -np.diag(q)
    n = len(los)
    strides = np.ones(n, dtype=np.int64)
    for i in range(n - 2, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]

    idx = np.arange(start, stop, dtype=np.int64)
    starts = los[None, :] + 2 * ((idx[:, None] // strides[None, :]) % sizes[None, :])
    if prune_components:
        keep = np.ones(len(starts), dtype=bool)
        for comp in prune_components:
            keep &= (starts[:, comp] == 2).sum(axis=1) <= 1
        starts = starts[keep]

    work = starts.copy()
    alive = np.ones(len(work), dtype=bool)
    supports = np.zeros(len(work), dtype=bool)
    two_q = 2 * q
    for _ in range(budget + 1):
        rows = np.flatnonzero(alive)
        if not len(rows):
            break
        current = work[rows]
        bad = (current > neg_e).any(axis=1)
        done = (~bad) & (current <= neg_e - 2).all(axis=1)
        finished = bad | done
        if finished.any():
            supports[rows[done]] = True
            alive[rows[finished]] = False
            rows = rows[~finished]
            current = current[~finished]
        if not len(rows):
            break
        at_top = current == neg_e
        # parity guarantees a pushable entry on every unfinished row
        assert at_top.any(axis=1).all(), "no entry at -e on an unfinished row"
        work[rows] += two_q[at_top.argmax(axis=1)]
    else:
        raise StepBudgetExceededError(f"no termination within {budget} sweeps")
    return [tuple(map(int, row)) for row in starts[supports]]


def maximising_supporters(graph: PlumbingGraph, prune=False, jobs=1,
                          chunk_size=1 << 18):
    """All starting-box vectors that support a maximising path.

    Returned in lexicographic order as CharVectors.  With prune=True,
    box vectors carrying two entries equal to 2 on the same chain of
    weight -2, valence <= 2 vertices are skipped: pushing the 2s along
    the chain provably drives some entry above -e_i, so such vectors
    never support a maximising path.  The flag is off by default and is
    equivalence-tested against the unpruned search.
    """
    form = intersection_form(graph)
    los, sizes = _box_geometry(form)
    total = int(np.prod(sizes))
    budget = default_step_budget(graph)
    prune_components = _chain_components(graph) if prune else []
    tasks = [(form.rows, tuple(los), tuple(sizes), a, min(a + chunk_size, total),
              budget, prune_components)
             for a in range(0, total, chunk_size)]

    if jobs > 1 and len(tasks) > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            chunks = pool.map(_supporter_chunk, tasks)
    else:
        chunks = map(_supporter_chunk, tasks)
    return [CharVector(w, form) for w in itertools.chain.from_iterable(chunks)]


def dinv_plumbed(graph: PlumbingGraph, prune=False, jobs=1):
    """d-invariants of the plumbed boundary, as a dict SpincClass -> Fraction.

    Requires a negative-definite form and at most one bad vertex.  Each
    class with at least one maximising-path supporter gets the value
    max (w^T Q^{-1} w + |G|)/4 over its supporters; classes without a
    supporter are absent from the result (|det Q| classes exist in all).
    Keys are canonical: the representative is the lexicographically
    smallest supporter, and lookups with any SpincClass of the same
    class succeed.
    """
    form = intersection_form(graph)
    if not is_negative_definite(form):
        raise AlgorithmInapplicableError("intersection form is not negative definite")
    bad = count_bad_vertices(graph)
    if bad > 1:
        raise AlgorithmInapplicableError(f"{bad} bad vertices (at most 1 allowed)")

    # Supporters arrive in lex order, so the first one seen in a class
    # is the canonical representative.
    by_class = {}
    for w in maximising_supporters(graph, prune=prune, jobs=jobs):
        value = (form.quadratic_form(w) + graph.size) / 4
        cls = SpincClass(w, form)
        if cls not in by_class:
            by_class[cls] = (cls, value)
        elif value > by_class[cls][1]:
            by_class[cls] = (by_class[cls][0], value)
    return {rep: value for rep, value in by_class.values()}
