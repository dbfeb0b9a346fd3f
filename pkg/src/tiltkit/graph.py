"""Exchange graphs of tilting sets and reachability certificates.

Nodes are canonical rigid-set keys, edges join sets differing in exactly
one summand and carry that exchanged pair.  Exploration is breadth-first
with a node budget and so produces the canonical ball around the start:
the node and edge sets depend only on the inputs, never on scheduling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from . import sheaves as sh
from .lattice import LatticeElement, omega, scalar_mul, zero
from .rigid import (
    Backend,
    CohBackend,
    ComplementNotInWindow,
    DynkinBackend,
    Element,
    RigidSet,
    SearchWindow,
    mutate,
    parse_rigid_set,
)


class NotFoundWithinBudget(RuntimeError):
    """Search exhausted its budget without connecting the endpoints."""


class NotReachable(RuntimeError):
    """No rigidity chain between the endpoints inside the search universe."""


@dataclass
class ExchangeGraph:
    """Mutation graph fragment: nodes, labeled edges, unexpanded frontier."""

    backend: Backend
    nodes: dict[str, RigidSet]
    edges: dict[tuple[str, str], tuple[str, str]]  # (a, b) -> (out of a, into b)
    frontier: set[str]
    start_key: str = field(compare=False, default="")

    def degree(self, key: str) -> int:
        return sum(1 for a, b in self.edges if key in (a, b))

    def interior_keys(self) -> list[str]:
        return [k for k in self.nodes if k not in self.frontier]

    def neighbors(self, key: str) -> list[str]:
        out = [b if a == key else a for a, b in self.edges if key in (a, b)]
        return sorted(out)

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        seen = {next(iter(self.nodes))}
        stack = list(seen)
        while stack:
            k = stack.pop()
            for other in self.neighbors(k):
                if other not in seen:
                    seen.add(other)
                    stack.append(other)
        return len(seen) == len(self.nodes)

    def to_json(self) -> str:
        doc = {
            "nodes": [
                {"key": k, "elements": [str(e) for e in self.nodes[k].elements]}
                for k in sorted(self.nodes)
            ],
            "edges": [
                {"a": a, "b": b, "out": out, "in": inn}
                for (a, b), (out, inn) in sorted(self.edges.items())
            ],
            "frontier": sorted(self.frontier),
        }
        return json.dumps(doc, indent=2)

    def to_dot(self) -> str:
        lines = ["graph exchange {"]
        for k in sorted(self.nodes):
            shape = "ellipse" if k in self.frontier else "box"
            lines.append(f'  "{k}" [shape={shape}];')
        for (a, b), (out, inn) in sorted(self.edges.items()):
            lines.append(f'  "{a}" -- "{b}" [label="{out} / {inn}"];')
        lines.append("}")
        return "\n".join(lines)


def graph_from_json(backend: Backend, text: str) -> ExchangeGraph:
    doc = json.loads(text)
    nodes = {
        item["key"]: parse_rigid_set(backend, " | ".join(item["elements"]))
        for item in doc["nodes"]
    }
    edges = {
        (item["a"], item["b"]): (item["out"], item["in"]) for item in doc["edges"]
    }
    return ExchangeGraph(backend, nodes, edges, set(doc["frontier"]))


def _edge(a: RigidSet, b: RigidSet) -> tuple[tuple[str, str], tuple[str, str]]:
    ka, kb = a.key, b.key
    out = next(str(e) for e in a.elements if e not in b.elements)
    inn = next(str(e) for e in b.elements if e not in a.elements)
    if ka <= kb:
        return (ka, kb), (out, inn)
    return (kb, ka), (inn, out)


def explore(
    start: RigidSet,
    budget: int | None = 10000,
    window: SearchWindow | None = None,
    max_depth: int | None = None,
) -> ExchangeGraph:
    """Breadth-first ball around start.

    budget caps the number of stored nodes; nodes discovered but never
    expanded (by budget or depth) form the frontier.  Mutations that leave
    the window are recorded as holes in the node's degree, not errors.
    """
    g = ExchangeGraph(start.backend, {}, {}, set(), start_key=start.key)
    g.nodes[start.key] = start
    depth = {start.key: 0}
    queue = [start.key]
    qi = 0
    while qi < len(queue):
        key = queue[qi]
        qi += 1
        if max_depth is not None and depth[key] >= max_depth:
            g.frontier.add(key)
            continue
        node = g.nodes[key]
        out_of_room = False
        for k in range(len(node.elements)):
            try:
                neighbor = mutate(node, k, window=window)
            except ComplementNotInWindow:
                continue
            nk = neighbor.key
            if nk not in g.nodes:
                if budget is not None and len(g.nodes) >= budget:
                    out_of_room = True  # this node's expansion is incomplete
                    g.frontier.add(key)
                    break
                g.nodes[nk] = neighbor
                depth[nk] = depth[key] + 1
                queue.append(nk)
            ekey, elabel = _edge(node, neighbor)
            g.edges.setdefault(ekey, elabel)
        if out_of_room:
            break
    g.frontier.update(queue[qi:])
    return g


@dataclass(frozen=True)
class PathStep:
    """One mutation along a path: position, removed and added literals."""

    index: int
    out: str
    into: str


def _step_between(a: RigidSet, b: RigidSet) -> PathStep:
    out = next(e for e in a.elements if e not in b.elements)
    into = next(e for e in b.elements if e not in a.elements)
    return PathStep(a.elements.index(out), str(out), str(into))


def apply_path(
    start: RigidSet, steps: list[PathStep], window: SearchWindow | None = None
) -> RigidSet:
    """Replay mutation steps; raises if any step disagrees with the labels."""
    current = start
    for step in steps:
        if str(current.elements[step.index]) != step.out:
            raise ValueError(f"path step {step} does not match {current.key}")
        after = mutate(current, step.index, window=window)
        added = next(e for e in after.elements if e not in current.elements)
        if str(added) != step.into:
            raise ValueError(f"mutation added {added}, expected {step.into}")
        current = after
    return current


@lru_cache(maxsize=None)
def _expansions(node: RigidSet, window: SearchWindow | None) -> tuple[RigidSet, ...]:
    """All in-window mutations of a node, shared across path searches."""
    out = []
    for k in range(len(node.elements)):
        try:
            out.append(mutate(node, k, window=window))
        except ComplementNotInWindow:
            continue
    return tuple(out)


def find_path(
    a: RigidSet,
    b: RigidSet,
    window: SearchWindow | None = None,
    budget: int = 50000,
) -> list[PathStep]:
    """Bidirectional breadth-first mutation path from a to b.

    Returns replayable steps (empty for a == b); raises NotFoundWithinBudget
    after expanding `budget` nodes without meeting.
    """
    if a.backend != b.backend:
        raise ValueError("endpoints live over different backends")
    if a == b:
        return []
    sides = [
        {a.key: (a, None)},  # key -> (set, parent key)
        {b.key: (b, None)},
    ]
    queues = [[a.key], [b.key]]
    heads = [0, 0]
    expansions = 0
    meet: str | None = None
    while meet is None:
        side = 0 if len(queues[0]) - heads[0] <= len(queues[1]) - heads[1] else 1
        if heads[side] >= len(queues[side]):
            raise NotReachable(f"search space exhausted between {a.key} and {b.key}")
        key = queues[side][heads[side]]
        heads[side] += 1
        node = sides[side][key][0]
        for neighbor in _expansions(node, window):
            nk = neighbor.key
            if nk not in sides[side]:
                sides[side][nk] = (neighbor, key)
                queues[side].append(nk)
            if nk in sides[1 - side]:
                meet = nk
                break
        expansions += 1
        if meet is None and expansions >= budget:
            raise NotFoundWithinBudget(
                f"no path within {budget} expansions between {a.key} and {b.key}"
            )

    def chain(side_idx: int, key: str) -> list[RigidSet]:
        out = []
        cur: str | None = key
        while cur is not None:
            node, parent = sides[side_idx][cur]
            out.append(node)
            cur = parent
        return out

    forward = list(reversed(chain(0, meet)))  # a ... meet
    backward = chain(1, meet)  # meet ... b
    full = forward + backward[1:]
    steps = [_step_between(u, v) for u, v in zip(full, full[1:])]
    # paths must replay exactly before they are returned
    assert apply_path(a, steps, window=window) == b
    return steps


def restrict(g: ExchangeGraph, pinned: Element) -> ExchangeGraph:
    """Induced subgraph on nodes containing the pinned exceptional summand."""
    if not g.backend.is_exceptional(pinned):
        raise ValueError(f"pinned element {pinned} is not exceptional")
    nodes = {k: s for k, s in g.nodes.items() if pinned in s.elements}
    edges = {
        (ka, kb): label
        for (ka, kb), label in g.edges.items()
        if ka in nodes and kb in nodes
    }
    frontier = {k for k in g.frontier if k in nodes}
    return ExchangeGraph(g.backend, nodes, edges, frontier, start_key=g.start_key)


@dataclass(frozen=True)
class ReachCertificate:
    """Chain of exceptional objects with rigid consecutive direct sums."""

    backend: Backend
    chain: tuple[Element, ...]

    def verify(self) -> list[dict]:
        """Recheck every link; raises AssertionError on any failure."""
        report = []
        for e in self.chain:
            if not self.backend.is_exceptional(e):
                raise AssertionError(f"chain element {e} is not exceptional")
        for u, v in zip(self.chain, self.chain[1:]):
            ok = self.backend.compatible(u, v)
            report.append({"a": str(u), "b": str(v), "rigid": ok})
            if not ok:
                raise AssertionError(f"chain link {u} / {v} is not rigid")
        return report

    def to_json(self) -> str:
        return json.dumps(
            {
                "chain": [str(e) for e in self.chain],
                "edges": [
                    {"a": str(u), "b": str(v)}
                    for u, v in zip(self.chain, self.chain[1:])
                ],
            },
            indent=2,
        )


def _dedupe(chain: list[Element]) -> list[Element]:
    """Collapse revisits: cut the chain back to the first occurrence."""
    compact: list[Element] = []
    position: dict[Element, int] = {}
    for e in chain:
        if e in position:
            keep = position[e] + 1
            for dropped in compact[keep:]:
                del position[dropped]
            compact = compact[:keep]
        else:
            position[e] = len(compact)
            compact.append(e)
    return compact


def _line_chain_to_structure(backend: CohBackend, bundle: sh.LineBundle) -> list[Element]:
    """O(x) to O by degree steps of c, then one hop per generator component."""
    w = backend.weight
    chain: list[Element] = [bundle]
    x = bundle.x
    while x.l != 0:
        step = -1 if x.l > 0 else 1
        x = LatticeElement(w, x.li, x.l + step)
        chain.append(sh.LineBundle(x))
    li = list(x.li)
    for i in range(w.t):
        if li[i] != 0:
            li[i] = 0
            x = LatticeElement(w, tuple(li), 0)
            chain.append(sh.LineBundle(x))
    return chain


def _coh_chain_to_structure(backend: CohBackend, e: Element) -> list[Element]:
    w = backend.weight
    o = sh.LineBundle(zero(w))
    if isinstance(e, sh.LineBundle):
        return _line_chain_to_structure(backend, e)
    assert isinstance(e, sh.TorsionSheaf) and e.tube is not None
    chain: list[Element] = [e]
    socle = sh.TorsionSheaf(w, e.tube, e.socle, 1)
    if socle != e:
        chain.append(socle)
    # the socle S_{i,j} pairs rigidly with the structure sheaf twisted to
    # the same tau orbit position, then the line chain finishes the walk
    twist = scalar_mul(-(socle.socle - 1), omega(w))
    chain.extend(_line_chain_to_structure(backend, sh.LineBundle(twist)))
    return chain


def reach(
    backend: Backend,
    m: Element,
    n: Element,
    window: SearchWindow | None = None,
    budget: int = 10000,
) -> ReachCertificate:
    """Certificate that m and n are linked through rigid pairs.

    coh backends build the constructive chain through the structure sheaf;
    if construction cannot apply (or fails verification) the search falls
    back to breadth-first search on the compatibility graph of the window
    universe.  Every certificate is re-verified before it is returned.
    """
    for e in (m, n):
        if not backend.is_exceptional(e):
            raise ValueError(f"{e} is not exceptional")
    if isinstance(backend, CohBackend):
        left = _coh_chain_to_structure(backend, m)
        right = _coh_chain_to_structure(backend, n)
        chain = _dedupe(left + list(reversed(right)))
        cert = ReachCertificate(backend, tuple(chain))
        try:
            cert.verify()
            return cert
        except AssertionError:
            pass  # fall back to breadth-first search below
    window = window or SearchWindow(-8, 8)
    universe = list(backend.candidates(window))
    if m not in universe:
        universe.append(m)
    if n not in universe:
        universe.append(n)
    universe = [e for e in universe if backend.is_exceptional(e)]
    parent: dict[Element, Element | None] = {m: None}
    queue = [m]
    qi = 0
    expansions = 0
    while qi < len(queue):
        cur = queue[qi]
        qi += 1
        if cur == n:
            break
        expansions += 1
        if expansions > budget:
            raise NotFoundWithinBudget(f"reach budget {budget} exhausted")
        for cand in universe:
            if cand not in parent and backend.compatible(cur, cand):
                parent[cand] = cur
                queue.append(cand)
    if n not in parent:
        raise NotReachable(f"no rigidity chain from {m} to {n} in window {window}")
    chain = []
    cur: Element | None = n
    while cur is not None:
        chain.append(cur)
        cur = parent[cur]
    cert = ReachCertificate(backend, tuple(reversed(chain)))
    cert.verify()
    return cert
