"""Named verification suites with timing and pass/fail reporting.

Each suite re-derives one family of facts from scratch: oracle
comparisons, exhaustive enumeration, or seeded random sampling.  A suite
returns pass/fail plus a short human-readable detail line; a raised
exception counts as a failure of that suite, never a crash of the run.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import product
from typing import Callable

from . import dynkin as dk
from . import graph as gr
from . import lattice as lat
from . import rigid as rg
from . import seeds as sd
from . import sheaves as sh

WEIGHT_TYPES = ("(1,1)", "(2,3)", "(2,2,2)", "(2,3,5)", "(2,3,6)", "(2,3,7)", "(2,2,2,2)")


@dataclass(frozen=True)
class SuiteResult:
    """Outcome of one verification suite."""

    name: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        return f"{mark} {self.name} ({self.seconds:.2f}s): {self.detail}"


def _suite_lattice(seed: int) -> tuple[bool, str]:
    """Order trichotomy on random elements, then graded dims vs oracle."""
    rng = random.Random(seed)
    t0 = time.perf_counter()
    tri = 0
    for text in WEIGHT_TYPES:
        w = lat.WeightType.parse(text)
        bound = lat.canonical(w) + lat.omega(w)
        for _ in range(1000):
            x = lat.normal_form(
                w,
                tuple(rng.randrange(-20, 21) for _ in w.p),
                rng.randrange(-20, 21),
            )
            if lat.is_effective(x) == lat.leq(x, bound):
                return False, f"trichotomy fails at {x} over {w}"
            tri += 1
    t_tri = time.perf_counter() - t0
    t1 = time.perf_counter()
    dims = 0
    for text in WEIGHT_TYPES:
        w = lat.WeightType.parse(text)
        for l in range(-6, 7):
            for coeffs in product(*(range(p) for p in w.p)):
                x = lat.LatticeElement(w, coeffs, l)
                if lat.graded_dim(x) != lat.graded_dim_oracle(x):
                    return False, f"graded dimension mismatch at {x} over {w}"
                dims += 1
    t_dim = time.perf_counter() - t1
    if t_tri >= 1.0 or t_dim >= 10.0:
        return False, (
            f"time budget exceeded: trichotomy {t_tri:.2f}s (limit 1s),"
            f" graded dims {t_dim:.2f}s (limit 10s)"
        )
    return True, (
        f"{tri} trichotomy samples and {dims} graded dimensions"
        " match the oracle within budget"
    )


def _suite_tube_oracle(seed: int) -> tuple[bool, str]:
    """Same-tube Hom window rule against the matrix oracle, ranks 2-5."""
    checked = 0
    for wtext, tube in (("(2,3)", 1), ("(2,3)", 2), ("(4,5)", 1), ("(4,5)", 2)):
        w = lat.WeightType.parse(wtext)
        d = w.p[tube - 1]
        for ja, jb in product(range(d), repeat=2):
            for la, lb in product(range(1, 2 * d + 1), repeat=2):
                got = sh.hom_dim(
                    sh.TorsionSheaf(w, tube, ja, la),
                    sh.TorsionSheaf(w, tube, jb, lb),
                )
                want = sh.tube_hom_oracle(d, ja, la, jb, lb)
                if got != want:
                    return False, (
                        f"rank {d} tube: Hom(T({tube};{ja};{la}), T({tube};{jb};{lb}))"
                        f" = {got}, oracle says {want}"
                    )
                checked += 1
    return True, f"{checked} same-tube Hom dimensions match the matrix oracle (ranks 2-5)"


def _suite_simples(seed: int) -> tuple[bool, str]:
    """Extensions between simple sheaves follow the cyclic successor rule."""
    checked = 0
    for text in WEIGHT_TYPES:
        w = lat.WeightType.parse(text)
        for i, p in enumerate(w.p, start=1):
            if p < 2:
                continue
            for j, j2 in product(range(p), repeat=2):
                want = 1 if (j - j2) % p == 1 else 0
                got = sh.ext1_dim(
                    sh.TorsionSheaf(w, i, j, 1), sh.TorsionSheaf(w, i, j2, 1)
                )
                if got != want:
                    return False, f"Ext1(S_{i},{j}; S_{i},{j2}) = {got} over {w}, want {want}"
                checked += 1
        mu = sh.TorsionSheaf(w, None, 0, 1)
        if sh.ext1_dim(mu, mu) != 1:
            return False, f"homogeneous simple over {w} must have a self-extension"
        checked += 1
    return True, f"{checked} simple-pair extension dimensions match the successor rule"


def _suite_rigidity(seed: int) -> tuple[bool, str]:
    """Torsion rigidity boundary: rigid exactly below the tube rank."""
    checked = 0
    for text in WEIGHT_TYPES:
        w = lat.WeightType.parse(text)
        for i, p in enumerate(w.p, start=1):
            for j in range(p):
                for length in range(1, 2 * p + 2):
                    want = length < p
                    if sh.is_rigid(sh.TorsionSheaf(w, i, j, length)) != want:
                        return False, f"T({i};{j};{length}) over {w}: rigidity boundary broken"
                    checked += 1
        for length in (1, 2, 3):
            if sh.is_rigid(sh.TorsionSheaf(w, None, 0, length)):
                return False, f"homogeneous T(hom;0;{length}) over {w} must not be rigid"
            checked += 1
    return True, f"{checked} torsion sheaves sit on the correct side of the boundary"


def _suite_canonical_tilting(seed: int) -> tuple[bool, str]:
    """The degree-interval line bundles form a tilting set of full rank."""
    ranks = []
    for text in WEIGHT_TYPES:
        w = lat.WeightType.parse(text)
        s = rg.canonical_tilting(rg.CohBackend(w))
        if not s.is_tilting():
            return False, f"canonical set over {w} is not tilting"
        if len(s.elements) != lat.rank_g0(w):
            return False, (
                f"canonical set over {w} has {len(s.elements)} summands,"
                f" expected {lat.rank_g0(w)}"
            )
        ranks.append(lat.rank_g0(w))
    return True, f"{len(ranks)} canonical sets verified (ranks {min(ranks)}..{max(ranks)})"


def _suite_dynkin_counts(seed: int) -> tuple[bool, str]:
    """Exchange-graph node counts by BFS equal exhaustive enumeration."""
    expected = {"A2": 5, "A3": 14, "D4": 50}
    for name, count in expected.items():
        q = dk.parse_quiver(name)
        backend = rg.DynkinBackend(q)
        g = gr.explore(rg.canonical_tilting(backend), budget=None)
        sets = rg.all_cluster_tilting(backend)
        if len(g.nodes) != count or len(sets) != count:
            return False, f"{name}: BFS {len(g.nodes)} vs exhaustive {len(sets)}, want {count}"
        if set(g.nodes) != {s.key for s in sets}:
            return False, f"{name}: BFS and exhaustive enumerations disagree on members"
        if g.frontier or not g.is_connected():
            return False, f"{name}: graph is not a closed connected component"
        if any(g.degree(k) != q.n for k in g.nodes):
            return False, f"{name}: graph is not {q.n}-regular"
    for variant in ("A2<", "A3<>", "A3<<", "D4<><"):
        q = dk.parse_quiver(variant)
        g = gr.explore(rg.canonical_tilting(rg.DynkinBackend(q)), budget=None)
        want = expected[variant[:2]]
        if len(g.nodes) != want:
            return False, f"{variant}: {len(g.nodes)} nodes, orientation should not matter"
    return True, "A2=5, A3=14, D4=50 by BFS and exhaustively; regular, connected, orientation-free"


def _suite_seed_bijection(seed: int) -> tuple[bool, str]:
    """Seed-graph node and variable counts match the additive side."""
    expected = {"A2": 5, "A3": 14, "D4": 50}
    variables = []
    for name, count in expected.items():
        q = dk.parse_quiver(name)
        g = sd.seed_explore(sd.initial_seed(sd.ExchangeMatrix.from_quiver(q)), budget=None)
        if len(g.nodes) != count:
            return False, f"{name}: {len(g.nodes)} seeds, want {count}"
        n_vars = len(sd.cluster_variables(g))
        if n_vars != len(dk.indecomposables_c(q)):
            return False, (
                f"{name}: {n_vars} cluster variables vs"
                f" {len(dk.indecomposables_c(q))} indecomposables"
            )
        variables.append(n_vars)
    return True, (
        "seed counts 5/14/50 match the exchange graphs; "
        f"variable counts {variables[0]}/{variables[1]}/{variables[2]} match indecomposables"
    )


def _suite_quiver_propagation(seed: int) -> tuple[bool, str]:
    """One matrix pushed over the whole graph stays consistent on cycles."""
    q = dk.parse_quiver("A3")
    g = gr.explore(rg.canonical_tilting(rg.DynkinBackend(q)), budget=None)
    result = sd.propagate_quiver(g, g.start_key, sd.ExchangeMatrix.from_quiver(q))
    if not result.consistent:
        return False, f"inconsistent around {' / '.join(result.witness_cycle)}"
    if set(result.matrices) != set(g.nodes):
        return False, "propagation did not reach every node"
    cycles = len(g.edges) - (len(g.nodes) - 1)
    return True, (
        f"matrices assigned to all {len(g.nodes)} nodes;"
        f" {len(g.edges)} edges and {cycles} independent cycles consistent"
    )


def _suite_restriction(seed: int) -> tuple[bool, str]:
    """Pinning one summand cuts the graph down to a smaller regular one."""
    q = dk.parse_quiver("A3")
    backend = rg.DynkinBackend(q)
    g = gr.explore(rg.canonical_tilting(backend), budget=None)
    sets = rg.all_cluster_tilting(backend)
    counts = []
    for e in dk.indecomposables_c(q):
        h = gr.restrict(g, e)
        members = sum(1 for s in sets if e in s.elements)
        if len(h.nodes) != members:
            return False, f"pin {e}: {len(h.nodes)} nodes, membership says {members}"
        if not h.is_connected():
            return False, f"pin {e}: restricted graph is disconnected"
        bad = [k for k in h.nodes if k not in h.frontier and h.degree(k) != q.n - 1]
        if bad:
            return False, f"pin {e}: interior node {bad[0]} is not {q.n - 1}-regular"
        counts.append(len(h.nodes))
    return True, (
        f"9 pinned graphs connected and {q.n - 1}-regular,"
        f" sizes {'/'.join(str(c) for c in counts)}"
    )


def _suite_connectivity(wtext: str, seed: int) -> tuple[bool, str]:
    """Random tilting sets all walk back to the canonical one."""
    w = lat.WeightType.parse(wtext)
    backend = rg.CohBackend(w)
    rng = random.Random(seed)
    goal = rg.canonical_tilting(backend)
    search = rg.SearchWindow(-8, 8)
    lengths = []
    for _ in range(50):
        s = rg.random_tilting(backend, rng, window=rg.SearchWindow(-6, 6))
        steps = gr.find_path(s, goal, window=search)
        if gr.apply_path(s, steps, window=search) != goal:
            return False, f"path from {s.key} does not replay"
        lengths.append(len(steps))
    return True, (
        f"50/50 random tilting sets over {w} connected to canonical"
        f" (path lengths {min(lengths)}..{max(lengths)})"
    )


def _suite_reachability(seed: int) -> tuple[bool, str]:
    """Certificates link random exceptionals to the structure sheaf."""
    rng = random.Random(seed)
    certificates = 0
    longest = 0
    for wtext in ("(2,2,2)", "(2,3,6)"):
        w = lat.WeightType.parse(wtext)
        backend = rg.CohBackend(w)
        target = sh.LineBundle(lat.zero(w))
        pool: list = list(sh.rigid_torsion_objects(w))
        for l in range(-4, 5):
            for coeffs in product(*(range(p) for p in w.p)):
                pool.append(sh.LineBundle(lat.LatticeElement(w, coeffs, l)))
        for e in rng.sample(pool, 20):
            cert = gr.reach(backend, e, target)
            cert.verify()
            certificates += 1
            longest = max(longest, len(cert.chain))
    for name in ("A2", "A3"):
        backend = rg.DynkinBackend(dk.parse_quiver(name))
        objs = dk.indecomposables_c(backend.quiver)
        for a, b in product(objs, repeat=2):
            gr.reach(backend, a, b).verify()
            certificates += 1
    return True, f"{certificates} certificates re-verified, longest chain {longest}"


def _suite_mutation_involution(seed: int) -> tuple[bool, str]:
    """Mutating twice returns; the alternative completion is unique."""
    rng = random.Random(seed)
    backends: list[rg.Backend] = [
        rg.CohBackend(lat.WeightType.parse("(1,1)")),
        rg.CohBackend(lat.WeightType.parse("(2,3)")),
        rg.DynkinBackend(dk.parse_quiver("A3")),
        rg.DynkinBackend(dk.parse_quiver("D4")),
    ]
    checked = 0
    for backend in backends:
        for _ in range(100):
            s = rg.random_tilting(backend, rng)
            k = rng.randrange(backend.rank)
            # the coh scan itself reports duplicate completions as errors
            t = rg.mutate(s, k)
            added = next(e for e in t.elements if e not in s.elements)
            if isinstance(backend, rg.DynkinBackend):
                others = rg._complements(s, k, rg.SearchWindow(0, 0), stop_after=9999)
                if others != [added]:
                    return False, f"{s.key} index {k}: completions {others}, want [{added}]"
            back = rg.mutate(t, t.elements.index(added))
            if back != s:
                return False, f"mutate twice at {s.key} index {k} gave {back.key}"
            checked += 1
    return True, f"{checked} double mutations returned; alternative completions unique"


_SUITES: dict[str, Callable[[int], tuple[bool, str]]] = {
    "lattice": _suite_lattice,
    "tube-oracle": _suite_tube_oracle,
    "simples": _suite_simples,
    "rigidity": _suite_rigidity,
    "canonical-tilting": _suite_canonical_tilting,
    "dynkin-counts": _suite_dynkin_counts,
    "seed-bijection": _suite_seed_bijection,
    "quiver-propagation": _suite_quiver_propagation,
    "restriction": _suite_restriction,
    "connectivity-(1,1)": lambda seed: _suite_connectivity("(1,1)", seed),
    "connectivity-(2,3)": lambda seed: _suite_connectivity("(2,3)", seed),
    "reachability": _suite_reachability,
    "mutation-involution": _suite_mutation_involution,
}

SUITE_NAMES = tuple(_SUITES)


def run_suite(name: str, seed: int = 0) -> SuiteResult:
    """Run one named suite; unknown names raise KeyError."""
    if name not in _SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    t0 = time.perf_counter()
    try:
        ok, detail = _SUITES[name](seed)
    except Exception as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return SuiteResult(name, ok, detail, time.perf_counter() - t0)


def run_suites(names: list[str] | None = None, seed: int = 0) -> list[SuiteResult]:
    """Run the named suites (default all) in declaration order."""
    chosen = list(SUITE_NAMES) if names is None else list(names)
    return [run_suite(n, seed=seed) for n in chosen]
