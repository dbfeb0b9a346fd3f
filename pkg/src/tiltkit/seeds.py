"""Seed mutation with exact Laurent polynomial arithmetic.

A seed is a skew-symmetric integer exchange matrix together with a cluster
of Laurent polynomials in the initial variables.  Mutation at k follows the
standard exchange rule; the division it requires must be exact, and a
failed division raises instead of approximating.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product


class InexactDivision(ArithmeticError):
    """An exchange step required a division that is not exact."""


@dataclass(frozen=True)
class LaurentPoly:
    """Laurent polynomial: sorted (exponent vector, coefficient) pairs."""

    nvars: int
    terms: tuple[tuple[tuple[int, ...], int], ...]

    def __post_init__(self) -> None:
        cleaned = tuple(sorted((e, c) for e, c in self.terms if c != 0))
        if any(len(e) != self.nvars for e, _ in cleaned):
            raise ValueError("exponent vector length mismatch")
        if len({e for e, _ in cleaned}) != len(cleaned):
            raise ValueError("duplicate exponent vectors")
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def from_dict(cls, nvars: int, d: dict[tuple[int, ...], int]) -> "LaurentPoly":
        return cls(nvars, tuple(d.items()))

    @classmethod
    def variable(cls, nvars: int, i: int) -> "LaurentPoly":
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, ((e, 1),))

    @classmethod
    def constant(cls, nvars: int, value: int) -> "LaurentPoly":
        if value == 0:
            return cls(nvars, ())
        return cls(nvars, (((0,) * nvars, value),))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly.from_dict(self.nvars, acc)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly.from_dict(self.nvars, acc)

    def shift(self, exponent: tuple[int, ...]) -> "LaurentPoly":
        """Multiply by the monomial with the given exponent vector."""
        return LaurentPoly(
            self.nvars,
            tuple((tuple(a + b for a, b in zip(e, exponent)), c) for e, c in self.terms),
        )

    def power(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers only exist for monomials")
        out = LaurentPoly.constant(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def divide_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises InexactDivision when the quotient is not
        a Laurent polynomial with integer coefficients."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly(self.nvars, ())
        # normalize both operands to honest polynomials with a nonzero
        # constant direction, remembering the monomial shift
        shift_n = tuple(min(e[i] for e, _ in self.terms) for i in range(self.nvars))
        shift_d = tuple(min(e[i] for e, _ in divisor.terms) for i in range(self.nvars))
        num = self.shift(tuple(-v for v in shift_n))
        den = divisor.shift(tuple(-v for v in shift_d))
        quot: dict[tuple[int, ...], int] = {}
        lead_e, lead_c = max(den.terms)
        rem = num
        while not rem.is_zero():
            re, rc = max(rem.terms)
            qe = tuple(a - b for a, b in zip(re, lead_e))
            if any(v < 0 for v in qe) or rc % lead_c != 0:
                raise InexactDivision(f"{self} is not divisible by {divisor}")
            qc = rc // lead_c
            quot[qe] = qc
            rem = rem - LaurentPoly(self.nvars, ((qe, qc),)) * den
        out_shift = tuple(a - b for a, b in zip(shift_n, shift_d))
        return LaurentPoly.from_dict(self.nvars, quot).shift(out_shift)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e, c in sorted(self.terms, reverse=True):
            factors = []
            for i, v in enumerate(e):
                if v == 1:
                    factors.append(f"x{i + 1}")
                elif v != 0:
                    factors.append(f"x{i + 1}^{v}")
            if not factors:
                bits.append(str(c))
            elif c == 1:
                bits.append("*".join(factors))
            elif c == -1:
                bits.append("-" + "*".join(factors))
            else:
                bits.append(f"{c}*" + "*".join(factors))
        return " + ".join(bits).replace("+ -", "- ")


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetric integer matrix with the standard mutation rule."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(n):
                if self.rows[i][j] != -self.rows[j][i]:
                    raise ValueError("matrix must be skew-symmetric")

    @property
    def n(self) -> int:
        return len(self.rows)

    def mutate(self, k: int) -> "ExchangeMatrix":
        if not 0 <= k < self.n:
            raise IndexError(f"index {k} out of range")
        b = self.rows

        def entry(i: int, j: int) -> int:
            if i == k or j == k:
                return -b[i][j]
            sign = 1 if b[i][k] > 0 else -1 if b[i][k] < 0 else 0
            return b[i][j] + sign * max(b[i][k] * b[k][j], 0)

        return ExchangeMatrix(
            tuple(tuple(entry(i, j) for j in range(self.n)) for i in range(self.n))
        )

    def permuted(self, perm: tuple[int, ...]) -> "ExchangeMatrix":
        """Relabel indices: entry (perm[i], perm[j]) takes value (i, j)."""
        n = self.n
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                out[perm[i]][perm[j]] = self.rows[i][j]
        return ExchangeMatrix(tuple(tuple(r) for r in out))

    @classmethod
    def from_quiver(cls, q) -> "ExchangeMatrix":
        rows = [[0] * q.n for _ in range(q.n)]
        for a, b in q.arrows:
            rows[a][b] += 1
            rows[b][a] -= 1
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def parse(cls, text: str) -> "ExchangeMatrix":
        """Parse "0,1;-1,0" (rows separated by semicolons)."""
        rows = tuple(
            tuple(int(v) for v in row.split(",")) for row in text.strip().split(";")
        )
        return cls(rows)

    def __str__(self) -> str:
        return ";".join(",".join(str(v) for v in row) for row in self.rows)


@dataclass(frozen=True)
class Seed:
    """Exchange matrix plus cluster of Laurent polynomials."""

    matrix: ExchangeMatrix
    cluster: tuple[LaurentPoly, ...]

    def __post_init__(self) -> None:
        if len(self.cluster) != self.matrix.n:
            raise ValueError("cluster size must match matrix size")


def initial_seed(matrix: ExchangeMatrix) -> Seed:
    n = matrix.n
    return Seed(matrix, tuple(LaurentPoly.variable(n, i) for i in range(n)))


def mutate_seed(seed: Seed, k: int) -> Seed:
    """Exchange the variable at k: x_k' = (prod_+ + prod_-) / x_k."""
    n = seed.matrix.n
    if not 0 <= k < n:
        raise IndexError(f"index {k} out of range")
    pos = LaurentPoly.constant(n, 1)
    neg = LaurentPoly.constant(n, 1)
    for i in range(n):
        b = seed.matrix.rows[i][k]
        if b > 0:
            pos = pos * seed.cluster[i].power(b)
        elif b < 0:
            neg = neg * seed.cluster[i].power(-b)
    new_var = (pos + neg).divide_exact(seed.cluster[k])
    cluster = list(seed.cluster)
    cluster[k] = new_var
    return Seed(seed.matrix.mutate(k), tuple(cluster))


def canonical_seed(seed: Seed) -> Seed:
    """Sort the cluster and permute the matrix the same way.

    Ties between equal variables cannot occur inside one seed, but equal
    sort keys from distinct polynomials are broken by choosing the
    permutation giving the lexicographically smallest matrix.
    """
    keyed = sorted(range(len(seed.cluster)), key=lambda i: seed.cluster[i].terms)
    groups: list[list[int]] = []
    for i in keyed:
        if groups and seed.cluster[groups[-1][-1]].terms == seed.cluster[i].terms:
            groups[-1].append(i)
        else:
            groups.append([i])
    best: Seed | None = None
    for choice in product(*(permutations(g) for g in groups)):
        order = [i for grp in choice for i in grp]
        perm = [0] * len(order)  # old index -> new position
        for new_pos, old in enumerate(order):
            perm[old] = new_pos
        candidate = Seed(
            seed.matrix.permuted(tuple(perm)),
            tuple(seed.cluster[i] for i in order),
        )
        if best is None or candidate.matrix.rows < best.matrix.rows:
            best = candidate
    assert best is not None
    return best


def seed_key(seed: Seed) -> tuple:
    canon = canonical_seed(seed)
    return (tuple(v.terms for v in canon.cluster), canon.matrix.rows)


@dataclass
class SeedGraph:
    """Exchange graph of seeds up to simultaneous permutation."""

    nodes: dict[tuple, Seed]  # canonical key -> representative (canonical form)
    edges: set[tuple[tuple, tuple]]
    frontier: set[tuple]


def seed_explore(start: Seed, budget: int | None = 10000) -> SeedGraph:
    """Breadth-first closure of seed mutation, deduplicated canonically."""
    first = canonical_seed(start)
    g = SeedGraph({seed_key(start): first}, set(), set())
    queue = [seed_key(start)]
    qi = 0
    while qi < len(queue):
        key = queue[qi]
        qi += 1
        seed = g.nodes[key]
        out_of_room = False
        for k in range(seed.matrix.n):
            neighbor = mutate_seed(seed, k)
            nk = seed_key(neighbor)
            if nk not in g.nodes:
                if budget is not None and len(g.nodes) >= budget:
                    out_of_room = True
                    g.frontier.add(key)
                    break
                g.nodes[nk] = canonical_seed(neighbor)
                queue.append(nk)
            if nk != key:
                g.edges.add((min(key, nk), max(key, nk)))
        if out_of_room:
            break
    g.frontier.update(queue[qi:])
    return g


def cluster_variables(g: SeedGraph) -> set[LaurentPoly]:
    out: set[LaurentPoly] = set()
    for seed in g.nodes.values():
        out.update(seed.cluster)
    return out


@dataclass
class PropagationResult:
    """Outcome of pushing an exchange matrix along an exchange graph."""

    consistent: bool
    matrices: dict[str, ExchangeMatrix] = field(default_factory=dict)
    witness_cycle: list[str] = field(default_factory=list)


def _transport(
    g, key_u: str, key_v: str, b_u: ExchangeMatrix
) -> ExchangeMatrix | None:
    """Mutate b_u along the edge (u, v), permuting to v's element order.

    Returns None when the edge labels do not match the node contents,
    which is itself an inconsistency.
    """
    u = g.nodes[key_u]
    v = g.nodes[key_v]
    a, b = (key_u, key_v) if key_u <= key_v else (key_v, key_u)
    out_lit, in_lit = g.edges[(a, b)]
    if key_u != a:
        out_lit, in_lit = in_lit, out_lit
    u_strs = [str(e) for e in u.elements]
    v_strs = [str(e) for e in v.elements]
    if out_lit not in u_strs or in_lit not in v_strs:
        return None
    k = u_strs.index(out_lit)
    mutated = b_u.mutate(k)
    replaced = u_strs[:]
    replaced[k] = in_lit
    if sorted(replaced) != sorted(v_strs):
        return None
    perm = tuple(v_strs.index(s) for s in replaced)
    return mutated.permuted(perm)


def propagate_quiver(g, root_key: str, b0: ExchangeMatrix) -> PropagationResult:
    """Assign matrices over a spanning tree, then check every other edge.

    The root's matrix rows follow its canonical element order.  A non-tree
    edge whose transported matrix disagrees with the stored one yields the
    witness cycle: tree path root->u, the edge (u, v), tree path v->root.
    """
    if root_key not in g.nodes:
        raise KeyError(f"unknown root {root_key!r}")
    if b0.n != len(g.nodes[root_key].elements):
        raise ValueError("matrix size must match the root's element count")
    matrices = {root_key: b0}
    parent: dict[str, str | None] = {root_key: None}
    queue = [root_key]
    qi = 0
    tree_edges: set[tuple[str, str]] = set()
    while qi < len(queue):
        key = queue[qi]
        qi += 1
        for nk in g.neighbors(key):
            if nk in matrices:
                continue
            transported = _transport(g, key, nk, matrices[key])
            if transported is None:
                # structurally broken edge; the witness is the edge itself
                return PropagationResult(False, {}, [key, nk])
            matrices[nk] = transported
            parent[nk] = key
            tree_edges.add((min(key, nk), max(key, nk)))
            queue.append(nk)
    for a, b in g.edges:
        if a not in matrices or b not in matrices:
            continue  # endpoint outside the reachable component
        if (a, b) in tree_edges:
            continue
        transported = _transport(g, a, b, matrices[a])
        if transported is None or transported != matrices[b]:
            return PropagationResult(False, {}, _cycle(parent, a, b))
    return PropagationResult(True, matrices, [])


def _cycle(parent: dict[str, str | None], u: str, v: str) -> list[str]:
    def path_to_root(k: str) -> list[str]:
        out = [k]
        while parent.get(out[-1]) is not None:
            out.append(parent[out[-1]])  # type: ignore[arg-type]
        return out

    pu = path_to_root(u)
    pv = path_to_root(v)
    # trim the common tail so the cycle is minimal through the tree
    while len(pu) > 1 and len(pv) > 1 and pu[-2] == pv[-2]:
        pu.pop()
        pv.pop()
    # closed walk: lca .. u, then across the bad edge to v, back down to lca
    return pu[::-1] + pv
