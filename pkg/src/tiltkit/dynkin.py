"""Cluster-category combinatorics for acyclic quivers of finite type.

Indecomposables are the positive roots of the Tits form plus one shifted
projective per vertex.  Compatibility is governed by the Euler form of the
quiver; for modules over a representation-directed algebra Hom and Ext
never both survive between distinct indecomposables, so dimensions of
Ext^1 in the cluster category reduce to negative parts of the Euler form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Union


class NotFiniteType(ValueError):
    """Raised when the Tits form of a quiver is not positive definite."""


@dataclass(frozen=True)
class AcyclicQuiver:
    """Quiver on vertices 0..n-1 with arrows (source, target), no cycles."""

    n: int
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("quiver needs at least one vertex")
        for a, b in self.arrows:
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ValueError(f"arrow ({a},{b}) out of range")
            if a == b:
                raise ValueError("loops are not allowed")
        if self._has_cycle():
            raise ValueError("quiver must be acyclic")
        object.__setattr__(self, "arrows", tuple(self.arrows))

    def _has_cycle(self) -> bool:
        out: dict[int, list[int]] = {v: [] for v in range(self.n)}
        indeg = [0] * self.n
        for a, b in self.arrows:
            out[a].append(b)
            indeg[b] += 1
        queue = [v for v in range(self.n) if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return seen != self.n

    def __str__(self) -> str:
        arrows = "; ".join(f"{a + 1}->{b + 1}" for a, b in self.arrows)
        return f"{self.n}; {arrows}" if arrows else str(self.n)


_PRESET_EDGES = {
    "A2": (2, [(0, 1)]),
    "A3": (3, [(0, 1), (1, 2)]),
    "A4": (4, [(0, 1), (1, 2), (2, 3)]),
    "D4": (4, [(0, 1), (1, 2), (1, 3)]),
    "D5": (5, [(0, 1), (1, 2), (2, 3), (2, 4)]),
}

_ARROW_RE = re.compile(r"^(\d+)\s*->\s*(\d+)$")


def parse_quiver(text: str) -> AcyclicQuiver:
    """Parse "n; i->j; ..." (1-based) or a preset name like "A3" or "D4".

    Presets accept an optional orientation suffix of one '<' or '>' per
    diagram edge in canonical order, '>' keeping the default direction:
    "A3<>" reverses the first edge of the A3 path.
    """
    text = text.strip()
    m = re.match(r"^([AD]\d+)([<>]*)$", text)
    if m and m.group(1) in _PRESET_EDGES:
        n, edges = _PRESET_EDGES[m.group(1)]
        suffix = m.group(2)
        if suffix and len(suffix) != len(edges):
            raise ValueError(
                f"orientation suffix needs {len(edges)} characters, got {suffix!r}"
            )
        oriented = []
        for k, (a, b) in enumerate(edges):
            if suffix and suffix[k] == "<":
                oriented.append((b, a))
            else:
                oriented.append((a, b))
        return AcyclicQuiver(n, tuple(oriented))
    parts = [p.strip() for p in text.split(";")]
    if not parts or not parts[0].isdigit():
        raise ValueError(f"bad quiver literal: {text!r}")
    n = int(parts[0])
    arrows = []
    for part in parts[1:]:
        if not part:
            continue
        am = _ARROW_RE.match(part)
        if not am:
            raise ValueError(f"bad arrow {part!r} in {text!r}")
        a, b = int(am.group(1)), int(am.group(2))
        if not (1 <= a <= n and 1 <= b <= n):
            raise ValueError(f"arrow {part!r} out of range 1..{n}")
        arrows.append((a - 1, b - 1))
    return AcyclicQuiver(n, tuple(arrows))


def euler_form(q: AcyclicQuiver, d: tuple[int, ...], e: tuple[int, ...]) -> int:
    """<d, e> = sum d_i e_i - sum over arrows i->j of d_i e_j."""
    total = sum(a * b for a, b in zip(d, e))
    for a, b in q.arrows:
        total -= d[a] * e[b]
    return total


def tits_form(q: AcyclicQuiver, d: tuple[int, ...]) -> int:
    return euler_form(q, d, d)


def _det_bareiss(m: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    m = [row[:] for row in m]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_positive_definite(q: AcyclicQuiver) -> bool:
    """Sylvester test on the symmetrized Euler matrix."""
    sym = [[0] * q.n for _ in range(q.n)]
    for i in range(q.n):
        sym[i][i] = 2
    for a, b in q.arrows:
        sym[a][b] -= 1
        sym[b][a] -= 1
    return all(_det_bareiss([row[: k + 1] for row in sym[: k + 1]]) > 0 for k in range(q.n))


_ROOT_BOUND = 6


def _roots_with_bound(q: AcyclicQuiver, bound: int) -> list[tuple[int, ...]]:
    roots = []

    def extend(prefix: list[int]) -> None:
        if len(prefix) == q.n:
            d = tuple(prefix)
            if any(d) and tits_form(q, d) == 1:
                roots.append(d)
            return
        for v in range(bound + 1):
            extend(prefix + [v])

    extend([])
    return sorted(roots)


@lru_cache(maxsize=None)
def positive_roots(q: AcyclicQuiver) -> tuple[tuple[int, ...], ...]:
    """All positive roots of the Tits form, sorted.

    Enumerates coordinates up to a fixed bound and re-checks with the bound
    raised by one; finite type roots are small, so a changed answer means
    the bound assumption broke and enumeration aborts.  Also asserts
    directedness: no pair of roots has negative Euler form both ways.
    """
    if not is_positive_definite(q):
        raise NotFiniteType(f"Tits form of {q} is not positive definite")
    roots = _roots_with_bound(q, _ROOT_BOUND)
    if roots != _roots_with_bound(q, _ROOT_BOUND + 1):
        raise AssertionError("root coordinate bound exceeded")
    for d, e in combinations(roots, 2):
        if euler_form(q, d, e) < 0 and euler_form(q, e, d) < 0:
            raise AssertionError(f"directedness violated for roots {d}, {e}")
    return tuple(roots)


@dataclass(frozen=True)
class RootModule:
    """Indecomposable module labeled by its dimension vector."""

    dim: tuple[int, ...]

    def __str__(self) -> str:
        return "M(" + ",".join(str(v) for v in self.dim) + ")"


@dataclass(frozen=True)
class ShiftedProjective:
    """Shifted projective at a vertex (0-based); rendered 1-based."""

    vertex: int

    def __str__(self) -> str:
        return f"SP({self.vertex + 1})"


DynkinObject = Union[RootModule, ShiftedProjective]


def ext1_c(q: AcyclicQuiver, a: DynkinObject, b: DynkinObject) -> int:
    """Symmetric Ext^1 dimension in the cluster category.

    Module / module pairs sum the negative parts of the Euler form in both
    directions; a shifted projective at vertex i pairs with a module by the
    module's dimension at i; shifted projectives never extend each other.
    """
    if isinstance(a, ShiftedProjective) and isinstance(b, ShiftedProjective):
        return 0
    if isinstance(a, ShiftedProjective):
        assert isinstance(b, RootModule)
        return b.dim[a.vertex]
    if isinstance(b, ShiftedProjective):
        return a.dim[b.vertex]
    return max(-euler_form(q, a.dim, b.dim), 0) + max(-euler_form(q, b.dim, a.dim), 0)


@lru_cache(maxsize=None)
def indecomposables_c(q: AcyclicQuiver) -> tuple[DynkinObject, ...]:
    """Roots as modules plus one shifted projective per vertex, sorted."""
    mods: list[DynkinObject] = [RootModule(d) for d in positive_roots(q)]
    mods.extend(ShiftedProjective(v) for v in range(q.n))
    return tuple(mods)


def dynkin_sort_key(obj: DynkinObject) -> tuple:
    if isinstance(obj, RootModule):
        return (0, obj.dim)
    return (1, obj.vertex)


_MODULE_RE = re.compile(r"^M\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)$")
_SP_RE = re.compile(r"^SP\(\s*(\d+)\s*\)$")


def parse_dynkin_object(q: AcyclicQuiver, text: str) -> DynkinObject:
    """Parse "M(d1,...,dn)" or "SP(i)" with 1-based vertex index."""
    text = text.strip()
    m = _MODULE_RE.match(text)
    if m:
        dim = tuple(int(s) for s in m.group(1).split(","))
        if len(dim) != q.n:
            raise ValueError(f"dimension vector length {len(dim)} != {q.n}")
        return RootModule(dim)
    m = _SP_RE.match(text)
    if m:
        v = int(m.group(1))
        if not 1 <= v <= q.n:
            raise ValueError(f"vertex {v} out of range 1..{q.n}")
        return ShiftedProjective(v - 1)
    raise ValueError(f"bad object literal: {text!r}")
