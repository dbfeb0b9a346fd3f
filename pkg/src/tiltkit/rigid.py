"""Rigid sets, tilting checks, and mutation at a summand.

A rigid set is a sorted duplicate-free collection of exceptional objects
with no extensions between any two members in either direction.  A tilting
set is a rigid set of full rank.  Mutation removes one member and searches
a bounded candidate universe for the unique alternative completion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence, Union

from . import dynkin as dk
from . import lattice as lat
from . import sheaves as sh


class MixedBackend(ValueError):
    """Raised when combining elements or sets over different backends."""


class NotTilting(ValueError):
    """Raised when an operation needs a tilting set and the input is not one."""


class ComplementNotInWindow(RuntimeError):
    """No alternative completion exists inside the searched window."""

    def __init__(self, message: str, window: "SearchWindow | None" = None):
        super().__init__(message)
        self.window = window


@dataclass(frozen=True)
class SearchWindow:
    """Bounds on the c-coefficient of candidate line bundle degrees."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty window {self.lo}:{self.hi}")

    @classmethod
    def parse(cls, text: str) -> "SearchWindow":
        lo, _, hi = text.partition(":")
        return cls(int(lo), int(hi))

    def __str__(self) -> str:
        return f"{self.lo}:{self.hi}"


@dataclass(frozen=True)
class CohBackend:
    """Line-bundle plus torsion fragment over a weighted projective line."""

    weight: lat.WeightType

    @property
    def rank(self) -> int:
        return lat.rank_g0(self.weight)

    def is_exceptional(self, e: sh.SheafObject) -> bool:
        return sh.is_exceptional(e)

    def compatible(self, a: sh.SheafObject, b: sh.SheafObject) -> bool:
        return sh.ext1_dim(a, b) == 0 and sh.ext1_dim(b, a) == 0

    def candidates(self, window: SearchWindow) -> list[sh.SheafObject]:
        """Line bundles with degree c-coefficient in the window, plus all
        rigid torsion sheaves; deterministic order."""
        out: list[sh.SheafObject] = []
        ranges = [range(p) for p in self.weight.p]
        for l in range(window.lo, window.hi + 1):
            for coeffs in product(*ranges):
                out.append(sh.LineBundle(lat.LatticeElement(self.weight, coeffs, l)))
        out.extend(sh.rigid_torsion_objects(self.weight))
        return out

    def canonical_elements(self) -> list[sh.SheafObject]:
        """Line bundles on the degree interval from 0 to c."""
        w = self.weight
        elems = [lat.zero(w)]
        for i, p in enumerate(w.p, start=1):
            for j in range(1, p):
                elems.append(lat.scalar_mul(j, lat.gen(w, i)))
        elems.append(lat.canonical(w))
        return [sh.LineBundle(x) for x in elems]

    def sort_key(self, e: sh.SheafObject):
        return sh.sheaf_sort_key(e)

    def parse(self, text: str) -> sh.SheafObject:
        return sh.parse_sheaf(self.weight, text)

    def __str__(self) -> str:
        return f"coh{self.weight}"


@dataclass(frozen=True)
class DynkinBackend:
    """Cluster category of an acyclic quiver of finite type."""

    quiver: dk.AcyclicQuiver

    @property
    def rank(self) -> int:
        return self.quiver.n

    def is_exceptional(self, e: dk.DynkinObject) -> bool:
        if isinstance(e, dk.RootModule):
            return e.dim in dk.positive_roots(self.quiver)
        return 0 <= e.vertex < self.quiver.n

    def compatible(self, a: dk.DynkinObject, b: dk.DynkinObject) -> bool:
        return dk.ext1_c(self.quiver, a, b) == 0

    def candidates(self, window: SearchWindow) -> list[dk.DynkinObject]:
        return list(dk.indecomposables_c(self.quiver))

    def canonical_elements(self) -> list[dk.DynkinObject]:
        return [dk.ShiftedProjective(v) for v in range(self.quiver.n)]

    def sort_key(self, e: dk.DynkinObject):
        return dk.dynkin_sort_key(e)

    def parse(self, text: str) -> dk.DynkinObject:
        return dk.parse_dynkin_object(self.quiver, text)

    def __str__(self) -> str:
        return f"dynkin({self.quiver})"


Backend = Union[CohBackend, DynkinBackend]
Element = Union[sh.SheafObject, dk.DynkinObject]


def _element_weight(e: Element):
    return e.weight if isinstance(e, (sh.LineBundle, sh.TorsionSheaf)) else None


@dataclass(frozen=True)
class RigidSet:
    """Sorted duplicate-free multiset of exceptional objects over one backend."""

    backend: Backend
    elements: tuple[Element, ...]

    def __post_init__(self) -> None:
        for e in self.elements:
            if isinstance(self.backend, CohBackend):
                if _element_weight(e) != self.backend.weight:
                    raise MixedBackend(f"element {e} does not live over {self.backend}")
            elif not isinstance(e, (dk.RootModule, dk.ShiftedProjective)):
                raise MixedBackend(f"element {e} does not live over {self.backend}")
        ordered = tuple(sorted(self.elements, key=self.backend.sort_key))
        if len(set(ordered)) != len(ordered):
            raise ValueError("duplicate elements in rigid set")
        object.__setattr__(self, "elements", ordered)

    @property
    def key(self) -> str:
        """Canonical serialization; equal sets have equal keys."""
        return " | ".join(str(e) for e in self.elements)

    def is_rigid_set(self) -> bool:
        if not all(self.backend.is_exceptional(e) for e in self.elements):
            return False
        return all(
            self.backend.compatible(a, b)
            for i, a in enumerate(self.elements)
            for b in self.elements[i + 1 :]
        )

    def is_tilting(self) -> bool:
        return len(self.elements) == self.backend.rank and self.is_rigid_set()

    def replace(self, index: int, element: Element) -> "RigidSet":
        elems = list(self.elements)
        elems[index] = element
        return RigidSet(self.backend, tuple(elems))

    def __str__(self) -> str:
        return self.key


def rigid_set(backend: Backend, elements: Iterable[Element]) -> RigidSet:
    return RigidSet(backend, tuple(elements))


def parse_rigid_set(backend: Backend, text: str) -> RigidSet:
    """Parse a canonical key: element literals joined by " | "."""
    parts = [p for p in (s.strip() for s in text.split("|")) if p]
    if not parts:
        raise ValueError("empty rigid set literal")
    return RigidSet(backend, tuple(backend.parse(p) for p in parts))


def canonical_tilting(backend: Backend) -> RigidSet:
    s = RigidSet(backend, tuple(backend.canonical_elements()))
    if not s.is_tilting():
        raise AssertionError(f"canonical set over {backend} failed tilting check")
    return s


def _auto_window(s: RigidSet, margin: int) -> SearchWindow:
    degrees = [
        e.x.l for e in s.elements if isinstance(e, sh.LineBundle)
    ]
    if not degrees:
        return SearchWindow(-margin, margin)
    return SearchWindow(min(degrees) - margin, max(degrees) + margin)


@lru_cache(maxsize=None)
def _candidates_cached(backend: Backend, window: SearchWindow) -> tuple[Element, ...]:
    return tuple(backend.candidates(window))


def _complements(
    s: RigidSet, index: int, window: SearchWindow, stop_after: int
) -> list[Element]:
    removed = s.elements[index]
    rest = s.elements[:index] + s.elements[index + 1 :]
    found: list[Element] = []
    for c in _candidates_cached(s.backend, window):
        if c == removed or c in rest:
            continue
        if not s.backend.is_exceptional(c):
            continue
        if all(s.backend.compatible(c, e) for e in rest):
            found.append(c)
            if len(found) >= stop_after:
                break
    return found


def mutate(
    s: RigidSet,
    index: int,
    window: SearchWindow | None = None,
    widen_cap: int = 64,
) -> RigidSet:
    """Exchange the summand at index for the unique other completion.

    With an explicit window the search stays inside it.  Without one, coh
    backends start at the set's degree extremes plus (2 + span) and widen
    geometrically up to widen_cap before giving up.  The coh search keeps
    scanning past the first hit so a duplicate completion, which would
    indicate a broken compatibility rule, is reported as a failure.
    """
    if not 0 <= index < len(s.elements):
        raise IndexError(f"index {index} out of range")
    if not s.is_tilting():
        raise NotTilting(f"set is not tilting: {s.key}")

    if isinstance(s.backend, DynkinBackend):
        # uniqueness is guaranteed in finite type, first hit wins
        found = _complements(s, index, SearchWindow(0, 0), stop_after=1)
        if not found:
            raise ComplementNotInWindow(
                f"no alternative completion for index {index} of {s.key}"
            )
        return s.replace(index, found[0])

    degrees = [e.x.l for e in s.elements if isinstance(e, sh.LineBundle)]
    span = (max(degrees) - min(degrees)) if degrees else 0
    margin = 2 + span
    windows = (
        [window]
        if window is not None
        else [_auto_window(s, m) for m in _margins(margin, widen_cap)]
    )
    last = windows[-1]
    for win in windows:
        found = _complements(s, index, win, stop_after=2)
        if len(found) > 1:
            raise AssertionError(
                f"duplicate completions {found[0]} and {found[1]} for {s.key}"
            )
        if found:
            result = s.replace(index, found[0])
            assert result.is_tilting()
            return result
    raise ComplementNotInWindow(
        f"no completion for index {index} of {s.key} within {last}", last
    )


def _margins(start: int, cap: int) -> list[int]:
    out = [start]
    while out[-1] < cap:
        out.append(min(out[-1] * 2, cap))
    return out


def all_cluster_tilting(backend: DynkinBackend) -> list[RigidSet]:
    """Exhaustively enumerate maximal compatible sets (finite type only)."""
    objs = dk.indecomposables_c(backend.quiver)
    n = backend.rank
    out: list[RigidSet] = []

    def extend(start: int, chosen: list) -> None:
        if len(chosen) == n:
            out.append(RigidSet(backend, tuple(chosen)))
            return
        for k in range(start, len(objs)):
            c = objs[k]
            if all(backend.compatible(c, e) for e in chosen):
                extend(k + 1, chosen + [c])

    extend(0, [])
    return out


def random_tilting(
    backend: Backend,
    rng,
    window: SearchWindow | None = None,
    max_tries: int = 200,
) -> RigidSet:
    """Greedy completion over a shuffled candidate list, retried on dead ends."""
    window = window or SearchWindow(-6, 6)
    universe = list(_candidates_cached(backend, window))
    for _ in range(max_tries):
        pool = universe[:]
        rng.shuffle(pool)
        chosen: list[Element] = []
        for c in pool:
            if not backend.is_exceptional(c):
                continue
            if all(backend.compatible(c, e) for e in chosen):
                chosen.append(c)
                if len(chosen) == backend.rank:
                    s = RigidSet(backend, tuple(chosen))
                    if s.is_tilting():
                        return s
                    break
    raise RuntimeError("could not complete a random tilting set")
