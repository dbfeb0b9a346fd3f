"""Indecomposable sheaves in the line-bundle plus torsion fragment.

Objects are line bundles O(x) for lattice elements x and uniserial torsion
sheaves supported in a single tube.  Tubes are indexed 1..t (rank p_i) plus
one generic homogeneous tube of rank 1; only one homogeneous tube is ever
needed because all of them behave identically here.

Hom dimensions are computed exactly from graded pieces of the coordinate
ring.  Ext^1 comes from Serre duality: Ext^1(E, F) is dual to
Hom(F, tau E) with tau the grading shift by the dualizing element.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .lattice import (
    LatticeElement,
    WeightMismatch,
    WeightType,
    canonical,
    gen,
    graded_dim,
    omega,
    parse_element,
    scalar_mul,
    zero,
)

HOMOGENEOUS = None  # tube marker for the generic rank-1 tube


@dataclass(frozen=True)
class LineBundle:
    """Line bundle O(x)."""

    x: LatticeElement

    @property
    def weight(self) -> WeightType:
        return self.x.weight

    def __str__(self) -> str:
        return f"O({self.x})"


@dataclass(frozen=True)
class TorsionSheaf:
    """Uniserial torsion sheaf: tube, socle index, and length.

    tube is a 1-based weight index for the exceptional tubes or None for
    the homogeneous tube.  The socle index is stored modulo the tube rank.
    Composition factors from the socle up are S_{socle}, S_{socle+1}, ...
    """

    weight: WeightType
    tube: int | None
    socle: int
    length: int

    def __post_init__(self) -> None:
        if self.tube is not None and not 1 <= self.tube <= self.weight.t:
            raise ValueError(f"tube index {self.tube} out of range for {self.weight}")
        if self.length < 1:
            raise ValueError("torsion sheaf length must be >= 1")
        object.__setattr__(self, "socle", self.socle % self.tube_rank)

    @property
    def tube_rank(self) -> int:
        return 1 if self.tube is None else self.weight.p[self.tube - 1]

    def __str__(self) -> str:
        label = "hom" if self.tube is None else str(self.tube)
        return f"T({label}; {self.socle}; {self.length})"


SheafObject = Union[LineBundle, TorsionSheaf]


def sheaf_rank(s: SheafObject) -> int:
    return 1 if isinstance(s, LineBundle) else 0


def shift(s: SheafObject, y: LatticeElement) -> SheafObject:
    """Twist by O(y): lines shift their degree, tube socles advance.

    A torsion sheaf in tube i moves its socle by the x_i content of y;
    the homogeneous tube is fixed by every twist.
    """
    if s.weight != y.weight:
        raise WeightMismatch(f"weight types differ: {s.weight} vs {y.weight}")
    if isinstance(s, LineBundle):
        return LineBundle(s.x + y)
    if s.tube is None:
        return s
    return TorsionSheaf(s.weight, s.tube, s.socle + y.li[s.tube - 1], s.length)


def tau(s: SheafObject) -> SheafObject:
    """Auslander-Reiten translation: twist by the dualizing element."""
    return shift(s, omega(s.weight))


def tau_inverse(s: SheafObject) -> SheafObject:
    return shift(s, -omega(s.weight))


def euler_line(x: LatticeElement, y: LatticeElement) -> int:
    """Euler pairing <O(x), O(y)> = hom - ext, exact in graded dimensions."""
    return graded_dim(y - x) - graded_dim(x + omega(x.weight) - y)


@lru_cache(maxsize=None)
def hom_dim(a: SheafObject, b: SheafObject) -> int:
    """Exact dimension of Hom(a, b) within the fragment.

    Line to line reads off a graded piece.  Line to torsion telescopes the
    Euler pairing along the composition series (valid because a line
    bundle has no Ext^1 into torsion).  Torsion to line vanishes.  Inside
    one tube of rank d the dimension counts common uniserial slices:
    lengths 1 <= s <= min(len a, len b) with s = socle(a) + len(a) -
    socle(b) mod d.  Different tubes are orthogonal.
    """
    if a.weight != b.weight:
        raise WeightMismatch(f"weight types differ: {a.weight} vs {b.weight}")
    if isinstance(a, LineBundle) and isinstance(b, LineBundle):
        return graded_dim(b.x - a.x)
    if isinstance(a, LineBundle):
        assert isinstance(b, TorsionSheaf)
        if b.tube is None:
            step = euler_line(a.x, canonical(a.weight)) - euler_line(a.x, zero(a.weight))
            return b.length * step
        xi = gen(a.weight, b.tube)
        top = scalar_mul(b.socle + b.length, xi)
        bottom = scalar_mul(b.socle, xi)
        return euler_line(a.x, top) - euler_line(a.x, bottom)
    if isinstance(b, LineBundle):
        return 0
    if a.tube != b.tube:
        return 0
    d = a.tube_rank
    want = (a.socle + a.length - b.socle) % d
    count = 0
    for s in range(1, min(a.length, b.length) + 1):
        if s % d == want:
            count += 1
    return count


@lru_cache(maxsize=None)
def ext1_dim(a: SheafObject, b: SheafObject) -> int:
    """dim Ext^1(a, b) via Serre duality: Hom(b, tau a)."""
    return hom_dim(b, tau(a))


def is_rigid(s: SheafObject) -> bool:
    """No self-extensions.  Lines always; torsion iff length < tube rank."""
    return ext1_dim(s, s) == 0


def is_exceptional(s: SheafObject) -> bool:
    """Indecomposable and rigid; all fragment objects are indecomposable."""
    return is_rigid(s)


def rigid_torsion_objects(weight: WeightType) -> list[TorsionSheaf]:
    """All rigid torsion sheaves: exceptional tubes, lengths below the rank."""
    out = []
    for i, p in enumerate(weight.p, start=1):
        for socle in range(p):
            for length in range(1, p):
                out.append(TorsionSheaf(weight, i, socle, length))
    return out


_TORSION_RE = re.compile(r"^T\(\s*(hom|\d+)\s*;\s*(-?\d+)\s*;\s*(\d+)\s*\)$")


def parse_sheaf(weight: WeightType, text: str) -> SheafObject:
    """Parse "O(<lattice element>)" or "T(i; socle; len)" / "T(hom; 0; len)"."""
    text = text.strip()
    if text.startswith("O(") and text.endswith(")"):
        return LineBundle(parse_element(weight, text[2:-1]))
    m = _TORSION_RE.match(text)
    if m:
        tube = None if m.group(1) == "hom" else int(m.group(1))
        return TorsionSheaf(weight, tube, int(m.group(2)), int(m.group(3)))
    raise ValueError(f"bad sheaf literal: {text!r}")


def sheaf_sort_key(s: SheafObject) -> tuple:
    """Deterministic total order: line bundles by degree, then torsion."""
    if isinstance(s, LineBundle):
        return (0, s.x.l, s.x.li)
    tube_order = s.weight.t + 1 if s.tube is None else s.tube
    return (1, tube_order, s.socle, s.length)


def tube_hom_oracle(d: int, socle_a: int, len_a: int, socle_b: int, len_b: int) -> int:
    """Hom dimension between nilpotent representations of a cyclic quiver.

    Models a rank-d tube concretely: the sheaf with socle j and length a is
    the representation with basis vectors m = 0..a-1 placed at vertex
    (j + m) mod d, each arrow sending basis vector m to m - 1 (and the
    socle vector to zero).  The Hom dimension is the number of free
    parameters in an intertwiner, computed by exact Gaussian elimination.
    """
    if d < 1 or len_a < 1 or len_b < 1:
        raise ValueError("tube rank and lengths must be >= 1")
    socle_a %= d
    socle_b %= d

    def vertex(socle: int, m: int) -> int:
        return (socle + m) % d

    # variables c[m, m2] for pairs at equal vertices
    variables = [
        (m, m2)
        for m in range(len_a)
        for m2 in range(len_b)
        if vertex(socle_a, m) == vertex(socle_b, m2)
    ]
    index = {v: k for k, v in enumerate(variables)}
    rows: list[list[Fraction]] = []
    # intertwining constraint per source basis vector m and target m2 at
    # the vertex below it: f(theta a_m) = theta f(a_m)
    for m in range(len_a):
        for m2 in range(len_b):
            if vertex(socle_b, m2) != (vertex(socle_a, m) - 1) % d:
                continue
            row = [Fraction(0)] * len(variables)
            if m >= 1 and (m - 1, m2) in index:
                row[index[(m - 1, m2)]] += 1
            if m2 + 1 < len_b and (m, m2 + 1) in index:
                row[index[(m, m2 + 1)]] -= 1
            if any(row):
                rows.append(row)

    rank = 0
    ncols = len(variables)
    pivot_col = 0
    while rows and pivot_col < ncols:
        pivot_row = next((r for r in range(rank, len(rows)) if rows[r][pivot_col]), None)
        if pivot_row is None:
            pivot_col += 1
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        lead = rows[rank][pivot_col]
        for r in range(len(rows)):
            if r != rank and rows[r][pivot_col]:
                factor = rows[r][pivot_col] / lead
                rows[r] = [v - factor * w for v, w in zip(rows[r], rows[rank])]
        rank += 1
        pivot_col += 1
    return ncols - rank
