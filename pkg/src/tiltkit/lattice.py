"""Rank-one weight lattice of a weighted projective line.

The lattice on weight type (p_1, ..., p_t) is the abelian group generated
by x_1, ..., x_t and c subject to p_i * x_i = c.  Every element has a
unique normal form sum(l_i * x_i) + l * c with 0 <= l_i < p_i, which backs
equality, hashing, the partial order, and the graded dimension count.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product
from math import gcd


class WeightMismatch(ValueError):
    """Raised when combining lattice elements over different weight types."""


_WEIGHTS_RE = re.compile(r"^\(\s*\d+\s*(,\s*\d+\s*)*\)$")


@dataclass(frozen=True)
class WeightType:
    """Weight sequence (p_1, ..., p_t); t >= 1 and every p_i >= 1."""

    p: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.p) < 1:
            raise ValueError("weight type needs at least one weight")
        if any(not isinstance(w, int) or w < 1 for w in self.p):
            raise ValueError(f"weights must be integers >= 1, got {self.p}")
        object.__setattr__(self, "p", tuple(self.p))

    @property
    def t(self) -> int:
        return len(self.p)

    @property
    def pbar(self) -> int:
        """Least common multiple of the weights."""
        return reduce(lambda a, b: a * b // gcd(a, b), self.p, 1)

    @classmethod
    def parse(cls, text: str) -> "WeightType":
        """Parse "(2,3,5)" into a weight type."""
        if not _WEIGHTS_RE.match(text.strip()):
            raise ValueError(f"bad weight type literal: {text!r}")
        parts = text.strip()[1:-1].split(",")
        return cls(tuple(int(s) for s in parts))

    def __str__(self) -> str:
        return "(" + ",".join(str(w) for w in self.p) + ")"


@dataclass(frozen=True)
class LatticeElement:
    """Lattice element in normal form: sum(li[i] * x_{i+1}) + l * c.

    Instances are only built through normal_form and the helpers below, so
    0 <= li[i] < p_i always holds and structural equality is group equality.
    """

    weight: WeightType
    li: tuple[int, ...]
    l: int

    def __post_init__(self) -> None:
        if len(self.li) != self.weight.t:
            raise ValueError("coefficient count does not match weight type")
        if any(not 0 <= v < p for v, p in zip(self.li, self.weight.p)):
            raise ValueError(f"coefficients {self.li} not in normal form")

    def __add__(self, other: "LatticeElement") -> "LatticeElement":
        _check_same_weight(self, other)
        coeffs = tuple(a + b for a, b in zip(self.li, other.li))
        return normal_form(self.weight, coeffs, self.l + other.l)

    def __neg__(self) -> "LatticeElement":
        return normal_form(self.weight, tuple(-v for v in self.li), -self.l)

    def __sub__(self, other: "LatticeElement") -> "LatticeElement":
        return self + (-other)

    def __rmul__(self, n: int) -> "LatticeElement":
        return scalar_mul(n, self)

    def __str__(self) -> str:
        terms = [f"{v}*x{i + 1}" for i, v in enumerate(self.li)]
        terms.append(f"{self.l}*c")
        return "+".join(terms)


def _check_same_weight(a: LatticeElement, b: LatticeElement) -> None:
    if a.weight != b.weight:
        raise WeightMismatch(f"weight types differ: {a.weight} vs {b.weight}")


def normal_form(weight: WeightType, coeffs: tuple[int, ...], l: int) -> LatticeElement:
    """Reduce arbitrary integer coefficients using p_i * x_i = c."""
    if len(coeffs) != weight.t:
        raise ValueError("coefficient count does not match weight type")
    reduced = []
    carry = l
    for v, p in zip(coeffs, weight.p):
        q, r = divmod(v, p)
        reduced.append(r)
        carry += q
    return LatticeElement(weight, tuple(reduced), carry)


def zero(weight: WeightType) -> LatticeElement:
    return LatticeElement(weight, (0,) * weight.t, 0)


def gen(weight: WeightType, i: int) -> LatticeElement:
    """Generator x_i, 1-based index."""
    if not 1 <= i <= weight.t:
        raise ValueError(f"generator index {i} out of range 1..{weight.t}")
    coeffs = tuple(1 if j == i - 1 else 0 for j in range(weight.t))
    return normal_form(weight, coeffs, 0)


def canonical(weight: WeightType) -> LatticeElement:
    """The element c = p_i * x_i."""
    return LatticeElement(weight, (0,) * weight.t, 1)


def omega(weight: WeightType) -> LatticeElement:
    """Dualizing element (t - 2) * c - sum(x_i); normal form has l = -2."""
    return normal_form(weight, (-1,) * weight.t, weight.t - 2)


def scalar_mul(n: int, x: LatticeElement) -> LatticeElement:
    return normal_form(x.weight, tuple(n * v for v in x.li), n * x.l)


def is_effective(x: LatticeElement) -> bool:
    """True when x is a nonnegative combination of the generators."""
    # In normal form the generator coefficients are already >= 0, so
    # effectivity is exactly the sign of the c coefficient.
    return x.l >= 0


def leq(x: LatticeElement, y: LatticeElement) -> bool:
    """Partial order: x <= y when y - x lies in the effective cone."""
    _check_same_weight(x, y)
    return is_effective(y - x)


def graded_dim(x: LatticeElement) -> int:
    """Dimension of the degree-x piece of the coordinate ring.

    For t >= 2 the reduced monomial basis (two unbounded exponents, the
    rest pinned below their weights) gives max(0, l + 1).  For t = 1 there
    is a single unbounded exponent and the dimension is 1 on the effective
    cone, 0 off it.
    """
    if x.weight.t == 1:
        return 1 if x.l >= 0 else 0
    return max(0, x.l + 1)


def graded_dim_oracle(x: LatticeElement) -> int:
    """Count degree-x monomials directly; independent of graded_dim.

    Enumerates reduced monomials X_1^a1 * X_2^a2 * ... with a_i < p_i for
    i >= 3 and a_1, a_2 bounded by the largest exponent whose carry can
    still land on x, comparing normal forms via group arithmetic only.
    """
    w = x.weight
    nfree = min(w.t, 2)
    ranges: list[range] = []
    for i in range(w.t):
        if i < nfree:
            ranges.append(range(0, w.p[i] * (max(x.l, 0) + 2)))
        else:
            ranges.append(range(0, w.p[i]))
    count = 0
    for exps in product(*ranges):
        if normal_form(w, tuple(exps), 0) == x:
            count += 1
    return count


@dataclass(frozen=True)
class GenusClass:
    """Virtual genus of the weight type and its tame/wild classification."""

    value: Fraction
    kind: str  # "domestic" | "tubular" | "wild"


@lru_cache(maxsize=None)
def genus(weight: WeightType) -> GenusClass:
    """Exact virtual genus g with domestic (g < 1), tubular (= 1), wild (> 1)."""
    pbar = weight.pbar
    g = 1 + Fraction(1, 2) * (
        (weight.t - 2) * pbar - sum(Fraction(pbar, p) for p in weight.p)
    )
    if g < 1:
        kind = "domestic"
    elif g == 1:
        kind = "tubular"
    else:
        kind = "wild"
    return GenusClass(Fraction(g), kind)


def rank_g0(weight: WeightType) -> int:
    """Rank of the Grothendieck group: sum(p_i - 1) + 2."""
    return sum(p - 1 for p in weight.p) + 2


_TERM_RE = re.compile(r"^(-?\d+)\*(x(\d+)|c)$")


def parse_element(weight: WeightType, text: str) -> LatticeElement:
    """Parse "l1*x1+...+lt*xt+l*c"; inverse of str().

    Partial sums are accepted (missing terms default to zero), so "1*c"
    and "2*x1+-1*c" are valid input even though rendering always emits
    every term.  A bare integer chunk counts as that multiple of c, so
    "0" is the zero element and "2*x1+1" shifts by one canonical step.
    A bare generator ("x1", "-c") carries coefficient 1 or -1.
    """
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("empty lattice element literal")
    coeffs = [0] * weight.t
    l = 0
    seen: set[str] = set()
    # "+-2*c" splits cleanly on "+" because the sign stays glued to the digits
    for chunk in compact.split("+"):
        if "*" not in chunk:
            if re.fullmatch(r"-?(x\d+|c)", chunk):
                chunk = chunk.replace("-", "-1*", 1) if "-" in chunk else f"1*{chunk}"
            else:
                chunk = f"{chunk}*c"
        m = _TERM_RE.match(chunk)
        if not m:
            raise ValueError(f"bad term {chunk!r} in {text!r}")
        value = int(m.group(1))
        name = m.group(2)
        if name in seen:
            raise ValueError(f"repeated term {name!r} in {text!r}")
        seen.add(name)
        if name == "c":
            l = value
        else:
            idx = int(m.group(3))
            if not 1 <= idx <= weight.t:
                raise ValueError(f"term {name!r} out of range for {weight}")
            coeffs[idx - 1] = value
    return normal_form(weight, tuple(coeffs), l)
