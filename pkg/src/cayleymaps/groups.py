"""Closed-form arithmetic for the finite group families used by the census.

Elements are plain hashable values in a canonical normal form: residues for
cyclic groups, bit masks for elementary abelian 2-groups, and exponent pairs
(i, eps) meaning a^i * b^eps for the dihedral and dicyclic families.  No
multiplication tables are stored; every product is computed on exponents.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

GroupElement = Union[int, tuple]

__all__ = [
    "FiniteGroup",
    "CyclicGroup",
    "ElemAbelian2Group",
    "DihedralGroup",
    "DicyclicGroup",
    "Gf2Matrix",
    "UnitAut",
    "MatrixAut",
    "PowerPairAut",
    "GroupElement",
]


@dataclass(frozen=True)
class Gf2Matrix:
    """Square bit matrix over GF(2); rows[i] holds row i as a bit mask."""

    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        r = len(self.rows)
        if r == 0:
            raise ValueError("matrix must have at least one row")
        for row in self.rows:
            if not 0 <= row < (1 << r):
                raise ValueError(f"row mask {row} out of range for size {r}")

    @property
    def size(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, r: int) -> "Gf2Matrix":
        return cls(tuple(1 << i for i in range(r)))

    def apply(self, vec: int) -> int:
        """Left action on a bit-mask column vector."""
        out = 0
        for i, row in enumerate(self.rows):
            if (row & vec).bit_count() & 1:
                out |= 1 << i
        return out

    def matmul(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.size != other.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")
        rows = []
        for arow in self.rows:
            acc = 0
            rest = arow
            j = 0
            while rest:
                if rest & 1:
                    acc ^= other.rows[j]
                rest >>= 1
                j += 1
            rows.append(acc)
        return Gf2Matrix(tuple(rows))

    def is_invertible(self) -> bool:
        rows = list(self.rows)
        rank = 0
        for bit in range(self.size):
            pivot = next(
                (k for k in range(rank, self.size) if rows[k] >> bit & 1), None
            )
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            for k in range(self.size):
                if k != rank and rows[k] >> bit & 1:
                    rows[k] ^= rows[rank]
            rank += 1
        return rank == self.size

    def order(self) -> int:
        """Multiplicative order; defined only for invertible matrices."""
        if not self.is_invertible():
            raise ValueError("order is undefined for a singular matrix")
        ident = Gf2Matrix.identity(self.size)
        power = self
        count = 1
        while power != ident:
            power = power.matmul(self)
            count += 1
        return count

    @classmethod
    def enumerate_invertible(cls, r: int) -> Iterator["Gf2Matrix"]:
        """Yield all invertible r x r bit matrices, rows in ascending mask order."""

        def rec(rows: tuple[int, ...], span: frozenset[int]) -> Iterator[Gf2Matrix]:
            if len(rows) == r:
                yield cls(rows)
                return
            for cand in range(1, 1 << r):
                if cand in span:
                    continue
                yield from rec(rows + (cand,), span | {cand ^ s for s in span})

        return rec((), frozenset([0]))


@dataclass(frozen=True)
class UnitAut:
    """Automorphism of a cyclic group: g -> unit * g."""

    unit: int


@dataclass(frozen=True)
class MatrixAut:
    """Automorphism of an elementary abelian 2-group: v -> M v."""

    matrix: Gf2Matrix


@dataclass(frozen=True)
class PowerPairAut:
    """Automorphism a -> a^i, b -> a^j * b of a dihedral or dicyclic group."""

    i: int
    j: int


class FiniteGroup:
    """A finite group whose elements are canonical hashable values."""

    kind = "abstract"

    def __init__(self, name: str, order: int) -> None:
        if order < 1:
            raise ValueError(f"group order must be positive, got {order}")
        self.name = name
        self.order = order
        self._elements: Optional[list[GroupElement]] = None
        self._rank: Optional[dict[GroupElement, int]] = None

    # -- family-specific arithmetic ---------------------------------------

    @property
    def identity(self) -> GroupElement:
        raise NotImplementedError

    def contains(self, g: GroupElement) -> bool:
        raise NotImplementedError

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        raise NotImplementedError

    def inv(self, g: GroupElement) -> GroupElement:
        raise NotImplementedError

    def _build_elements(self) -> list[GroupElement]:
        raise NotImplementedError

    def format_element(self, g: GroupElement) -> str:
        raise NotImplementedError

    def parse_element(self, text: str) -> GroupElement:
        raise NotImplementedError

    def apply_aut(self, phi, g: GroupElement) -> GroupElement:
        raise NotImplementedError

    def automorphism_extending(self, assignment):
        """First automorphism sending x to y for every (x, y) pair, or None."""
        raise NotImplementedError

    # -- shared derived operations ----------------------------------------

    def check(self, g: GroupElement) -> GroupElement:
        if not self.contains(g):
            raise ValueError(f"{g!r} is not an element of {self.name}")
        return g

    def elements(self) -> list[GroupElement]:
        """All elements in the canonical order used for ranks everywhere."""
        if self._elements is None:
            self._elements = self._build_elements()
        return self._elements

    def rank(self, g: GroupElement) -> int:
        if self._rank is None:
            self._rank = {h: i for i, h in enumerate(self.elements())}
        try:
            return self._rank[g]
        except KeyError:
            raise ValueError(f"{g!r} is not an element of {self.name}") from None

    def order_of(self, g: GroupElement) -> int:
        self.check(g)
        power = g
        count = 1
        while power != self.identity:
            power = self.mul(power, g)
            count += 1
        return count

    def closure(self, seed: Iterable[GroupElement]) -> set:
        """Subgroup generated by seed, grown by breadth-first multiplication."""
        gens = [self.check(g) for g in seed]
        found = {self.identity}
        frontier = [self.identity]
        while frontier:
            fresh = []
            for g in frontier:
                for s in gens:
                    h = self.mul(g, s)
                    if h not in found:
                        found.add(h)
                        fresh.append(h)
            frontier = fresh
        return found

    def generates(self, seed: Iterable[GroupElement]) -> bool:
        return len(self.closure(seed)) == self.order

    def involutions(self) -> list[GroupElement]:
        e = self.identity
        return [g for g in self.elements() if g != e and self.mul(g, g) == e]

    def _checked_assignment(self, assignment) -> list[tuple[GroupElement, GroupElement]]:
        pairs = [(self.check(x), self.check(y)) for x, y in assignment]
        sources = [x for x, _ in pairs]
        if len(set(sources)) != len(sources):
            raise ValueError("assignment sources must be distinct")
        return pairs

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


class CyclicGroup(FiniteGroup):
    """Residues mod n under addition."""

    kind = "cyclic"

    def __init__(self, n: int) -> None:
        if n < 1:
            raise ValueError(f"cyclic group order must be >= 1, got {n}")
        super().__init__(f"Z{n}", n)
        self.n = n

    @property
    def identity(self) -> int:
        return 0

    def contains(self, g) -> bool:
        return isinstance(g, int) and 0 <= g < self.n

    def mul(self, g, h):
        self.check(g)
        self.check(h)
        return (g + h) % self.n

    def inv(self, g):
        self.check(g)
        return (-g) % self.n

    def _build_elements(self):
        return list(range(self.n))

    def format_element(self, g) -> str:
        self.check(g)
        return str(g)

    def parse_element(self, text: str):
        try:
            value = int(text.strip(), 10)
        except ValueError:
            raise ValueError(f"cannot parse {text!r} as a residue mod {self.n}") from None
        return value % self.n

    def apply_aut(self, phi, g):
        if not isinstance(phi, UnitAut):
            raise ValueError(f"{self.name} expects a UnitAut, got {phi!r}")
        if math.gcd(phi.unit % self.n, self.n) != 1:
            raise ValueError(f"{phi.unit} is not a unit mod {self.n}")
        self.check(g)
        return (phi.unit * g) % self.n

    def automorphism_extending(self, assignment) -> Optional[UnitAut]:
        pairs = self._checked_assignment(assignment)
        for u in range(self.n):
            if math.gcd(u, self.n) != 1:
                continue
            if all((u * x) % self.n == y for x, y in pairs):
                return UnitAut(u)
        return None


class ElemAbelian2Group(FiniteGroup):
    """Bit vectors of length r under XOR; every non-identity element squares to e."""

    kind = "elem2"

    def __init__(self, r: int) -> None:
        if r < 1:
            raise ValueError(f"rank must be >= 1, got {r}")
        super().__init__(f"E{r}", 1 << r)
        self.r = r

    @property
    def identity(self) -> int:
        return 0

    def contains(self, g) -> bool:
        return isinstance(g, int) and 0 <= g < self.order

    def mul(self, g, h):
        self.check(g)
        self.check(h)
        return g ^ h

    def inv(self, g):
        self.check(g)
        return g

    def _build_elements(self):
        return list(range(self.order))

    def format_element(self, g) -> str:
        self.check(g)
        return "".join("1" if g >> j & 1 else "0" for j in range(self.r))

    def parse_element(self, text: str):
        s = text.strip()
        if len(s) != self.r or any(c not in "01" for c in s):
            raise ValueError(f"cannot parse {text!r} as a length-{self.r} bit string")
        return sum(1 << j for j, c in enumerate(s) if c == "1")

    def apply_aut(self, phi, g):
        if not isinstance(phi, MatrixAut):
            raise ValueError(f"{self.name} expects a MatrixAut, got {phi!r}")
        if phi.matrix.size != self.r:
            raise ValueError(f"matrix size {phi.matrix.size} does not match rank {self.r}")
        if not phi.matrix.is_invertible():
            raise ValueError("matrix automorphism must be invertible")
        self.check(g)
        return phi.matrix.apply(g)

    def automorphism_extending(self, assignment) -> Optional[MatrixAut]:
        if self.r > 4:
            raise ValueError(f"matrix search is limited to rank <= 4, got {self.r}")
        pairs = self._checked_assignment(assignment)
        for mat in Gf2Matrix.enumerate_invertible(self.r):
            if all(mat.apply(x) == y for x, y in pairs):
                return MatrixAut(mat)
        return None


class _ExponentPairGroup(FiniteGroup):
    """Shared plumbing for groups with normal form a^i * b^eps, 0 <= i < m."""

    m: int

    def __init__(self, name: str, order: int, m: int) -> None:
        super().__init__(name, order)
        self.m = m

    @property
    def identity(self) -> tuple[int, int]:
        return (0, 0)

    def contains(self, g) -> bool:
        return (
            isinstance(g, tuple)
            and len(g) == 2
            and isinstance(g[0], int)
            and 0 <= g[0] < self.m
            and g[1] in (0, 1)
        )

    def _build_elements(self):
        return [(i, e) for e in (0, 1) for i in range(self.m)]

    def format_element(self, g) -> str:
        self.check(g)
        i, e = g
        parts = []
        if i == 1:
            parts.append("a")
        elif i:
            parts.append(f"a^{i}")
        if e:
            parts.append("b")
        return "*".join(parts) if parts else "e"

    def parse_element(self, text: str):
        s = text.strip()
        if s == "e":
            return (0, 0)
        if s == "b":
            return (0, 1)
        match = re.fullmatch(r"a(?:\^(-?\d+))?(\*b)?", s)
        if match is None:
            raise ValueError(f"cannot parse {text!r} as an element of {self.name}")
        i = int(match.group(1)) if match.group(1) else 1
        return (i % self.m, 1 if match.group(2) else 0)

    def apply_aut(self, phi, g):
        if not isinstance(phi, PowerPairAut):
            raise ValueError(f"{self.name} expects a PowerPairAut, got {phi!r}")
        if math.gcd(phi.i % self.m, self.m) != 1:
            raise ValueError(f"i={phi.i} must be a unit mod {self.m}")
        i, e = self.check(g)
        return ((phi.i * i + phi.j * e) % self.m, e)

    def automorphism_extending(self, assignment) -> Optional[PowerPairAut]:
        pairs = self._checked_assignment(assignment)
        if any(e != d for (_, e), (_, d) in pairs):
            return None
        flips = [(s, t) for (s, e), (t, _) in pairs if e == 1]
        for i in range(self.m):
            if math.gcd(i, self.m) != 1:
                continue
            j = (flips[0][1] - i * flips[0][0]) % self.m if flips else 0
            phi = PowerPairAut(i, j)
            if all(self.apply_aut(phi, x) == y for x, y in pairs):
                return phi
        return None


class DihedralGroup(_ExponentPairGroup):
    """Symmetries of a regular n-gon: a rotates, b reflects, (ab)^2 = e."""

    kind = "dihedral"

    def __init__(self, n: int) -> None:
        if n < 1:
            raise ValueError(f"dihedral parameter must be >= 1, got {n}")
        super().__init__(f"D{n}", 2 * n, n)
        self.n = n

    def mul(self, g, h):
        i, e = self.check(g)
        k, d = self.check(h)
        return ((i + (k if e == 0 else -k)) % self.n, (e + d) % 2)

    def inv(self, g):
        i, e = self.check(g)
        return (i, 1) if e else ((-i) % self.n, 0)


class DicyclicGroup(_ExponentPairGroup):
    """Order-4n group where b^2 = a^n and b inverts a by conjugation."""

    kind = "dicyclic"

    def __init__(self, n: int) -> None:
        # n = 1 would collapse to Z4; the presentation is kept faithful.
        if n < 2:
            raise ValueError(f"dicyclic parameter must be >= 2, got {n}")
        super().__init__(f"Dic{n}", 4 * n, 2 * n)
        self.n = n

    def mul(self, g, h):
        i, e = self.check(g)
        k, d = self.check(h)
        x = (i + (k if e == 0 else -k)) % self.m
        if e == 1 and d == 1:
            x = (x + self.n) % self.m
        return (x, (e + d) % 2)

    def inv(self, g):
        i, e = self.check(g)
        return ((i + self.n) % self.m, 1) if e else ((-i) % self.m, 0)
