"""Cayley maps as combinatorial objects.

A map is a group together with an ordered generating list (x_1, ..., x_k);
the rotation R advances the generator slot at a vertex, and the reversal L
crosses to the other end of an edge.  Arcs are numbered (vertex rank) * k +
(slot - 1), so every permutation here is an int64 row over that numbering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from ._kernels import arc_bijection_exists, closure_table
from .groups import FiniteGroup, GroupElement
from .perms import Permutation

__all__ = [
    "Arc",
    "Kappa",
    "BalanceType",
    "CayleyMap",
    "SizeGuardError",
    "build_map",
    "maps_isomorphic",
]

GRAPH_AUT_MAX_VERTICES = 64


class SizeGuardError(Exception):
    """A computation was refused because its input exceeds a desk-scale bound."""


@dataclass(frozen=True)
class Arc:
    """The arc from vertex toward vertex * x_index; index is 1-based."""

    vertex: GroupElement
    index: int


@dataclass(frozen=True)
class Kappa:
    """Distribution of inverses: the involution with x_i^{-1} = x_{kappa(i)}."""

    perm: Permutation

    @property
    def has_fixed_point(self) -> bool:
        return any(self.perm(i) == i for i in range(1, self.perm.degree + 1))

    def cycle_string(self) -> str:
        cycles = self.perm.to_cycles()
        if not cycles:
            return "id"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


@dataclass(frozen=True)
class BalanceType:
    """Result of the power-of-rotation test q(x)^{-1} = q^t(x^{-1})."""

    label: str
    t: Optional[int] = None

    def __str__(self) -> str:
        if self.label == "t-balanced":
            return f"t-balanced({self.t})"
        return self.label

    @property
    def is_balanced(self) -> bool:
        return self.label == "balanced"

    @property
    def is_anti_balanced(self) -> bool:
        return self.label == "anti-balanced"


class CayleyMap:
    """A validated Cayley map; construct through build_map."""

    def __init__(self, group: FiniteGroup, xs: Iterable[GroupElement]) -> None:
        xs = tuple(xs)
        k = len(xs)
        if k < 3:
            raise ValueError(f"a Cayley map needs at least 3 generators, got {k}")
        for x in xs:
            group.check(x)
        if len(set(xs)) != k:
            raise ValueError("generator list contains duplicates")
        if group.identity in xs:
            raise ValueError("generator list must be unit-free (identity found)")
        slot_of = {x: i for i, x in enumerate(xs, start=1)}
        kappa_images = []
        for x in xs:
            y = group.inv(x)
            if y not in slot_of:
                raise ValueError(
                    f"generator set is not inverse-closed: missing "
                    f"{group.format_element(y)}"
                )
            kappa_images.append(slot_of[y])
        if not group.generates(xs):
            raise ValueError("generator set does not generate the group")

        self.group = group
        self.xs = xs
        self.k = k
        self.n_arcs = group.order * k
        self.kappa = Kappa(Permutation(tuple(kappa_images)))
        self._rotation_row, self._reversal_row = self._build_rows()
        self._monodromy: Optional[tuple[int, bool]] = None
        self._graph_auts: Optional[list[tuple[int, ...]]] = None

    def _build_rows(self) -> tuple[np.ndarray, np.ndarray]:
        group, k = self.group, self.k
        n = group.order
        ids = np.arange(self.n_arcs, dtype=np.int64)
        rotation = (ids // k) * k + ((ids % k) + 1) % k
        reversal = np.empty(self.n_arcs, dtype=np.int64)
        kp = self.kappa.perm.images
        for v_rank, v in enumerate(group.elements()):
            base = v_rank * k
            for slot in range(k):
                w_rank = group.rank(group.mul(v, self.xs[slot]))
                reversal[base + slot] = w_rank * k + (kp[slot] - 1)
        return rotation, reversal

    # -- arcs -------------------------------------------------------------

    def arcs(self) -> list[Arc]:
        """All arcs in the global (vertex rank, slot) order."""
        return [Arc(v, i) for v in self.group.elements() for i in range(1, self.k + 1)]

    def arc_id(self, arc: Arc) -> int:
        if not 1 <= arc.index <= self.k:
            raise ValueError(f"arc slot {arc.index} out of range 1..{self.k}")
        return self.group.rank(arc.vertex) * self.k + (arc.index - 1)

    def arc_at(self, arc_id: int) -> Arc:
        if not 0 <= arc_id < self.n_arcs:
            raise ValueError(f"arc id {arc_id} out of range")
        return Arc(self.group.elements()[arc_id // self.k], arc_id % self.k + 1)

    def step_R(self, arc: Arc) -> Arc:
        return self.arc_at(int(self._rotation_row[self.arc_id(arc)]))

    def step_L(self, arc: Arc) -> Arc:
        return self.arc_at(int(self._reversal_row[self.arc_id(arc)]))

    # -- inverse distribution and balance ----------------------------------

    def distribution_of_inverses(self) -> Kappa:
        return self.kappa

    def canonical_base_rotation(self) -> "CayleyMap":
        """Rotate xs so the last generator is self-inverse, breaking ties by
        the lexicographically smallest rank tuple."""
        candidates = []
        for shift in range(self.k):
            rotated = self.xs[shift:] + self.xs[:shift]
            if self.group.inv(rotated[-1]) == rotated[-1]:
                candidates.append(rotated)
        if not candidates:
            raise ValueError("no rotation of xs puts a self-inverse generator last")
        best = min(candidates, key=lambda xs: tuple(self.group.rank(x) for x in xs))
        return CayleyMap(self.group, best)

    def balance_type(self) -> BalanceType:
        kp = self.kappa.perm.images
        k = self.k
        for t in range(1, k):
            if all(kp[i % k] == (kp[i - 1] - 1 + t) % k + 1 for i in range(1, k + 1)):
                if t == 1:
                    return BalanceType("balanced", 1)
                if t == k - 1:
                    return BalanceType("anti-balanced", k - 1)
                return BalanceType("t-balanced", t)
        return BalanceType("none")

    # -- monodromy and regularity -------------------------------------------

    def monodromy_order(self) -> tuple[int, bool]:
        """Order of the group generated by rotation and reversal on arcs,
        with cutoff |D| + 1; (order, exceeded)."""
        if self._monodromy is None:
            rows = np.stack([self._rotation_row, self._reversal_row])
            size, exceeded, _ = closure_table(rows, self.n_arcs + 1)
            self._monodromy = (size, exceeded)
        return self._monodromy

    def _arc_action_transitive(self) -> bool:
        seen = np.zeros(self.n_arcs, dtype=bool)
        seen[0] = True
        stack = [0]
        rot, rev = self._rotation_row, self._reversal_row
        while stack:
            a = stack.pop()
            for b in (int(rot[a]), int(rev[a])):
                if not seen[b]:
                    seen[b] = True
                    stack.append(b)
        return bool(seen.all())

    def is_regular(self) -> bool:
        size, exceeded = self.monodromy_order()
        return not exceeded and size == self.n_arcs and self._arc_action_transitive()

    def regular_via_vertex_stabilizer(self) -> bool:
        """Second route: does some map automorphism rotate the base star one
        step?  For connected maps this is equivalent to is_regular."""
        rot, rev = self._rotation_row, self._reversal_row
        return arc_bijection_exists(
            rot, rev, rot, rev, candidates=np.array([1], dtype=np.int64)
        )

    def rotation_automorphism(self):
        """Group automorphism sending each x_i to x_{i+1}, when one exists."""
        assignment = [(self.xs[i], self.xs[(i + 1) % self.k]) for i in range(self.k)]
        return self.group.automorphism_extending(assignment)

    def balanced_regular_via_aut(self) -> bool:
        return self.rotation_automorphism() is not None

    # -- faces and genus -------------------------------------------------------

    def face_sizes(self) -> list[int]:
        """Orbit lengths of rotation-after-reversal, one per face."""
        walk = self._rotation_row[self._reversal_row]
        seen = np.zeros(self.n_arcs, dtype=bool)
        sizes = []
        for start in range(self.n_arcs):
            if seen[start]:
                continue
            length = 0
            a = start
            while not seen[a]:
                seen[a] = True
                length += 1
                a = int(walk[a])
            sizes.append(length)
        return sizes

    def faces_and_genus(self) -> tuple[int, int]:
        faces = len(self.face_sizes())
        vertices = self.group.order
        edges = self.n_arcs // 2
        doubled = 2 - vertices + edges - faces
        if doubled % 2 or doubled < 0:
            raise RuntimeError(
                f"Euler computation gave an invalid genus: V={vertices} "
                f"E={edges} F={faces}"
            )
        return faces, doubled // 2

    # -- underlying simple graph ---------------------------------------------

    def underlying_adjacency(self) -> list[int]:
        """Neighbor bitsets by vertex rank (vertex u is adjacent to v iff
        bit v of entry u is set)."""
        group = self.group
        adj = [0] * group.order
        for u_rank, u in enumerate(group.elements()):
            for x in self.xs:
                adj[u_rank] |= 1 << group.rank(group.mul(u, x))
        return adj

    def graph_automorphisms(self) -> list[tuple[int, ...]]:
        """Every automorphism of the underlying simple graph, as a vertex
        permutation tuple; refuses above 64 vertices."""
        n = self.group.order
        if n > GRAPH_AUT_MAX_VERTICES:
            raise SizeGuardError(
                f"graph automorphism search is limited to "
                f"{GRAPH_AUT_MAX_VERTICES} vertices, got {n}"
            )
        if self._graph_auts is None:
            self._graph_auts = _graph_automorphisms(self.underlying_adjacency())
        return self._graph_auts

    def graph_aut_order(self) -> int:
        return len(self.graph_automorphisms())

    def is_one_regular(self) -> bool:
        """Arc-transitive with automorphism count equal to the arc count."""
        auts = self.graph_automorphisms()
        base_u = 0
        base_v = (self.underlying_adjacency()[0]).bit_length() - 1
        arc_orbit = {(alpha[base_u], alpha[base_v]) for alpha in auts}
        return len(arc_orbit) == self.n_arcs and len(auts) == self.n_arcs

    def is_normal_cayley(self) -> bool:
        """Do all graph automorphisms normalize the left translations?"""
        group = self.group
        auts = self.graph_automorphisms()
        elements = group.elements()
        rank = group.rank
        translations = {
            tuple(rank(group.mul(g, h)) for h in elements) for g in elements
        }
        inverses = {}
        for alpha in auts:
            inv = [0] * len(alpha)
            for i, img in enumerate(alpha):
                inv[img] = i
            inverses[alpha] = tuple(inv)
        for alpha in auts:
            alpha_inv = inverses[alpha]
            for x in self.xs:
                trans = tuple(rank(group.mul(x, h)) for h in elements)
                conj = tuple(alpha[trans[alpha_inv[v]]] for v in range(len(alpha)))
                if conj not in translations:
                    return False
        return True

    def xs_ranks(self) -> tuple[int, ...]:
        return tuple(self.group.rank(x) for x in self.xs)

    def __repr__(self) -> str:
        shown = ", ".join(self.group.format_element(x) for x in self.xs)
        return f"CayleyMap({self.group.name}, [{shown}])"


def build_map(group: FiniteGroup, xs: Sequence[GroupElement]) -> CayleyMap:
    """Validate and build the Cayley map for an ordered generator list."""
    return CayleyMap(group, xs)


def maps_isomorphic(m1: CayleyMap, m2: CayleyMap) -> bool:
    """True iff an arc bijection carries one rotation/reversal pair to the
    other; found by propagating from every candidate image of arc 0."""
    if m1.n_arcs != m2.n_arcs:
        return False
    return arc_bijection_exists(
        m1._rotation_row,
        m1._reversal_row,
        m2._rotation_row,
        m2._reversal_row,
    )


def _graph_automorphisms(adj: list[int]) -> list[tuple[int, ...]]:
    """Count-and-collect graph automorphisms by backtracking over a BFS
    vertex order, with neighbor bitset consistency at every step."""
    n = len(adj)
    # BFS order so each vertex after the first touches an earlier one.
    order = [0]
    placed = 1 << 0
    queue = [0]
    while queue:
        u = queue.pop(0)
        nbrs = adj[u] & ~placed
        while nbrs:
            v = (nbrs & -nbrs).bit_length() - 1
            nbrs &= nbrs - 1
            placed |= 1 << v
            order.append(v)
            queue.append(v)
    if len(order) != n:
        raise ValueError("underlying graph is disconnected")

    full = (1 << n) - 1
    found: list[tuple[int, ...]] = []
    images = [0] * n

    def extend(pos: int, used: int) -> None:
        if pos == n:
            out = [0] * n
            for p, v in enumerate(order):
                out[v] = images[p]
            found.append(tuple(out))
            return
        v = order[pos]
        cand = full & ~used
        for p, u in enumerate(order[:pos]):
            if adj[v] >> u & 1:
                cand &= adj[images[p]]
            else:
                cand &= ~adj[images[p]]
            if not cand:
                return
        while cand:
            w = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            images[pos] = w
            extend(pos + 1, used | 1 << w)

    extend(0, 0)
    return found
