"""Constructions, counting formulas, and the exhaustive census oracle.

This module has two independent halves that check each other:

* closed-form machinery — geometric-sum orders, the dihedral construction
  from a triple (n, l, k), the anti-balanced cyclic construction, seed pairs
  over GF(2), a product formula for the number of isomorphism classes, and a
  CRT-based enumeration of the same classes;
* an exhaustive search (`exhaustive_regular_maps`) that enumerates every
  inverse-closed generating subset and cyclic ordering at desk scale, keeps
  the regular maps, and deduplicates them up to map isomorphism.

`verify_claim` runs the named cross-checks between the two halves; claim ids
are short opaque strings fixed by the command-line contract.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from . import _kernels
from .groups import (
    CyclicGroup,
    DicyclicGroup,
    DihedralGroup,
    ElemAbelian2Group,
    FiniteGroup,
    Gf2Matrix,
)
from .maps import CayleyMap, SizeGuardError, build_map, maps_isomorphic
from .perms import (
    Permutation,
    all_involutions,
    cycle_and_involution_group,
    reflection_fixing_last,
)

MAX_CENSUS_ARCS = 400
MAX_SEED_RANK = 4
MAX_ABELIAN_VERIFY_ORDER = 16

CLAIM_IDS = ("1.1", "1.2", "1.3", "2.6", "2.7-consequence", "3.4", "L3.2")


def _require_odd_prime(p: int) -> int:
    if p < 3 or p % 2 == 0 or any(p % d == 0 for d in range(3, int(p**0.5) + 1, 2)):
        raise ValueError(f"expected an odd prime, got {p}")
    return p


def _factorize(m: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1
    if m > 1:
        out.append((m, 1))
    return out


# -- geometric-sum orders and triples -----------------------------------------


def geosum_order(n: int, l: int) -> Optional[int]:
    """Smallest k >= 1 with 1 + l + ... + l^(k-1) divisible by n, else None.

    The pair (partial sum, l^k) mod n takes at most n^2 values, so searching
    k <= n^2 is exhaustive: beyond that the sequence of pairs has cycled.
    """
    if not 0 < l < n:
        raise ValueError(f"need 0 < l < n, got l={l}, n={n}")
    s = 0
    power = 1
    for k in range(1, n * n + 1):
        s = (s + power) % n
        if s == 0:
            return k
        power = (power * l) % n
    return None


def triples_for(n: int, p: int) -> list[int]:
    """All l with geosum_order(n, l) == p, ascending.

    Only the first p partial sums are needed: the order equals p exactly when
    the p-th sum vanishes mod n and no earlier one does.
    """
    _require_odd_prime(p)
    if n < 2:
        return []
    out = []
    for l in range(1, n):
        s = 0
        power = 1
        hit = None
        for k in range(1, p + 1):
            s = (s + power) % n
            if s == 0:
                hit = k
                break
            power = (power * l) % n
        if hit == p:
            out.append(l)
    return out


@dataclass(frozen=True)
class Triple:
    """A pair (n, l) together with its geometric-sum order k, validated."""

    n: int
    l: int
    k: int

    def __post_init__(self) -> None:
        if not 0 < self.l < self.n:
            raise ValueError(f"need 0 < l < n, got l={self.l}, n={self.n}")
        if math.gcd(self.l, self.n) != 1:
            raise ValueError(f"l={self.l} and n={self.n} are not coprime")
        actual = geosum_order(self.n, self.l)
        if actual != self.k:
            raise ValueError(
                f"geometric-sum order of l={self.l} mod n={self.n} is "
                f"{actual}, not {self.k}"
            )


# -- closed-form constructions --------------------------------------------------


def balanced_dihedral_map(n: int, l: int, p: int) -> CayleyMap:
    """The balanced p-valent map on the dihedral group of order 2n whose
    reflection exponents are the partial geometric sums of l."""
    _require_odd_prime(p)
    Triple(n, l, p)
    exps = []
    s = 0
    power = 1
    for _ in range(p):
        exps.append(s)
        s = (s + power) % n
        power = (power * l) % n
    return build_map(DihedralGroup(n), [(e, 1) for e in exps])


def antibalanced_cyclic_map(p: int) -> CayleyMap:
    """The anti-balanced p-valent map on the cyclic group of order 2p, with
    the odd residues in ascending rotation order (underlying graph K_{p,p})."""
    _require_odd_prime(p)
    return build_map(CyclicGroup(2 * p), list(range(1, 2 * p, 2)))


def elem_abelian_seeds(r: int, p: int) -> list[tuple[Gf2Matrix, int]]:
    """All (A, x) with A an invertible GF(2) matrix of exact order p and the
    orbit x, Ax, ..., A^(p-1)x consisting of p distinct vectors spanning the
    whole rank-r space. Pairs are listed in enumeration order of A then x."""
    if not 1 <= r <= MAX_SEED_RANK:
        raise ValueError(f"seed rank must be in 1..{MAX_SEED_RANK}, got {r}")
    _require_odd_prime(p)
    out = []
    for A in Gf2Matrix.enumerate_invertible(r):
        if A.order() != p:
            continue
        for x in range(1, 1 << r):
            orbit = [x]
            v = x
            for _ in range(p - 1):
                v = A.apply(v)
                orbit.append(v)
            if len(set(orbit)) != p:
                continue
            if _span_rank(orbit) == r:
                out.append((A, x))
    return out


def _span_rank(vectors: Sequence[int]) -> int:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def elem_abelian_map(A: Gf2Matrix, x: int) -> CayleyMap:
    """The balanced map built from a seed pair: generators are the A-orbit of
    x inside the elementary abelian 2-group of rank A.size."""
    p = A.order()
    orbit = [x]
    v = x
    for _ in range(p - 1):
        v = A.apply(v)
        orbit.append(v)
    return build_map(ElemAbelian2Group(A.size), orbit)


# -- counting formula and CRT enumeration ------------------------------------------


def count_regular_dihedral_maps(n: int, p: int) -> int:
    """Closed-form count of isomorphism classes of regular balanced p-valent
    maps on the dihedral group of order 2n: (p-1)^t when n is odd, divisible
    by p at most once, and every other prime factor is 1 mod p; else 0."""
    _require_odd_prime(p)
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n == 1 or n % 2 == 0:
        return 0
    m = n
    a0 = 0
    while m % p == 0:
        m //= p
        a0 += 1
    if a0 > 1:
        return 0
    t = 0
    for q, _ in _factorize(m):
        if (q - 1) % p != 0:
            return 0
        t += 1
    return (p - 1) ** t


def crt_lift_solutions(n: int, p: int) -> list[int]:
    """Enumerate the same classes as triples_for(n, p), but constructively:
    pick a p-th root of unity that is not 1 modulo each odd prime-power
    factor of n (and 1 modulo p itself when p divides n once), then combine
    the residues by the Chinese remainder theorem."""
    _require_odd_prime(p)
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n == 1 or n % 2 == 0:
        return []
    m = n
    a0 = 0
    while m % p == 0:
        m //= p
        a0 += 1
    if a0 > 1:
        return []
    moduli: list[int] = []
    residue_sets: list[list[int]] = []
    if a0 == 1:
        moduli.append(p)
        residue_sets.append([1])
    for q, e in _factorize(m):
        qe = q**e
        roots = [x for x in range(1, qe) if pow(x, p, qe) == 1 and x % q != 1]
        if not roots:
            return []
        moduli.append(qe)
        residue_sets.append(roots)
    out = []
    for combo in product(*residue_sets):
        out.append(_crt(moduli, combo))
    return sorted(out)


def _crt(moduli: Sequence[int], residues: Sequence[int]) -> int:
    x, modulus = 0, 1
    for q, r in zip(moduli, residues):
        inc = ((r - x) * pow(modulus, -1, q)) % q
        x += modulus * inc
        modulus *= q
    return x % modulus


# -- abelian product groups and the catalogue ----------------------------------------


@dataclass(frozen=True)
class GeneratorImagesAut:
    """Automorphism of an abelian product, recorded by where the canonical
    coordinate generators go."""

    images: tuple[tuple[int, ...], ...]


class AbelianProductGroup(FiniteGroup):
    """Direct product of cyclic groups; elements are residue tuples, written
    with colons ("1:3" in Z2xZ4)."""

    kind = "abelian"

    def __init__(self, mods: Sequence[int]) -> None:
        mods = tuple(int(d) for d in mods)
        if len(mods) < 1 or any(d < 2 for d in mods):
            raise ValueError(f"moduli must all be >= 2, got {mods}")
        order = math.prod(mods)
        super().__init__("x".join(f"Z{d}" for d in mods), order)
        self.mods = mods

    @property
    def identity(self):
        return tuple(0 for _ in self.mods)

    def contains(self, g) -> bool:
        return (
            isinstance(g, tuple)
            and len(g) == len(self.mods)
            and all(isinstance(c, int) and 0 <= c < d for c, d in zip(g, self.mods))
        )

    def mul(self, g, h):
        self.check(g)
        self.check(h)
        return tuple((c + e) % d for c, e, d in zip(g, h, self.mods))

    def inv(self, g):
        self.check(g)
        return tuple((-c) % d for c, d in zip(g, self.mods))

    def _build_elements(self):
        return [tuple(c) for c in product(*(range(d) for d in self.mods))]

    def format_element(self, g) -> str:
        self.check(g)
        return ":".join(str(c) for c in g)

    def parse_element(self, text: str):
        parts = text.split(":")
        if len(parts) != len(self.mods):
            raise ValueError(
                f"{text!r} needs {len(self.mods)} colon-separated residues"
            )
        try:
            coords = [int(part) for part in parts]
        except ValueError:
            raise ValueError(f"{text!r} is not a residue tuple") from None
        return tuple(c % d for c, d in zip(coords, self.mods))

    def apply_aut(self, phi: GeneratorImagesAut, g):
        self.check(g)
        out = self.identity
        for c, img in zip(g, phi.images):
            for _ in range(c):
                out = self.mul(out, img)
        return out

    def automorphism_extending(self, assignment) -> Optional[GeneratorImagesAut]:
        pairs = self._checked_assignment(assignment)
        # candidate images for coordinate generator j must have order dividing mods[j]
        candidates = [
            [g for g in self.elements() if d % self.order_of(g) == 0]
            for d in self.mods
        ]
        for images in product(*candidates):
            phi = GeneratorImagesAut(tuple(images))
            if any(self.apply_aut(phi, x) != y for x, y in pairs):
                continue
            seen = {self.apply_aut(phi, g) for g in self.elements()}
            if len(seen) == self.order:
                return phi
        return None


def abelian_group_catalogue(max_order: int) -> list[FiniteGroup]:
    """One group per isomorphism class of abelian groups of order 2..max_order,
    as invariant-factor chains d1 | d2 | ... | dm; single factors come back as
    CyclicGroup and all-2 chains as ElemAbelian2Group."""
    out: list[FiniteGroup] = []
    for order in range(2, max_order + 1):
        for chain in _invariant_factor_chains(order):
            if len(chain) == 1:
                out.append(CyclicGroup(order))
            elif all(d == 2 for d in chain):
                out.append(ElemAbelian2Group(len(chain)))
            else:
                out.append(AbelianProductGroup(chain))
    return out


def _invariant_factor_chains(order: int) -> list[tuple[int, ...]]:
    """All tuples (d1, ..., dm) with d1 | d2 | ... | dm, product = order,
    every di >= 2, listed by increasing length then lexicographically."""

    def rec(remaining: int, min_d: int) -> list[tuple[int, ...]]:
        chains = [(remaining,)] if remaining >= min_d else []
        for d in range(min_d, remaining):
            if remaining % d == 0:
                for tail in rec(remaining // d, d):
                    if tail[0] % d == 0:
                        chains.append((d,) + tail)
        return chains

    chains = rec(order, 2)
    chains.sort(key=lambda c: (len(c), c))
    return chains


# -- exhaustive search -------------------------------------------------------------


def inverse_closed_sets(group: FiniteGroup, valence: int) -> list[tuple]:
    """All unit-free, inverse-closed, generating subsets of the given size,
    each sorted by element rank; the list itself is rank-lexicographic."""
    if valence < 3:
        raise ValueError(f"valence must be >= 3, got {valence}")
    involutions = group.involutions()
    seen_pair = set()
    pairs = []
    for g in group.elements():
        h = group.inv(g)
        if g == h or g == group.identity:
            continue
        key = frozenset((g, h))
        if key in seen_pair:
            continue
        seen_pair.add(key)
        pairs.append((g, h) if group.rank(g) < group.rank(h) else (h, g))
    out = []
    for n_inv in range(valence % 2, min(valence, len(involutions)) + 1, 2):
        n_pair = (valence - n_inv) // 2
        if n_pair > len(pairs):
            continue
        for invs in combinations(involutions, n_inv):
            for prs in combinations(pairs, n_pair):
                xset = sorted(
                    invs + tuple(x for pr in prs for x in pr), key=group.rank
                )
                if group.generates(xset):
                    out.append(tuple(xset))
    out.sort(key=lambda xs: tuple(group.rank(x) for x in xs))
    return out


def cyclic_orderings(xset: Sequence) -> Iterator[tuple]:
    """All orderings of the set with the first (minimal) element pinned,
    one representative per cyclic rotation class."""
    first = xset[0]
    for rest in permutations(xset[1:]):
        yield (first,) + rest


def iter_candidate_maps(group: FiniteGroup, valence: int) -> Iterator[CayleyMap]:
    """Every candidate map the exhaustive search considers, in search order."""
    for xset in inverse_closed_sets(group, valence):
        for xs in cyclic_orderings(xset):
            yield build_map(group, xs)


def _group_descriptor(group: FiniteGroup) -> tuple:
    if isinstance(group, DihedralGroup):
        return ("dihedral", group.n)
    if isinstance(group, DicyclicGroup):
        return ("dicyclic", group.n)
    if isinstance(group, ElemAbelian2Group):
        return ("elem2", group.r)
    if isinstance(group, CyclicGroup):
        return ("cyclic", group.n)
    if isinstance(group, AbelianProductGroup):
        return ("product",) + group.mods
    raise ValueError(f"no descriptor for {group!r}")


def _group_from_descriptor(desc: tuple) -> FiniteGroup:
    kind, params = desc[0], desc[1:]
    if kind == "dihedral":
        return DihedralGroup(params[0])
    if kind == "dicyclic":
        return DicyclicGroup(params[0])
    if kind == "elem2":
        return ElemAbelian2Group(params[0])
    if kind == "cyclic":
        return CyclicGroup(params[0])
    if kind == "product":
        return AbelianProductGroup(params)
    raise ValueError(f"unknown descriptor {desc!r}")


def _survivors_for_sets(
    group: FiniteGroup, valence: int, sets: Sequence[tuple]
) -> list[tuple[int, ...]]:
    """Rank tuples of every ordering (first element pinned) of the given
    inverse-closed sets whose map is regular."""
    elems = group.elements()
    m = group.order
    n_arcs = m * valence
    mul_rank = np.empty((m, m), dtype=np.int64)
    for i, g in enumerate(elems):
        for j, h in enumerate(elems):
            mul_rank[i, j] = group.rank(group.mul(g, h))
    inv_rank = [group.rank(group.inv(g)) for g in elems]
    ids = np.arange(n_arcs, dtype=np.int64)
    row_R = (ids // valence) * valence + ((ids % valence) + 1) % valence
    survivors = []
    for xset in sets:
        set_ranks = tuple(group.rank(x) for x in xset)
        for xs_ranks in cyclic_orderings(set_ranks):
            kappa0 = [xs_ranks.index(inv_rank[r]) for r in xs_ranks]
            row_L = (
                mul_rank[:, list(xs_ranks)] * valence + np.array(kappa0)
            ).reshape(-1)
            size, exceeded, _ = _kernels.closure_table(
                np.stack([row_R, row_L]), cutoff=n_arcs
            )
            # the action is transitive (X generates), so regular <=> order = |D|
            if not exceeded and size == n_arcs:
                survivors.append(xs_ranks)
    return survivors


def _survivor_worker(args: tuple) -> list[tuple[int, ...]]:
    desc, valence, set_rank_tuples = args
    group = _group_from_descriptor(desc)
    elems = group.elements()
    sets = [tuple(elems[r] for r in ranks) for ranks in set_rank_tuples]
    return _survivors_for_sets(group, valence, sets)


def exhaustive_regular_maps(
    group: FiniteGroup, valence: int, jobs: int = 1
) -> list[CayleyMap]:
    """Independent search oracle: every inverse-closed generating subset of
    the given size, every cyclic ordering (first element pinned), kept when
    regular, deduplicated up to map isomorphism. Representatives are the
    (genus, rank-lexicographic) minima of their classes, sorted by ranks."""
    if group.order * valence > MAX_CENSUS_ARCS:
        raise SizeGuardError(
            f"census guard: |G| * valence = {group.order * valence} exceeds "
            f"{MAX_CENSUS_ARCS}"
        )
    sets = inverse_closed_sets(group, valence)
    if jobs > 1 and len(sets) > 1:
        desc = _group_descriptor(group)
        rank_sets = [tuple(group.rank(x) for x in s) for s in sets]
        bounds = np.linspace(0, len(rank_sets), jobs + 1).astype(int)
        chunks = [
            (desc, valence, rank_sets[bounds[i] : bounds[i + 1]])
            for i in range(jobs)
            if bounds[i] < bounds[i + 1]
        ]
        survivors: list[tuple[int, ...]] = []
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            for part in pool.map(_survivor_worker, chunks):
                survivors.extend(part)
    else:
        survivors = _survivors_for_sets(group, valence, sets)
    elems = group.elements()
    survivor_maps = [
        build_map(group, tuple(elems[r] for r in ranks)) for ranks in survivors
    ]
    classes: list[list[CayleyMap]] = []
    for m_obj in survivor_maps:
        for cls in classes:
            if maps_isomorphic(cls[0], m_obj):
                cls.append(m_obj)
                break
        else:
            classes.append([m_obj])
    reps = [
        min(cls, key=lambda mm: (mm.faces_and_genus()[1], mm.xs_ranks()))
        for cls in classes
    ]
    reps.sort(key=lambda mm: mm.xs_ranks())
    return reps


# -- census entries ------------------------------------------------------------------


@dataclass(frozen=True)
class CensusEntry:
    """One row of a census or diagnostic report."""

    group: str
    n: int
    p: int
    xs: tuple[str, ...]
    regular: bool
    balance: str
    kappa: str
    mon_order: Union[int, str]  # ">N" when the closure search passed its cutoff
    genus: int
    graph_aut_order: Optional[int]
    class_id: str

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "n": self.n,
            "p": self.p,
            "xs": list(self.xs),
            "regular": self.regular,
            "balance": self.balance,
            "kappa": self.kappa,
            "mon_order": self.mon_order,
            "genus": self.genus,
            "graph_aut_order": self.graph_aut_order,
            "class_id": self.class_id,
        }

    def csv_row(self) -> list[str]:
        return [
            self.group,
            str(self.n),
            str(self.p),
            " ".join(self.xs),
            "true" if self.regular else "false",
            self.balance,
            self.kappa,
            str(self.mon_order),
            str(self.genus),
            self.class_id,
        ]


CSV_COLUMNS = (
    "group",
    "n",
    "p",
    "xs",
    "regular",
    "balance",
    "kappa",
    "mon_order",
    "genus",
    "class_id",
)


def entry_for_map(
    m: CayleyMap,
    n_param: int,
    class_id: str,
    with_graph_aut: bool = False,
) -> CensusEntry:
    """Diagnostic row for one map; mon_order becomes ">cutoff" when the
    closure search exceeded its cutoff."""
    order, exceeded = m.monodromy_order()
    mon: Union[int, str] = f">{m.n_arcs + 1}" if exceeded else order
    faces, genus = m.faces_and_genus()
    aut_order = None
    if with_graph_aut and m.group.order <= 64:
        aut_order = m.graph_aut_order()
    return CensusEntry(
        group=m.group.name,
        n=n_param,
        p=m.k,
        xs=tuple(m.group.format_element(x) for x in m.xs),
        regular=m.is_regular(),
        balance=str(m.balance_type()),
        kappa=m.kappa.cycle_string(),
        mon_order=mon,
        genus=genus,
        graph_aut_order=aut_order,
        class_id=class_id,
    )


def census_entries(
    group: FiniteGroup, n_param: int, valence: int, jobs: int = 1
) -> list[CensusEntry]:
    """Census rows for one group: isomorphism-class representatives of the
    regular maps of the given valence, in deterministic order."""
    reps = exhaustive_regular_maps(group, valence, jobs=jobs)
    return [
        entry_for_map(m, n_param, f"{group.name}-p{valence}-{idx}")
        for idx, m in enumerate(reps)
    ]


# -- claim verification -----------------------------------------------------------


@dataclass
class VerifyReport:
    """Outcome of one verification run; counterexamples are report rows."""

    claim_id: str
    passed: bool
    checked: int
    counterexamples: list[str]
    notes: list[str]

    def as_text(self) -> str:
        lines = [f"claim {self.claim_id}: {'PASS' if self.passed else 'FAIL'}"]
        lines.append(f"checked: {self.checked}")
        for note in self.notes:
            lines.append(f"note: {note}")
        for bad in self.counterexamples:
            lines.append(f"counterexample: {bad}")
        return "\n".join(lines) + "\n"


def affine_compatible_involutions(k: int) -> list[Permutation]:
    """Involutions fixing the last point whose joint group with the full
    k-cycle is no bigger than the affine bound k(k-1) (and divides it)."""
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    bound = k * (k - 1)
    out = []
    for kappa in all_involutions(k):
        if kappa(k) != k:
            continue
        grp = cycle_and_involution_group(k, kappa, cutoff=bound + 1)
        if not grp.exceeded and bound % grp.order == 0:
            out.append(kappa)
    return out


def _match_one_to_one(
    found: Sequence[CayleyMap], expected: Sequence[CayleyMap]
) -> bool:
    """True when found and expected match bijectively under map isomorphism."""
    if len(found) != len(expected):
        return False
    remaining = list(range(len(expected)))
    for m in found:
        for idx in remaining:
            if maps_isomorphic(m, expected[idx]):
                remaining.remove(idx)
                break
        else:
            return False
    return not remaining


def _entry_str(m: CayleyMap, n_param: int) -> str:
    return ",".join(entry_for_map(m, n_param, "counterexample").csv_row())


def verify_claim(
    claim_id: str,
    p: Optional[int] = None,
    n_max: Optional[int] = None,
    jobs: int = 1,
) -> VerifyReport:
    """Run one named cross-check between the closed-form constructions and
    the exhaustive search oracle; ids are fixed by the CLI contract."""
    if claim_id not in CLAIM_IDS:
        raise ValueError(
            f"unknown claim id {claim_id!r}; known: {', '.join(CLAIM_IDS)}"
        )
    if claim_id == "2.7-consequence":
        n_max = 6 if n_max is None else n_max
        return _verify_dicyclic_balance_parity(n_max, jobs)
    if p is None or n_max is None:
        raise ValueError(f"claim {claim_id} needs both p and n_max")
    _require_odd_prime(p)
    if claim_id == "1.1":
        return _verify_abelian_dichotomy(p, n_max, jobs)
    if claim_id == "1.2":
        return _verify_dihedral_classification(p, n_max, jobs)
    if claim_id == "1.3":
        return _verify_dicyclic_emptiness(p, n_max, jobs)
    if claim_id == "2.6":
        return _verify_no_antibalanced_dihedral(p, n_max, jobs)
    if claim_id == "3.4":
        return _verify_count_agreement(p, n_max)
    return _verify_kappa_dichotomy(p, n_max, jobs)


def _verify_abelian_dichotomy(p: int, n_max: int, jobs: int) -> VerifyReport:
    if n_max > MAX_ABELIAN_VERIFY_ORDER:
        raise ValueError(
            f"abelian verification is bounded at order "
            f"{MAX_ABELIAN_VERIFY_ORDER}, got n_max={n_max}"
        )
    anti_reference = antibalanced_cyclic_map(p)
    seed_map_cache: dict[int, list[CayleyMap]] = {}

    def seed_classes(r: int) -> list[CayleyMap]:
        if r not in seed_map_cache:
            reps: list[CayleyMap] = []
            for A, x in elem_abelian_seeds(r, p):
                m = elem_abelian_map(A, x)
                if not any(maps_isomorphic(m, rep) for rep in reps):
                    reps.append(m)
            seed_map_cache[r] = reps
        return seed_map_cache[r]

    counterexamples = []
    notes = []
    checked = 0
    for group in abelian_group_catalogue(n_max):
        if group.order * p > MAX_CENSUS_ARCS:
            raise SizeGuardError(f"{group.name}: census guard exceeded")
        for m in exhaustive_regular_maps(group, p, jobs=jobs):
            checked += 1
            bt = m.balance_type()
            if bt.is_balanced:
                r = group.order.bit_length() - 1
                if group.order != 1 << r or not any(
                    maps_isomorphic(m, rep) for rep in seed_classes(r)
                ):
                    counterexamples.append(_entry_str(m, group.order))
            elif bt.is_anti_balanced:
                if not maps_isomorphic(m, anti_reference):
                    counterexamples.append(_entry_str(m, group.order))
            else:
                counterexamples.append(_entry_str(m, group.order))
    notes.append(f"abelian groups searched: {len(abelian_group_catalogue(n_max))}")
    return VerifyReport("1.1", not counterexamples, checked, counterexamples, notes)


def _verify_dihedral_classification(p: int, n_max: int, jobs: int) -> VerifyReport:
    counterexamples = []
    checked = 0
    for n in range(3, n_max + 1):
        group = DihedralGroup(n)
        if group.order * p > MAX_CENSUS_ARCS:
            raise SizeGuardError(f"{group.name}: census guard exceeded")
        found = exhaustive_regular_maps(group, p, jobs=jobs)
        expected = [balanced_dihedral_map(n, l, p) for l in triples_for(n, p)]
        checked += len(found) + len(expected)
        if not _match_one_to_one(found, expected):
            for m in found:
                if not any(maps_isomorphic(m, e) for e in expected):
                    counterexamples.append(_entry_str(m, n))
            for e in expected:
                if not any(maps_isomorphic(e, m) for m in found):
                    counterexamples.append("missing " + _entry_str(e, n))
    return VerifyReport("1.2", not counterexamples, checked, counterexamples, [])


def _verify_dicyclic_emptiness(p: int, n_max: int, jobs: int) -> VerifyReport:
    counterexamples = []
    checked = 0
    for n in range(2, n_max + 1):
        group = DicyclicGroup(n)
        if group.order * p > MAX_CENSUS_ARCS:
            raise SizeGuardError(f"{group.name}: census guard exceeded")
        for m in exhaustive_regular_maps(group, p, jobs=jobs):
            counterexamples.append(_entry_str(m, n))
        checked += 1
    return VerifyReport("1.3", not counterexamples, checked, counterexamples, [])


def _verify_no_antibalanced_dihedral(p: int, n_max: int, jobs: int) -> VerifyReport:
    counterexamples = []
    checked = 0
    for n in range(3, n_max + 1):
        group = DihedralGroup(n)
        if group.order * p > MAX_CENSUS_ARCS:
            raise SizeGuardError(f"{group.name}: census guard exceeded")
        for m in exhaustive_regular_maps(group, p, jobs=jobs):
            checked += 1
            if m.balance_type().is_anti_balanced:
                counterexamples.append(_entry_str(m, n))
    return VerifyReport("2.6", not counterexamples, checked, counterexamples, [])


def _verify_dicyclic_balance_parity(n_max: int, jobs: int) -> VerifyReport:
    counterexamples = []
    checked = 0
    balanced_seen = 0
    for n in range(2, n_max + 1):
        group = DicyclicGroup(n)
        for valence in (3, 4, 5):
            if group.order * valence > MAX_CENSUS_ARCS:
                continue
            for m in exhaustive_regular_maps(group, valence, jobs=jobs):
                checked += 1
                if m.balance_type().is_balanced:
                    balanced_seen += 1
                    if valence % 2 == 1:
                        counterexamples.append(_entry_str(m, n))
    notes = [f"balanced regular dicyclic maps seen: {balanced_seen}"]
    return VerifyReport(
        "2.7-consequence", not counterexamples, checked, counterexamples, notes
    )


def _verify_count_agreement(p: int, n_max: int) -> VerifyReport:
    counterexamples = []
    for n in range(1, n_max + 1):
        formula = count_regular_dihedral_maps(n, p)
        enumerated = triples_for(n, p)
        lifted = crt_lift_solutions(n, p)
        if not (formula == len(enumerated) == len(lifted)) or enumerated != lifted:
            counterexamples.append(
                f"n={n} p={p}: formula={formula} "
                f"enumerated={enumerated} crt={lifted}"
            )
    return VerifyReport("3.4", not counterexamples, n_max, counterexamples, [])


def _verify_kappa_dichotomy(p: int, n_max: int, jobs: int) -> VerifyReport:
    counterexamples = []
    checked = 0
    allowed = {Permutation.identity(p), reflection_fixing_last(p)}
    qualifying = affine_compatible_involutions(p)
    checked += 1
    if set(qualifying) != allowed:
        counterexamples.append(
            f"p={p}: affine-compatible involutions are "
            f"{[q.to_cycles() for q in qualifying]}"
        )
    for n in range(3, n_max + 1):
        group = DihedralGroup(n)
        if group.order * p > MAX_CENSUS_ARCS:
            raise SizeGuardError(f"{group.name}: census guard exceeded")
        for m in exhaustive_regular_maps(group, p, jobs=jobs):
            checked += 1
            if m.canonical_base_rotation().kappa.perm not in allowed:
                counterexamples.append(_entry_str(m, n))
    return VerifyReport("L3.2", not counterexamples, checked, counterexamples, [])
