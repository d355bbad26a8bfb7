"""Stabilizer chains and the group queries built on them.

A chain fixes a base of points one level at a time.  Level i stores the
orbit of its base point under the subgroup fixing all earlier base points,
together with a transversal of coset representatives; the product of the
orbit sizes is the group order, and factoring a permutation through the
transversals (sifting) decides membership.  Construction is deterministic:
generators, orbit points and Schreier generators are always processed in a
fixed order, so bases, transversals and every derived witness are
reproducible for a given generating sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

from .perm import DegreeMismatchError, Permutation


class CapExceeded(RuntimeError):
    """A configured orbit or enumeration cap was exceeded."""


@dataclass
class ChainLevel:
    point: int
    gens: list[Permutation]
    transversal: dict[int, Permutation]

    def orbit(self) -> list[int]:
        return sorted(self.transversal)


class StabilizerChain:
    def __init__(self, degree: int, levels: list[ChainLevel], strong_gens: tuple[Permutation, ...]):
        self.degree = degree
        self.levels = levels
        self.strong_gens = strong_gens

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(level.point for level in self.levels)

    def order(self) -> int:
        return prod(len(level.transversal) for level in self.levels)

    def sift(self, p: Permutation) -> Permutation:
        """Factor ``p`` through the transversals; the residue is the identity
        exactly when ``p`` belongs to the group."""
        if p.degree != self.degree:
            raise DegreeMismatchError(f"degree mismatch: {p.degree} vs {self.degree}")
        for level in self.levels:
            image = p.images[level.point]
            rep = level.transversal.get(image)
            if rep is None:
                return p
            p = p * rep.inverse()
        return p

    def contains(self, p: Permutation) -> bool:
        return self.sift(p).is_identity()

    def elements(self) -> Iterator[Permutation]:
        """Yield each group element exactly once, one transversal choice per level."""
        ident = Permutation.identity(self.degree)
        levels = self.levels

        def walk(i: int, right: Permutation) -> Iterator[Permutation]:
            if i == len(levels):
                yield right
                return
            transversal = levels[i].transversal
            for point in sorted(transversal):
                yield from walk(i + 1, transversal[point] * right)

        return walk(0, ident)


def build_chain(generators: Iterable[Permutation], degree: int,
                base_prefix: Sequence[int] = ()) -> StabilizerChain:
    """Deterministic Schreier-Sims construction.

    The base starts with ``base_prefix`` (kept even where redundant) and is
    extended with the smallest moved point whenever a strong generator fixes
    every current base point.  Residues of Schreier generators are sifted
    through the deeper levels and installed at every level whose base prefix
    they fix, so each level's generator list is exactly the strong generators
    fixing its prefix; an installation strictly enlarges the fundamental
    orbit at the first base point it moves, which bounds the work.
    """
    gens = []
    for g in generators:
        if g.degree != degree:
            raise DegreeMismatchError(f"generator degree {g.degree}, expected {degree}")
        if not g.is_identity():
            gens.append(g)

    ident = Permutation.identity(degree)
    base: list[int] = []
    gen_lists: list[list[Permutation]] = []
    transversals: list[dict[int, Permutation]] = []
    strong: list[Permutation] = []

    for pt in base_prefix:
        if not 0 <= pt < degree:
            raise ValueError(f"base point {pt} outside 0..{degree - 1}")
        if pt in base:
            continue
        base.append(pt)
        gen_lists.append([])
        transversals.append({pt: ident})

    def rebuild_orbit(i: int) -> None:
        table = {base[i]: ident}
        queue = [base[i]]
        qi = 0
        while qi < len(queue):
            a = queue[qi]
            qi += 1
            rep = table[a]
            for s in gen_lists[i]:
                b = s.images[a]
                if b not in table:
                    table[b] = rep * s
                    queue.append(b)
        transversals[i] = table

    def strip(g: Permutation, start: int) -> tuple[Permutation, int]:
        for j in range(start, len(base)):
            image = g.images[base[j]]
            rep = transversals[j].get(image)
            if rep is None:
                return g, j
            g = g * rep.inverse()
        return g, len(base)

    def install(g: Permutation) -> int:
        # register g at every level whose base prefix it fixes: levels 0..k,
        # where k is the first base level g moves (new base point if none)
        k = 0
        while k < len(base) and g.images[base[k]] == base[k]:
            k += 1
        if k == len(base):
            new_point = min(a for a in range(degree) if g.images[a] != a)
            base.append(new_point)
            gen_lists.append([])
            transversals.append({new_point: ident})
        for j in range(k + 1):
            gen_lists[j].append(g)
        strong.append(g)
        return k

    for g in gens:
        install(g)
    for i in range(len(base)):
        rebuild_orbit(i)

    i = len(base) - 1
    while i >= 0:
        restart = False
        for a in sorted(transversals[i]):
            rep = transversals[i][a]
            for s in gen_lists[i]:
                schreier = rep * s * transversals[i][s.images[a]].inverse()
                if schreier.is_identity():
                    continue
                residue, _ = strip(schreier, i + 1)
                if residue.is_identity():
                    continue
                k = install(residue)
                for j in range(k + 1):
                    rebuild_orbit(j)
                i = k
                restart = True
                break
            if restart:
                break
        if restart:
            continue
        i -= 1

    levels = [ChainLevel(base[i], gen_lists[i], transversals[i]) for i in range(len(base))]
    return StabilizerChain(degree, levels, tuple(strong))


class PermutationGroup:
    """A permutation group given by generators, with cached chain-backed queries.

    Instances are immutable after construction; chains, the order, the
    transitivity degree and minimal-degree results are lazily computed and
    cached, and every query is safe to share between readers.
    """

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None,
                 label: str = "G"):
        gens = tuple(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree is required for an empty generating set")
            degree = gens[0].degree
        if degree < 1:
            raise ValueError("degree must be at least 1")
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatchError(f"generator degree {g.degree}, expected {degree}")
        self.degree = degree
        self.generators = gens
        self.label = label
        self._chains: dict[tuple[int, ...], StabilizerChain] = {}
        self._tdeg: int | None = None
        self.mindeg_cache: dict[str, object] = {}

    def __repr__(self) -> str:
        return f"PermutationGroup({self.label!r}, degree={self.degree}, gens={len(self.generators)})"

    def chain(self, base_prefix: Sequence[int] = ()) -> StabilizerChain:
        key = tuple(base_prefix)
        chain = self._chains.get(key)
        if chain is None:
            chain = build_chain(self.generators, self.degree, key)
            self._chains[key] = chain
        return chain

    @property
    def order(self) -> int:
        return self.chain().order()

    def contains(self, p: Permutation) -> bool:
        return self.chain().contains(p)

    def elements(self) -> Iterator[Permutation]:
        return self.chain().elements()

    def random_element(self, rng) -> Permutation:
        """A uniform random element, from one transversal choice per level."""
        g = Permutation.identity(self.degree)
        for level in self.chain().levels:
            point = rng.choice(sorted(level.transversal))
            g = level.transversal[point] * g
        return g

    def orbit(self, point: int) -> frozenset[int]:
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} outside 0..{self.degree - 1}")
        seen = {point}
        queue = [point]
        qi = 0
        while qi < len(queue):
            a = queue[qi]
            qi += 1
            for g in self.generators:
                b = g.images[a]
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return frozenset(seen)

    def orbit_partition(self) -> list[frozenset[int]]:
        out = []
        remaining = set(range(self.degree))
        while remaining:
            orb = self.orbit(min(remaining))
            out.append(orb)
            remaining -= orb
        return out

    def pointwise_stabilizer(self, points: Iterable[int]) -> "PermutationGroup":
        """The subgroup fixing every listed point, via a chain rebased on them."""
        pts = tuple(sorted(set(points)))
        if not pts:
            return self
        for pt in pts:
            if not 0 <= pt < self.degree:
                raise ValueError(f"point {pt} outside 0..{self.degree - 1}")
        chain = self.chain(pts)
        sub = [g for g in chain.strong_gens
               if all(g.images[p] == p for p in pts)]
        return PermutationGroup(sub, self.degree, label=f"{self.label}_stab")

    def transporter(self, src: Sequence[int], dst: Sequence[int]) -> Permutation | None:
        """An element mapping src[i] to dst[i] for all i, or None.

        The set of solutions is a coset, so walking the transversals of a
        chain based on ``src`` decides existence level by level without
        backtracking; the first representative at each level makes the
        answer deterministic.
        """
        src = tuple(src)
        dst = tuple(dst)
        if len(src) != len(dst):
            raise ValueError("transporter tuples must have equal length")
        if len(set(src)) != len(src) or len(set(dst)) != len(dst):
            raise ValueError("transporter tuples must have distinct entries")
        for pt in (*src, *dst):
            if not 0 <= pt < self.degree:
                raise ValueError(f"point {pt} outside 0..{self.degree - 1}")
        acc = Permutation.identity(self.degree)
        acc_inv = acc
        chain = self.chain(src)
        for i, target in enumerate(dst):
            level = chain.levels[i]
            needed = acc_inv.images[target]
            rep = level.transversal.get(needed)
            if rep is None:
                return None
            acc = rep * acc
            acc_inv = acc_inv * rep.inverse()
        return acc

    def transitivity_degree(self) -> int:
        """Largest t with the group transitive on ordered t-tuples of distinct
        points, read off a chain based on 0, 1, 2, ...: the prefix length over
        which every fundamental orbit is the whole remaining point set."""
        if self._tdeg is None:
            chain = self.chain(tuple(range(self.degree)))
            t = 0
            for i in range(self.degree):
                if len(chain.levels[i].transversal) == self.degree - i:
                    t += 1
                else:
                    break
            self._tdeg = t
        return self._tdeg

    def contains_alternating(self) -> bool:
        """Whether the group contains every even permutation of its points.

        Probe: order at least n!/2 plus membership of a 3-cycle (the only
        subgroups that large are the full symmetric and alternating groups).
        """
        n = self.degree
        if n <= 2:
            return True
        if self.order < factorial(n) // 2:
            return False
        probe = Permutation([1, 2, 0] + list(range(3, n)))
        return self.contains(probe)


def conjugation_closure(gens: Sequence[Permutation], seed: Permutation,
                        cap: int = 10_000_000) -> tuple[Permutation, ...]:
    """Close ``seed`` under conjugation by the given generators (breadth first).

    Raises CapExceeded when the orbit would exceed ``cap`` elements.
    """
    for g in gens:
        if g.degree != seed.degree:
            raise DegreeMismatchError(f"degree mismatch: {g.degree} vs {seed.degree}")
    seen = {seed}
    out = [seed]
    qi = 0
    while qi < len(out):
        x = out[qi]
        qi += 1
        for g in gens:
            y = x.conjugate(g)
            if y not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(f"conjugation orbit exceeds cap {cap}")
                seen.add(y)
                out.append(y)
    return tuple(out)


@dataclass(frozen=True)
class ConjugateOrbit:
    """The set {g^-1 u g : g in H} for a point stabilizer H, with the fixed
    set used to form H and the seed element u."""

    base: Permutation
    delta: frozenset[int]
    elements: tuple[Permutation, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def member_set(self) -> frozenset[Permutation]:
        return frozenset(self.elements)


def conjugate_orbit(stab: PermutationGroup, u: Permutation,
                    delta: Iterable[int] = (), cap: int = 10_000_000) -> ConjugateOrbit:
    if u.degree != stab.degree:
        raise DegreeMismatchError(f"degree mismatch: {u.degree} vs {stab.degree}")
    return ConjugateOrbit(u, frozenset(delta),
                          conjugation_closure(stab.generators, u, cap))
