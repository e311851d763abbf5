"""Finite permutation groups: transitivity, closure, derived series."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidPermutation

__all__ = ["Permutation", "GroupReport", "group_analyze", "closure", "derived_series_solvable"]


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{1..m}``; ``images[i-1]`` is the image of ``i``."""

    images: tuple

    def __init__(self, images: Iterable[int]):
        imgs = tuple(int(x) for x in images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise InvalidPermutation(f"not a permutation of 1..{len(imgs)}: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(range(1, m + 1))

    @classmethod
    def from_cycles(cls, m: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        imgs = list(range(1, m + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                imgs[a - 1] = b
        return cls(imgs)

    @property
    def m(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def then(self, other: "Permutation") -> "Permutation":
        """Apply ``self`` first, then ``other``."""
        return Permutation(other.images[x - 1] for x in self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.m
        for i, x in enumerate(self.images, start=1):
            inv[x - 1] = i
        return Permutation(inv)

    def cycles(self) -> list:
        """Non-trivial cycles, each starting at its smallest element."""
        seen = set()
        out = []
        for start in range(1, self.m + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            if len(cyc) > 1:
                out.append(cyc)
        return out

    def cycle_type(self) -> tuple:
        """Cycle lengths including fixed points, descending."""
        lens = [len(c) for c in self.cycles()]
        fixed = self.m - sum(lens)
        return tuple(sorted(lens, reverse=True) + [1] * fixed)

    @property
    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, start=1))

    @property
    def is_transposition(self) -> bool:
        cyc = self.cycles()
        return len(cyc) == 1 and len(cyc[0]) == 2

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def to_json(self) -> dict:
        return {"cycles": str(self), "images": list(self.images)}


# Internally group elements are 0-based tuples; composition is "a then b".

def _mul(a: tuple, b: tuple) -> tuple:
    return tuple(b[x] for x in a)


def _inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def closure(gens: Sequence[tuple], m: int, cap: int | None = None) -> set | None:
    """All elements of the group generated by ``gens``; ``None`` past ``cap``."""
    ident = tuple(range(m))
    elems = {ident}
    queue = deque([ident])
    gens = [g for g in set(gens) if g != ident]
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _mul(x, g)
            if y not in elems:
                elems.add(y)
                if cap is not None and len(elems) > cap:
                    return None
                queue.append(y)
    return elems


def _derived(gens: list, elems: set, m: int) -> tuple:
    """Generators and elements of the commutator subgroup."""
    comms = []
    for a in gens:
        for b in gens:
            c = _mul(_mul(_mul(_inv(a), _inv(b)), a), b)
            if c != tuple(range(m)):
                comms.append(c)
    comms = sorted(set(comms))
    sub = closure(comms, m)
    changed = True
    while changed:
        changed = False
        for g in gens:
            gi = _inv(g)
            for c in list(comms):
                conj = _mul(_mul(gi, c), g)
                if conj not in sub:
                    comms.append(conj)
                    sub = closure(comms, m)
                    changed = True
    return comms, sub


def derived_series_solvable(gens: Sequence[tuple], elems: set, m: int) -> bool:
    gens = list(gens)
    size = len(elems)
    while size > 1:
        gens, elems = _derived(gens, elems, m)
        if len(elems) == size:
            return False
        size = len(elems)
    return True


@dataclass
class GroupReport:
    m: int
    generators: list
    is_transitive: bool
    all_transpositions: bool
    order: int | str
    equals_symmetric: bool
    solvable: bool | str
    verdict: str
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "generators": [g.to_json() for g in self.generators],
            "is_transitive": self.is_transitive,
            "all_transpositions": self.all_transpositions,
            "order": self.order,
            "equals_symmetric": self.equals_symmetric,
            "solvable": self.solvable,
            "verdict": self.verdict,
            "notes": list(self.notes),
        }


_SOLVABILITY_NOTE = ("solvability is decided by the derived series of the finite group "
                     "generated by the loop permutations")


def _transitive(gens: Sequence[Permutation], m: int) -> bool:
    parent = list(range(m + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i, x in enumerate(g.images, start=1):
            ra, rb = find(i), find(x)
            if ra != rb:
                parent[ra] = rb
    return len({find(i) for i in range(1, m + 1)}) == 1


def group_analyze(generators: Sequence[Permutation], m: int,
                  order_cap: int = 100_000) -> GroupReport:
    gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
    for g in gens:
        if g.m != m:
            raise InvalidPermutation(f"generator {g} acts on {g.m} points, expected {m}")
    transitive = _transitive(gens, m)
    all_tr = bool(gens) and all(g.is_transposition for g in gens)
    equals_sym = transitive and all_tr
    raw = [tuple(x - 1 for x in g.images) for g in gens]
    elems = closure(raw, m, order_cap)
    if elems is None:
        order: int | str = "exceeds cap"
        solvable: bool | str = "order cap exceeded"
    else:
        order = len(elems)
        solvable = derived_series_solvable(raw, elems, m)
    verdict = "SymmetricGroup" if equals_sym else "Subgroup"
    notes = [_SOLVABILITY_NOTE]
    if isinstance(order, int) and order == math.factorial(m) and not equals_sym:
        notes.append("closure has order m! although the generators are not all transpositions")
    return GroupReport(m, gens, transitive, all_tr, order, equals_sym, solvable, verdict, notes)
