"""Picard lattices of del Pezzo surfaces (plane blown up at r general points).

A class ``d*H - sum(m_j * E_j)`` is stored as the coefficient tuple
``(d, -m_1, ..., -m_r)`` in the basis ``(H, E_1, ..., E_r)``; the
intersection form is ``diag(+1, -1, ..., -1)``.  Only the numerics of
generality are modeled (the lattice and its (-1)-class combinatorics), which
is all the downstream cone computations consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .cones import Budget, DimensionMismatchError, PolyCone, cone_from_rays, dual

MAX_POINTS = 8
_DEGREE_HARD_CAP = 10  # belt and braces on top of the Cauchy-Schwarz bound


@dataclass(frozen=True)
class DelPezzoLattice:
    r: int

    def __post_init__(self):
        if not (0 <= self.r <= MAX_POINTS):
            raise ValueError(f"point count must be in [0, {MAX_POINTS}], got {self.r}")

    @property
    def rank(self) -> int:
        return 1 + self.r

    @property
    def canonical_class(self) -> tuple[int, ...]:
        return (-3,) + (1,) * self.r

    def basis_names(self) -> tuple[str, ...]:
        return ("H",) + tuple(f"E{j}" for j in range(1, self.r + 1))


def build(r: int) -> DelPezzoLattice:
    return DelPezzoLattice(r)


def pair(L: DelPezzoLattice, u: Sequence, v: Sequence):
    """Intersection pairing u.v under diag(+1, -1, ..., -1)."""
    if len(u) != L.rank or len(v) != L.rank:
        raise DimensionMismatchError(
            f"classes must have length {L.rank}, got {len(u)} and {len(v)}")
    return u[0] * v[0] - sum(a * b for a, b in zip(u[1:], v[1:]))


def minus_one_classes(L: DelPezzoLattice) -> tuple[tuple[int, ...], ...]:
    """All classes D with D.D = -1 and D.K = -1, sorted.

    Writing D = d*H - sum(m_j E_j), the two conditions read
    ``sum(m_j) = 3d - 1`` and ``sum(m_j^2) = d^2 + 1``; Cauchy-Schwarz then
    bounds the degree by ``(3d-1)^2 <= r (d^2+1)``, and each multiplicity
    lies in [-1, d].  The search is an exhaustive DFS over multiplicities
    with partial-sum pruning.
    """
    r = L.r
    out: list[tuple[int, ...]] = []
    if r == 0:
        return ()
    d = 0
    while (3 * d - 1) ** 2 <= r * (d * d + 1) and d <= _DEGREE_HARD_CAP:
        target_sum = 3 * d - 1
        target_sq = d * d + 1
        ms = [0] * r

        def dfs(k: int, rem_sum: int, rem_sq: int):
            if k == r:
                if rem_sum == 0 and rem_sq == 0:
                    out.append((d,) + tuple(-m for m in ms))
                return
            slots = r - k - 1
            for m in range(-1, d + 1):
                s = rem_sum - m
                q = rem_sq - m * m
                if q < 0:
                    if m >= 1:
                        break  # m^2 only grows from here
                    continue
                if not (-slots <= s <= slots * d):
                    continue
                if slots == 0:
                    if s != 0 or q != 0:
                        continue
                elif s * s > slots * q:
                    continue
                ms[k] = m
                dfs(k + 1, s, q)
            ms[k] = 0

        dfs(0, target_sum, target_sq)
        d += 1
    return tuple(sorted(out))


def ne_generators(L: DelPezzoLattice) -> tuple[tuple[int, ...], ...]:
    """Generators of the cone of curves.

    r = 0: the line class H.  r = 1: the exceptional curve and the fiber
    class H - E1 (self-intersection 0).  r >= 2: the (-1)-classes.
    """
    if L.r == 0:
        return ((1,),)
    if L.r == 1:
        return ((0, 1), (1, -1))
    return minus_one_classes(L)


def _pairing_row(L: DelPezzoLattice, c: Sequence[int]) -> tuple[int, ...]:
    """The functional D -> D.c as a standard-dot row (negate E-coords)."""
    return (c[0],) + tuple(-x for x in c[1:])


def nef_cone(L: DelPezzoLattice, budget: Optional[Budget] = None) -> PolyCone:
    rows = [_pairing_row(L, c) for c in ne_generators(L)]
    return dual(cone_from_rays(L.rank, rows, budget=budget), budget=budget)


def is_nef(L: DelPezzoLattice, D: Sequence) -> bool:
    return all(pair(L, D, c) >= 0 for c in ne_generators(L))


def is_ample(L: DelPezzoLattice, D: Sequence) -> bool:
    return all(pair(L, D, c) > 0 for c in ne_generators(L))
