"""Relative numerics of a two-step blowup X -> X' -> X''.

The first blowup has center A'' of codimension a, the second the strict
transform of B'' (codimension b); the centers meet in Z'' with components of
codimension a + b - c_i.  Everything the classifier needs is carried by the
triple (a, b, {c_i}) plus the two inclusion flags.

Divisor/curve conventions: E and F are the two exceptional divisors (first
and second step), e and f the standard fiber curves; the intersection table
between them is the 2x2 matrix returned by :func:`relative_pairing`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .cones import EqualityVerdict, PolyCone, cone_from_rays, cones_equal, dual


@dataclass(frozen=True)
class ConstructionParams:
    """Numerical data of the two centers and their intersection.

    ``components`` lists the defect c_i of each component of the center
    intersection (codimension a + b - c_i).  ``a_subset_b`` must mirror the
    presence of a component with c_i = b; ``b_subset_a`` is always rejected
    (the construction assumes the second center is not contained in the
    first).
    """

    a: int
    b: int
    components: tuple[int, ...]
    a_subset_b: bool = False
    b_subset_a: bool = False

    def __post_init__(self):
        if self.a < 2 or self.b < 2:
            raise ValueError("both codimensions must be at least 2")
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("at least one intersection component is required")
        lo, hi = 1, min(self.a, self.b)
        for c in comps:
            if not (lo <= c <= hi):
                raise ValueError(
                    f"component defect {c} outside [1, min(a, b)] = [{lo}, {hi}]")
        if self.b_subset_a:
            raise ValueError("the second center may not contain the first "
                             "(b_subset_a must be false)")
        has_cb = any(c == self.b for c in comps)
        if self.a_subset_b != has_cb:
            raise ValueError(
                "a_subset_b flag inconsistent with components: it must be set "
                "exactly when some c_i equals b")


@dataclass(frozen=True)
class ContractionReport:
    is_small: bool
    is_K_extremal: bool
    K_dot_e: int
    exceptional_component_codims: tuple[int, ...]
    target_description: str
    birational_modification: str  # "flip" | "flop" | "none"


@dataclass(frozen=True)
class DegreeMultiset:
    """Multiset of line-bundle degrees: map degree -> positive multiplicity."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        cleaned = tuple(sorted((d, m) for d, m in self.entries if m != 0))
        for _, m in cleaned:
            if m < 0:
                raise ValueError("multiplicities must be positive")
        if len({d for d, _ in cleaned}) != len(cleaned):
            raise ValueError("duplicate degrees in multiset")
        object.__setattr__(self, "entries", cleaned)

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> "DegreeMultiset":
        return cls(tuple(d.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.entries)

    def shifted(self, k: int) -> "DegreeMultiset":
        return DegreeMultiset(tuple((d + k, m) for d, m in self.entries))

    def min_degree(self) -> int:
        if not self.entries:
            raise ValueError("empty multiset has no minimum degree")
        return self.entries[0][0]


@dataclass(frozen=True)
class FiberStructure:
    ambient_dim: int        # the fiber component W_z sits over P^(ambient_dim)
    center_codim: int       # codim of the blown-up linear subspace in it
    bundle_fiber_dim: int   # F_z is a P^(bundle_fiber_dim)-bundle
    bundle_base_dim: int    # ... over P^(bundle_base_dim)
    component_count: int
    w_description: str = field(compare=False)
    f_description: str = field(compare=False)


@dataclass(frozen=True)
class RelativeCones:
    nef: PolyCone
    ne: PolyCone
    duality_verdict: EqualityVerdict


def relative_pairing() -> tuple[tuple[int, int], tuple[int, int]]:
    """Intersection table: rows (E, F) against columns (e, f)."""
    return ((-1, 0), (1, -1))


def relative_cones() -> RelativeCones:
    """Relative Nef and NE cones over the base, with verified duality.

    Nef is generated by -E and -(E+F) (coordinates in the (E, F) basis);
    NE by the two curves e, f (their own coordinates).  The verdict records
    that each is exactly the dual of the other under the pairing table —
    recomputed, not assumed.
    """
    m = relative_pairing()
    nef_claimed = cone_from_rays(2, [(-1, 0), (-1, -1)])
    ne_claimed = cone_from_rays(2, [(1, 0), (0, 1)])
    # functional of curve c on divisor space: D . c = sum_i D_i * m[i][c]
    curve_rows = [tuple(m[i][j] for i in range(2)) for j in range(2)]
    nef_computed = dual(cone_from_rays(2, curve_rows))
    v1 = cones_equal(nef_computed, nef_claimed)
    # functional of divisor D on curve space, for each claimed nef generator
    div_rows = [tuple(sum(g[i] * m[i][j] for i in range(2)) for j in range(2))
                for g in nef_claimed.rays]
    ne_computed = dual(cone_from_rays(2, div_rows))
    v2 = cones_equal(ne_computed, ne_claimed)
    verdict = v1 if not v1.equal else v2
    return RelativeCones(nef_claimed, ne_claimed, verdict)


def k_degree(params: ConstructionParams) -> tuple[int, int]:
    """(K.e, K.f) from K = (pullback) + (a-1)E + (b-1)F and the table."""
    a, b = params.a, params.b
    m = relative_pairing()
    ke = (a - 1) * m[0][0] + (b - 1) * m[1][0]
    kf = (a - 1) * m[0][1] + (b - 1) * m[1][1]
    assert (ke, kf) == (b - a, -(b - 1))
    return ke, kf


TARGET_DESCRIPTION = "blowup of X'' along A'' ∪ B''"


def classify(params: ConstructionParams) -> ContractionReport:
    """Classify the contraction of the curve class e.

    Small exactly when every intersection component has defect c_i < b
    (otherwise the component with c_i = b contributes a divisor); K-extremal
    exactly when a > b; a small K-extremal contraction admits a flip, a small
    K-trivial one a flop.
    """
    ke, _ = k_degree(params)
    small = max(params.components) < params.b
    k_extremal = params.a > params.b
    if small and k_extremal:
        modification = "flip"
    elif small and params.a == params.b:
        modification = "flop"
    else:
        modification = "none"
    return ContractionReport(
        is_small=small,
        is_K_extremal=k_extremal,
        K_dot_e=ke,
        exceptional_component_codims=tuple(
            params.b - c + 1 for c in params.components),
        target_description=TARGET_DESCRIPTION,
        birational_modification=modification,
    )


# ---------------------------------------------------------------------------
# conormal-bundle degree splittings
# ---------------------------------------------------------------------------

def conormal_linear(n: int, c: int) -> DegreeMultiset:
    """Conormal of a linear subspace of codim c in P^n: O(-1)^c."""
    if not (0 <= c <= n):
        raise ValueError(f"codimension must satisfy 0 <= c <= {n}, got {c}")
    return DegreeMultiset(((-1, c),))


def conormal_fiber(dimA: int) -> DegreeMultiset:
    """Conormal of a blowup fiber P^(k) inside the exceptional locus over a
    center of dimension dimA: O(1) + O^dimA."""
    if dimA < 0:
        raise ValueError("center dimension must be nonnegative")
    return DegreeMultiset(((1, 1), (0, dimA)))


def _check_abc(a: int, b: int, c: int) -> None:
    if a < 2 or b < 2:
        raise ValueError("both codimensions must be at least 2")
    if not (1 <= c <= min(a, b)):
        raise ValueError(
            f"defect must satisfy 1 <= c <= min(a, b) = {min(a, b)}, got {c}")


def conormal_restricted(a: int, b: int, c: int) -> DegreeMultiset:
    """Degrees of the second center's conormal restricted to a first-step
    fiber line: O^(b-c) + O(-1)^c."""
    _check_abc(a, b, c)
    return DegreeMultiset(((0, b - c), (-1, c)))


def fiber_structure(a: int, b: int, c: int) -> FiberStructure:
    """Numeric shape of the fiber over a point of an intersection component
    with defect c."""
    _check_abc(a, b, c)
    base_dim = a - 1 - c
    return FiberStructure(
        ambient_dim=a - 1,
        center_codim=c,
        bundle_fiber_dim=b - 1,
        bundle_base_dim=base_dim,
        component_count=1 if b == c else 2,
        w_description=(
            f"blowup of P^{a - 1} along a linear subspace of codim {c} "
            f"(dim {base_dim})"),
        f_description=f"P^{b - 1}-bundle over P^{base_dim}",
    )


def minus_EF_nef_on_fiber(a: int, b: int, c: int) -> bool:
    """Nefness of -(E+F) on the fiber component: the twist by +1 of the
    restricted conormal must have all degrees >= 0."""
    twisted = conormal_restricted(a, b, c).shifted(1)
    return twisted.min_degree() >= 0
