"""Exact rational polyhedral cones with certificates.

Conventions
-----------
* A *ray* is a primitive integer vector (cleared denominators, gcd 1); the
  canonical form of a cone is its set of extremal rays, each primitive,
  sorted lexicographically.
* ``dual(C) = {u : <u, g> >= 0 for every generator g}`` with the standard dot
  product.  Pairings against a non-standard bilinear form are handled by the
  callers (they transform generators before dualizing).
* Every answer that is not a plain boolean carries a certificate that can be
  re-checked independently: a nonnegative combination, a separating
  functional, or an infeasibility combination.

All arithmetic uses Python ints and ``fractions.Fraction``; no floats.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Union

Number = Union[int, Fraction]
IntVector = tuple[int, ...]
Vector = tuple[Fraction, ...]


class ConeError(Exception):
    """Base class for cone-engine failures."""


class DimensionMismatchError(ConeError):
    """A vector's length does not match the ambient dimension."""


class LinealityError(ConeError):
    """A cone that must be pointed (or span the space, for dualization)
    fails to be; ``witness`` explains why.

    * from ``cone_from_rays``: a tuple ``(coefficients, rays)`` giving a
      nonzero nonnegative combination of the input rays equal to zero;
    * from ``dual``: a nonzero vector orthogonal to every generator (so the
      dual cone would contain the line it spans).
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceededError(ConeError):
    """Dualization ran out of its ray or time budget.

    This is a resource report, never a wrong answer: no partial cone is
    returned.
    """

    def __init__(self, message: str, kind: str, rays_so_far: int, constraints_done: int):
        super().__init__(message)
        self.kind = kind
        self.rays_so_far = rays_so_far
        self.constraints_done = constraints_done


@dataclass(frozen=True)
class Budget:
    """Optional resource limits for dualization."""

    max_rays: Optional[int] = None
    max_seconds: Optional[float] = None


# ---------------------------------------------------------------------------
# vector helpers
# ---------------------------------------------------------------------------

def fvec(entries: Iterable[Number]) -> Vector:
    return tuple(Fraction(x) for x in entries)


def dot(u: Sequence[Number], v: Sequence[Number]):
    """Standard dot product (exact)."""
    if len(u) != len(v):
        raise DimensionMismatchError(f"dot: lengths {len(u)} and {len(v)} differ")
    return sum(a * b for a, b in zip(u, v))


def _idot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence[Number]) -> IntVector:
    """Scale ``v`` by a positive rational to primitive integer form.

    The zero vector maps to itself.  Direction is preserved (the scale factor
    is always positive), so rays are never flipped.
    """
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        return tuple(0 for _ in fr)
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)


def is_zero(v: Sequence[Number]) -> bool:
    return all(x == 0 for x in v)


# ---------------------------------------------------------------------------
# cones
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyCone:
    """A pointed rational polyhedral cone in canonical V-form.

    ``rays`` are the extremal rays: primitive integer vectors sorted
    lexicographically.  ``inequalities``, when present, is a valid
    H-description (every ``u`` with ``u . x >= 0`` on the cone); ``dual``
    fills it in with the primal generators.
    """

    dim: int
    rays: tuple[IntVector, ...]
    inequalities: Optional[tuple[IntVector, ...]] = None
    canonical: bool = True

    def __contains__(self, v) -> bool:
        return contains(self, v).member


def cone_from_rays(dim: int, rays: Iterable[Sequence[Number]],
                   budget: Optional[Budget] = None) -> PolyCone:
    """Canonicalize a generating set: drop zeros, rescale to primitive form,
    remove redundant generators, sort.

    Raises :class:`DimensionMismatchError` if some ray has the wrong length
    and :class:`LinealityError` if the generated cone contains a line (the
    canonical extremal-ray form then does not exist).  A time budget, when
    given, bounds the extremality sweep (each pruning step is an exact LP).
    """
    deadline = None
    if budget is not None and budget.max_seconds is not None:
        deadline = time.monotonic() + budget.max_seconds
    cleaned: list[IntVector] = []
    seen = set()
    for i, r in enumerate(rays):
        rr = tuple(r)
        if len(rr) != dim:
            raise DimensionMismatchError(
                f"ray #{i} has length {len(rr)}, expected {dim}")
        p = primitive(rr)
        if is_zero(p) or p in seen:
            continue
        seen.add(p)
        cleaned.append(p)
    if not cleaned:
        return PolyCone(dim, ())

    # Pointedness: a nonzero nonnegative combination summing to zero exists
    # iff the cone contains a line.  Solve  sum l_i g_i = 0, sum l_i = 1.
    columns = [g + (1,) for g in cleaned]
    target = tuple([0] * dim) + (1,)
    feasible, lam, _ = _phase1_simplex(columns, target)
    if feasible:
        nz = [(c, g) for c, g in zip(lam, cleaned) if c != 0]
        raise LinealityError(
            "input rays generate a non-pointed cone "
            "(a nonzero nonnegative combination vanishes)",
            witness=(tuple(lam), tuple(cleaned)))

    # Extremality: for a pointed cone a generator is redundant exactly when
    # it lies in the cone of the others, and removing a redundant generator
    # never changes anyone else's status — one sweep suffices.
    cleaned.sort()
    keep = list(cleaned)
    i = 0
    while i < len(keep):
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceededError(
                f"time budget exhausted pruning generator {i} of {len(keep)}",
                kind="seconds", rays_so_far=len(keep), constraints_done=i)
        others = keep[:i] + keep[i + 1:]
        if others:
            member, _, _ = _phase1_simplex(others, keep[i])
            if member:
                keep.pop(i)
                continue
        i += 1
    return PolyCone(dim, tuple(keep))


@dataclass(frozen=True)
class Membership:
    """Certificate-carrying membership verdict.

    ``combination`` (member): per-ray nonnegative coefficients with
    ``sum c_j * ray_j == v``.  ``separator`` (non-member): a functional ``u``
    with ``u . ray >= 0`` for every ray and ``u . v < 0``.
    """

    member: bool
    combination: Optional[Vector] = None
    separator: Optional[Vector] = None


def contains(cone: PolyCone, v: Sequence[Number]) -> Membership:
    """Decide ``v in cone`` with a checkable certificate either way."""
    if len(v) != cone.dim:
        raise DimensionMismatchError(
            f"vector has length {len(v)}, cone dimension is {cone.dim}")
    vv = fvec(v)
    feasible, lam, y = _phase1_simplex(cone.rays, vv)
    if feasible:
        return Membership(True, combination=tuple(lam))
    u = tuple(-yi for yi in y)
    # Validate the separator exactly before handing it out.
    assert all(dot(u, g) >= 0 for g in cone.rays)
    assert dot(u, vv) < 0
    return Membership(False, separator=u)


@dataclass(frozen=True)
class EqualityVerdict:
    equal: bool
    witness_ray: Optional[IntVector] = None
    witness_side: Optional[str] = None  # "first-not-in-second" | "second-not-in-first"
    separator: Optional[Vector] = None


def cones_equal(a: PolyCone, b: PolyCone) -> EqualityVerdict:
    """Mutual containment of generators, with a witness ray on failure."""
    if a.dim != b.dim:
        raise DimensionMismatchError(
            f"cones live in dimensions {a.dim} and {b.dim}")
    for g in a.rays:
        m = contains(b, g)
        if not m.member:
            return EqualityVerdict(False, witness_ray=g,
                                   witness_side="first-not-in-second",
                                   separator=m.separator)
    for g in b.rays:
        m = contains(a, g)
        if not m.member:
            return EqualityVerdict(False, witness_ray=g,
                                   witness_side="second-not-in-first",
                                   separator=m.separator)
    return EqualityVerdict(True)


# ---------------------------------------------------------------------------
# dualization (double description)
# ---------------------------------------------------------------------------

def dual(cone: PolyCone, budget: Optional[Budget] = None) -> PolyCone:
    """Dual cone ``{u : <u, g> >= 0 for all generators g}``.

    Requires the generators to span the ambient space (otherwise the dual
    contains a line and has no canonical ray form — :class:`LinealityError`
    with an orthogonal witness vector).  The input should be canonical;
    redundant generators are tolerated (they only add redundant constraints).

    The result is deterministic: constraints are inserted in a fixed order
    (a greedy lexicographic basis first, the rest in lexicographic order) and
    the output is canonically sorted.  With a :class:`Budget`, exhaustion
    raises :class:`BudgetExceededError` — never a truncated answer.
    """
    d = cone.dim
    if d == 0:
        return PolyCone(0, (), inequalities=())
    rows = [tuple(r) for r in cone.rays]
    if not rows:
        raise LinealityError(
            "dual of the trivial cone is the whole space",
            witness=tuple([1] + [0] * (d - 1)))
    kern = _kernel_vector(rows, d)
    if kern is not None:
        raise LinealityError(
            "generators do not span the space; the dual contains a line",
            witness=kern)

    deadline = None
    max_rays = None
    if budget is not None:
        if budget.max_seconds is not None:
            deadline = time.monotonic() + budget.max_seconds
        max_rays = budget.max_rays

    basis_idx = _greedy_basis(rows, d)
    rest_idx = [i for i in range(len(rows)) if i not in set(basis_idx)]
    B = [rows[i] for i in basis_idx]
    rays_cur: list[IntVector] = _scaled_inverse_columns(B)
    # masks[k] bit t set  <=>  processed constraint #t vanishes on ray k
    masks: list[int] = []
    for k in range(d):
        m = 0
        for t in range(d):
            if t != k:
                m |= 1 << t
        masks.append(m)

    processed = d
    for idx in rest_idx:
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceededError(
                f"time budget exhausted after {processed} constraints",
                kind="seconds", rays_so_far=len(rays_cur),
                constraints_done=processed)
        a = rows[idx]
        svals = [_idot(a, r) for r in rays_cur]
        neg = [k for k, s in enumerate(svals) if s < 0]
        if not neg:
            bit = 1 << processed
            for k, s in enumerate(svals):
                if s == 0:
                    masks[k] |= bit
            processed += 1
            continue
        pos = [k for k, s in enumerate(svals) if s > 0]
        zer = [k for k, s in enumerate(svals) if s == 0]
        bit = 1 << processed
        new_rays: list[IntVector] = []
        new_masks: list[int] = []
        pair_count = 0
        for kp in pos:
            mp = masks[kp]
            sp = svals[kp]
            p = rays_cur[kp]
            for kn in neg:
                pair_count += 1
                if deadline is not None and pair_count % 1024 == 0 \
                        and time.monotonic() > deadline:
                    raise BudgetExceededError(
                        f"time budget exhausted inside constraint {processed}",
                        kind="seconds", rays_so_far=len(rays_cur),
                        constraints_done=processed)
                z = mp & masks[kn]
                if _popcount(z) < d - 2:
                    continue
                if not _combinatorially_adjacent(z, kp, kn, masks):
                    continue
                sn = svals[kn]
                n = rays_cur[kn]
                vec = tuple(sp * n[i] - sn * p[i] for i in range(d))
                new_rays.append(_reduce_int(vec))
                new_masks.append(z | bit)
        next_rays = [rays_cur[k] for k in pos] + [rays_cur[k] for k in zer] + new_rays
        next_masks = ([masks[k] for k in pos]
                      + [masks[k] | bit for k in zer]
                      + new_masks)
        if max_rays is not None and len(next_rays) > max_rays:
            raise BudgetExceededError(
                f"ray budget exhausted at constraint {processed} "
                f"({len(next_rays)} rays)",
                kind="rays", rays_so_far=len(next_rays),
                constraints_done=processed)
        rays_cur = next_rays
        masks = next_masks
        processed += 1

    out = sorted(set(rays_cur))
    # Cheap exactness guard: every output ray must satisfy every constraint.
    for r in out:
        for row in rows:
            if _idot(row, r) < 0:
                raise AssertionError("double description produced an invalid ray")
    return PolyCone(d, tuple(out), inequalities=tuple(rows))


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _combinatorially_adjacent(z: int, kp: int, kn: int, masks: list[int]) -> bool:
    """Rays kp, kn are adjacent iff no third ray's zero set contains z."""
    for k, m in enumerate(masks):
        if k == kp or k == kn:
            continue
        if m & z == z:
            return False
    return True


def _reduce_int(vec: Sequence[int]) -> IntVector:
    g = 0
    for x in vec:
        g = gcd(g, abs(x))
    if g <= 1:
        return tuple(vec)
    return tuple(x // g for x in vec)


def _greedy_basis(rows: Sequence[IntVector], d: int) -> list[int]:
    """Indices of the first maximal independent subset, scanning in order."""
    chosen: list[int] = []
    echelon: list[list[Fraction]] = []
    pivots: list[int] = []
    for i, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for e, p in zip(echelon, pivots):
            if v[p] != 0:
                c = v[p] / e[p]
                v = [a - c * b for a, b in zip(v, e)]
        piv = next((j for j, x in enumerate(v) if x != 0), None)
        if piv is None:
            continue
        echelon.append(v)
        pivots.append(piv)
        chosen.append(i)
        if len(chosen) == d:
            break
    return chosen


def _kernel_vector(rows: Sequence[IntVector], d: int) -> Optional[IntVector]:
    """A primitive nonzero z with row . z = 0 for all rows, or None."""
    echelon: list[list[Fraction]] = []
    pivots: list[int] = []
    for row in rows:
        v = [Fraction(x) for x in row]
        for e, p in zip(echelon, pivots):
            if v[p] != 0:
                c = v[p] / e[p]
                v = [a - c * b for a, b in zip(v, e)]
        piv = next((j for j, x in enumerate(v) if x != 0), None)
        if piv is not None:
            echelon.append(v)
            pivots.append(piv)
            if len(pivots) == d:
                return None
    free = next(j for j in range(d) if j not in pivots)
    z = [Fraction(0)] * d
    z[free] = Fraction(1)
    # Back-substitute through the echelon rows (any order works; each pivot
    # appears in exactly one stored row once we normalize below).
    for e, p in sorted(zip(echelon, pivots), key=lambda t: -t[1]):
        z[p] = -sum(e[j] * z[j] for j in range(d) if j != p) / e[p]
    out = primitive(z)
    assert all(_idot(row, out) == 0 for row in rows)
    return out


def _scaled_inverse_columns(B: Sequence[IntVector]) -> list[IntVector]:
    """Columns of ``|det B| * B^{-1}`` as primitive integer rays.

    These generate ``{y : B y >= 0}`` exactly (the sign scaling keeps the
    correct orientation).
    """
    d = len(B)
    a = [[Fraction(x) for x in row] for row in B]
    inv = [[Fraction(1) if i == j else Fraction(0) for j in range(d)]
           for i in range(d)]
    det = Fraction(1)
    for col in range(d):
        piv = next(r for r in range(col, d) if a[r][col] != 0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            det = -det
        det *= a[col][col]
        c = a[col][col]
        a[col] = [x / c for x in a[col]]
        inv[col] = [x / c for x in inv[col]]
        for r in range(d):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    scale = abs(det)
    cols: list[IntVector] = []
    for k in range(d):
        col = [inv[i][k] * scale for i in range(d)]
        assert all(x.denominator == 1 for x in col)
        cols.append(_reduce_int(tuple(int(x) for x in col)))
    return cols


# ---------------------------------------------------------------------------
# phase-1 simplex (exact, Bland's rule)
# ---------------------------------------------------------------------------

def _phase1_simplex(columns: Sequence[Sequence[Number]],
                    target: Sequence[Number]):
    """Find ``lambda >= 0`` with ``sum lambda_j columns[j] == target``.

    Returns ``(feasible, lambdas, dual_row)``: on success ``lambdas`` is the
    combination (dual_row is None); on failure ``dual_row`` is a vector ``y``
    with ``y . columns[j] <= 0`` for all j and ``y . target > 0`` (so
    ``u = -y`` separates the target from the cone of the columns).
    """
    d = len(target)
    n = len(columns)
    b = [Fraction(x) for x in target]
    sigma = [1 if x >= 0 else -1 for x in b]
    # rows: sigma_i * A_i | artificial identity | rhs  (rhs >= 0)
    T: list[list[Fraction]] = []
    for i in range(d):
        row = [sigma[i] * Fraction(columns[j][i]) for j in range(n)]
        row += [Fraction(1) if k == i else Fraction(0) for k in range(d)]
        row.append(sigma[i] * b[i])
        T.append(row)
    ncols = n + d
    basis = list(range(n, n + d))
    # objective row: reduced costs then -objective value
    red = [Fraction(0)] * (ncols + 1)
    for j in range(ncols):
        s = sum(T[i][j] for i in range(d))
        red[j] = (Fraction(1) if j >= n else Fraction(0)) - s
    red[ncols] = -sum(T[i][ncols] for i in range(d))

    while True:
        enter = -1
        for j in range(ncols):
            if red[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(d):
            coef = T[i][enter]
            if coef > 0:
                ratio = T[i][ncols] / coef
                if best is None or ratio < best or \
                        (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            raise AssertionError("phase-1 objective unbounded below")
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(d):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
        if red[enter] != 0:
            f = red[enter]
            red = [x - f * y for x, y in zip(red, T[leave])]
        basis[leave] = enter

    objective = -red[ncols]
    if objective == 0:
        lam = [Fraction(0)] * n
        for i, bi in enumerate(basis):
            if bi < n:
                lam[bi] = T[i][ncols]
        # exact validation of the combination
        for i in range(d):
            s = sum(lam[j] * Fraction(columns[j][i]) for j in range(n))
            assert s == b[i]
        return True, lam, None
    y = [sigma[i] * (1 - red[n + i]) for i in range(d)]
    assert sum(yi * bi for yi, bi in zip(y, b)) == objective > 0
    for j in range(n):
        assert sum(y[i] * Fraction(columns[j][i]) for i in range(d)) <= 0
    return False, None, y


# ---------------------------------------------------------------------------
# exact LP feasibility with certificates
# ---------------------------------------------------------------------------

VALID_RELATIONS = (">=", ">", "=")


@dataclass(frozen=True)
class LinearConstraint:
    """``coeffs . x  REL  bound`` with REL one of '>=', '>', '='."""

    coeffs: Vector
    relation: str
    bound: Fraction
    label: str = ""


def constraint(coeffs: Iterable[Number], relation: str, bound: Number,
               label: str = "") -> LinearConstraint:
    if relation not in VALID_RELATIONS:
        raise ValueError(f"relation must be one of {VALID_RELATIONS}")
    return LinearConstraint(fvec(coeffs), relation, Fraction(bound), label)


@dataclass(frozen=True)
class LinearProgram:
    nvars: int
    constraints: tuple[LinearConstraint, ...]

    def __post_init__(self):
        for i, c in enumerate(self.constraints):
            if len(c.coeffs) != self.nvars:
                raise DimensionMismatchError(
                    f"constraint #{i} has {len(c.coeffs)} coefficients, "
                    f"expected {self.nvars}")
            if c.relation not in VALID_RELATIONS:
                raise ValueError(f"constraint #{i}: bad relation {c.relation!r}")


@dataclass(frozen=True)
class LPResult:
    """Feasibility verdict with certificate.

    ``point`` satisfies every constraint when feasible.  When infeasible,
    ``certificate`` gives one multiplier per constraint: nonnegative for
    inequalities, any sign for equalities, such that the combined constraint
    reads ``0 >= positive`` (or ``0 > 0`` using a strict row with positive
    weight) — see :func:`check_infeasibility_certificate`.
    """

    feasible: bool
    point: Optional[Vector] = None
    certificate: Optional[Vector] = None


def check_infeasibility_certificate(lp: LinearProgram,
                                    mu: Sequence[Number]) -> bool:
    """Re-derive the contradiction from a certificate, fully independently."""
    if len(mu) != len(lp.constraints):
        return False
    mu = fvec(mu)
    combo = [Fraction(0)] * lp.nvars
    rhs = Fraction(0)
    strict_weight = Fraction(0)
    for m, c in zip(mu, lp.constraints):
        if c.relation in (">=", ">") and m < 0:
            return False
        for k in range(lp.nvars):
            combo[k] += m * c.coeffs[k]
        rhs += m * c.bound
        if c.relation == ">":
            strict_weight += m
    if any(x != 0 for x in combo):
        return False
    return rhs > 0 or (rhs == 0 and strict_weight > 0)


def lp_feasible(lp: LinearProgram) -> LPResult:
    """Exact feasibility by Fourier–Motzkin elimination.

    Strict inequalities are handled through an auxiliary slack ``eps``: each
    ``a . x > b`` becomes ``a . x - eps >= b`` and the achievable supremum of
    ``eps`` is computed exactly after eliminating the real variables; the
    system is feasible iff that supremum is positive.  Each derived row keeps
    its provenance (multipliers over the input constraints), which becomes
    the infeasibility certificate.
    """
    # rows: (a: list over vars, e: eps coefficient, b, prov: dict idx->weight)
    rows: list[tuple[list[Fraction], Fraction, Fraction, dict[int, Fraction]]] = []
    for i, c in enumerate(lp.constraints):
        a = list(c.coeffs)
        if c.relation == ">=":
            rows.append((a, Fraction(0), c.bound, {i: Fraction(1)}))
        elif c.relation == ">":
            rows.append((a, Fraction(-1), c.bound, {i: Fraction(1)}))
        else:  # "="
            rows.append((list(a), Fraction(0), c.bound, {i: Fraction(1)}))
            rows.append(([-x for x in a], Fraction(0), -c.bound, {i: Fraction(-1)}))

    stack = []  # per eliminated variable: (var, lower_rows, upper_rows)
    for var in range(lp.nvars):
        lowers = [r for r in rows if r[0][var] > 0]
        uppers = [r for r in rows if r[0][var] < 0]
        passthrough = [r for r in rows if r[0][var] == 0]
        stack.append((var, lowers, uppers))
        combined = []
        for al, el, bl, pl in lowers:
            cl = al[var]
            for au, eu, bu, pu in uppers:
                cu = -au[var]
                # cu * lower + cl * upper eliminates the variable
                a = [cu * x + cl * y for x, y in zip(al, au)]
                e = cu * el + cl * eu
                bb = cu * bl + cl * bu
                prov = dict((k, cu * w) for k, w in pl.items())
                for k, w in pu.items():
                    prov[k] = prov.get(k, Fraction(0)) + cl * w
                combined.append(_normalize_row(a, e, bb, prov))
        rows = passthrough + combined

    # Only eps remains.  All eps coefficients are <= 0 by construction.
    upper = None  # tightest upper bound on eps
    upper_prov = None
    for a, e, bb, prov in rows:
        assert all(x == 0 for x in a)
        if e == 0:
            if bb > 0:
                return _infeasible(lp, prov)
        else:  # e < 0:  e * eps >= bb  =>  eps <= bb / e
            bound = bb / e
            if upper is None or bound < upper:
                upper = bound
                upper_prov = prov

    has_strict = any(c.relation == ">" for c in lp.constraints)
    if has_strict and upper is not None and upper <= 0:
        return _infeasible(lp, upper_prov)

    if not has_strict:
        eps_star = Fraction(0)
    elif upper is None:
        eps_star = Fraction(1)
    else:
        eps_star = upper / 2

    # Back-substitute a point.
    point = [Fraction(0)] * lp.nvars
    for var, lowers, uppers in reversed(stack):
        lo = None
        hi = None
        for a, e, bb, _ in lowers:
            val = (bb - e * eps_star
                   - sum(a[k] * point[k] for k in range(lp.nvars) if k != var))
            val /= a[var]
            if lo is None or val > lo:
                lo = val
        for a, e, bb, _ in uppers:
            val = (bb - e * eps_star
                   - sum(a[k] * point[k] for k in range(lp.nvars) if k != var))
            val /= a[var]
            if hi is None or val < hi:
                hi = val
        if lo is None and hi is None:
            point[var] = Fraction(0)
        elif lo is None:
            point[var] = hi
        elif hi is None:
            point[var] = lo
        else:
            assert lo <= hi, "Fourier-Motzkin back-substitution inconsistency"
            point[var] = (lo + hi) / 2

    pt = tuple(point)
    for c in lp.constraints:
        val = dot(c.coeffs, pt)
        if c.relation == ">=":
            assert val >= c.bound
        elif c.relation == ">":
            assert val > c.bound
        else:
            assert val == c.bound
    return LPResult(True, point=pt)


def _normalize_row(a, e, b, prov):
    g = 0
    for x in a + [e, b]:
        g = gcd(g, abs(x.numerator))
    # Only rescale when everything is integral and shares a factor; keeping
    # provenance consistent just means dividing the weights too.
    if g > 1 and all(x.denominator == 1 for x in a + [e, b]):
        a = [x / g for x in a]
        e = e / g
        b = b / g
        prov = {k: w / g for k, w in prov.items()}
    return (a, e, b, prov)


def _infeasible(lp: LinearProgram, prov: dict[int, Fraction]) -> LPResult:
    mu = [Fraction(0)] * len(lp.constraints)
    for k, w in prov.items():
        mu[k] += w
    cert = tuple(mu)
    assert check_infeasibility_certificate(lp, cert)
    return LPResult(False, certificate=cert)
