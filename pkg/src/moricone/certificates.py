"""Chain- and grid-style nefness certificates.

A *stratum* is a numerical stand-in for a subvariety: a class lattice of some
rank plus a curve oracle (a divisor class on the stratum is nef exactly when
it pairs >= 0 with every oracle curve; a point has rank 0 and an empty
oracle).  A *chain certificate* walks a divisor down a chain of strata,
checking at each stratum that the restricted divisor minus the class of the
next stratum stays nef; a *grid certificate* does the same over a rectangular
grid of strata below an outer chain, subtracting both neighbor classes.

Product certificates are assembled from two factor grids by interleaving
their chains so that each unit step moves exactly one factor; the admissible
interleavings are selected by six nefness side conditions (two per axis).

Everything is exact: entries are ints or fractions, never floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

Number = Union[int, Fraction]
Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


class CertificateError(Exception):
    """Structurally invalid certificate (shapes, missing data, broken maps)."""


def _fr(x: Number) -> Fraction:
    return Fraction(x)


def _vec(v: Iterable[Number]) -> Vec:
    return tuple(Fraction(x) for x in v)


def _mat(m: Iterable[Iterable[Number]]) -> Mat:
    return tuple(_vec(row) for row in m)


def _apply(m: Mat, v: Sequence[Fraction]) -> Vec:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum(a * b for a, b in zip(u, v))


def _sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# core types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Stratum:
    """A class lattice with a curve oracle deciding nefness."""

    id: str
    rank: int
    oracle_curves: Mat

    def __post_init__(self):
        object.__setattr__(self, "oracle_curves", _mat(self.oracle_curves))
        for c in self.oracle_curves:
            if len(c) != self.rank:
                raise CertificateError(
                    f"stratum {self.id!r}: oracle curve of length {len(c)}, "
                    f"rank is {self.rank}")

    def nef_check(self, v: Sequence[Fraction]):
        """(passed, witness_curve, witness_value) for the class v."""
        for c in self.oracle_curves:
            val = _dot(c, v)
            if val < 0:
                return False, c, val
        return True, None, None

    def same_shape(self, other: "Stratum") -> bool:
        return (self.rank == other.rank
                and self.oracle_curves == other.oracle_curves)


@dataclass(frozen=True)
class ChainStep:
    """One stratum of a chain: how it sits under its parent, plus (except at
    a chain's end) the class of the next stratum as a divisor on this one."""

    child: Stratum
    restriction: Mat  # child.rank rows, parent-rank columns
    next_class: Optional[Vec] = None

    def __post_init__(self):
        object.__setattr__(self, "restriction", _mat(self.restriction))
        if self.next_class is not None:
            object.__setattr__(self, "next_class", _vec(self.next_class))
        if len(self.restriction) != self.child.rank:
            raise CertificateError(
                f"step into {self.child.id!r}: restriction has "
                f"{len(self.restriction)} rows, child rank is {self.child.rank}")
        if self.next_class is not None and len(self.next_class) != self.child.rank:
            raise CertificateError(
                f"step into {self.child.id!r}: next-stratum class has length "
                f"{len(self.next_class)}, child rank is {self.child.rank}")


@dataclass(frozen=True)
class ChainCertificate:
    root_rank: int
    steps: tuple[ChainStep, ...]
    divisor: Vec

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        object.__setattr__(self, "divisor", _vec(self.divisor))
        if not self.steps:
            raise CertificateError(
                "a chain needs at least one stratum; encode a bare root as a "
                "single final step with an identity restriction")
        if len(self.divisor) != self.root_rank:
            raise CertificateError(
                f"divisor has length {len(self.divisor)}, root rank is "
                f"{self.root_rank}")
        prev = self.root_rank
        for k, s in enumerate(self.steps):
            if any(len(row) != prev for row in s.restriction):
                raise CertificateError(
                    f"step {k}: restriction columns do not match the "
                    f"parent rank {prev}")
            prev = s.child.rank


@dataclass(frozen=True)
class GridCell:
    stratum: Stratum
    right_class: Optional[Vec] = None  # class of the (i+1, j) stratum here
    right_map: Optional[Mat] = None    # restriction to the (i+1, j) stratum
    down_class: Optional[Vec] = None   # class of the (i, j+1) stratum here
    down_map: Optional[Mat] = None     # restriction to the (i, j+1) stratum

    def __post_init__(self):
        for attr in ("right_class", "down_class"):
            v = getattr(self, attr)
            if v is not None:
                v = _vec(v)
                object.__setattr__(self, attr, v)
                if len(v) != self.stratum.rank:
                    raise CertificateError(
                        f"cell {self.stratum.id!r}: {attr} has length "
                        f"{len(v)}, rank is {self.stratum.rank}")
        for attr in ("right_map", "down_map"):
            m = getattr(self, attr)
            if m is not None:
                m = _mat(m)
                object.__setattr__(self, attr, m)
                if any(len(row) != self.stratum.rank for row in m):
                    raise CertificateError(
                        f"cell {self.stratum.id!r}: {attr} columns do not "
                        f"match rank {self.stratum.rank}")


@dataclass(frozen=True)
class GridCertificate:
    """Outer chain (indices 0..c, the last entry being the grid corner) over
    a rectangular grid of strata indexed [c..a] x [c..b]."""

    a: int
    b: int
    c: int
    root_rank: int
    outer: tuple[ChainStep, ...]
    cells: Mapping[tuple[int, int], GridCell]
    divisor: Vec

    def __post_init__(self):
        object.__setattr__(self, "outer", tuple(self.outer))
        object.__setattr__(self, "cells", dict(self.cells))
        object.__setattr__(self, "divisor", _vec(self.divisor))
        a, b, c = self.a, self.b, self.c
        if not (0 <= c <= min(a, b)):
            raise CertificateError(f"grid extents need 0 <= c <= min(a, b), "
                                   f"got a={a}, b={b}, c={c}")
        if len(self.outer) != c + 1:
            raise CertificateError(
                f"outer chain must have {c + 1} steps (indices 0..c), "
                f"got {len(self.outer)}")
        if len(self.divisor) != self.root_rank:
            raise CertificateError("divisor length does not match root rank")
        prev = self.root_rank
        for k, s in enumerate(self.outer):
            if any(len(row) != prev for row in s.restriction):
                raise CertificateError(
                    f"outer step {k}: restriction columns do not match "
                    f"parent rank {prev}")
            if k < c and s.next_class is None:
                raise CertificateError(
                    f"outer step {k} needs the class of step {k + 1}")
            if k == c and s.next_class is not None:
                raise CertificateError(
                    "the corner step must not carry a next-stratum class "
                    "(its continuations are the grid classes)")
            prev = s.child.rank
        for i in range(c, a + 1):
            for j in range(c, b + 1):
                if (i, j) not in self.cells:
                    raise CertificateError(f"missing grid cell ({i}, {j})")
        for i in range(c, a + 1):
            for j in range(c, b + 1):
                cell = self.cells[(i, j)]
                if (cell.right_class is None or cell.right_map is None) \
                        and i < a:
                    raise CertificateError(
                        f"cell ({i}, {j}) needs a class and a restriction "
                        f"toward ({i + 1}, {j})")
                if (cell.down_class is None or cell.down_map is None) \
                        and j < b:
                    raise CertificateError(
                        f"cell ({i}, {j}) needs a class and a restriction "
                        f"toward ({i}, {j + 1})")
                if i < a and len(cell.right_map) != self.cells[(i + 1, j)].stratum.rank:
                    raise CertificateError(
                        f"cell ({i}, {j}): restriction rows do not match the "
                        f"rank of cell ({i + 1}, {j})")
                if j < b and len(cell.down_map) != self.cells[(i, j + 1)].stratum.rank:
                    raise CertificateError(
                        f"cell ({i}, {j}): restriction rows do not match the "
                        f"rank of cell ({i}, {j + 1})")
        corner = self.outer[c].child
        if not corner.same_shape(self.cells[(c, c)].stratum):
            raise CertificateError(
                "the outer chain must end on the corner cell "
                f"({c}, {c}): rank/oracle mismatch")


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckRecord:
    location: str
    value: Vec
    passed: bool
    witness_curve: Optional[Vec] = None
    witness_pairing: Optional[Fraction] = None


@dataclass(frozen=True)
class Verdict:
    ok: bool
    checks: tuple[CheckRecord, ...]
    certified: Optional[str] = None

    @property
    def failure(self) -> Optional[CheckRecord]:
        for rec in self.checks:
            if not rec.passed:
                return rec
        return None


def _run_check(stratum: Stratum, vec: Vec, location: str) -> CheckRecord:
    passed, curve, val = stratum.nef_check(vec)
    return CheckRecord(location=location, value=vec, passed=passed,
                       witness_curve=curve, witness_pairing=val)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def verify_chain(cert: ChainCertificate) -> Verdict:
    """Full chain criterion: difference checks at every non-final stratum,
    then the plain nefness of the final restriction."""
    last = len(cert.steps) - 1
    for k, s in enumerate(cert.steps):
        if k < last and s.next_class is None:
            raise CertificateError(
                f"step {k} is not final and needs the class of step {k + 1}")
        if k == last and s.next_class is not None:
            raise CertificateError(
                "the final step of a full chain must not carry a next-stratum "
                "class (use the hypothesis-only verifier for open-ended chains)")
    records = []
    d = cert.divisor
    for k, s in enumerate(cert.steps):
        d = _apply(s.restriction, d)
        loc = f"step {k} ({s.child.id})"
        if k < last:
            records.append(_run_check(s.child, _sub(d, s.next_class), loc))
        else:
            records.append(_run_check(s.child, d, f"{loc}, final"))
    ok = all(r.passed for r in records)
    return Verdict(ok=ok, checks=tuple(records),
                   certified="divisor is nef on the root space"
                   if ok else None)


def verify_HE_hypotheses(cert: ChainCertificate) -> Verdict:
    """Hypotheses for nefness of (pullback - exceptional) after blowing up
    the chain's end: difference checks only, no final oracle check."""
    for k, s in enumerate(cert.steps):
        if s.next_class is None:
            raise CertificateError(
                f"step {k}: every step of an open-ended chain carries the "
                f"class of the next stratum")
    records = []
    d = cert.divisor
    for k, s in enumerate(cert.steps):
        d = _apply(s.restriction, d)
        records.append(_run_check(s.child, _sub(d, s.next_class),
                                  f"step {k} ({s.child.id})"))
    ok = all(r.passed for r in records)
    return Verdict(ok=ok, checks=tuple(records),
                   certified="pullback minus exceptional divisor is nef on "
                   "the blowup" if ok else None)


def _propagate_grid(cert: GridCertificate):
    d = cert.divisor
    outer_values = []
    for s in cert.outer:
        d = _apply(s.restriction, d)
        outer_values.append(d)
    values: dict[tuple[int, int], Vec] = {(cert.c, cert.c): d}
    for i in range(cert.c, cert.a + 1):
        for j in range(cert.c, cert.b + 1):
            if (i, j) == (cert.c, cert.c):
                continue
            candidates = []
            if i > cert.c:
                src = cert.cells[(i - 1, j)]
                candidates.append(_apply(src.right_map, values[(i - 1, j)]))
            if j > cert.c:
                src = cert.cells[(i, j - 1)]
                candidates.append(_apply(src.down_map, values[(i, j - 1)]))
            for other in candidates[1:]:
                if other != candidates[0]:
                    raise CertificateError(
                        f"restriction maps disagree on the divisor along "
                        f"different paths into cell ({i}, {j})")
            values[(i, j)] = candidates[0]
    return values, outer_values


def verify_HEF_hypotheses(cert: GridCertificate) -> Verdict:
    """Hypotheses for nefness of (pullback - both exceptionals) on the
    two-step blowup: outer difference checks, then double-difference checks
    at every grid cell with both neighbors."""
    values, outer_values = _propagate_grid(cert)
    records = []
    for k in range(cert.c):
        s = cert.outer[k]
        records.append(_run_check(
            s.child, _sub(outer_values[k], s.next_class),
            f"outer {k} ({s.child.id})"))
    for i in range(cert.c, cert.a):
        for j in range(cert.c, cert.b):
            cell = cert.cells[(i, j)]
            vec = _sub(_sub(values[(i, j)], cell.right_class), cell.down_class)
            records.append(_run_check(cell.stratum, vec,
                                      f"cell ({i},{j}) ({cell.stratum.id})"))
    ok = all(r.passed for r in records)
    return Verdict(ok=ok, checks=tuple(records),
                   certified="pullback minus both exceptional divisors is "
                   "nef on the two-step blowup" if ok else None)


# ---------------------------------------------------------------------------
# product assembly
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProductCertificates:
    chain: ChainCertificate        # certifies (pullback - E) hypotheses
    grid: GridCertificate          # certifies (pullback - E - F) hypotheses
    cases: tuple[int, int, int]    # chosen alternatives: one of (1,2), (3,4), (5,6)


def _pad_vec(v: Vec, before: int, after: int) -> Vec:
    return tuple([Fraction(0)] * before) + tuple(v) + tuple([Fraction(0)] * after)


def _product_stratum(s1: Stratum, s2: Stratum) -> Stratum:
    curves = [_pad_vec(c, 0, s2.rank) for c in s1.oracle_curves]
    curves += [_pad_vec(c, s1.rank, 0) for c in s2.oracle_curves]
    return Stratum(id=f"{s1.id}*{s2.id}", rank=s1.rank + s2.rank,
                   oracle_curves=tuple(curves))


def _block_diag(m1: Mat, r1: int, m2: Mat, r2: int) -> Mat:
    """Block matrix from m1 (cols r1) and m2 (cols r2)."""
    rows = [tuple(row) + tuple([Fraction(0)] * r2) for row in m1]
    rows += [tuple([Fraction(0)] * r1) + tuple(row) for row in m2]
    return tuple(rows)


def _identity(n: int) -> Mat:
    return tuple(tuple(Fraction(1) if i == j else Fraction(0)
                       for j in range(n)) for i in range(n))


def _factor_cell(g: GridCertificate, i: int, j: int) -> GridCell:
    return g.cells[(i, j)]


def _grid_values(g: GridCertificate) -> dict[tuple[int, int], Vec]:
    values, _ = _propagate_grid(g)
    return values


def _condition_root_nef(g: GridCertificate) -> Optional[CheckRecord]:
    """Nefness of the factor divisor on the factor's root stratum; None means
    the condition holds, otherwise the failing check is returned."""
    root = g.outer[0]
    rec = _run_check(root.child, _apply(root.restriction, g.divisor),
                     f"root ({root.child.id})")
    return None if rec.passed else rec


def _condition_A_chain(g: GridCertificate) -> Optional[CheckRecord]:
    """Single-difference nefness down the factor's A-chain edge."""
    values = _grid_values(g)
    for x in range(g.c, g.a):
        cell = g.cells[(x, g.c)]
        rec = _run_check(cell.stratum,
                         _sub(values[(x, g.c)], cell.right_class),
                         f"A-chain cell ({x},{g.c}) ({cell.stratum.id})")
        if not rec.passed:
            return rec
    return None


def _condition_B_chain(g: GridCertificate) -> Optional[CheckRecord]:
    """Single-difference nefness along the factor's B-chain edge."""
    values = _grid_values(g)
    for y in range(g.c, g.b):
        cell = g.cells[(g.c, y)]
        rec = _run_check(cell.stratum,
                         _sub(values[(g.c, y)], cell.down_class),
                         f"B-chain cell ({g.c},{y}) ({cell.stratum.id})")
        if not rec.passed:
            return rec
    return None


def _pick(pair_name: str, first_num: int, conds, allowed) -> int:
    """Choose the lowest-numbered admissible alternative of a pair."""
    failures = []
    for offset, cond in enumerate(conds):
        num = first_num + offset
        if not allowed[num - 1]:
            failures.append((num, "disabled by selector flags"))
            continue
        failing = cond()
        if failing is None:
            return num
        failures.append(
            (num, f"fails at {failing.location}: value {failing.value} "
                  f"pairs {failing.witness_pairing} with curve "
                  f"{failing.witness_curve}"))
    detail = "; ".join(f"({n}) {msg}" for n, msg in failures)
    raise CertificateError(
        f"no admissible case selector satisfied for the {pair_name} pair: "
        f"{detail}")


def build_product_certificates(
        f1: GridCertificate, f2: GridCertificate,
        allowed: Sequence[bool] = (True,) * 6) -> ProductCertificates:
    """Assemble product chain and grid certificates from two factor grids.

    The interleavings mirror the product nefness lemmas: the outer chain
    moves the factor whose divisor is *not* globally nef first (alternatives
    1/2), the row chains are keyed to which factor's B-chain differences are
    nef (5/6), and the column chains to which factor's A-chain differences
    are nef (3/4).  The lowest-numbered admissible alternative of each pair
    is chosen; if a pair has none, the first violated factor condition is
    reported.
    """
    if len(allowed) != 6:
        raise CertificateError("selector flags must have exactly six entries")
    r1, r2 = f1.root_rank, f2.root_rank

    x_case = _pick("globally-nef-divisor", 1,
                   (lambda: _condition_root_nef(f1),
                    lambda: _condition_root_nef(f2)), allowed)
    a_sel = _pick("A-chain", 3,
                  (lambda: _condition_A_chain(f1),
                   lambda: _condition_A_chain(f2)), allowed)
    b_sel = _pick("B-chain", 5,
                  (lambda: _condition_B_chain(f1),
                   lambda: _condition_B_chain(f2)), allowed)

    a1, b1, c1 = f1.a, f1.b, f1.c
    a2, b2, c2 = f2.a, f2.b, f2.c
    a, b, c = a1 + a2, b1 + b2, c1 + c2

    # Index of each factor at product position j, for the three axes.  The
    # "moving-first" factor exhausts its chain before the other starts.
    if x_case == 1:  # factor 1's divisor nef => factor 2 moves first
        xidx = (lambda j: max(0, j - c2), lambda j: min(j, c2))
    else:
        xidx = (lambda j: min(j, c1), lambda j: max(0, j - c1))
    if b_sel == 5:   # factor 1's B-chain nef => factor 2's A-chain first
        aidx = (lambda i: max(c1, i - a2), lambda i: min(i - c1, a2))
    else:
        aidx = (lambda i: min(i - c2, a1), lambda i: max(c2, i - a1))
    if a_sel == 3:   # factor 1's A-chain nef => factor 2's B-chain first
        bidx = (lambda j: max(c1, j - b2), lambda j: min(j - c1, b2))
    else:
        bidx = (lambda j: min(j - c2, b1), lambda j: max(c2, j - b1))

    # --- grid ---------------------------------------------------------
    outer_steps = []
    for j in range(c + 1):
        p1, p2 = xidx[0](j), xidx[1](j)
        s1, s2 = f1.outer[p1].child, f2.outer[p2].child
        child = _product_stratum(s1, s2)
        if j == 0:
            restriction = _block_diag(f1.outer[0].restriction, r1,
                                      f2.outer[0].restriction, r2)
        elif xidx[0](j) != xidx[0](j - 1):
            prev2 = f2.outer[xidx[1](j - 1)].child
            restriction = _block_diag(f1.outer[p1].restriction,
                                      f1.outer[p1 - 1].child.rank,
                                      _identity(prev2.rank), prev2.rank)
        else:
            prev1 = f1.outer[xidx[0](j - 1)].child
            restriction = _block_diag(_identity(prev1.rank), prev1.rank,
                                      f2.outer[p2].restriction,
                                      f2.outer[p2 - 1].child.rank)
        next_class = None
        if j < c:
            if xidx[0](j + 1) != p1:
                nc = f1.outer[p1].next_class
                next_class = _pad_vec(nc, 0, s2.rank)
            else:
                nc = f2.outer[p2].next_class
                next_class = _pad_vec(nc, s1.rank, 0)
        outer_steps.append(ChainStep(child=child, restriction=restriction,
                                     next_class=next_class))

    cells: dict[tuple[int, int], GridCell] = {}
    for i in range(c, a + 1):
        for j in range(c, b + 1):
            x1, x2 = aidx[0](i), aidx[1](i)
            y1, y2 = bidx[0](j), bidx[1](j)
            cell1 = _factor_cell(f1, x1, y1)
            cell2 = _factor_cell(f2, x2, y2)
            s1, s2 = cell1.stratum, cell2.stratum
            right_class = right_map = down_class = down_map = None
            if i < a:
                if aidx[0](i + 1) != x1:
                    right_class = _pad_vec(cell1.right_class, 0, s2.rank)
                    right_map = _block_diag(cell1.right_map, s1.rank,
                                            _identity(s2.rank), s2.rank)
                else:
                    right_class = _pad_vec(cell2.right_class, s1.rank, 0)
                    right_map = _block_diag(_identity(s1.rank), s1.rank,
                                            cell2.right_map, s2.rank)
            if j < b:
                if bidx[0](j + 1) != y1:
                    down_class = _pad_vec(cell1.down_class, 0, s2.rank)
                    down_map = _block_diag(cell1.down_map, s1.rank,
                                           _identity(s2.rank), s2.rank)
                else:
                    down_class = _pad_vec(cell2.down_class, s1.rank, 0)
                    down_map = _block_diag(_identity(s1.rank), s1.rank,
                                           cell2.down_map, s2.rank)
            cells[(i, j)] = GridCell(
                stratum=_product_stratum(s1, s2),
                right_class=right_class, right_map=right_map,
                down_class=down_class, down_map=down_map)

    divisor = tuple(f1.divisor) + tuple(f2.divisor)
    grid = GridCertificate(a=a, b=b, c=c, root_rank=r1 + r2,
                           outer=tuple(outer_steps), cells=cells,
                           divisor=divisor)

    # --- chain (single-blowup certificate along the full A-chains) ----
    def full_a_chain(g: GridCertificate):
        """Stratum / incoming-restriction / next-class at positions 0..a."""
        entries = []
        for q in range(g.a + 1):
            if q <= g.c:
                step = g.outer[q]
                stratum, rest = step.child, step.restriction
                if q < g.c:
                    nxt = step.next_class
                else:
                    nxt = g.cells[(q, g.c)].right_class if q < g.a else None
            else:
                stratum = g.cells[(q, g.c)].stratum
                rest = g.cells[(q - 1, g.c)].right_map
                nxt = g.cells[(q, g.c)].right_class if q < g.a else None
            entries.append((stratum, rest, nxt))
        return entries

    ch1, ch2 = full_a_chain(f1), full_a_chain(f2)
    if x_case == 1:
        cidx = (lambda j: max(0, j - a2), lambda j: min(j, a2))
    else:
        cidx = (lambda j: min(j, a1), lambda j: max(0, j - a1))
    chain_steps = []
    for j in range(a):  # strata 0..a-1; position a (the center) is not a step
        p1, p2 = cidx[0](j), cidx[1](j)
        s1, s2 = ch1[p1][0], ch2[p2][0]
        child = _product_stratum(s1, s2)
        if j == 0:
            restriction = _block_diag(ch1[0][1], r1, ch2[0][1], r2)
        elif cidx[0](j) != cidx[0](j - 1):
            prev2 = ch2[cidx[1](j - 1)][0]
            restriction = _block_diag(ch1[p1][1], ch1[p1 - 1][0].rank,
                                      _identity(prev2.rank), prev2.rank)
        else:
            prev1 = ch1[cidx[0](j - 1)][0]
            restriction = _block_diag(_identity(prev1.rank), prev1.rank,
                                      ch2[p2][1], ch2[p2 - 1][0].rank)
        if cidx[0](j + 1) != p1:
            next_class = _pad_vec(ch1[p1][2], 0, s2.rank)
        else:
            next_class = _pad_vec(ch2[p2][2], s1.rank, 0)
        chain_steps.append(ChainStep(child=child, restriction=restriction,
                                     next_class=next_class))
    chain = ChainCertificate(root_rank=r1 + r2, steps=tuple(chain_steps),
                             divisor=divisor)

    return ProductCertificates(chain=chain, grid=grid,
                               cases=(x_case, a_sel, b_sel))


# ---------------------------------------------------------------------------
# JSON serialization ("p/q" strings for non-integers)
# ---------------------------------------------------------------------------

def _num_out(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _num_in(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (int,)):
        return Fraction(x)
    raise CertificateError(f"expected an integer or 'p/q' string, got {x!r}")


def _vec_out(v: Vec):
    return [_num_out(x) for x in v]


def _mat_out(m: Mat):
    return [[_num_out(x) for x in row] for row in m]


def _vec_in(v) -> Vec:
    return tuple(_num_in(x) for x in v)


def _mat_in(m) -> Mat:
    return tuple(_vec_in(row) for row in m)


def _step_out(s: ChainStep) -> dict:
    out = {
        "id": s.child.id,
        "rank": s.child.rank,
        "restriction": _mat_out(s.restriction),
        "next_class": None if s.next_class is None else _vec_out(s.next_class),
        "oracle_curves": _mat_out(s.child.oracle_curves),
    }
    return out


def _step_in(d: dict, index: int) -> ChainStep:
    stratum = Stratum(id=d.get("id", f"step{index}"), rank=d["rank"],
                      oracle_curves=_mat_in(d.get("oracle_curves", [])))
    nxt = d.get("next_class")
    return ChainStep(child=stratum, restriction=_mat_in(d["restriction"]),
                     next_class=None if nxt is None else _vec_in(nxt))


def certificate_to_dict(cert: Union[ChainCertificate, GridCertificate]) -> dict:
    if isinstance(cert, ChainCertificate):
        return {
            "kind": "chain",
            "root_rank": cert.root_rank,
            "steps": [_step_out(s) for s in cert.steps],
            "divisor": _vec_out(cert.divisor),
        }
    if isinstance(cert, GridCertificate):
        cells = []
        for (i, j), cell in sorted(cert.cells.items()):
            cells.append({
                "i": i, "j": j,
                "id": cell.stratum.id,
                "rank": cell.stratum.rank,
                "oracle_curves": _mat_out(cell.stratum.oracle_curves),
                "right_class": None if cell.right_class is None
                else _vec_out(cell.right_class),
                "right_map": None if cell.right_map is None
                else _mat_out(cell.right_map),
                "down_class": None if cell.down_class is None
                else _vec_out(cell.down_class),
                "down_map": None if cell.down_map is None
                else _mat_out(cell.down_map),
            })
        return {
            "kind": "grid",
            "a": cert.a, "b": cert.b, "c": cert.c,
            "root_rank": cert.root_rank,
            "outer": [_step_out(s) for s in cert.outer],
            "cells": cells,
            "divisor": _vec_out(cert.divisor),
        }
    raise CertificateError(f"not a certificate: {cert!r}")


def certificate_from_dict(data: dict) -> Union[ChainCertificate, GridCertificate]:
    kind = data.get("kind", "chain")
    try:
        return _certificate_from_dict(data, kind)
    except (KeyError, TypeError, IndexError) as exc:
        raise CertificateError(
            f"malformed {kind} certificate document: {exc!r}") from exc


def _certificate_from_dict(data, kind):
    if kind == "chain":
        return ChainCertificate(
            root_rank=data["root_rank"],
            steps=tuple(_step_in(s, k) for k, s in enumerate(data["steps"])),
            divisor=_vec_in(data["divisor"]))
    if kind == "grid":
        cells = {}
        for entry in data["cells"]:
            stratum = Stratum(id=entry.get("id", f"cell({entry['i']},{entry['j']})"),
                              rank=entry["rank"],
                              oracle_curves=_mat_in(entry.get("oracle_curves", [])))
            cells[(entry["i"], entry["j"])] = GridCell(
                stratum=stratum,
                right_class=None if entry.get("right_class") is None
                else _vec_in(entry["right_class"]),
                right_map=None if entry.get("right_map") is None
                else _mat_in(entry["right_map"]),
                down_class=None if entry.get("down_class") is None
                else _vec_in(entry["down_class"]),
                down_map=None if entry.get("down_map") is None
                else _mat_in(entry["down_map"]))
        return GridCertificate(
            a=data["a"], b=data["b"], c=data["c"],
            root_rank=data["root_rank"],
            outer=tuple(_step_in(s, k) for k, s in enumerate(data["outer"])),
            cells=cells,
            divisor=_vec_in(data["divisor"]))
    raise CertificateError(f"unknown certificate kind {kind!r}")


# ---------------------------------------------------------------------------
# worked fixtures: blowups of P^n1 x P^n2 (point x degree-d hypersurface)
# ---------------------------------------------------------------------------

def tsukioka_factors(n1: int, n2: int, d: int) -> tuple[GridCertificate, GridCertificate]:
    """Factor grids for the product of projective spaces construction: the
    first center is {point} x L_d, the second is X_1 x {point} with the point
    on the degree-d hypersurface L_d in P^n2.

    Factor 1 (P^n1): A = point (codim n1), B = everything (codim 0), so the
    grid is the single column of linear strata P^n1 > P^(n1-1) > ... > point.
    Factor 2 (P^n2): A = L_d (codim 1), B = point (codim n2), so the outer
    chain is P^n2 > L_d and the grid is the single row L_d > section > ... >
    point.  All lattices are rank 1 (hyperplane-class units on the ambient
    strata, degree units on curves), except rank 0 at points.
    """
    if n1 < 1 or n2 < 2 or d < 1:
        raise ValueError("need n1 >= 1, n2 >= 2, d >= 1")
    unit = ((1,),)
    one = ((Fraction(1),),)

    # factor 1: a = n1, b = c = 0
    cells1: dict[tuple[int, int], GridCell] = {}
    for x in range(n1 + 1):
        rank = 1 if x < n1 else 0
        stratum = Stratum(id=f"P^{n1 - x}", rank=rank,
                          oracle_curves=unit if rank == 1 else ())
        if x < n1:
            # restriction to a rank-0 stratum is the empty matrix
            cells1[(x, 0)] = GridCell(stratum=stratum, right_class=(1,),
                                      right_map=one if x + 1 < n1 else ())
        else:
            cells1[(x, 0)] = GridCell(stratum=stratum)
    outer1 = (ChainStep(child=cells1[(0, 0)].stratum, restriction=one),)
    f1 = GridCertificate(a=n1, b=0, c=0, root_rank=1, outer=outer1,
                         cells=cells1, divisor=(1,))

    # factor 2: a = c = 1, b = n2
    root2 = Stratum(id=f"P^{n2}", rank=1, oracle_curves=unit)
    if n2 == 2:
        corner = Stratum(id=f"L_{d}", rank=1, oracle_curves=unit)  # a curve
        outer2 = (ChainStep(child=root2, restriction=one, next_class=(d,)),
                  ChainStep(child=corner, restriction=((d,),)))
        cells2 = {
            (1, 1): GridCell(stratum=corner, down_class=(1,), down_map=()),
            (1, 2): GridCell(stratum=Stratum(id="pt", rank=0, oracle_curves=())),
        }
    else:
        corner = Stratum(id=f"L_{d}", rank=1, oracle_curves=unit)
        outer2 = (ChainStep(child=root2, restriction=one, next_class=(d,)),
                  ChainStep(child=corner, restriction=one))
        cells2 = {(1, 1): GridCell(stratum=corner, down_class=(1,),
                                   down_map=one)}
        for y in range(2, n2 + 1):
            if y < n2 - 1:
                stratum = Stratum(id=f"S_{y}", rank=1, oracle_curves=unit)
                cells2[(1, y)] = GridCell(stratum=stratum, down_class=(1,),
                                          down_map=one)
            elif y == n2 - 1:
                stratum = Stratum(id="C", rank=1, oracle_curves=unit)
                # parent is a surface in hyperplane units; restriction to the
                # curve multiplies by the surface degree d
                prev = cells2[(1, y - 1)]
                cells2[(1, y - 1)] = GridCell(stratum=prev.stratum,
                                              down_class=prev.down_class,
                                              down_map=((d,),))
                cells2[(1, y)] = GridCell(stratum=stratum, down_class=(1,),
                                          down_map=())
            else:
                cells2[(1, y)] = GridCell(
                    stratum=Stratum(id="pt", rank=0, oracle_curves=()))
    f2 = GridCertificate(a=1, b=n2, c=1, root_rank=1, outer=outer2,
                         cells=cells2, divisor=(d,))
    return f1, f2
