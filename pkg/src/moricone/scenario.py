"""The del Pezzo product scenario.

X is the two-step blowup of a product of two del Pezzo surfaces (the first
factor blown up at r1 <= 3 points, the second at r2 <= 8): the first center
is {point} x (line class), the second the strict transform of (first factor)
x {point}.  The divisor basis is (H1, E_{1,*}, H2, E_{2,*}, E, F), so the
Picard rank is 4 + r1 + r2.

Curves are stored as intersection vectors against that basis, so pairing a
divisor coefficient vector with a curve is a plain dot product, the cone of
curves and the nef cone are exact duals, and every claim (cone equality,
Fano/weak Fano/Fano-type classification, the supporting linear-program
refutation) can be verified with the exact cone engine.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import delpezzo
from .certificates import (
    ChainStep,
    GridCell,
    GridCertificate,
    ProductCertificates,
    Stratum,
    build_product_certificates,
    verify_HE_hypotheses,
    verify_HEF_hypotheses,
)
from .cones import (
    Budget,
    BudgetExceededError,
    LinearProgram,
    PolyCone,
    check_infeasibility_certificate,
    cone_from_rays,
    cones_equal,
    constraint,
    contains,
    dual,
    lp_feasible,
)

MAX_R1 = 3
MAX_R2 = 8

BUDGET_ENV_VAR = "MORICONE_BUDGET_SECONDS"


@dataclass(frozen=True)
class Curve:
    """A catalog curve: its name, intersection vector, whether it belongs to
    the claimed generating set of the cone of curves, and (for curves lifted
    from a factor surface) the factor index and surface class."""

    name: str
    vector: tuple[int, ...]
    in_ne_set: bool
    factor: int = 0
    factor_class: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class NamedVector:
    name: str
    vector: tuple


@dataclass(frozen=True)
class Scenario:
    r1: int
    r2: int
    basis_names: tuple[str, ...]
    curves: tuple[Curve, ...]

    @property
    def rho(self) -> int:
        return 4 + self.r1 + self.r2

    @property
    def lattice1(self) -> delpezzo.DelPezzoLattice:
        return delpezzo.build(self.r1)

    @property
    def lattice2(self) -> delpezzo.DelPezzoLattice:
        return delpezzo.build(self.r2)

    def curve(self, name: str) -> Curve:
        for c in self.curves:
            if c.name == name:
                return c
        raise KeyError(name)

    def ne_curves(self) -> tuple[Curve, ...]:
        return tuple(c for c in self.curves if c.in_ne_set)

    # slot indices into the divisor basis
    @property
    def idx_h1(self) -> int:
        return 0

    def idx_e1(self, j: int) -> int:
        return j  # 1-based j

    @property
    def idx_h2(self) -> int:
        return 1 + self.r1

    def idx_e2(self, j: int) -> int:
        return 1 + self.r1 + j

    @property
    def idx_e(self) -> int:
        return 2 + self.r1 + self.r2

    @property
    def idx_f(self) -> int:
        return 3 + self.r1 + self.r2


def _functional(cls: Sequence[int]) -> tuple[int, ...]:
    """Dot-product row computing (divisor . curve) on a factor surface from
    divisor coefficients, for the curve of class `cls`."""
    return (cls[0],) + tuple(-x for x in cls[1:])


def build_scenario(r1: int, r2: int) -> Scenario:
    if not (0 <= r1 <= MAX_R1):
        raise ValueError(f"first factor needs 0 <= r1 <= {MAX_R1}, got {r1}")
    if not (0 <= r2 <= MAX_R2):
        raise ValueError(f"second factor needs 0 <= r2 <= {MAX_R2}, got {r2}")
    rho = 4 + r1 + r2
    names = (["H1"] + [f"E1_{j}" for j in range(1, r1 + 1)]
             + ["H2"] + [f"E2_{j}" for j in range(1, r2 + 1)]
             + ["E", "F"])
    idx = {n: k for k, n in enumerate(names)}

    def vec(entries: dict[str, int]) -> tuple[int, ...]:
        v = [0] * rho
        for n, x in entries.items():
            v[idx[n]] = x
        return tuple(v)

    curves: list[Curve] = [
        Curve("e", vec({"E": -1, "F": 1}), True),
        Curve("f", vec({"F": -1}), True),
    ]

    # factor 1 curves
    curves.append(Curve("l1", vec({"H1": 1, "E": 1}), r1 == 0, factor=1,
                        factor_class=(1,) + (0,) * r1))
    for j in range(1, r1 + 1):
        cls = tuple(1 if k == 0 else (-1 if k == j else 0)
                    for k in range(r1 + 1))
        curves.append(Curve(f"l1_{j}",
                            vec({"H1": 1, f"E1_{j}": 1, "E": 1}), True,
                            factor=1, factor_class=cls))
        ecls = tuple(1 if k == j else 0 for k in range(r1 + 1))
        curves.append(Curve(f"e1_{j}", vec({f"E1_{j}": -1}), True,
                            factor=1, factor_class=ecls))
    for j1 in range(1, r1 + 1):
        for j2 in range(j1 + 1, r1 + 1):
            cls = tuple(1 if k == 0 else (-1 if k in (j1, j2) else 0)
                        for k in range(r1 + 1))
            curves.append(Curve(
                f"e1_{j1}{j2}",
                vec({"H1": 1, f"E1_{j1}": 1, f"E1_{j2}": 1}), True,
                factor=1, factor_class=cls))

    # factor 2 curves
    curves.append(Curve("l2", vec({"H2": 1, "E": 1}), r2 == 0, factor=2,
                        factor_class=(1,) + (0,) * r2))
    for j in range(1, r2 + 1):
        cls = tuple(1 if k == 0 else (-1 if k == j else 0)
                    for k in range(r2 + 1))
        curves.append(Curve(f"l2_{j}",
                            vec({"H2": 1, f"E2_{j}": 1, "E": 1}),
                            r2 == 1, factor=2, factor_class=cls))
    if r2 >= 1:
        lattice2 = delpezzo.build(r2)
        for k, cls in enumerate(delpezzo.minus_one_classes(lattice2), 1):
            row = _functional(cls)
            entries = {"H2": cls[0], "E": cls[0]}
            for j in range(1, r2 + 1):
                entries[f"E2_{j}"] = row[j]
            curves.append(Curve(f"e2_{k}", vec(entries), r2 >= 1,
                                factor=2, factor_class=cls))

    return Scenario(r1=r1, r2=r2, basis_names=tuple(names),
                    curves=tuple(curves))


def pairing(divisor: Sequence, curve_vector: Sequence) -> Fraction:
    return sum(Fraction(a) * b for a, b in zip(divisor, curve_vector))


def anticanonical(s: Scenario) -> tuple[int, ...]:
    return ((3,) + (-1,) * s.r1 + (3,) + (-1,) * s.r2 + (-2, -1))


def delta_divisor(s: Scenario) -> tuple[Fraction, ...]:
    """The boundary (1/3)((H1 - E) + (H2 - E - F)) whose ampleness
    certificate (see :func:`delta_certificate`) witnesses bigness of -K."""
    third = Fraction(1, 3)
    return ((third,) + (Fraction(0),) * s.r1 + (third,)
            + (Fraction(0),) * s.r2 + (Fraction(-2, 3), Fraction(-1, 3)))


def ne_generators(s: Scenario, budget: Optional[Budget] = None) -> PolyCone:
    return cone_from_rays(s.rho, [c.vector for c in s.ne_curves()], budget)


def t1_divisors(s: Scenario) -> tuple[NamedVector, ...]:
    rho = s.rho
    out = [NamedVector("H1", tuple(1 if k == 0 else 0 for k in range(rho)))]
    if s.r1 >= 2:
        for j1 in range(1, s.r1 + 1):
            for j2 in range(j1 + 1, s.r1 + 1):
                v = [0] * rho
                v[s.idx_h1] = 2
                v[s.idx_e1(j1)] = -1
                v[s.idx_e1(j2)] = -1
                out.append(NamedVector(f"2H1-E1_{j1}-E1_{j2}", tuple(v)))
    if s.r1 == 3:
        v = [0] * rho
        v[s.idx_h1] = 2
        for j in range(1, 4):
            v[s.idx_e1(j)] = -1
        out.append(NamedVector("2H1-E1_1-E1_2-E1_3", tuple(v)))
    return tuple(out)


def t_divisors(s: Scenario) -> tuple[NamedVector, ...]:
    out = []
    for n1 in t1_divisors(s):
        v = list(n1.vector)
        v[s.idx_h2] += 1
        v[s.idx_e] -= 1
        out.append(NamedVector(f"{n1.name}+H2-E", tuple(v)))
        v = list(v)
        v[s.idx_f] -= 1
        out.append(NamedVector(f"{n1.name}+H2-E-F", tuple(v)))
    return tuple(out)


def _embed_factor(s: Scenario, factor: int, cls: Sequence[int]) -> tuple:
    v = [0] * s.rho
    if factor == 1:
        v[s.idx_h1] = cls[0]
        for j in range(1, s.r1 + 1):
            v[s.idx_e1(j)] = cls[j]
    else:
        v[s.idx_h2] = cls[0]
        for j in range(1, s.r2 + 1):
            v[s.idx_e2(j)] = cls[j]
    return tuple(v)


def claimed_nef_vectors(s: Scenario,
                        budget: Optional[Budget] = None) -> tuple[NamedVector, ...]:
    """Generators of the claimed nef cone: pullbacks of both factors' nef
    generators plus the mixed divisors in T."""
    out = []
    for factor, r in ((1, s.r1), (2, s.r2)):
        lattice = delpezzo.build(r)
        for k, ray in enumerate(delpezzo.nef_cone(lattice, budget).rays, 1):
            out.append(NamedVector(f"nef{factor}_{k}",
                                   _embed_factor(s, factor, ray)))
    out.extend(t_divisors(s))
    return tuple(out)


def nef_generators_claimed(s: Scenario,
                           budget: Optional[Budget] = None) -> PolyCone:
    return cone_from_rays(s.rho,
                          [nv.vector for nv in claimed_nef_vectors(s, budget)],
                          budget)


# ---------------------------------------------------------------------------
# theorem verification
# ---------------------------------------------------------------------------

CONTAINMENT_EXPLICIT = "explicit pairings"
CONTAINMENT_FACTOR = "explicit pairings + factor-block reduction"
EQ_EQUAL = "equal"
EQ_UNEQUAL = "unequal"
EQ_GATED = "budget exceeded, containment only"

_HEAVY_R2 = (7, 8)


@dataclass(frozen=True)
class TheoremVerdict:
    r1: int
    r2: int
    containment_ok: bool
    containment_mode: str
    containment_witness: Optional[dict]
    equality_status: str
    equality_witness: Optional[dict]

    @property
    def ok(self) -> bool:
        return self.containment_ok and self.equality_status != EQ_UNEQUAL


def _containment_explicit(ne_curves, claimed) -> Optional[dict]:
    for nv in claimed:
        for c in ne_curves:
            val = pairing(nv.vector, c.vector)
            if val < 0:
                return {"divisor": nv.name, "curve": c.name, "pairing": val}
    return None


def _factor_block_witness(s: Scenario) -> Optional[dict]:
    """Checks that the catalog is block-structured so that nefness of any
    second-factor divisor class transfers to its pullback: lifted curves pair
    with second-factor slots exactly by the surface pairing and with nothing
    else; all other generators avoid the second-factor slots entirely."""
    slots2 = [s.idx_h2] + [s.idx_e2(j) for j in range(1, s.r2 + 1)]
    lattice2 = delpezzo.build(s.r2)
    minus_one = set(delpezzo.minus_one_classes(lattice2))
    for c in s.ne_curves():
        if c.factor == 2:
            if c.factor_class not in minus_one:
                return {"curve": c.name, "reason": "unknown factor class"}
            row = _functional(c.factor_class)
            expected = [0] * s.rho
            for pos, val in zip(slots2, row):
                expected[pos] = val
            expected[s.idx_e] = c.factor_class[0]
            if tuple(expected) != c.vector:
                return {"curve": c.name, "reason": "lift rule violated"}
        else:
            if any(c.vector[pos] != 0 for pos in slots2):
                return {"curve": c.name,
                        "reason": "nonzero second-factor component"}
    return None


def verify_theorem(s: Scenario, budget: Optional[Budget] = None) -> TheoremVerdict:
    """Containment (always exact) and equality of the claimed nef cone with
    the dual of the claimed cone of curves (exact for r2 <= 6; budget-gated
    for r2 in {7, 8})."""
    ne_curves = s.ne_curves()
    heavy = s.r2 in _HEAVY_R2

    if not heavy:
        claimed = claimed_nef_vectors(s, budget)
        witness = _containment_explicit(ne_curves, claimed)
        mode = CONTAINMENT_EXPLICIT
    else:
        light = tuple(nv for nv in claimed_nef_vectors_light(s))
        witness = _containment_explicit(ne_curves, light)
        if witness is None:
            witness = _factor_block_witness(s)
        mode = CONTAINMENT_FACTOR
    containment_ok = witness is None

    if heavy:
        if budget is None:
            env = os.environ.get(BUDGET_ENV_VAR)
            if env:
                budget = Budget(max_seconds=float(env))
        if budget is None:
            return TheoremVerdict(s.r1, s.r2, containment_ok, mode, witness,
                                  EQ_GATED, None)
        try:
            return TheoremVerdict(s.r1, s.r2, containment_ok, mode, witness,
                                  *_equality(s, budget))
        except BudgetExceededError:
            return TheoremVerdict(s.r1, s.r2, containment_ok, mode, witness,
                                  EQ_GATED, None)
    return TheoremVerdict(s.r1, s.r2, containment_ok, mode, witness,
                          *_equality(s, budget))


def claimed_nef_vectors_light(s: Scenario) -> tuple[NamedVector, ...]:
    """The cheap part of the claimed generators: first-factor nef pullbacks
    and T, skipping the second factor's nef generators."""
    out = []
    lattice1 = delpezzo.build(s.r1)
    for k, ray in enumerate(delpezzo.nef_cone(lattice1).rays, 1):
        out.append(NamedVector(f"nef1_{k}", _embed_factor(s, 1, ray)))
    out.extend(t_divisors(s))
    return tuple(out)


def _equality(s: Scenario, budget: Optional[Budget]):
    nef_from_curves = dual(ne_generators(s, budget), budget)
    claimed = nef_generators_claimed(s, budget)
    verdict = cones_equal(nef_from_curves, claimed)
    if verdict.equal:
        return EQ_EQUAL, None
    side = ("dual of the curve cone" if verdict.witness_side == "first-not-in-second"
            else "claimed nef cone")
    return EQ_UNEQUAL, {"ray": verdict.witness_ray, "only_in": side}


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassificationResult:
    r1: int
    r2: int
    fano: bool
    weak_fano: bool
    fano_type: bool
    witnesses: dict

    def __post_init__(self):
        if self.fano and not self.weak_fano:
            raise AssertionError("fano requires weak fano")
        if self.weak_fano != self.fano_type:
            raise AssertionError("weak fano and fano type must agree here")


def classify(s: Scenario) -> ClassificationResult:
    minus_k = anticanonical(s)
    ne_curves = s.ne_curves()
    k_pairings = {c.name: pairing(minus_k, c.vector) for c in ne_curves}

    witnesses: dict = {"anticanonical_pairings": k_pairings}
    fano = all(v > 0 for v in k_pairings.values())
    if not fano:
        name = next(n for n, v in k_pairings.items() if v <= 0)
        witnesses["not_fano"] = {"curve": name, "pairing": k_pairings[name]}

    nef_ok = all(v >= 0 for v in k_pairings.values())
    if not nef_ok:
        name = next(n for n, v in k_pairings.items() if v < 0)
        witnesses["not_weak_fano"] = {"curve": name,
                                      "pairing": k_pairings[name]}

    cert = delta_certificate(s)
    witnesses["delta_certificate"] = cert["pairings"]
    weak_fano = nef_ok and cert["ok"]
    if nef_ok and not cert["ok"]:
        witnesses["not_weak_fano"] = {"curve": cert["witness"],
                                      "pairing": cert["pairings"][cert["witness"]]}

    fano_type = weak_fano
    if s.r2 >= 2:
        refutation = not_fano_type_refutation(s)
        witnesses["not_fano_type"] = {
            "constraints": [c.label for c in refutation.lp.constraints],
            "certificate": refutation.certificate,
        }
    return ClassificationResult(r1=s.r1, r2=s.r2, fano=fano,
                                weak_fano=weak_fano, fano_type=fano_type,
                                witnesses=witnesses)


def delta_certificate(s: Scenario) -> dict:
    """Pairings of -(K + boundary) with every generating curve; all must be
    strictly positive for the ampleness certificate to pass."""
    minus_k_delta = tuple(-Fraction(k) - d
                          for k, d in zip(canonical_vector(s), delta_divisor(s)))
    pairings = {c.name: pairing(minus_k_delta, c.vector)
                for c in s.ne_curves()}
    witness = next((n for n, v in pairings.items() if v <= 0), None)
    return {"ok": witness is None, "witness": witness, "pairings": pairings}


def canonical_vector(s: Scenario) -> tuple[int, ...]:
    return tuple(-x for x in anticanonical(s))


@dataclass(frozen=True)
class RefutationResult:
    lp: LinearProgram
    certificate: tuple[Fraction, ...]
    relaxed_point: tuple[Fraction, ...]


def refutation_system(relaxed: bool = False) -> LinearProgram:
    """The four-constraint system over (alpha2, beta_1, beta_2, gamma) whose
    infeasibility certifies that no boundary can make the pair log Fano once
    the second factor is blown up at two or more points."""
    strict = ">=" if relaxed else ">"
    return LinearProgram(4, (
        constraint((1, 1, 0, 0), ">=", 0, label="alpha2+beta_1 >= 0"),
        constraint((1, 0, 1, 0), ">=", 0, label="alpha2+beta_2 >= 0"),
        constraint((0, 1, 0, 1), strict, -1, label="1+beta_1+gamma > 0"),
        constraint((-1, -1, -1, -1), strict, 1,
                   label="1+alpha2+beta_1+beta_2+gamma < 0"),
    ))


def not_fano_type_refutation(s: Scenario) -> RefutationResult:
    if s.r2 < 2:
        raise ValueError("the refutation applies only when the second factor "
                         "is blown up at two or more points")
    lp = refutation_system()
    result = lp_feasible(lp)
    if result.feasible:
        raise AssertionError("refutation system unexpectedly feasible")
    assert check_infeasibility_certificate(lp, result.certificate)
    relaxed = lp_feasible(refutation_system(relaxed=True))
    if not relaxed.feasible:
        raise AssertionError("relaxed system unexpectedly infeasible")
    return RefutationResult(lp=lp, certificate=tuple(result.certificate),
                            relaxed_point=tuple(relaxed.point))


def classify_all() -> dict[tuple[int, int], ClassificationResult]:
    return {(r1, r2): classify(build_scenario(r1, r2))
            for r1 in range(MAX_R1 + 1) for r2 in range(MAX_R2 + 1)}


# ---------------------------------------------------------------------------
# curve identities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityCheck:
    description: str
    ok: bool


@dataclass(frozen=True)
class IdentityReport:
    ok: bool
    checks: tuple[IdentityCheck, ...]


def _lift_by_class(s: Scenario, cls: tuple[int, ...]) -> Curve:
    for c in s.curves:
        if c.factor == 2 and c.factor_class == cls and c.name.startswith("e2"):
            return c
    raise KeyError(cls)


def curve_identities(s: Scenario) -> IdentityReport:
    """Decomposition identities among catalog curves, verified as exact
    equalities of intersection vectors."""
    checks = []

    def add(desc, lhs, rhs):
        checks.append(IdentityCheck(desc, lhs == rhs))

    for j in range(1, s.r1 + 1):
        lhs = s.curve("l1").vector
        rhs = tuple(a + b for a, b in zip(s.curve(f"l1_{j}").vector,
                                          s.curve(f"e1_{j}").vector))
        add(f"l1 = l1_{j} + e1_{j}", lhs, rhs)
    for j in range(1, s.r2 + 1):
        ecls = tuple(1 if k == j else 0 for k in range(s.r2 + 1))
        lhs = s.curve("l2").vector
        rhs = tuple(a + b for a, b in zip(s.curve(f"l2_{j}").vector,
                                          _lift_by_class(s, ecls).vector))
        add(f"l2 = l2_{j} + e2({ecls})", lhs, rhs)
    if s.r2 >= 2:
        for j in range(1, s.r2 + 1):
            jp = 1 if j != 1 else 2
            ecls = tuple(1 if k == jp else 0 for k in range(s.r2 + 1))
            ccls = tuple(1 if k == 0 else (-1 if k in (j, jp) else 0)
                         for k in range(s.r2 + 1))
            lhs = s.curve(f"l2_{j}").vector
            rhs = tuple(a + b for a, b in zip(_lift_by_class(s, ecls).vector,
                                              _lift_by_class(s, ccls).vector))
            add(f"l2_{j} = e2({ecls}) + e2({ccls})", lhs, rhs)
    return IdentityReport(ok=all(c.ok for c in checks), checks=tuple(checks))


# ---------------------------------------------------------------------------
# product certificates for the mixed nef divisors
# ---------------------------------------------------------------------------

def _surface_stratum(name: str, lattice: delpezzo.DelPezzoLattice) -> Stratum:
    oracle = tuple(_functional(c) for c in delpezzo.ne_generators(lattice))
    return Stratum(id=name, rank=lattice.rank, oracle_curves=oracle)


def _curve_for_t1(s: Scenario, n1: NamedVector) -> tuple[int, ...]:
    """The auxiliary curve class on the first factor used to certify the
    divisor N1: a line through the blown-up point pattern so that N1 - C is
    nef and N1 . C = 1."""
    r1 = s.r1
    bar = [n1.vector[s.idx_h1]] + [n1.vector[s.idx_e1(j)]
                                   for j in range(1, r1 + 1)]
    if bar[0] == 1:  # N1 = H1
        return (1,) + (0,) * r1
    negatives = [j for j in range(1, r1 + 1) if bar[j] < 0]
    if len(negatives) == 3:  # N1 = 2H1 - E1 - E2 - E3: C in |N1| itself
        return tuple(bar)
    # N1 = 2H1 - E_{j1} - E_{j2}: C a line through the first point
    j1 = negatives[0]
    return tuple(1 if k == 0 else (-1 if k == j1 else 0)
                 for k in range(r1 + 1))


def factor_grids_for_t1(s: Scenario, n1: NamedVector) -> tuple[GridCertificate, GridCertificate]:
    """Factor data for certifying N1 + H2 - E (-F): the first factor carries
    the chain X1 > C > point, the second X2 > A2 (the line class) > point."""
    lat1, lat2 = s.lattice1, s.lattice2
    x1 = _surface_stratum("X1", lat1)
    ccls = _curve_for_t1(s, n1)
    cstrat = Stratum(id="C", rank=1, oracle_curves=((1,),))
    cells1 = {
        (0, 0): GridCell(stratum=x1, right_class=tuple(ccls),
                         right_map=(_functional(ccls),)),
        (1, 0): GridCell(stratum=cstrat, right_class=(1,), right_map=()),
        (2, 0): GridCell(stratum=Stratum(id="pt", rank=0, oracle_curves=())),
    }
    n1bar = [n1.vector[s.idx_h1]] + [n1.vector[s.idx_e1(j)]
                                     for j in range(1, s.r1 + 1)]
    f1 = GridCertificate(a=2, b=0, c=0, root_rank=lat1.rank,
                         outer=(ChainStep(child=x1,
                                          restriction=_identity(lat1.rank)),),
                         cells=cells1, divisor=tuple(n1bar))

    x2 = _surface_stratum("X2", lat2)
    a2cls = (1,) + (0,) * s.r2
    a2 = Stratum(id="A2", rank=1, oracle_curves=((1,),))
    outer2 = (ChainStep(child=x2, restriction=_identity(lat2.rank),
                        next_class=a2cls),
              ChainStep(child=a2, restriction=(_functional(a2cls),)))
    cells2 = {
        (1, 1): GridCell(stratum=a2, down_class=(1,), down_map=()),
        (1, 2): GridCell(stratum=Stratum(id="pt", rank=0, oracle_curves=())),
    }
    h2bar = (1,) + (0,) * s.r2
    f2 = GridCertificate(a=1, b=2, c=1, root_rank=lat2.rank, outer=outer2,
                         cells=cells2, divisor=h2bar)
    return f1, f2


def _identity(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def t_divisor_certificates(s: Scenario) -> dict[str, ProductCertificates]:
    """Product certificates for every divisor in T, keyed by divisor name."""
    out = {}
    for n1 in t1_divisors(s):
        built = build_product_certificates(*factor_grids_for_t1(s, n1))
        out[f"{n1.name}+H2-E"] = built
        out[f"{n1.name}+H2-E-F"] = built
    return out


def t_certificates_agree_with_membership(s: Scenario,
                                         budget: Optional[Budget] = None) -> dict[str, dict]:
    """Cross-validation: for each divisor in T, nefness by membership in the
    dual of the curve cone must agree with the product-certificate verdict."""
    nef = dual(ne_generators(s), budget)
    results = {}
    for n1 in t1_divisors(s):
        built = build_product_certificates(*factor_grids_for_t1(s, n1))
        chain_ok = verify_HE_hypotheses(built.chain).ok
        grid_ok = verify_HEF_hypotheses(built.grid).ok
        for suffix, cert_ok in (("+H2-E", chain_ok), ("+H2-E-F", grid_ok)):
            name = n1.name + suffix
            vector = next(nv.vector for nv in t_divisors(s) if nv.name == name)
            member = contains(nef, vector).member
            results[name] = {"membership": member, "certificate": cert_ok,
                             "agree": member == cert_ok}
    return results
