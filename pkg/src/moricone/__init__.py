"""moricone: exact rational cone computations for curves and divisors on
two-step blowups of surface products.

The package has six parts:

* :mod:`moricone.cones` — exact rational vectors, canonical polyhedral cones,
  dual cones by double description, membership/equality certificates, and a
  small exact LP solver with infeasibility certificates.
* :mod:`moricone.delpezzo` — numerical models of del Pezzo surfaces: Picard
  lattice, (-1)-classes, NE generators, nef cone.
* :mod:`moricone.blowup` — the two-step blowup engine: relative cones,
  intersection table, conormal degree bookkeeping, fiber structure, and the
  contraction classifier.
* :mod:`moricone.certificates` — chain- and grid-style nefness certificates,
  their verifiers, and the product-certificate builder.
* :mod:`moricone.scenario` — the del Pezzo product scenario: curve catalog,
  claimed cone generators, theorem verifier, Fano classification.
* :mod:`moricone.cli` — the command-line front end.

All arithmetic is exact (ints and fractions); nothing is ever rounded.
"""

__version__ = "0.1.0"

from .cones import (  # noqa: F401
    Budget,
    BudgetExceededError,
    ConeError,
    DimensionMismatchError,
    LinealityError,
    PolyCone,
    cone_from_rays,
    cones_equal,
    contains,
    dual,
    lp_feasible,
)
from .certificates import (  # noqa: F401
    CertificateError,
    ChainCertificate,
    ChainStep,
    GridCell,
    GridCertificate,
    Stratum,
    Verdict,
    build_product_certificates,
    certificate_from_dict,
    certificate_to_dict,
    tsukioka_factors,
    verify_HE_hypotheses,
    verify_HEF_hypotheses,
    verify_chain,
)
from .scenario import (  # noqa: F401
    ClassificationResult,
    Scenario,
    TheoremVerdict,
    anticanonical,
    build_scenario,
    classify,
    classify_all,
    curve_identities,
    delta_certificate,
    ne_generators,
    nef_generators_claimed,
    not_fano_type_refutation,
    t_divisors,
    verify_theorem,
)
