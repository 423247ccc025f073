#!/usr/bin/env python3
"""Regenerate the shipped nefness certificates in certs/.

For each worked product-of-projective-spaces example (n1, n2, d) this builds
the two product certificates — the chain for (pullback minus the first
exceptional divisor) and the grid for (pullback minus both) — verifies them,
and writes them as JSON next to this repository's certs/ directory.
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from moricone.certificates import (  # noqa: E402
    build_product_certificates,
    certificate_to_dict,
    tsukioka_factors,
    verify_HE_hypotheses,
    verify_HEF_hypotheses,
)

EXAMPLES = ((2, 2, 2), (3, 2, 2), (2, 3, 3))


def main() -> int:
    out_dir = pathlib.Path(__file__).resolve().parents[1] / "certs"
    out_dir.mkdir(exist_ok=True)
    for n1, n2, d in EXAMPLES:
        built = build_product_certificates(*tsukioka_factors(n1, n2, d))
        chain_v = verify_HE_hypotheses(built.chain)
        grid_v = verify_HEF_hypotheses(built.grid)
        if not (chain_v.ok and grid_v.ok):
            print(f"({n1},{n2},{d}): certificates failed to verify; "
                  "not writing", file=sys.stderr)
            return 1
        for tag, cert in (("chain", built.chain), ("grid", built.grid)):
            path = out_dir / f"tsukioka_{n1}_{n2}_{d}_{tag}.json"
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(certificate_to_dict(cert), fh, indent=2)
                fh.write("\n")
            print(f"wrote {path.relative_to(out_dir.parent)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
