"""Compare the compiled rational core (gmpy2) against the pure-Python fallback.

The hot kernels are big-integer bound, so the package selects gmpy2's mpq at
import time and falls back to fractions.Fraction otherwise.  This benchmark
re-executes representative workloads in a subprocess per backend:

    python benches/bench_backends.py
"""

from __future__ import annotations

import os
import subprocess
import sys
import textwrap

WORKLOAD = textwrap.dedent(
    """
    import time, json
    import annuli._ratio as ratio
    from annuli.laurent import LaurentPoly, make_poly, resultant, poly_gcd
    from annuli.catalog import gen_series, series_id
    from annuli.certify import ph_ledger, embedding_verdict
    from annuli.scalars import Scalar

    out = {"backend": ratio.BACKEND}

    t0 = time.time()
    f = make_poly(*[(i * 7919 + 13) for i in range(1, 40)])
    g = make_poly(*[(i * i * 104729 + 7) for i in range(1, 36)])
    for _ in range(3):
        resultant(f, g)
    out["resultant_deg40"] = round(time.time() - t0, 3)

    t0 = time.time()
    h = (f * g).shift(0)
    hh = h * h.derivative()
    poly_gcd(hh, hh.derivative())
    out["gcd_squarefree_deg149"] = round(time.time() - t0, 3)

    t0 = time.time()
    for sid in (series_id("u"), series_id("q", m=2, n=0), series_id("e", k=2, m=1, n=3)):
        c = gen_series(sid)
        ph_ledger(c)
        embedding_verdict(c, with_ledger=False)
    out["certify_three_curves"] = round(time.time() - t0, 3)

    print(json.dumps(out))
    """
)


def run(backend: str) -> dict:
    env = dict(os.environ, ANNULI_SCALAR_BACKEND=backend)
    proc = subprocess.run(
        [sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True
    )
    import json

    return json.loads(proc.stdout.strip().splitlines()[-1])


def main():
    rows = [run("gmpy2"), run("fractions")]
    keys = [k for k in rows[0] if k != "backend"]
    width = max(len(k) for k in keys) + 2
    print(f"{'kernel':<{width}} " + "  ".join(f"{r['backend']:>10}" for r in rows))
    for k in keys:
        print(f"{k:<{width}} " + "  ".join(f"{r[k]:>9.3f}s" for r in rows))
    base, alt = rows[0], rows[1]
    for k in keys:
        if base[k] > 0:
            print(f"  {k}: fallback / compiled = {alt[k] / max(base[k], 1e-9):.1f}x")


if __name__ == "__main__":
    main()
