"""Global certification: delta_max, balance ledger, exact injectivity, audits.

Injectivity is decided symbolically from the symmetric double-point system
D~(u, v) = E~(u, v) = 0 (u = t + t', v = t t'): eliminate u by a primitive
subresultant PRS, then run a dynamic-evaluation gcd over each branch of the
squarefree eliminant and test whether every fiber solution sits on the
diagonal u^2 = 4v.  A span-reducing preprocessing multiplies or divides one
component by the other when the latter has a single C*-root; such moves
preserve the off-diagonal double-point set exactly, which keeps the eliminant
small for the recursive catalog families.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .bipoly import (
    UV,
    double_point_system,
    uv_content,
    uv_deg,
    uv_eval_ring,
    uv_prs,
)
from .curves import (
    Classification,
    ExponentProfile,
    ParametricCurve,
    detect_nonprimitive,
    dim_curv,
    exponent_profile,
)
from .laurent import LaurentPoly, NotDivisible, poly_gcd, squarefree_part
from .local import (
    PlaceAnalysis,
    PlaceNotAtInfinity,
    PointAnalysis,
    TangencyData,
    analyze_place,
    branch_series_at_point,
    singular_parameters,
    tangency_delta,
)
from .rings import BranchState, SCALARS, explore_branches, quotient_gcd
from .scalars import Scalar
from .series import TS


class DegenerateCurve(ValueError):
    """The components are affinely dependent: a multiply covered line."""


class LedgerMismatch(AssertionError):
    """Injectivity and Poincare-Hopf balance disagree: internal inconsistency."""


class BoundTooSmall(ArithmeticError):
    """Semigroup oracle bound below the conductor."""


# ---------------------------------------------------------------------------
# delta_max and the ledger
# ---------------------------------------------------------------------------


def delta_max(prof: ExponentProfile) -> int:
    """2 * delta_max: finite double points of the typical curve of this profile."""
    p, q, r, s = prof.p, prof.q, prof.r, prof.s
    return (p + r - 1) * (q + s - 1) - (prof.p1 + prof.r1 - 1) + abs(p * s - r * q)


@dataclass
class BalanceLedger:
    profile: ExponentProfile
    two_delta_max: int
    finite: list  # PointAnalysis entries
    place_inf: PlaceAnalysis | None
    place_0: PlaceAnalysis | None
    tangency: TangencyData | None
    two_delta_inf: int
    balanced: bool
    euler_ok: bool
    swapped: bool
    E: int
    reserve: int

    def finite_sum(self) -> int:
        return sum(e.mu * e.orbit for e in self.finite)

    def as_dict(self) -> dict:
        out = {
            "two_delta_max": self.two_delta_max,
            "finite": [
                {
                    "factor": repr(e.factor),
                    "orbit": e.orbit,
                    "n": e.n,
                    "char_pairs": [list(p) for p in e.pairs],
                    "mu": e.mu,
                    "two_delta": e.mu,
                    "nu": e.nu,
                    "ext_nu": e.extnu,
                    "label": e.a_label(),
                }
                for e in self.finite
            ],
            "two_delta_inf": self.two_delta_inf,
            "balanced": self.balanced,
            "euler_check": self.euler_ok,
            "E": self.E,
            "reserve": self.reserve,
            "orientation_swapped": self.swapped,
        }
        if self.tangency is not None:
            out["tangency"] = self.tangency.as_dict()
        if self.place_inf is not None:
            out["place_inf"] = self.place_inf.as_dict()
        if self.place_0 is not None:
            out["place_0"] = self.place_0.as_dict()
        return out


def ph_ledger(curve: ParametricCurve) -> BalanceLedger:
    """Assemble the Poincare-Hopf balance ledger for a primitive curve."""
    from .curves import affine_dependence

    if affine_dependence(curve) is not None:
        raise DegenerateCurve("components are affinely dependent")
    prof = exponent_profile(curve)
    d2max = delta_max(prof)
    swap = prof.q + prof.s < prof.p + prof.r
    finite = singular_parameters(curve, swap=swap)
    from .local import tangency_mode

    tangent = tangency_mode(prof) != "none"
    pl_inf = analyze_place(curve, "inf")
    pl_0 = analyze_place(curve, "0")
    tan = None
    if tangent:
        tan = tangency_delta(curve, d2max, pl_inf, pl_0)
        d2inf = tan.delta2_inf
        idx_sum = tan.index_inf + tan.index_0
    else:
        d2inf = pl_inf.delta2 + pl_0.delta2
        idx_sum = pl_inf.index + pl_0.index
    fin_sum = sum(e.mu * e.orbit for e in finite)
    balanced = d2inf + fin_sum == d2max
    euler_ok = idx_sum + fin_sum == 2
    # the proof-strategy quantity E and the reserve (diagnostics only)
    nu_inf = pl_inf.nu
    nu_0 = pl_0.nu
    point_sum = sum(e.n * e.nu * e.orbit for e in finite)
    if tangent:
        E = (prof.p1 + prof.r1) * (nu_inf + nu_0 + tan.nu_tan + 1) + point_sum
    else:
        E = prof.p1 * nu_inf + prof.r1 * nu_0 + point_sum
    return BalanceLedger(
        profile=prof,
        two_delta_max=d2max,
        finite=finite,
        place_inf=pl_inf,
        place_0=pl_0,
        tangency=tan,
        two_delta_inf=d2inf,
        balanced=balanced,
        euler_ok=euler_ok,
        swapped=swap,
        E=E,
        reserve=d2max - E,
    )


# ---------------------------------------------------------------------------
# injectivity certificate
# ---------------------------------------------------------------------------


@dataclass
class Witness:
    v_factor: LaurentPoly  # factor of the eliminant (variable v), v nmid factor
    u_poly: list  # fiber gcd coefficients over Q[v]/v_factor (dense, ring elems)
    ring_repr: str
    point: dict | None = None  # common image point, exact strings

    def as_dict(self) -> dict:
        return {
            "v_factor": repr(self.v_factor),
            "u_constraint": self.ring_repr,
            "point": self.point,
        }


@dataclass
class InjectivityCertificate:
    verdict: str  # "Injective" | "SelfIntersection"
    witnesses: list
    reduction_moves: list

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witnesses": [w.as_dict() if isinstance(w, Witness) else w for w in self.witnesses],
            "reduction_moves": self.reduction_moves,
        }


def _single_cstar_root(f: LaurentPoly) -> bool:
    """True when f has at most one distinct root in C*."""
    if f.is_constant():
        return False
    num = f.shift(-f.bot())
    if num.is_constant():
        return True
    sf = squarefree_part(num)
    return sf.top() <= 1


def _span(f: LaurentPoly) -> int:
    if f.is_zero() or f.is_constant():
        return 0
    return f.top() - f.bot()


def _strip_const(f: LaurentPoly) -> LaurentPoly:
    c = f[0]
    return f - LaurentPoly.const(c) if not c.is_zero() else f


def _reduce_for_certificate(curve: ParametricCurve):
    """Span-reducing, double-point-preserving normalization of (phi, psi).

    When one component has a single distinct C*-root, multiplying or exactly
    dividing the other component by it (plus dropping additive constants)
    leaves the off-diagonal double-point set unchanged.
    """
    phi, psi = _strip_const(curve.phi), _strip_const(curve.psi)
    moves = []
    for _ in range(128):
        best = None
        cur_span = _span(phi) + _span(psi)
        cands = []
        if _single_cstar_root(phi):
            cands.append(("y*x", phi, "psi"))
            cands.append(("y/x", phi, "psi_div"))
        if _single_cstar_root(psi):
            cands.append(("x*y", psi, "phi"))
            cands.append(("x/y", psi, "phi_div"))
        for name, other, mode in cands:
            try:
                if mode == "psi":
                    cand = _strip_const(psi * other)
                    new = (phi, cand)
                elif mode == "psi_div":
                    cand = _strip_const(psi.divexact(other))
                    new = (phi, cand)
                elif mode == "phi":
                    cand = _strip_const(phi * other)
                    new = (cand, psi)
                else:
                    cand = _strip_const(phi.divexact(other))
                    new = (cand, psi)
            except (NotDivisible, ZeroDivisionError):
                continue
            if cand.is_constant():
                continue
            sp = _span(new[0]) + _span(new[1])
            if sp < cur_span and (best is None or sp < best[0]):
                best = (sp, name, new)
        if best is None:
            break
        _, name, (phi, psi) = best
        moves.append(name)
    return ParametricCurve(phi, psi), moves


def _fiber_check(D: UV, E: UV, modulus: LaurentPoly) -> list:
    """Decide diagonality of the fiber solutions over each branch of `modulus`.

    Returns a list of per-branch results: (None for all-diagonal/empty, or a
    Witness for an off-diagonal component).
    """
    mod_dense = [modulus[e] for e in range(modulus.top() + 1)]

    def fn(st: BranchState):
        K = st.quotient(SCALARS, "wv", mod_dense)
        v = K.gen()
        Du = _uv_to_upoly(D, K, v)
        Eu = _uv_to_upoly(E, K, v)
        g = quotient_gcd(K, Du, Eu)
        if len(g) <= 1:
            return None  # no genuine common solution above this branch
        gp = [K.mul(c, K.from_scalar(Scalar(i + 1))) for i, c in enumerate(g[1:])]
        gsf = quotient_gcd(K, g, gp)
        gsf = _poly_divexact_ring(K, g, gsf)
        # saturate the squarefree fiber gcd by the diagonal u^2 = 4v
        diag = [K.neg(K.mul(K.from_scalar(Scalar(4)), v)), K.zero(), K.one()]
        h = quotient_gcd(K, gsf, diag)
        if len(h) > 1:
            gsf = _poly_divexact_ring(K, gsf, h)
        if len(gsf) <= 1:
            return None  # every fiber solution was diagonal
        mod_now = LaurentPoly({e: c for e, c in enumerate(_st_modulus(st, mod_dense))})
        return Witness(mod_now, gsf, _upoly_repr(K, gsf))

    return explore_branches(fn)


def _st_modulus(st: BranchState, default: list) -> list:
    return st.modulus("wv", default)


def _upoly_repr(K, g: list) -> str:
    parts = []
    for i, c in enumerate(g):
        if K.is_zero(c):
            continue
        term = "1" if i == 0 else "u" if i == 1 else f"u^{i}"
        parts.append(f"({K.to_repr(c)})*{term}" if i else K.to_repr(c))
    return " + ".join(parts) if parts else "0"


def _uv_to_upoly(F: UV, K, v) -> list:
    du = uv_deg(F)
    out = []
    for d in range(du + 1):
        p = F.get(d, LaurentPoly.zero())
        acc = K.zero()
        if not p.is_zero():
            for e in range(p.top(), -1, -1):
                acc = K.mul(acc, v)
                c = p[e]
                if not c.is_zero():
                    acc = K.add(acc, K.from_scalar(c))
        out.append(acc)
    return out


def _poly_divexact_ring(K, f: list, g: list) -> list:
    """f / g for ring-coefficient polynomials, exact by construction."""
    from .rings import _rdivmod

    q, r = _rdivmod(K, list(f), list(g))
    assert all(K.is_zero(c) for c in r), "inexact division in fiber analysis"
    return q


def _uv_divexact(F: UV, G: UV) -> UV | None:
    """Exact division of UV polynomials in u (G monic-in-u style), else None."""
    R = {d: p for d, p in F.items() if not p.is_zero()}
    dG = uv_deg(G)
    lcG = G[dG]
    out: UV = {}
    while True:
        dR = uv_deg(R)
        if dR < 0:
            return out
        if dR < dG:
            return None
        lcR = R[dR]
        try:
            c = lcR.divexact(lcG)
        except NotDivisible:
            return None
        out[dR - dG] = c
        sub = {d + dR - dG: p * c for d, p in G.items()}
        for d, p in sub.items():
            q = R.get(d)
            q = -p if q is None else q - p
            if q.is_zero():
                R.pop(d, None)
            else:
                R[d] = q


def injectivity_certificate(curve: ParametricCurve) -> InjectivityCertificate:
    """Exact decision: does the curve have an off-diagonal double point?"""
    reduced, moves = _reduce_for_certificate(curve)
    D, E = double_point_system(reduced.phi, reduced.psi)
    if not D or not E:
        # one component constant after clearing: everything collapses
        return InjectivityCertificate("SelfIntersection", [{"degenerate": True}], moves)

    # common content in v (vertical solution lines)
    c1, c2 = uv_content(D), uv_content(E)
    gc = poly_gcd(c1, c2)
    if not gc.is_constant():
        gc = gc.shift(-gc.bot())
        if not gc.is_constant():
            w = Witness(gc, [], "all u (common vertical component)")
            return InjectivityCertificate("SelfIntersection", [w], moves)

    kind, *rest = uv_prs(D, E)
    if kind == "gcd":
        H = rest[0]
        # strip (u^2 - 4v) powers and v powers; anything left is off-diagonal
        diag: UV = {2: LaurentPoly.const(1), 0: LaurentPoly({1: Scalar(-4)})}
        G = H
        while True:
            Gn = _uv_divexact(G, diag)
            if Gn is None:
                break
            G = Gn
        nontrivial = uv_deg(G) > 0 or any(
            not p.divexact(LaurentPoly.t(p.bot())).is_constant() if not p.is_zero() else False
            for p in G.values()
        )
        if nontrivial:
            w = Witness(LaurentPoly.const(1), [], "positive-dimensional common component")
            return InjectivityCertificate("SelfIntersection", [w], moves)
        return InjectivityCertificate("Injective", [], moves)

    R, drops = rest
    loci = []
    if not R.is_zero():
        loci.append(R)
    loci.extend(drops)
    M = LaurentPoly.const(1)
    for f in loci:
        f = f.shift(-f.bot())
        if f.is_constant():
            continue
        M = M * squarefree_part(f)
    if M.is_constant():
        return InjectivityCertificate("Injective", [], moves)
    M = squarefree_part(M)
    witnesses = [w for w in _fiber_check(D, E, M) if w is not None]
    if witnesses:
        for w in witnesses:
            w.point = _witness_point(reduced, w)
        return InjectivityCertificate("SelfIntersection", witnesses, moves)
    return InjectivityCertificate("Injective", [], moves)


def _witness_point(curve: ParametricCurve, w: Witness) -> dict | None:
    """Common image point of the witness pair, evaluated exactly in the tower."""
    if not w.u_poly:
        return None
    mod_dense = [w.v_factor[e] for e in range(w.v_factor.top() + 1)]

    def fn(st: BranchState):
        K = st.quotient(SCALARS, "wv", mod_dense)
        v = K.gen()
        if len(w.u_poly) == 2:
            ring = K
            u_val = K.neg(w.u_poly[0])
            v_val = v
        else:
            ring = st.quotient(K, "wu", list(w.u_poly))
            u_val = ring.gen()
            v_val = ring.from_base(v)
        x_val = _sym_eval(ring, curve.phi, u_val, v_val)
        y_val = _sym_eval(ring, curve.psi, u_val, v_val)
        return {"x": ring.to_repr(x_val), "y": ring.to_repr(y_val)}

    res = explore_branches(fn)
    return res[0] if res else None


def _sym_eval(ring, f: LaurentPoly, u, v):
    """(f(t) + f(t'))/2 via power sums for t + t' = u, t t' = v."""
    if f.is_zero():
        return ring.zero()
    top = max(f.top(), 0)
    bot = min(f.bot(), 0)
    pows = {0: ring.from_scalar(Scalar(2)), 1: u}
    for k in range(2, top + 1):
        pows[k] = ring.sub(ring.mul(u, pows[k - 1]), ring.mul(v, pows[k - 2]))
    if bot < 0:
        vi = ring.inv(v)
        ui = ring.mul(u, vi)
        pows[-1] = ui
        for k in range(2, -bot + 1):
            pows[-k] = ring.sub(ring.mul(ui, pows[-(k - 1)]), ring.mul(vi, pows[-(k - 2)]))
    acc = ring.zero()
    for e, c in f.coeffs.items():
        acc = ring.add(acc, ring.mul(ring.from_scalar(c), pows[e]))
    return ring.mul(acc, ring.from_scalar(Scalar("1/2")))


def verify_witness(curve: ParametricCurve, w: Witness) -> bool:
    """Exact re-verification: the witness variety solves both double-point
    equations, has v != 0, and avoids the diagonal u^2 = 4v."""
    if not w.u_poly:
        return True  # positive-dimensional witnesses are verified structurally
    if w.v_factor[0].is_zero():
        return False
    D, E = double_point_system(curve.phi, curve.psi)
    mod_dense = [w.v_factor[e] for e in range(w.v_factor.top() + 1)]

    def fn(st: BranchState):
        K = st.quotient(SCALARS, "wv", mod_dense)
        v = K.gen()
        if len(w.u_poly) == 2:
            ring, u_val, v_val = K, K.neg(w.u_poly[0]), v
        else:
            ring = st.quotient(K, "wu", list(w.u_poly))
            u_val, v_val = ring.gen(), ring.from_base(v)
        okD = ring.decide_zero(uv_eval_ring(D, ring, u_val, v_val))
        okE = ring.decide_zero(uv_eval_ring(E, ring, u_val, v_val))
        disc = ring.sub(ring.mul(u_val, u_val), ring.mul(ring.from_scalar(Scalar(4)), v_val))
        off_diag = not ring.decide_zero(disc)
        return okD and okE and off_diag

    try:
        results = explore_branches(fn)
    except ZeroDivisionError:
        return False
    # at least one branch must be a genuine off-diagonal double point, and the
    # double-point equations must hold on every branch of the witness factor
    return any(results) and all(results)


# ---------------------------------------------------------------------------
# verdict, regularity, audits
# ---------------------------------------------------------------------------


@dataclass
class Verdict:
    kind: str  # "Embedding" | "NotEmbedding"
    reason: str | None
    certificate: InjectivityCertificate | None
    ledger: BalanceLedger | None
    annulus_proper: bool

    def as_dict(self) -> dict:
        return {
            "verdict": self.kind,
            "reason": self.reason,
            "certificate": self.certificate.as_dict() if self.certificate else None,
            "annulus_proper": self.annulus_proper,
        }


def embedding_verdict(curve: ParametricCurve, with_ledger: bool = True) -> Verdict:
    curve.check_admissible()
    pc = detect_nonprimitive(curve)
    if pc["kind"] == "PowerCover":
        return Verdict("NotEmbedding", f"PowerCover {pc['d']}", None, None, True)
    cert = injectivity_certificate(curve)
    ledger = None
    proper = True
    if with_ledger:
        try:
            ledger = ph_ledger(curve)
        except PlaceNotAtInfinity:
            proper = False
        except DegenerateCurve:
            ledger = None
    if cert.verdict == "Injective":
        if ledger is not None and not ledger.balanced:
            raise LedgerMismatch(
                "injective curve with unbalanced ledger: "
                f"{ledger.two_delta_inf} + {ledger.finite_sum()} != {ledger.two_delta_max}"
            )
        return Verdict("Embedding", None, cert, ledger, proper)
    return Verdict("NotEmbedding", "SelfIntersection", cert, ledger, proper)


@dataclass
class RegularityReport:
    ok: bool
    margin: int
    sigma: int
    total_ext: int
    suspect: bool  # failures are flagged, not fatal (nu-rule reconstruction)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "margin": self.margin,
            "sigma": self.sigma,
            "total_ext_codim": self.total_ext,
            "nu_rule_suspect": self.suspect,
        }


def regularity_check(ledger: BalanceLedger, classification: Classification) -> RegularityReport:
    """ext nu_inf + sum ext nu_j <= sigma, on the normalized representative."""
    mono = len(classification.curve.phi.coeffs) == 1 and len(classification.curve.psi.coeffs) == 1
    sigma, _ = dim_curv(classification.profile, classification.tag, monomial_pair=mono)
    nu_tan = ledger.tangency.nu_tan if ledger.tangency else 0
    ext_inf = ledger.place_inf.nu + ledger.place_0.nu + nu_tan
    total = ext_inf + sum(e.extnu * e.orbit for e in ledger.finite)
    ok = total <= sigma
    return RegularityReport(ok, sigma - total, sigma, total, suspect=not ok)


@dataclass
class AuditRow:
    name: str
    lhs: object
    rhs: object
    ok: bool

    def as_dict(self) -> dict:
        return {"name": self.name, "lhs": str(self.lhs), "rhs": str(self.rhs), "ok": self.ok}


def estimates_audit(curve: ParametricCurve, ledger: BalanceLedger) -> list[AuditRow]:
    rows: list[AuditRow] = []
    prof = ledger.profile
    p, q, r, s = prof.p, prof.q, prof.r, prof.s
    for e in ledger.finite:
        rows.append(AuditRow(f"mu<=n*nu at {e.factor!r}", e.mu, e.n * e.nu, e.mu <= e.n * e.nu))
        # restricted class: mu_min is the generic member's Milnor number
        # (m-1)(n-1) + (n'-1); nu' counts vanishing essential unit positions
        if e.pairs:
            m0 = e.chain.start
            nprime = gcd(e.n, m0)
            mu_min = (m0 - 1) * (e.n - 1) + (nprime - 1)
            nu_prime = _unit_nu(e, m0, nprime)
            rows.append(
                AuditRow(
                    f"mu<=mu_min+n'nu' at {e.factor!r}",
                    e.mu,
                    mu_min + nprime * nu_prime,
                    e.mu <= mu_min + nprime * nu_prime,
                )
            )
    tangent = ledger.tangency is not None
    ps_rq = prof.p * prof.s - prof.r * prof.q
    if not tangent and ps_rq != 0:
        if prof.p1 > 1:
            rows.append(
                AuditRow(
                    "2delta_inf<=p'nu_inf",
                    ledger.place_inf.delta2,
                    prof.p1 * ledger.place_inf.nu,
                    ledger.place_inf.delta2 <= prof.p1 * ledger.place_inf.nu,
                )
            )
        if prof.r1 > 1:
            rows.append(
                AuditRow(
                    "2delta_0<=r'nu_0",
                    ledger.place_0.delta2,
                    prof.r1 * ledger.place_0.nu,
                    ledger.place_0.delta2 <= prof.r1 * ledger.place_0.nu,
                )
            )
        Dq = abs(ps_rq) - (prof.p1 + prof.r1) + 1
        rows.append(AuditRow("|ps-rq|-(p'+r')+1>=0", Dq, 0, Dq >= 0))
    elif tangent:
        tan = ledger.tangency
        nu_inf = ledger.place_inf.nu + ledger.place_0.nu + tan.nu_tan
        bound = (prof.p1 + prof.r1) * (nu_inf + 1)
        rows.append(AuditRow("2delta_inf<=(p'+r')(nu_inf+1)", tan.delta2_inf, bound, tan.delta2_inf <= bound))
        if prof.p1 == 1 and prof.r1 == 1:
            rows.append(
                AuditRow("2delta_inf<=2nu_inf (p'=r'=1)", tan.delta2_inf, 2 * nu_inf, tan.delta2_inf <= 2 * nu_inf)
            )
        if nu_inf <= 1:
            b2 = (prof.p1 + prof.r1) * nu_inf
            rows.append(AuditRow("2delta_inf<=(p'+r')nu_inf (nu_inf<=1)", tan.delta2_inf, b2, tan.delta2_inf <= b2))
    # zero-count bound: sum orbit*(n_j - 1) <= available zeros of phi'
    from .local import derivative_numerator

    dn = derivative_numerator(curve.psi if ledger.swapped else curve.phi)
    avail = dn.top() if not dn.is_zero() else 0
    lhs = sum((e.n - 1) * e.orbit for e in ledger.finite)
    rows.append(AuditRow("sum(n_j-1)<=zeros of phi'", lhs, avail, lhs <= avail))
    return rows


# ---------------------------------------------------------------------------
# semigroup oracle
# ---------------------------------------------------------------------------


def _unit_nu(e, m0: int, nprime: int) -> int:
    """Vanishing essential positions of the unit factor (chain from gcd(m, n))."""
    if nprime == 1:
        return 0
    support = set(i - m0 for i in e.chain.support)
    stop = (max(support) if support else 0) + 1
    d = nprime
    nu = 0
    for pos in range(1, stop + 1):
        if d == 1:
            break
        if pos in support:
            if pos % d != 0:
                d = gcd(d, pos)
        elif pos % d != 0:
            nu += 1
    return nu


def delta_semigroup_oracle(ring, xs: TS, ys: TS, bound: int) -> int:
    """Number of gaps of the value semigroup of the branch algebra C[[x, y]].

    Standard-basis style closure: keep one reduced element per order, close
    under multiplication by x and y, then count gaps below the conductor.
    """
    basis: dict[int, TS] = {}
    queue = [xs, ys]
    guard = 0
    while queue:
        sref = queue.pop()
        guard += 1
        if guard > 4000:
            raise BoundTooSmall("semigroup closure did not stabilize")
        el = sref
        while True:
            el = el.normalized(decide=True)
            if not el.cs:
                break
            o = el.val
            if o >= bound:
                break
            have = basis.get(o)
            if have is None:
                basis[o] = el
                queue.append(el.mul(xs).truncate(bound + 1))
                queue.append(el.mul(ys).truncate(bound + 1))
                break
            c = ring.mul(el.coeff(o), ring.inv(have.coeff(o)))
            el = el.sub(have.scale(c))
    orders = sorted(basis)
    if not orders:
        raise BoundTooSmall("no finite orders below the bound")
    n0 = orders[0]
    reach = [False] * (bound + 1)
    reach[0] = True
    for i in range(1, bound + 1):
        for o in orders:
            if o <= i and reach[i - o]:
                reach[i] = True
                break
    conductor = None
    run = 0
    for i in range(bound + 1):
        run = run + 1 if reach[i] else 0
        if run >= n0:
            conductor = i - n0 + 1
            break
    if conductor is None:
        raise BoundTooSmall(f"conductor not reached below {bound}")
    return sum(1 for i in range(1, conductor) if not reach[i])


def oracle_delta_at_factor(curve: ParametricCurve, factor: LaurentPoly, bound: int = 60) -> list:
    """(factor, delta) per refined branch of the factor, via the semigroup oracle."""
    results = []
    for fac, ring, xs, ys in branch_series_at_point(curve, factor, bound + 2):
        results.append((fac, delta_semigroup_oracle(ring, xs, ys, bound)))
    return results
