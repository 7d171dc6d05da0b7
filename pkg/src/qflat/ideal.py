"""Flat ideals of ([0,1], d_L): decision procedure and constructions.

A flat ideal is an inhabited fuzzy lower set whose tensor distributes over
binary meets of upper sets.  The decision procedure checks three
conditions on the piecewise representation: the bottom carries full
membership (F1), values at or above the idempotent hull ceiling are
themselves idempotent (F2), and the capped restriction to every active
summand frame is a principal ideal of that frame (F3).  Violations of F2
and F3 come with a concrete pair of upper sets separating the two sides
of the flatness identity, with all three tensor values computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .order import (
    _cplus,
    _min_gap_sup,
    _piece_over,
    _solve_eq,
    check_lower_set,
    hull_positions,
    principal_lower,
    principal_upper,
    tensor,
)
from .pwfn import (
    Breakpoint,
    LinFrac,
    PwFn,
    affine_piece,
    const_piece,
    linfrac,
    pointwise_min,
    pwfn,
)
from .rat import ONE, ZERO, DomainError, Rat, ensure_unit, fmt_rat
from .report import HOLDS, CheckReport, PointWitness, TensorWitness, violated
from .tnorms import OrdinalSumTNorm, Summand, SummandKind

# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class NetSpec:
    """A monotone increasing rational sequence with a declared limit.

    The finite point list stands for the tail behaviour: when ``attained``
    the net is eventually constant at ``limit``, otherwise it increases
    strictly toward ``limit`` without reaching it.
    """

    points: tuple[Rat, ...]
    limit: Rat
    attained: bool

    def __post_init__(self):
        if not self.points:
            raise DomainError("a net needs at least one point")
        for p in self.points:
            ensure_unit(p, "net point")
        ensure_unit(self.limit, "net limit")
        for a, b in zip(self.points, self.points[1:]):
            if a >= b:
                raise DomainError("net points must be strictly increasing")
        if self.limit < self.points[-1]:
            raise DomainError("net limit below the last point")
        if not self.attained and self.limit == self.points[-1]:
            raise DomainError("a non-attained limit must lie above every point")


@dataclass(frozen=True)
class KInterval:
    lo: Rat
    lo_closed: bool
    hi: Rat
    hi_closed: bool

    def describe(self) -> str:
        if self.lo == self.hi:
            return "{" + fmt_rat(self.lo) + "}"
        lb = "[" if self.lo_closed else "("
        rb = "]" if self.hi_closed else ")"
        return f"{lb}{fmt_rat(self.lo)}, {fmt_rat(self.hi)}{rb}"


@dataclass(frozen=True)
class KSet:
    """The set where a lower set reaches its idempotent-hull ceiling."""

    intervals: tuple[KInterval, ...]

    def describe(self) -> str:
        return " u ".join(iv.describe() for iv in self.intervals) or "empty"


# ---------------------------------------------------------------------------
# inhabitedness


def is_inhabited(phi: PwFn) -> CheckReport:
    """Whether the supremum of phi reaches 1 (attained or as a limit)."""
    sup = phi.global_sup()
    detail = f"sup={fmt_rat(sup.value)} attained={sup.attained}"
    if sup.value == ONE:
        return CheckReport(True, detail=detail)
    return violated(
        "DEF", PointWitness(_sup_position(phi), (("sup", sup.value),)), detail=detail
    )


def _sup_position(phi: PwFn) -> Rat:
    target = phi.global_sup().value
    for bp in phi.breakpoints:
        if bp.at == target:
            return bp.x
    for i, bp in enumerate(phi.breakpoints):
        if bp.right == target or bp.left == target:
            return bp.x
    return phi.breakpoints[0].x  # pragma: no cover


# ---------------------------------------------------------------------------
# frame principals


def frame_principal_lower(T: OrdinalSumTNorm, s: Summand, b: Rat) -> PwFn:
    """The frame-principal ideal d_L^c(-, b) on [s.lo, s.hi]."""
    lo, hi = s.lo, s.hi
    if not lo <= b <= hi:
        raise DomainError("principal point outside the frame")
    if b == hi:
        return PwFn.constant(hi, lo, hi)
    if s.kind is SummandKind.LUKASIEWICZ:
        piece = affine_piece(-ONE, hi + b)
    else:
        piece = linfrac(lo, (hi - lo) * (b - lo) - lo * lo, ONE, -lo)
    pts: list[Breakpoint] = []
    pcs: list[LinFrac] = []
    if b > lo:
        pts.append(Breakpoint(lo, hi, hi, hi))
        pcs.append(const_piece(hi))
    pts.append(Breakpoint(b, hi, hi, piece(b)))
    pcs.append(piece)
    pts.append(Breakpoint(hi, b, b, b))
    return pwfn(pts, pcs)


def frame_principal_upper(T: OrdinalSumTNorm, s: Summand, c: Rat) -> PwFn:
    """The frame-principal upper set d_L^c(c, -) on [s.lo, s.hi]."""
    lo, hi = s.lo, s.hi
    if not lo <= c <= hi:
        raise DomainError("principal point outside the frame")
    if c == lo:
        return PwFn.constant(hi, lo, hi)
    if s.kind is SummandKind.LUKASIEWICZ:
        piece = affine_piece(ONE, hi - c)
    else:
        slope = (hi - lo) / (c - lo)
        piece = affine_piece(slope, lo - slope * lo)
    pts = [Breakpoint(lo, piece(lo), piece(lo), piece(lo)), Breakpoint(c, hi, hi, hi)]
    pcs = [piece]
    if c < hi:
        pts.append(Breakpoint(hi, hi, hi, hi))
        pcs.append(const_piece(hi))
    return pwfn(pts, pcs)


def lift_frame_upper(T: OrdinalSumTNorm, s: Summand, psi: PwFn) -> PwFn:
    """Extend a frame upper set to [0,1]: identity below, constant above."""
    if (psi.lo, psi.hi) != (s.lo, s.hi):
        raise DomainError("frame function does not match the summand")
    pts: list[Breakpoint] = []
    pcs: list[LinFrac] = []
    if s.lo > 0:
        pts.append(Breakpoint(ZERO, ZERO, ZERO, ZERO))
        pcs.append(affine_piece(ONE, ZERO))
        first = psi.breakpoints[0]
        pts.append(Breakpoint(s.lo, s.lo, first.at, first.right))
    else:
        pts.append(psi.breakpoints[0])
    pts.extend(psi.breakpoints[1:])
    pcs.extend(psi.pieces)
    top = psi.breakpoints[-1].at
    if s.hi < ONE:
        last = pts.pop()
        pts.append(Breakpoint(last.x, last.left, last.at, last.at))
        pcs.append(const_piece(top))
        pts.append(Breakpoint(ONE, top, top, top))
    return pwfn(pts, pcs)


# ---------------------------------------------------------------------------
# flat-ideal conditions


def flat_conditions(T: OrdinalSumTNorm, phi: PwFn) -> dict[str, CheckReport]:
    """Per-rule verdicts for F1, F2 and F3, evaluated independently.

    Assumes phi already passed :func:`qflat.order.check_lower_set`.
    """
    return {
        "F1": _check_f1(phi),
        "F2": _check_f2(T, phi),
        "F3": _check_f3(T, phi),
    }


def check_flat(T: OrdinalSumTNorm, phi: PwFn) -> CheckReport:
    """Decide whether phi is a flat ideal of ([0,1], d_L).

    A candidate failing the lower-set precondition is reported with the
    lower-set rule label (L1-L4); genuine flatness failures carry F1-F3.
    """
    pre = check_lower_set(T, phi)
    if not pre:
        detail = "not a fuzzy lower set"
        if pre.detail:
            detail += "; " + pre.detail
        return CheckReport(False, rule=pre.rule, witness=pre.witness, detail=detail)
    for checker in (
        lambda: _check_f1(phi),
        lambda: _check_f2(T, phi),
        lambda: _check_f3(T, phi),
    ):
        rep = checker()
        if not rep:
            return rep
    return HOLDS


def _check_f1(phi: PwFn) -> CheckReport:
    v0 = phi.eval(ZERO)
    if v0 == ONE:
        return HOLDS
    return violated("F1", PointWitness(ZERO, (("phi(0)", v0),)))


def _check_f2(T: OrdinalSumTNorm, phi: PwFn) -> CheckReport:
    P = hull_positions(T, phi, "hi")
    for c in P:
        fc = phi.eval(c)
        if fc >= _cplus(T, c) and not T.is_idempotent(fc):
            return _f2_violation(T, phi, c)
    for p, q in zip(P, P[1:]):
        m = (p + q) / 2
        if phi.eval(m) < _cplus(T, m):
            continue
        piece = _piece_over(phi, p)
        if piece.is_const:
            if not T.is_idempotent(piece(m)):
                return _f2_violation(T, phi, m)
            continue
        va, vb = sorted((piece(p), piece(q)))
        for s in T.summands:
            w_lo, w_hi = max(va, s.lo), min(vb, s.hi)
            if w_lo < w_hi:
                target = (w_lo + w_hi) / 2
                c = _solve_eq(piece, target)
                assert c is not None and p < c < q
                return _f2_violation(T, phi, c)
    return HOLDS


def _f2_violation(T: OrdinalSumTNorm, phi: PwFn, c: Rat) -> CheckReport:
    fc = phi.eval(c)
    detail = (
        f"phi(c)={fmt_rat(fc)} >= c_plus={fmt_rat(_cplus(T, c))}"
        f" but {fmt_rat(fc)} is not idempotent"
    )
    wit = _verified_pair_witness(T, phi, [c])
    if wit is not None:
        return violated("F2", wit, detail=detail)
    return violated("F2", PointWitness(c, (("phi(c)", fc), ("c_plus", _cplus(T, c)))), detail=detail)


def _check_f3(T: OrdinalSumTNorm, phi: PwFn) -> CheckReport:
    for s in T.summands:
        if phi.eval(s.lo) <= s.lo:
            continue
        sigma = restricted_cap(phi, s)
        b = min(s.hi, phi.eval(s.hi))
        target = frame_principal_lower(T, s, b)
        if sigma == target:
            continue
        cands = _difference_points(sigma, target)
        detail = (
            f"restriction to ({fmt_rat(s.lo)}, {fmt_rat(s.hi)}) is not the"
            f" frame-principal ideal at {fmt_rat(b)}"
        )
        wit = _verified_pair_witness(T, phi, cands, frame=s)
        if wit is not None:
            return violated("F3", wit, detail=detail)
        return violated(
            "F3", PointWitness(cands[0], (("sigma", sigma.eval(cands[0])), ("principal", target.eval(cands[0])))), detail=detail
        )
    return HOLDS


def restricted_cap(phi: PwFn, s: Summand) -> PwFn:
    """sigma = min(c+, phi) on the frame of s, kept in frame coordinates."""
    return pointwise_min(
        phi.restrict(s.lo, s.hi), PwFn.constant(s.hi, s.lo, s.hi)
    )


def _difference_points(f: PwFn, g: PwFn) -> list[Rat]:
    """Frame points where two same-domain functions visibly differ."""
    pos = sorted({bp.x for bp in f.breakpoints} | {bp.x for bp in g.breakpoints})
    f2, g2 = f.refine(pos), g.refine(pos)
    out = []
    for bf, bg in zip(f2.breakpoints, g2.breakpoints):
        if bf.at != bg.at:
            out.append(bf.x)
    for i in range(len(f2.pieces)):
        if f2.pieces[i] != g2.pieces[i]:
            out.append((pos[i] + pos[i + 1]) / 2)
    if not out:  # differ only in one-sided limits; midpoints still expose it
        out = [(a + b) / 2 for a, b in zip(pos, pos[1:])]
    return sorted(set(out))


def pasted_flat(T: OrdinalSumTNorm, s: Summand, b: Rat) -> PwFn:
    """A flat ideal pasted from a frame principal: full membership up to
    the frame, the frame-principal profile d_L^c(-, b) inside it, and the
    constant tail b beyond."""
    lo, hi = s.lo, s.hi
    fp = frame_principal_lower(T, s, b)
    pts: list[Breakpoint] = []
    pcs: list[LinFrac] = []
    if lo > 0:
        pts.append(Breakpoint(ZERO, ONE, ONE, ONE))
        pcs.append(const_piece(ONE))
    first = fp.breakpoints[0]
    pts.append(Breakpoint(lo, ONE, ONE, first.right))
    pts.extend(fp.breakpoints[1:])
    pcs.extend(fp.pieces)
    if hi < ONE:
        last = pts.pop()
        pts.append(Breakpoint(hi, last.left, last.at, last.at))
        pcs.append(const_piece(b))
        pts.append(Breakpoint(ONE, b, b, b))
    return pwfn(pts, pcs)


def witness_upper_pair(T: OrdinalSumTNorm, phi: PwFn, c: Rat) -> tuple[PwFn, PwFn]:
    """The canonical falsifying pair: psi1 constant phi(c), psi2 = d_L(c, -)."""
    c = ensure_unit(Rat(c), "witness point")
    return PwFn.constant(phi.eval(c)), principal_upper(T, c)


def _verified_pair_witness(
    T: OrdinalSumTNorm,
    phi: PwFn,
    candidates: list[Rat],
    frame: Optional[Summand] = None,
) -> Optional[TensorWitness]:
    """Try canonical upper-set pairs until one strictly breaks flatness."""
    candidates = candidates[:12]
    trials: list[tuple[Rat, PwFn, PwFn]] = []
    for c in candidates:
        psi1, psi2 = witness_upper_pair(T, phi, c)
        trials.append((c, psi1, psi2))
    if frame is not None:
        sigma = restricted_cap(phi, frame)
        for c in candidates:
            if not frame.lo <= c <= frame.hi:
                continue
            k = sigma.eval(c)
            psi1 = lift_frame_upper(T, frame, PwFn.constant(k, frame.lo, frame.hi))
            psi2 = lift_frame_upper(T, frame, frame_principal_upper(T, frame, c))
            trials.append((c, psi1, psi2))
    for c, psi1, psi2 in trials:
        joint = tensor(T, phi, pointwise_min(psi1, psi2)).value
        t1 = tensor(T, phi, psi1).value
        t2 = tensor(T, phi, psi2).value
        if joint < min(t1, t2):
            return TensorWitness(c, psi1, psi2, joint, t1, t2)
    return None


# ---------------------------------------------------------------------------
# structure: principal extraction, restriction, nets


def extract_principal(T: OrdinalSumTNorm, phi: PwFn) -> Optional[Rat]:
    """Recover x with phi = d_L(-, x) for a basic-kind t-norm on (0,1).

    The candidate is forced: x = phi(1).  Returns None when the exact
    function equality fails (which, for a flat ideal, signals an internal
    inconsistency rather than a legitimate outcome).
    """
    if len(T.summands) != 1 or T.summands[0].lo != ZERO or T.summands[0].hi != ONE:
        raise DomainError("principal extraction needs a single summand covering (0,1)")
    x = phi.eval(ONE)
    if phi == principal_lower(T, x):
        return x
    return None


def restrict_ideal(T: OrdinalSumTNorm, phi: PwFn, c: Rat) -> PwFn:
    """Lemma: min(c+, phi) on [c-, c+] is a flat ideal of the frame quantale.

    Preconditions: c is not idempotent and phi(c-) > c-; phi should be a
    flat ideal of the ambient quantale.  The restriction is returned in
    frame coordinates (domain [c-, c+]); its value at c- is exactly c+.
    """
    c = ensure_unit(Rat(c), "restriction point")
    hull = T.idem_hull(c)
    if hull.degenerate:
        raise DomainError(f"{fmt_rat(c)} is idempotent; the frame is degenerate")
    assert hull.summand is not None
    if phi.eval(hull.lo) <= hull.lo:
        raise DomainError(
            f"phi({fmt_rat(hull.lo)}) <= {fmt_rat(hull.lo)}: restriction premise fails"
        )
    sigma = restricted_cap(phi, hull.summand)
    if sigma.eval(hull.lo) != hull.hi:
        raise DomainError(
            "restriction is not inhabited in the frame; phi is not flat here"
        )
    return sigma


def net_ideal(T: OrdinalSumTNorm, net: NetSpec) -> PwFn:
    """The forward-Cauchy ideal of a monotone net, built exactly.

    For an attained limit this is the principal lower set of the limit.
    Otherwise it is the pointwise limit of principal lower sets from
    below: full membership strictly below the limit, the idempotent-hull
    ceiling at the limit point, and the residual tail beyond it.
    """
    if net.attained:
        return principal_lower(T, net.limit)
    x = net.limit
    s = next((s for s in T.summands if s.lo < x <= s.hi), None)
    pts: list[Breakpoint] = [Breakpoint(ZERO, ONE, ONE, ONE)]
    pcs: list[LinFrac] = [const_piece(ONE)]
    if s is None:
        # the limit is approached through the min region: constant tail
        pts.append(Breakpoint(x, ONE, x, x))
        if x < ONE:
            pcs.append(const_piece(x))
            pts.append(Breakpoint(ONE, x, x, x))
        return pwfn(pts, pcs)
    lo, hi = s.lo, s.hi
    if s.kind is SummandKind.LUKASIEWICZ:
        piece = affine_piece(-ONE, hi + x)
    else:
        piece = linfrac(lo, (hi - lo) * (x - lo) - lo * lo, ONE, -lo)
    pts.append(Breakpoint(x, ONE, hi, piece(x)))
    if x < hi:
        pcs.append(piece)
        pts.append(Breakpoint(hi, x, x, x))
    if hi < ONE:
        pcs.append(const_piece(x))
        pts.append(Breakpoint(ONE, x, x, x))
    return pwfn(pts, pcs)


# ---------------------------------------------------------------------------
# the K-reduction of tensors


def k_set(T: OrdinalSumTNorm, phi: PwFn) -> KSet:
    """The exact set {x : phi(x) >= x+} as finitely many intervals."""
    P = hull_positions(T, phi, "hi")
    atoms: list[tuple[Rat, bool, Rat, bool]] = []
    for i, c in enumerate(P):
        if phi.eval(c) >= _cplus(T, c):
            atoms.append((c, True, c, True))
        if i + 1 < len(P):
            q = P[i + 1]
            m = (c + q) / 2
            if phi.eval(m) >= _cplus(T, m):
                atoms.append((c, False, q, False))
    merged: list[list] = []
    for lo, lc, hi, hc in atoms:
        if merged and merged[-1][2] == lo and (merged[-1][3] or lc):
            merged[-1][2], merged[-1][3] = hi, hc
        else:
            merged.append([lo, lc, hi, hc])
    return KSet(tuple(KInterval(*m) for m in merged))


def tensor_via_k(T: OrdinalSumTNorm, phi: PwFn, psi: PwFn) -> Rat:
    """sup over K_phi of min(phi, psi); equals tensor(T, phi, psi) whenever
    phi satisfies the ceiling and frame-principality conditions."""
    K = k_set(T, phi)
    if not K.intervals:
        raise DomainError("empty K set: phi violates the ceiling condition at 0")
    ends = {iv.lo for iv in K.intervals} | {iv.hi for iv in K.intervals}
    pos = sorted({bp.x for bp in phi.breakpoints} | {bp.x for bp in psi.breakpoints} | ends)
    f, g = phi.refine(pos), psi.refine(pos)
    best: Optional[Rat] = None
    for iv in K.intervals:
        for i, c in enumerate(pos):
            inside = (iv.lo < c < iv.hi) or (c == iv.lo and iv.lo_closed) or (
                c == iv.hi and iv.hi_closed
            )
            if inside:
                val = min(f.breakpoints[i].at, g.breakpoints[i].at)
                best = val if best is None else max(best, val)
        for i in range(len(pos) - 1):
            u, v = pos[i], pos[i + 1]
            if u >= iv.lo and v <= iv.hi and u < v:
                out = _min_gap_sup(f.pieces[i], g.pieces[i], u, v)
                best = out.value if best is None else max(best, out.value)
    assert best is not None
    return best
