"""The canonical fuzzy order on [0,1], tensors, and set-characterization checks.

``d_L(x, y) = x -> y`` turns the unit interval into a fuzzy ordered set.
This module builds principal lower/upper sets exactly, computes tensor
products (sups of ``conj(phi(x), psi(x))``) analytically piece by piece,
and decides membership in the classes of fuzzy lower sets and fuzzy upper
sets by reducing to finitely many exact checks on the piecewise
representation.  Every "violated" verdict carries a real pair at which the
defining inequality fails, re-checkable with two evaluations and one
conjunction.
"""

from __future__ import annotations

import bisect
from typing import Callable, Optional

from ._sup import SupOutcome, linfrac_ratfunc, p_add, p_mul, p_scale, p_sub, sup_ratfunc
from .pwfn import (
    Breakpoint,
    LinFrac,
    PwFn,
    SupResult,
    affine_piece,
    affine_transport,
    const_piece,
    crossings,
    equal_points,
    linfrac,
    pointwise_min,
    pwfn,
)
from .rat import ONE, ZERO, DomainError, Rat, ensure_unit, fmt_rat
from .report import HOLDS, CheckReport, PairWitness, PointWitness, violated
from .tnorms import OrdinalSumTNorm, Summand, SummandKind

# ---------------------------------------------------------------------------
# canonical orders


def d_L(T: OrdinalSumTNorm, x: Rat, y: Rat) -> Rat:
    """The canonical fuzzy order: d_L(x, y) = x -> y."""
    return T.residuum(x, y)


def d_R(T: OrdinalSumTNorm, x: Rat, y: Rat) -> Rat:
    """The opposite order: d_R(x, y) = y -> x."""
    return T.residuum(y, x)


# ---------------------------------------------------------------------------
# principal sets


def principal_lower(T: OrdinalSumTNorm, x0: Rat) -> PwFn:
    """The principal lower set y -> d_L(y, x0), built exactly."""
    x0 = ensure_unit(Rat(x0), "principal point")
    if x0 == ONE:
        return PwFn.constant(ONE)
    s = next((s for s in T.summands if s.lo <= x0 < s.hi), None)
    pts: list[Breakpoint] = []
    pcs: list[LinFrac] = []
    if s is None:
        if x0 > 0:
            pts.append(Breakpoint(ZERO, ONE, ONE, ONE))
            pcs.append(const_piece(ONE))
        pts.append(Breakpoint(x0, ONE, ONE, x0))
        pcs.append(const_piece(x0))
        pts.append(Breakpoint(ONE, x0, x0, x0))
    else:
        lo, hi = s.lo, s.hi
        if s.kind is SummandKind.LUKASIEWICZ:
            piece = affine_piece(-ONE, hi + x0)
        else:
            piece = linfrac(lo, (hi - lo) * (x0 - lo) - lo * lo, ONE, -lo)
        if x0 > 0:
            pts.append(Breakpoint(ZERO, ONE, ONE, ONE))
            pcs.append(const_piece(ONE))
        pts.append(Breakpoint(x0, ONE, ONE, piece(x0)))
        pcs.append(piece)
        if hi < ONE:
            pts.append(Breakpoint(hi, x0, x0, x0))
            pcs.append(const_piece(x0))
        pts.append(Breakpoint(ONE, x0, x0, x0))
    return pwfn(pts, pcs)


def principal_upper(T: OrdinalSumTNorm, x0: Rat) -> PwFn:
    """The principal upper set y -> d_L(x0, y), built exactly."""
    x0 = ensure_unit(Rat(x0), "principal point")
    if x0 == ZERO:
        return PwFn.constant(ONE)
    s = next((s for s in T.summands if s.lo < x0 <= s.hi), None)
    pts: list[Breakpoint] = []
    pcs: list[LinFrac] = []
    if s is None:
        pts.append(Breakpoint(ZERO, ZERO, ZERO, ZERO))
        pcs.append(affine_piece(ONE, ZERO))
        pts.append(Breakpoint(x0, x0, ONE, ONE))
    else:
        lo, hi = s.lo, s.hi
        if s.kind is SummandKind.LUKASIEWICZ:
            piece = affine_piece(ONE, hi - x0)
        else:
            slope = (hi - lo) / (x0 - lo)
            piece = affine_piece(slope, lo - slope * lo)
        if lo > 0:
            pts.append(Breakpoint(ZERO, ZERO, ZERO, ZERO))
            pcs.append(affine_piece(ONE, ZERO))
            pts.append(Breakpoint(lo, lo, piece(lo), piece(lo)))
        else:
            v0 = piece(ZERO)
            pts.append(Breakpoint(ZERO, v0, v0, v0))
        pcs.append(piece)
        pts.append(Breakpoint(x0, piece(x0), ONE, ONE))
    if x0 < ONE:
        pcs.append(const_piece(ONE))
        pts.append(Breakpoint(ONE, ONE, ONE, ONE))
    return pwfn(pts, pcs)


# ---------------------------------------------------------------------------
# tensor products


def _require_unit_domain(f: PwFn, what: str) -> None:
    if f.lo != ZERO or f.hi != ONE:
        raise DomainError(f"{what} must live on the full interval [0,1]")


def _piece_over(f: PwFn, p: Rat) -> LinFrac:
    """The piece covering an open gap starting at p (p inside one f-gap)."""
    i = bisect.bisect_right(f._xs, p) - 1
    return f.pieces[min(i, len(f.pieces) - 1)]


def _aligned(
    T: OrdinalSumTNorm, phi: PwFn, psi: PwFn
) -> tuple[list[Rat], PwFn, PwFn]:
    """Common positions refined so each summand-branch is constant per gap."""
    pos = sorted({bp.x for bp in phi.breakpoints} | {bp.x for bp in psi.breakpoints})
    phi2, psi2 = phi.refine(pos), psi.refine(pos)
    levels = T.idempotent_levels()
    extra: set[Rat] = set()
    if levels:
        for f in (phi2, psi2):
            for i, piece in enumerate(f.pieces):
                u, v = f.breakpoints[i].x, f.breakpoints[i + 1].x
                for lv in levels:
                    x = _solve_eq(piece, lv)
                    if x is not None and u < x < v:
                        extra.add(x)
    if extra:
        phi2, psi2 = phi2.refine(extra), psi2.refine(extra)
    return [bp.x for bp in phi2.breakpoints], phi2, psi2


def _solve_eq(piece: LinFrac, k: Rat) -> Optional[Rat]:
    den = piece.a - k * piece.c
    if den == 0:
        return None
    return (k * piece.d - piece.b) / den


def _min_gap_sup(fp: LinFrac, gp: LinFrac, u: Rat, v: Rat) -> SupOutcome:
    """Sup of min(f, g) over the open gap (u, v), interior attainment flagged."""
    xs = [u] + crossings(fp, gp, u, v) + [v]
    best: Optional[Rat] = None
    attained = False
    for p, q in zip(xs, xs[1:]):
        piece = fp
        for t in ((p + q) / 2, p + (q - p) / 4, p + 3 * (q - p) / 4):
            fa, ga = fp(t), gp(t)
            if fa != ga:
                piece = fp if fa < ga else gp
                break
        for point, interior in ((p, p != u), (q, q != v)):
            val = piece(point)
            if best is None or val > best:
                best, attained = val, interior
            elif val == best:
                attained = attained or interior
        if piece.is_const and best == piece(p):
            attained = True
    assert best is not None
    return SupOutcome(best, attained)


def _conj_gap_sup(
    T: OrdinalSumTNorm, fp: LinFrac, gp: LinFrac, u: Rat, v: Rat
) -> SupOutcome:
    """Sup of conj(f(x), g(x)) over (u, v); the branch is constant there."""
    mid = (u + v) / 2
    fm, gm = fp(mid), gp(mid)
    s = next(
        (s for s in T.summands if s.lo <= fm <= s.hi and s.lo <= gm <= s.hi), None
    )
    if s is None:
        return _min_gap_sup(fp, gp, u, v)
    nf, df = linfrac_ratfunc(fp)
    ng, dg = linfrac_ratfunc(gp)
    if s.kind is SummandKind.LUKASIEWICZ:
        num = p_add(p_mul(nf, dg), p_mul(ng, df))
        out = sup_ratfunc(num, p_mul(df, dg), u, v)
        val = out.value - s.hi
        if val > s.lo:
            return SupOutcome(val, out.attained)
        return SupOutcome(s.lo, True)
    lo, hi = s.lo, s.hi
    num = p_add(
        p_mul(p_sub(nf, p_scale(df, lo)), p_sub(ng, p_scale(dg, lo))),
        p_scale(p_mul(df, dg), lo * (hi - lo)),
    )
    return sup_ratfunc(num, p_scale(p_mul(df, dg), hi - lo), u, v)


def tensor(T: OrdinalSumTNorm, phi: PwFn, psi: PwFn) -> SupResult:
    """Exact supremum of x -> conj(phi(x), psi(x)), one-sided limits included."""
    _require_unit_domain(phi, "tensor operand")
    _require_unit_domain(psi, "tensor operand")
    pos, phi2, psi2 = _aligned(T, phi, psi)
    best: Optional[Rat] = None
    attained = False

    def feed(val: Rat, reach: bool) -> None:
        nonlocal best, attained
        if best is None or val > best:
            best, attained = val, reach
        elif val == best:
            attained = attained or reach

    for bf, bg in zip(phi2.breakpoints, psi2.breakpoints):
        feed(T.conj(bf.at, bg.at), True)
    for i in range(len(phi2.pieces)):
        u, v = pos[i], pos[i + 1]
        out = _conj_gap_sup(T, phi2.pieces[i], psi2.pieces[i], u, v)
        feed(out.value, out.attained)
    assert best is not None
    return SupResult(best, attained)


# ---------------------------------------------------------------------------
# characterization checkers: shared machinery


def _cminus(T: OrdinalSumTNorm, c: Rat) -> Rat:
    return T.idem_hull(c).lo


def _cplus(T: OrdinalSumTNorm, c: Rat) -> Rat:
    return T.idem_hull(c).hi


def _gap_summand(T: OrdinalSumTNorm, p: Rat, q: Rat) -> Optional[Summand]:
    for s in T.summands:
        if s.lo <= p and q <= s.hi:
            return s
    return None


def hull_positions(T: OrdinalSumTNorm, f: PwFn, bound: str) -> list[Rat]:
    """Positions where predicates against c-minus/c-plus can change truth.

    Breakpoints of f, summand endpoints, and the exact points where f meets
    the comparator (the identity on idempotent gaps, the relevant summand
    endpoint inside a summand).
    """
    base = sorted(
        {ZERO, ONE}
        | {bp.x for bp in f.breakpoints}
        | set(T.idempotent_levels())
    )
    pos = set(base)
    ident = affine_piece(ONE, ZERO)
    for p, q in zip(base, base[1:]):
        s = _gap_summand(T, p, q)
        comp = const_piece(getattr(s, bound)) if s is not None else ident
        piece = _piece_over(f, p)
        pos.update(x for x in equal_points(piece, comp, p, q))
    return sorted(pos)


def _probe_not_equal(f: PwFn, p: Rat, q: Rat, value: Rat) -> Rat:
    """A point in (p, q) where f differs from value (f non-constant there)."""
    for t in ((p + q) / 2, p + (q - p) / 4, p + 3 * (q - p) / 4):
        if f.eval(t) != value:
            return t
    raise AssertionError("piece unexpectedly constant")  # pragma: no cover


def def_lower_witness(T: OrdinalSumTNorm, phi: PwFn, x: Rat, y: Rat) -> PairWitness:
    """The definitional inequality conj(phi(x), d_L(y,x)) <= phi(y) at (x, y)."""
    vx, vy = phi.eval(x), phi.eval(y)
    lhs = T.conj(vx, T.residuum(y, x))
    if lhs <= vy:  # pragma: no cover - guards witness-mapping bugs
        raise AssertionError("lower-set witness does not violate the definition")
    return PairWitness(x, y, vx, vy, lhs, vy, "<=")


def def_upper_witness(T: OrdinalSumTNorm, psi: PwFn, x: Rat, y: Rat) -> PairWitness:
    """The definitional inequality conj(d_L(x,y), psi(x)) <= psi(y) at (x, y)."""
    vx, vy = psi.eval(x), psi.eval(y)
    lhs = T.conj(T.residuum(x, y), vx)
    if lhs <= vy:  # pragma: no cover
        raise AssertionError("upper-set witness does not violate the definition")
    return PairWitness(x, y, vx, vy, lhs, vy, "<=")


def sigma_hat(T: OrdinalSumTNorm, f: PwFn, s: Summand) -> PwFn:
    """min(c+, f) on the frame of s, transported onto the canonical [0,1].

    Requires f >= s.lo on [s.lo, s.hi] so the value transport is total.
    """
    win = pointwise_min(
        f.restrict(s.lo, s.hi), PwFn.constant(s.hi, s.lo, s.hi)
    )
    return affine_transport(win.reparam_to(ZERO, ONE), (s.lo, s.hi), (ZERO, ONE))


def frame_point(s: Summand, t: Rat) -> Rat:
    return s.lo + t * (s.hi - s.lo)


# -- basic-case violations in transported coordinates ------------------------


def _pair_near(
    piece: LinFrac, anchor: Rat, other: Rat, bad: Callable[[Rat, Rat], bool]
) -> tuple[Rat, Rat]:
    """Shrink toward ``anchor`` until a nearby pair satisfies ``bad``."""
    step = (other - anchor) / 2
    for _ in range(64):
        a, b = sorted((anchor + step / 2, anchor + step))
        if bad(a, b):
            return a, b
        step /= 2
    raise AssertionError("local violation search failed")  # pragma: no cover


def _jump_pair(
    f: PwFn, i: int, side: str, bad: Callable[[Rat, Rat], bool]
) -> tuple[Rat, Rat]:
    """A real pair straddling the jump at breakpoint i violating ``bad``."""
    x0 = f.breakpoints[i].x
    if side == "left":
        lo = f.breakpoints[i - 1].x
        step = (x0 - lo) / 2
        for _ in range(64):
            if bad(x0 - step, x0):
                return x0 - step, x0
            step /= 2
    else:
        hi = f.breakpoints[i + 1].x
        step = (hi - x0) / 2
        for _ in range(64):
            if bad(x0, x0 + step):
                return x0, x0 + step
            step /= 2
    raise AssertionError("jump violation search failed")  # pragma: no cover


def basic_lower_violation(
    sig: PwFn, kind: SummandKind
) -> Optional[tuple[Rat, Rat]]:
    """A pair (x, y) violating the basic-case lower-set law on [0,1], if any.

    For the Lukasiewicz quantale the law is: decreasing and 1-Lipschitz.
    For the product quantale: decreasing and x*f(x) non-decreasing, with
    jumps allowed at 0 only.  The returned pair is oriented so that
    conj(f(x), d_L(y, x)) > f(y) in that basic quantale.
    """
    if kind is SummandKind.LUKASIEWICZ:
        lip = lambda a, b: sig.eval(a) - sig.eval(b) > b - a  # noqa: E731
        for i in range(len(sig.pieces)):
            u, v = sig.breakpoints[i].x, sig.breakpoints[i + 1].x
            piece = sig.pieces[i]
            if piece.is_affine:
                if piece.a < -1:
                    return u + (v - u) / 4, v - (v - u) / 4
            else:
                for anchor, other in ((u, v), (v, u)):
                    if _mobius_deriv(piece, anchor) < -1:
                        a, b = _pair_near(piece, anchor, other, lip)
                        return a, b
        for i, bp in enumerate(sig.breakpoints):
            if i > 0 and bp.left != bp.at:
                return _jump_pair(sig, i, "left", lip)
            if i < len(sig.breakpoints) - 1 and bp.at != bp.right:
                return _jump_pair(sig, i, "right", lip)
        return None

    # product kind: t(x) = x * f(x) must be non-decreasing; continuity off 0
    tmap = lambda x: x * sig.eval(x)  # noqa: E731
    drop = lambda a, b: tmap(a) > tmap(b)  # noqa: E731
    for i in range(len(sig.pieces)):
        u, v = sig.breakpoints[i].x, sig.breakpoints[i + 1].x
        piece = sig.pieces[i]
        for anchor, other in ((u, v), (v, u)):
            if _xf_deriv(piece, anchor) < 0:
                return _pair_near(piece, anchor, other, drop)
    for i, bp in enumerate(sig.breakpoints):
        if bp.x == ZERO:
            continue
        if bp.left != bp.at:
            return _jump_pair(sig, i, "left", drop)
        if i < len(sig.breakpoints) - 1 and bp.at != bp.right:
            return _jump_pair(sig, i, "right", drop)
    return None


def basic_upper_violation(
    sig: PwFn, kind: SummandKind
) -> Optional[tuple[Rat, Rat]]:
    """A pair (x, y) violating the basic-case upper-set law, oriented so
    that conj(d_L(x, y), f(x)) > f(y); increasingness is assumed already
    checked globally."""
    if kind is SummandKind.LUKASIEWICZ:
        lip = lambda a, b: sig.eval(b) - sig.eval(a) > b - a  # noqa: E731
        bad = lambda a, b: lip(a, b)  # noqa: E731
        for i in range(len(sig.pieces)):
            u, v = sig.breakpoints[i].x, sig.breakpoints[i + 1].x
            piece = sig.pieces[i]
            if piece.is_affine:
                if piece.a > 1:
                    a, b = u + (v - u) / 4, v - (v - u) / 4
                    return b, a
            else:
                for anchor, other in ((u, v), (v, u)):
                    if _mobius_deriv(piece, anchor) > 1:
                        a, b = _pair_near(piece, anchor, other, bad)
                        return b, a
        for i, bp in enumerate(sig.breakpoints):
            if i > 0 and bp.left != bp.at:
                a, b = _jump_pair(sig, i, "left", bad)
                return b, a
            if i < len(sig.breakpoints) - 1 and bp.at != bp.right:
                a, b = _jump_pair(sig, i, "right", bad)
                return b, a
        return None

    # product kind: w(x) = f(x)/x must be non-increasing on (0, 1]
    grow = lambda a, b: a * sig.eval(b) > b * sig.eval(a)  # noqa: E731
    for i in range(len(sig.pieces)):
        u, v = sig.breakpoints[i].x, sig.breakpoints[i + 1].x
        piece = sig.pieces[i]
        bad_pts = _ratio_rise_points(piece, u, v)
        for anchor, other in bad_pts:
            a, b = _pair_near(piece, anchor, other, grow)
            return b, a
    for i, bp in enumerate(sig.breakpoints):
        if bp.x == ZERO:
            continue
        if bp.left != bp.at:
            a, b = _jump_pair(sig, i, "left", grow)
            return b, a
        if i < len(sig.breakpoints) - 1 and bp.at != bp.right:
            a, b = _jump_pair(sig, i, "right", grow)
            return b, a
    return None


def _mobius_deriv(piece: LinFrac, x: Rat) -> Rat:
    den = piece.c * x + piece.d
    return (piece.a * piece.d - piece.b * piece.c) / (den * den)


def _xf_deriv(piece: LinFrac, x: Rat) -> Rat:
    """Derivative of x * piece(x); its sign is monotone over any pole-free gap."""
    a, b, c, d = piece.a, piece.b, piece.c, piece.d
    den = c * x + d
    return ((a * c * x + 2 * a * d) * x + b * d) / (den * den)


def _ratio_rise_points(
    piece: LinFrac, u: Rat, v: Rat
) -> list[tuple[Rat, Rat]]:
    """Anchor/other pairs where (piece(x)/x)' > 0 holds at the anchor."""
    a, b, c, d = piece.a, piece.b, piece.c, piece.d

    def wnum(x: Rat) -> Rat:
        # numerator of (piece/x)': -ac x^2 - 2bc x - bd over positive square
        return -(a * c) * x * x - 2 * b * c * x - b * d

    pts = []
    if u > 0 and wnum(u) > 0:
        pts.append((u, v))
    if wnum(v) > 0 and not pts:
        pts.append((v, u))
    if not pts and a * c != 0:
        xv = -b / a  # vertex of the quadratic numerator
        if u < xv < v and wnum(xv) > 0:
            pts.append((xv, v))
    return pts


# ---------------------------------------------------------------------------
# the decision procedures


def check_lower_set(T: OrdinalSumTNorm, phi: PwFn) -> CheckReport:
    """Decide whether phi is a fuzzy lower set of ([0,1], d_L), exactly."""
    _require_unit_domain(phi, "lower-set candidate")
    mono = phi.is_monotone("decreasing")
    if not mono:
        w = mono.witness
        assert isinstance(w, PairWitness)
        return violated("L1", def_lower_witness(T, phi, w.b, w.a), detail="not decreasing")

    phi1 = phi.eval(ONE)
    P = hull_positions(T, phi, "lo")

    # L2: phi(c) <= c-  forces  phi(c) = phi(1)
    for c in P:
        fc = phi.eval(c)
        if fc <= _cminus(T, c) and fc != phi1:
            return violated(
                "L2",
                PointWitness(
                    c, (("phi(c)", fc), ("c_minus", _cminus(T, c)), ("phi(1)", phi1))
                ),
            )
    for p, q in zip(P, P[1:]):
        m = (p + q) / 2
        if phi.eval(m) <= _cminus(T, m):
            piece = _piece_over(phi, p)
            if not (piece.is_const and piece(m) == phi1):
                c = _probe_not_equal(phi, p, q, phi1)
                return violated(
                    "L2",
                    PointWitness(
                        c,
                        (
                            ("phi(c)", phi.eval(c)),
                            ("c_minus", _cminus(T, c)),
                            ("phi(1)", phi1),
                        ),
                    ),
                )

    # L4: idempotent c with phi(c) >= c forces phi(1) >= c
    for c in P:
        if T.is_idempotent(c) and phi.eval(c) >= c and phi1 < c:
            return violated(
                "L4", PointWitness(c, (("phi(c)", phi.eval(c)), ("phi(1)", phi1)))
            )
    for p, q in zip(P, P[1:]):
        if _gap_summand(T, p, q) is None:
            m = (p + q) / 2
            if phi.eval(m) >= m and phi1 < q:
                c = (max(p, phi1) + q) / 2
                return violated(
                    "L4", PointWitness(c, (("phi(c)", phi.eval(c)), ("phi(1)", phi1)))
                )

    # L3: per-summand frame condition
    for s in T.summands:
        rep = _frame_lower_report(T, phi, s)
        if rep is not None:
            return rep
    return HOLDS


def _frame_lower_report(
    T: OrdinalSumTNorm, phi: PwFn, s: Summand
) -> Optional[CheckReport]:
    lo, hi = s.lo, s.hi
    if phi.eval(lo) < lo:
        return None  # premise of the frame condition fails; nothing to check
    window = phi.restrict(lo, hi)
    if window.global_inf().value < lo:
        x = _point_below(window, lo)
        return violated(
            "L3",
            def_lower_witness(T, phi, lo, x),
            detail=f"phi drops below the frame floor {fmt_rat(lo)}",
        )
    sig = sigma_hat(T, phi, s)
    pair = basic_lower_violation(sig, s.kind)
    if pair is None:
        return None
    x, y = frame_point(s, pair[0]), frame_point(s, pair[1])
    return violated(
        "L3",
        def_lower_witness(T, phi, x, y),
        detail=f"frame ({fmt_rat(lo)}, {fmt_rat(hi)}) of kind {s.kind.value}",
    )


def _point_below(window: PwFn, level: Rat) -> Rat:
    """A real point of the window where the function is < level."""
    for bp in window.breakpoints:
        if bp.at < level:
            return bp.x
    for i, piece in enumerate(window.pieces):
        u, v = window.breakpoints[i].x, window.breakpoints[i + 1].x
        for anchor, other in ((u, v), (v, u)):
            limit = window.breakpoints[i].right if anchor == u else window.breakpoints[i + 1].left
            if limit < level:
                step = (other - anchor) / 2
                for _ in range(64):
                    t = anchor + step
                    if piece(t) < level:
                        return t
                    step /= 2
    raise AssertionError("no point below level found")  # pragma: no cover


def check_upper_set(T: OrdinalSumTNorm, psi: PwFn) -> CheckReport:
    """Decide whether psi is a fuzzy upper set of ([0,1], d_L), exactly."""
    _require_unit_domain(psi, "upper-set candidate")
    mono = psi.is_monotone("increasing")
    if not mono:
        w = mono.witness
        assert isinstance(w, PairWitness)
        return violated("U1", def_upper_witness(T, psi, w.a, w.b), detail="not increasing")

    psi1 = psi.eval(ONE)
    P = hull_positions(T, psi, "lo")

    # U2: psi(c) < c-  (strict) forces  psi(c) = psi(1)
    for c in P:
        fc = psi.eval(c)
        if fc < _cminus(T, c) and fc != psi1:
            return violated(
                "U2",
                PointWitness(
                    c, (("psi(c)", fc), ("c_minus", _cminus(T, c)), ("psi(1)", psi1))
                ),
            )
    for p, q in zip(P, P[1:]):
        m = (p + q) / 2
        if psi.eval(m) < _cminus(T, m):
            piece = _piece_over(psi, p)
            if not (piece.is_const and piece(m) == psi1):
                c = _probe_not_equal(psi, p, q, psi1)
                return violated(
                    "U2",
                    PointWitness(
                        c,
                        (
                            ("psi(c)", psi.eval(c)),
                            ("c_minus", _cminus(T, c)),
                            ("psi(1)", psi1),
                        ),
                    ),
                )

    # U3: per-summand frame condition
    for s in T.summands:
        rep = _frame_upper_report(T, psi, s)
        if rep is not None:
            return rep
    return HOLDS


def _frame_upper_report(
    T: OrdinalSumTNorm, psi: PwFn, s: Summand
) -> Optional[CheckReport]:
    lo, hi = s.lo, s.hi
    if psi.eval(lo) < lo:
        return None
    window = psi.restrict(lo, hi)
    if window.global_inf().value < lo:
        x = _point_below(window, lo)
        return violated(
            "U3",
            def_upper_witness(T, psi, lo, x),
            detail=f"psi drops below the frame floor {fmt_rat(lo)}",
        )
    sig = sigma_hat(T, psi, s)
    pair = basic_upper_violation(sig, s.kind)
    if pair is None:
        return None
    x, y = frame_point(s, pair[0]), frame_point(s, pair[1])
    return violated(
        "U3",
        def_upper_witness(T, psi, x, y),
        detail=f"frame ({fmt_rat(lo)}, {fmt_rat(hi)}) of kind {s.kind.value}",
    )
