"""Exact piecewise functions [0,1] -> [0,1] with first-class jumps.

A ``PwFn`` is a finite list of breakpoints, each carrying the limit from
below, the value at the point, and the limit from above.  Between
consecutive breakpoints the function is a single analytic piece with
rational coefficients: affine by default, or a linear-fractional segment
``(a*x + b)/(c*x + d)``.  The fractional pieces exist because residuated
implications of product-kind summands are exactly of that shape; they are
closed under every operation in this package and all breakpoints stay
rational.

The text format (``fn`` / ``point`` stanzas) covers exactly the affine
fragment; fractional pieces arise only from constructions, never from
parsing.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

from .rat import (
    ONE,
    ZERO,
    DomainError,
    ExactnessError,
    ParseError,
    Rat,
    ensure_unit,
    fmt_rat,
    parse_rat,
    rat_sqrt,
)
from .report import HOLDS, CheckReport, PairWitness, violated

Side = str  # "below" | "at" | "above"

_SIDES = ("below", "at", "above")


# ---------------------------------------------------------------------------
# analytic pieces


@dataclass(frozen=True)
class LinFrac:
    """The map x -> (a*x + b) / (c*x + d), normalized so c in {0, 1}.

    With c == 0 (then d == 1) the piece is affine.  A piece is only ever
    attached to a gap whose closure avoids the pole, so it is continuous
    and strictly monotone or constant there.
    """

    a: Rat
    b: Rat
    c: Rat
    d: Rat

    def __call__(self, x: Rat) -> Rat:
        return (self.a * x + self.b) / (self.c * x + self.d)

    @property
    def is_affine(self) -> bool:
        return self.c == 0

    @property
    def is_const(self) -> bool:
        return self.c == 0 and self.a == 0

    def pole(self) -> Optional[Rat]:
        if self.c == 0:
            return None
        return -self.d / self.c

    def deriv_sign(self) -> int:
        det = self.a * self.d - self.b * self.c
        return (det > 0) - (det < 0)

    def compose_affine(self, m: Rat, k: Rat) -> "LinFrac":
        """The piece x -> self(m*x + k)."""
        return linfrac(self.a * m, self.a * k + self.b, self.c * m, self.c * k + self.d)

    def map_values(self, alpha: Rat, beta: Rat) -> "LinFrac":
        """The piece alpha*self + beta."""
        return linfrac(
            alpha * self.a + beta * self.c,
            alpha * self.b + beta * self.d,
            self.c,
            self.d,
        )


def linfrac(a: Rat, b: Rat, c: Rat, d: Rat) -> LinFrac:
    if c == 0:
        if d == 0:
            raise ZeroDivisionError("degenerate linear-fractional piece")
        return LinFrac(a / d, b / d, ZERO, ONE)
    if a * d == b * c:
        # rank one: the quotient is the constant a/c wherever defined
        return LinFrac(ZERO, a / c, ZERO, ONE)
    return LinFrac(a / c, b / c, ONE, d / c)


def affine_piece(slope: Rat, intercept: Rat) -> LinFrac:
    return LinFrac(Rat(slope), Rat(intercept), ZERO, ONE)


def const_piece(k: Rat) -> LinFrac:
    return LinFrac(ZERO, Rat(k), ZERO, ONE)


def chord(x0: Rat, y0: Rat, x1: Rat, y1: Rat) -> LinFrac:
    """Affine piece through two points with distinct abscissae."""
    slope = (y1 - y0) / (x1 - x0)
    return affine_piece(slope, y0 - slope * x0)


def solve_piece_eq_const(p: LinFrac, k: Rat) -> Optional[Rat]:
    """The unique x with p(x) = k, or None (no solution or p identically k)."""
    den = p.a - k * p.c
    if den == 0:
        return None
    return (k * p.d - p.b) / den


def equal_points(p: LinFrac, q: LinFrac, u: Rat, v: Rat) -> list[Rat]:
    """All x strictly inside (u, v) with p(x) = q(x), touch points included.

    Returns [] when the pieces coincide on the whole gap (the equality set
    is then not isolated points at all).  Raises :class:`ExactnessError`
    when an irrational solution exists inside the gap.
    """
    A = p.a * q.c - q.a * p.c
    B = p.a * q.d + p.b * q.c - q.a * p.d - q.b * p.c
    C = p.b * q.d - q.b * p.d
    if A == 0 and B == 0:
        return []
    if A == 0:
        x = -C / B
        return [x] if u < x < v else []
    disc = B * B - 4 * A * C
    if disc < 0:
        return []
    root = rat_sqrt(disc)
    if root is not None:
        xs = sorted({(-B - root) / (2 * A), (-B + root) / (2 * A)})
        return [x for x in xs if u < x < v]

    def N(x: Rat) -> Rat:
        return (A * x + B) * x + C

    nu, nv = N(u), N(v)
    vertex = -B / (2 * A)
    inside = (nu > 0) != (nv > 0) or (
        u < vertex < v and nu != 0 and ((N(vertex) > 0) != (nu > 0) or N(vertex) == 0)
    )
    if inside:
        raise ExactnessError(
            f"irrational piece equality inside ({fmt_rat(u)}, {fmt_rat(v)})"
        )
    return []


def crossings(p: LinFrac, q: LinFrac, u: Rat, v: Rat) -> list[Rat]:
    """Interior points of (u, v) where p - q changes sign.

    Both pieces must be pole-free on [u, v].  Touch points (where the
    difference vanishes without changing sign) are not reported; they do
    not affect pointwise min/max.  Raises :class:`ExactnessError` if a
    sign change happens at an irrational point.
    """
    A = p.a * q.c - q.a * p.c
    B = p.a * q.d + p.b * q.c - q.a * p.d - q.b * p.c
    C = p.b * q.d - q.b * p.d
    if A == 0 and B == 0:
        return []
    if A == 0:
        x = -C / B
        return [x] if u < x < v else []
    disc = B * B - 4 * A * C
    if disc < 0:
        return []
    if disc == 0:
        return []  # double root: touch, no sign change
    root = rat_sqrt(disc)
    if root is not None:
        xs = sorted(((-B - root) / (2 * A), (-B + root) / (2 * A)))
        return [x for x in xs if u < x < v]
    # Irrational roots.  They only matter if one of them sits strictly
    # inside the gap; then the sign genuinely flips there.
    def N(x: Rat) -> Rat:
        return (A * x + B) * x + C

    nu, nv = N(u), N(v)
    if nu == 0 or nv == 0:
        # a rational boundary root forces the other root rational too,
        # contradicting the irrational discriminant
        raise ExactnessError("inconsistent quadratic root analysis")
    if (nu > 0) != (nv > 0):
        raise ExactnessError(
            f"irrational crossing of pieces inside ({fmt_rat(u)}, {fmt_rat(v)})"
        )
    vertex = -B / (2 * A)
    if u < vertex < v and ((N(vertex) > 0) != (nu > 0)):
        raise ExactnessError(
            f"irrational crossing pair of pieces inside ({fmt_rat(u)}, {fmt_rat(v)})"
        )
    return []


# ---------------------------------------------------------------------------
# breakpoints and the function type


@dataclass(frozen=True)
class Breakpoint:
    x: Rat
    left: Rat
    at: Rat
    right: Rat


class SupResult(NamedTuple):
    value: Rat
    attained: bool


@dataclass(frozen=True)
class PwFn:
    """Piecewise function on a rational interval (the full [0,1] by default).

    ``pieces[i]`` is the analytic piece on the open gap between
    ``breakpoints[i]`` and ``breakpoints[i+1]``; its closed-gap values agree
    with the stored one-sided limits.  Instances are immutable and all
    operations are pure.
    """

    breakpoints: tuple[Breakpoint, ...]
    pieces: tuple[LinFrac, ...]

    # -- basic views --------------------------------------------------------

    @property
    def lo(self) -> Rat:
        return self.breakpoints[0].x

    @property
    def hi(self) -> Rat:
        return self.breakpoints[-1].x

    @cached_property
    def _xs(self) -> tuple[Rat, ...]:
        return tuple(bp.x for bp in self.breakpoints)

    def positions(self) -> list[Rat]:
        return list(self._xs)

    def __repr__(self) -> str:  # compact, debugging-oriented
        pts = ", ".join(
            f"{fmt_rat(bp.x)}:({fmt_rat(bp.left)},{fmt_rat(bp.at)},{fmt_rat(bp.right)})"
            for bp in self.breakpoints
        )
        return f"PwFn[{pts}]"

    # -- construction helpers ----------------------------------------------

    @staticmethod
    def constant(k: Rat, lo: Rat = ZERO, hi: Rat = ONE) -> "PwFn":
        k = Rat(k)
        return pwfn(
            [Breakpoint(Rat(lo), k, k, k), Breakpoint(Rat(hi), k, k, k)],
            [const_piece(k)],
        )

    @staticmethod
    def identity() -> "PwFn":
        return pwfn(
            [Breakpoint(ZERO, ZERO, ZERO, ZERO), Breakpoint(ONE, ONE, ONE, ONE)],
            [affine_piece(ONE, ZERO)],
        )

    @staticmethod
    def from_points(points: Sequence[tuple[Rat, Rat]]) -> "PwFn":
        """Continuous piecewise-linear interpolation through (x, y) pairs."""
        bps = [Breakpoint(Rat(x), Rat(y), Rat(y), Rat(y)) for x, y in points]
        return pwfn(bps)

    # -- evaluation ----------------------------------------------------------

    def eval(self, x: Rat, side: Side = "at") -> Rat:
        if side not in _SIDES:
            raise DomainError(f"unknown side {side!r}")
        x = Rat(x)
        if not self.lo <= x <= self.hi:
            raise DomainError(
                f"point {fmt_rat(x)} outside domain [{fmt_rat(self.lo)}, {fmt_rat(self.hi)}]"
            )
        if side == "below" and x == self.lo:
            raise DomainError("no limit from below at the left endpoint")
        if side == "above" and x == self.hi:
            raise DomainError("no limit from above at the right endpoint")
        xs = self._xs
        i = bisect.bisect_left(xs, x)
        if i < len(xs) and xs[i] == x:
            bp = self.breakpoints[i]
            return {"below": bp.left, "at": bp.at, "above": bp.right}[side]
        return self.pieces[i - 1](x)

    def __call__(self, x: Rat) -> Rat:
        return self.eval(x, "at")

    # -- extrema -------------------------------------------------------------

    def global_sup(self) -> SupResult:
        """Exact supremum over the domain, one-sided limits included."""
        return self._extreme(max)

    def global_inf(self) -> SupResult:
        return self._extreme(min)

    def _extreme(self, pick: Callable) -> SupResult:
        best: Optional[Rat] = None
        attained = False
        for bp in self.breakpoints:
            if best is None or pick(bp.at, best) == bp.at != best:
                best, attained = bp.at, True
            elif bp.at == best:
                attained = True
        for i, piece in enumerate(self.pieces):
            lo_lim = self.breakpoints[i].right
            hi_lim = self.breakpoints[i + 1].left
            val = pick(lo_lim, hi_lim)
            reach = lo_lim == hi_lim  # constant piece: value attained inside
            assert best is not None
            if pick(val, best) == val != best:
                best, attained = val, reach
            elif val == best:
                attained = attained or reach
        assert best is not None
        return SupResult(best, attained)

    def value_bounds(self) -> tuple[Rat, Rat]:
        """(inf, sup) of the function, attained or not."""
        return (self.global_inf().value, self.global_sup().value)

    # -- monotonicity ---------------------------------------------------------

    def is_monotone(self, direction: str) -> CheckReport:
        """Check global monotonicity; a violation comes with a real pair.

        ``direction`` is ``"decreasing"`` or ``"increasing"``.
        """
        if direction not in ("decreasing", "increasing"):
            raise DomainError(f"unknown direction {direction!r}")
        want = -1 if direction == "decreasing" else 1
        rel = ">=" if direction == "decreasing" else "<="

        def witness(a: Rat, b: Rat) -> CheckReport:
            fa, fb = self.eval(a), self.eval(b)
            return violated(
                "L1" if direction == "decreasing" else "U1",
                PairWitness(a, b, fa, fb, fa, fb, rel),
                detail=f"not {direction}",
            )

        for i, piece in enumerate(self.pieces):
            s = piece.deriv_sign()
            if s != 0 and s != want:
                u, v = self.breakpoints[i].x, self.breakpoints[i + 1].x
                step = (v - u) / 4
                return witness(u + step, v - step)
        for i, bp in enumerate(self.breakpoints):
            if i > 0 and (bp.left - bp.at) * want > 0:
                # value approaches bp from the left on the wrong side of at
                a = self._approach(i - 1, bp.x, bp.at, from_left=True, want=want)
                return witness(a, bp.x)
            if i < len(self.breakpoints) - 1 and (bp.right - bp.at) * want < 0:
                b = self._approach(i, bp.x, bp.at, from_left=False, want=want)
                return witness(bp.x, b)
        return HOLDS

    def _approach(self, gap: int, x: Rat, ref: Rat, from_left: bool, want: int) -> Rat:
        """A real point near x (inside the given gap) witnessing a jump violation."""
        other = self.breakpoints[gap].x if from_left else self.breakpoints[gap + 1].x
        step = (x - other) / 2 if from_left else (other - x) / 2
        piece = self.pieces[gap]
        t = x - step if from_left else x + step
        for _ in range(64):
            val = piece(t)
            # a pair straddling the jump violates the direction when the
            # nearby value sits on the wrong side of the point value
            if from_left and (val - ref) * want > 0:
                return t
            if not from_left and (val - ref) * want < 0:
                return t
            step /= 2
            t = x - step if from_left else x + step
        raise AssertionError("jump witness search failed")  # pragma: no cover

    # -- structural surgery ---------------------------------------------------

    def refine(self, positions: Iterable[Rat]) -> "PwFn":
        """Insert breakpoints at the given interior positions (no-op elsewhere)."""
        extra = sorted(
            {Rat(p) for p in positions if self.lo < p < self.hi}
            - {bp.x for bp in self.breakpoints}
        )
        if not extra:
            return self
        bps = list(self.breakpoints)
        pcs = list(self.pieces)
        for p in extra:
            xs = [bp.x for bp in bps]
            i = bisect.bisect_left(xs, p)
            piece = pcs[i - 1]
            val = piece(p)
            bps.insert(i, Breakpoint(p, val, val, val))
            pcs.insert(i, piece)
        return PwFn(tuple(bps), tuple(pcs))

    def restrict(self, lo: Rat, hi: Rat) -> "PwFn":
        """The restriction to [lo, hi] as a PwFn on that domain."""
        lo, hi = Rat(lo), Rat(hi)
        if not (self.lo <= lo < hi <= self.hi):
            raise DomainError("restriction window not inside the domain")
        f = self.refine([lo, hi])
        bps = [bp for bp in f.breakpoints if lo <= bp.x <= hi]
        idx = {bp.x: i for i, bp in enumerate(f.breakpoints)}
        pcs = [f.pieces[i] for i in range(idx[bps[0].x], idx[bps[-1].x])]
        first, last = bps[0], bps[-1]
        bps[0] = Breakpoint(first.x, first.at, first.at, first.right)
        bps[-1] = Breakpoint(last.x, last.left, last.at, last.at)
        return pwfn(bps, pcs)

    def reparam_to(self, lo: Rat, hi: Rat) -> "PwFn":
        """Affinely rescale the domain onto [lo, hi] (values unchanged)."""
        lo, hi = Rat(lo), Rat(hi)
        if lo >= hi:
            raise DomainError("degenerate target interval")
        m = (self.hi - self.lo) / (hi - lo)
        k = self.lo - lo * m
        fwd = lambda x: (x - self.lo) / m + lo  # noqa: E731
        bps = [Breakpoint(fwd(bp.x), bp.left, bp.at, bp.right) for bp in self.breakpoints]
        pcs = [p.compose_affine(m, k) for p in self.pieces]
        return pwfn(bps, pcs)

    def map_values(self, alpha: Rat, beta: Rat) -> "PwFn":
        """The function alpha*f + beta (alpha > 0); result must stay in [0,1]."""
        alpha, beta = Rat(alpha), Rat(beta)
        if alpha <= 0:
            raise DomainError("value map must be increasing")
        m = lambda y: alpha * y + beta  # noqa: E731
        bps = [
            Breakpoint(bp.x, m(bp.left), m(bp.at), m(bp.right)) for bp in self.breakpoints
        ]
        pcs = [p.map_values(alpha, beta) for p in self.pieces]
        return pwfn(bps, pcs)


# ---------------------------------------------------------------------------
# factory / validation


def pwfn(
    points: Sequence[Breakpoint],
    pieces: Optional[Sequence[LinFrac]] = None,
    canonical: bool = True,
) -> PwFn:
    """Validate and canonicalize a breakpoint list into a PwFn.

    Without explicit pieces, gaps interpolate affinely from (x_i, right_i)
    to (x_{i+1}, left_{i+1}).
    """
    if len(points) < 2:
        raise DomainError("a PwFn needs at least the two domain endpoints")
    pts = list(points)
    for i in range(1, len(pts)):
        if pts[i - 1].x >= pts[i].x:
            raise DomainError("breakpoint positions must be strictly increasing")
    first, last = pts[0], pts[-1]
    pts[0] = Breakpoint(first.x, first.at, first.at, first.right)
    pts[-1] = Breakpoint(last.x, last.left, last.at, last.at)
    for bp in pts:
        for v in (bp.left, bp.at, bp.right):
            ensure_unit(v, f"value at {fmt_rat(bp.x)}")

    if pieces is None:
        pcs = []
        for a, b in zip(pts, pts[1:]):
            if a.right == b.left:
                pcs.append(const_piece(a.right))
            else:
                pcs.append(chord(a.x, a.right, b.x, b.left))
    else:
        pcs = list(pieces)
        if len(pcs) != len(pts) - 1:
            raise DomainError("piece count must be breakpoint count - 1")
        for i, piece in enumerate(pcs):
            u, v = pts[i], pts[i + 1]
            pole = piece.pole()
            if pole is not None and u.x <= pole <= v.x:
                raise DomainError("piece pole inside its gap")
            if piece(u.x) != u.right or piece(v.x) != v.left:
                raise DomainError(
                    f"piece on ({fmt_rat(u.x)}, {fmt_rat(v.x)}) disagrees with"
                    " its one-sided endpoint values"
                )

    if canonical:
        i = 1
        while i < len(pts) - 1:
            bp = pts[i]
            if bp.left == bp.at == bp.right and pcs[i - 1] == pcs[i]:
                del pts[i]
                del pcs[i]
            else:
                i += 1
    return PwFn(tuple(pts), tuple(pcs))


# ---------------------------------------------------------------------------
# pointwise lattice operations


def pointwise_min(f: PwFn, g: PwFn) -> PwFn:
    return _pointwise(f, g, min)


def pointwise_max(f: PwFn, g: PwFn) -> PwFn:
    return _pointwise(f, g, max)


def _pointwise(f: PwFn, g: PwFn, pick: Callable) -> PwFn:
    if (f.lo, f.hi) != (g.lo, g.hi):
        raise DomainError("pointwise operations need matching domains")
    common = sorted({bp.x for bp in f.breakpoints} | {bp.x for bp in g.breakpoints})
    f1, g1 = f.refine(common), g.refine(common)
    cross: set[Rat] = set()
    for i in range(len(f1.pieces)):
        u, v = f1.breakpoints[i].x, f1.breakpoints[i + 1].x
        cross.update(crossings(f1.pieces[i], g1.pieces[i], u, v))
    if cross:
        f1, g1 = f1.refine(cross), g1.refine(cross)
    bps = []
    for bf, bg in zip(f1.breakpoints, g1.breakpoints):
        bps.append(
            Breakpoint(
                bf.x, pick(bf.left, bg.left), pick(bf.at, bg.at), pick(bf.right, bg.right)
            )
        )
    pcs = []
    for i in range(len(f1.pieces)):
        u, v = f1.breakpoints[i].x, f1.breakpoints[i + 1].x
        # no sign change inside the refined gap; probe up to three points
        # to see past an isolated touch point
        chosen = f1.pieces[i]
        for t in ((u + v) / 2, u + (v - u) / 4, u + 3 * (v - u) / 4):
            fa, ga = f1.pieces[i](t), g1.pieces[i](t)
            if fa != ga:
                chosen = f1.pieces[i] if pick(fa, ga) == fa else g1.pieces[i]
                break
        pcs.append(chosen)
    return pwfn(bps, pcs)


# ---------------------------------------------------------------------------
# interval transports


def affine_transport(f: PwFn, source: tuple[Rat, Rat], target: tuple[Rat, Rat]) -> PwFn:
    """Push the values of f through the increasing affine bijection source -> target.

    The values of f must lie inside the source interval.  Round-trips with
    the swapped intervals restore f exactly.
    """
    (s0, s1), (t0, t1) = _interval(source), _interval(target)
    lo, hi = f.value_bounds()
    if lo < s0 or hi > s1:
        raise DomainError("function values leave the source interval")
    alpha = (t1 - t0) / (s1 - s0)
    return f.map_values(alpha, t0 - s0 * alpha)


def transport_domain(f: PwFn, source: tuple[Rat, Rat], target: tuple[Rat, Rat]) -> PwFn:
    """View f through the window ``source``, rescaled onto the domain ``target``."""
    (s0, s1), (t0, t1) = _interval(source), _interval(target)
    return f.restrict(s0, s1).reparam_to(t0, t1)


def _interval(iv: tuple[Rat, Rat]) -> tuple[Rat, Rat]:
    a, b = Rat(iv[0]), Rat(iv[1])
    if a >= b:
        raise DomainError("degenerate interval")
    ensure_unit(a, "interval endpoint")
    ensure_unit(b, "interval endpoint")
    return a, b


# ---------------------------------------------------------------------------
# text format


def print_pwfn(f: PwFn, name: str) -> str:
    """Render in the ``fn`` stanza format (affine pieces only)."""
    for piece in f.pieces:
        if not piece.is_affine:
            raise ValueError(
                "function has a non-linear piece; the text format is"
                " piecewise-linear only"
            )
    lines = [f"fn {name}"]
    last = len(f.breakpoints) - 1
    for i, bp in enumerate(f.breakpoints):
        vals = []
        if i > 0:
            vals.append(fmt_rat(bp.left))
        vals.append(fmt_rat(bp.at))
        if i < last:
            vals.append(fmt_rat(bp.right))
        lines.append(f"point {fmt_rat(bp.x)} : {' '.join(vals)}")
    return "\n".join(lines) + "\n"


def parse_pwfn_body(name: str, lines: Sequence[str]) -> PwFn:
    """Parse the ``point`` lines of one ``fn`` stanza."""
    rows: list[tuple[Rat, list[Rat]]] = []
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not line.startswith("point"):
            raise ParseError(f"fn {name}: unexpected line {line!r}")
        try:
            head, vals = line[len("point"):].split(":", 1)
        except ValueError:
            raise ParseError(f"fn {name}: missing ':' in {line!r}") from None
        x = ensure_unit(parse_rat(head), "breakpoint position")
        values = [ensure_unit(parse_rat(tok), "breakpoint value") for tok in vals.split()]
        if not 1 <= len(values) <= 3:
            raise ParseError(f"fn {name}: expected 1-3 values, got {len(values)}")
        rows.append((x, values))
    if len(rows) < 2:
        raise ParseError(f"fn {name}: needs at least points at both domain ends")
    rows.sort(key=lambda r: r[0])
    bps = []
    last = len(rows) - 1
    for i, (x, values) in enumerate(rows):
        expected = 3 - (i == 0) - (i == last)
        if len(values) == 1:
            left = at = right = values[0]
        elif len(values) == expected:
            if i == 0:
                at, right = values
                left = at
            elif i == last:
                left, at = values
                right = at
            else:
                left, at, right = values
        else:
            raise ParseError(
                f"fn {name}: point {fmt_rat(x)} expects {expected} values"
                f" (or 1), got {len(values)}"
            )
        bps.append(Breakpoint(x, left, at, right))
    return pwfn(bps)
