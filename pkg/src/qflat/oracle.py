"""Brute-force verifiers and randomized harnesses for the exact modules.

Everything here re-derives answers from raw definitions: adjunction on
grid triples, the idempotent sandwich law, the definitional lower/upper
set inequalities on sampled real points, and flatness against sampled
upper-set pairs.  Falsifiers never claim completeness; a "holds" verdict
means no counterexample at the stated budget.  The exact checkers remain
the decision procedures; these oracles guard against implementation
drift.
"""

from __future__ import annotations

import bisect
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .ideal import NetSpec, check_flat, net_ideal, pasted_flat, witness_upper_pair
from .order import (
    check_lower_set,
    check_upper_set,
    principal_lower,
    principal_upper,
    tensor,
)
from .pwfn import Breakpoint, PwFn, pointwise_max, pointwise_min, pwfn
from .rat import ONE, ZERO, DomainError, Rat
from .report import CheckReport, PairWitness, PointWitness, TensorWitness, violated
from .tnorms import OrdinalSumTNorm, SummandKind, make_tnorm

# ---------------------------------------------------------------------------
# configuration types


@dataclass(frozen=True)
class GridSpec:
    """A uniform rational grid {k/n} plus explicit extra points.

    ``points`` always adjoins the summand endpoints of the t-norm under
    test and, when a function is supplied, its breakpoints together with
    nearby off-grid probes on both sides of each breakpoint (so jump
    behaviour is exercised at real points).
    """

    resolution: int
    extra_points: tuple[Rat, ...] = ()

    def __post_init__(self):
        if self.resolution < 1:
            raise DomainError("grid resolution must be at least 1")

    def points(
        self, T: Optional[OrdinalSumTNorm] = None, f: Optional[PwFn] = None
    ) -> list[Rat]:
        pts = {Fraction(k, self.resolution) for k in range(self.resolution + 1)}
        pts.update(self.extra_points)
        if T is not None:
            pts.update(T.idempotent_levels())
        if f is not None:
            xs = f.positions()
            pts.update(xs)
            for i, x in enumerate(xs):
                if i > 0:
                    pts.add(x - (x - xs[i - 1]) / 8)
                if i + 1 < len(xs):
                    pts.add(x + (xs[i + 1] - x) / 8)
        return sorted(pts)


@dataclass(frozen=True)
class TrialConfig:
    """Budget and seed for randomized suites; identical seeds replay exactly."""

    trials: int
    seed: int = 0
    profile: str = "mixed"  # principal | constant | repaired | mixed

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError("trial budget must be positive")


# ---------------------------------------------------------------------------
# hot-loop arithmetic: validation-free closures over the summand table
#
# The grid loops burn millions of exact rational operations; gmpy2's mpq
# is an order of magnitude faster than Fraction at identical exactness,
# so the falsifiers convert to it at the boundary when it is available.

try:  # pragma: no cover - exercised implicitly
    from gmpy2 import mpq as _q
except ImportError:  # pragma: no cover
    _q = Fraction


def _to_rat(v) -> Rat:
    if isinstance(v, Fraction):
        return v
    return Fraction(int(v.numerator), int(v.denominator))


def fast_pair_ops(T: OrdinalSumTNorm) -> tuple[Callable, Callable]:
    """(conj, residuum) closures for grid loops; inputs must be in [0,1]
    and of the same numeric type as the returned constants (`_q`)."""
    summs = tuple(
        (_q(s.lo), _q(s.hi), s.kind is SummandKind.LUKASIEWICZ) for s in T.summands
    )
    one = _q(1)

    def conj(x, y):
        if x > y:
            x, y = y, x
        for lo, hi, luk in summs:
            if lo > x:
                break
            if y <= hi:
                if luk:
                    v = x + y - hi
                    return v if v > lo else lo
                return lo + (x - lo) * (y - lo) / (hi - lo)
        return x

    def res(x, y):
        if x <= y:
            return one
        for lo, hi, luk in summs:
            if lo > y:
                break
            if x <= hi:
                if luk:
                    return hi - x + y
                return lo + (hi - lo) * (y - lo) / (x - lo)
        return y

    return conj, res


# ---------------------------------------------------------------------------
# exhaustive grid verifiers


def verify_adjunction(T: OrdinalSumTNorm, grid: GridSpec) -> CheckReport:
    """conj(x,y) <= z iff y <= residuum(x,z), exhaustively on the grid cube.

    Also checks that the grid-restricted residuum (the largest grid z with
    conj(x,z) <= y) never exceeds the closed form, with equality whenever
    the closed-form value lies on the grid.
    """
    pts = grid.points(T)
    on_grid = set(pts)
    n = len(pts)
    for i, x in enumerate(pts):
        conj_row = [T.conj(x, y) for y in pts]
        res_row = [T.residuum(x, z) for z in pts]
        for j, y in enumerate(pts):
            kc = bisect.bisect_left(pts, conj_row[j])
            kr = bisect.bisect_left(res_row, y)
            if kc != kr:
                k = min(kc, kr)
                z = pts[k]
                return violated(
                    "DEF",
                    PointWitness(
                        x,
                        (
                            ("x", x),
                            ("y", y),
                            ("z", z),
                            ("conj(x,y)", conj_row[j]),
                            ("residuum(x,z)", res_row[k]),
                        ),
                    ),
                    detail="adjunction biconditional fails",
                )
        for k, z in enumerate(pts):
            j = bisect.bisect_right(conj_row, z) - 1
            if j >= 0:
                gm = pts[j]
                if gm > res_row[k] or (res_row[k] in on_grid and gm != res_row[k]):
                    return violated(
                        "DEF",
                        PointWitness(
                            x, (("y", z), ("grid_max", gm), ("residuum", res_row[k]))
                        ),
                        detail="grid residuum disagrees with closed form",
                    )
    return CheckReport(True, detail=f"adjunction exact on {n}^3 grid triples")


def verify_sandwich(T: OrdinalSumTNorm, grid: GridSpec) -> CheckReport:
    """conj(x, y) = min(x, y) whenever x <= c <= y for an idempotent c."""
    pts = grid.points(T)
    idems = [c for c in pts if T.is_idempotent(c)]
    checked = 0
    for c in idems:
        lo_part = [x for x in pts if x <= c]
        hi_part = [y for y in pts if y >= c]
        for x in lo_part:
            for y in hi_part:
                checked += 1
                if T.conj(x, y) != min(x, y):
                    return violated(
                        "DEF",
                        PointWitness(
                            c, (("x", x), ("y", y), ("conj", T.conj(x, y)))
                        ),
                        detail="sandwich law fails",
                    )
    return CheckReport(True, detail=f"sandwich exact on {checked} triples")


# ---------------------------------------------------------------------------
# definitional falsifiers


def falsify_lower_set(T: OrdinalSumTNorm, phi: PwFn, grid: GridSpec) -> CheckReport:
    """Search real point pairs for conj(phi(x), d_L(y,x)) > phi(y).

    A holds verdict means only "no counterexample at this resolution".
    """
    pts = grid.points(T, phi)
    vals = [phi.eval(p) for p in pts]
    # pairs with y <= x reduce to monotonicity
    for i in range(len(pts) - 1):
        if vals[i] < vals[i + 1]:
            return violated(
                "DEF",
                PairWitness(
                    pts[i + 1], pts[i], vals[i + 1], vals[i], vals[i + 1], vals[i], "<="
                ),
                detail="definitional falsifier (monotone part)",
            )
    conj, res = fast_pair_ops(T)
    qpts = [_q(p) for p in pts]
    qvals = [_q(v) for v in vals]
    n = len(pts)
    for ix in range(n):
        x = qpts[ix]
        fx = qvals[ix]
        for iy in range(ix + 1, n):
            lhs = conj(fx, res(qpts[iy], x))
            if lhs > qvals[iy]:
                return violated(
                    "DEF",
                    PairWitness(
                        pts[ix], pts[iy], vals[ix], vals[iy], _to_rat(lhs), vals[iy], "<="
                    ),
                    detail=f"definitional falsifier, grid n={grid.resolution}",
                )
    return CheckReport(
        True, detail=f"no counterexample among {len(pts)}^2 sampled pairs"
    )


def falsify_upper_set(T: OrdinalSumTNorm, psi: PwFn, grid: GridSpec) -> CheckReport:
    """Search real point pairs for conj(d_L(x,y), psi(x)) > psi(y)."""
    pts = grid.points(T, psi)
    vals = [psi.eval(p) for p in pts]
    for i in range(len(pts) - 1):
        if vals[i] > vals[i + 1]:
            return violated(
                "DEF",
                PairWitness(
                    pts[i], pts[i + 1], vals[i], vals[i + 1], vals[i], vals[i + 1], "<="
                ),
                detail="definitional falsifier (monotone part)",
            )
    conj, res = fast_pair_ops(T)
    qpts = [_q(p) for p in pts]
    qvals = [_q(v) for v in vals]
    for ix in range(len(pts) - 1, -1, -1):
        x = qpts[ix]
        fx = qvals[ix]
        for iy in range(ix):
            lhs = conj(res(x, qpts[iy]), fx)
            if lhs > qvals[iy]:
                return violated(
                    "DEF",
                    PairWitness(
                        pts[ix], pts[iy], vals[ix], vals[iy], _to_rat(lhs), vals[iy], "<="
                    ),
                    detail=f"definitional falsifier, grid n={grid.resolution}",
                )
    return CheckReport(
        True, detail=f"no counterexample among {len(pts)}^2 sampled pairs"
    )


def falsify_flat(T: OrdinalSumTNorm, phi: PwFn, cfg: TrialConfig) -> CheckReport:
    """Sample upper-set pairs hunting for a flatness violation, exactly.

    Requires phi to be an inhabited fuzzy lower set; failing that, the
    report carries rule PRE and points at the failed precondition.
    """
    from .ideal import is_inhabited

    pre = check_lower_set(T, phi)
    if not pre:
        return CheckReport(
            False, rule="PRE", witness=pre.witness, detail="precondition: not a lower set"
        )
    inh = is_inhabited(phi)
    if not inh:
        return CheckReport(
            False,
            rule="PRE",
            witness=inh.witness,
            detail="precondition: not inhabited",
        )
    rng = random.Random(cfg.seed)
    for trial in range(cfg.trials):
        c: Optional[Rat] = None
        if cfg.profile in ("mixed", "repaired") and trial % 4 == 3:
            psi1 = random_upper(T, rng)
            psi2 = random_upper(T, rng)
        else:
            kind = trial % 3 if cfg.profile == "mixed" else {
                "principal": 0,
                "constant": 1,
            }.get(cfg.profile, trial % 3)
            if kind == 0:
                psi1 = principal_upper(T, random_rat(rng))
                psi2 = principal_upper(T, random_rat(rng))
            elif kind == 1:
                psi1 = PwFn.constant(random_rat(rng))
                psi2 = principal_upper(T, random_rat(rng))
            else:
                c = random_rat(rng)
                psi1, psi2 = witness_upper_pair(T, phi, c)
        joint = tensor(T, phi, pointwise_min(psi1, psi2)).value
        t1 = tensor(T, phi, psi1).value
        t2 = tensor(T, phi, psi2).value
        if joint != min(t1, t2):
            return violated(
                "DEF",
                TensorWitness(c, psi1, psi2, joint, t1, t2),
                detail=f"flatness violated at trial {trial}",
            )
    return CheckReport(True, detail=f"no counterexample in {cfg.trials} trials")


# ---------------------------------------------------------------------------
# random generators


_DENOMS = (2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 24)


def random_rat(rng: random.Random, denoms: Sequence[int] = _DENOMS) -> Rat:
    d = rng.choice(denoms)
    return Fraction(rng.randint(0, d), d)


def random_tnorm(rng: random.Random, max_summands: int = 4) -> OrdinalSumTNorm:
    """A random ordinal sum: 0-4 summands with random rational endpoints."""
    k = rng.randint(0, max_summands)
    if k == 0:
        return make_tnorm([])
    cuts = sorted(rng.sample(range(1, 24), 2 * k))
    pts = [Fraction(c, 24) for c in cuts]
    if rng.random() < 0.4:
        pts[0] = ZERO
    if rng.random() < 0.4:
        pts[-1] = ONE
    # occasionally glue two adjacent summands at a shared endpoint
    if k >= 2 and rng.random() < 0.4:
        i = rng.randrange(1, k)
        pts[2 * i - 1] = pts[2 * i]
    summands = []
    for i in range(k):
        lo, hi = pts[2 * i], pts[2 * i + 1]
        if lo >= hi:
            continue
        kind = rng.choice((SummandKind.LUKASIEWICZ, SummandKind.PRODUCT))
        summands.append((lo, hi, kind))
    return make_tnorm(summands)


def random_pwfn(rng: random.Random, jumps: bool = True) -> PwFn:
    """An arbitrary random piecewise-linear function, no validity intended."""
    xs = sorted({ZERO, ONE} | {random_rat(rng) for _ in range(rng.randint(0, 4))})
    bps = []
    for i, x in enumerate(xs):
        vals = [random_rat(rng)]
        if jumps and rng.random() < 0.4:
            vals = [random_rat(rng) for _ in range(3)]
        if len(vals) == 1:
            left = at = right = vals[0]
        else:
            left, at, right = vals
        bps.append(Breakpoint(x, left, at, right))
    return pwfn(bps)


def _monotone_mesh(
    rng: random.Random, T: OrdinalSumTNorm, increasing: bool
) -> tuple[list[Rat], list[Rat]]:
    xs = sorted(
        {ZERO, ONE}
        | set(T.idempotent_levels())
        | {random_rat(rng) for _ in range(rng.randint(1, 4))}
    )
    vals = sorted([random_rat(rng) for _ in xs], reverse=not increasing)
    return xs, vals


def random_upper(T: OrdinalSumTNorm, rng: random.Random) -> PwFn:
    """A genuine fuzzy upper set: combinations, or a repaired random mesh.

    Repaired meshes are projected onto the per-frame constraint sets
    (Lipschitz cap in Lukasiewicz frames, ratio cap in product frames,
    tail rule for the min region) and self-tested; on a failed self-test
    the generator falls back to a lattice combination, which is always
    sound because upper sets are closed under pointwise min and max.
    """
    style = rng.randrange(4)
    if style == 0:
        return principal_upper(T, random_rat(rng))
    if style == 1:
        return PwFn.constant(random_rat(rng))
    if style == 2:
        f = principal_upper(T, random_rat(rng))
        g = PwFn.constant(random_rat(rng))
        h = principal_upper(T, random_rat(rng))
        combo = pointwise_min(f, pointwise_max(g, h))
        return combo if rng.random() < 0.5 else pointwise_max(f, pointwise_min(g, h))
    cand = _repaired_upper(T, rng)
    if cand is not None and check_upper_set(T, cand).holds:
        return cand
    return pointwise_max(
        principal_upper(T, random_rat(rng)), PwFn.constant(random_rat(rng))
    )


def _repaired_upper(T: OrdinalSumTNorm, rng: random.Random) -> Optional[PwFn]:
    xs, vals = _monotone_mesh(rng, T, increasing=True)
    vals = list(vals)
    # per-frame projection
    for s in T.summands:
        for i in range(1, len(xs)):
            if not (s.lo <= xs[i - 1] and xs[i] <= s.hi):
                continue
            prev = min(vals[i - 1], s.hi)
            cur = min(vals[i], s.hi)
            if s.kind is SummandKind.LUKASIEWICZ:
                cap = prev + (xs[i] - xs[i - 1])
            else:
                if xs[i - 1] == s.lo:
                    cap = cur
                else:
                    cap = s.lo + (prev - s.lo) * (xs[i] - s.lo) / (xs[i - 1] - s.lo)
            if cur > cap:
                vals[i] = min(vals[i], cap)
    # increasing pass (projection may only lower values)
    for i in range(1, len(xs)):
        vals[i] = max(vals[i], vals[i - 1])
        if vals[i] > 1:
            vals[i] = ONE
    try:
        return PwFn.from_points(list(zip(xs, vals)))
    except DomainError:
        return None


def random_lower(T: OrdinalSumTNorm, rng: random.Random) -> PwFn:
    """A genuine fuzzy lower set via principal ideals and lattice closure."""
    style = rng.randrange(3)
    if style == 0:
        return principal_lower(T, random_rat(rng))
    if style == 1:
        return PwFn.constant(random_rat(rng))
    f = principal_lower(T, random_rat(rng))
    g = PwFn.constant(random_rat(rng))
    h = principal_lower(T, random_rat(rng))
    return pointwise_max(pointwise_min(f, g), pointwise_min(g, h)) if rng.random() < 0.5 else pointwise_min(f, pointwise_max(g, h))


# ---------------------------------------------------------------------------
# flat-ideal candidate constructions


def flat_candidates(
    T: OrdinalSumTNorm, rng: random.Random, count: int
) -> list[PwFn]:
    """Genuinely flat ideals: principal, net-induced, and pasted frames."""
    out = []
    while len(out) < count:
        style = rng.randrange(4)
        if style == 0 or not T.summands:
            out.append(principal_lower(T, random_rat(rng)))
        elif style == 1:
            limit = random_rat(rng)
            pts = sorted({limit * Fraction(k, 7) for k in range(1, rng.randint(2, 5))})
            pts = [p for p in pts if p < limit]
            if not pts:
                out.append(principal_lower(T, limit))
                continue
            attained = rng.random() < 0.5
            out.append(net_ideal(T, NetSpec(tuple(pts), limit, attained)))
        elif style == 2:
            s = rng.choice(T.summands)
            b = s.lo + (s.hi - s.lo) * Fraction(rng.randint(0, 8), 8)
            out.append(pasted_flat(T, s, b))
        else:
            # principal thickened at the cut point by an idempotent value
            b = random_rat(rng)
            base = principal_lower(T, b)
            variant = _thicken_at_cut(T, base, b, rng)
            out.append(variant if variant is not None else base)
    return out


def _thicken_at_cut(
    T: OrdinalSumTNorm, base: PwFn, b: Rat, rng: random.Random
) -> Optional[PwFn]:
    if b == ZERO or b == ONE:
        return None
    idx = next((i for i, bp in enumerate(base.breakpoints) if bp.x == b), None)
    if idx is None or idx == 0:
        return None
    bp = base.breakpoints[idx]
    choices = [c for c in {bp.right, T.idem_hull(b).hi} if T.is_idempotent(c) and bp.right <= c <= bp.left]
    if not choices:
        return None
    v = rng.choice(sorted(choices))
    pts = list(base.breakpoints)
    pts[idx] = Breakpoint(bp.x, bp.left, v, bp.right)
    return pwfn(pts, base.pieces)


def mutated_flat(
    T: OrdinalSumTNorm, rng: random.Random, rule: str
) -> Optional[PwFn]:
    """A lower set violating exactly the requested flatness condition.

    Returns None when the t-norm cannot host such a violation (for
    instance F2 needs a summand starting strictly above 0).
    """
    if rule == "F1":
        v0 = ZERO
        for _ in range(8):
            c = random_rat(rng)
            if c < ONE and T.is_idempotent(c):
                v0 = c
                break
        base = principal_lower(T, random_rat(rng))
        return pointwise_min(base, PwFn.constant(v0))
    if rule == "F2":
        hosts = [s for s in T.summands if s.lo > ZERO]
        if not hosts:
            return None
        s = rng.choice(hosts)
        w = s.lo + (s.hi - s.lo) * Fraction(rng.randint(1, 7), 8)
        ell = s.lo
        return pwfn(
            [
                Breakpoint(ZERO, ONE, ONE, w),
                Breakpoint(ell, w, ell, ell),
                Breakpoint(ONE, ell, ell, ell),
            ]
        )
    if rule == "F3":
        if not T.summands:
            return None
        s = rng.choice(T.summands)
        lo, hi = s.lo, s.hi
        width = hi - lo
        pts = [Breakpoint(ZERO, ONE, ONE, ONE)]
        if lo > ZERO:
            pts.append(Breakpoint(lo, ONE, ONE, hi))
        else:
            pts[0] = Breakpoint(ZERO, ONE, ONE, hi)
        if s.kind is SummandKind.LUKASIEWICZ:
            # plateau then a half-slope descent: 1-Lipschitz, never principal
            elbow = lo + width / 4
            tail = lo + width * Fraction(5, 8)
            pts.append(Breakpoint(elbow, hi, hi, hi))
        else:
            # transported 1 - u/2: a valid product-frame lower set, never principal
            tail = lo + width / 2
        pts.append(Breakpoint(hi, tail, tail, tail))
        if hi < ONE:
            pts.append(Breakpoint(ONE, tail, tail, tail))
        return pwfn(pts)
    raise DomainError(f"unknown flatness rule {rule!r}")


# ---------------------------------------------------------------------------
# the equivalence harness


@dataclass
class HarnessReport:
    lines: list[str] = field(default_factory=list)
    disagreements: int = 0

    @property
    def ok(self) -> bool:
        return self.disagreements == 0

    def add(self, line: str) -> None:
        self.lines.append(line)

    def text(self) -> str:
        return "\n".join(self.lines)


def revalidate_witness(
    T: OrdinalSumTNorm, f: PwFn, report: CheckReport, lower: bool
) -> bool:
    """Re-check a checker verdict against the raw definitional inequality."""
    w = report.witness
    if isinstance(w, PairWitness):
        if lower:
            return T.conj(f.eval(w.a), T.residuum(w.b, w.a)) > f.eval(w.b)
        return T.conj(T.residuum(w.a, w.b), f.eval(w.a)) > f.eval(w.b)
    if isinstance(w, PointWitness):
        c = w.c
        if lower:
            lhs = T.conj(f.eval(c), T.residuum(ONE, c))
            return lhs > f.eval(ONE)
        lhs = T.conj(T.residuum(ONE, c), f.eval(ONE))
        return lhs > f.eval(c)
    return False


def equivalence_harness(
    tnorms: Sequence[OrdinalSumTNorm],
    cfg: TrialConfig,
    grid_resolution: int = 128,
    flat_trials: int = 12,
) -> HarnessReport:
    """Cross-validate the exact checkers against the definitional oracles.

    Per t-norm family: random candidates are pushed through both the
    characterization checkers and the grid falsifiers; a holding checker
    verdict must produce no grid counterexample, a violating one must
    carry a definitionally re-checkable witness.  A smaller flat-ideal
    round does the same for check_flat versus sampled upper pairs.
    """
    rep = HarnessReport()
    grid = GridSpec(grid_resolution)
    for fi, T in enumerate(tnorms):
        rng = random.Random(cfg.seed * 1000003 + fi)
        bad = 0
        first = ""

        def note(msg: str) -> None:
            nonlocal bad, first
            bad += 1
            first = first or msg

        for t in range(cfg.trials):
            lower_candidate = t % 2 == 0
            roll = rng.random()
            if roll < 0.45:
                f = random_pwfn(rng)
            elif lower_candidate:
                f = random_lower(T, rng)
            else:
                f = random_upper(T, rng)
            if lower_candidate:
                verdict = check_lower_set(T, f)
                if verdict.holds:
                    fal = falsify_lower_set(T, f, grid)
                    if not fal.holds:
                        note(f"lower holds yet grid found {fal.describe()}")
                elif not revalidate_witness(T, f, verdict, lower=True):
                    note(f"lower witness fails recheck: {verdict.describe()}")
            else:
                verdict = check_upper_set(T, f)
                if verdict.holds:
                    fal = falsify_upper_set(T, f, grid)
                    if not fal.holds:
                        note(f"upper holds yet grid found {fal.describe()}")
                elif not revalidate_witness(T, f, verdict, lower=False):
                    note(f"upper witness fails recheck: {verdict.describe()}")
        flats = flat_candidates(T, rng, max(2, flat_trials // 4))
        for phi in flats:
            verdict = check_flat(T, phi)
            if not verdict.holds:
                note(f"constructed flat rejected: {verdict.describe()}")
                continue
            fal = falsify_flat(T, phi, TrialConfig(flat_trials, rng.randrange(1 << 30)))
            if not fal.holds:
                note(f"flat holds yet trials found {fal.describe()}")
        for rule in ("F1", "F2", "F3"):
            phi = mutated_flat(T, rng, rule)
            if phi is None:
                continue
            verdict = check_flat(T, phi)
            if verdict.holds or verdict.rule != rule:
                note(f"{rule} mutant misreported as {verdict.describe()}")
            elif rule in ("F2", "F3") and not isinstance(verdict.witness, TensorWitness):
                note(f"{rule} mutant lacks a tensor witness")
        rep.disagreements += bad
        status = "PASS" if bad == 0 else "FAIL"
        line = (
            f"{status} family={T.describe()} candidates={cfg.trials}"
            f" grid_n={grid_resolution} disagreements={bad}"
        )
        if first:
            line += f" first: {first}"
        rep.add(line)
    return rep


def lemma37_suite(cfg: TrialConfig) -> CheckReport:
    """Min-distributivity of sups for monotone maps on finite grids.

    For decreasing phi and increasing psi1, psi2 over a common finite set,
    sup(phi ^ psi1 ^ psi2) equals min(sup(phi ^ psi1), sup(phi ^ psi2)),
    exactly, trial by trial.
    """
    rng = random.Random(cfg.seed)
    for trial in range(cfg.trials):
        size = rng.randint(2, 9)
        phi = sorted((random_rat(rng) for _ in range(size)), reverse=True)
        psi1 = sorted(random_rat(rng) for _ in range(size))
        psi2 = sorted(random_rat(rng) for _ in range(size))
        joint = max(min(a, b, c) for a, b, c in zip(phi, psi1, psi2))
        split = min(
            max(min(a, b) for a, b in zip(phi, psi1)),
            max(min(a, c) for a, c in zip(phi, psi2)),
        )
        if joint != split:
            return violated(
                "DEF",
                PointWitness(Fraction(trial), (("joint", joint), ("split", split))),
                detail=f"distributivity fails at trial {trial}",
            )
    return CheckReport(True, detail=f"exact on {cfg.trials} random triples")
