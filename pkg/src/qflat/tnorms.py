"""Ordinal-sum continuous t-norms and their residuated implications.

A t-norm here is a finite list of pairwise disjoint open summand intervals,
each rescaling the Lukasiewicz or the product t-norm onto itself; outside
every summand square the operation is min.  The empty list is min itself.
Conjunction and implication are closed-form and exact; the brute-force
counterparts live in the oracle module.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .rat import ONE, ZERO, DomainError, ParseError, Rat, ensure_unit, fmt_rat, parse_rat


class SummandKind(enum.Enum):
    LUKASIEWICZ = "lukasiewicz"
    PRODUCT = "product"


@dataclass(frozen=True, order=True)
class Summand:
    lo: Rat
    hi: Rat
    kind: SummandKind

    def __post_init__(self):
        ensure_unit(self.lo, "summand endpoint")
        ensure_unit(self.hi, "summand endpoint")
        if self.lo >= self.hi:
            raise DomainError(
                f"summand ({fmt_rat(self.lo)}, {fmt_rat(self.hi)}) is not a"
                " nondegenerate interval"
            )

    def contains_closure(self, x: Rat) -> bool:
        return self.lo <= x <= self.hi

    def interior(self, x: Rat) -> bool:
        return self.lo < x < self.hi


@dataclass(frozen=True)
class Frame:
    """The idempotent hull (c-, c+) of a point; degenerate iff c idempotent."""

    lo: Rat
    hi: Rat
    summand: Optional[Summand] = None

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi


@dataclass(frozen=True)
class OrdinalSumTNorm:
    """A continuous t-norm given by its ordinal-sum decomposition."""

    summands: tuple[Summand, ...]

    # -- structure -----------------------------------------------------------

    def _summand_of_pair(self, x: Rat, y: Rat) -> Optional[Summand]:
        lo, hi = (x, y) if x <= y else (y, x)
        for s in self.summands:
            if s.lo <= lo and hi <= s.hi:
                return s
            if s.lo > lo:
                break
        return None

    def is_idempotent(self, c: Rat) -> bool:
        ensure_unit(c, "element")
        return all(not s.interior(c) for s in self.summands)

    def idem_hull(self, c: Rat) -> Frame:
        ensure_unit(c, "element")
        for s in self.summands:
            if s.interior(c):
                return Frame(s.lo, s.hi, s)
        return Frame(c, c, None)

    def idempotent_levels(self) -> list[Rat]:
        """All summand endpoints, sorted; the idempotent set's boundary."""
        pts = sorted({p for s in self.summands for p in (s.lo, s.hi)})
        return pts

    # -- the quantale operations ----------------------------------------------

    def conj(self, x: Rat, y: Rat) -> Rat:
        """The t-norm x & y, exact."""
        ensure_unit(x, "argument")
        ensure_unit(y, "argument")
        s = self._summand_of_pair(x, y)
        if s is None:
            return min(x, y)
        if s.kind is SummandKind.LUKASIEWICZ:
            return max(s.lo, x + y - s.hi)
        return s.lo + (x - s.lo) * (y - s.lo) / (s.hi - s.lo)

    def residuum(self, x: Rat, y: Rat) -> Rat:
        """The implication x -> y: the largest z with x & z <= y."""
        ensure_unit(x, "argument")
        ensure_unit(y, "argument")
        if x <= y:
            return ONE
        s = self._summand_of_pair(x, y)
        if s is None:
            return y
        if s.kind is SummandKind.LUKASIEWICZ:
            return s.hi - x + y
        return s.lo + (s.hi - s.lo) * (y - s.lo) / (x - s.lo)

    def frame_residuum(self, frame: Frame, x: Rat, y: Rat) -> Rat:
        """Implication of the subquantale carried by a nondegenerate frame."""
        if frame.degenerate:
            raise DomainError("frame is degenerate")
        if not (frame.lo <= x <= frame.hi and frame.lo <= y <= frame.hi):
            raise DomainError("arguments outside the frame")
        return min(frame.hi, self.residuum(x, y))

    def describe(self) -> str:
        if not self.summands:
            return "min"
        return " + ".join(
            f"({fmt_rat(s.lo)},{fmt_rat(s.hi)},{s.kind.value})" for s in self.summands
        )


def make_tnorm(summands: Iterable[Summand | tuple]) -> OrdinalSumTNorm:
    """Validate and sort a summand family; the empty family is min.

    Touching closures (a shared endpoint between two summands) are allowed;
    overlapping open intervals are not.
    """
    norm: list[Summand] = []
    for s in summands:
        if not isinstance(s, Summand):
            lo, hi, kind = s
            if isinstance(kind, str):
                kind = SummandKind(kind.lower())
            s = Summand(Rat(lo), Rat(hi), kind)
        norm.append(s)
    norm.sort(key=lambda s: (s.lo, s.hi))
    for a, b in zip(norm, norm[1:]):
        if b.lo < a.hi:
            raise DomainError(
                f"summands ({fmt_rat(a.lo)},{fmt_rat(a.hi)}) and"
                f" ({fmt_rat(b.lo)},{fmt_rat(b.hi)}) overlap"
            )
    return OrdinalSumTNorm(tuple(norm))


GODEL = make_tnorm([])
LUKASIEWICZ = make_tnorm([(ZERO, ONE, SummandKind.LUKASIEWICZ)])
PRODUCT = make_tnorm([(ZERO, ONE, SummandKind.PRODUCT)])

_BUILTINS = {
    "godel": GODEL,
    "min": GODEL,
    "lukasiewicz": LUKASIEWICZ,
    "product": PRODUCT,
}


def builtin(name: str) -> Optional[OrdinalSumTNorm]:
    return _BUILTINS.get(name.lower())


# ---------------------------------------------------------------------------
# text format


def print_tnorm(t: OrdinalSumTNorm, name: str) -> str:
    lines = [f"tnorm {name}"]
    for s in t.summands:
        lines.append(f"summand {fmt_rat(s.lo)} {fmt_rat(s.hi)} {s.kind.value}")
    return "\n".join(lines) + "\n"


def parse_tnorm_body(name: str, lines: Sequence[str]) -> OrdinalSumTNorm:
    """Parse the ``summand`` lines of one ``tnorm`` stanza.

    The names godel, lukasiewicz and product with no summand lines expand
    to their canonical forms; explicit summands under an alias name are
    rejected to avoid shadowing surprises.
    """
    rows = []
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if toks[0] != "summand" or len(toks) != 4:
            raise ParseError(f"tnorm {name}: unexpected line {line!r}")
        try:
            kind = SummandKind(toks[3].lower())
        except ValueError:
            raise ParseError(f"tnorm {name}: unknown summand kind {toks[3]!r}") from None
        rows.append((parse_rat(toks[1]), parse_rat(toks[2]), kind))
    alias = builtin(name)
    if alias is not None:
        if rows:
            raise ParseError(
                f"tnorm {name}: {name!r} is a builtin alias and cannot carry"
                " explicit summands"
            )
        return alias
    try:
        return make_tnorm(rows)
    except DomainError as exc:
        raise ParseError(f"tnorm {name}: {exc}") from None
