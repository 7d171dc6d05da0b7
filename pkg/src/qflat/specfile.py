"""Plain-text spec files holding named t-norms and named functions.

The grammar is deliberately tiny so rational values round-trip bit-exactly:

    tnorm <name>
    summand <lo> <hi> lukasiewicz|product

    fn <name>
    point <x> : [<left>] <at> [<right>]

Blank lines and ``#`` comments are ignored.  The names godel, lukasiewicz
and product resolve to builtin t-norms without any file.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .pwfn import PwFn, parse_pwfn_body, print_pwfn
from .rat import ParseError
from .tnorms import OrdinalSumTNorm, builtin, parse_tnorm_body, print_tnorm


@dataclass
class SpecFile:
    tnorms: dict[str, OrdinalSumTNorm] = field(default_factory=dict)
    fns: dict[str, PwFn] = field(default_factory=dict)

    def resolve_tnorm(self, name: str) -> OrdinalSumTNorm:
        if name in self.tnorms:
            return self.tnorms[name]
        t = builtin(name)
        if t is None:
            raise ParseError(f"unknown t-norm {name!r}")
        return t

    def resolve_fn(self, name: str) -> PwFn:
        if name not in self.fns:
            raise ParseError(f"unknown function {name!r}")
        return self.fns[name]


def parse_specfile(text: str) -> SpecFile:
    spec = SpecFile()
    stanza_kind = ""
    stanza_name = ""
    body: list[str] = []

    def flush() -> None:
        if not stanza_kind:
            return
        if stanza_kind == "tnorm":
            if stanza_name in spec.tnorms:
                raise ParseError(f"duplicate t-norm name {stanza_name!r}")
            spec.tnorms[stanza_name] = parse_tnorm_body(stanza_name, body)
        else:
            if stanza_name in spec.fns:
                raise ParseError(f"duplicate function name {stanza_name!r}")
            spec.fns[stanza_name] = parse_pwfn_body(stanza_name, body)

    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head = line.split()
        if head[0] in ("tnorm", "fn"):
            if len(head) != 2:
                raise ParseError(f"bad stanza header {line!r}")
            flush()
            stanza_kind, stanza_name = head[0], head[1]
            body = []
        elif stanza_kind:
            body.append(line)
        else:
            raise ParseError(f"line outside any stanza: {line!r}")
    flush()
    return spec


def print_specfile(spec: SpecFile) -> str:
    chunks = [print_tnorm(t, name) for name, t in spec.tnorms.items()]
    chunks += [print_pwfn(f, name) for name, f in spec.fns.items()]
    return "\n".join(chunks)
