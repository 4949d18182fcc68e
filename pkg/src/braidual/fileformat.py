"""Plain-text structure files.

A file is a sequence of line-oriented declarations::

    braidual 1
    kind hopf
    param q 2
    space H 2
      labels 1 x
      degrees 0 1
    map psi H H -> H H
      0 0 1
      3 3 -1
    end

Map entries are ``out_index in_index scalar`` triples in the row-major
order of the tensor factors (leftmost factor most significant).  Scalars
are integers or ``p/q`` rationals.  ``H'`` refers to the dual of a
declared space.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from .errors import ParseError
from .linalg import K, LinMap, Space, TensorShape, as_shape
from .structures import (BraidedAlgebra, BraidedBialgebra, BraidedCoalgebra, BraidedHopf,
                         Braiding, CrossBraiding, Provenance, Side)

KINDS = ("braiding", "algebra", "coalgebra", "bialgebra", "hopf", "module", "comodule")

REQUIRED = {
    "braiding": ("psi",),
    "algebra": ("psi", "mult", "unit"),
    "coalgebra": ("psi", "comult", "counit"),
    "bialgebra": ("psi", "mult", "unit", "comult", "counit"),
    "hopf": ("psi", "mult", "unit", "comult", "counit", "antipode"),
    "module": ("psi", "mult", "unit", "action", "cross"),
    "comodule": ("psi", "comult", "counit", "coaction", "cross"),
}

_SCALAR = re.compile(r"^-?\d+(/\d+)?$")
_NAME = re.compile(r"^[^\s'#]+$")


@dataclass
class StructureFile:
    kind: str
    spaces: Dict[str, Space] = field(default_factory=dict)
    maps: Dict[str, LinMap] = field(default_factory=dict)
    params: Dict[str, str] = field(default_factory=dict)
    side: str | None = None

    def __eq__(self, other):
        if not isinstance(other, StructureFile):
            return NotImplemented
        return (self.kind, self.spaces, self.params, self.side) == \
            (other.kind, other.spaces, other.params, other.side) and \
            self.maps.keys() == other.maps.keys() and \
            all(self.maps[k] == other.maps[k] and self.maps[k].domain == other.maps[k].domain
                and self.maps[k].codomain == other.maps[k].codomain for k in self.maps)


# --------------------------------------------------------------------------
# writing


def _space_ref(s: Space) -> str:
    return s.display_name


def _shape_ref(shape: TensorShape) -> str:
    if shape == as_shape(K):
        return "K"
    return " ".join(_space_ref(s) for s in shape.factors)


def emit(sf: StructureFile) -> str:
    lines = ["braidual 1", f"kind {sf.kind}"]
    for key, value in sf.params.items():
        lines.append(f"param {key} {value}")
    if sf.side is not None:
        lines.append(f"side {sf.side}")
    for name, s in sf.spaces.items():
        lines.append(f"space {name} {s.dim}")
        lines.append("  labels " + " ".join(s.labels))
        if s.degrees is not None:
            lines.append("  degrees " + " ".join(str(d) for d in s.degrees))
            lines.append(f"  cutoff {s.cutoff}")
    for name, m in sf.maps.items():
        lines.append(f"map {name} {_shape_ref(m.domain)} -> {_shape_ref(m.codomain)}")
        for out, inp, c in sorted(m.entries()):
            lines.append(f"  {out} {inp} {c}")
        lines.append("end")
    return "\n".join(lines) + "\n"


def _primal(space: Space) -> Space:
    return space.dual() if space.dualized else space


def to_file(obj, params: Dict[str, str] | None = None) -> StructureFile:
    """Describe a structure object as a StructureFile."""
    from .catalog import GradedStructure
    from .modules import BraidedComodule, BraidedModule
    params = dict(params or {})
    if isinstance(obj, GradedStructure):
        params.setdefault("q", str(obj.q))
        params.setdefault("cutoff", str(obj.cutoff))
        obj = obj.hopf
    maps: Dict[str, LinMap] = {}
    side = None
    if isinstance(obj, Braiding):
        kind, b = "braiding", obj
    elif isinstance(obj, BraidedAlgebra):
        kind, b = "algebra", obj.braiding
        maps.update(mult=obj.mult, unit=obj.unit)
    elif isinstance(obj, BraidedCoalgebra):
        kind, b = "coalgebra", obj.braiding
        maps.update(comult=obj.comult, counit=obj.counit)
    elif isinstance(obj, (BraidedBialgebra, BraidedHopf)):
        kind = "hopf" if isinstance(obj, BraidedHopf) else "bialgebra"
        b = obj.braiding
        maps.update(mult=obj.mult, unit=obj.unit, comult=obj.comult, counit=obj.counit)
        if isinstance(obj, BraidedHopf):
            maps["antipode"] = obj.antipode
            if obj.antipode_inv is not None:
                maps["antipode_inv"] = obj.antipode_inv
    elif isinstance(obj, BraidedModule):
        kind, b, side = "module", obj.algebra.braiding, obj.side.value
        maps.update(mult=obj.algebra.mult, unit=obj.algebra.unit, action=obj.action,
                    cross=obj.cross.psi, cross_inv=obj.cross.psi_inv)
    elif isinstance(obj, BraidedComodule):
        kind, b, side = "comodule", obj.coalgebra.braiding, obj.side.value
        maps.update(comult=obj.coalgebra.comult, counit=obj.coalgebra.counit,
                    coaction=obj.coaction, cross=obj.cross.psi, cross_inv=obj.cross.psi_inv)
    else:
        raise TypeError(f"cannot write {type(obj).__name__}")
    maps = {"psi": b.psi, "psi_inv": b.psi_inv, **maps}
    spaces: Dict[str, Space] = {}
    for m in maps.values():
        for s in m.domain.factors + m.codomain.factors:
            if s == K:
                continue
            p = _primal(s)
            if spaces.setdefault(p.name, p) != p:
                raise ValueError(f"two different spaces are named {p.name!r}")
    return StructureFile(kind, spaces, maps, params, side)


# --------------------------------------------------------------------------
# reading


def _tokens(line: str) -> List[Tuple[int, str]]:
    out = []
    for m in re.finditer(r"\S+", line):
        out.append((m.start() + 1, m.group()))
    return out


def _scalar(tok: str, lineno: int, col: int) -> Fraction:
    if not _SCALAR.match(tok):
        raise ParseError(lineno, col, f"expected an integer or p/q rational, got {tok!r}")
    value = Fraction(tok)
    if "/" in tok and int(tok.split("/")[1]) == 0:
        raise ParseError(lineno, col, "zero denominator")
    return value


def _int(tok: str, lineno: int, col: int, what: str) -> int:
    if not re.match(r"^\d+$", tok):
        raise ParseError(lineno, col, f"expected {what}, got {tok!r}")
    return int(tok)


def parse(text: str) -> StructureFile:
    """Parse a structure file, raising ParseError with a position on failure."""
    lines = text.splitlines()
    kind = None
    spaces: Dict[str, Space] = {}
    pending: Dict[str, dict] = {}
    maps: Dict[str, LinMap] = {}
    params: Dict[str, str] = {}
    side = None
    seen_header = False
    i = 0

    def finish_space(name):
        spec = pending.pop(name)
        labels = spec.get("labels") or tuple(f"e{k}" for k in range(spec["dim"]))
        if len(labels) != spec["dim"]:
            raise ParseError(spec["line"], 1, f"space {name}: {len(labels)} labels for dim "
                                              f"{spec['dim']}")
        try:
            spaces[name] = Space(name, spec["dim"], labels, spec.get("degrees"),
                                 spec.get("cutoff"))
        except ValueError as exc:
            raise ParseError(spec["line"], 1, str(exc)) from None

    def resolve(tok, lineno, col):
        base, dual = (tok[:-1], True) if tok.endswith("'") else (tok, False)
        if base == "K" and not dual:
            return K
        if base in pending:
            finish_space(base)
        if base not in spaces:
            raise ParseError(lineno, col, f"unknown space {base!r}")
        return spaces[base].dual() if dual else spaces[base]

    current_space = None
    while i < len(lines):
        lineno = i + 1
        raw = lines[i].split("#", 1)[0]
        i += 1
        toks = _tokens(raw)
        if not toks:
            continue
        col, word = toks[0]
        indented = raw[:1].isspace()
        if indented and current_space is not None:
            spec = pending[current_space]
            args = toks[1:]
            if word == "labels":
                spec["labels"] = tuple(t for _, t in args)
            elif word == "degrees":
                spec["degrees"] = tuple(_int(t, lineno, c, "a degree") for c, t in args)
            elif word == "cutoff":
                if len(args) != 1:
                    raise ParseError(lineno, col, "cutoff takes one value")
                spec["cutoff"] = _int(args[0][1], lineno, args[0][0], "a cutoff")
            else:
                raise ParseError(lineno, col, f"unknown space attribute {word!r}")
            continue
        if current_space is not None:
            finish_space(current_space)
            current_space = None
        if not seen_header:
            if word != "braidual" or len(toks) != 2 or toks[1][1] != "1":
                raise ParseError(lineno, col, "expected header 'braidual 1'")
            seen_header = True
            continue
        if word == "kind":
            if len(toks) != 2 or toks[1][1] not in KINDS:
                c = toks[1][0] if len(toks) > 1 else col + len(word)
                raise ParseError(lineno, c, f"kind must be one of {', '.join(KINDS)}")
            kind = toks[1][1]
        elif word == "param":
            if len(toks) != 3:
                raise ParseError(lineno, col, "expected 'param NAME VALUE'")
            params[toks[1][1]] = toks[2][1]
        elif word == "side":
            if len(toks) != 2 or toks[1][1] not in ("left", "right"):
                raise ParseError(lineno, col, "side must be left or right")
            side = toks[1][1]
        elif word == "space":
            if len(toks) != 3:
                raise ParseError(lineno, col, "expected 'space NAME DIM'")
            name = toks[1][1]
            if not _NAME.match(name) or name in ("K", "->", "end"):
                raise ParseError(lineno, toks[1][0], f"bad space name {name!r}")
            if name in spaces or name in pending:
                raise ParseError(lineno, toks[1][0], f"space {name!r} declared twice")
            dim = _int(toks[2][1], lineno, toks[2][0], "a dimension")
            if dim < 1:
                raise ParseError(lineno, toks[2][0], "dimension must be positive")
            pending[name] = {"dim": dim, "line": lineno}
            current_space = name
        elif word == "map":
            words = [t for _, t in toks]
            if "->" not in words or len(toks) < 5:
                raise ParseError(lineno, col, "expected 'map NAME DOMAIN -> CODOMAIN'")
            name = toks[1][1]
            if name in maps:
                raise ParseError(lineno, toks[1][0], f"map {name!r} declared twice")
            arrow = words.index("->")
            dom_t, cod_t = toks[2:arrow], toks[arrow + 1:]
            if not dom_t or not cod_t:
                raise ParseError(lineno, col, "empty domain or codomain")
            dom = as_shape([resolve(t, lineno, c) for c, t in dom_t])
            cod = as_shape([resolve(t, lineno, c) for c, t in cod_t])
            coeffs = {}
            closed = False
            while i < len(lines):
                lineno = i + 1
                row = _tokens(lines[i].split("#", 1)[0])
                i += 1
                if not row:
                    continue
                if row[0][1] == "end":
                    closed = True
                    break
                if len(row) != 3:
                    raise ParseError(lineno, row[0][0], "expected 'OUT IN SCALAR'")
                out = _int(row[0][1], lineno, row[0][0], "an output index")
                inp = _int(row[1][1], lineno, row[1][0], "an input index")
                if out >= cod.size:
                    raise ParseError(lineno, row[0][0], f"output index {out} out of range")
                if inp >= dom.size:
                    raise ParseError(lineno, row[1][0], f"input index {inp} out of range")
                if (out, inp) in coeffs:
                    raise ParseError(lineno, row[0][0], "duplicate entry")
                coeffs[(out, inp)] = _scalar(row[2][1], lineno, row[2][0])
            if not closed:
                raise ParseError(len(lines) + 1, 1, f"map {name!r} is missing 'end'")
            maps[name] = LinMap(dom, cod, coeffs)
        else:
            raise ParseError(lineno, col, f"unknown declaration {word!r}")
    if current_space is not None:
        finish_space(current_space)
    for name in list(pending):
        finish_space(name)
    if not seen_header:
        raise ParseError(1, 1, "empty file")
    if kind is None:
        raise ParseError(len(lines) + 1, 1, "missing 'kind' declaration")
    for name in REQUIRED[kind]:
        if name not in maps:
            raise ParseError(len(lines) + 1, 1, f"kind {kind} needs a map named {name!r}")
    if kind in ("module", "comodule") and side is None:
        raise ParseError(len(lines) + 1, 1, f"kind {kind} needs a 'side' declaration")
    return StructureFile(kind, spaces, maps, params, side)


def build(sf: StructureFile):
    """Turn a parsed file into the validated domain object it describes."""
    from .modules import BraidedComodule, BraidedModule
    from .linalg import lin_invert
    m = sf.maps
    psi = m["psi"]
    psi_inv = m.get("psi_inv") or lin_invert(psi)
    braiding = Braiding(psi.domain.factors[0], psi, psi_inv)
    if sf.kind == "braiding":
        return braiding
    if sf.kind == "algebra":
        return BraidedAlgebra(braiding, m["mult"], m["unit"])
    if sf.kind == "coalgebra":
        return BraidedCoalgebra(braiding, m["comult"], m["counit"])
    if sf.kind in ("bialgebra", "hopf"):
        h = BraidedBialgebra.build(psi, m["mult"], m["unit"], m["comult"], m["counit"], psi_inv)
        if sf.kind == "bialgebra":
            return h
        return BraidedHopf(h, m["antipode"], m.get("antipode_inv"))
    side = Side(sf.side)
    cross, cross_inv = m["cross"], m.get("cross_inv") or lin_invert(m["cross"])
    v, w = cross.domain.factors
    h_on_left = (sf.kind == "module") == (side is Side.LEFT)
    carrier = w if h_on_left else v
    lb = braiding if h_on_left or v == braiding.space else None
    rb = braiding if not h_on_left or w == braiding.space else None
    x = CrossBraiding(v, w, cross, cross_inv, Provenance.GIVEN, lb, rb)
    if sf.kind == "module":
        alg = BraidedAlgebra(braiding, m["mult"], m["unit"])
        return BraidedModule(alg, carrier, m["action"], side, x)
    coalg = BraidedCoalgebra(braiding, m["comult"], m["counit"])
    return BraidedComodule(coalg, carrier, m["coaction"], side, x)

def read(path) -> StructureFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write(path, sf: StructureFile) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit(sf))
