"""Per-equation check reports.

A report is a flat list of entries, one per identity that was evaluated.
Identities are named by the tags in :data:`EQUATIONS`; a few structural
axioms that carry no tag of their own (associativity, unit laws, ...) get
short descriptive ids.

Graded inputs are only compared where the answer is actually known: an
entry of an identity is evaluated when both the input tensor and the
output tensor have primal degree sum and dual degree sum within the
cutoff.  Everything else is counted and reported as ``Skipped``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, List

from .linalg import LinearOp, ZERO

EQUATIONS = {
    # braided vector spaces
    "YBE": "Yang-Baxter equation",
    "VW": "left V-braided hexagon",
    "WV": "right W-braided hexagon",
    "invertible": "braiding has an exact inverse",
    # algebras and coalgebras
    "assoc": "associativity",
    "unit": "unit laws",
    "coassoc": "coassociativity",
    "counit": "counit laws",
    "AWm": "braiding vs multiplication on the left factor",
    "1W": "braiding fixes the unit on the left factor",
    "VAm": "braiding vs multiplication on the right factor",
    "V1": "braiding fixes the unit on the right factor",
    "Pmm": "braiding vs m (x) m",
    "PHW": "braiding vs comultiplication on the left factor",
    "PVH": "braiding vs comultiplication on the right factor",
    "PDD": "braiding vs Delta (x) Delta",
    # bialgebras and Hopf algebras
    "ulm": "braided tensor product algebra",
    "ulD": "braided tensor product coalgebra",
    "braidAB": "braiding of a braided tensor product",
    "conv": "convolution product",
    "Dcm": "Delta is multiplicative",
    "epsm": "counit is multiplicative",
    "D1": "Delta(1) = 1 (x) 1",
    "antipode": "antipode is the convolution inverse of id",
    "Sinv": "stored antipode inverse is exact",
    "Sbraid": "antipode identities",
    # twists
    "mkDn1": "twisted product m o Psi^k",
    "mkDn2": "twisted coproduct Psi^n o Delta",
    "corS": "antipode powers are Hopf morphisms between twists",
    # modules and comodules
    "anu": "left action axioms",
    "bnu": "left action vs braiding",
    "amu": "right action axioms",
    "bmu": "right action vs braiding",
    "nulinv": "left action vs inverse braiding",
    "nurinv": "right action vs inverse braiding",
    "Droh": "left coaction axioms",
    "brL": "left coaction vs braiding",
    "rohD": "right coaction axioms",
    "brR": "right coaction vs braiding",
    "invPHV": "coaction vs inverse braiding",
    "num": "module algebra product rule",
    "nu1": "module algebra unit rule",
    "rhoRm": "comodule algebra product rule",
    "rR1": "comodule algebra unit rule",
    "nuRc": "side flip of (co)actions",
    "biprop": "antipode side flip of (co)actions",
    # duality
    "UU": "induced braiding on the dual",
    "PsiHH": "induced dual/primal braidings",
    "PsiHHcirc": "inverse-induced dual/primal braidings",
    "PHU": "induced primal/dual braidings",
    "phh": "induced braidings, pairing form",
    "cphh": "inverse-induced braidings, pairing form",
    "ust": "dual product from Psi o Delta",
    "us": "dual product from Psi^-1 o Delta",
    "brcop": "dual coproduct from m o Psi",
    "cuD": "dual coproduct from m o Psi^-1",
    "mD": "pairing vs product on the dual",
    "Dm": "pairing vs product on the primal",
    "1a": "pairing vs units and counits",
    "Spair": "pairing vs antipodes",
    "nondeg": "pairing is non-degenerate",
    "dH": "dual braided bialgebra",
    "propdual": "double dual isomorphism",
    "Pdual": "duals of twists",
    "closed": "closed dual-basis formula equals defining identity",
    # induced braidings on (co)module duals
    "bHV": "primal/dual carrier braiding",
    "cHV": "inverse primal/dual carrier braiding",
    "cPHV": "dual/carrier braiding",
    "cPUV": "inverse dual/carrier braiding",
    "VUb": "bullet braiding from the dual carrier",
    "WHb": "bullet braiding from the primal side",
    # conversions
    "nuL": "left action from a right coaction",
    "nuR": "right action from a left coaction",
    "glaa": "natural left action",
    "graa": "natural right action",
    "rR": "right coaction from a left action",
    "muR": "left coaction from a right action",
    "PHVcc": "double-dual carrier braiding",
    "coactUH": "one-shot round-trip coaction",
    "PWHcc": "double-dual carrier braiding, dual side",
    "actUH": "one-shot round-trip action",
    "vRWU": "dualized coaction",
    "rLW": "dualized action",
    "adj": "adjointness of dualized (co)actions",
    "roundtrip": "round trip reproduces the input",
}


class Verdict(str, Enum):
    PASS = "Pass"
    FAIL = "Fail"
    SKIPPED = "Skipped"


@dataclass(frozen=True)
class Witness:
    input_index: int
    input_labels: tuple
    output_index: int
    output_labels: tuple
    lhs: Fraction
    rhs: Fraction

    def to_dict(self):
        return {
            "input_index": self.input_index,
            "input": list(self.input_labels),
            "output_index": self.output_index,
            "output": list(self.output_labels),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
        }


@dataclass(frozen=True)
class Entry:
    equation_id: str
    verdict: Verdict
    clause: str = ""
    witness: Witness | None = None
    checked: int = 0
    note: str = ""

    def __post_init__(self):
        if self.equation_id not in EQUATIONS:
            raise KeyError(f"unknown equation id {self.equation_id!r}")

    def to_dict(self):
        d = {"equation_id": self.equation_id, "verdict": self.verdict.value}
        if self.clause:
            d["clause"] = self.clause
        if self.checked:
            d["checked"] = self.checked
        if self.note:
            d["note"] = self.note
        d["witness"] = self.witness.to_dict() if self.witness else None
        return d

    def describe(self) -> str:
        head = f"{self.verdict.value:7} {self.equation_id}"
        if self.clause:
            head += f" [{self.clause}]"
        if self.note:
            head += f"  ({self.note})"
        w = self.witness
        if w is not None:
            head += (f"\n          at {'(x)'.join(w.input_labels)} -> "
                     f"{'(x)'.join(w.output_labels)}: lhs={w.lhs} rhs={w.rhs}")
        return head


@dataclass
class CheckReport:
    subject: str = ""
    entries: List[Entry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """True when nothing failed.  Skipped entries do not count against."""
        return all(e.verdict is not Verdict.FAIL for e in self.entries)

    @property
    def fully_passed(self) -> bool:
        return bool(self.entries) and all(e.verdict is Verdict.PASS for e in self.entries)

    def failures(self) -> List[Entry]:
        return [e for e in self.entries if e.verdict is Verdict.FAIL]

    def skipped(self) -> List[Entry]:
        return [e for e in self.entries if e.verdict is Verdict.SKIPPED]

    def by_id(self, equation_id: str) -> List[Entry]:
        return [e for e in self.entries if e.equation_id == equation_id]

    def verdict(self, equation_id: str) -> Verdict | None:
        """Combined verdict of every entry with this id (Fail beats Pass beats Skipped)."""
        found = self.by_id(equation_id)
        if not found:
            return None
        if any(e.verdict is Verdict.FAIL for e in found):
            return Verdict.FAIL
        if any(e.verdict is Verdict.PASS for e in found):
            return Verdict.PASS
        return Verdict.SKIPPED

    def add(self, entry: Entry) -> "CheckReport":
        self.entries.append(entry)
        return self

    def extend(self, other: "CheckReport | Iterable[Entry]", context: str = "") -> "CheckReport":
        items = other.entries if isinstance(other, CheckReport) else list(other)
        for e in items:
            if context:
                clause = f"{context}: {e.clause}" if e.clause else context
                e = Entry(e.equation_id, e.verdict, clause, e.witness, e.checked, e.note)
            self.entries.append(e)
        return self

    def record(self, equation_id: str, ok: bool, clause: str = "", note: str = "") -> bool:
        self.add(Entry(equation_id, Verdict.PASS if ok else Verdict.FAIL, clause, note=note))
        return ok

    def filtered(self, ids) -> "CheckReport":
        ids = set(ids)
        return CheckReport(self.subject, [e for e in self.entries if e.equation_id in ids])

    def to_dict(self):
        return {
            "subject": self.subject,
            "ok": self.ok,
            "entries": [e.to_dict() for e in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def format_text(self) -> str:
        lines = [f"== {self.subject}" if self.subject else "== report"]
        lines += ["  " + e.describe() for e in self.entries]
        n_fail = len(self.failures())
        n_skip = len(self.skipped())
        n_pass = len(self.entries) - n_fail - n_skip
        lines.append(f"  {n_pass} passed, {n_fail} failed, {n_skip} skipped")
        return "\n".join(lines)


def _evaluable(shape, index, bound) -> bool:
    primal, dual = shape.polar_degrees(index)
    return primal <= bound and dual <= bound


def compare(equation_id: str, lhs: LinearOp, rhs: LinearOp, clause: str = "",
            bound: int | None = None) -> List[Entry]:
    """Compare two operators column by column.

    Returns one Pass/Fail entry, plus a Skipped entry when a graded bound
    hid part of the identity.  The first differing coefficient becomes the
    witness.
    """
    if lhs.domain != rhs.domain or lhs.codomain != rhs.codomain:
        from .errors import ShapeMismatch
        raise ShapeMismatch(
            f"{equation_id}: sides have shapes {lhs.domain!r} -> {lhs.codomain!r} "
            f"and {rhs.domain!r} -> {rhs.codomain!r}")
    dom, cod = lhs.domain, lhs.codomain
    if bound is None and (dom.graded or cod.graded):
        cuts = [c for c in (dom.cutoff, cod.cutoff) if c is not None]
        bound = min(cuts)
    checked = skipped = 0
    for j in range(dom.size):
        if bound is not None and not _evaluable(dom, j, bound):
            skipped += 1
            continue
        left, right = lhs.column(j), rhs.column(j)
        rows = sorted(set(left) | set(right))
        for i in rows:
            if bound is not None and not _evaluable(cod, i, bound):
                skipped += 1
                continue
            a, b = left.get(i, ZERO), right.get(i, ZERO)
            if a != b:
                w = Witness(j, dom.labels(j), i, cod.labels(i), a, b)
                return [Entry(equation_id, Verdict.FAIL, clause, w, checked)]
        checked += 1
    out = []
    if checked:
        note = f"degree <= {bound}" if bound is not None else ""
        out.append(Entry(equation_id, Verdict.PASS, clause, None, checked, note))
    if skipped:
        out.append(Entry(equation_id, Verdict.SKIPPED, clause, None, 0,
                         f"{skipped} entries beyond degree {bound}"))
    return out
