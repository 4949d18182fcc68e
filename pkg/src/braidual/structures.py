"""Braided vector spaces, (co)algebras, bialgebras and Hopf algebras.

Each structure type validates itself on construction: building a
``BraidedBialgebra`` runs the complete bialgebra suite and raises
:class:`PrecheckFailed` with the report if anything fails.  Inside a
``with unchecked():`` block this is skipped, which is how deliberately
broken structures are assembled for the checkers.
"""

from __future__ import annotations

import contextvars
from contextlib import contextmanager
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterator

from .errors import NoAntipode, PrecheckFailed, ShapeMismatch, Singular
from .linalg import (K, Chain, Identity, Kron, LinMap, Space, ONE, ZERO, as_shape,
                     compose, flip, fuse, identity, lin_invert, solve_linear, tensor)
from .report import CheckReport, Entry, Verdict, compare

_SKIP_CHECKS = contextvars.ContextVar("skip_checks", default=False)
_BOUND = contextvars.ContextVar("degree_bound", default=None)


@contextmanager
def unchecked() -> Iterator[None]:
    """Build structures without running their constructor checks."""
    token = _SKIP_CHECKS.set(True)
    try:
        yield
    finally:
        _SKIP_CHECKS.reset(token)


@contextmanager
def degree_bound(bound: int | None) -> Iterator[None]:
    """Restrict every comparison to total degrees ``<= bound``."""
    token = _BOUND.set(bound)
    try:
        yield
    finally:
        _BOUND.reset(token)


def _validate(obj) -> None:
    if _SKIP_CHECKS.get():
        return
    report = obj.verify()
    if not report.ok:
        raise PrecheckFailed(report)


def check(report: CheckReport, equation_id: str, lhs, rhs, clause: str = "") -> None:
    """Append the comparison of ``lhs`` and ``rhs`` to ``report``."""
    report.extend(compare(equation_id, lhs, rhs, clause, _BOUND.get()))


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"


class Provenance(Enum):
    GIVEN = "Given"
    INVERSE = "Inverse"
    INDUCED_DUAL = "InducedDual"
    INDUCED_DUAL_CIRC = "InducedDualCirc"
    DOUBLE_DUAL_BULLET = "DoubleDualBullet"
    DOUBLE_CIRC = "DoubleCirc"


def _sq(op, dom, cod) -> LinMap:
    """Materialize ``op`` and view it between the given shapes."""
    return op.materialize().relabel(dom, cod)


# --------------------------------------------------------------------------
# braidings


def check_yang_baxter(psi: LinMap) -> CheckReport:
    report = CheckReport("Yang-Baxter")
    dom = psi.domain
    if len(dom) != 2 or dom.factors[0] != dom.factors[1] or psi.codomain != dom:
        raise ShapeMismatch(f"a braiding must act on V (x) V, got {psi!r}")
    v = dom.factors[0]
    lhs = Chain(Kron(psi, v), Kron(v, psi), Kron(psi, v))
    rhs = Chain(Kron(v, psi), Kron(psi, v), Kron(v, psi))
    check(report, "YBE", lhs, rhs)
    return report


def _inverse_report(report, f, f_inv, clause=""):
    check(report, "invertible", Chain(f, f_inv), Identity(f_inv.domain), clause)
    check(report, "invertible", Chain(f_inv, f), Identity(f.domain), clause)


@dataclass(frozen=True)
class Braiding:
    space: Space
    psi: LinMap
    psi_inv: LinMap

    def __post_init__(self):
        _validate(self)

    @classmethod
    def of(cls, psi: LinMap) -> "Braiding":
        try:
            inv = lin_invert(psi)
        except Singular as exc:
            report = CheckReport("braiding")
            report.add(Entry("invertible", Verdict.FAIL, note=str(exc)))
            raise PrecheckFailed(report) from exc
        return cls(psi.domain.factors[0], psi, inv)

    @classmethod
    def flip(cls, space: Space) -> "Braiding":
        f = flip(space)
        return cls(space, f, f)

    def verify(self) -> CheckReport:
        report = CheckReport(f"braiding on {self.space.display_name}")
        _inverse_report(report, self.psi, self.psi_inv)
        report.extend(check_yang_baxter(self.psi))
        return report

    def inverse(self) -> "Braiding":
        with unchecked():
            return Braiding(self.space, self.psi_inv, self.psi)

    def power(self, k: int) -> LinMap:
        base = self.psi if k >= 0 else self.psi_inv
        out = identity((self.space, self.space))
        for _ in range(abs(k)):
            out = base @ out
        return out

    def as_cross(self) -> "CrossBraiding":
        with unchecked():
            return CrossBraiding(self.space, self.space, self.psi, self.psi_inv,
                                 Provenance.GIVEN, self, self)


@dataclass(frozen=True)
class CrossBraiding:
    """An invertible ``V (x) W -> W (x) V``.

    ``left_braiding`` is the braiding of V and ``right_braiding`` that of W;
    whichever is present selects the hexagon that is checked.
    """

    left: Space
    right: Space
    psi: LinMap
    psi_inv: LinMap
    provenance: Provenance = Provenance.GIVEN
    left_braiding: Braiding | None = None
    right_braiding: Braiding | None = None

    def __post_init__(self):
        if self.psi.domain != as_shape((self.left, self.right)) or \
                self.psi.codomain != as_shape((self.right, self.left)):
            raise ShapeMismatch(f"cross braiding has shape {self.psi!r}")
        _validate(self)

    @classmethod
    def of(cls, psi: LinMap, provenance: Provenance = Provenance.GIVEN,
           left_braiding: Braiding | None = None,
           right_braiding: Braiding | None = None) -> "CrossBraiding":
        v, w = psi.domain.factors
        return cls(v, w, psi, lin_invert(psi), provenance, left_braiding, right_braiding)

    @classmethod
    def flip(cls, v: Space, w: Space, left_braiding=None, right_braiding=None):
        return cls(v, w, flip(v, w), flip(w, v), Provenance.GIVEN,
                   left_braiding, right_braiding)

    def verify(self) -> CheckReport:
        report = CheckReport(
            f"cross braiding {self.left.display_name} (x) {self.right.display_name}")
        _inverse_report(report, self.psi, self.psi_inv)
        if self.left_braiding is not None:
            report.extend(check_hexagons(self, Side.LEFT))
        if self.right_braiding is not None:
            report.extend(check_hexagons(self, Side.RIGHT))
        return report

    def inverse(self, provenance: Provenance = Provenance.INVERSE) -> "CrossBraiding":
        with unchecked():
            return CrossBraiding(self.right, self.left, self.psi_inv, self.psi, provenance,
                                 self.right_braiding, self.left_braiding)

    def with_braidings(self, left_braiding=None, right_braiding=None) -> "CrossBraiding":
        with unchecked():
            return replace(self, left_braiding=left_braiding, right_braiding=right_braiding)


def check_hexagons(x: CrossBraiding, side: Side,
                   left_braiding: Braiding | None = None,
                   right_braiding: Braiding | None = None) -> CheckReport:
    """Hexagon ``VW`` for ``Side.LEFT`` (W is left V-braided), ``WV`` for ``Side.RIGHT``."""
    v, w, p = x.left, x.right, x.psi
    report = CheckReport("hexagon")
    if side is Side.LEFT:
        b = left_braiding or x.left_braiding
        if b is None:
            raise ShapeMismatch("the left hexagon needs the braiding of the left space")
        lhs = Chain(Kron(p, v), Kron(v, p), Kron(b.psi, w))
        rhs = Chain(Kron(w, b.psi), Kron(p, v), Kron(v, p))
        check(report, "VW", lhs, rhs)
    else:
        b = right_braiding or x.right_braiding
        if b is None:
            raise ShapeMismatch("the right hexagon needs the braiding of the right space")
        lhs = Chain(Kron(w, p), Kron(p, w), Kron(v, b.psi))
        rhs = Chain(Kron(b.psi, v), Kron(w, p), Kron(p, w))
        check(report, "WV", lhs, rhs)
    return report


# --------------------------------------------------------------------------
# algebras and coalgebras


def check_mult_compat(x: CrossBraiding, which_side_is_algebra: Side,
                      algebra: "BraidedAlgebra") -> CheckReport:
    """``AWm``/``1W`` (algebra on the left factor) or VAm/V1 (on the right)."""
    v, w, p = x.left, x.right, x.psi
    m, unit = algebra.mult, algebra.unit
    report = CheckReport("multiplication compatibility")
    if which_side_is_algebra is Side.LEFT:
        if algebra.space != v:
            raise ShapeMismatch("algebra does not live on the left factor")
        check(report, "AWm", Chain(p, Kron(m, w)),
              Chain(Kron(w, m), Kron(p, v), Kron(v, p)))
        if unit is not None:
            check(report, "1W", _sq(Chain(p, Kron(unit, w)), w, (w, v)),
                  _sq(Kron(w, unit), w, (w, v)))
    else:
        if algebra.space != w:
            raise ShapeMismatch("algebra does not live on the right factor")
        check(report, "VAm", Chain(p, Kron(v, m)),
              Chain(Kron(m, v), Kron(w, p), Kron(p, w)))
        if unit is not None:
            check(report, "V1", _sq(Chain(p, Kron(v, unit)), v, (w, v)),
                  _sq(Kron(unit, v), v, (w, v)))
    return report


def check_comult_compat(x: CrossBraiding, which_side_is_coalgebra: Side,
                        coalgebra: "BraidedCoalgebra") -> CheckReport:
    """``PHW`` (coalgebra on the left factor) or ``PVH`` (on the right)."""
    v, w, p = x.left, x.right, x.psi
    d, eps = coalgebra.comult, coalgebra.counit
    report = CheckReport("comultiplication compatibility")
    if which_side_is_coalgebra is Side.LEFT:
        if coalgebra.space != v:
            raise ShapeMismatch("coalgebra does not live on the left factor")
        check(report, "PHW", Chain(Kron(w, d), p),
              Chain(Kron(p, v), Kron(v, p), Kron(d, w)), "Delta")
        check(report, "PHW", _sq(Chain(Kron(w, eps), p), (v, w), w),
              _sq(Kron(eps, w), (v, w), w), "counit")
    else:
        if coalgebra.space != w:
            raise ShapeMismatch("coalgebra does not live on the right factor")
        check(report, "PVH", Chain(Kron(d, v), p),
              Chain(Kron(w, p), Kron(p, w), Kron(v, d)), "Delta")
        check(report, "PVH", _sq(Chain(Kron(eps, v), p), (v, w), v),
              _sq(Kron(v, eps), (v, w), v), "counit")
    return report


@dataclass(frozen=True)
class BraidedAlgebra:
    braiding: Braiding
    mult: LinMap
    unit: LinMap | None = None

    def __post_init__(self):
        h = self.braiding.space
        if self.mult.domain != as_shape((h, h)) or self.mult.codomain != as_shape(h):
            raise ShapeMismatch(f"multiplication has shape {self.mult!r}")
        if self.unit is not None and (self.unit.domain != as_shape(K)
                                      or self.unit.codomain != as_shape(h)):
            raise ShapeMismatch(f"unit has shape {self.unit!r}")
        _validate(self)

    @property
    def space(self) -> Space:
        return self.braiding.space

    @property
    def unit_vector(self):
        return dict(self.unit.column(0)) if self.unit is not None else None

    def verify(self) -> CheckReport:
        return algebra_report(self)

    def with_braiding(self, braiding: Braiding) -> "BraidedAlgebra":
        with unchecked():
            return BraidedAlgebra(braiding, self.mult, self.unit)


def algebra_report(a: BraidedAlgebra) -> CheckReport:
    h, m, psi = a.space, a.mult, a.braiding.psi
    report = CheckReport(f"algebra on {h.display_name}")
    check(report, "assoc", Chain(m, Kron(m, h)), Chain(m, Kron(h, m)))
    if a.unit is not None:
        check(report, "unit", _sq(Chain(m, Kron(a.unit, h)), h, h), Identity(h), "1a = a")
        check(report, "unit", _sq(Chain(m, Kron(h, a.unit)), h, h), Identity(h), "a1 = a")
    x = a.braiding.as_cross()
    report.extend(check_mult_compat(x, Side.LEFT, a))
    report.extend(check_mult_compat(x, Side.RIGHT, a))
    check(report, "Pmm", Chain(psi, Kron(m, m)),
          Chain(Kron(m, m), Kron(h, psi, h), Kron(psi, psi), Kron(h, psi, h)))
    return report


@dataclass(frozen=True)
class BraidedCoalgebra:
    braiding: Braiding
    comult: LinMap
    counit: LinMap

    def __post_init__(self):
        h = self.braiding.space
        if self.comult.domain != as_shape(h) or self.comult.codomain != as_shape((h, h)):
            raise ShapeMismatch(f"comultiplication has shape {self.comult!r}")
        if self.counit.domain != as_shape(h) or self.counit.codomain != as_shape(K):
            raise ShapeMismatch(f"counit has shape {self.counit!r}")
        _validate(self)

    @property
    def space(self) -> Space:
        return self.braiding.space

    def verify(self) -> CheckReport:
        return coalgebra_report(self)

    def with_braiding(self, braiding: Braiding) -> "BraidedCoalgebra":
        with unchecked():
            return BraidedCoalgebra(braiding, self.comult, self.counit)


def coalgebra_report(c: BraidedCoalgebra) -> CheckReport:
    h, d, eps, psi = c.space, c.comult, c.counit, c.braiding.psi
    report = CheckReport(f"coalgebra on {h.display_name}")
    check(report, "coassoc", Chain(Kron(d, h), d), Chain(Kron(h, d), d))
    check(report, "counit", _sq(Chain(Kron(eps, h), d), h, h), Identity(h), "(eps (x) id)Delta")
    check(report, "counit", _sq(Chain(Kron(h, eps), d), h, h), Identity(h), "(id (x) eps)Delta")
    x = c.braiding.as_cross()
    report.extend(check_comult_compat(x, Side.LEFT, c))
    report.extend(check_comult_compat(x, Side.RIGHT, c))
    check(report, "PDD", Chain(Kron(d, d), psi),
          Chain(Kron(h, psi, h), Kron(psi, psi), Kron(h, psi, h), Kron(d, d)))
    return report


@dataclass(frozen=True)
class BraidedBialgebra:
    algebra: BraidedAlgebra
    coalgebra: BraidedCoalgebra

    def __post_init__(self):
        if self.algebra.braiding != self.coalgebra.braiding:
            raise ShapeMismatch("algebra and coalgebra carry different braidings")
        if self.algebra.unit is None:
            raise ShapeMismatch("a bialgebra needs a unit")
        _validate(self)

    @classmethod
    def build(cls, psi: LinMap, mult: LinMap, unit: LinMap, comult: LinMap,
              counit: LinMap, psi_inv: LinMap | None = None,
              checked: bool = True) -> "BraidedBialgebra":
        """Assemble a bialgebra from raw maps, checking only the whole."""
        with unchecked():
            braiding = (Braiding(psi.domain.factors[0], psi, psi_inv) if psi_inv is not None
                        else Braiding.of(psi))
            alg = BraidedAlgebra(braiding, mult, unit)
            coalg = BraidedCoalgebra(braiding, comult, counit)
            h = cls(alg, coalg)
        if checked:
            _validate(h)
        return h

    space = property(lambda self: self.algebra.space)
    braiding = property(lambda self: self.algebra.braiding)
    psi = property(lambda self: self.algebra.braiding.psi)
    psi_inv = property(lambda self: self.algebra.braiding.psi_inv)
    mult = property(lambda self: self.algebra.mult)
    unit = property(lambda self: self.algebra.unit)
    comult = property(lambda self: self.coalgebra.comult)
    counit = property(lambda self: self.coalgebra.counit)

    def verify(self) -> CheckReport:
        return check_bialgebra(self)

    def with_maps(self, **changes) -> "BraidedBialgebra":
        """An unchecked copy with some raw maps replaced."""
        maps = dict(psi=self.psi, psi_inv=self.psi_inv, mult=self.mult, unit=self.unit,
                    comult=self.comult, counit=self.counit)
        if "psi" in changes and "psi_inv" not in changes:
            changes["psi_inv"] = lin_invert(changes["psi"])
        maps.update(changes)
        return BraidedBialgebra.build(**maps, checked=False)

    def inverse_braided(self) -> "BraidedBialgebra":
        """The same maps under the inverse braiding."""
        return self.with_maps(psi=self.psi_inv, psi_inv=self.psi)


def check_bialgebra(h: BraidedBialgebra) -> CheckReport:
    """The full suite: braiding, algebra, coalgebra, and the bialgebra laws."""
    s = h.space
    report = CheckReport(f"bialgebra on {s.display_name}")
    report.extend(h.braiding.verify())
    report.extend(algebra_report(h.algebra))
    report.extend(coalgebra_report(h.coalgebra))
    m, d, eps, unit, psi = h.mult, h.comult, h.counit, h.unit, h.psi
    check(report, "Dcm", Chain(d, m),
          Chain(Kron(m, m), Kron(s, psi, s), Kron(d, d)))
    check(report, "epsm", _sq(Chain(eps, m), (s, s), K), _sq(Kron(eps, eps), (s, s), K))
    check(report, "epsm", Chain(eps, unit), Identity(K), "eps(1) = 1")
    check(report, "D1", _sq(Chain(d, unit), K, (s, s)), _sq(Kron(unit, unit), K, (s, s)))
    return report


def convolution(phi: LinMap, psi: LinMap, coalg: BraidedCoalgebra,
                alg: BraidedAlgebra) -> LinMap:
    """``m o (phi (x) psi) o Delta``."""
    if phi.domain != as_shape(coalg.space) or psi.domain != as_shape(coalg.space):
        raise ShapeMismatch("convolution factors must be defined on the coalgebra")
    if phi.codomain != as_shape(alg.space) or psi.codomain != as_shape(alg.space):
        raise ShapeMismatch("convolution factors must land in the algebra")
    return compose(alg.mult, Kron(phi, psi), coalg.comult)


def unit_counit(coalg: BraidedCoalgebra, alg: BraidedAlgebra) -> LinMap:
    """The convolution unit ``h -> eps(h) 1``."""
    return compose(alg.unit, coalg.counit)


def _antipode_system(h: BraidedBialgebra, left: bool):
    n = h.space.dim
    m, d = h.mult, h.comult
    target = unit_counit(h.coalgebra, h.algebra)
    rows, rhs = [], []
    # unknown s[a, p] (coefficient of e_a in S(e_p)) has index a * n + p
    for c in range(n):
        acc = {}
        for pq, coef in d.column(c).items():
            p, q = divmod(pq, n)
            for a in range(n):
                prod = m.column(a * n + q) if left else m.column(p * n + a)
                col = p if left else q
                for r, mv in prod.items():
                    key = (r, a * n + col)
                    acc[key] = acc.get(key, ZERO) + coef * mv
        tcol = target.column(c)
        for r in range(n):
            row = {var: v for (rr, var), v in acc.items() if rr == r and v}
            rows.append(row)
            rhs.append(tcol.get(r, ZERO))
    return rows, rhs


def solve_antipode(h: BraidedBialgebra) -> LinMap:
    """The convolution inverse of ``id``, or :class:`NoAntipode`."""
    n = h.space.dim
    rows, rhs = _antipode_system(h, left=True)
    sol, unique = solve_linear(rows, rhs, n * n)
    if sol is None:
        raise NoAntipode(f"m(S (x) id)Delta = 1 eps has no solution on {h.space.display_name}")

    def as_map(values):
        return LinMap(h.space, h.space, {(a, p): values[a * n + p]
                                         for a in range(n) for p in range(n)})

    s = as_map(sol)
    ident = identity(h.space)
    target = unit_counit(h.coalgebra, h.algebra)
    if convolution(ident, s, h.coalgebra, h.algebra) == target:
        return s
    if not unique:
        rrows, rrhs = _antipode_system(h, left=False)
        sol, _ = solve_linear(rows + rrows, rhs + rrhs, n * n)
        if sol is not None:
            return as_map(sol)
    raise NoAntipode(f"no two-sided convolution inverse of id on {h.space.display_name}")


@dataclass(frozen=True)
class BraidedHopf:
    bialgebra: BraidedBialgebra
    antipode: LinMap
    antipode_inv: LinMap | None = None

    def __post_init__(self):
        _validate(self)

    @classmethod
    def of(cls, h: BraidedBialgebra, antipode: LinMap | None = None) -> "BraidedHopf":
        s = solve_antipode(h) if antipode is None else antipode
        try:
            s_inv = lin_invert(s)
        except Singular:
            s_inv = None
        return cls(h, s, s_inv)

    space = property(lambda self: self.bialgebra.space)
    braiding = property(lambda self: self.bialgebra.braiding)
    psi = property(lambda self: self.bialgebra.psi)
    psi_inv = property(lambda self: self.bialgebra.psi_inv)
    mult = property(lambda self: self.bialgebra.mult)
    unit = property(lambda self: self.bialgebra.unit)
    comult = property(lambda self: self.bialgebra.comult)
    counit = property(lambda self: self.bialgebra.counit)
    algebra = property(lambda self: self.bialgebra.algebra)
    coalgebra = property(lambda self: self.bialgebra.coalgebra)

    def verify(self) -> CheckReport:
        report = CheckReport(f"Hopf algebra on {self.space.display_name}")
        report.extend(check_bialgebra(self.bialgebra))
        report.extend(antipode_report(self.bialgebra, self.antipode))
        report.extend(check_antipode_identities(self))
        if self.antipode_inv is not None:
            check(report, "Sinv", Chain(self.antipode, self.antipode_inv), Identity(self.space))
            check(report, "Sinv", Chain(self.antipode_inv, self.antipode), Identity(self.space))
        return report


def antipode_report(h: BraidedBialgebra, s: LinMap, clause: str = "") -> CheckReport:
    report = CheckReport("antipode")
    sp = h.space
    target = Chain(h.unit, h.counit)
    check(report, "antipode", Chain(h.mult, Kron(s, sp), h.comult), target,
          clause or "m(S (x) id)Delta")
    check(report, "antipode", Chain(h.mult, Kron(sp, s), h.comult), target,
          clause or "m(id (x) S)Delta")
    return report


def check_antipode_identities(h: BraidedHopf) -> CheckReport:
    """The five braided antipode identities (``Sbraid``)."""
    s, sp, psi = h.antipode, h.space, h.psi
    m, d, eps = h.mult, h.comult, h.counit
    report = CheckReport("antipode identities")
    check(report, "Sbraid", Chain(psi, Kron(s, sp)), Chain(Kron(sp, s), psi), "Psi(S (x) id)")
    check(report, "Sbraid", Chain(psi, Kron(sp, s)), Chain(Kron(s, sp), psi), "Psi(id (x) S)")
    check(report, "Sbraid", Chain(s, m), Chain(m, psi, Kron(s, s)), "S m")
    check(report, "Sbraid", Chain(d, s), Chain(psi, Kron(s, s), d), "Delta S")
    check(report, "Sbraid", Chain(eps, s), eps, "eps S")
    return report


# --------------------------------------------------------------------------
# braided tensor products


def braided_tensor_bialgebra(a: BraidedBialgebra, b: BraidedBialgebra,
                             x: CrossBraiding) -> BraidedBialgebra:
    """``A (x) B`` with the braided product ``ulm``, coproduct ``ulD`` and
    braiding ``braidAB``.

    ``x`` is the crossing ``B (x) A -> A (x) B`` used by the product; the
    coproduct uses its inverse ``A (x) B -> B (x) A``.
    """
    sa, sb = a.space, b.space
    if x.left != sb or x.right != sa:
        raise ShapeMismatch("the crossing must map B (x) A to A (x) B")
    x = x.with_braidings(b.braiding, a.braiding)
    pre = CheckReport("braided tensor product precheck")
    pre.extend(x.verify())
    pre.extend(check_mult_compat(x, Side.LEFT, b.algebra))
    pre.extend(check_mult_compat(x, Side.RIGHT, a.algebra))
    pre.extend(check_comult_compat(x, Side.LEFT, b.coalgebra))
    pre.extend(check_comult_compat(x, Side.RIGHT, a.coalgebra))
    if not pre.ok:
        raise PrecheckFailed(pre)
    ab = fuse((sa, sb))
    two = (ab, ab)
    mult = _sq(Chain(Kron(a.mult, b.mult), Kron(sa, x.psi, sb)), two, ab)
    comult = _sq(Chain(Kron(sa, x.psi_inv, sb), Kron(a.comult, b.comult)), ab, two)
    counit = _sq(Kron(a.counit, b.counit), ab, K)
    unit = _sq(Kron(a.unit, b.unit), K, ab)
    psi = _sq(Chain(Kron(sa, x.psi_inv, sb), Kron(sa, sa, b.psi), Kron(a.psi, sb, sb),
                    Kron(sa, x.psi, sb)), two, two)
    psi_inv = _sq(Chain(Kron(sa, x.psi_inv, sb), Kron(a.psi_inv, sb, sb),
                        Kron(sa, sa, b.psi_inv), Kron(sa, x.psi, sb)), two, two)
    out = BraidedBialgebra.build(psi, mult, unit, comult, counit, psi_inv, checked=False)
    report = check_bialgebra(out)
    if not report.ok:
        raise PrecheckFailed(report)
    return out
