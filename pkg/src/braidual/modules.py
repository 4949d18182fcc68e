"""Braided (co)modules, (co)module algebras and the duality conversions.

Side conventions for the carrier braiding ``cross``:

* left module ``H (x) V -> V``:   cross is ``Psi_HV : H (x) V -> V (x) H``
* right module ``V (x) H -> V``:  cross is ``Psi_VH : V (x) H -> H (x) V``
* left comodule ``V -> H (x) V``: cross is ``Psi_VH : V (x) H -> H (x) V``
* right comodule ``V -> V (x) H``: cross is ``Psi_HV : H (x) V -> V (x) H``

Every conversion works with the full duals U = H' and W = V'.  Elements of
``X (x) Y`` are read as functionals on ``X' (x) Y'`` factor by factor, so a
map into a tensor product is recovered from its values on dual basis
tensors (see :func:`curry`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

from .duality import contract, dual_algebra, dual_coalgebra, evaluation, nested_pairing
from .errors import AntipodeNotInvertible, ShapeMismatch
from .linalg import (K, ONE, Chain, Kron, LinMap, Space, as_shape, identity, lin_invert,
                     permutation)
from .report import CheckReport
from .structures import (BraidedAlgebra, BraidedBialgebra, BraidedCoalgebra, BraidedHopf,
                         Braiding, CrossBraiding, Provenance, Side, _validate, check,
                         check_comult_compat, check_hexagons, check_mult_compat, unchecked)


def curry(functional, source, target) -> LinMap:
    """Turn ``F : X (x) Y' -> K`` into the map ``X -> Y`` it represents.

    ``Y'`` pairs with ``Y`` factor by factor in the same order, so the
    coefficient of ``y_J`` in the image of ``x_I`` is ``F(x_I (x) y^J)``.
    """
    x, y = as_shape(source), as_shape(target)
    f = functional.materialize() if not isinstance(functional, LinMap) else functional
    if f.domain != x + as_shape([s.dual() for s in y.factors]):
        raise ShapeMismatch(f"functional has domain {f.domain!r}")
    cols = {}
    for i in range(x.size):
        col = {}
        for j in range(y.size):
            c = f.column(i * y.size + j).get(0)
            if c:
                col[j] = c
        cols[i] = col
    return LinMap._trusted(x, y, cols)


def _pair(*spaces):
    """Evaluation of the dual space ``spaces[0]`` against ``spaces[1]``."""
    return contract(spaces, [(0, 1)])


# --------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class BraidedModule:
    algebra: BraidedAlgebra
    carrier: Space
    action: LinMap
    side: Side
    cross: CrossBraiding

    def __post_init__(self):
        a, v = self.algebra.space, self.carrier
        dom = (a, v) if self.side is Side.LEFT else (v, a)
        if self.action.domain != as_shape(dom) or self.action.codomain != as_shape(v):
            raise ShapeMismatch(f"action has shape {self.action!r}")
        if self.cross.psi.domain != as_shape(dom):
            raise ShapeMismatch("carrier braiding does not match the side")
        _validate(self)

    def verify(self) -> CheckReport:
        return check_module(self)


@dataclass(frozen=True)
class BraidedComodule:
    coalgebra: BraidedCoalgebra
    carrier: Space
    coaction: LinMap
    side: Side
    cross: CrossBraiding

    def __post_init__(self):
        h, v = self.coalgebra.space, self.carrier
        cod = (h, v) if self.side is Side.LEFT else (v, h)
        cross_dom = (v, h) if self.side is Side.LEFT else (h, v)
        if self.coaction.domain != as_shape(v) or self.coaction.codomain != as_shape(cod):
            raise ShapeMismatch(f"coaction has shape {self.coaction!r}")
        if self.cross.psi.domain != as_shape(cross_dom):
            raise ShapeMismatch("carrier braiding does not match the side")
        _validate(self)

    def verify(self) -> CheckReport:
        return check_comodule(self)


@dataclass(frozen=True)
class ModuleAlgebra:
    """A module over the algebra of ``bialgebra`` whose carrier is an algebra."""

    module: BraidedModule
    carrier_algebra: BraidedAlgebra
    bialgebra: BraidedBialgebra

    def __post_init__(self):
        _validate(self)

    def verify(self) -> CheckReport:
        return check_module_algebra(self)


@dataclass(frozen=True)
class ComoduleAlgebra:
    comodule: BraidedComodule
    carrier_algebra: BraidedAlgebra
    bialgebra: BraidedBialgebra

    def __post_init__(self):
        _validate(self)

    def verify(self) -> CheckReport:
        return check_comodule_algebra(self)


# --------------------------------------------------------------------------
# checkers


def _ambient(x: CrossBraiding, side: Side, braiding: Braiding) -> CheckReport:
    if side is Side.LEFT:
        return check_hexagons(x, Side.LEFT, left_braiding=braiding)
    return check_hexagons(x, Side.RIGHT, right_braiding=braiding)


def check_module(m: BraidedModule) -> CheckReport:
    a, v, nu = m.algebra.space, m.carrier, m.action
    mult, unit = m.algebra.mult, m.algebra.unit
    p, p_inv = m.cross.psi, m.cross.psi_inv
    paa, paa_inv = m.algebra.braiding.psi, m.algebra.braiding.psi_inv
    report = CheckReport(f"{m.side.value} module on {v.display_name}")
    if m.side is Side.LEFT:
        check(report, "anu", Chain(nu, Kron(a, nu)), Chain(nu, Kron(mult, v)), "associativity")
        if unit is not None:
            check(report, "anu", Chain(nu, Kron(unit, v)).materialize().relabel(v, v),
                  identity(v), "unit")
        check(report, "bnu", Chain(p, Kron(a, nu)),
              Chain(Kron(nu, a), Kron(a, p), Kron(paa, v)))
        check(report, "nulinv", Chain(Kron(a, nu), Kron(paa_inv, v), Kron(a, p_inv)),
              Chain(p_inv, Kron(nu, a)))
        report.extend(_ambient(m.cross, Side.LEFT, m.algebra.braiding), "carrier")
        report.extend(check_mult_compat(m.cross, Side.LEFT, m.algebra), "carrier")
    else:
        check(report, "amu", Chain(nu, Kron(nu, a)), Chain(nu, Kron(v, mult)), "associativity")
        if unit is not None:
            check(report, "amu", Chain(nu, Kron(v, unit)).materialize().relabel(v, v),
                  identity(v), "unit")
        check(report, "bmu", Chain(p, Kron(nu, a)),
              Chain(Kron(a, nu), Kron(p, a), Kron(v, paa)))
        check(report, "nurinv", Chain(Kron(nu, a), Kron(v, paa_inv), Kron(p_inv, a)),
              Chain(p_inv, Kron(a, nu)))
        report.extend(_ambient(m.cross, Side.RIGHT, m.algebra.braiding), "carrier")
        report.extend(check_mult_compat(m.cross, Side.RIGHT, m.algebra), "carrier")
    return report


def check_comodule(c: BraidedComodule) -> CheckReport:
    h, v, rho = c.coalgebra.space, c.carrier, c.coaction
    delta, eps = c.coalgebra.comult, c.coalgebra.counit
    p, p_inv = c.cross.psi, c.cross.psi_inv
    phh, phh_inv = c.coalgebra.braiding.psi, c.coalgebra.braiding.psi_inv
    report = CheckReport(f"{c.side.value} comodule on {v.display_name}")
    if c.side is Side.LEFT:
        check(report, "Droh", Chain(Kron(h, rho), rho), Chain(Kron(delta, v), rho),
              "coassociativity")
        check(report, "Droh", Chain(Kron(eps, v), rho).materialize().relabel(v, v),
              identity(v), "counit")
        check(report, "brL", Chain(Kron(h, rho), p),
              Chain(Kron(phh, v), Kron(h, p), Kron(rho, h)))
        check(report, "invPHV", Chain(Kron(h, p_inv), Kron(phh_inv, v), Kron(h, rho)),
              Chain(Kron(rho, h), p_inv))
        report.extend(_ambient(c.cross, Side.RIGHT, c.coalgebra.braiding), "carrier")
        report.extend(check_comult_compat(c.cross, Side.RIGHT, c.coalgebra), "carrier")
    else:
        check(report, "rohD", Chain(Kron(rho, h), rho), Chain(Kron(v, delta), rho),
              "coassociativity")
        check(report, "rohD", Chain(Kron(v, eps), rho).materialize().relabel(v, v),
              identity(v), "counit")
        check(report, "brR", Chain(Kron(rho, h), p),
              Chain(Kron(v, phh), Kron(p, h), Kron(h, rho)))
        check(report, "invPHV", Chain(Kron(p_inv, h), Kron(v, phh_inv), Kron(rho, h)),
              Chain(Kron(h, rho), p_inv))
        report.extend(_ambient(c.cross, Side.LEFT, c.coalgebra.braiding), "carrier")
        report.extend(check_comult_compat(c.cross, Side.LEFT, c.coalgebra), "carrier")
    return report


def _carrier_compat(x: CrossBraiding, side_of_h: Side, h: BraidedBialgebra,
                    b: BraidedAlgebra) -> CheckReport:
    """The compatibilities a (co)module algebra asks of the carrier braiding."""
    other = Side.RIGHT if side_of_h is Side.LEFT else Side.LEFT
    report = CheckReport("carrier braiding")
    report.extend(check_mult_compat(x, side_of_h, h.algebra))
    report.extend(check_mult_compat(x, other, b))
    report.extend(check_comult_compat(x, side_of_h, h.coalgebra))
    return report


def check_module_algebra(ma: ModuleAlgebra) -> CheckReport:
    m, b, h = ma.module, ma.carrier_algebra, ma.bialgebra
    hs, v, nu, p = h.space, m.carrier, m.action, m.cross.psi
    mb, delta = b.mult, h.comult
    report = CheckReport(f"{m.side.value} module algebra on {v.display_name}")
    report.extend(check_module(m))
    if m.side is Side.LEFT:
        check(report, "num", Chain(nu, Kron(hs, mb)),
              Chain(mb, Kron(nu, nu), Kron(hs, p, v), Kron(delta, v, v)))
        if b.unit is not None:
            check(report, "nu1", Chain(nu, Kron(hs, b.unit)).materialize().relabel(hs, v),
                  Chain(b.unit, h.counit).materialize().relabel(hs, v))
    else:
        check(report, "num", Chain(nu, Kron(mb, hs)),
              Chain(mb, Kron(nu, nu), Kron(v, p, hs), Kron(v, v, delta)))
        if b.unit is not None:
            check(report, "nu1", Chain(nu, Kron(b.unit, hs)).materialize().relabel(hs, v),
                  Chain(b.unit, h.counit).materialize().relabel(hs, v))
    report.extend(_carrier_compat(m.cross, m.side, h, b))
    return report


def check_comodule_algebra(ca: ComoduleAlgebra) -> CheckReport:
    c, b, h = ca.comodule, ca.carrier_algebra, ca.bialgebra
    hs, v, rho, p = h.space, c.carrier, c.coaction, c.cross.psi
    mb, mh = b.mult, h.mult
    report = CheckReport(f"{c.side.value} comodule algebra on {v.display_name}")
    report.extend(check_comodule(c))
    if c.side is Side.RIGHT:
        check(report, "rhoRm", Chain(rho, mb),
              Chain(Kron(mb, mh), Kron(v, p, hs), Kron(rho, rho)))
        side_of_h = Side.LEFT
    else:
        check(report, "rhoRm", Chain(rho, mb),
              Chain(Kron(mh, mb), Kron(hs, p, v), Kron(rho, rho)))
        side_of_h = Side.RIGHT
    if b.unit is not None:
        pair = (v, hs) if c.side is Side.RIGHT else (hs, v)
        one = Kron(b.unit, h.unit) if c.side is Side.RIGHT else Kron(h.unit, b.unit)
        check(report, "rR1", _as(Chain(rho, b.unit), K, pair), _as(one, K, pair))
    report.extend(_carrier_compat(c.cross, side_of_h, h, b))
    return report


def _as(op, dom, cod) -> LinMap:
    return op.materialize().relabel(dom, cod)


# --------------------------------------------------------------------------
# catalog (co)modules


def _self_cross(b: Braiding, provenance=Provenance.GIVEN) -> CrossBraiding:
    with unchecked():
        return CrossBraiding(b.space, b.space, b.psi, b.psi_inv, provenance, b, b)


def _bi(h) -> BraidedBialgebra:
    return h.bialgebra if isinstance(h, BraidedHopf) else h


def regular_module(h, side: Side = Side.LEFT) -> BraidedModule:
    """H acting on itself by multiplication."""
    h = _bi(h)
    return BraidedModule(h.algebra, h.space, h.mult, side, _self_cross(h.braiding))


def self_comodule(h, side: Side = Side.RIGHT) -> BraidedComodule:
    """H coacting on itself by its coproduct."""
    h = _bi(h)
    return BraidedComodule(h.coalgebra, h.space, h.comult, side, _self_cross(h.braiding))


def self_comodule_algebra(h, side: Side = Side.RIGHT) -> ComoduleAlgebra:
    h = _bi(h)
    return ComoduleAlgebra(self_comodule(h, side), h.algebra, h)


def _flip_cross(v: Space, w: Space, left: Braiding | None, right: Braiding | None):
    return CrossBraiding.flip(v, w, left, right)


def trivial_module(h, carrier: Space, side: Side = Side.LEFT) -> BraidedModule:
    """``a (x) v -> eps(a) v`` with the flip as carrier braiding."""
    h = _bi(h)
    hs, eps = h.space, h.counit
    if side is Side.LEFT:
        nu = Kron(eps, carrier).materialize().relabel((hs, carrier), carrier)
        x = _flip_cross(hs, carrier, h.braiding, None)
    else:
        nu = Kron(carrier, eps).materialize().relabel((carrier, hs), carrier)
        x = _flip_cross(carrier, hs, None, h.braiding)
    return BraidedModule(h.algebra, carrier, nu, side, x)


def trivial_comodule(h, carrier: Space, side: Side = Side.RIGHT) -> BraidedComodule:
    """``v -> v (x) 1`` (or ``1 (x) v``) with the flip as carrier braiding."""
    h = _bi(h)
    hs = h.space
    if side is Side.RIGHT:
        rho = Kron(carrier, h.unit).materialize().relabel(carrier, (carrier, hs))
        x = _flip_cross(hs, carrier, h.braiding, None)
    else:
        rho = Kron(h.unit, carrier).materialize().relabel(carrier, (hs, carrier))
        x = _flip_cross(carrier, hs, None, h.braiding)
    return BraidedComodule(h.coalgebra, carrier, rho, side, x)


def trivial_module_algebra(h, b: BraidedAlgebra, side: Side = Side.LEFT) -> ModuleAlgebra:
    return ModuleAlgebra(trivial_module(h, b.space, side), b, _bi(h))


# --------------------------------------------------------------------------
# side flips


def _twisted_algebra(a: BraidedAlgebra, k: int) -> BraidedAlgebra:
    b = a.braiding.inverse() if k < 0 else a.braiding
    with unchecked():
        return BraidedAlgebra(b, a.mult @ a.braiding.power(k), a.unit)


def _twisted_coalgebra(c: BraidedCoalgebra, n: int) -> BraidedCoalgebra:
    b = c.braiding.inverse() if n < 0 else c.braiding
    with unchecked():
        return BraidedCoalgebra(b, c.braiding.power(n) @ c.comult, c.counit)


def _twisted_bialgebra(h: BraidedBialgebra, k: int, n: int, inverse: bool) -> BraidedBialgebra:
    b = h.braiding
    psi, psi_inv = (b.psi_inv, b.psi) if inverse else (b.psi, b.psi_inv)
    return BraidedBialgebra.build(psi, h.mult @ b.power(k), h.unit, b.power(n) @ h.comult,
                                  h.counit, psi_inv, checked=False)


def _inverse_cross(x: CrossBraiding, left: Braiding | None, right: Braiding | None,
                   provenance=Provenance.INVERSE) -> CrossBraiding:
    with unchecked():
        return CrossBraiding(x.right, x.left, x.psi_inv, x.psi, provenance, left, right)


def flip_side(s):
    """Turn a left (co)module into a right one and vice versa.

    ``nu_R° = nu_L o Psi_HV^-1`` over ``m_-1`` and ``Psi^-1``; the other three
    cases are analogous.  (Co)module algebras come back as (co)module
    algebras over H^(-1,0) (modules) or H^(0,-1) (comodules).
    """
    if isinstance(s, ModuleAlgebra):
        m = flip_side(s.module)
        return ModuleAlgebra(m, s.carrier_algebra, _twisted_bialgebra(s.bialgebra, -1, 0, True))
    if isinstance(s, ComoduleAlgebra):
        c = flip_side(s.comodule)
        return ComoduleAlgebra(c, s.carrier_algebra,
                               _twisted_bialgebra(s.bialgebra, 0, -1, True))
    if isinstance(s, BraidedModule):
        alg = _twisted_algebra(s.algebra, -1)
        inv = alg.braiding
        if s.side is Side.LEFT:
            x = _inverse_cross(s.cross, None, inv)
            return BraidedModule(alg, s.carrier, s.action @ s.cross.psi_inv, Side.RIGHT, x)
        x = _inverse_cross(s.cross, inv, None)
        return BraidedModule(alg, s.carrier, s.action @ s.cross.psi_inv, Side.LEFT, x)
    coalg = _twisted_coalgebra(s.coalgebra, -1)
    inv = coalg.braiding
    if s.side is Side.RIGHT:
        x = _inverse_cross(s.cross, None, inv)
        return BraidedComodule(coalg, s.carrier, s.cross.psi_inv @ s.coaction, Side.LEFT, x)
    x = _inverse_cross(s.cross, inv, None)
    return BraidedComodule(coalg, s.carrier, s.cross.psi_inv @ s.coaction, Side.RIGHT, x)


def antipode_flip(s, hopf: BraidedHopf):
    """Change sides through the inverse antipode, keeping the product.

    A left H-module algebra becomes a right H^(0,-1)-module algebra through
    ``nu_L o Psi_HV^-1 o (id (x) S^-1)``, a right comodule algebra a left
    H^(-1,0)-comodule algebra through ``(S^-1 (x) id) o Psi_HV^-1 o rho_R``,
    and so on.
    """
    if hopf.antipode_inv is None:
        raise AntipodeNotInvertible("the side flip needs S^-1")
    s_inv = hopf.antipode_inv
    h = hopf.bialgebra
    inv = h.braiding.inverse()
    inner = s.module if isinstance(s, ModuleAlgebra) else \
        s.comodule if isinstance(s, ComoduleAlgebra) else s
    v = inner.carrier
    if isinstance(inner, BraidedModule):
        target = _twisted_bialgebra(h, 0, -1, True)
        if inner.side is Side.LEFT:
            nu = inner.action @ inner.cross.psi_inv @ Kron(v, s_inv).materialize()
            out = BraidedModule(target.algebra, v, nu, Side.RIGHT,
                                _inverse_cross(inner.cross, None, inv))
        else:
            nu = inner.action @ inner.cross.psi_inv @ Kron(s_inv, v).materialize()
            out = BraidedModule(target.algebra, v, nu, Side.LEFT,
                                _inverse_cross(inner.cross, inv, None))
        if isinstance(s, ModuleAlgebra):
            return ModuleAlgebra(out, s.carrier_algebra, target)
        return out
    target = _twisted_bialgebra(h, -1, 0, True)
    if inner.side is Side.RIGHT:
        rho = Kron(s_inv, v).materialize() @ inner.cross.psi_inv @ inner.coaction
        out = BraidedComodule(target.coalgebra, v, rho, Side.LEFT,
                              _inverse_cross(inner.cross, None, inv))
    else:
        rho = Kron(v, s_inv).materialize() @ inner.cross.psi_inv @ inner.coaction
        out = BraidedComodule(target.coalgebra, v, rho, Side.RIGHT,
                              _inverse_cross(inner.cross, inv, None))
    if isinstance(s, ComoduleAlgebra):
        return ComoduleAlgebra(out, s.carrier_algebra, target)
    return out


# --------------------------------------------------------------------------
# carrier braidings on duals


def carrier_circ_left(psi_hv_inv: LinMap, u_braiding: Braiding) -> CrossBraiding:
    """Psi°_UV : U (x) V -> V (x) U from ``Psi_HV^-1 : V (x) H -> H (x) V``.

    ``Psi°_UV(f (x) v)(e (x) a) = <<e (x) f, Psi_HV^-1(v (x) a)>>``.
    """
    v, h = psi_hv_inv.domain.factors
    u, w = h.dual(), v.dual()
    # f, v, e, a  ->  e, f, v, a  ->  e, f, Psi^-1(v (x) a)
    f = Chain(nested_pairing((w, u), (h, v)), Kron(w, u, psi_hv_inv),
              permutation((u, v, w, h), (2, 0, 1, 3)))
    psi = curry(f, (u, v), (v, u))
    return CrossBraiding(u, v, psi, lin_invert(psi), Provenance.INDUCED_DUAL_CIRC, u_braiding)


def carrier_circ_right(psi_vh_inv: LinMap, u_braiding: Braiding) -> CrossBraiding:
    """Psi°_VU : V (x) U -> U (x) V from ``Psi_VH^-1 : H (x) V -> V (x) H``.

    ``Psi°_VU(v (x) f)(a (x) e) = <<f (x) e, Psi_VH^-1(a (x) v)>>``.
    """
    h, v = psi_vh_inv.domain.factors
    u, w = h.dual(), v.dual()
    # v, f, a, e  ->  f, e, a, v
    f = Chain(nested_pairing((u, w), (v, h)), Kron(u, w, psi_vh_inv),
              permutation((v, u, h, w), (1, 3, 2, 0)))
    psi = curry(f, (v, u), (u, v))
    return CrossBraiding(v, u, psi, lin_invert(psi), Provenance.INDUCED_DUAL_CIRC,
                         None, u_braiding)


def bullet_from_dual_carrier(psi_uv_circ: CrossBraiding, w_space: Space) -> LinMap:
    """Psi•_WU from Psi°_UV: ``(e (x) f)(a (x) v) = <<a (x) e, Psi°_UV(f (x) v)>>``."""
    u, v = psi_uv_circ.left, psi_uv_circ.right
    h, w = u.dual(), w_space
    # e, f, a, v  ->  a, e, f, v
    f = Chain(nested_pairing((h, w), (v, u)), Kron(h, w, psi_uv_circ.psi),
              permutation((w, u, h, v), (2, 0, 1, 3)))
    return curry(f, (w, u), (u, w))


def carrier_circ_dual(psi_hv_inv: LinMap) -> LinMap:
    """Psi°_HW : H (x) W -> W (x) H from ``Psi_HV^-1``.

    ``Psi°_HW(a (x) e)(v (x) f) = <<e (x) f, Psi_HV^-1(v (x) a)>>``.
    """
    v, h = psi_hv_inv.domain.factors
    u, w = h.dual(), v.dual()
    # a, e, v, f  ->  e, f, v, a
    f = Chain(nested_pairing((w, u), (h, v)), Kron(w, u, psi_hv_inv),
              permutation((h, w, v, u), (1, 3, 2, 0)))
    return curry(f, (h, w), (w, h))


def bullet_from_primal(psi_hw_circ: LinMap, u: Space) -> LinMap:
    """Psi•_WU from Psi°_HW: ``(e (x) f)(a (x) v) = <<f (x) v, Psi°_HW(a (x) e)>>``."""
    h, w = psi_hw_circ.domain.factors
    v = w.dual()
    # e, f, a, v  ->  f, v, a, e
    f = Chain(nested_pairing((u, v), (w, h)), Kron(u, v, psi_hw_circ),
              permutation((w, u, h, v), (1, 3, 2, 0)))
    return curry(f, (w, u), (u, w))


# --------------------------------------------------------------------------
# comodules to modules


def _dual_algebra_of(coalg: BraidedCoalgebra, u: BraidedAlgebra | None) -> BraidedAlgebra:
    return u if u is not None else dual_algebra(coalg)


def comodule_to_module(c, u: BraidedAlgebra | BraidedBialgebra | None = None):
    """A right H-comodule becomes a left U-module (and a left one a right U-module).

    ``nu_L(f (x) v) = <f, v_(1)'1> v_(0)'2`` with ``Psi_HV^-1`` applied to
    ``rho_R(v)``; the carrier braiding is Psi°_UV.  For a comodule algebra
    ``u`` should be the dual bialgebra, and a module algebra is returned.
    """
    comod = c.comodule if isinstance(c, ComoduleAlgebra) else c
    ub = u if isinstance(u, BraidedBialgebra) else None
    alg = u.algebra if ub is not None else _dual_algebra_of(comod.coalgebra, u)
    h, v = comod.coalgebra.space, comod.carrier
    us = alg.space
    twisted = comod.cross.psi_inv @ comod.coaction
    if comod.side is Side.RIGHT:
        nu = Chain(Kron(_pair(us, h), v), Kron(us, twisted)).materialize().relabel((us, v), v)
        x = carrier_circ_left(comod.cross.psi_inv, alg.braiding)
        out = BraidedModule(alg, v, nu, Side.LEFT, x)
    else:
        nu = Chain(Kron(v, _pair(us, h)), Kron(v, permutation((h, us), (1, 0))),
                   Kron(twisted, us)).materialize().relabel((v, us), v)
        x = carrier_circ_right(comod.cross.psi_inv, alg.braiding)
        out = BraidedModule(alg, v, nu, Side.RIGHT, x)
    if isinstance(c, ComoduleAlgebra) and ub is not None:
        return ModuleAlgebra(out, c.carrier_algebra, ub)
    return out


def natural_action(h, u: BraidedBialgebra | None = None) -> Tuple[ModuleAlgebra, ModuleAlgebra]:
    """The left and right U-actions on H through its own coproduct."""
    from .duality import dual_bialgebra
    h = _bi(h)
    if u is None:
        u, _ = dual_bialgebra(h)
    left = comodule_to_module(self_comodule_algebra(h, Side.RIGHT), u)
    right = comodule_to_module(self_comodule_algebra(h, Side.LEFT), u)
    return left, right


def check_natural_action(h, left: ModuleAlgebra, right: ModuleAlgebra,
                         u: BraidedBialgebra) -> CheckReport:
    """``f(g > a) = (f g)(a)`` and ``g(a < f) = (f g)(a)`` on all basis triples."""
    h = _bi(h)
    hs, us = h.space, u.space
    ev = evaluation(us, hs)
    report = CheckReport("natural actions")
    check(report, "glaa", Chain(ev, Kron(us, left.module.action)), Chain(ev, Kron(u.mult, hs)))
    # g (x) a (x) f  ->  f (x) g (x) a
    to_fga = permutation((us, hs, us), (2, 0, 1))
    check(report, "graa", Chain(ev, Kron(us, right.module.action)),
          Chain(ev, Kron(u.mult, hs), to_fga))
    return report


# --------------------------------------------------------------------------
# modules to comodules


def _dual_coalgebra_of(alg: BraidedAlgebra, u: BraidedCoalgebra | None) -> BraidedCoalgebra:
    return u if u is not None else dual_coalgebra(alg)


def module_to_comodule(m, u: BraidedCoalgebra | BraidedBialgebra | None = None):
    """A left H-module becomes a right comodule over (U, Psi_UU^-2 o Delta).

    ``rho_R(v)(e (x) a) = e(a'1 > v'2)`` with ``Psi_HV^-1`` applied to
    ``v (x) a``; the carrier braiding is Psi°_UV.  A right module gives the
    left coaction ``rho_L(v)(a (x) e) = e(v'1 < a'2)`` with Psi°_VU.  Module
    algebras (with ``u`` the dual bialgebra) come back as comodule algebras
    over U^(2,-2).
    """
    mod = m.module if isinstance(m, ModuleAlgebra) else m
    ub = u if isinstance(u, BraidedBialgebra) else None
    base = u.coalgebra if ub is not None else _dual_coalgebra_of(mod.algebra, u)
    coalg = _twisted_coalgebra_keep(base, -2)
    h, v = mod.algebra.space, mod.carrier
    us, w = coalg.space, v.dual()
    twisted = mod.action @ mod.cross.psi_inv
    if mod.side is Side.LEFT:
        f = Chain(_pair(w, v), Kron(w, twisted), permutation((v, w, h), (1, 0, 2)))
        rho = curry(f, v, (v, us))
        x = carrier_circ_left(mod.cross.psi_inv, coalg.braiding)
        out = BraidedComodule(coalg, v, rho, Side.RIGHT, x)
    else:
        f = Chain(_pair(w, v), Kron(w, twisted), permutation((v, h, w), (2, 1, 0)))
        rho = curry(f, v, (us, v))
        x = carrier_circ_right(mod.cross.psi_inv, coalg.braiding)
        out = BraidedComodule(coalg, v, rho, Side.LEFT, x)
    if isinstance(m, ModuleAlgebra) and ub is not None:
        return ComoduleAlgebra(out, m.carrier_algebra, _twisted_bialgebra(ub, 2, -2, False))
    return out


def _twisted_coalgebra_keep(c: BraidedCoalgebra, n: int) -> BraidedCoalgebra:
    """``Psi^n o Delta`` with the braiding left as it is."""
    with unchecked():
        return BraidedCoalgebra(c.braiding, c.braiding.power(n) @ c.comult, c.counit)


# --------------------------------------------------------------------------
# round trips


def coact_one_shot(c: BraidedComodule, psi_uh_circ: CrossBraiding) -> LinMap:
    """``rho'(v)(e (x) f) = e(v_(0)) f'(v_(1)')`` with ``Psi°_UH^-1(v_(1) (x) f)``."""
    h, v = c.coalgebra.space, c.carrier
    u, w = h.dual(), v.dual()
    # v, e, f  ->  e, v_(0), v_(1), f  ->  e(v_(0)) <Psi°_UH^-1(v_(1) (x) f)>
    f = Chain(Kron(_pair(w, v), _pair(u, h)), Kron(w, v, psi_uh_circ.psi_inv),
              Kron(w, c.coaction, u), permutation((v, w, u), (1, 0, 2)))
    return curry(f, v, (v, h))


def double_circ_cross(psi_uv_circ: CrossBraiding, h_braiding: Braiding) -> CrossBraiding:
    """Psi°°_HV : H (x) V -> V (x) H, ``(a (x) v)(e (x) f) = <<e (x) a, Psi°_UV^-1(v (x) f)>>``."""
    u, v = psi_uv_circ.left, psi_uv_circ.right
    h, w = u.dual(), v.dual()
    # a, v, e, f  ->  e, a, v, f
    f = Chain(nested_pairing((w, h), (u, v)), Kron(w, h, psi_uv_circ.psi_inv),
              permutation((h, v, w, u), (2, 0, 1, 3)))
    psi = curry(f, (h, v), (v, h))
    return CrossBraiding(h, v, psi, lin_invert(psi), Provenance.DOUBLE_CIRC, h_braiding)


def double_circ_dual(psi_hv_cc: CrossBraiding) -> LinMap:
    """Psi°°_WH : W (x) H -> H (x) W, ``(e (x) a)(f (x) v) = <<f (x) e, Psi°°_HV(a (x) v)>>``."""
    h, v = psi_hv_cc.left, psi_hv_cc.right
    u, w = h.dual(), v.dual()
    # e, a, f, v  ->  f, e, a, v
    f = Chain(nested_pairing((u, w), (v, h)), Kron(u, w, psi_hv_cc.psi),
              permutation((w, h, u, v), (2, 0, 1, 3)))
    return curry(f, (w, h), (h, w))


def act_one_shot(m: BraidedModule, psi_wh_cc: LinMap) -> LinMap:
    """One-shot action ``nu'(a (x) v)(e)`` (id ``actUH``) through ``Psi°°_WH``, ``Psi_HV^-1`` and ``nu_L``."""
    h, v = m.algebra.space, m.carrier
    w = v.dual()
    # a, v, e  ->  v, e, a  ->  v, a', e'  ->  a'', v'', e'  ->  nu, e'  ->  K
    f = Chain(_pair(w, v), permutation((v, w), (1, 0)), Kron(m.action, w),
              Kron(m.cross.psi_inv, w), Kron(v, psi_wh_cc), permutation((h, v, w), (1, 2, 0)))
    return curry(f, (h, v), v)


@dataclass
class RoundTrip:
    """Both legs of a round trip, the checks run on them, and whether the
    final (co)action coincides with the starting one."""

    first: object
    second: object
    reproduced: bool = False
    report: CheckReport = field(default_factory=lambda: CheckReport("round trip"))


def duality_round_trip(start, h: BraidedBialgebra | None = None) -> RoundTrip:
    """Comodule to U-module to comodule of U' = H, or module to comodule to module.

    A right comodule comes back as a right comodule over ``(H, Psi^-2 Delta)``
    with braiding Psi°°_HV; it is compared with the one-shot forms
    ``coactUH`` and ``PHVcc``.
    A left module comes back over ``m o Psi^-2`` and is compared with
    ``actUH`` and ``PWHcc``.  Both legs are run through the checkers;
    ``reproduced`` records whether the input came back unchanged.
    """
    from .duality import induce_dual_braidings
    if isinstance(start, (BraidedComodule, ComoduleAlgebra)):
        c = start.comodule if isinstance(start, ComoduleAlgebra) else start
        if c.side is not Side.RIGHT:
            raise ValueError("round trips start from right comodules or left modules")
        base = c.coalgebra
        mod = comodule_to_module(c)
        back = module_to_comodule(mod)
        rt = RoundTrip(mod, back)
        r = rt.report
        r.extend(check_module(mod), "U-module")
        r.extend(check_comodule(back), "comodule of the double dual")
        ib = induce_dual_braidings(base.braiding)
        check(r, "coactUH", back.coaction, coact_one_shot(c, ib.psi_UH_circ))
        hb = base.braiding
        cc = double_circ_cross(mod.cross, hb)
        check(r, "PHVcc", back.cross.psi, cc.psi)
        check(r, "roundtrip", back.coalgebra.comult, hb.power(-2) @ base.comult, "Delta_-2")
        rt.reproduced = back.coaction == c.coaction
        return rt
    m = start.module if isinstance(start, ModuleAlgebra) else start
    if m.side is not Side.LEFT:
        raise ValueError("round trips start from right comodules or left modules")
    comod = module_to_comodule(m)
    back = comodule_to_module(comod)
    rt = RoundTrip(comod, back)
    r = rt.report
    r.extend(check_comodule(comod), "U-comodule")
    r.extend(check_module(back), "module of the double dual")
    hb = m.algebra.braiding
    cc = double_circ_cross(comod.cross, hb)
    check(r, "PHVcc", back.cross.psi, cc.psi)
    check(r, "actUH", back.action, act_one_shot(m, double_circ_dual(cc)))
    check(r, "roundtrip", back.algebra.mult, m.algebra.mult @ hb.power(-2), "m_-2")
    rt.reproduced = back.action == m.action
    return rt


# --------------------------------------------------------------------------
# dualizing onto the dual carrier


def bullet_braidings(psi_hv_inv: LinMap, u_braiding: Braiding) -> Tuple[LinMap, LinMap]:
    """Psi•_WU built both ways (ids ``VUb`` and ``WHb``)."""
    v, h = psi_hv_inv.domain.factors
    uv = carrier_circ_left(psi_hv_inv, u_braiding)
    first = bullet_from_dual_carrier(uv, v.dual())
    second = bullet_from_primal(carrier_circ_dual(psi_hv_inv), h.dual())
    return first, second


def dualize_coaction(c: BraidedComodule, u: BraidedAlgebra | None = None) -> BraidedModule:
    """A right H-comodule V gives a right U-module on W = V'.

    ``nu_R(e (x) f)(v) = f(v_(1)'1) e(v_(0)'2)``, i.e. ``e(f > v)``.  U
    carries the product ``us`` with braiding Psi_UU^-1, and the carrier
    braiding is Psi•_WU.
    """
    if c.side is not Side.RIGHT:
        raise ValueError("dualize_coaction expects a right comodule")
    left = comodule_to_module(c, u)
    alg0 = left.algebra
    inv = alg0.braiding.inverse()
    with unchecked():
        alg = BraidedAlgebra(inv, alg0.mult, alg0.unit)
    v, us = c.carrier, alg.space
    w = v.dual()
    f = Chain(_pair(w, v), Kron(w, left.action))
    nu = curry(f, (w, us), w)
    bullet, _ = bullet_braidings(c.cross.psi_inv, alg0.braiding)
    x = CrossBraiding(w, us, bullet, lin_invert(bullet), Provenance.DOUBLE_DUAL_BULLET,
                      None, inv)
    return BraidedModule(alg, w, nu, Side.RIGHT, x)


def dualize_action(m: BraidedModule, u: BraidedCoalgebra | None = None) -> BraidedComodule:
    """A left H-module V gives a left comodule on W = V' over (U, Delta°, eps).

    ``rho_L(e)(a (x) v) = e(a'1 > v'2)``.  U carries the coproduct of
    ``cuD`` with braiding Psi_UU^-1; the carrier braiding is Psi•_WU.
    """
    if m.side is not Side.LEFT:
        raise ValueError("dualize_action expects a left module")
    from .duality import CIRC
    base = u if u is not None else dual_coalgebra(m.algebra, CIRC)
    inv = base.braiding.inverse()
    with unchecked():
        coalg = BraidedCoalgebra(inv, base.comult, base.counit)
    h, v = m.algebra.space, m.carrier
    us, w = coalg.space, v.dual()
    twisted = m.action @ m.cross.psi_inv
    f = Chain(_pair(w, v), Kron(w, twisted), permutation((w, h, v), (0, 2, 1)))
    rho = curry(f, w, (us, w))
    bullet, _ = bullet_braidings(m.cross.psi_inv, base.braiding)
    x = CrossBraiding(w, us, bullet, lin_invert(bullet), Provenance.DOUBLE_DUAL_BULLET,
                      None, inv)
    return BraidedComodule(coalg, w, rho, Side.LEFT, x)


def check_adjointness(original, dualized) -> CheckReport:
    """Pairing identities tying a dualized (co)action to the conversion theorems.

    Comodule V: ``(e < f)(v) = e(f > v)`` against :func:`comodule_to_module`.
    Module V: ``rho_L(e)(a (x) v) = rho_R(v)(e (x) a)`` against
    :func:`module_to_comodule`.
    """
    report = CheckReport("adjointness")
    if isinstance(original, BraidedComodule):
        left = comodule_to_module(original)
        v, w, us = original.carrier, dualized.carrier, dualized.algebra.space
        lhs = Chain(_pair(w, v), Kron(dualized.action, v))
        rhs = Chain(_pair(w, v), Kron(w, left.action))
        check(report, "adj", lhs, rhs, "vRWU")
        return report
    comod = module_to_comodule(original)
    h, v = original.algebra.space, original.carrier
    w, us = dualized.carrier, dualized.coalgebra.space
    # e, a, v: rho_L(e) read on a (x) v
    lhs = Chain(contract((us, w, h, v), [(0, 2), (1, 3)]), Kron(dualized.coaction, h, v))
    # rho_R(v) read on e (x) a
    rhs = Chain(contract((v, comod.coalgebra.space, w, h), [(2, 0), (1, 3)]),
                Kron(comod.coaction, w, h), permutation((w, h, v), (2, 0, 1)))
    check(report, "adj", lhs, rhs, "rLW")
    return report


def regular_coaction_formula(h) -> LinMap:
    """``rho_R(a) = sum_j e_j'1 a'2 (x) e^j`` for the regular module of H."""
    h = _bi(h)
    hs = h.space
    u = hs.dual()
    n = hs.dim
    mpsi = h.mult @ h.psi_inv
    coeffs = {}
    for a in range(n):
        for j in range(n):
            for k, c in mpsi.column(a * n + j).items():
                coeffs[(k * n + j, a)] = c
    return LinMap(hs, (hs, u), coeffs)
