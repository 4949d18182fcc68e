"""Duals of braided (co)algebras and bialgebras.

U is always the full dual H' with the dual basis e^j of the basis e_j of H.
Two pairings of tensors are used throughout:

* the nested pairing ``<<f (x) g, a (x) b>> = g(a) f(b)``, which pairs
  adjacent factors from the inside out;
* the order-preserving embedding ``(f (x) g)(a (x) b) = f(a) g(b)``, used to
  read an element of U (x) U as a functional on H (x) H.

The structure maps on U are produced from dual-basis formulas that
reindex the matrices of Psi, m and Delta.  :mod:`braidual.oracles`
rebuilds the same maps by solving their defining pairing identities and
the tests compare the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence, Tuple

from .linalg import (K, ONE, Chain, Identity, Kron, LinMap, Space, TensorShape, ZERO,
                     as_shape, compose, identity, lin_transpose, permutation, rank)
from .report import CheckReport, Entry, Verdict
from .structures import (BraidedAlgebra, BraidedBialgebra, BraidedCoalgebra, BraidedHopf,
                         Braiding, CrossBraiding, Provenance, Side, check,
                         check_comult_compat, check_hexagons, check_mult_compat,
                         check_yang_baxter, solve_antipode, unchecked)
from .twist import WhichBraiding, twist


# --------------------------------------------------------------------------
# pairings


def contract(shape, pairs: Sequence[Tuple[int, int]]) -> LinMap:
    """The functional on ``shape`` multiplying ``<dual factor p, primal factor q>``.

    Every factor must appear in exactly one pair; each pair is given as
    ``(p, q)`` with ``shape[p]`` the dual of ``shape[q]``.
    """
    shape = as_shape(shape)
    used = sorted(i for pair in pairs for i in pair)
    if used != list(range(len(shape))):
        raise ValueError("every factor must be contracted exactly once")
    for p, q in pairs:
        if shape.factors[p] != shape.factors[q].dual():
            raise ValueError(f"factor {p} is not dual to factor {q}")
    coeffs = {}
    for choice in product(*(range(shape.factors[p].dim) for p, _ in pairs)):
        parts = [0] * len(shape)
        for (p, q), i in zip(pairs, choice):
            parts[p] = parts[q] = i
        coeffs[(0, shape.join(parts))] = ONE
    return LinMap(shape, K, coeffs)


def evaluation(u: Space, h: Space) -> LinMap:
    """``ev : U (x) H -> K``, ``e^i (x) e_j -> delta_ij``."""
    return contract((u, h), [(0, 1)])


def nested_pairing(us: Sequence[Space], hs: Sequence[Space]) -> LinMap:
    """``<<u_n .. u_1, h_1 .. h_n>>``: innermost factors pair first."""
    n = len(us)
    if len(hs) != n:
        raise ValueError("need as many dual factors as primal factors")
    return contract(tuple(us) + tuple(hs), [(n - 1 - k, n + k) for k in range(n)])


def embedded_pairing(us: Sequence[Space], hs: Sequence[Space]) -> LinMap:
    """``(u_1 .. u_n)(h_1 .. h_n) = u_1(h_1) ... u_n(h_n)``."""
    n = len(us)
    return contract(tuple(us) + tuple(hs), [(k, n + k) for k in range(n)])


@dataclass(frozen=True)
class DualSpace:
    primal: Space
    space: Space
    pairing_gram: LinMap

    @classmethod
    def of(cls, h: Space) -> "DualSpace":
        u = h.dual()
        return cls(h, u, identity(u).relabel(u, u))


@dataclass(frozen=True)
class DualPairing:
    left: Space
    right: Space
    eval: LinMap
    upsilon: CrossBraiding

    @property
    def gram(self) -> LinMap:
        """The pairing as a matrix ``H -> U'`` (row j, column i = <e^j, e_i>)."""
        u, h = self.left, self.right
        cols = {}
        for i in range(h.dim):
            col = {}
            for j in range(u.dim):
                c = self.eval.column(j * h.dim + i).get(0, ZERO)
                if c:
                    col[j] = c
            cols[i] = col
        return LinMap._trusted(h, u.dual(), cols)


# --------------------------------------------------------------------------
# induced braidings


def _reindex(psi: LinMap, dom, cod, place) -> LinMap:
    """Build ``out[place(k, l, i, j)] = psi[(k, l), (i, j)]``.

    ``place`` returns ``(output_pair, input_pair)`` as index pairs into
    ``cod`` and ``dom``.
    """
    dom, cod = as_shape(dom), as_shape(cod)
    src = psi.domain
    coeffs = {}
    for col in range(src.size):
        i, j = src.split(col)
        for row, c in psi.column(col).items():
            k, l = psi.codomain.split(row)
            out, inp = place(k, l, i, j)
            coeffs[(cod.join(out), dom.join(inp))] = c
    return LinMap(dom, cod, coeffs)


def dual_braiding_matrix(psi: LinMap) -> LinMap:
    """Psi_UU: ``Psi_UU(e^a (x) e^b) = sum_ij Psi[(b, a), (i, j)] e^j (x) e^i``."""
    h = psi.domain.factors[0]
    u = h.dual()
    return _reindex(psi, (u, u), (u, u), lambda k, l, i, j: ((j, i), (l, k)))


def dual_primal_matrix(psi: LinMap) -> LinMap:
    """Psi_UH (or Psi_UH° from Psi^-1): ``e^b (x) e_i -> sum Psi[(b, a), (i, j)] e_a (x) e^j``."""
    h = psi.domain.factors[0]
    u = h.dual()
    return _reindex(psi, (u, h), (h, u), lambda k, l, i, j: ((l, j), (k, i)))


def primal_dual_matrix(psi: LinMap) -> LinMap:
    """Psi_HU (or Psi_HU° from Psi^-1): ``e_j (x) e^a -> sum Psi[(b, a), (i, j)] e^i (x) e_b``."""
    h = psi.domain.factors[0]
    u = h.dual()
    return _reindex(psi, (h, u), (u, h), lambda k, l, i, j: ((i, k), (j, l)))


@dataclass(frozen=True)
class InducedBraidings:
    psi_UU: Braiding
    psi_UH: CrossBraiding
    psi_UH_circ: CrossBraiding
    psi_HU: CrossBraiding
    psi_HU_circ: CrossBraiding


def induce_dual_braidings(b: Braiding) -> InducedBraidings:
    """Psi_UU, Psi_UH, Psi_UH°, Psi_HU and Psi_HU° on the full dual.

    Each matrix is a reindexing of Psi or Psi^-1, so it is invertible with
    the correspondingly reindexed inverse.  Constructing the braidings runs
    the Yang-Baxter and hexagon checks.
    """
    uu = Braiding(b.space.dual(), dual_braiding_matrix(b.psi), dual_braiding_matrix(b.psi_inv))
    induced = dict(
        psi_UH=CrossBraiding(uu.space, b.space, dual_primal_matrix(b.psi),
                             primal_dual_matrix(b.psi_inv), Provenance.INDUCED_DUAL, uu, b),
        psi_UH_circ=CrossBraiding(uu.space, b.space, dual_primal_matrix(b.psi_inv),
                                  primal_dual_matrix(b.psi), Provenance.INDUCED_DUAL_CIRC, uu, b),
        psi_HU=CrossBraiding(b.space, uu.space, primal_dual_matrix(b.psi),
                             dual_primal_matrix(b.psi_inv), Provenance.INDUCED_DUAL, b, uu),
        psi_HU_circ=CrossBraiding(b.space, uu.space, primal_dual_matrix(b.psi_inv),
                                  dual_primal_matrix(b.psi), Provenance.INDUCED_DUAL_CIRC, b, uu),
    )
    return InducedBraidings(uu, **induced)


def check_induced(ib: InducedBraidings, b: Braiding) -> CheckReport:
    """Defining pairing identities of every induced braiding."""
    h, u = b.space, ib.psi_UU.space
    report = CheckReport("induced braidings")
    swap_hh = permutation((h, h), (1, 0))
    # Psi_UU(f (x) g)(b (x) a) = <<f (x) g, Psi(a (x) b)>>
    for name, eq, uu, p in (("Psi_UU", "phh", ib.psi_UU.psi, b.psi),
                            ("Psi_UU^-1", "cphh", ib.psi_UU.psi_inv, b.psi_inv)):
        lhs = Chain(embedded_pairing((u, u), (h, h)), Kron(uu, h, h))
        rhs = Chain(nested_pairing((u, u), (h, h)), Kron(u, u, p), Kron(u, u, swap_hh))
        check(report, eq, lhs, rhs, name)
    # Psi_UH(g (x) a)(f (x) b) = <<f (x) g, Psi(a (x) b)>>, read on H (x) U
    to_fgab = permutation((u, h, u, h), (2, 0, 1, 3))
    for name, eq, x, p in (("Psi_UH", "phh", ib.psi_UH, b.psi),
                           ("Psi_UH°", "cphh", ib.psi_UH_circ, b.psi_inv)):
        lhs = Chain(contract((h, u, u, h), [(2, 0), (1, 3)]), Kron(x.psi, u, h))
        rhs = Chain(nested_pairing((u, u), (h, h)), Kron(u, u, p), to_fgab)
        check(report, eq, lhs, rhs, name)
    # Psi_HU(b (x) f)(a (x) g) = <<f (x) g, Psi(a (x) b)>>, read on U (x) H
    to_fgab = permutation((h, u, h, u), (1, 3, 2, 0))
    for name, eq, x, p in (("Psi_HU", "phh", ib.psi_HU, b.psi),
                           ("Psi_HU°", "cphh", ib.psi_HU_circ, b.psi_inv)):
        lhs = Chain(contract((u, h, h, u), [(0, 2), (3, 1)]), Kron(x.psi, h, u))
        rhs = Chain(nested_pairing((u, u), (h, h)), Kron(u, u, p), to_fgab)
        check(report, eq, lhs, rhs, name)
    report.extend(check_yang_baxter(ib.psi_UU.psi), "Psi_UU")
    for name in ("psi_UH", "psi_UH_circ", "psi_HU", "psi_HU_circ"):
        x = getattr(ib, name)
        report.extend(check_hexagons(x, Side.LEFT), name)
        report.extend(check_hexagons(x, Side.RIGHT), name)
    return report


# --------------------------------------------------------------------------
# dual algebras and coalgebras


STAR = "ust"          # f * g (a) = <<f (x) g, Psi Delta(a)>>
UNDERLINE_M = "us"    # m(f (x) g)(a) = <<f (x) g, Psi^-1 Delta(a)>>
UNDERLINE_DELTA = "brcop"   # Delta(f)(a (x) b) = f(m Psi(a (x) b))
CIRC = "cuD"                # Delta°(f)(a (x) b) = f(m Psi^-1(a (x) b))


def dual_product_matrix(x: LinMap) -> LinMap:
    """From ``x = Psi^{+-1} o Delta``: ``e^a (x) e^b -> sum_c x[(b, a), c] e^c``."""
    h = x.domain.factors[0]
    u = h.dual()
    shape = x.codomain
    coeffs = {}
    for c in range(h.dim):
        for row, v in x.column(c).items():
            b_, a_ = shape.split(row)
            coeffs[(c, a_ * h.dim + b_)] = v
    return LinMap((u, u), u, coeffs)


def dual_coproduct_matrix(y: LinMap) -> LinMap:
    """From ``y = m o Psi^{+-1}``: ``e^a -> sum y[a, (d, g)] e^g (x) e^d``."""
    h = y.codomain.factors[0]
    u = h.dual()
    coeffs = {}
    for col in range(y.domain.size):
        d_, g_ = y.domain.split(col)
        for a, v in y.column(col).items():
            coeffs[(g_ * h.dim + d_, a)] = v
    return LinMap(u, (u, u), coeffs)


def _counit_as_unit(eps: LinMap) -> LinMap:
    u = eps.domain.factors[0].dual()
    return LinMap(K, u, {(a, 0): c for (_, a), c in eps.coeffs.items()})


def _unit_as_counit(unit: LinMap) -> LinMap:
    u = unit.codomain.factors[0].dual()
    return LinMap(u, K, {(0, a): c for (a, _), c in unit.coeffs.items()})


def dual_algebra(h: BraidedCoalgebra, variant: str = UNDERLINE_M) -> BraidedAlgebra:
    """The product on U built from Psi^-1 o Delta (``"us"``) or Psi o Delta (``"ust"``)."""
    b = h.braiding
    twist_map = b.psi_inv if variant == UNDERLINE_M else b.psi
    if variant not in (UNDERLINE_M, STAR):
        raise ValueError(f"unknown product variant {variant!r}")
    uu = induce_dual_braidings(b).psi_UU
    return BraidedAlgebra(uu, dual_product_matrix(twist_map @ h.comult),
                          _counit_as_unit(h.counit))


def dual_coalgebra(h: BraidedAlgebra, variant: str = UNDERLINE_DELTA) -> BraidedCoalgebra:
    """The coproduct on U built from m o Psi (``"brcop"``) or m o Psi^-1 (``"cuD"``)."""
    if variant not in (UNDERLINE_DELTA, CIRC):
        raise ValueError(f"unknown coproduct variant {variant!r}")
    b = h.braiding
    twist_map = b.psi if variant == UNDERLINE_DELTA else b.psi_inv
    uu = induce_dual_braidings(b).psi_UU
    return BraidedCoalgebra(uu, dual_coproduct_matrix(h.mult @ twist_map),
                            _unit_as_counit(h.unit))


def dual_bialgebra(h: BraidedBialgebra) -> Tuple[BraidedBialgebra, DualPairing]:
    """U = H' with the product ``us``, the coproduct ``brcop`` and
    braiding Psi_UU, together with its pairing (Upsilon = Psi_UH°)."""
    if isinstance(h, BraidedHopf):
        h = h.bialgebra
    ib = induce_dual_braidings(h.braiding)
    alg = dual_algebra(h.coalgebra, UNDERLINE_M)
    coalg = dual_coalgebra(h.algebra, UNDERLINE_DELTA)
    with unchecked():
        u = BraidedBialgebra(alg, coalg)
    report = u.verify()
    if not report.ok:
        from .errors import PrecheckFailed
        raise PrecheckFailed(report)
    pairing = DualPairing(u.space, h.space, evaluation(u.space, h.space), ib.psi_UH_circ)
    return u, pairing


def dual_hopf(h: BraidedHopf) -> BraidedHopf:
    """The dual Hopf algebra with antipode ``f -> f o S``."""
    u, _ = dual_bialgebra(h.bialgebra)
    s = lin_transpose(h.antipode)
    s_inv = lin_transpose(h.antipode_inv) if h.antipode_inv is not None else None
    return BraidedHopf(u, s, s_inv)


def verify_dual_pairing(p: DualPairing, u: BraidedBialgebra, h: BraidedBialgebra,
                        hopf: Tuple[LinMap, LinMap] | None = None) -> CheckReport:
    """Checks ``mD``, ``Dm``, ``1a``, non-degeneracy and the compatibilities of Upsilon.

    ``hopf`` optionally supplies the antipodes ``(S_U, S_H)`` for the
    Hopf pairing condition.
    """
    us, hs = u.space, h.space
    ev, ups = p.eval, p.upsilon
    report = CheckReport("dual pairing")
    pair2 = Kron(ev, ev)
    check(report, "mD", Chain(ev, Kron(u.mult, hs)).materialize(),
          _to_k(Chain(pair2, Kron(us, ups.psi, hs), Kron(us, us, h.comult))))
    check(report, "Dm", Chain(ev, Kron(us, h.mult)).materialize(),
          _to_k(Chain(pair2, Kron(us, ups.psi, hs), Kron(u.comult, hs, hs))))
    check(report, "1a", Chain(ev, Kron(u.unit, hs)).materialize().relabel(hs, K),
          h.counit, "<1, a> = eps(a)")
    check(report, "1a", Chain(ev, Kron(us, h.unit)).materialize().relabel(us, K),
          u.counit, "<f, 1> = eps(f)")
    if hopf is not None:
        s_u, s_h = hopf
        check(report, "Spair", Chain(ev, Kron(s_u, hs)), Chain(ev, Kron(us, s_h)))
    nondeg = rank(p.gram) == hs.dim == us.dim
    report.add(Entry("nondeg", Verdict.PASS if nondeg else Verdict.FAIL,
                     note=f"rank {rank(p.gram)} of {hs.dim}"))
    x = ups.with_braidings(u.braiding, h.braiding)
    report.extend(check_hexagons(x, Side.LEFT), "Upsilon")
    report.extend(check_hexagons(x, Side.RIGHT), "Upsilon")
    report.extend(check_mult_compat(x, Side.LEFT, u.algebra), "Upsilon")
    report.extend(check_mult_compat(x, Side.RIGHT, h.algebra), "Upsilon")
    report.extend(check_comult_compat(x, Side.LEFT, u.coalgebra), "Upsilon")
    report.extend(check_comult_compat(x, Side.RIGHT, h.coalgebra), "Upsilon")
    return report


def _to_k(op) -> LinMap:
    m = op.materialize()
    return m.relabel(m.domain, K)


def canonical_iota(pairing: DualPairing) -> LinMap:
    """``iota : H -> U'``, ``iota(a)(f) = <f, a>``."""
    return pairing.gram


def double_dual_iso(h) -> CheckReport:
    """Check that iota : H -> U' is an isomorphism onto the dual of the dual."""
    hopf = h if isinstance(h, BraidedHopf) else None
    h = h.bialgebra if hopf is not None else h
    u, p = dual_bialgebra(h)
    uu, _ = dual_bialgebra(u)
    iota = canonical_iota(p)
    s, t = h.space, uu.space
    report = CheckReport(f"double dual of {s.display_name}")
    report.record("propdual", rank(iota) == s.dim, "iota bijective")
    check(report, "propdual", Chain(iota, h.mult), Chain(uu.mult, Kron(iota, iota)), "m")
    check(report, "propdual", Chain(Kron(iota, iota), h.comult), Chain(uu.comult, iota), "Delta")
    check(report, "propdual", h.counit, Chain(uu.counit, iota), "eps")
    check(report, "propdual", Chain(iota, h.unit), uu.unit, "unit")
    check(report, "propdual", Chain(Kron(iota, iota), h.psi),
          Chain(uu.psi, Kron(iota, iota)), "Psi")
    if hopf is not None:
        s_uu = lin_transpose(lin_transpose(hopf.antipode))
        check(report, "propdual", Chain(iota, hopf.antipode), Chain(s_uu, iota), "S")
        report.record("propdual", solve_antipode(uu) == s_uu, "S from the double dual")
    return report


def twisted_dual_pairing(h: BraidedBialgebra, k_h: int, n_h: int, braiding_h: WhichBraiding,
                         k_u: int, n_u: int, braiding_u: WhichBraiding,
                         upsilon: str, bound: int = 8) -> CheckReport:
    """Pairing check between U^(k_u,n_u) and H^(k_h,n_h).

    Exponents on U are powers of Psi_UU applied to the product ``us``
    and the coproduct ``brcop``.
    """
    if isinstance(h, BraidedHopf):
        h = h.bialgebra
    u, p = dual_bialgebra(h)
    ib = induce_dual_braidings(h.braiding)
    x = ib.psi_UH_circ if upsilon == "circ" else ib.psi_UH
    th = twist(h, k_h, n_h, braiding_h, bound).as_bialgebra()
    tu = twist(u, k_u, n_u, braiding_u, bound).as_bialgebra()
    pairing = DualPairing(u.space, h.space, p.eval, x)
    return verify_dual_pairing(pairing, tu, th)


def dual_of_twist(h, n: int) -> CheckReport:
    """The two duality statements for the twist family.

    U^(-n,n) is paired with H^(n,-n) through Psi_UH°.  For the family
    H^(n-1,-n) under Psi^-1 the dual is rebuilt from Psi^-1, which gives
    U~ = U^(2,-2) (products ust and cuD) with braiding Psi_UU^-1.  Then
    U~^(-n,n-1) = U^(2-n,n-3) is paired with H^(n-1,-n) through Psi_UH.
    """
    if abs(n) > 4:
        from .errors import InvalidParameter
        raise InvalidParameter("|n| must be at most 4")
    report = CheckReport(f"duals of twists, n={n}")
    first = twisted_dual_pairing(h, n, -n, WhichBraiding.PSI, -n, n, WhichBraiding.PSI, "circ")
    second = twisted_dual_pairing(h, n - 1, -n, WhichBraiding.PSI_INV, 2 - n, n - 3,
                                  WhichBraiding.PSI_INV, "plain")
    for sub, clause in ((first, f"U^({-n},{n}) vs H^({n},{-n})"),
                        (second, f"U~^({-n},{n - 1}) vs H^({n - 1},{-n})")):
        report.extend(sub, clause)
        report.record("Pdual", sub.ok, clause)
    return report
