from fractions import Fraction

import pytest

from braidual.catalog import q_binomial
from braidual.duality import (CIRC, STAR, check_induced, contract, double_dual_iso, dual_algebra,
                              dual_bialgebra, dual_coalgebra, dual_hopf, dual_of_twist,
                              evaluation, induce_dual_braidings, nested_pairing,
                              verify_dual_pairing)
from braidual.errors import InvalidParameter
from braidual.linalg import K, Kron, LinMap, Space, compose, lin_transpose, permutation
from braidual.report import Verdict
from braidual.structures import unchecked

from conftest import FLAT, hopf

V = Space("V", 2, ("a", "b"))


def test_evaluation_pairs_dual_basis():
    ev = evaluation(V.dual(), V)
    assert ev.column(0) == {0: 1} and ev.column(1) == {}
    assert ev.column(3) == {0: 1}


def test_nested_pairing_order():
    # <<f (x) g, a (x) b>> = g(a) f(b)
    u = V.dual()
    p = nested_pairing((u, u), (V, V))
    shape = p.domain
    assert p.column(shape.join((0, 1, 1, 0))) == {0: 1}
    assert p.column(shape.join((0, 1, 0, 1))) == {}


def test_contract_rejects_nothing_silently():
    c = contract((V.dual(), V), [(0, 1)])
    assert c == evaluation(V.dual(), V)


@pytest.mark.parametrize("name", FLAT + ["bline:q=2:deg=4"])
def test_induced_braidings(name):
    h = hopf(name)
    ib = induce_dual_braidings(h.braiding)
    assert check_induced(ib, h.braiding).ok


def test_dual_braided_line_is_the_inverse_q_line():
    h = hopf("bline:q=2:deg=4")
    u, _ = dual_bialgebra(h)
    n = h.space.dim
    qi = Fraction(1, 2)
    for i in range(n):
        for j in range(n - i):
            assert u.mult.column(i * n + j) == {i + j: q_binomial(i + j, i, qi)}
    for d in range(n):
        assert u.comult.column(d) == {k * n + (d - k): Fraction(2) ** (k * (d - k))
                                      for k in range(d + 1)}
    s = dual_hopf(h).antipode
    assert [s.column(d)[d] for d in range(n)] == [1, -1, 2, -8, 64]


def test_dual_braiding_on_bline():
    h = hopf("bline:q=2:deg=4")
    u, _ = dual_bialgebra(h)
    n = h.space.dim
    assert u.psi.column(1 * n + 2) == {2 * n + 1: Fraction(4)}


def test_dual_of_group_algebra_is_function_algebra():
    h = hopf("zn:3")
    u, _ = dual_bialgebra(h)
    n = 3
    for a in range(n):
        for b in range(n):
            expected = {a: 1} if a == b else {}
            assert u.mult.column(a * n + b) == expected
    assert u.unit.column(0) == {0: 1, 1: 1, 2: 1}


@pytest.mark.parametrize("variant", [STAR, CIRC])
def test_other_dual_variants_on_superline(variant):
    h = hopf("superline")
    if variant == STAR:
        a = dual_algebra(h.coalgebra, variant)
        assert a.verify().ok
    else:
        c = dual_coalgebra(h.algebra, variant)
        assert c.verify().ok


@pytest.mark.parametrize("name", FLAT + ["bline:q=2:deg=4", "qplane:q=2:deg=3"])
def test_dual_pairing_axioms(name):
    h = hopf(name)
    u, p = dual_bialgebra(h)
    s = dual_hopf(h).antipode
    report = verify_dual_pairing(p, u, h.bialgebra, (s, h.antipode))
    assert report.ok, report.format_text()
    for tag in ("mD", "Dm", "1a", "Spair", "nondeg"):
        assert report.verdict(tag) is Verdict.PASS, tag


def test_wrong_upsilon_breaks_the_pairing():
    from braidual.structures import CrossBraiding
    from dataclasses import replace
    h = hopf("bline:q=2:deg=4")
    u, p = dual_bialgebra(h)
    ib = induce_dual_braidings(h.braiding)
    with unchecked():
        bad = replace(p, upsilon=ib.psi_UH)
    report = verify_dual_pairing(bad, u, h.bialgebra)
    assert not report.ok


@pytest.mark.parametrize("name", FLAT + ["bline:q=2:deg=4"])
def test_double_dual(name):
    report = double_dual_iso(hopf(name))
    assert report.ok and report.verdict("propdual") is Verdict.PASS


@pytest.mark.parametrize("name", ["superline", "bline:q=2:deg=4", "zn:3"])
@pytest.mark.parametrize("n", range(-2, 3))
def test_dual_of_twist(name, n):
    report = dual_of_twist(hopf(name), n)
    assert report.ok, report.format_text()
    assert report.verdict("Pdual") is Verdict.PASS


def test_dual_of_twist_bound():
    with pytest.raises(InvalidParameter):
        dual_of_twist(hopf("superline"), 5)


def test_transpose_antipode_is_dual_antipode():
    h = hopf("superline")
    assert dual_hopf(h).antipode == lin_transpose(h.antipode)
