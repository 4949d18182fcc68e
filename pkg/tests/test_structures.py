from fractions import Fraction

import pytest

from braidual.errors import NoAntipode, PrecheckFailed, ShapeMismatch
from braidual.linalg import K, LinMap, Space, compose, flip, identity
from braidual.report import Verdict
from braidual.structures import (BraidedAlgebra, BraidedBialgebra, BraidedHopf, Braiding,
                                 CrossBraiding, braided_tensor_bialgebra, check_yang_baxter,
                                 convolution, solve_antipode, unchecked, unit_counit)

from conftest import hopf

V = Space("V", 2, ("a", "b"))


def test_flip_satisfies_yang_baxter():
    assert check_yang_baxter(flip(V)).verdict("YBE") is Verdict.PASS


def test_non_braiding_is_rejected_with_witness():
    # a (x) a -> a (x) b is invertible but breaks YBE
    bad = LinMap.from_dense((V, V), (V, V), [[1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0],
                                             [0, 0, 0, 1]])
    report = check_yang_baxter(bad)
    assert report.verdict("YBE") is Verdict.FAIL
    w = report.failures()[0].witness
    assert w is not None and w.lhs != w.rhs
    with pytest.raises(PrecheckFailed) as exc:
        Braiding.of(bad)
    assert "YBE" in str(exc.value)


def test_unchecked_allows_broken_objects():
    bad = LinMap.from_dense((V, V), (V, V), [[1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0],
                                             [0, 0, 0, 1]])
    with unchecked():
        b = Braiding.of(bad)
    assert not b.verify().ok


def test_cross_braiding_shape_is_checked():
    w = Space("W", 1, ("w",))
    with pytest.raises(ShapeMismatch):
        CrossBraiding(V, w, flip(V), flip(V))


def test_superline_suite_passes():
    h = hopf("superline")
    report = h.verify()
    assert report.fully_passed
    for tag in ("YBE", "Dcm", "AWm", "VAm", "PHW", "PVH", "Pmm", "PDD", "Sbraid"):
        assert report.verdict(tag) is Verdict.PASS, tag


def test_superline_is_not_a_bialgebra_under_the_flip():
    h = hopf("superline").bialgebra
    with unchecked():
        plain = h.with_maps(psi=flip(h.space), psi_inv=flip(h.space))
    report = plain.verify()
    assert report.verdict("Dcm") is Verdict.FAIL
    w = report.by_id("Dcm")[0].witness
    assert (w.input_labels, w.output_labels) == (("x", "x"), ("x", "x"))
    assert (w.lhs, w.rhs) == (0, 2)


def test_broken_multiplication_raises():
    h = hopf("zn:2").bialgebra
    m = h.mult + LinMap((h.space, h.space), h.space, {(1, 0): 1})
    with pytest.raises(PrecheckFailed) as exc:
        BraidedBialgebra.build(h.psi, m, h.unit, h.comult, h.counit)
    assert not exc.value.report.ok


@pytest.mark.parametrize("name", ["zn:1", "zn:2", "zn:3", "zn:4", "superline",
                                  "bline:q=2:deg=4", "qplane:q=2:deg=3"])
def test_solved_antipode_matches_stored(name):
    h = hopf(name)
    assert solve_antipode(h.bialgebra) == h.antipode
    s = h.antipode
    target = unit_counit(h.coalgebra, h.algebra)
    assert convolution(identity(h.space), s, h.coalgebra, h.algebra) == target
    assert convolution(s, identity(h.space), h.coalgebra, h.algebra) == target


def test_max_monoid_has_no_antipode():
    from braidual.catalog import make_max_monoid
    with pytest.raises(NoAntipode):
        solve_antipode(make_max_monoid())
    with pytest.raises(NoAntipode):
        BraidedHopf.of(make_max_monoid())


def test_braiding_powers():
    h = hopf("bline:q=2:deg=4")
    b = h.braiding
    assert compose(b.power(2), b.power(-2)) == identity((h.space, h.space))
    # Psi^2 on x (x) x is q^2 = 4
    n = h.space.dim
    assert b.power(2).column(1 * n + 1) == {1 * n + 1: Fraction(4)}


def test_super_tensor_square():
    h = hopf("superline").bialgebra
    x = CrossBraiding.of(h.psi)
    sq = braided_tensor_bialgebra(h, h, x)
    assert sq.space.dim == 4
    assert sq.verify().ok


def test_algebra_shape_checks():
    h = hopf("zn:2")
    with pytest.raises(ShapeMismatch):
        BraidedAlgebra(h.braiding, h.comult, h.unit)
    with pytest.raises(ShapeMismatch):
        BraidedAlgebra(h.braiding, h.mult, LinMap(K, V, {}))
