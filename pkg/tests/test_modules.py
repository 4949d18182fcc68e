from dataclasses import replace
from fractions import Fraction

import pytest

from braidual.duality import dual_bialgebra, dual_hopf, induce_dual_braidings
from braidual.errors import AntipodeNotInvertible
from braidual.linalg import LinMap, Space
from braidual.modules import (antipode_flip, bullet_braidings, check_adjointness,
                              check_natural_action, coact_one_shot, comodule_to_module,
                              duality_round_trip, dualize_action, dualize_coaction, flip_side,
                              module_to_comodule, natural_action, regular_module, self_comodule,
                              self_comodule_algebra, trivial_comodule, trivial_module)
from braidual.report import Verdict
from braidual.structures import BraidedHopf, Side, unchecked

from conftest import FLAT, hopf

SMALL = FLAT + ["bline:q=2:deg=3"]
V = Space("V", 1, ("v",))


@pytest.mark.parametrize("name", SMALL)
def test_regular_objects(name):
    h = hopf(name)
    for side in Side:
        assert regular_module(h, side).verify().ok
        assert self_comodule(h, side).verify().ok
        assert self_comodule_algebra(h, side).verify().ok


@pytest.mark.parametrize("name", ["zn:2", "superline"])
def test_trivial_objects(name):
    h = hopf(name)
    for side in Side:
        assert trivial_module(h, V, side).verify().ok
        assert trivial_comodule(h, V, side).verify().ok


def test_broken_action_is_reported():
    h = hopf("zn:2")
    m = regular_module(h)
    # every product lands on the first factor: not associative
    action = LinMap(m.action.domain, m.action.codomain, {(0, 0): 1, (0, 1): 1, (1, 2): 1,
                                                         (1, 3): 1})
    with unchecked():
        bad = replace(m, action=action)
    assert bad.verify().verdict("anu") is Verdict.FAIL


def test_group_comodule_gives_the_grading_action():
    h = hopf("zn:2")
    m = comodule_to_module(self_comodule(h))
    # e^a acts on e_b by delta_ab
    assert dict(m.action.coeffs) == {(0, 0): 1, (1, 3): 1}


def test_trivial_coaction_gives_counit_action():
    h = hopf("superline")
    u, _ = dual_bialgebra(h)
    m = comodule_to_module(trivial_comodule(h, V), u)
    # f > v = f(1) v, and f(1) is the counit of U
    assert {j: c for (_, j), c in m.action.coeffs.items()} == \
        {j: c for (_, j), c in u.counit.coeffs.items()}


@pytest.mark.parametrize("name", SMALL)
def test_conversions_pass_their_checkers(name):
    h = hopf(name)
    u, _ = dual_bialgebra(h)
    for side in Side:
        assert comodule_to_module(self_comodule(h, side)).verify().ok
        assert module_to_comodule(regular_module(h, side)).verify().ok
        assert comodule_to_module(self_comodule_algebra(h, side), u).verify().ok


@pytest.mark.parametrize("name", SMALL)
def test_natural_action(name):
    h = hopf(name)
    u, _ = dual_bialgebra(h)
    left, right = natural_action(h, u)
    report = check_natural_action(h, left, right, u)
    assert report.verdict("glaa") is Verdict.PASS
    assert report.verdict("graa") is Verdict.PASS
    assert left.verify().ok and right.verify().ok


@pytest.mark.parametrize("name", ["superline", "bline:q=2:deg=3"])
def test_module_to_comodule_lands_on_twisted_dual(name):
    h = hopf(name)
    u, _ = dual_bialgebra(h)
    c = module_to_comodule(regular_module(h))
    assert c.coalgebra.comult == u.braiding.power(-2) @ u.comult
    assert c.coalgebra.braiding == u.braiding
    ma = natural_action(h, u)[0]
    ca = module_to_comodule(ma, dual_bialgebra(u)[0])
    assert ca.verify().ok


@pytest.mark.parametrize("name", ["zn:2", "zn:3", "zn:4"])
def test_flip_round_trips_reproduce(name):
    h = hopf(name)
    for start in (self_comodule(h), regular_module(h)):
        rt = duality_round_trip(start)
        assert rt.report.ok and rt.reproduced


def test_superline_round_trip_applies_parity():
    h = hopf("superline")
    rt = duality_round_trip(self_comodule(h))
    assert rt.report.ok
    assert not rt.reproduced
    # rho'(x) = x (x) 1 - 1 (x) x, the coaction composed with x -> -x on H
    assert rt.second.coaction.column(1) == {2: Fraction(1), 1: Fraction(-1)}
    assert rt.second.coaction.column(0) == {0: Fraction(1)}


def test_bline_round_trip_matches_closed_forms():
    h = hopf("bline:q=2:deg=4")
    rt = duality_round_trip(self_comodule(h))
    assert rt.report.verdict("coactUH") is Verdict.PASS
    assert rt.report.verdict("PHVcc") is Verdict.PASS
    assert not rt.reproduced
    ib = induce_dual_braidings(h.braiding)
    assert rt.second.coaction == coact_one_shot(self_comodule(h), ib.psi_UH_circ)
    back = duality_round_trip(regular_module(h))
    assert back.report.verdict("actUH") is Verdict.PASS


@pytest.mark.parametrize("name", SMALL)
def test_dualized_coactions(name):
    h = hopf(name)
    u, _ = dual_bialgebra(h)
    for start in (self_comodule(h), trivial_comodule(h, V)):
        w = dualize_coaction(start)
        assert w.verify().ok
        assert w.algebra.braiding.psi == u.psi_inv
        assert check_adjointness(start, w).verdict("adj") is Verdict.PASS
    m = regular_module(h)
    d = dualize_action(m)
    assert d.verify().ok
    assert d.coalgebra.braiding.psi == u.psi_inv
    assert check_adjointness(m, d).verdict("adj") is Verdict.PASS


@pytest.mark.parametrize("name", ["superline", "bline:q=2:deg=3"])
def test_bullet_braidings_agree(name):
    h = hopf(name)
    u, _ = dual_bialgebra(h)
    c = self_comodule(h)
    first, second = bullet_braidings(c.cross.psi_inv, u.braiding)
    assert first == second


@pytest.mark.parametrize("name", ["superline", "bline:q=2:deg=3"])
def test_side_flips(name):
    h = hopf(name)
    assert flip_side(regular_module(h)).verify().ok
    assert flip_side(self_comodule(h)).verify().ok
    assert flip_side(self_comodule_algebra(h)).verify().ok
    assert flip_side(flip_side(self_comodule(h))).verify().ok


@pytest.mark.parametrize("name", ["superline", "bline:q=2:deg=3"])
def test_antipode_flips(name):
    h = hopf(name)
    flipped = antipode_flip(self_comodule_algebra(h), h)
    assert flipped.verify().ok
    uh = dual_hopf(h)
    left, _ = natural_action(h, uh.bialgebra)
    assert antipode_flip(left, uh).verify().ok


def test_antipode_flip_needs_inverse():
    h = hopf("superline")
    with unchecked():
        no_inv = BraidedHopf(h.bialgebra, h.antipode, None)
    with pytest.raises(AntipodeNotInvertible):
        antipode_flip(self_comodule(h), no_inv)


def test_round_trip_rejects_wrong_side():
    with pytest.raises(ValueError):
        duality_round_trip(self_comodule(hopf("zn:2"), Side.LEFT))
