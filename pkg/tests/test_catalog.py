from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from braidual import catalog
from braidual.catalog import (UNKNOWN, check_graded_up_to, make_braided_line_truncated,
                              q_binomial, q_integer)
from braidual.errors import InvalidParameter, PrecheckFailed
from braidual.report import Verdict
from braidual.structures import degree_bound

from conftest import hopf, instance

qs = st.fractions(min_value=-4, max_value=4, max_denominator=4).filter(lambda q: q != 0)


def q_factorial(n, q):
    out = Fraction(1)
    for k in range(1, n + 1):
        out *= q_integer(k, q)
    return out


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 7), st.integers(0, 7), qs)
def test_q_binomial_matches_factorial_formula(n, k, q):
    if k > n:
        assert q_binomial(n, k, q) == 0
        return
    # the factorial formula needs [j]_q != 0, i.e. q not a nontrivial root of unity
    if any(q_integer(j, q) == 0 for j in range(1, n + 1)):
        return
    assert q_binomial(n, k, q) == q_factorial(n, q) / (q_factorial(k, q) * q_factorial(n - k, q))


@given(st.integers(0, 8), qs)
def test_q_binomial_symmetry(n, q):
    for k in range(n + 1):
        assert q_binomial(n, k, q) == q_binomial(n, n - k, q)


def test_q_binomial_at_one_is_classical():
    assert [q_binomial(4, k, Fraction(1)) for k in range(5)] == [1, 4, 6, 4, 1]
    assert q_binomial(4, 2, Fraction(2)) == 35


def test_lookup_names():
    assert hopf("zn:3").space.dim == 3
    assert instance("bline:q=1/2:deg=2").q == Fraction(1, 2)
    assert instance("qplane:q=2:deg=3").space.dim == 10
    for bad in ("zn:x", "nope", "bline:q=2", "qplane:q=2:deg=-1"):
        with pytest.raises(KeyError):
            catalog.lookup(bad)


def test_bad_parameters():
    with pytest.raises(InvalidParameter):
        catalog.lookup("zn:0")
    with pytest.raises(InvalidParameter):
        catalog.lookup("bline:q=0:deg=3")


def test_catalog_names_resolve():
    found = catalog.all_instances()
    assert set(found) == set(catalog.CATALOG_NAMES)


def test_quantum_plane_relation():
    g = instance("qplane:q=2:deg=3")
    h = g.hopf
    labels = h.space.labels
    x, y, xy = labels.index("x"), labels.index("y"), labels.index("xy")
    n = h.space.dim
    assert h.mult.column(y * n + x) == {xy: Fraction(2)}
    assert h.mult.column(x * n + y) == {xy: Fraction(1)}


def test_braided_line_antipode():
    h = hopf("bline:q=2:deg=4")
    for d in range(5):
        assert h.antipode.column(d) == {d: Fraction((-1) ** d * 2 ** (d * (d - 1) // 2))}


def test_graded_block_is_unknown_above_cutoff():
    g = instance("bline:q=2:deg=4")
    assert g.block("mult", 5) is UNKNOWN
    block = g.block("mult", 3)
    assert all(sum(block.domain.polar_degrees(j)) == 3 for j in block._cols)
    assert [s.dim for s in g.grades] == [1, 1, 1, 1, 1]


def test_classical_binomials_break_the_q_line():
    with pytest.raises(PrecheckFailed) as exc:
        make_braided_line_truncated(Fraction(2), 3,
                                    binomial=lambda n, k, q: q_binomial(n, k, Fraction(1)))
    assert exc.value.report.verdict("Dcm") is Verdict.FAIL


def test_graded_checks_report_skipped_entries():
    h = hopf("bline:q=2:deg=4")
    report = h.verify()
    assert report.ok
    assert report.skipped(), "products above the cutoff must be reported as Skipped"
    with degree_bound(2):
        low = h.verify()
    assert low.ok
    assert sum(e.checked for e in low.entries) < sum(e.checked for e in report.entries)


def test_check_graded_up_to():
    report = check_graded_up_to(instance("bline:q=2:deg=4"), 3)
    assert report.ok
    with pytest.raises(InvalidParameter):
        check_graded_up_to(instance("bline:q=2:deg=4"), 5)
