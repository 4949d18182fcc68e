from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from braidual import catalog, fileformat
from braidual.errors import ParseError
from braidual.linalg import K, LinMap, Space
from braidual.modules import regular_module, self_comodule
from braidual.structures import Side

from conftest import hopf

MINIMAL = """braidual 1
kind braiding
space H 2
  labels 1 x
map psi H H -> H H
  0 0 1
  1 2 1
  2 1 1
  3 3 -1
end
"""


@pytest.mark.parametrize("name", catalog.CATALOG_NAMES + ["maxmonoid"])
def test_emit_then_parse_is_identity(name):
    obj = catalog.lookup(name)
    sf = fileformat.to_file(obj)
    text = fileformat.emit(sf)
    again = fileformat.parse(text)
    assert again == sf
    assert fileformat.emit(again) == text
    built = fileformat.build(again)
    h = catalog.as_hopf_or_bialgebra(obj)
    assert built.mult == h.mult and built.comult == h.comult and built.psi == h.psi


@pytest.mark.parametrize("side", list(Side))
def test_modules_round_trip(side):
    h = hopf("superline")
    for obj in (regular_module(h, side), self_comodule(h, side)):
        sf = fileformat.to_file(obj)
        built = fileformat.build(fileformat.parse(fileformat.emit(sf)))
        assert type(built) is type(obj) and built.side is obj.side
        assert built.verify().ok


def test_graded_spaces_keep_degrees():
    g = catalog.lookup("bline:q=2:deg=4")
    sf = fileformat.parse(fileformat.emit(fileformat.to_file(g)))
    assert sf.params == {"q": "2", "cutoff": "4"}
    s = next(iter(sf.spaces.values()))
    assert s.degrees == (0, 1, 2, 3, 4) and s.cutoff == 4


def test_minimal_file_and_comments():
    sf = fileformat.parse("# a comment\n" + MINIMAL.replace("kind braiding",
                                                            "kind braiding  # inline"))
    b = fileformat.build(sf)
    assert b.psi == hopf("superline").psi.relabel(b.psi.domain, b.psi.codomain)


def test_rationals():
    text = MINIMAL.replace("3 3 -1", "3 3 -1/1").replace("0 0 1", "0 0 2/2")
    assert fileformat.parse(text) == fileformat.parse(MINIMAL)


@pytest.mark.parametrize("text, line, column", [
    ("", 1, 1),
    ("braidual 2\n", 1, 1),
    ("braidual 1\nkind monoid\n", 2, 6),
    (MINIMAL.replace("3 3 -1", "3 3 -1.0"), 9, 7),
    (MINIMAL.replace("3 3 -1", "4 3 -1"), 9, 3),
    (MINIMAL.replace("H H -> H H", "H H -> H X"), 5, 18),
    (MINIMAL.replace("end\n", ""), 10, 1),
    (MINIMAL.replace("labels 1 x", "labels 1 x y"), 3, 1),
    (MINIMAL.replace("  1 2 1\n", "  0 0 1\n"), 7, 3),
    (MINIMAL + "bogus\n", 11, 1),
])
def test_parse_errors_have_positions(text, line, column):
    with pytest.raises(ParseError) as exc:
        fileformat.parse(text)
    assert (exc.value.line, exc.value.column) == (line, column)


def test_missing_required_map():
    with pytest.raises(ParseError, match="mult"):
        fileformat.parse(MINIMAL.replace("kind braiding", "kind algebra"))


def test_dual_space_reference():
    text = MINIMAL + "map ev H' H -> K\n  0 0 1\n  0 3 1\nend\n"
    sf = fileformat.parse(text)
    assert sf.maps["ev"].domain.factors[0] == sf.spaces["H"].dual()


S = Space("S", 3, ("a", "b", "c"))
entries = st.dictionaries(st.tuples(st.integers(0, 8), st.integers(0, 2)),
                          st.fractions(min_value=-9, max_value=9, max_denominator=7),
                          max_size=12)


@settings(max_examples=60, deadline=None)
@given(entries)
def test_random_maps_round_trip(coeffs):
    m = LinMap(S, (S, S), coeffs)
    sf = fileformat.StructureFile("braiding", {"S": S}, {"psi": LinMap((S, S), (S, S), {}),
                                                         "f": m})
    assert fileformat.parse(fileformat.emit(sf)).maps["f"] == m
