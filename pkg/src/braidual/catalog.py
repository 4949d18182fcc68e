"""Built-in instances.

Finite-dimensional ones: group algebras K[Z_n], the superline K[x]/(x^2)
with the signed braiding, and the monoid bialgebra of ({0, 1}, max), which
has no antipode.

Degree-truncated ones: the braided line and the quantum plane, kept up to
a degree cutoff.  Products that would land above the cutoff are left out
of the multiplication table; they are Unknown, and the checkers never
evaluate an identity whose input or output degree exceeds the cutoff.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from .errors import InvalidParameter
from .linalg import K, LinMap, ONE, Space, as_shape, scalar
from .report import CheckReport
from .structures import (BraidedBialgebra, BraidedHopf, degree_bound, unchecked)

MAX_CUTOFF = 8


def _hopf_from_tables(space: Space, psi, mult, unit_index, comult, counit,
                      antipode=None) -> BraidedHopf:
    """Build and validate a Hopf algebra from coefficient dictionaries."""
    h2 = (space, space)
    bi = BraidedBialgebra.build(
        psi=LinMap(h2, h2, psi),
        mult=LinMap(h2, space, mult),
        unit=LinMap(K, space, {(unit_index, 0): 1}),
        comult=LinMap(space, h2, comult),
        counit=LinMap(space, K, counit),
    )
    s = None if antipode is None else LinMap(space, space, antipode)
    return BraidedHopf.of(bi, s)


def _flip_table(n: int) -> Dict[Tuple[int, int], int]:
    return {(j * n + i, i * n + j): 1 for i in range(n) for j in range(n)}


@lru_cache(maxsize=None)
def make_group_bialgebra(n: int) -> BraidedHopf:
    """K[Z_n] with the flip, Delta(g) = g (x) g and S(g) = g^(n-1)."""
    if n < 1:
        raise InvalidParameter("the cyclic group needs n >= 1")
    labels = tuple("1" if i == 0 else ("g" if i == 1 else f"g{i}") for i in range(n))
    h = Space(f"K[Z{n}]", n, labels)
    return _hopf_from_tables(
        h,
        psi=_flip_table(n),
        mult={((i + j) % n, i * n + j): 1 for i in range(n) for j in range(n)},
        unit_index=0,
        comult={(i * n + i, i): 1 for i in range(n)},
        counit={(0, i): 1 for i in range(n)},
        antipode={((-i) % n, i): 1 for i in range(n)},
    )


@lru_cache(maxsize=None)
def make_superline() -> BraidedHopf:
    """K[x]/(x^2) with Psi(x (x) x) = -x (x) x and x primitive."""
    h = Space("superline", 2, ("1", "x"))
    psi = _flip_table(2)
    psi[(3, 3)] = -1
    return _hopf_from_tables(
        h,
        psi=psi,
        mult={(0, 0): 1, (1, 1): 1, (1, 2): 1},
        unit_index=0,
        comult={(0, 0): 1, (2, 1): 1, (1, 1): 1},
        counit={(0, 0): 1},
        antipode={(0, 0): 1, (1, 1): -1},
    )


@lru_cache(maxsize=None)
def make_max_monoid() -> BraidedBialgebra:
    """The monoid bialgebra of ({0, 1}, max): a bialgebra with no antipode."""
    h = Space("K[max]", 2, ("m0", "m1"))
    h2 = (h, h)
    return BraidedBialgebra.build(
        psi=LinMap(h2, h2, _flip_table(2)),
        mult=LinMap(h2, h, {(max(i, j), 2 * i + j): 1 for i in range(2) for j in range(2)}),
        unit=LinMap(K, h, {(0, 0): 1}),
        comult=LinMap(h, h2, {(3 * i, i): 1 for i in range(2)}),
        counit=LinMap(h, K, {(0, 0): 1, (0, 1): 1}),
    )


# --------------------------------------------------------------------------
# graded, degree-truncated instances


def q_integer(n: int, q: Fraction) -> Fraction:
    return sum((q ** i for i in range(n)), Fraction(0))


def q_binomial(n: int, k: int, q: Fraction) -> Fraction:
    """Gaussian binomial via the recursion C(n,k) = C(n-1,k-1) + q^k C(n-1,k)."""
    if k < 0 or k > n:
        return Fraction(0)
    row = [Fraction(1)]
    for m in range(1, n + 1):
        nxt = []
        for j in range(m + 1):
            left = row[j - 1] if j >= 1 else Fraction(0)
            right = row[j] if j < m else Fraction(0)
            nxt.append(left + q ** j * right)
        row = nxt
    return row[k]


UNKNOWN = None


@dataclass(frozen=True)
class GradedStructure:
    """A graded braided Hopf algebra kept up to total degree ``cutoff``.

    ``hopf`` holds the truncated structure maps on the space of all
    homogeneous elements of degree at most ``cutoff``.
    """

    family: str
    q: Fraction
    cutoff: int
    hopf: BraidedHopf

    @property
    def space(self) -> Space:
        return self.hopf.space

    @property
    def grades(self) -> List[Space]:
        s = self.space
        out = []
        for d in range(self.cutoff + 1):
            labels = tuple(s.labels[i] for i in range(s.dim) if s.degrees[i] == d)
            out.append(Space(f"{s.name}_{d}", len(labels), labels, (d,) * len(labels), d))
        return out

    def block(self, name: str, degree: int):
        """The restriction of a structure map to inputs of total degree ``degree``.

        Returns :data:`UNKNOWN` above the cutoff.
        """
        if degree > self.cutoff:
            return UNKNOWN
        f = getattr(self.hopf, name)
        cols = {}
        for j in range(f.domain.size):
            if sum(f.domain.polar_degrees(j)) == degree and f.column(j):
                cols[j] = dict(f.column(j))
        return LinMap._trusted(f.domain, f.codomain, cols)


def _check_params(q, cutoff):
    q = scalar(q)
    if q == 0:
        raise InvalidParameter("q must be nonzero")
    if not 0 <= cutoff <= MAX_CUTOFF:
        raise InvalidParameter(f"cutoff must lie in 0..{MAX_CUTOFF}")
    return q


@lru_cache(maxsize=None)
def make_braided_line_truncated(q, cutoff: int, binomial=None) -> GradedStructure:
    """K[x] with Psi(x^i (x) x^j) = q^(ij) x^j (x) x^i, up to degree ``cutoff``.

    ``binomial`` overrides the coproduct coefficients (used to build
    deliberately broken instances).
    """
    q = _check_params(q, cutoff)
    binomial = binomial or q_binomial
    n = cutoff + 1
    labels = tuple("1" if i == 0 else ("x" if i == 1 else f"x^{i}") for i in range(n))
    h = Space(f"bline(q={q})", n, labels, tuple(range(n)), cutoff)
    psi = {(j * n + i, i * n + j): q ** (i * j) for i in range(n) for j in range(n)}
    mult = {(i + j, i * n + j): 1 for i in range(n) for j in range(n) if i + j < n}
    comult = {(k * n + (d - k), d): binomial(d, k, q) for d in range(n) for k in range(d + 1)}
    antipode = {(d, d): (-1) ** d * q ** (d * (d - 1) // 2) for d in range(n)}
    hopf = _hopf_from_tables(h, psi, mult, 0, comult, {(0, 0): 1}, antipode)
    return GradedStructure("BraidedLine", q, cutoff, hopf)


def _plane_basis(cutoff: int) -> List[Tuple[int, int]]:
    return [(d - b, b) for d in range(cutoff + 1) for b in range(d + 1)]


def _monomial_label(a: int, b: int) -> str:
    parts = []
    for var, e in (("x", a), ("y", b)):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return "".join(parts) or "1"


@lru_cache(maxsize=None)
def make_quantum_plane_truncated(q, cutoff: int) -> GradedStructure:
    """K<x, y>/(yx - q xy) with primitive generators, up to degree ``cutoff``.

    The braiding is diagonal on monomials,
    Psi(x^a y^b (x) x^c y^d) = q^(bc - ad) x^c y^d (x) x^a y^b,
    which is what makes yx - q xy primitive.
    """
    q = _check_params(q, cutoff)
    basis = _plane_basis(cutoff)
    index = {mono: i for i, mono in enumerate(basis)}
    n = len(basis)
    h = Space(f"qplane(q={q})", n, tuple(_monomial_label(*m) for m in basis),
              tuple(a + b for a, b in basis), cutoff)
    psi, mult = {}, {}
    for i, (a, b) in enumerate(basis):
        for j, (c, d) in enumerate(basis):
            psi[(j * n + i, i * n + j)] = q ** (b * c - a * d)
            if a + b + c + d <= cutoff:
                mult[(index[(a + c, b + d)], i * n + j)] = q ** (b * c)

    # Delta(x^a y^b) = Delta(x)^a Delta(y)^b inside the braided tensor square
    def tensor_product(u, v):
        out = {}
        for (i1, i2), cu in u.items():
            for (j1, j2), cv in v.items():
                (a1, b1), (a2, b2) = basis[i1], basis[i2]
                (c1, d1), (c2, d2) = basis[j1], basis[j2]
                if a1 + b1 + c1 + d1 > cutoff or a2 + b2 + c2 + d2 > cutoff:
                    continue
                # (u1 (x) u2)(v1 (x) v2) = u1 Psi(u2 (x) v1) v2
                coeff = cu * cv * q ** (b2 * c1 - a2 * d1)
                coeff *= q ** (b1 * c1) * q ** (b2 * c2)
                key = (index[(a1 + c1, b1 + d1)], index[(a2 + c2, b2 + d2)])
                out[key] = out.get(key, 0) + coeff
        return {k: v for k, v in out.items() if v}

    one = index[(0, 0)]
    gens = {}
    for g in ((1, 0), (0, 1)):
        if g in index:
            gens[g] = {(index[g], one): Fraction(1), (one, index[g]): Fraction(1)}
    comult = {}
    for i, (a, b) in enumerate(basis):
        acc = {(one, one): Fraction(1)}
        for _ in range(a):
            acc = tensor_product(acc, gens[(1, 0)])
        for _ in range(b):
            acc = tensor_product(acc, gens[(0, 1)])
        for (i1, i2), c in acc.items():
            comult[(i1 * n + i2, i)] = c
    hopf = _hopf_from_tables(h, psi, mult, one, comult, {(0, one): 1})
    return GradedStructure("QuantumPlane", q, cutoff, hopf)


def check_graded_up_to(g: GradedStructure, cutoff: int) -> CheckReport:
    """Every applicable check, restricted to total degree ``<= cutoff``."""
    if cutoff > g.cutoff:
        raise InvalidParameter(f"structure is only known up to degree {g.cutoff}")
    from .duality import double_dual_iso, dual_bialgebra, verify_dual_pairing
    from .twist import check_twist_bialgebra

    report = CheckReport(f"{g.space.name} up to degree {cutoff}")
    with degree_bound(cutoff):
        report.extend(g.hopf.verify())
        for n in range(-2, 3):
            report.extend(check_twist_bialgebra(g.hopf, n), f"twist n={n}")
        u, pairing = dual_bialgebra(g.hopf.bialgebra)
        report.extend(u.verify(), "dual")
        report.extend(verify_dual_pairing(pairing, u, g.hopf.bialgebra), "pairing")
        report.extend(double_dual_iso(g.hopf.bialgebra), "double dual")
    return report


# --------------------------------------------------------------------------
# names


CATALOG_NAMES = [
    "zn:1", "zn:2", "zn:3", "zn:4", "superline",
    "bline:q=1:deg=4", "bline:q=2:deg=4", "qplane:q=1:deg=3", "qplane:q=2:deg=3",
]

_NAME = re.compile(r"^(bline|qplane):q=(-?\d+(?:/\d+)?):deg=(\d+)$")


def lookup(name: str):
    """Resolve a catalog name to a structure.

    Returns a ``BraidedHopf``, ``BraidedBialgebra`` or ``GradedStructure``.
    Raises ``KeyError`` for unknown names and ``InvalidParameter`` for bad
    parameters.
    """
    name = name.strip()
    if name.startswith("zn:"):
        try:
            n = int(name[3:])
        except ValueError:
            raise KeyError(name) from None
        return make_group_bialgebra(n)
    if name == "superline":
        return make_superline()
    if name == "maxmonoid":
        return make_max_monoid()
    m = _NAME.match(name)
    if m:
        kind, q, deg = m.group(1), Fraction(m.group(2)), int(m.group(3))
        if kind == "bline":
            return make_braided_line_truncated(q, deg)
        return make_quantum_plane_truncated(q, deg)
    raise KeyError(name)


def as_hopf_or_bialgebra(obj):
    return obj.hopf if isinstance(obj, GradedStructure) else obj


def all_instances():
    return {name: lookup(name) for name in CATALOG_NAMES}
