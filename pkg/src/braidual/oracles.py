"""Structure maps on duals recovered by solving their defining identities.

These are deliberately slow and independent of the reindexing formulas in
:mod:`braidual.duality`: each unknown map ``X : S -> T`` is found from
``pair(t, X(s)) = rhs(s, t)`` for every basis ``s`` and every test basis
tensor ``t``, one exact linear system per column.
"""

from __future__ import annotations

from .duality import contract, nested_pairing
from .errors import BraidualError, Singular
from .linalg import Chain, Kron, LinMap, as_shape, permutation, solve_linear
from .structures import BraidedBialgebra, BraidedHopf


def solve_by_pairing(source, target, tests, pairing, rhs) -> LinMap:
    """Find ``X : source -> target`` from its pairings with ``tests``.

    ``pairing : tests (x) target -> K`` and ``rhs : source (x) tests -> K``.
    """
    s, t, z = as_shape(source), as_shape(target), as_shape(tests)
    pairing, rhs = pairing.materialize(), rhs.materialize()
    rows = []
    for i in range(z.size):
        row = {}
        for c in range(t.size):
            v = pairing.column(i * t.size + c).get(0)
            if v:
                row[c] = v
        rows.append(row)
    coeffs = {}
    for a in range(s.size):
        b = [rhs.column(a * z.size + i).get(0, 0) for i in range(z.size)]
        x, unique = solve_linear(rows, b, t.size)
        if x is None:
            raise BraidualError("defining identities are inconsistent")
        if not unique:
            raise Singular("the test pairing is degenerate")
        for c, v in enumerate(x):
            if v:
                coeffs[(c, a)] = v
    return LinMap(s, t, coeffs)


def _spaces(h):
    h = h.bialgebra if isinstance(h, BraidedHopf) else h
    return h, h.space, h.space.dual()


def oracle_dual_braiding(psi: LinMap) -> LinMap:
    """``Psi_UU(f (x) g)(b (x) a) = <<f (x) g, Psi(a (x) b)>>``."""
    h = psi.domain.factors[0]
    u = h.dual()
    pairing = contract((h, h, u, u), [(2, 0), (3, 1)])
    rhs = Chain(nested_pairing((u, u), (h, h)), Kron(u, u, psi),
                Kron(u, u, permutation((h, h), (1, 0))))
    return solve_by_pairing((u, u), (u, u), (h, h), pairing, rhs)


def oracle_dual_product(h: BraidedBialgebra, inverse: bool = True) -> LinMap:
    """``m(f (x) g)(a) = <<f (x) g, Psi^-1 Delta(a)>>`` (or with Psi)."""
    h, hs, u = _spaces(h)
    x = h.psi_inv if inverse else h.psi
    rhs = Chain(nested_pairing((u, u), (hs, hs)), Kron(u, u, x), Kron(u, u, h.comult))
    return solve_by_pairing((u, u), u, hs, contract((hs, u), [(1, 0)]), rhs)


def oracle_dual_coproduct(h: BraidedBialgebra, inverse: bool = False) -> LinMap:
    """``<<Delta(f), a (x) b>> = f(m Psi(a (x) b))`` (or with Psi^-1)."""
    h, hs, u = _spaces(h)
    x = h.psi_inv if inverse else h.psi
    pairing = nested_pairing((u, u), (hs, hs))
    pairing = Chain(pairing, permutation((hs, hs, u, u), (2, 3, 0, 1)))
    rhs = Chain(contract((u, hs), [(0, 1)]), Kron(u, h.mult), Kron(u, x))
    return solve_by_pairing(u, (u, u), (hs, hs), pairing, rhs)


def oracle_regular_coaction(h: BraidedBialgebra) -> LinMap:
    """``rho_R(v)(e (x) a) = e(m Psi^-1(v (x) a))`` for the regular module."""
    h, hs, u = _spaces(h)
    pairing = contract((u, hs, hs, u), [(0, 2), (3, 1)])
    rhs = Chain(contract((u, hs), [(0, 1)]), Kron(u, h.mult), Kron(u, h.psi_inv),
                permutation((hs, u, hs), (1, 0, 2)))
    return solve_by_pairing(hs, (hs, u), (u, hs), pairing, rhs)
