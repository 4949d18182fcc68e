"""The twist family H^(k,n): product m o Psi^k and coproduct Psi^n o Delta."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import AntipodeNotInvertible, InvalidParameter
from .linalg import Chain, Identity, Kron, LinMap, compose, identity
from .report import CheckReport
from .structures import (BraidedBialgebra, BraidedHopf, antipode_report,
                         check, check_antipode_identities, check_bialgebra, unchecked)

DEFAULT_BOUND = 4


class WhichBraiding(Enum):
    PSI = "psi"
    PSI_INV = "psiinv"


def _bialgebra(h) -> BraidedBialgebra:
    if isinstance(h, BraidedHopf):
        return h.bialgebra
    if isinstance(h, TwistedStructure):
        return h.as_bialgebra()
    return h


@dataclass(frozen=True)
class TwistedStructure:
    base: BraidedBialgebra
    k: int
    n: int
    which_braiding: WhichBraiding
    mult: LinMap
    comult: LinMap

    def as_bialgebra(self) -> BraidedBialgebra:
        """The twisted maps bundled as an (unchecked) bialgebra."""
        b = self.base
        psi, psi_inv = b.psi, b.psi_inv
        if self.which_braiding is WhichBraiding.PSI_INV:
            psi, psi_inv = psi_inv, psi
        return BraidedBialgebra.build(psi, self.mult, b.unit, self.comult, b.counit,
                                      psi_inv, checked=False)

    def report(self) -> CheckReport:
        return check_bialgebra(self.as_bialgebra())


def twist(h, k: int, n: int, which_braiding: WhichBraiding = WhichBraiding.PSI,
          bound: int = DEFAULT_BOUND) -> TwistedStructure:
    """Materialize m_k = m o Psi^k and Delta_n = Psi^n o Delta.

    Powers are taken of the base braiding.  Twisting a twisted structure
    adds the exponents.
    """
    if isinstance(h, TwistedStructure):
        base = h.base
        k, n = h.k + k, h.n + n
    else:
        base = _bialgebra(h)
    if abs(k) > bound or abs(n) > bound:
        raise InvalidParameter(f"twist exponents must satisfy |k|, |n| <= {bound}")
    braiding = base.braiding
    mult = base.mult @ braiding.power(k)
    comult = braiding.power(n) @ base.comult
    return TwistedStructure(base, k, n, which_braiding, mult, comult)


def check_twist_claim(h, k: int, n: int, which_braiding: WhichBraiding) -> CheckReport:
    """Run the full bialgebra suite on H^(k,n) under the chosen braiding."""
    t = twist(h, k, n, which_braiding)
    name = "Psi" if which_braiding is WhichBraiding.PSI else "Psi^-1"
    report = CheckReport(f"H^({k},{n}) under {name}")
    report.extend(t.report())
    return report


def check_twist_bialgebra(h, n: int) -> CheckReport:
    """H^(n,-n) under Psi and H^(n-1,-n) under Psi^-1, with antipodes S and S^-1."""
    report = CheckReport(f"twists at n={n}")
    a = twist(h, n, -n, WhichBraiding.PSI)
    b = twist(h, n - 1, -n, WhichBraiding.PSI_INV)
    report.extend(a.report(), f"H^({n},{-n}) under Psi")
    report.extend(b.report(), f"H^({n - 1},{-n}) under Psi^-1")
    if isinstance(h, BraidedHopf):
        ha = a.as_bialgebra()
        report.extend(antipode_report(ha, h.antipode), f"S on H^({n},{-n})")
        with unchecked():
            report.extend(check_antipode_identities(BraidedHopf(ha, h.antipode)),
                          f"S on H^({n},{-n})")
        if h.antipode_inv is not None:
            hb = b.as_bialgebra()
            report.extend(antipode_report(hb, h.antipode_inv), f"S^-1 on H^({n - 1},{-n})")
            with unchecked():
                report.extend(check_antipode_identities(BraidedHopf(hb, h.antipode_inv)),
                              f"S^-1 on H^({n - 1},{-n})")
    return report


def antipode_power_morphism(h: BraidedHopf, k: int, n: int) -> CheckReport:
    """S^k as a morphism H^(n,-n) -> H^(n+k,-(n+k))."""
    if k < 0 and h.antipode_inv is None:
        raise AntipodeNotInvertible("negative powers need the inverse antipode")
    step = h.antipode if k >= 0 else h.antipode_inv
    sk = identity(h.space)
    for _ in range(abs(k)):
        sk = step @ sk
    src = twist(h, n, -n)
    dst = twist(h, n + k, -(n + k))
    sp = h.space
    clause = f"S^{k}: H^({n},{-n}) -> H^({n + k},{-(n + k)})"
    report = CheckReport(clause)
    check(report, "corS", Chain(sk, src.mult), Chain(dst.mult, Kron(sk, sk)), "product")
    check(report, "corS", Chain(Kron(sk, sk), src.comult), Chain(dst.comult, sk), "coproduct")
    check(report, "corS", Chain(h.psi, Kron(sk, sk)), Chain(Kron(sk, sk), h.psi), "braiding")
    check(report, "corS", Chain(h.counit, sk), h.counit, "counit")
    check(report, "corS", Chain(sk, h.unit), h.unit, "unit")
    check(report, "corS", Chain(sk, h.antipode), Chain(h.antipode, sk), "antipode")
    return report


def twists_equal(a: TwistedStructure, b: TwistedStructure) -> bool:
    return a.mult == b.mult and a.comult == b.comult


def braiding_order(h, limit: int = 12) -> int | None:
    """Smallest r >= 1 with Psi^r = id, or None if none up to ``limit``.

    This is a utility only; no claim about the twist family is derived.
    """
    b = _bialgebra(h).braiding
    ident = identity((b.space, b.space))
    p = b.psi
    for r in range(1, limit + 1):
        if p == ident:
            return r
        p = b.psi @ p
    return None
