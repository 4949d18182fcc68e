"""Exact braided Hopf algebras, their duals, twists and (co)module conversions."""

from .catalog import GradedStructure, lookup
from .duality import (DualPairing, double_dual_iso, dual_bialgebra, dual_hopf, dual_of_twist,
                      induce_dual_braidings, verify_dual_pairing)
from .errors import (AntipodeNotInvertible, BraidualError, InvalidParameter, NoAntipode,
                     NotClosed, ParseError, PrecheckFailed, ShapeMismatch, Singular)
from .linalg import K, LinMap, Space, TensorShape
from .modules import (BraidedComodule, BraidedModule, ComoduleAlgebra, ModuleAlgebra,
                      comodule_to_module, duality_round_trip, dualize_action,
                      dualize_coaction, module_to_comodule, natural_action)
from .report import CheckReport, Verdict
from .structures import (BraidedAlgebra, BraidedBialgebra, BraidedCoalgebra, BraidedHopf,
                         Braiding, CrossBraiding, Side, unchecked)
from .twist import WhichBraiding, twist

__version__ = "0.1.0"
