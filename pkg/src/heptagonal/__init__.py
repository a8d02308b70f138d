"""Hypergeometric periods of y^7 = x(x-1)(x-t), their modular embedding into
Siegel space, and the theta-constant uniformization of the Fermat septic and
Klein quartic."""

from .cyclotomic import CycNum, Residue, cyc_embed, cyc_make, reduce_mod
from .embedding import Phi, SiegelPoint, ThetaChar, char_action, invariant_chars, lambda_phase, sp_action
from .monodromy import CycMatrix2, generators
from .periods import LoopSpec, PeriodPair, eval_periods, genus, numeric_monodromy, schwarz
from .theta import theta, vanishing_scan
from .uniformization import fermat_point, klein_point, round_trip, t_from_tau

__version__ = "0.1.0"
