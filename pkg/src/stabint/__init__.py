"""Exact stability and integrability deciders for derivations on Q(x).

The package works entirely over the rationals with ``fractions.Fraction``:
rational functions and derivations (``ratfunc``), Ore operator rings
(``ore``), integrability tests (``integrate``), stability deciders and
witness chains (``stability``), D-finite series (``dfinite``) and finite
dynamical systems (``dynsys``).  ``cli`` is the command line front end.
"""

from .elementary import ElemExpr, ElemSum
from .ore import D, S, Kind, OreOperator
from .parse import parse, parse_elementary, parse_operator, parse_ratfunc
from .poly import Poly
from .ratfunc import Derivation, RatFunc
from .series import TruncSeries
from .stability import NotStable, OutOfFragment, Stable, check_chain, decide, witness_chain

__all__ = [
    "D",
    "Derivation",
    "ElemExpr",
    "ElemSum",
    "Kind",
    "NotStable",
    "OreOperator",
    "OutOfFragment",
    "Poly",
    "RatFunc",
    "S",
    "Stable",
    "TruncSeries",
    "check_chain",
    "decide",
    "parse",
    "parse_elementary",
    "parse_operator",
    "parse_ratfunc",
    "witness_chain",
]

__version__ = "0.1.0"
