"""Exact symbolic computation of packet members for p-adic classical groups.

Parameters are multisets of Jordan blocks with sign characters; packet
members are elements of a formal Grothendieck group, built by a signed
recursion and evaluated through a rule-based Jacquet calculus.
"""

from .general import domination_independence_check, minimal_dominating, pi_general
from .groth import GrothElement, PiSymbol, Segment, parse, render
from .jacquet import Unsupported, jac_apply, jac_seq
from .packets import pi_explicit, pi_recursive, pi_standard
from .params import (
    MINUS,
    PLUS,
    TRIVIAL,
    Block,
    CuspLabel,
    HalfInt,
    Parameter,
    SignChar,
    all_sign_chars,
    signed,
    validate_parameter,
    validate_sign_char,
)
from .stability import sign_identity_checks, stable_sum

__version__ = "0.1.0"

__all__ = [
    "domination_independence_check",
    "minimal_dominating",
    "pi_general",
    "GrothElement",
    "PiSymbol",
    "Segment",
    "parse",
    "render",
    "Unsupported",
    "jac_apply",
    "jac_seq",
    "pi_explicit",
    "pi_recursive",
    "pi_standard",
    "MINUS",
    "PLUS",
    "TRIVIAL",
    "Block",
    "CuspLabel",
    "HalfInt",
    "Parameter",
    "SignChar",
    "all_sign_chars",
    "signed",
    "validate_parameter",
    "validate_sign_char",
    "sign_identity_checks",
    "stable_sum",
]
