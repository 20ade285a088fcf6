"""Twist-word calculus for genus-2 Lefschetz fibration monodromies."""

from lantern.words import CurveRef, TwistToken, TwistWord, Relator, ParseError
from lantern.registry import Registry, load_registry, default_registry

__all__ = [
    "CurveRef",
    "TwistToken",
    "TwistWord",
    "Relator",
    "ParseError",
    "Registry",
    "load_registry",
    "default_registry",
]
