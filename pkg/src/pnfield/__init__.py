"""Finite-field arithmetic, character sums and exhaustive censuses of primitive normal elements."""

from .gf import Elt, make_field, make_tower, parse_elt, format_elt

__all__ = ["Elt", "make_field", "make_tower", "parse_elt", "format_elt"]
