"""Comodules over finite flat Hopf algebras, base change of invariants, and
GL_r-invariants of products of determinantal varieties, in exact arithmetic."""

__version__ = "0.1.0"
