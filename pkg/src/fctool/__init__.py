"""Fully commutative elements of Coxeter groups of type D, affine B, C, D,
their normal forms, the tower maps between ranks, and the induced maps of
Hecke and generalized Temperley-Lieb algebras."""

__version__ = "0.1.0"
