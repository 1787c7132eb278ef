"""Finite strict 2-category theory: envelopes of 2-categories, lax functor
classification and the adjunction and cocartesian-fibration calculus they
rest on, all checked exhaustively on finite models."""

__version__ = "0.1.0"
