"""Exact-arithmetic toolkit for dg Lie algebras, Maurer-Cartan sets,
deformation functors and nerves."""

__version__ = "0.1.0"
