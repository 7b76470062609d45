"""Numerical toolkit for the relativistic kinetic-to-fluid limit of a charged gas.

Submodules: special_functions, quadrature, thermo, moments, collision,
characteristics, field_repr, fluid and harness.
"""

__version__ = "0.1.0"
