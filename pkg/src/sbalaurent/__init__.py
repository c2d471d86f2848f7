"""Strongly badly approximable matrices over K((1/x)), computed exactly.

The package evaluates solution-space dimensions and block Hankel ranks of
torus matrices, scans defects, runs exhaustive product minima over finite
fields, builds matrices whose square block Hankel matrices are all
nonsingular, and checks that property on explicit exponential and binomial
series.  Every result is valid on an explicit finite window only.
"""

__version__ = "0.1.0"
