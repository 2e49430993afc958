"""Unit system used throughout: hbar = m = 1.

Wavenumbers, lengths and times are the dimensionless device-scale units;
delta-barrier strengths are stored as the dimensionless factors that
multiply hbar^2/2m.
"""

HBAR = 1.0
MASS = 1.0

# hbar^2 / (2 m), the natural energy scale of the barrier formulas
HB2_OVER_2M = HBAR * HBAR / (2.0 * MASS)
