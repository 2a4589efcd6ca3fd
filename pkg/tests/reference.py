"""Frozen oracle values (regenerate with scripts/reference_values.py).

lp2/lp1: closed forms int exp(-2 pi x^2) dx = 2^(-1/2), int exp(-pi x^2) dx = 1.
mod22 / famalgam44: frequency-side adaptive quadrature, cell by cell.
frak444: same weighted norm on the doubled-resolution grid (a=7, b=7).
"""
LP2_GAUSSIAN = 0.8408964152537145
LP1_GAUSSIAN = 1.0
MOD22_GAUSSIAN_J0 = 0.782134888916297
FAMALGAM44_GAUSSIAN_J0 = 0.8107754234097264
FRAK444_GAUSSIAN_WP4 = 0.9925313940867737
