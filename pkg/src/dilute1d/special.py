"""Digamma function, double precision.

Upward recurrence psi(x) = psi(x+1) - 1/x until x >= 10, then the
asymptotic series  ln x - 1/(2x) - sum_k B_2k / (2k x^2k).  Reflection
psi(1-x) - psi(x) = pi cot(pi x) handles x < 0.
"""
import math

# B_2k / (2k) for k = 1..8
_ASYMPTOTIC = (
    1.0 / 12,
    -1.0 / 120,
    1.0 / 252,
    -1.0 / 240,
    1.0 / 132,
    -691.0 / 32760,
    1.0 / 12,
    -3617.0 / 8160,
)

EULER_GAMMA = 0.57721566490153286061


def digamma(x: float) -> float:
    x = float(x)
    if math.isnan(x):
        return math.nan
    if x <= 0 and x == math.floor(x):
        raise ValueError(f"digamma has a pole at {x}")
    if x < 0:
        # psi(x) = psi(1 - x) - pi cot(pi x)
        return digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    p = inv2
    for coeff in _ASYMPTOTIC:
        series += coeff * p
        p *= inv2
    return acc + math.log(x) - 0.5 / x - series
