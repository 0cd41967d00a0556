"""Arbitrary-precision reference values, independent of replikit's numerics."""

import mpmath as mp

mp.mp.dps = 50


def cdf(z):
    return mp.ncdf(mp.mpf(z))


def pdf(z):
    return mp.npdf(mp.mpf(z))


def quantile(p):
    p = mp.mpf(p)
    if p > 0.5:
        return -quantile(1 - p)
    if p == 0.5:
        return mp.mpf(0)
    # solve on the log scale so tiny p keeps its precision
    guess = -mp.sqrt(-2 * mp.log(p)) if p < 0.01 else mp.sqrt(2) * mp.erfinv(2 * p - 1)
    return mp.findroot(lambda z: mp.log(mp.ncdf(z)) - mp.log(p), guess, tol=mp.mpf(10) ** -40)


def quantile_bisect(p, lo=-40, hi=40, steps=200):
    p = mp.mpf(p)
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    for _ in range(steps):
        mid = (lo + hi) / 2
        if mp.ncdf(mid) < p:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def replication(effect, sd, n, k, alpha):
    sem = mp.mpf(sd) / mp.sqrt(n)
    return cdf(abs(mp.mpf(effect)) / (sem * mp.sqrt(k)) + quantile(alpha))


def raw_n(effect, sd, alpha, power, k):
    return k * (mp.mpf(sd) * (quantile(power) - quantile(alpha)) / abs(mp.mpf(effect))) ** 2
