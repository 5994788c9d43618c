"""Independent high-precision reference values frozen into the C++ tests.

Run with: python3 tests/oracles/compute_oracles.py
Uses mpmath (and scipy for the circle case); nothing here calls into the C++ library.
"""
import mpmath as mp

mp.mp.dps = 30
inf = mp.inf


def stable_half(t, x, scale=1):
    # density of a stable-1/2 subordinator with Laplace exponent sqrt(2 lambda)
    if x <= 0:
        return mp.mpf(0)
    return t / mp.sqrt(2 * mp.pi * x**3) * mp.e**(-t * t / (2 * x))


def gamma_drift(t, x, shape=1, rate=1, drift=0):
    y = x - drift * t
    if y <= 0:
        return mp.mpf(0)
    a = shape * t
    return rate**a * y**(a - 1) * mp.e**(-rate * y) / mp.gamma(a)


def wilson(k, n, z):
    p = mp.mpf(k) / n
    denom = 1 + z * z / n
    centre = (p + z * z / (2 * n)) / denom
    half = z / denom * mp.sqrt(p * (1 - p) / n + z * z / (4 * n * n))
    return centre - half, centre + half


out = {}
out["stable_tail_eps_0.01"] = mp.quad(lambda x: (2 * mp.pi)**-0.5 * x**-1.5, [0.01, inf])
out["gamma_tail_E1(1)"] = mp.quad(lambda x: mp.e**-x / x, [1, inf])
out["stable_half_density(1,1)"] = stable_half(1, 1)
out["stable_half_mass_t1"] = mp.quad(lambda x: stable_half(1, x), [0, 1, inf])
out["bm_ladder(1,1,0)"] = 1 / mp.sqrt(mp.pi) * mp.e**-0.5
out["bm_ladder_level_creep_x=0.7"] = (1 / mp.sqrt(2)) * mp.quad(
    lambda t: 0.7 / mp.sqrt(mp.pi * t**3) * mp.e**(-0.49 / (2 * t)), [0, 1, inf])
z99 = mp.sqrt(2) * mp.erfinv(mp.mpf("0.99"))
out["z99"] = z99
lo, hi = wilson(50, 100, z99)
out["wilson_50_100_lo"] = lo
out["wilson_50_100_hi"] = hi
lo, hi = wilson(3, 1000, z99)
out["wilson_3_1000_lo"] = lo
out["wilson_3_1000_hi"] = hi

# example a) through f = 1/t^2
out["stable_curve_total"] = mp.quad(lambda t: mp.sqrt(2 / mp.pi) * t * mp.e**(-t**4 / 2), [0, 1, inf])
out["stable_curve_window_0_1"] = mp.quad(lambda t: mp.sqrt(2 / mp.pi) * t * mp.e**(-t**4 / 2), [0, 1])
# BM at supremum through f = 1/t
bm = lambda t: 1 / mp.sqrt(2 * mp.pi * t**5) * mp.e**(-1 / (2 * t**3))
out["bm_curve_total"] = mp.quad(bm, [0, 1, inf])
out["bm_curve_window_1_inf"] = mp.quad(bm, [1, inf])
out["bm_curve_window_0_10"] = mp.quad(bm, [0, 1, 10])
# BM with drift 0.5: first-passage density of level f(u)=1/u at time u
mu = mp.mpf("0.5")
bmd = lambda u: (1 / u) / mp.sqrt(2 * mp.pi * u**3) * mp.e**(-(1 / u - mu * u)**2 / (2 * u))
out["bm_drift_0.5_curve_total"] = mp.quad(bmd, [0, 1, 10, inf])

# level creeping of gamma(1,1) + drift 0.5 through 1
u1 = mp.quad(lambda t: gamma_drift(t, 1, drift=0.5), [0, 1, 2])
out["gamma_drift_level_total"] = 0.5 * u1
out["gamma_drift_level_window_0.5_1.5"] = 0.5 * mp.quad(lambda t: gamma_drift(t, 1, drift=0.5), [0.5, 1, 1.5])

# shifted drift: stable-1/2 minus 0.5 t through 1 - t  <=>  S + 0.5 t creeps level 1
out["shifted_drift_level"] = 0.5 * mp.quad(lambda t: stable_half(t, 1 - 0.5 * t), [0, 1, 2])

# compound Poisson exp(theta) jumps, rate lam, drift d: level creeping, closed form
lam, theta, d, x = mp.mpf(1), mp.mpf(2), mp.mpf("0.5"), mp.mpf(1)
k = theta + lam / d
out["cp_exp_level_closed"] = (theta + (lam / d) * mp.e**(-k * x)) / k
# same via atom + absolutely continuous part (series form, independent of Bessel)
def cp_ac(t, xx, lam=lam, theta=theta, d=d):
    y = xx - d * t
    if y <= 0:
        return mp.mpf(0)
    return mp.nsum(lambda n: mp.e**(-lam * t) * (lam * t)**n / mp.factorial(n)
                   * theta**n * y**(n - 1) * mp.e**(-theta * y) / mp.factorial(n - 1), [1, inf])
out["cp_exp_level_atom_plus_ac"] = mp.e**(-lam * x / d) + d * mp.quad(lambda t: cp_ac(t, x), [0, x / d])
# through decreasing curve f(t) = 1/(1+t): root of d t = f(t)
f = lambda t: 1 / (1 + t)
fp = lambda t: -1 / (1 + t)**2
tstar = mp.findroot(lambda t: d * t - f(t), 1)
out["cp_curve_tstar"] = tstar
out["cp_curve_creep"] = mp.e**(-lam * tstar) + mp.quad(lambda t: cp_ac(t, f(t)) * (d - fp(t)), [0, tstar])

# circle through gamma(1,1)+0.3 pair, a = 2 (independent coordinates).
# Double-precision scipy with s = w^8 at the support edge, where the inner
# integrand behaves like s^(t-1) with t close to 0 for small radii.
import numpy as np
from scipy import integrate as si
from scipy.special import gammaln

dd = 0.3


def lg(t, y):
    return (t - 1) * np.log(y) - y - gammaln(t)


def v_pair(y, z, K=8.0):
    m, M = min(y, z), max(y, z)

    def f(w):
        if w <= 0:
            return 0.0
        s = w**K
        t = (m - s) / dd
        if t <= 0:
            return 0.0
        return np.exp(lg(t, s) + np.log(K) + (K - 1) * np.log(w) + lg(t, M - dd * t)) / dd

    return si.quad(f, 0, m**(1 / K), limit=500, epsabs=1e-15, epsrel=1e-13)[0]


a = 2.0
term1 = si.quad(lambda u: v_pair(u, np.sqrt(a * a - u * u)), 0, a, limit=500, epsabs=1e-14,
                epsrel=1e-12, points=[0.01, 0.1, 0.5, 1, 1.5, 1.9, 1.99])[0]
term2 = si.quad(lambda th: a * np.sin(th) * v_pair(a * np.sin(th), a * np.cos(th)), 0, np.pi / 2,
                limit=500, epsabs=1e-14, epsrel=1e-12,
                points=[0.005, 0.05, np.pi / 8, np.pi / 4, 3 * np.pi / 8])[0]
out["circle_gamma_pair"] = mp.mpf(dd * term1 + dd * term2)

for k_, v_ in out.items():
    print(f"{k_} = {mp.nstr(v_, 17)}")
