"""Regenerate the frozen reference values used by the test suite.

Everything here goes through mpmath at high precision and never touches the
package under test, so the numbers are an independent route. Run with
``python3 tests/oracles/compute_fixtures.py``; output is the literal dict
pasted into ``tests/fixtures.py``.
"""

import mpmath as mp

mp.mp.dps = 50


def moment(alpha, t=0, c=1):
    """int_0^1 r^(alpha+t) exp(-c/r) dr by quadrature after r = 1/x."""
    a = mp.mpf(alpha) + t
    if c == 0:
        return 1 / (a + 1)
    f = lambda x: x ** (-a - 2) * mp.exp(-c * x)
    return mp.quad(f, [1, 2, 10, 100, mp.inf])


def upper_gamma(s, x):
    """Gamma(s, x) without mpmath.gammainc, which loses all accuracy for large
    x and negative s (it returns 0 for Gamma(-72, 172) at 50 digits).

    Positive integer s: the finite sum (s-1)! e^-x sum_{i<s} x^i/i!.
    Otherwise: x^(s-1) e^-x int_0^inf (1 + v/x)^(s-1) e^-v dv, a smooth integrand.
    """
    x = mp.mpf(x)
    if s == int(s) and s > 0:
        s = int(s)
        term, acc = mp.mpf(1), mp.mpf(1)
        for i in range(1, s):
            term *= x / i
            acc += term
        return mp.factorial(s - 1) * mp.exp(-x) * acc
    f = lambda v: (1 + v / x) ** (s - 1) * mp.exp(-v)
    return x ** (s - 1) * mp.exp(-x) * mp.quad(f, [0, 1, 10, 100, mp.inf])


def moment_gamma(alpha, t=0, c=1):
    a = mp.mpf(alpha) + t
    return mp.mpf(c) ** (a + 1) * upper_gamma(-a - 1, c)


def diag_series(r, c=1, t=0):
    """2 pi B(r, r) on the punctured disc: sum_n r^(2n) / M(2n+1)."""
    r = mp.mpf(r)
    total = mp.mpf(0)
    n = 0
    while True:
        term = r ** (2 * n) / moment_gamma(2 * n + 1, t, c)
        total += term
        if n > 5 and term < total * mp.mpf(10) ** -30:
            break
        n += 1
    n = -1
    while True:
        term = r ** (2 * n) / moment_gamma(2 * n + 1, t, c)
        total += term
        if n < -5 and term < total * mp.mpf(10) ** -30:
            break
        n -= 1
    return total


def closed(r):
    r = mp.mpf(r)
    return r**-3 * mp.sinh(1 / r) + (1 - r * r) ** -2


def hinf_diag(r, q):
    """B_{H_inf}(z, z) with |z1| = r, |z2| = q, summed fiber by fiber."""
    r, q = mp.mpf(r), mp.mpf(q)
    total = mp.mpf(0)
    m = 0
    while True:
        c = 2 * m + 2
        term = q ** (2 * m) * c / (2 * mp.pi) * diag_series(r, c=c) / (2 * mp.pi)
        total += term
        if m > 3 and term < total * mp.mpf(10) ** -20:
            break
        m += 1
    return total


class _Printer(dict):
    def __setitem__(self, name, value):
        print(f"    {name!r}: {mp.nstr(value, 30)!r},", flush=True)
        super().__setitem__(name, value)


def main():
    out = _Printer()
    out["log_gamma_171_5"] = mp.log(mp.sqrt(mp.pi) * mp.fprod(mp.mpf(k) + mp.mpf(1) / 2 for k in range(171)))
    out["upper_gamma_m3_1"] = mp.quad(lambda u: u**-4 * mp.exp(-u), [1, 10, 100, mp.inf])
    out["upper_gamma_m3_1_gammainc"] = mp.gammainc(-3, 1)
    out["I0"] = moment(0)
    out["I0_identity"] = mp.exp(-1) - mp.e1(1)  # e^-1 - Gamma(0, 1)
    out["I_m10"] = moment(-10)
    out["I_m5"] = moment(-5)
    out["I_21"] = moment(21)
    out["I_m3"] = moment(-3)
    out["log_I_m2001"] = mp.log(moment_gamma(-2001))
    out["log_I_1999"] = mp.log(moment_gamma(1999))
    out["log_gamma_598"] = mp.loggamma(598)
    for r in (0.05, 0.1, 0.3, 0.5, 0.9, 0.95):
        out[f"diag_ratio_{r}"] = diag_series(r) / closed(r)
    out["sinh_series_0.2"] = mp.nsum(lambda k: mp.mpf(0.2) ** (-2 * k - 2) / mp.gamma(2 * k), [1, mp.inf])
    out["poly_t05_w025"] = mp.nsum(lambda n: (2 * n + 2.5) * mp.mpf(0.25) ** n, [-1, mp.inf]) / (2 * mp.pi)
    out["hinf_norm_000_2"] = (2 * mp.pi) ** 2 / 2 * moment_gamma(1, c=2)
    out["hinf_norm_m5_0_2"] = (2 * mp.pi) ** 2 / 2 * moment_gamma(-9, c=2)
    out["hinf_diag_05_09e2"] = hinf_diag(0.5, 0.9 * mp.exp(-2))
    out["hinf_diag_05_0"] = diag_series(0.5, c=2) * 2 / (2 * mp.pi) ** 2
    out["rho_3_3"] = 18 * mp.log(mp.mpf(3) / 4) + 6 * mp.log(2) + 6 * mp.log(mp.mpf(3) / 2)
    out["rho_3_2"] = 12 * mp.log(mp.mpf(3) / 4) + 4 * mp.log(2)
    # test-family ratio at (j, k, p) = (3, 7, 3), lambda-tilde, indices shifted by 2
    j, k, p = 3, 7, 3
    a, b, c, d = (-2 * j * k + 3, -(j + 1) * p * k + 3, -2 * (j + 1) * k + 3, -(j - 1) * p * k + 3)
    out["log_ratio_tilde_3_7_3"] = p * mp.log(moment(a)) + mp.log(moment(b)) - p * mp.log(moment(c)) - mp.log(moment(d))
    out["hartogs_t2_diag_05_0"] = (1 / mp.mpf(0.25)) * (1 / mp.pi) / mp.mpf(0.25) / (1 - mp.mpf(0.25)) ** 2 / mp.pi


if __name__ == "__main__":
    main()
