"""Independent oracle for the trigonometric/Walsh Dirichlet L1 norms.

||D_N^T||_1 with D_N^T(x) = sum_{k=1}^N cos(2 pi k x) is integrated between the zeros
of the closed form sin(N pi x) cos((N+1) pi x) / sin(pi x), namely j/N and
(j+1/2)/(N+1), so no kink falls inside a quadrature interval. Zeros can be ~1/(2N^2)
apart, which is why grid bracketing is not used. The closed form is checked against
the raw cosine sum and the sign is checked to be constant on each interval.
||D_N^W||_1 is computed by summing the Walsh functions cell by cell over the
2^(n+1) dyadic cells.
"""
import mpmath as mp

mp.mp.dps = 20


def d_t(N, x):
    return mp.fsum(mp.cos(2 * mp.pi * k * x) for k in range(1, N + 1))


def d_t_closed(N, x):
    t = mp.pi * x
    s = mp.sin(t)
    if abs(s) < mp.mpf(10) ** -25:
        return mp.mpf(N)
    return mp.sin(N * t) * mp.cos((N + 1) * t) / s


def l1_trig(N):
    # D is symmetric about 1/2; integrate |D| over [0, 1/2] and double
    f = lambda x: d_t_closed(N, x)
    half = mp.mpf(1) / 2
    zeros = [mp.mpf(j) / N for j in range(1, N)] + [(j + half) / (N + 1) for j in range(N + 1)]
    pts = sorted(set([mp.mpf(0), half] + [z for z in zeros if 0 < z < half]))
    for x in (mp.mpf(1) / 7, mp.mpf(3) / 11, mp.mpf(2) / 5):
        assert abs(d_t(N, x) - f(x)) < mp.mpf(10) ** -15
    total = mp.mpf(0)
    for a, b in zip(pts, pts[1:]):
        m = [f(a + (b - a) * t) for t in (mp.mpf(1) / 4, half, mp.mpf(3) / 4)]
        assert all(v >= 0 for v in m) or all(v <= 0 for v in m)
        total += abs(mp.quad(f, [a, b]))
    return 2 * total


def walsh(n, j, levels):
    flips = 0
    b = 0
    while n:
        if n & 1 and (j >> (levels - 1 - b)) & 1:
            flips += 1
        n >>= 1
        b += 1
    return -1 if flips % 2 else 1


def l1_walsh(N):
    levels = N.bit_length()
    cells = 1 << levels
    return mp.fsum(abs(sum(walsh(k, j, levels) for k in range(1, N + 1))) for j in range(cells)) / cells


if __name__ == "__main__":
    for n in range(0, 11):
        N = 2 ** n
        t, w = l1_trig(N), l1_walsh(N)
        print(n, mp.nstr(t, 17), mp.nstr(w, 17), mp.nstr(t / w, 17))
