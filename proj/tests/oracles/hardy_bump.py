# Independent oracle: Hardy integrals of bump(1,2) on (d,k,mu)=(1,1,1) by direct (s,t) double quadrature.
from mpmath import mp, mpf, quad, exp, sqrt
mp.dps = 25
def S(tau):
    if tau <= 0: return mpf(0)
    if tau >= 1: return mpf(1)
    return 1/(1+exp(1/tau - 1/(1-tau)))
def dS(tau):
    if tau <= 0 or tau >= 1: return mpf(0)
    s = S(tau); return s*(1-s)*(1/tau**2 + 1/(1-tau)**2)
def u(r):  return mpf(1) if r <= 1 else (mpf(0) if r >= 2 else S(2 - r))
def du(r): return mpf(0) if (r <= 1 or r >= 2) else -dS(2 - r)
rho = lambda s, t: (s**4 + 4*t**2) ** mpf('0.25')
T = lambda R, s: sqrt(max(R**4 - s**4, 0)) / 2
def integral(f):
    def inner(s):
        pts = [0, T(1, s), T(2, s)] if s < 1 else [0, T(2, s)]
        return quad(lambda t: f(s, t), pts)
    return 4 * quad(inner, [0, 1, 2])
lhs = integral(lambda s, t: (s/rho(s,t))**2 * rho(s,t)**-2 * u(rho(s,t))**2)
grad = integral(lambda s, t: du(rho(s,t))**2 * (s/rho(s,t))**2)
print(mp.nstr(lhs, 15), mp.nstr(grad, 15))
