"""Independent reference computations for the frozen test values.

Nothing here imports the C++ library. Values printed by this script are pinned
in tests/unit and tests/acceptance.

Run: python3 tests/oracles/reference_values.py
"""

import math

import numpy as np
from scipy.integrate import solve_ivp


def mu_auto(t):
    return 1.0


def mu_nonauto(t):
    return 1.0 - math.sin(t)


def f0(sigma):
    return 1.0 - sigma


# --- Splitting iteration written directly from the x_k / f_k update rule ----


def split_scalar(b, mu, point, t_end, n, q=1):
    """Scalar sequential splitting for u' = b u + Phi(t) u_t, s = 0, x = 1."""
    h = t_end / n
    delta = h / q
    m = round(1.0 / delta)
    sig = np.linspace(-1.0, 0.0, m + 1)
    f = np.array([f0(s) for s in sig])
    x = 1.0
    heads = [x]
    for k in range(n):
        r = k * h
        if point:
            phi = mu(r) * f[0]
        else:
            w = np.full(m + 1, delta)
            w[0] = w[-1] = delta / 2
            phi = mu(r) * np.dot(w, f)
        y = x + h * phi
        x = math.exp(h * b) * y
        newf = np.zeros_like(f)
        for i, s in enumerate(sig):
            if s >= -h - 1e-12:
                newf[i] = math.exp((h + s) * b) * y
            else:
                newf[i] = f[i + q]
        f = newf
        heads.append(x)
    return np.array(heads), f


# --- Augmented ODE valid on [0, 1]: the delay window only reaches into f ----


def rhs_dist(mu):
    # u' = -u + mu(t) (G(t) + v), v' = u, G(t) = int_{t-1}^0 (1 - r) dr
    def rhs(t, y):
        g = -(t - 1.0) + (t - 1.0) ** 2 / 2.0
        return [-y[0] + mu(t) * (g + y[1]), y[0]]

    return rhs


def rhs_point(mu):
    def rhs(t, y):
        return [-y[0] + mu(t) * f0(t - 1.0), 0.0]

    return rhs


def ode_solution(rhs, t_end):
    sol = solve_ivp(rhs, (0.0, t_end), [1.0, 0.0], method="DOP853",
                    rtol=1e-13, atol=1e-14, dense_output=True)
    return sol


def local_error(h, mu=mu_auto):
    """Product-norm one-step error at t = h, head and history."""
    sol = ode_solution(rhs_dist(mu), 1.0)
    x1 = math.exp(-h) * (1.0 + h * mu(0.0) * 1.5)
    head = abs(x1 - sol.sol(h)[0])
    # history on [-h, 0] vs exact; nodes with sigma < -h are exact shifts
    ss = np.linspace(-h, 0.0, 2001)
    split = np.exp(-(h + ss)) * (1.0 + h * mu(0.0) * 1.5)
    exact = sol.sol(h + ss)[0]
    hist = np.trapz(np.abs(split - exact), ss)
    return head, head + hist


def main():
    np.set_printoptions(precision=17)
    print("apply_T example history node sigma=0:", math.exp(-0.5))
    print("split_step head:", 1.75 * math.exp(-0.5))

    heads, _ = split_scalar(-1.0, mu_auto, False, 1.0, 2)
    print("dist-auto n=2 heads:", repr(heads))
    # hand unroll: step 2 uses f1 = [1.5, 1, e^-0.5] * ... on delta = 0.5
    y0 = 1.0 + 0.5 * 1.5
    x1 = math.exp(-0.5) * y0
    f1 = [1.5, y0, x1]
    phi1 = 0.5 * (0.5 * f1[0] + f1[1] + 0.5 * f1[2])
    x2 = math.exp(-0.5) * (x1 + 0.5 * phi1)
    print("hand unroll x2:", repr(x2))

    for name, rhs in [("dist-auto", rhs_dist(mu_auto)),
                      ("dist-nonauto", rhs_dist(mu_nonauto)),
                      ("point-auto", rhs_point(mu_auto)),
                      ("point-nonauto", rhs_point(mu_nonauto))]:
        sol = ode_solution(rhs, 1.0)
        print(f"u(1) {name}: {sol.y[0, -1]!r}")

    for h in [1 / 16, 1 / 32, 1 / 64, 1 / 128]:
        print("local error h=", h, local_error(h))

    # long-time behaviour from the splitting iteration itself
    for name, mu, point in [("dist-auto", mu_auto, False),
                            ("dist-nonauto", mu_nonauto, False),
                            ("point-auto", mu_auto, True),
                            ("point-nonauto", mu_nonauto, True)]:
        heads, _ = split_scalar(-1.0, mu, point, 50.0, 6400)
        d = np.diff(heads)
        sgn = np.sign(d)
        sgn = sgn[sgn != 0]
        changes = int(np.sum(sgn[1:] != sgn[:-1]))
        print(f"long {name}: min {heads.min():.6f} max {heads.max():.6f} "
              f"final {heads[-1]:.6f} sign changes {changes}")
        if name == "dist-auto":
            auto = heads
        if name == "dist-nonauto":
            print("  sup |auto - nonauto|:", np.max(np.abs(auto - heads)))


if __name__ == "__main__":
    main()
