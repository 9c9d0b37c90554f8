"""Independent sympy oracle for the golden files in tests/golden.

delta/eps come from the theta series sums (not the products); the Phi series
come from the theta-quotient products expanded directly in z, with the
logarithm taken afterwards and expressed through power sums.
"""
import json
import pathlib
import sys

import sympy as sp
from sympy import Rational as R

h, z = sp.symbols("h z")  # h = q^(1/2), z = pi x
OUT = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).parent.parent / "golden")


def trunc_h(e, K):
    p = sp.Poly(sp.expand(e), h)
    return sum(c * h**a for (a,), c in p.terms() if a <= K)


def delta_eps(K):
    n_max = int(K**0.5) + 2
    # theta1(0)/q^(1/8) = 2 sum_{n>=0} q^{n(n+1)/2}, theta2/3(0) = sum (-+1)^n q^{n^2/2}
    t1 = 2 * sum(h ** (n * (n + 1)) for n in range(n_max + 1))
    t2 = 1 + 2 * sum((-1) ** n * h ** (n * n) for n in range(1, n_max + 1))
    t3 = 1 + 2 * sum(h ** (n * n) for n in range(1, n_max + 1))
    t1_4 = h * t1**4  # (q^{1/8})^4 = q^{1/2}
    forms = {
        "delta1": R(1, 8) * (t2**4 + t3**4),
        "eps1": R(1, 16) * t2**4 * t3**4,
        "delta2": -R(1, 8) * (t1_4 + t3**4),
        "eps2": R(1, 16) * t1_4 * t3**4,
    }
    out = {}
    for name, f in forms.items():
        s = trunc_h(f, K)
        out[name] = {str(k): str(s.coeff(h, k)) for k in range(K + 1)}
    return out


def quotient(kind, K):
    """Theta quotient at root z as a rational expression in (z, h), truncated products."""
    c2 = sp.cos(2 * z)
    f = sp.Integer(1)
    if kind == "witten":
        f = z / sp.sin(z)
        for j in range(1, K // 2 + 1):
            f *= (1 - h ** (2 * j)) ** 2 / (1 - 2 * c2 * h ** (2 * j) + h ** (4 * j))
    elif kind == "b1":
        f = sp.cos(z)
        for j in range(1, K // 2 + 1):
            f *= (1 + 2 * c2 * h ** (2 * j) + h ** (4 * j)) / (1 + h ** (2 * j)) ** 2
    else:
        s = -1 if kind == "b2" else 1
        for j in range(1, (K + 1) // 2 + 1):
            e = 2 * j - 1
            f *= (1 + 2 * s * c2 * h**e + h ** (2 * e)) / (1 + s * h**e) ** 2
    return f


def log_coeffs(kind, n, K):
    """c_k(h) with log quotient = sum_k c_k z^{2k}, k = 1..n."""
    L = sp.series(sp.log(quotient(kind, K)), z, 0, 2 * n + 1).removeO()
    out = []
    for k in range(1, n + 1):
        c = sp.series(sp.expand(L.coeff(z, 2 * k)), h, 0, K + 1).removeO()
        out.append(sp.expand(c))
    return out


def phi_top(r, theta_block, K):
    eps = sp.Symbol("eps")  # degree marker, t_k and e_k carry eps^k
    ts = sp.symbols("t1:%d" % (r + 1))
    es = sp.symbols("e1:%d" % (r + 1))
    wit = log_coeffs("witten", r, K)
    blk = log_coeffs(theta_block, r, K)
    Lt = sum((wit[k - 1] + blk[k - 1]) * ts[k - 1] * eps**k for k in range(1, r + 1))
    E = sum(blk[k - 1] * es[k - 1] * eps**k for k in range(2, r + 1))

    def tr(e):
        p = sp.Poly(sp.expand(e), h, eps)
        return sum(c * h**a * eps**b for (a, b), c in p.terms() if a <= K and b <= r)

    T, term = sp.Integer(1), sp.Integer(1)
    for n in range(1, r + 1):
        term = tr(term * Lt / n)
        T = tr(T + term)
    top = sp.expand(tr(T * E)).coeff(eps, r)
    gens = ["e%d" % k for k in range(2, r + 1)] + ["t%d" % k for k in range(1, r + 1)]
    syms = [sp.Symbol(g) for g in gens]
    out = {}
    for k in range(K + 1):
        c = sp.expand(top.coeff(h, k))
        terms = {}
        if c != 0:
            for mon, v in sp.Poly(c, *syms).terms():
                parts = []
                for g, e in zip(gens, mon):
                    if e:
                        parts.append(g if e == 1 else "%s^%d" % (g, e))
                terms["*".join(parts) or "1"] = str(v)
        out[str(k)] = terms
    return out


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "delta_eps.json").write_text(json.dumps({"q_order_half": 10, "forms": delta_eps(10)}, indent=2, sort_keys=True) + "\n")
    for r in (1, 2, 3):
        K = 6
        data = {"r": r, "q_order_half": K, "e_model": "odd",
                "phi_W_top": phi_top(r, "b2", K), "phi_L_top": phi_top(r, "b1", K)}
        (OUT / ("phi_r%d.json" % r)).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
