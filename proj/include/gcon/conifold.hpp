#pragma once

#include <vector>

#include "latops.hpp"

namespace gcon {

template <class Real>
struct ModelParams {
    int N = 1;
    Real q = Real(0.5);
    std::vector<Real> Q{Real(1) / Real(3)};  // Q_1..Q_{2N-1}

    void validate() const {
        if (N < 1) throw config_error("N must be positive");
        require_q(q);
        if (int(Q.size()) != 2 * N - 1)
            throw config_error("expected " + std::to_string(2 * N - 1) + " Kahler parameters, got " +
                               std::to_string(Q.size()));
        for (auto& x : Q)
            if (!(x > Real(0))) throw config_error("Kahler parameters must be positive");
    }
    // Q^(n) = Q_1 ... Q_{n-1}, Q^(1) = 1
    Real Qcum(int n) const {
        Real r(1);
        for (int i = 1; i < n; ++i) r *= Q.at(i - 1);
        return r;
    }
    // Q_1 ... Q_{2N-1}
    Real P() const { return Qcum(2 * N); }
    // (-1)^N Q_2 Q_4 ... Q_{2N-2}
    Real D() const {
        Real r = N % 2 ? Real(-1) : Real(1);
        for (int n = 2; n <= 2 * N - 2; n += 2) r *= Q.at(n - 1);
        return r;
    }
};

/// The generalized conifold matrix, with q^(+-Delta^2/2) applied as a conjugation.
template <class Real>
Operator<Real> build_U(const ModelParams<Real>& p, Window w) {
    p.validate();
    const Real one(1);
    Operator<Real> x = identity<Real>(w);
    for (int k = 1; k <= p.N; ++k) {
        x = x * gamma_op(-1, false, one, p.q, w) * gamma_op(1, false, one, p.q, w) *
            power_delta(p.Q[2 * k - 2], w) * gamma_op(-1, true, one, p.q, w) * gamma_op(1, true, one, p.q, w);
        if (k < p.N) x = x * power_delta(p.Q[2 * k - 1], w);
    }
    return conj_qdelta_sq(x, p.q);
}

template <class Real>
struct InitialDressing {
    Operator<Real> W0, W0inv, Wbar0, Wbar0inv;
};

template <class Real>
InitialDressing<Real> build_dressing(const ModelParams<Real>& p, Window w) {
    p.validate();
    const Real one(1);
    const auto& q = p.q;
    Operator<Real> a = identity<Real>(w), ai = a, b = a, bi = a;
    for (int n = 1; n <= p.N; ++n) {
        Real Qo = p.Qcum(2 * n - 1), Qe = p.Qcum(2 * n);
        a = a * gamma_op(-1, false, Qo, q, w, true) * gamma_op(-1, true, Qe, q, w, true);
        ai = gamma_op(-1, true, Qe, q, w) * gamma_op(-1, false, Qo, q, w) * ai;
        b = b * gamma_op(1, false, one / Qo, q, w) * gamma_op(1, true, one / Qe, q, w);
        bi = gamma_op(1, true, one / Qe, q, w, true) * gamma_op(1, false, one / Qo, q, w, true) * bi;
    }
    const Real P = p.P();
    InitialDressing<Real> d;
    d.W0 = conj_qdelta_sq(a, q);
    d.W0inv = conj_qdelta_sq(ai, q);
    d.Wbar0 = conj_qdelta_sq(b * power_delta(P, w), q);
    d.Wbar0inv = conj_qdelta_sq(power_delta(one / P, w) * bi, q);
    return d;
}

template <class Real>
Operator<Real> build_W0(const ModelParams<Real>& p, Window w) {
    return build_dressing(p, w).W0;
}
template <class Real>
Operator<Real> build_Wbar0(const ModelParams<Real>& p, Window w) {
    return build_dressing(p, w).Wbar0;
}

// One bidiagonal factor (1 + c * diag(f) * Lambda^k) or with the diagonal on the right.
template <class Real>
Operator<Real> bidiag(const Real& c, const Operator<Real>& diag, int k, bool diag_left = true) {
    auto L = shift<Real>(k, diag.w);
    return identity<Real>(diag.w) + c * (diag_left ? diag * L : L * diag);
}

/// Every equivalent form of the initial Lax operators. Names follow the
/// rewriting chain: dressing, conjugated dilogarithms, conjugated rational,
/// rational with q^(Delta+1/2) outside, rational, symmetric, and (B, C) form.
template <class Real>
struct InitialLax {
    std::vector<std::pair<std::string, Operator<Real>>> L, Lbarinv;
};

// Built on a padded window so that Lambda^N does not eat the edge bands.
template <class Real>
Operator<Real> build_B0_on(const ModelParams<Real>& p, Window w) {
    Window pw{w.lo - 2 * p.N, w.hi + 2 * p.N};
    auto qD = qdelta(p.q, pw);
    Operator<Real> B = identity<Real>(pw);
    for (int n = 1; n <= p.N; ++n) B = B * bidiag(-p.Qcum(2 * n - 1), qD, -1);
    return restrict(Operator<Real>(B * shift<Real>(p.N, pw)), w);
}

template <class Real>
Operator<Real> build_C0_on(const ModelParams<Real>& p, Window w) {
    auto qD = qdelta(p.q, w);
    Operator<Real> C = identity<Real>(w);
    for (int n = 1; n <= p.N; ++n) C = C * bidiag(p.Qcum(2 * n), qD, -1, false);
    return C;
}

template <class Real>
InitialLax<Real> initial_lax_products(const ModelParams<Real>& p, Window w) {
    p.validate();
    const Real one(1), half(0.5);
    const auto& q = p.q;
    const int N = p.N;
    auto I = identity<Real>(w);
    auto Lam = shift<Real>(1, w), Lami = shift<Real>(-1, w);
    auto qD = qdelta(q, w), qmD = qdelta(one / q, w);
    const Real qmh = rpow(q, -half), P = p.P();
    auto dr = build_dressing(p, w);
    InitialLax<Real> out;

    out.L.push_back({"dressing", dr.W0 * Lam * dr.W0inv});
    {
        Operator<Real> a = I, ai = I;
        for (int n = 1; n <= N; ++n) {
            a = a * gamma_op(-1, false, p.Qcum(2 * n - 1), q, w, true) * gamma_op(-1, true, p.Qcum(2 * n), q, w, true);
            ai = ai * gamma_op(-1, true, p.Qcum(2 * n), q, w) * gamma_op(-1, false, p.Qcum(2 * n - 1), q, w);
        }
        out.L.push_back({"conjugated dilogarithms", conj_qdelta_sq(Operator<Real>(a * qdelta(q, w, half) * ai * Lam), q)});
    }
    {
        Operator<Real> r = qdelta(q, w, half);
        for (int n = 1; n <= N; ++n)
            r = r * (I - (p.Qcum(2 * n - 1) * qmh) * Lami) *
                invert_triangular(Operator<Real>(I + (p.Qcum(2 * n) * qmh) * Lami), Side::lower);
        out.L.push_back({"conjugated rational", conj_qdelta_sq(Operator<Real>(r * Lam), q)});
    }
    {
        auto qDm1 = qdelta(q, w, Real(-1));
        Operator<Real> r = qdelta(q, w, half);
        for (int n = 1; n <= N; ++n)
            r = r * bidiag(-p.Qcum(2 * n - 1), qDm1, -1) *
                invert_triangular(bidiag(p.Qcum(2 * n), qDm1, -1), Side::lower);
        out.L.push_back({"rational, q^(Delta+1/2) outside", r * qdelta(one / q, w, half) * Lam});
    }
    {
        Operator<Real> r = I;
        for (int n = 1; n <= N; ++n)
            r = r * bidiag(-p.Qcum(2 * n - 1), qD, -1) * invert_triangular(bidiag(p.Qcum(2 * n), qD, -1), Side::lower);
        out.L.push_back({"rational", r * Lam});
    }
    {
        Operator<Real> l = I, r = I;
        for (int n = 1; n <= N; ++n) {
            l = l * bidiag(-p.Qcum(2 * n - 1), qD, -1);
            r = r * bidiag(p.Qcum(2 * n), qD, -1, false);
        }
        out.L.push_back({"symmetric", l * Lam * invert_triangular(r, Side::lower)});
    }
    {
        auto B = build_B0_on(p, w), C = build_C0_on(p, w);
        out.L.push_back({"B Lambda^(1-N) C^-1", B * shift<Real>(1 - N, w) * invert_triangular(C, Side::lower)});
    }

    out.Lbarinv.push_back({"dressing", dr.Wbar0 * Lami * dr.Wbar0inv});
    {
        Operator<Real> b = I, bi = I;
        for (int n = 1; n <= N; ++n) {
            b = b * gamma_op(1, false, one / p.Qcum(2 * n - 1), q, w) * gamma_op(1, true, one / p.Qcum(2 * n), q, w);
            bi = bi * gamma_op(1, true, one / p.Qcum(2 * n), q, w, true) *
                 gamma_op(1, false, one / p.Qcum(2 * n - 1), q, w, true);
        }
        out.Lbarinv.push_back(
            {"conjugated dilogarithms", P * conj_qdelta_sq(Operator<Real>(b * qdelta(one / q, w, -half) * bi * Lami), q)});
    }
    {
        Operator<Real> r = qdelta(one / q, w, -half);
        for (int n = 1; n <= N; ++n)
            r = r * invert_triangular(Operator<Real>(I - (qmh / p.Qcum(2 * n - 1)) * Lam), Side::upper) *
                (I + (qmh / p.Qcum(2 * n)) * Lam);
        out.Lbarinv.push_back({"conjugated rational", P * conj_qdelta_sq(Operator<Real>(r * Lami), q)});
    }
    {
        auto qmDm1 = qdelta(one / q, w, Real(1));  // q^(-Delta-1)
        Operator<Real> r = qdelta(one / q, w, -half);
        for (int n = 1; n <= N; ++n)
            r = r * invert_triangular(bidiag(-one / p.Qcum(2 * n - 1), qmDm1, 1), Side::upper) *
                bidiag(one / p.Qcum(2 * n), qmDm1, 1);
        out.Lbarinv.push_back({"rational, q^(-Delta+1/2) outside", P * (r * qdelta(q, w, -half) * Lami)});
    }
    {
        Operator<Real> r = I;
        for (int n = 1; n <= N; ++n)
            r = r * invert_triangular(bidiag(-one / p.Qcum(2 * n - 1), qmD, 1), Side::upper) *
                bidiag(one / p.Qcum(2 * n), qmD, 1);
        out.Lbarinv.push_back({"rational", P * (r * Lami)});
    }
    {
        Operator<Real> l = I, r = I;
        for (int n = 1; n <= N; ++n) {
            l = l * bidiag(one / p.Qcum(2 * n), qmD, 1);
            r = r * bidiag(-one / p.Qcum(2 * n - 1), qmD, 1, false);
        }
        out.Lbarinv.push_back({"symmetric", P * (l * Lami * invert_triangular(r, Side::upper))});
    }
    {
        auto B = build_B0_on(p, w), C = build_C0_on(p, w);
        out.Lbarinv.push_back(
            {"D C Lambda^(N-1) B^-1", p.D() * (C * shift<Real>(N - 1, w) * invert_triangular(B, Side::upper))});
    }
    return out;
}

/// (q^M0, q^-Mbar0) by dressing and by the closed product forms.
template <class Real>
struct OrlovSchulman {
    Operator<Real> qM_dressing, qM_product, qMbar_dressing, qMbar_product;
};

template <class Real>
OrlovSchulman<Real> orlov_schulman_init(const ModelParams<Real>& p, Window w) {
    p.validate();
    const Real one(1);
    auto dr = build_dressing(p, w);
    auto I = identity<Real>(w);
    auto qD = qdelta(p.q, w), qmD = qdelta(one / p.q, w);
    OrlovSchulman<Real> o;
    o.qM_dressing = dr.W0 * qD * dr.W0inv;
    o.qMbar_dressing = dr.Wbar0 * qmD * dr.Wbar0inv;
    Operator<Real> a = I, b = I;
    for (int n = 1; n <= p.N; ++n) {
        a = a * bidiag(-p.Qcum(2 * n - 1), qD, -1) * invert_triangular(bidiag(p.Qcum(2 * n), qD, -1), Side::lower);
        b = b * invert_triangular(bidiag(-one / p.Qcum(2 * n - 1), qmD, 1), Side::upper) *
            bidiag(one / p.Qcum(2 * n), qmD, 1);
    }
    o.qM_product = a * qD;
    o.qMbar_product = b * qmD;
    return o;
}

}  // namespace gcon
