#pragma once

#include <array>
#include <vector>

#include "toda.hpp"

namespace gcon {

/// b_1..b_N, c_1..c_N as functions on the window, plus the constant D.
template <class Real>
struct GALState {
    int N = 1;
    Window w;
    std::vector<std::vector<Real>> b, c;  // b[n-1][s - w.lo]
    Real D = Real(1);

    static GALState zero(int N, Window w, const Real& D) {
        GALState st;
        st.N = N;
        st.w = w;
        st.D = D;
        st.b.assign(N, std::vector<Real>(w.size(), Real(0)));
        st.c = st.b;
        return st;
    }
};

template <class Real>
struct BC {
    Operator<Real> B, C;
};

template <class Real>
BC<Real> assemble(const GALState<Real>& st) {
    Operator<Real> B = shift<Real>(st.N, st.w), C = identity<Real>(st.w);
    for (int n = 1; n <= st.N; ++n)
        for (int s = st.w.lo; s <= st.w.hi; ++s) {
            B.set_band(st.N - n, s, st.b[n - 1][s - st.w.lo]);
            C.set_band(-n, s, st.c[n - 1][s - st.w.lo]);
        }
    return {B, C};
}

/// Read the coefficient bands back out of (B, C).
template <class Real>
GALState<Real> extract(const Operator<Real>& B, const Operator<Real>& C, int N, const Real& D) {
    auto st = GALState<Real>::zero(N, B.w, D);
    for (int n = 1; n <= N; ++n)
        for (int s = B.w.lo; s <= B.w.hi; ++s) {
            st.b[n - 1][s - B.w.lo] = B.band(N - n, s);
            st.c[n - 1][s - B.w.lo] = C.band(-n, s);
        }
    return st;
}

/// (B0, C0, D) of the conifold. Built on a window padded by 2N so the shift
/// Lambda^N inside B0 does not eat the edge bands.
template <class Real>
GALState<Real> initial_BCD(const ModelParams<Real>& p, Window w) {
    p.validate();
    Window big{w.lo - 2 * p.N, w.hi + 2 * p.N};
    auto B = build_B0_on(p, big), C = build_C0_on(p, big);
    auto st = GALState<Real>::zero(p.N, w, p.D());
    for (int n = 1; n <= p.N; ++n)
        for (int s = w.lo; s <= w.hi; ++s) {
            st.b[n - 1][s - w.lo] = B.band(p.N - n, s);
            st.c[n - 1][s - w.lo] = C.band(-n, s);
        }
    return st;
}

template <class Real>
struct GALOps {
    Operator<Real> B, C, Binv, Cinv, Lm, Lp;  // Lm = Lambda^(1-N), Lp = Lambda^(N-1)
    Real D;
};

template <class Real>
GALOps<Real> gal_ops(const GALState<Real>& st, bool need_binv = true) {
    auto [B, C] = assemble(st);
    GALOps<Real> o;
    o.B = B;
    o.C = C;
    o.Cinv = invert_triangular(C, Side::lower);
    if (need_binv) {
        for (int s = st.w.lo; s <= st.w.hi; ++s)
            if (B.at(s, s) == Real(0)) throw numerical_error("b_N vanishes at site " + std::to_string(s));
        o.Binv = invert_triangular(B, Side::upper);
    }
    o.Lm = shift<Real>(1 - st.N, st.w);
    o.Lp = shift<Real>(st.N - 1, st.w);
    o.D = st.D;
    return o;
}

/// L = B Lambda^(1-N) C^-1, Lbar^-1 = D C Lambda^(N-1) B^-1
template <class Real>
std::pair<Operator<Real>, Operator<Real>> lax_from_state(const GALState<Real>& st) {
    auto o = gal_ops(st);
    return {o.B * o.Lm * o.Cinv, o.D * (o.C * o.Lp * o.Binv)};
}

/// The three cyclic arrangements and their barred partners.
template <class Real>
struct Arrangements {
    std::array<Operator<Real>, 3> X, Y;  // X: (P, Q, R) bases; Y: barred bases
};

template <class Real>
Arrangements<Real> arrangements(const GALOps<Real>& o, bool barred_needed = true) {
    Arrangements<Real> a;
    a.X[0] = o.B * o.Lm * o.Cinv;
    a.X[1] = o.Lm * o.Cinv * o.B;
    a.X[2] = o.Cinv * o.B * o.Lm;
    if (barred_needed) {
        a.Y[0] = o.D * (o.C * o.Lp * o.Binv);
        a.Y[1] = o.D * (o.Binv * o.C * o.Lp);
        a.Y[2] = o.D * (o.Lp * o.Binv * o.C);
    }
    return a;
}

template <class Real>
struct Generators {
    Operator<Real> P, Q, R, Pb, Qb, Rb;
};

/// P_k, Q_k, R_k (nonneg parts) and the barred P_k, Q_k, R_k (negative parts).
/// complement = true gives the dual-form projections instead.
template <class Real>
Generators<Real> generators(const GALOps<Real>& o, int k, bool complement = false) {
    auto a = arrangements(o);
    Part pp = complement ? Part::neg : Part::nonneg, pb = complement ? Part::nonneg : Part::neg;
    Generators<Real> g;
    g.P = project(power(a.X[0], k), pp);
    g.Q = project(power(a.X[1], k), pp);
    g.R = project(power(a.X[2], k), pp);
    g.Pb = project(power(a.Y[0], k), pb);
    g.Qb = project(power(a.Y[1], k), pb);
    g.Rb = project(power(a.Y[2], k), pb);
    return g;
}

template <class Real>
Generators<Real> generators(const GALState<Real>& st, int k, bool complement = false) {
    return generators(gal_ops(st), k, complement);
}

template <class Real>
struct RHS {
    GALState<Real> d;       // time derivatives of b_n, c_n
    Operator<Real> dB, dC;  // full matrices, for support diagnostics
    Real support_mass = Real(0);
};

/// dB = P B - B Q, dC = P C - C R (barred versions for tbar flows). The
/// support mass is measured on rows at least `margin` away from the edges.
template <class Real>
RHS<Real> flow_rhs(const GALState<Real>& st, int k, bool barred, bool dual = false, int margin = -1) {
    auto o = gal_ops(st, barred);
    Operator<Real> P, Q, R;
    {
        auto a = arrangements(o, barred);
        const auto& base = barred ? a.Y : a.X;
        Part pp = (barred != dual) ? Part::neg : Part::nonneg;
        P = project(power(base[0], k), pp);
        Q = project(power(base[1], k), pp);
        R = project(power(base[2], k), pp);
    }
    RHS<Real> r;
    if (!dual) {
        r.dB = P * o.B - o.B * Q;
        r.dC = P * o.C - o.C * R;
    } else {
        r.dB = o.B * Q - P * o.B;
        r.dC = o.C * R - P * o.C;
    }
    r.d = extract(r.dB, r.dC, st.N, st.D);
    if (margin < 0) margin = 2 * k * st.N + 2;
    Range in{st.w.lo + margin, st.w.hi - margin};
    if (in.lo <= in.hi) {
        r.support_mass = std::max(out_of_band(r.dB, in, 0, st.N - 1), out_of_band(r.dC, in, -st.N, -1));
    }
    return r;
}

template <class Real>
GALState<Real> axpy(const GALState<Real>& x, const Real& a, const GALState<Real>& y) {
    GALState<Real> r = x;
    for (int n = 0; n < x.N; ++n)
        for (std::size_t i = 0; i < x.b[n].size(); ++i) {
            r.b[n][i] += a * y.b[n][i];
            r.c[n][i] += a * y.c[n][i];
        }
    return r;
}

struct Flow {
    int k = 1;
    bool barred = false;
    double dt = 1e-3;
    int steps = 0;
};

/// Classical RK4 on the coefficient functions.
template <class Real>
GALState<Real> rk4_step(const GALState<Real>& y, int k, bool barred, const Real& dt) {
    const Real h2 = dt / Real(2);
    auto k1 = flow_rhs(y, k, barred).d;
    auto k2 = flow_rhs(axpy(y, h2, k1), k, barred).d;
    auto k3 = flow_rhs(axpy(y, h2, k2), k, barred).d;
    auto k4 = flow_rhs(axpy(y, dt, k3), k, barred).d;
    auto r = axpy(y, dt / Real(6), k1);
    r = axpy(r, dt / Real(3), k2);
    r = axpy(r, dt / Real(3), k3);
    return axpy(r, dt / Real(6), k4);
}

template <class Real>
GALState<Real> integrate(GALState<Real> st, const std::vector<Flow>& flows,
                         const std::function<void(const GALState<Real>&, int, double)>& observe = {}) {
    int idx = 0;
    for (auto& f : flows) {
        for (int i = 0; i < f.steps; ++i) {
            st = rk4_step(st, f.k, f.barred, Real(f.dt));
            if (observe) observe(st, idx, f.dt * (i + 1));
        }
        ++idx;
    }
    return st;
}

/// Lexicographic path to the joint time: every t_k flow, then every tbar_k flow.
inline std::vector<Flow> path_to(const std::vector<double>& t, const std::vector<double>& tbar, double dt) {
    std::vector<Flow> out;
    auto add = [&](const std::vector<double>& v, bool barred) {
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (v[k] == 0) continue;
            int steps = std::max(1, int(std::llround(std::abs(v[k]) / dt)));
            out.push_back({int(k) + 1, barred, v[k] / steps, steps});
        }
    };
    add(t, false);
    add(tbar, true);
    return out;
}

/// The nine zero-curvature combinations for (k, l) by central differences.
/// d/dt_k of a generator is taken along the flow vector: G(x + h f_k) and
/// G(x - h f_k), which is O(h^2) like a step of the flow but never pushes the
/// stiff edge rows through intermediate stages.
template <class Real>
std::vector<Residual> zero_curvature_residuals(const GALState<Real>& st, int k, int l, const Real& h, Range rows,
                                               int nb = 4) {
    auto shifted = [&](int kk, bool barred, const Real& d) { return axpy(st, d, flow_rhs(st, kk, barred).d); };
    auto gens = [&](const GALState<Real>& s, int kk) { return generators(s, kk); };
    auto deriv = [&](int along, bool along_barred, int of) {
        auto a = gens(shifted(along, along_barred, h), of), b = gens(shifted(along, along_barred, -h), of);
        Real f = Real(1) / (Real(2) * h);
        Generators<Real> d;
        d.P = f * (a.P - b.P);
        d.Q = f * (a.Q - b.Q);
        d.R = f * (a.R - b.R);
        d.Pb = f * (a.Pb - b.Pb);
        d.Qb = f * (a.Qb - b.Qb);
        d.Rb = f * (a.Rb - b.Rb);
        return d;
    };
    auto gk = gens(st, k), gl = gens(st, l);
    auto dl_tk = deriv(k, false, l), dk_tl = deriv(l, false, k);
    auto dlb_tbk = deriv(k, true, l), dk_tbl = deriv(l, true, k);
    auto zero = Operator<Real>(st.w);
    std::vector<Residual> out;
    auto add = [&](const std::string& n, const Operator<Real>& e) {
        out.push_back({n, to_double(residual(e, zero, rows, -nb, nb))});
    };
    auto trio = [&](const char* X, auto get, auto getb) {
        std::string x = X;
        add("d" + x + "_l/dt_k - d" + x + "_k/dt_l + [" + x + "_l," + x + "_k]",
            get(dl_tk) - get(dk_tl) + commutator(get(gl), get(gk)));
        add("d" + x + "b_l/dtb_k - d" + x + "b_k/dtb_l + [" + x + "b_l," + x + "b_k]",
            getb(dlb_tbk) - getb(dk_tbl) + commutator(getb(gl), getb(gk)));
        add("d" + x + "b_l/dt_k - d" + x + "_k/dtb_l + [" + x + "b_l," + x + "_k]",
            getb(dl_tk) - get(dk_tbl) + commutator(getb(gl), get(gk)));
    };
    trio("P", [](const Generators<Real>& g) { return g.P; }, [](const Generators<Real>& g) { return g.Pb; });
    trio("Q", [](const Generators<Real>& g) { return g.Q; }, [](const Generators<Real>& g) { return g.Qb; });
    trio("R", [](const Generators<Real>& g) { return g.R; }, [](const Generators<Real>& g) { return g.Rb; });
    return out;
}

/// (Q_k Lambda^(1-N) - Lambda^(1-N) R_k, Lambda^(N-1) Qb_k - Rb_k Lambda^(N-1)) on rows.
template <class Real>
std::pair<Real, Real> qr_relations(const GALState<Real>& st, int k, Range rows, int nb = 6) {
    auto o = gal_ops(st);
    auto g = generators(o, k);
    auto z = Operator<Real>(st.w);
    return {residual(Operator<Real>(g.Q * o.Lm - o.Lm * g.R), z, rows, -nb, nb),
            residual(Operator<Real>(o.Lp * g.Qb - g.Rb * o.Lp), z, rows, -nb, nb)};
}

struct TheoremResult {
    double L, Lbarinv, window_shift;
};

/// gAL integration vs Toda factorization at the same times. The Toda window
/// is only trusted well inside: time dressing amplifies the truncation near the
/// lower edge for t flows and near the upper edge for tbar flows.
/// window_shift reports how much the Toda answer itself moves on `rows` when
/// both edges are pushed out by two sites.
template <class Real, class TodaReal = Real>
TheoremResult theorem_check(const ModelParams<Real>& p, const std::vector<double>& t, const std::vector<double>& tbar,
                            double dt, Window gal_w, Window toda_w, Range rows, int nb = 4, int band_cutoff = 0,
                            double pivot_tol = 1e-13) {
    auto st = integrate(initial_BCD(p, gal_w), path_to(t, tbar, dt));
    auto [Lg, Lbg] = lax_from_state(st);

    ModelParams<TodaReal> pt{p.N, TodaReal(to_double(p.q)), {}};
    for (auto& x : p.Q) pt.Q.push_back(TodaReal(to_double(x)));
    TodaTimes<TodaReal> T;
    for (auto v : t) T.t.push_back(TodaReal(v));
    for (auto v : tbar) T.tbar.push_back(TodaReal(v));
    const TodaReal tol = pivot_tol_for<TodaReal>(pivot_tol);
    auto a = toda_solution(pt, T, toda_w, tol, band_cutoff);
    auto b = toda_solution(pt, T, Window{toda_w.lo - 2, toda_w.hi + 2}, tol, band_cutoff);
    auto mix = [](double x, double y) { return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)}); };
    TheoremResult r{0, 0, 0};
    for (int s = rows.lo; s <= rows.hi; ++s)
        for (int k = -nb; k <= nb; ++k) {
            if (k <= 1) {
                double x = to_double(a.L.band(k, s));
                r.L = std::max(r.L, mix(x, to_double(Lg.band(k, s))));
                r.window_shift = std::max(r.window_shift, mix(x, to_double(b.L.band(k, s))));
            }
            if (k >= -1) {
                double x = to_double(a.Lbarinv.band(k, s));
                r.Lbarinv = std::max(r.Lbarinv, mix(x, to_double(Lbg.band(k, s))));
                r.window_shift = std::max(r.window_shift, mix(x, to_double(b.Lbarinv.band(k, s))));
            }
        }
    return r;
}

}  // namespace gcon
