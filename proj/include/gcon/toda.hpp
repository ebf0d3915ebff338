#pragma once

#include <limits>
#include <map>
#include <vector>

#include "conifold.hpp"
#include "symcore.hpp"

namespace gcon {

/// exp(sum t_k Lambda^k) M exp(-sum tbar_k Lambda^-k)
template <class Real>
Operator<Real> dress_U(const Operator<Real>& U, const TodaTimes<Real>& T, int band_cutoff = 0) {
    if (T.zero()) return U;
    std::vector<Real> mt;
    for (auto& v : T.tbar) mt.push_back(-v);
    return exp_shift_series(T.t, 1, U.w, band_cutoff) * U * exp_shift_series(mt, -1, U.w, band_cutoff);
}

// A pivot tolerance is stated for double. Other precisions keep the same
// headroom above rounding, measured in units of their own epsilon.
template <class Real>
Real pivot_tol_for(double pivot_tol) {
    return Real(pivot_tol / std::numeric_limits<double>::epsilon()) * std::numeric_limits<Real>::epsilon();
}

template <class Real>
Real default_pivot_tol() {
    return pivot_tol_for<Real>(1e-13);
}

template <class Real>
struct Factorization {
    Operator<Real> Lf, Uf;   // M = Lf Uf, Lf lower unitriangular
    std::vector<Real> pivots;  // diagonal of Uf, site order
};

/// Gaussian elimination without pivoting. A pivot smaller than pivot_tol
/// relative to the original diagonal entry is reported, never repaired. (The
/// ratio is unchanged by diagonal conjugations such as q^(Delta^2/2).)
template <class Real>
Factorization<Real> lu_nopivot(const Operator<Real>& M, const Real& pivot_tol = default_pivot_tol<Real>()) {
    const int n = M.w.size();
    Mat<Real> a = M.m;
    Mat<Real> l = Mat<Real>::Identity(n, n);
    for (int k = 0; k < n; ++k) {
        const Real scale = rabs(M.m(k, k));
        if (!(rabs(a(k, k)) > pivot_tol * scale) || a(k, k) == Real(0))
            throw numerical_error("factorization failure: vanishing pivot at site " + std::to_string(M.w.lo + k));
        for (int i = k + 1; i < n; ++i) {
            if (a(i, k) == Real(0)) continue;
            Real f = a(i, k) / a(k, k);
            l(i, k) = f;
            a.row(i).tail(n - k) -= f * a.row(k).tail(n - k);
            a(i, k) = Real(0);
        }
    }
    Factorization<Real> F;
    F.Lf = Operator<Real>(M.w, l);
    F.Uf = Operator<Real>(M.w, a.template triangularView<Eigen::Upper>());
    for (int k = 0; k < n; ++k) F.pivots.push_back(a(k, k));
    return F;
}

template <class Real>
struct TodaSolution {
    Operator<Real> W, Winv, Wbar, Wbarinv, L, Lbar, Lbarinv;
    std::vector<Real> pivots;
};

template <class Real>
TodaSolution<Real> lax_operators(const Operator<Real>& W, const Operator<Real>& Wbar) {
    TodaSolution<Real> s;
    s.W = W;
    s.Wbar = Wbar;
    s.Winv = invert_triangular(W, Side::lower);
    s.Wbarinv = invert_triangular(Wbar, Side::upper);
    s.L = W * shift<Real>(1, W.w) * s.Winv;
    s.Lbar = Wbar * shift<Real>(1, W.w) * s.Wbarinv;
    s.Lbarinv = Wbar * shift<Real>(-1, W.w) * s.Wbarinv;
    return s;
}

/// M = W^-1 Wbar
template <class Real>
TodaSolution<Real> solve_factorization(const Operator<Real>& M, const Real& pivot_tol = default_pivot_tol<Real>()) {
    auto F = lu_nopivot(M, pivot_tol);
    auto s = lax_operators(invert_triangular(F.Lf, Side::lower), F.Uf);
    s.Winv = F.Lf;
    s.pivots = F.pivots;
    return s;
}

template <class Real>
TodaSolution<Real> toda_solution(const ModelParams<Real>& p, const TodaTimes<Real>& T, Window w,
                                 const Real& pivot_tol = default_pivot_tol<Real>(), int band_cutoff = 0) {
    return solve_factorization(dress_U(build_U(p, w), T, band_cutoff), pivot_tol);
}

/// Principal minor of M on [lo, s-1], as a product of elimination pivots.
template <class Real>
Real tau(const Factorization<Real>& F, Window w, int s) {
    if (s - 1 < w.lo || s - 1 > w.hi) throw numerical_error("tau: site outside the window");
    Real r(1);
    for (int k = w.lo; k <= s - 1; ++k) r *= F.pivots[k - w.lo];
    return r;
}

template <class Real>
Real tau(const Operator<Real>& M, int s, const Real& pivot_tol = default_pivot_tol<Real>()) {
    return tau(lu_nopivot(M, pivot_tol), M.w, s);
}

// Matrix power by repeated product.
template <class Real>
Operator<Real> power(const Operator<Real>& a, int k) {
    Operator<Real> r = identity<Real>(a.w);
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

struct FlowResidual {
    std::string name;
    double h, value, value_half, ratio;
};

/// Central differences of W, Wbar, L, Lbar^-1 along t_k (or tbar_k) against the
/// Sato and Lax right-hand sides, at h and h/2. Compared on rows `rows`, bands
/// [-nb, nb].
template <class Real>
std::vector<FlowResidual> sato_lax_residuals(const ModelParams<Real>& p, const TodaTimes<Real>& T0, int k,
                                             bool barred, const Real& h, Window w, Range rows, int nb = 4,
                                             double pivot_tol = 1e-13) {
    auto U = build_U(p, w);
    auto at = [&](const Real& d) {
        TodaTimes<Real> T = T0;
        auto& v = barred ? T.tbar : T.t;
        if (int(v.size()) < k) v.resize(k, Real(0));
        v[k - 1] += d;
        if (int((barred ? T.t : T.tbar).size()) < k) (barred ? T.t : T.tbar).resize(k, Real(0));
        return solve_factorization(dress_U(U, T), pivot_tol_for<Real>(pivot_tol));
    };
    auto c = at(Real(0));
    Operator<Real> B = barred ? project(power(c.Lbarinv, k), Part::neg) : project(power(c.L, k), Part::nonneg);
    Operator<Real> Bc = barred ? project(power(c.Lbarinv, k), Part::nonneg) : project(power(c.L, k), Part::neg);
    // right-hand sides
    std::map<std::string, Operator<Real>> rhs;
    rhs["W"] = barred ? B * c.W : Real(-1) * (Bc * c.W);
    rhs["Wbar"] = barred ? Real(-1) * (Bc * c.Wbar) : B * c.Wbar;
    rhs["L"] = commutator(B, c.L);
    rhs["Lbar^-1"] = commutator(B, c.Lbarinv);

    auto fd = [&](const Real& hh) {
        auto a = at(hh), b = at(-hh);
        std::map<std::string, Operator<Real>> d;
        Real s = Real(1) / (Real(2) * hh);
        d["W"] = s * (a.W - b.W);
        d["Wbar"] = s * (a.Wbar - b.Wbar);
        d["L"] = s * (a.L - b.L);
        d["Lbar^-1"] = s * (a.Lbarinv - b.Lbarinv);
        return d;
    };
    auto d1 = fd(h), d2 = fd(h / Real(2));
    std::vector<FlowResidual> out;
    std::string tag = std::string(barred ? "tbar_" : "t_") + std::to_string(k);
    for (auto& [nm, r] : rhs) {
        double v1 = to_double(residual(d1[nm], r, rows, -nb, nb));
        double v2 = to_double(residual(d2[nm], r, rows, -nb, nb));
        std::string kind = nm == "W" || nm == "Wbar" ? "Sato " : "Lax ";
        out.push_back({kind + "d" + nm + "/d" + tag, to_double(h), v1, v2, v2 > 0 ? v1 / v2 : 0.0});
    }
    return out;
}

/// Maya positions p_i = lambda_i - i + 1 + s, i = 1..depth. The psi-mode of the
/// state carries index -p_i; the matrix row/column index is p_i itself.
inline std::vector<int> maya(const Partition& l, int s, int depth) {
    std::vector<int> p;
    for (int i = 1; i <= depth; ++i) p.push_back(l[i] - i + 1 + s);
    return p;
}

/// <lambda,s| g |mu,s> as the minor of U on Maya rows/columns. The depth is the
/// whole sea down to the window edge (depth = s - lo + 1): the minor must reach
/// the edge so that triangular factors of U drop out exactly. Diagonal factors
/// base^Delta are normal ordered by dividing out base^p over the vacuum sea.
template <class Real>
Real matrix_element(const Operator<Real>& U, const Partition& l, const Partition& m, int s,
                    const Real& base = Real(1)) {
    const int depth = s - U.w.lo + 1;
    if (depth < std::max(l.length(), m.length()) || !U.w.has(s + std::max(l[1], m[1])))
        throw numerical_error("matrix_element: window too small for the requested states");
    auto I = maya(l, s, depth), J = maya(m, s, depth), V = maya(Partition{}, s, depth);
    Mat<Real> a(depth, depth);
    for (int x = 0; x < depth; ++x)
        for (int y = 0; y < depth; ++y) a(x, y) = U.at(I[x], J[y]) / ipow(base, V[y]);
    return determinant(a);
}

/// tau at Miwa point vs the truncated generating function
/// sum s_l(x) <l,s|g|m,s> s_m(y), both normalized by the vacuum element.
template <class Real>
struct SchurExpansion {
    Real tau_ratio, series, tail;
    double rel;
};

template <class Real>
SchurExpansion<Real> schur_expand_check(const ModelParams<Real>& p, const std::vector<Real>& x,
                                        const std::vector<Real>& y, int max_weight, int s, Window w,
                                        double pivot_tol = 1e-13) {
    auto U = build_U(p, w);
    auto T = miwa_times(x, y, w.size());
    // charge s fills rows <= s, i.e. tau at s+1 in principal-minor indexing
    const Real tol = pivot_tol_for<Real>(pivot_tol);
    Real t1 = tau(dress_U(U, T), s + 1, tol), t0 = tau(U, s + 1, tol);
    const Real base = p.P();
    Real vac = matrix_element(U, Partition{}, Partition{}, s, base);
    auto X = Specialization<Real>::finite_list(x), Y = Specialization<Real>::finite_list(y);
    auto parts = enumerate_partitions(max_weight);
    Real sum(0), tail(0);
    for (auto& l : parts) {
        Real sl = schur(l, X);
        if (sl == Real(0)) continue;
        for (auto& m : parts) {
            Real sm = schur(m, Y);
            if (sm == Real(0)) continue;
            Real term = sl * matrix_element(U, l, m, s, base) * sm / vac;
            sum += term;
            if (l.weight() == max_weight || m.weight() == max_weight) tail += rabs(term);
        }
    }
    SchurExpansion<Real> r{t1 / t0, sum, tail, 0.0};
    r.rel = to_double(rabs(r.tau_ratio - r.series) / rabs(r.tau_ratio));
    return r;
}

}  // namespace gcon
