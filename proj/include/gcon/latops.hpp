#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <type_traits>
#include <vector>

#include "numeric.hpp"

namespace gcon {

/// Finite piece [lo, hi] of the lattice Z.
struct Window {
    int lo = -24, hi = 24;

    int size() const { return hi - lo + 1; }
    bool has(int s) const { return s >= lo && s <= hi; }
    Window shrink(int m) const { return {lo + m, hi - m}; }
    bool operator==(const Window& o) const { return lo == o.lo && hi == o.hi; }
};

// A Z x Z matrix truncated to a window, zero outside. Stored densely: every
// operator the conifold needs has bands decaying only like q^(m/2), so a
// bandwidth cap would not buy anything on desk-scale windows.
template <class Real>
struct Operator {
    Window w;
    Mat<Real> m;

    Operator() = default;
    explicit Operator(Window win) : w(win), m(Mat<Real>::Zero(win.size(), win.size())) {}
    Operator(Window win, Mat<Real> mat) : w(win), m(std::move(mat)) {}

    int idx(int s) const { return s - w.lo; }
    Real& at(int s, int t) { return m(s - w.lo, t - w.lo); }
    const Real& at(int s, int t) const { return m(s - w.lo, t - w.lo); }

    // entry (s, s+k), zero when it falls off the window
    Real band(int k, int s) const {
        return w.has(s) && w.has(s + k) ? at(s, s + k) : Real(0);
    }
    void set_band(int k, int s, const Real& v) {
        if (w.has(s) && w.has(s + k)) at(s, s + k) = v;
    }
};

template <class Real>
void same_window(const Operator<Real>& a, const Operator<Real>& b) {
    if (!(a.w == b.w)) throw std::invalid_argument("operators live on different windows");
}

// Most factors are triangular or diagonal. For multiprecision scalars every
// multiply is expensive, so skip the exact zeros instead of using Eigen's GEMM.
template <class Real>
Mat<Real> sparse_aware_product(const Mat<Real>& a, const Mat<Real>& b) {
    if constexpr (std::is_same_v<Real, double>) {
        return a * b;
    } else {
        const Eigen::Index n = a.rows(), K = a.cols(), m = b.cols();
        std::vector<Eigen::Index> first(std::size_t(K), m), last(std::size_t(K), -1);
        for (Eigen::Index k = 0; k < K; ++k)
            for (Eigen::Index j = 0; j < m; ++j)
                if (b(k, j) != Real(0)) {
                    first[std::size_t(k)] = std::min(first[std::size_t(k)], j);
                    last[std::size_t(k)] = j;
                }
        Mat<Real> r = Mat<Real>::Zero(n, m);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index k = 0; k < K; ++k) {
                const Real& x = a(i, k);
                if (x == Real(0)) continue;
                for (Eigen::Index j = first[std::size_t(k)]; j <= last[std::size_t(k)]; ++j) r(i, j) += x * b(k, j);
            }
        return r;
    }
}

template <class Real>
Operator<Real> operator*(const Operator<Real>& a, const Operator<Real>& b) {
    same_window(a, b);
    return {a.w, sparse_aware_product(a.m, b.m)};
}
template <class Real>
Operator<Real> operator+(const Operator<Real>& a, const Operator<Real>& b) {
    same_window(a, b);
    return {a.w, a.m + b.m};
}
template <class Real>
Operator<Real> operator-(const Operator<Real>& a, const Operator<Real>& b) {
    same_window(a, b);
    return {a.w, a.m - b.m};
}
template <class Real>
Operator<Real> operator*(const Real& c, const Operator<Real>& a) {
    return {a.w, c * a.m};
}

template <class Real>
Operator<Real> mul(const std::vector<Operator<Real>>& fs) {
    Operator<Real> r = fs.at(0);
    for (std::size_t i = 1; i < fs.size(); ++i) r = r * fs[i];
    return r;
}

// The section of a on a sub-window.
template <class Real>
Operator<Real> restrict(const Operator<Real>& a, Window w) {
    if (!a.w.has(w.lo) || !a.w.has(w.hi)) throw numerical_error("restrict: not a sub-window");
    return Operator<Real>(w, a.m.block(w.lo - a.w.lo, w.lo - a.w.lo, w.size(), w.size()));
}

template <class Real>
Operator<Real> commutator(const Operator<Real>& a, const Operator<Real>& b) {
    return a * b - b * a;
}

template <class Real>
Operator<Real> identity(Window w) {
    return {w, Mat<Real>::Identity(w.size(), w.size())};
}

/// Lambda^k: ones at (s, s+k).
template <class Real>
Operator<Real> shift(int k, Window w) {
    Operator<Real> a(w);
    for (int s = w.lo; s <= w.hi; ++s) a.set_band(k, s, Real(1));
    return a;
}

template <class Real>
Operator<Real> diagonal(const std::function<Real(int)>& f, Window w) {
    Operator<Real> a(w);
    for (int s = w.lo; s <= w.hi; ++s) a.at(s, s) = f(s);
    return a;
}

/// Q^Delta
template <class Real>
Operator<Real> power_delta(const Real& Q, Window w, int offset = 0) {
    return diagonal<Real>([&](int s) { return ipow(Q, s + offset); }, w);
}

/// q^(Delta + c) for real c
template <class Real>
Operator<Real> qdelta(const Real& q, Window w, const Real& c = Real(0)) {
    return diagonal<Real>([&](int s) { return ipow(q, s) * rpow(q, c); }, w);
}

/// sum_m c[m] Lambda^(sign*m)
template <class Real>
Operator<Real> toeplitz(const std::vector<Real>& c, int sign, Window w) {
    Operator<Real> a(w);
    for (std::size_t k = 0; k < c.size(); ++k)
        for (int s = w.lo; s <= w.hi; ++s) a.set_band(sign * int(k), s, c[k]);
    return a;
}

enum class Part { nonneg, neg };

template <class Real>
Operator<Real> project(const Operator<Real>& a, Part p) {
    Operator<Real> r(a.w);
    if (p == Part::nonneg)
        r.m = a.m.template triangularView<Eigen::Upper>();
    else
        r.m = a.m.template triangularView<Eigen::StrictlyLower>();
    return r;
}

enum class Side { lower, upper };

/// Inverse of a triangular operator (exact on the window: triangular sections
/// invert to sections of the inverse).
template <class Real>
Operator<Real> invert_triangular(const Operator<Real>& a, Side side, const Real& tol = Real(1e-12)) {
    const int n = a.w.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            bool off = side == Side::lower ? j > i : j < i;
            if (off && rabs(a.m(i, j)) > tol * (Real(1) + rabs(a.m(i, i))))
                throw numerical_error("invert_triangular: operator is not triangular");
        }
    for (int i = 0; i < n; ++i)
        if (a.m(i, i) == Real(0)) throw numerical_error("invert_triangular: zero on the diagonal");
    Mat<Real> id = Mat<Real>::Identity(n, n);
    Operator<Real> r(a.w);
    if (side == Side::lower)
        r.m = a.m.template triangularView<Eigen::Lower>().solve(id);
    else
        r.m = a.m.template triangularView<Eigen::Upper>().solve(id);
    return r;
}

/// Band coefficients of the quantum dilogarithm products (q-binomial theorem):
///   Gamma(Q q^-rho)     = prod (1 - Q q^(i-1/2) z)^-1 : Q^m q^(m/2) / (q;q)_m
///   Gamma'(Q q^-rho)    = prod (1 + Q q^(i-1/2) z)    : Q^m q^(m^2/2) / (q;q)_m
///   Gamma(Q q^-rho)^-1                                : (-Q)^m q^(m^2/2) / (q;q)_m
///   Gamma'(Q q^-rho)^-1                               : (-Q)^m q^(m/2) / (q;q)_m
template <class Real>
std::vector<Real> gamma_coeffs(bool primed, bool inverse, const Real& Q, const Real& q, int nbands) {
    require_q(q);
    std::vector<Real> c(nbands);
    const Real z = inverse ? Real(-Q) : Q;
    for (int m = 0; m < nbands; ++m) {
        bool quad = primed != inverse;
        Real e = quad ? Real(m) * Real(m) / Real(2) : Real(m) / Real(2);
        c[m] = ipow(z, m) * rpow(q, e) / qpoch(q, m);
    }
    return c;
}

/// Gamma_+ (sign = +1, powers of Lambda) or Gamma_- (sign = -1, powers of Lambda^-1)
/// at Q q^-rho, optionally primed and/or inverted.
template <class Real>
Operator<Real> gamma_op(int sign, bool primed, const Real& Q, const Real& q, Window w,
                        bool inverse = false) {
    return toeplitz(gamma_coeffs(primed, inverse, Q, q, w.size()), sign, w);
}

/// The same operator as a literal finite product of i_max one-step factors,
/// i_max = ceil(log(eps/Q)/log q). Used as an oracle for the closed form.
template <class Real>
Operator<Real> gamma_op_product(int sign, bool primed, const Real& Q, const Real& q, Window w,
                                const Real& eps) {
    using std::ceil;
    using std::log;
    require_q(q);
    int imax = std::max(1, static_cast<int>(to_double(ceil(log(eps / Q) / log(q)))));
    Operator<Real> r = identity<Real>(w);
    Operator<Real> L = shift<Real>(sign, w);
    for (int i = 1; i <= imax; ++i) {
        Real a = Q * rpow(q, Real(i) - Real(0.5));
        if (primed)
            r = r * (identity<Real>(w) + a * L);
        else
            r = r * invert_triangular(identity<Real>(w) - a * L, sign > 0 ? Side::upper : Side::lower);
    }
    return r;
}

/// q^(Delta^2/2) A q^(-Delta^2/2), band-wise: entry (s, s+k) times q^-(k s + k^2/2).
/// inverse = true gives q^(-Delta^2/2) A q^(Delta^2/2).
template <class Real>
Operator<Real> conj_qdelta_sq(const Operator<Real>& a, const Real& q, bool inverse = false) {
    using std::sqrt;
    Operator<Real> r = a;
    // the exponent k s + k^2/2 is a half-integer: integer powers of sqrt(q)
    const Real root = inverse ? sqrt(q) : Real(1) / sqrt(q);
    for (int s = a.w.lo; s <= a.w.hi; ++s)
        for (int t = a.w.lo; t <= a.w.hi; ++t) {
            if (r.at(s, t) == Real(0)) continue;
            long k = t - s;
            r.at(s, t) *= ipow(root, 2 * k * s + k * k);
        }
    return r;
}

/// Coefficients of exp(sum_k t_k z^k) up to z^(nbands-1).
template <class Real>
std::vector<Real> exp_series_coeffs(const std::vector<Real>& t, int nbands) {
    std::vector<Real> a(nbands, Real(0));
    if (nbands == 0) return a;
    a[0] = Real(1);
    for (int m = 1; m < nbands; ++m) {
        Real s(0);
        for (int k = 1; k <= std::min<int>(m, int(t.size())); ++k) s += Real(k) * t[k - 1] * a[m - k];
        a[m] = s / Real(m);
    }
    return a;
}

/// exp(sum_k t_k Lambda^(sign k)), truncated to band_cutoff bands (0 = whole window).
template <class Real>
Operator<Real> exp_shift_series(const std::vector<Real>& t, int sign, Window w, int band_cutoff = 0) {
    int nb = band_cutoff > 0 ? std::min(band_cutoff + 1, w.size()) : w.size();
    return toeplitz(exp_series_coeffs(t, nb), sign, w);
}

/// Zero every band |k| > cutoff, returning the dropped absolute mass.
template <class Real>
Real clip_bands(Operator<Real>& a, int cutoff) {
    Real mass(0);
    for (int s = a.w.lo; s <= a.w.hi; ++s)
        for (int t = a.w.lo; t <= a.w.hi; ++t)
            if (std::abs(t - s) > cutoff) {
                mass += rabs(a.at(s, t));
                a.at(s, t) = Real(0);
            }
    return mass;
}

/// Range of lattice sites used for comparisons.
struct Range {
    int lo, hi;
};

/// Entry-wise mixed error |a-b| / max(1, |a|, |b|), maximized over rows in
/// `rows` and bands in [klo, khi]. Bands are what the identities constrain;
/// columns are never restricted beyond the window itself.
template <class Real>
Real residual(const Operator<Real>& a, const Operator<Real>& b, Range rows, int klo, int khi) {
    same_window(a, b);
    Real r(0);
    for (int s = rows.lo; s <= rows.hi; ++s)
        for (int k = klo; k <= khi; ++k) {
            if (!a.w.has(s) || !a.w.has(s + k)) continue;
            Real x = a.at(s, s + k), y = b.at(s, s + k);
            Real d = rabs(x - y) / std::max({Real(1), rabs(x), rabs(y)});
            r = std::max(r, d);
        }
    return r;
}

/// Residual over the interior block rows x rows.
template <class Real>
Real residual(const Operator<Real>& a, const Operator<Real>& b, Range rows) {
    same_window(a, b);
    Real r(0);
    for (int s = rows.lo; s <= rows.hi; ++s)
        for (int t = rows.lo; t <= rows.hi; ++t) {
            Real x = a.at(s, t), y = b.at(s, t);
            r = std::max(r, rabs(x - y) / std::max({Real(1), rabs(x), rabs(y)}));
        }
    return r;
}

/// Largest |entry| outside bands [klo, khi] for rows in `rows`.
template <class Real>
Real out_of_band(const Operator<Real>& a, Range rows, int klo, int khi) {
    Real r(0);
    for (int s = rows.lo; s <= rows.hi; ++s)
        for (int t = a.w.lo; t <= a.w.hi; ++t) {
            int k = t - s;
            if (k < klo || k > khi) r = std::max(r, rabs(a.at(s, t)));
        }
    return r;
}

struct Residual {
    std::string name;
    double value;
};

/// Both sides of the quantum torus relations and the dilogarithm exchange rules.
template <class Real>
std::vector<Residual> verify_quantum_torus(const Real& q, const Real& Q, Window w, int margin = 4) {
    require_q(q);
    std::vector<Residual> out;
    const Range in{w.lo + margin, w.hi - margin};
    const int full = w.size();
    auto I = identity<Real>(w);
    auto QD = power_delta(Q, w);
    auto qD = qdelta(q, w);
    auto qmD = qdelta(Real(1) / q, w);
    auto add = [&](const std::string& n, const Operator<Real>& a, const Operator<Real>& b) {
        out.push_back({n, to_double(residual(a, b, in, -full, full))});
    };

    for (int k : {1, 2, 3, -1, -2}) {
        auto Lk = shift<Real>(k, w);
        add("Lambda^k Q^Delta = Q^k Q^Delta Lambda^k, k=" + std::to_string(k), Lk * QD,
            ipow(Q, k) * (QD * Lk));
        add("Lambda^k q^Delta = q^k q^Delta Lambda^k, k=" + std::to_string(k), Lk * qD,
            ipow(q, k) * (qD * Lk));
        auto lhs = conj_qdelta_sq(Lk, q);
        auto rhs = diagonal<Real>([&](int s) { return rpow(q, -Real(k) * Real(s) - Real(k * k) / Real(2)); }, w) * Lk;
        add("q^(D^2/2) Lambda^k q^(-D^2/2) = q^(-kD-k^2/2) Lambda^k, k=" + std::to_string(k), lhs, rhs);
    }
    const Real one(1);
    for (int sgn : {-1, 1}) {
        for (bool pr : {false, true}) {
            const Real Qs = sgn > 0 ? Q : one / Q;
            std::string nm = std::string(pr ? "Gamma'" : "Gamma") + (sgn > 0 ? "_+" : "_-");
            add(nm + "(q^-rho) Q^Delta = Q^Delta " + nm + "(Q^(+-1) q^-rho)",
                gamma_op(sgn, pr, one, q, w) * QD, QD * gamma_op(sgn, pr, Qs, q, w));
        }
    }
    const Real qmh = rpow(q, Real(-0.5));
    {
        auto G = gamma_op(-1, false, Q, q, w), Gi = gamma_op(-1, false, Q, q, w, true);
        add("Gamma_-(Q)^-1 q^D Gamma_-(Q) = q^D (1 - Q q^-1/2 Lambda^-1)", Gi * qD * G,
            qD * (I - (Q * qmh) * shift<Real>(-1, w)));
    }
    {
        auto G = gamma_op(-1, true, Q, q, w), Gi = gamma_op(-1, true, Q, q, w, true);
        add("Gamma'_-(Q)^-1 q^D Gamma'_-(Q) = q^D (1 + Q q^-1/2 Lambda^-1)^-1", Gi * qD * G,
            qD * invert_triangular(I + (Q * qmh) * shift<Real>(-1, w), Side::lower));
    }
    {
        auto G = gamma_op(1, false, one / Q, q, w), Gi = gamma_op(1, false, one / Q, q, w, true);
        add("Gamma_+(1/Q) q^-D Gamma_+(1/Q)^-1 = q^-D (1 - Q^-1 q^-1/2 Lambda)^-1", G * qmD * Gi,
            qmD * invert_triangular(I - (qmh / Q) * shift<Real>(1, w), Side::upper));
    }
    {
        // the inverse has bands growing like (q^1/2/Q)^m, so compare after multiplying it away
        auto G = gamma_op(1, true, one / Q, q, w);
        add("Gamma'_+(1/Q) q^-D Gamma'_+(1/Q)^-1 = q^-D (1 + Q^-1 q^-1/2 Lambda)", G * qmD,
            qmD * (I + (qmh / Q) * shift<Real>(1, w)) * G);
    }
    for (int k : {-2, 1, 3})
        for (int mm : {-2, 1, 2}) {
            auto qkD = diagonal<Real>([&](int s) { return ipow(q, k * s); }, w);
            auto Lm = shift<Real>(mm, w);
            add("v(" + std::to_string(k) + "," + std::to_string(mm) + ") two forms",
                rpow(q, Real(k * mm) / Real(2)) * (qkD * Lm), rpow(q, -Real(k * mm) / Real(2)) * (Lm * qkD));
        }
    return out;
}

}  // namespace gcon
