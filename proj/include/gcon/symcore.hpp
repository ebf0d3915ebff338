#pragma once

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "numeric.hpp"

namespace gcon {

class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> p) : Partition(std::vector<int>(p)) {}
    explicit Partition(std::vector<int> p) : parts_(std::move(p)) {
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 0 || (i > 0 && parts_[i] > parts_[i - 1]))
                throw config_error("not a partition: " + str());
        }
    }

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    // 1-based, zero past the end
    int operator[](int i) const { return i >= 1 && i <= length() ? parts_[i - 1] : 0; }

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }
    bool operator!=(const Partition& o) const { return parts_ != o.parts_; }

    std::string str() const {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
        os << ')';
        return os.str();
    }

private:
    std::vector<int> parts_;
};

inline std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << p.str(); }

// "3,1" or "" (empty partition) or "()"
inline Partition parse_partition(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '(' || c == ')'; }),
            s.end());
    std::vector<int> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            v.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw config_error("bad partition entry '" + tok + "'");
        }
    }
    return Partition(v);
}

inline Partition conjugate(const Partition& l) {
    std::vector<int> t(l[1], 0);
    for (int j = 1; j <= l[1]; ++j)
        for (int i = 1; i <= l.length(); ++i)
            if (l[i] >= j) ++t[j - 1];
    return Partition(t);
}

inline long kappa(const Partition& l) {
    long k = 0;
    for (int i = 1; i <= l.length(); ++i) k += long(l[i]) * (l[i] - 2 * i + 1);
    return k;
}

inline bool contains(const Partition& l, const Partition& m) {
    if (m.length() > l.length()) return false;
    for (int i = 1; i <= m.length(); ++i)
        if (m[i] > l[i]) return false;
    return true;
}

namespace detail {
inline void parts_of(int n, int maxpart, std::vector<int>& cur, std::vector<Partition>& out) {
    if (n == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int k = std::min(n, maxpart); k >= 1; --k) {
        cur.push_back(k);
        parts_of(n - k, k, cur, out);
        cur.pop_back();
    }
}
}  // namespace detail

/// Partitions of exactly n, lexicographically descending.
inline std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    detail::parts_of(n, n, cur, out);
    return out;
}

/// All partitions of weight <= max_weight: weight-major, then lexicographic descending.
inline std::vector<Partition> enumerate_partitions(int max_weight) {
    std::vector<Partition> out;
    for (int n = 0; n <= max_weight; ++n) {
        auto p = partitions_of(n);
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

inline std::vector<Partition> subpartitions(const Partition& l) {
    std::vector<Partition> out;
    for (auto& m : enumerate_partitions(l.weight()))
        if (contains(l, m)) out.push_back(m);
    return out;
}

// Either an explicit finite list, or x_i = Q q^(-beta_i + i - 1/2), i >= 1.
template <class Real>
struct Specialization {
    enum class Kind { finite, principal } kind = Kind::finite;
    std::vector<Real> values;
    Partition beta;
    Real Q = Real(1);
    Real q = Real(0.5);
    Real truncation_eps = Real(1e-16);

    static Specialization finite_list(std::vector<Real> v) {
        Specialization s;
        s.kind = Kind::finite;
        s.values = std::move(v);
        return s;
    }
    // q^(-beta-rho) scaled by Q
    static Specialization principal(const Real& q, const Partition& beta = {}, const Real& Q = Real(1)) {
        Specialization s;
        s.kind = Kind::principal;
        s.q = q;
        s.beta = beta;
        s.Q = Q;
        return s;
    }

    // the first n values, for oracles that need an explicit list
    std::vector<Real> head(int n) const {
        if (kind == Kind::finite) return values;
        std::vector<Real> v;
        for (int i = 1; i <= n; ++i) v.push_back(Q * rpow(q, Real(i - beta[i]) - Real(0.5)));
        return v;
    }
};

namespace detail {
// h_0..h_kmax of a finite list, by multiplying in 1/(1 - x z) one variable at a time
template <class Real>
std::vector<Real> h_finite(const std::vector<Real>& xs, int kmax) {
    std::vector<Real> h(kmax + 1, Real(0));
    h[0] = Real(1);
    for (const auto& x : xs)
        for (int k = 1; k <= kmax; ++k) h[k] += x * h[k - 1];
    return h;
}
}  // namespace detail

/// Complete homogeneous h_0..h_kmax. The principal tail i > l(beta) is summed in
/// closed form: h_k(Q q^(l+1/2), Q q^(l+3/2), ...) = (Q q^l)^k q^(k/2) / (q;q)_k.
template <class Real>
std::vector<Real> complete_h(const Specialization<Real>& x, int kmax) {
    if (kmax < 0) return {};
    if (x.kind == Specialization<Real>::Kind::finite) return detail::h_finite(x.values, kmax);
    require_q(x.q);
    const int l = x.beta.length();
    auto head = detail::h_finite(x.head(l), kmax);
    const Real z = x.Q * ipow(x.q, l) * rpow(x.q, Real(0.5));
    std::vector<Real> tail(kmax + 1);
    for (int k = 0; k <= kmax; ++k) tail[k] = ipow(z, k) / qpoch(x.q, k);
    std::vector<Real> h(kmax + 1, Real(0));
    for (int k = 0; k <= kmax; ++k)
        for (int j = 0; j <= k; ++j) h[k] += head[j] * tail[k - j];
    return h;
}

/// Elementary symmetric e_0..e_kmax; the principal tail gives
/// e_k = (Q q^l)^k q^(k^2/2) / (q;q)_k.
template <class Real>
std::vector<Real> elementary_e(const Specialization<Real>& x, int kmax) {
    if (kmax < 0) return {};
    auto mulin = [kmax](const std::vector<Real>& xs) {
        std::vector<Real> e(kmax + 1, Real(0));
        e[0] = Real(1);
        for (const auto& v : xs)
            for (int k = kmax; k >= 1; --k) e[k] += v * e[k - 1];
        return e;
    };
    if (x.kind == Specialization<Real>::Kind::finite) return mulin(x.values);
    require_q(x.q);
    const int l = x.beta.length();
    auto head = mulin(x.head(l));
    const Real z = x.Q * ipow(x.q, l);
    std::vector<Real> e(kmax + 1, Real(0));
    for (int k = 0; k <= kmax; ++k)
        for (int j = 0; j <= k; ++j) {
            int m = k - j;
            e[k] += head[j] * ipow(z, m) * rpow(x.q, Real(m) * Real(m) / Real(2)) / qpoch(x.q, m);
        }
    return e;
}

template <class Real>
Real determinant(Mat<Real> m) {
    if (m.rows() == 0) return Real(1);
    return m.partialPivLu().determinant();
}

/// Jacobi-Trudi: s_{l/m} = det[h_{l_i - m_j - i + j}].
template <class Real>
Real skew_schur(const Partition& l, const Partition& m, const std::vector<Real>& h) {
    if (!contains(l, m)) return Real(0);
    const int n = l.length();
    Mat<Real> a(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            int k = l[i] - m[j] - i + j;
            a(i - 1, j - 1) = k < 0 ? Real(0) : h.at(k);
        }
    return determinant(a);
}

template <class Real>
Real skew_schur(const Partition& l, const Partition& m, const Specialization<Real>& x) {
    if (!contains(l, m)) return Real(0);
    return skew_schur(l, m, complete_h(x, l[1] + l.length()));
}

template <class Real>
Real schur(const Partition& l, const Specialization<Real>& x) {
    return skew_schur(l, Partition{}, x);
}

template <class Real>
struct TodaTimes {
    std::vector<Real> t, tbar;  // t[0] is t_1

    bool zero() const {
        for (auto& v : t)
            if (v != Real(0)) return false;
        for (auto& v : tbar)
            if (v != Real(0)) return false;
        return true;
    }
};

template <class Real>
TodaTimes<Real> miwa_times(const std::vector<Real>& x, const std::vector<Real>& y, int K) {
    TodaTimes<Real> T;
    for (int k = 1; k <= K; ++k) {
        Real a(0), b(0);
        for (auto& v : x) a += ipow(v, k);
        for (auto& v : y) b += ipow(v, k);
        T.t.push_back(a / Real(k));
        T.tbar.push_back(-b / Real(k));
    }
    return T;
}

}  // namespace gcon
