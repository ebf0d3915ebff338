#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "toda.hpp"

namespace gcon {

template <class Real>
Real vertex_weight(const Partition& a, const Partition& b, const Partition& g, const Real& q) {
    require_q(q);
    const auto x = Specialization<Real>::principal(q, conjugate(b));  // q^(-tb - rho)
    const auto y = Specialization<Real>::principal(q, b);             // q^(-b - rho)
    const Partition tg = conjugate(g);
    const int kmax = std::max(a[1] + a.length(), tg[1] + tg.length());
    auto hx = complete_h(x, kmax), hy = complete_h(y, kmax);
    Real sum(0);
    for (auto& nu : subpartitions(a))
        if (contains(tg, nu)) sum += skew_schur(a, nu, hx) * skew_schur(tg, nu, hy);
    return schur(b, Specialization<Real>::principal(q)) * rpow(q, -Real(kappa(g)) / Real(2)) * sum;
}

/// Toeplitz operator of a vertex operator at a specialization: Gamma uses h_m,
/// Gamma' uses e_m.
template <class Real>
Operator<Real> gamma_op(int sign, bool primed, const Specialization<Real>& x, Window w) {
    auto c = primed ? elementary_e(x, w.size() - 1) : complete_h(x, w.size() - 1);
    return toeplitz(c, sign, w);
}

/// Bare bracket without prefactors: <bra| Gamma_-(q^(-b-rho)) Gamma_+(q^(-tb-rho)) |ket> for
/// route 1, <bra| Gamma'_-(q^(-tb-rho)) Gamma'_+(q^(-b-rho)) |ket> for route 2.
template <class Real>
Real vertex_bracket(const Partition& bra, const Partition& b, const Partition& ket, const Real& q, int route) {
    require_q(q);
    auto xb = Specialization<Real>::principal(q, b), xtb = Specialization<Real>::principal(q, conjugate(b));
    const int depth = std::max(bra.length(), ket.length()) + 1;
    Window w{-depth + 1, std::max(bra[1], ket[1]) + 2};
    Operator<Real> G = route == 1 ? gamma_op(-1, false, xb, w) * gamma_op(1, false, xtb, w)
                                  : gamma_op(-1, true, xtb, w) * gamma_op(1, true, xb, w);
    return matrix_element(G, bra, ket, 0);
}

/// route 1: <tg| Gamma_-(q^(-b-rho)) Gamma_+(q^(-tb-rho)) |a>
/// route 2: <ta| Gamma'_-(q^(-tb-rho)) Gamma'_+(q^(-b-rho)) |g>
template <class Real>
Real vertex_weight_fermionic(const Partition& a, const Partition& b, const Partition& g, const Real& q, int route) {
    Real bracket = route == 1 ? vertex_bracket(conjugate(g), b, a, q, 1) : vertex_bracket(conjugate(a), b, g, q, 2);
    return schur(b, Specialization<Real>::principal(q)) * rpow(q, -Real(kappa(g)) / Real(2)) * bracket;
}

template <class Real>
struct StripSpec {
    int N = 1;
    Partition alpha0, alpha2N;
    std::vector<Partition> beta;  // beta_1..beta_2N, empty vector = all empty
    Real q = Real(0.5);
    std::vector<Real> Q;          // Q_1..Q_{2N-1}
    int internal_cutoff = 8;

    Partition b(int n) const { return n - 1 < int(beta.size()) ? beta[n - 1] : Partition{}; }
};

template <class Real>
struct Amplitude {
    Real value, tail;
};

namespace detail {
// Partitions by integer id: all partitions up to the cutoff first, in
// enumeration order, then anything else registered later (external legs,
// conjugates of large external legs).
struct Registry {
    std::vector<Partition> parts;
    std::vector<int> conj;
    std::map<std::vector<int>, int> ids;

    explicit Registry(int cutoff) {
        for (auto& p : enumerate_partitions(cutoff)) add(p);
    }
    int add(const Partition& p) {
        auto it = ids.find(p.parts());
        if (it != ids.end()) return it->second;
        int id = int(parts.size());
        parts.push_back(p);
        conj.push_back(-1);
        ids[p.parts()] = id;
        int c = add(conjugate(p));
        conj[id] = c;
        return id;
    }
};

template <class Real, class F>
struct Memo3 {
    F f;
    std::unordered_map<std::uint64_t, Real> memo;
    Real operator()(int a, int b, int c) {
        std::uint64_t key = (std::uint64_t(a) << 40) | (std::uint64_t(b) << 20) | std::uint64_t(c);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        return memo[key] = f(a, b, c);
    }
};
template <class Real, class F>
Memo3<Real, F> memo3(F f) {
    return {std::move(f), {}};
}

// Sum over internal partitions alpha_1..alpha_{2N-1} of a chain of weights,
// passed to `term` as registry ids.
template <class Real, class F>
Amplitude<Real> internal_sum(const Registry& reg, int nint, int cutoff, F&& term) {
    const int n = int(enumerate_partitions(cutoff).size());
    std::vector<int> ix(nint, 0);
    Amplitude<Real> a{Real(0), Real(0)};
    while (true) {
        bool at_max = false;
        for (int i = 0; i < nint; ++i) at_max = at_max || reg.parts[ix[i]].weight() == cutoff;
        Real t = term(ix);
        a.value += t;
        if (at_max) a.tail += rabs(t);
        int i = 0;
        while (i < nint && ++ix[i] == n) ix[i++] = 0;
        if (i == nint) break;
    }
    return a;
}
}  // namespace detail

/// The strip amplitude as an alternating product of vertex weights and
/// (-Q_n)^|alpha_n| edge weights. Odd vertices after the first take the
/// transposed even partition, C_{a_{2n-1} b_{2n-1} ta_{2n-2}}, which is what
/// makes the chain of brackets close.
template <class Real>
Amplitude<Real> strip_amplitude(const StripSpec<Real>& sp) {
    if (int(sp.Q.size()) != 2 * sp.N - 1) throw config_error("strip: need 2N-1 Kahler parameters");
    detail::Registry reg(sp.internal_cutoff);
    const int a0 = reg.add(sp.alpha0), a2N = reg.add(sp.alpha2N);
    std::vector<int> beta;
    for (int n = 1; n <= 2 * sp.N; ++n) beta.push_back(reg.add(sp.b(n)));
    auto C = detail::memo3<Real>(
        [&](int a, int b, int g) { return vertex_weight(reg.parts[a], reg.parts[b], reg.parts[g], sp.q); });
    const int nint = 2 * sp.N - 1;
    return detail::internal_sum<Real>(reg, nint, sp.internal_cutoff, [&](const std::vector<int>& al) {
        auto alpha = [&](int n) { return n == 0 ? a0 : n == 2 * sp.N ? a2N : al[n - 1]; };
        Real t(1);
        for (int n = 1; n <= sp.N; ++n) {
            const int ao = alpha(2 * n - 1);
            const int prev = n == 1 ? alpha(0) : reg.conj[alpha(2 * n - 2)];
            t *= C(ao, beta[2 * n - 2], prev);
            t *= ipow(-sp.Q[2 * n - 2], reg.parts[ao].weight());
            t *= C(reg.conj[ao], beta[2 * n - 1], alpha(2 * n));
            if (n < sp.N) t *= ipow(-sp.Q[2 * n - 1], reg.parts[alpha(2 * n)].weight());
        }
        return t;
    });
}

/// The same sum as a product of bare brackets in the charge-0 sector, with no
/// q^(kappa/2) factors on internal edges at all: Gamma_- Gamma_+ on odd slots,
/// Gamma'_- Gamma'_+ on even ones. Agreement with strip_amplitude is the
/// statement that the internal kappa factors cancel.
template <class Real>
Amplitude<Real> strip_amplitude_fermionic(const StripSpec<Real>& sp) {
    if (int(sp.Q.size()) != 2 * sp.N - 1) throw config_error("strip: need 2N-1 Kahler parameters");
    const Real& q = sp.q;
    detail::Registry reg(sp.internal_cutoff);
    const int ta0 = reg.add(conjugate(sp.alpha0)), a2N = reg.add(sp.alpha2N);
    std::vector<int> beta;
    for (int n = 1; n <= 2 * sp.N; ++n) beta.push_back(reg.add(sp.b(n)));
    auto odd = detail::memo3<Real>(
        [&](int L, int b, int R) { return vertex_bracket(reg.parts[L], reg.parts[b], reg.parts[R], q, 1); });
    auto even = detail::memo3<Real>(
        [&](int L, int b, int R) { return vertex_bracket(reg.parts[L], reg.parts[b], reg.parts[R], q, 2); });
    Real pref(1);
    for (int n = 1; n <= 2 * sp.N; ++n) pref *= schur(sp.b(n), Specialization<Real>::principal(q));
    pref *= rpow(q, -Real(kappa(sp.alpha0) + kappa(sp.alpha2N)) / Real(2));
    const int nint = 2 * sp.N - 1;
    return detail::internal_sum<Real>(reg, nint, sp.internal_cutoff, [&](const std::vector<int>& al) {
        auto st = [&](int n) { return n == 0 ? ta0 : n == 2 * sp.N ? a2N : al[n - 1]; };
        Real t(1);
        for (int n = 1; n <= 2 * sp.N; ++n) {
            const int R = st(n);
            t *= n % 2 ? odd(st(n - 1), beta[n - 1], R) : even(st(n - 1), beta[n - 1], R);
            if (n < 2 * sp.N) t *= ipow(-sp.Q[n - 1], reg.parts[R].weight());
        }
        return pref * t;
    });
}

template <class Real>
struct CrossCheck {
    Real lhs, rhs, tail, depth_change;
    double rel;
};

/// <l| g |m> from the minor of U vs q^((|l|-|m|)/2) Z_{tl 0..0 m} at Q -> -Q,
/// for a batch of (l, m) pairs sharing one U. The minor is evaluated in
/// MatReal: for N >= 2 it cancels heavily. depth_change is the move of the
/// minor when the depth drops by one.
template <class Real, class MatReal = Real>
std::vector<CrossCheck<Real>> cross_check_amplitudes(const std::vector<std::pair<Partition, Partition>>& pairs,
                                                     const ModelParams<Real>& p, int cutoff, int depth) {
    ModelParams<MatReal> pm{p.N, MatReal(to_double(p.q)), {}};
    for (auto& x : p.Q) pm.Q.push_back(MatReal(to_double(x)));
    auto U1 = build_U(pm, Window{-depth + 1, std::max(24, depth)});
    auto U2 = build_U(pm, Window{-depth + 2, std::max(24, depth)});
    std::vector<CrossCheck<Real>> out;
    for (auto& [l, m] : pairs) {
        Real lhs(to_double(matrix_element(U1, l, m, 0, pm.P())));
        Real lhs2(to_double(matrix_element(U2, l, m, 0, pm.P())));
        StripSpec<Real> sp;
        sp.N = p.N;
        sp.alpha0 = conjugate(l);
        sp.alpha2N = m;
        sp.q = p.q;
        for (auto& x : p.Q) sp.Q.push_back(-x);
        sp.internal_cutoff = cutoff;
        auto Z = strip_amplitude(sp);
        Real rhs = rpow(p.q, Real(l.weight() - m.weight()) / Real(2)) * Z.value;
        CrossCheck<Real> c{lhs, rhs, Z.tail, rabs(lhs - lhs2), 0.0};
        c.rel = to_double(rabs(lhs - rhs) / rabs(rhs));
        out.push_back(c);
    }
    return out;
}

template <class Real, class MatReal = Real>
CrossCheck<Real> cross_check_amplitude(const Partition& l, const Partition& m, const ModelParams<Real>& p,
                                       int cutoff, int depth) {
    return cross_check_amplitudes<Real, MatReal>({{l, m}}, p, cutoff, depth).front();
}

/// <l| q^(+-W0/2) |m> from the minor of the diagonal q^(+-Delta^2/2)
template <class Real>
Real w0_element(const Partition& l, const Partition& m, const Real& q, bool plus, int depth = 12) {
    Window w{-depth + 1, depth + 8};
    auto d = diagonal<Real>([&](int s) { return rpow(q, (plus ? Real(1) : Real(-1)) * Real(s) * Real(s) / Real(2)); }, w);
    return matrix_element(d, l, m, 0, Real(1)) / matrix_element(d, Partition{}, Partition{}, 0, Real(1));
}

}  // namespace gcon
