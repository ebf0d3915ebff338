#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace gcon {

// 50 decimal digits, no expression templates so `auto` and Eigen behave.
using big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                          boost::multiprecision::et_off>;

// The initial factorization for N >= 3 cancels about 115 digits on a
// 73-site window.
using wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<160>,
                                           boost::multiprecision::et_off>;

template <class Real>
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real>
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Error categories map onto the CLI exit codes.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class Real>
inline double to_double(const Real& x) {
    return static_cast<double>(x);
}

template <class Real>
inline Real rabs(const Real& x) {
    using std::abs;
    return abs(x);
}

// q^x for real exponent
template <class Real>
inline Real rpow(const Real& q, const Real& x) {
    using std::pow;
    return pow(q, x);
}

template <class Real>
inline Real ipow(Real x, long n) {
    if (n < 0) {
        x = Real(1) / x;
        n = -n;
    }
    Real r(1);
    while (n) {
        if (n & 1) r *= x;
        x *= x;
        n >>= 1;
    }
    return r;
}

// (q;q)_m
template <class Real>
inline Real qpoch(const Real& q, int m) {
    Real r(1), qj(1);
    for (int j = 1; j <= m; ++j) {
        qj *= q;
        r *= Real(1) - qj;
    }
    return r;
}

template <class Real>
inline void require_q(const Real& q) {
    if (!(q > Real(0) && q < Real(1)))
        throw config_error("q must lie in (0, 1), got " + std::to_string(to_double(q)));
}

}  // namespace gcon
