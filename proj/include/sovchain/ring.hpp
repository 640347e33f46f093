#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

namespace sovchain {

/// Exact coefficient ring: arbitrary-precision rationals.
using Rational = boost::multiprecision::cpp_rational;

/// Approximate coefficient ring used where eigen-decomposition forces it.
using Complex = std::complex<double>;

/// Default tolerance for comparisons in the complex-float ring.
inline constexpr double kDefaultTol = 1e-10;

template <class R>
struct RingTraits;

template <>
struct RingTraits<Rational> {
    static constexpr bool exact = true;
    static bool is_zero(const Rational& x, double /*tol*/ = 0.0) { return x == 0; }
    static double abs(const Rational& x)
    {
        return std::fabs(static_cast<double>(x));
    }
    static Rational conj(const Rational& x) { return x; }
    static Rational from_int(std::int64_t n) { return Rational(n); }
    static std::string to_string(const Rational& x) { return x.str(); }
};

template <>
struct RingTraits<Complex> {
    static constexpr bool exact = false;
    static bool is_zero(const Complex& x, double tol = kDefaultTol)
    {
        return std::abs(x) <= tol;
    }
    static double abs(const Complex& x) { return std::abs(x); }
    static Complex conj(const Complex& x) { return std::conj(x); }
    static Complex from_int(std::int64_t n) { return Complex(double(n), 0.0); }
    static std::string to_string(const Complex& x)
    {
        return "(" + std::to_string(x.real()) + "," + std::to_string(x.imag()) + ")";
    }
};

inline Complex to_complex(const Rational& x) { return Complex(static_cast<double>(x), 0.0); }
inline Complex to_complex(const Complex& x) { return x; }

/// Parses "p/q" or "p" into a Rational.
inline Rational rational_from_string(const std::string& s)
{
    return Rational(s);
}

} // namespace sovchain
