#pragma once

#include "sovchain/ring.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sovchain {

/// Dense univariate polynomial in the spectral parameter u, coefficients
/// stored ascending in degree.  The zero polynomial has an empty
/// coefficient list.
template <class R>
class Poly {
public:
    Poly() = default;

    explicit Poly(std::vector<R> coeffs)
        : coeffs_(std::move(coeffs))
    {
        trim();
    }

    static Poly zero() { return Poly(); }
    static Poly constant(const R& c) { return Poly(std::vector<R>{c}); }
    static Poly identity_u() { return Poly(std::vector<R>{R(0), R(1)}); }

    /// Monic product of (u - r) over the given roots.
    static Poly from_roots(const std::vector<R>& roots)
    {
        Poly p = constant(R(1));
        for (const R& r : roots) p = p * Poly(std::vector<R>{-r, R(1)});
        return p;
    }

    const std::vector<R>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    R coeff(std::size_t k) const
    {
        return k < coeffs_.size() ? coeffs_[k] : R(0);
    }

    R leading() const
    {
        if (coeffs_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    R eval(const R& u) const
    {
        R acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
        return acc;
    }

    /// p(u + n*hbar) via Horner in the shifted variable.
    Poly shifted(long n, const R& hbar) const
    {
        const R c = hbar * R(n);
        Poly acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * Poly(std::vector<R>{c, R(1)}) + constant(*it);
        }
        return acc;
    }

    Poly operator+(const Poly& o) const
    {
        std::vector<R> c(std::max(coeffs_.size(), o.coeffs_.size()), R(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
        return Poly(std::move(c));
    }

    Poly operator-(const Poly& o) const
    {
        std::vector<R> c(std::max(coeffs_.size(), o.coeffs_.size()), R(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] -= o.coeffs_[i];
        return Poly(std::move(c));
    }

    Poly operator*(const Poly& o) const
    {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<R> c(coeffs_.size() + o.coeffs_.size() - 1, R(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
                c[i + j] += coeffs_[i] * o.coeffs_[j];
        return Poly(std::move(c));
    }

    Poly operator*(const R& s) const
    {
        std::vector<R> c = coeffs_;
        for (R& x : c) x *= s;
        return Poly(std::move(c));
    }

    Poly operator-() const { return *this * R(-1); }

    bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Quotient and remainder; exact over a field.
    std::pair<Poly, Poly> divmod(const Poly& d) const
    {
        if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
        std::vector<R> rem = coeffs_;
        const int dd = d.degree();
        if (degree() < dd) return {Poly(), *this};
        std::vector<R> quot(degree() - dd + 1, R(0));
        for (int k = degree() - dd; k >= 0; --k) {
            R q = rem[k + dd] / d.coeffs_.back();
            quot[k] = q;
            for (int j = 0; j <= dd; ++j) rem[k + j] -= q * d.coeffs_[j];
        }
        return {Poly(std::move(quot)), Poly(std::move(rem))};
    }

    Poly monic() const
    {
        if (is_zero()) return *this;
        return *this * (R(1) / leading());
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && RingTraits<R>::is_zero(coeffs_.back(), 0.0)) coeffs_.pop_back();
    }

    std::vector<R> coeffs_;
};

/// Q_theta(u) = prod_a (u - theta_a).
template <class R>
Poly<R> q_theta(const std::vector<R>& theta)
{
    return Poly<R>::from_roots(theta);
}

/// Newton divided-difference interpolation; exact over an exact ring.
/// Abscissae must be pairwise distinct.
template <class R>
Poly<R> interpolate(const std::vector<std::pair<R, R>>& points)
{
    const std::size_t n = points.size();
    if (n == 0) return Poly<R>();
    std::vector<R> coef(n);
    for (std::size_t i = 0; i < n; ++i) coef[i] = points[i].second;
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = n - 1; i >= level; --i) {
            const R dx = points[i].first - points[i - level].first;
            if (RingTraits<R>::is_zero(dx, 0.0))
                throw std::invalid_argument("interpolate: duplicate abscissae");
            coef[i] = (coef[i] - coef[i - 1]) / dx;
        }
    }
    Poly<R> result = Poly<R>::constant(coef[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) {
        Poly<R> lin(std::vector<R>{-points[i].first, R(1)});
        result = result * lin + Poly<R>::constant(coef[i]);
    }
    return result;
}

template <class R>
Poly<Complex> poly_to_complex(const Poly<R>& p)
{
    std::vector<Complex> c;
    c.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs()) c.push_back(to_complex(x));
    return Poly<Complex>(std::move(c));
}

} // namespace sovchain
