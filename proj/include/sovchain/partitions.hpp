#pragma once

#include "sovchain/matrix.hpp"
#include "sovchain/ring.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sovchain {

/// Integer partition: weakly decreasing parts, trailing zeros trimmed.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts)
        : parts_(std::move(parts))
    {
        for (std::size_t i = 1; i < parts_.size(); ++i)
            if (parts_[i] > parts_[i - 1])
                throw std::invalid_argument("partition parts must be weakly decreasing");
        for (int p : parts_)
            if (p < 0) throw std::invalid_argument("partition parts must be nonnegative");
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    }

    static Partition rectangle(int height, int width)
    {
        return Partition(std::vector<int>(static_cast<std::size_t>(height), width));
    }

    const std::vector<int>& parts() const { return parts_; }
    int part(std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
    int height() const { return static_cast<int>(parts_.size()); }
    int width() const { return parts_.empty() ? 0 : parts_[0]; }
    bool empty() const { return parts_.empty(); }

    int boxes() const
    {
        int n = 0;
        for (int p : parts_) n += p;
        return n;
    }

    Partition transpose() const
    {
        std::vector<int> t(static_cast<std::size_t>(width()), 0);
        for (int p : parts_)
            for (int j = 0; j < p; ++j) ++t[static_cast<std::size_t>(j)];
        return Partition(std::move(t));
    }

    /// Shifted weight lambda_j - j + 1 (1-based j).
    int shifted_part(int j) const { return part(static_cast<std::size_t>(j - 1)) - j + 1; }

    /// Componentwise containment after zero padding.
    bool contains(const Partition& o) const
    {
        for (int i = 0; i < std::max(height(), o.height()); ++i)
            if (part(static_cast<std::size_t>(i)) < o.part(static_cast<std::size_t>(i)))
                return false;
        return true;
    }

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }
    bool operator!=(const Partition& o) const { return !(*this == o); }
    bool operator<(const Partition& o) const { return parts_ < o.parts_; }

    std::string to_string() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts_[i]);
        }
        return s + ")";
    }

private:
    std::vector<int> parts_;
};

/// All partitions contained in the given bounding shape, in lexicographic
/// order (empty partition first).
inline std::vector<Partition> partitions_within(const Partition& bound)
{
    std::vector<Partition> out;
    std::vector<int> stack;
    auto rec2 = [&](auto&& self, int row) -> void {
        out.push_back(Partition(stack));
        if (row >= bound.height()) return;
        int cap = bound.part(static_cast<std::size_t>(row));
        if (row > 0) cap = std::min(cap, stack[static_cast<std::size_t>(row - 1)]);
        for (int v = 1; v <= cap; ++v) {
            stack.push_back(v);
            self(self, row + 1);
            stack.pop_back();
        }
    };
    rec2(rec2, 0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Weyl dimension formula for the gl(N) irrep with highest weight lambda.
inline long weyl_dim(const Partition& lambda, int n)
{
    if (lambda.height() > n) return 0;
    long num = 1, den = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            num *= lambda.part(static_cast<std::size_t>(i - 1)) -
                   lambda.part(static_cast<std::size_t>(j - 1)) + j - i;
            den *= j - i;
        }
    return num / den;
}

/// Semistandard Young tableaux of shape mu with entries in 1..n, as flat
/// row-major entry lists.
inline std::vector<std::vector<int>> semistandard_tableaux(const Partition& mu, int n)
{
    std::vector<std::vector<int>> result;
    if (mu.height() > n) return result;
    const int h = mu.height();
    std::vector<std::vector<int>> t(static_cast<std::size_t>(h));
    for (int r = 0; r < h; ++r)
        t[static_cast<std::size_t>(r)].assign(static_cast<std::size_t>(mu.part(r)), 0);

    auto rec = [&](auto&& self, int r, int c) -> void {
        if (r == h) {
            std::vector<int> flat;
            for (const auto& row : t)
                for (int v : row) flat.push_back(v);
            result.push_back(std::move(flat));
            return;
        }
        int nr = r, nc = c + 1;
        if (nc >= mu.part(static_cast<std::size_t>(r))) {
            nr = r + 1;
            nc = 0;
        }
        int lo = 1;
        if (c > 0) lo = std::max(lo, t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c - 1)]);
        if (r > 0) lo = std::max(lo, t[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c)] + 1);
        for (int v = lo; v <= n; ++v) {
            t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
            self(self, nr, nc);
        }
        t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = 0;
    };
    if (h == 0) {
        result.push_back({});
        return result;
    }
    rec(rec, 0, 0);
    return result;
}

/// Schur character as a sum over semistandard tableaux.  Works for any z,
/// including coincident entries.
template <class R>
R schur_ssyt(const Partition& mu, const std::vector<R>& z)
{
    const int n = static_cast<int>(z.size());
    R total(0);
    for (const auto& tab : semistandard_tableaux(mu, n)) {
        R term(1);
        for (int v : tab) term *= z[static_cast<std::size_t>(v - 1)];
        total += term;
    }
    return total;
}

/// Schur character via the bialternant determinant ratio
/// det(z_i^{mu_j + n - j}) / det(z_i^{n - j}); needs pairwise distinct z.
template <class R>
R schur_det(const Partition& mu, const std::vector<R>& z)
{
    const std::size_t n = z.size();
    if (static_cast<std::size_t>(mu.height()) > n)
        throw std::invalid_argument("schur_det: partition taller than variable count");
    auto power = [](R base, int e) {
        R r(1);
        for (int k = 0; k < e; ++k) r *= base;
        return r;
    };
    Matrix<R> num(n, n), den(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            num(i, j) = power(z[i], mu.part(j) + static_cast<int>(n - 1 - j));
            den(i, j) = power(z[i], static_cast<int>(n - 1 - j));
        }
    const R d = den.det();
    if (RingTraits<R>::is_zero(d, 0.0))
        throw std::invalid_argument("schur_det: coincident variables");
    return num.det() / d;
}

/// Schur character; determinant-ratio backend with SSYT fallback for
/// degenerate variable tuples.
template <class R>
R schur(const Partition& mu, const std::vector<R>& z)
{
    if (mu.empty()) return R(1);
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j)
            if (RingTraits<R>::is_zero(z[i] - z[j], 0.0)) return schur_ssyt(mu, z);
    return schur_det(mu, z);
}

} // namespace sovchain
