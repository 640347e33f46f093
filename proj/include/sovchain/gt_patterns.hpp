#pragma once

#include "sovchain/chain_spec.hpp"
#include "sovchain/partitions.hpp"
#include "sovchain/poly.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sovchain {

/// Triangular Gelfand-Tsetlin array.  rows[k-1] holds level k
/// (k = 1..N entries lambda_{k,1..k}); rows[N-1] is the fixed top row.
class GTPattern {
public:
    GTPattern() = default;
    explicit GTPattern(std::vector<std::vector<int>> rows)
        : rows_(std::move(rows))
    {
        const int n = levels();
        for (int k = 1; k <= n; ++k)
            if (static_cast<int>(rows_[static_cast<std::size_t>(k - 1)].size()) != k)
                throw std::invalid_argument("GT pattern: level k must have k entries");
        for (int k = 2; k <= n; ++k)
            for (int i = 1; i <= k - 1; ++i)
                if (!(at(k, i) >= at(k - 1, i) && at(k - 1, i) >= at(k, i + 1)))
                    throw std::invalid_argument("GT pattern: interlacing violated");
    }

    int levels() const { return static_cast<int>(rows_.size()); }

    /// lambda_{k,i}, 1-based.
    int at(int k, int i) const
    {
        return rows_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i - 1)];
    }

    const std::vector<std::vector<int>>& rows() const { return rows_; }

    Partition top() const
    {
        return Partition(rows_.back());
    }

    /// Cartan weight: w_k = (sum of level k) - (sum of level k-1).
    std::vector<int> weight() const
    {
        std::vector<int> w;
        int prev = 0;
        for (int k = 1; k <= levels(); ++k) {
            int s = 0;
            for (int i = 1; i <= k; ++i) s += at(k, i);
            w.push_back(s - prev);
            prev = s;
        }
        return w;
    }

    bool operator==(const GTPattern& o) const { return rows_ == o.rows_; }
    bool operator<(const GTPattern& o) const { return rows_ < o.rows_; }

private:
    std::vector<std::vector<int>> rows_;
};

/// All GT patterns with the given top row, each exactly once.  The count
/// equals the dimension of the gl(N) irrep with highest weight nu.
inline std::vector<GTPattern> enumerate_gt(const Partition& nu, int n)
{
    if (nu.height() > n) throw std::invalid_argument("enumerate_gt: weight too tall");
    std::vector<int> top;
    for (int i = 0; i < n; ++i) top.push_back(nu.part(static_cast<std::size_t>(i)));

    std::vector<std::vector<std::vector<int>>> partial = {{top}};
    for (int k = n - 1; k >= 1; --k) {
        std::vector<std::vector<std::vector<int>>> next;
        for (const auto& rows : partial) {
            const auto& above = rows.front();
            std::vector<int> row(static_cast<std::size_t>(k));
            auto rec = [&](auto&& self, int i) -> void {
                if (i == k) {
                    auto ext = rows;
                    ext.insert(ext.begin(), row);
                    next.push_back(std::move(ext));
                    return;
                }
                const int hi = above[static_cast<std::size_t>(i)];
                const int lo = above[static_cast<std::size_t>(i + 1)];
                int cap = hi;
                if (i > 0) cap = std::min(cap, row[static_cast<std::size_t>(i - 1)]);
                for (int v = lo; v <= cap; ++v) {
                    row[static_cast<std::size_t>(i)] = v;
                    self(self, i + 1);
                }
            };
            rec(rec, 0);
        }
        partial = std::move(next);
    }
    std::vector<GTPattern> out;
    out.reserve(partial.size());
    for (auto& rows : partial) out.push_back(GTPattern(std::move(rows)));
    return out;
}

/// The free diamond of a rectangular GT pattern relabelled as an
/// (N-A) x A table, m[k-1][j-1] = lambda_{k+j-1, j}.
class RectPattern {
public:
    RectPattern() = default;

    RectPattern(std::vector<std::vector<int>> m, int s_max)
        : m_(std::move(m))
    {
        const int nk = static_cast<int>(m_.size());
        for (int k = 1; k <= nk; ++k) {
            const auto& row = m_[static_cast<std::size_t>(k - 1)];
            for (int j = 1; j <= static_cast<int>(row.size()); ++j) {
                const int v = row[static_cast<std::size_t>(j - 1)];
                if (v < 0 || v > s_max)
                    throw std::invalid_argument("rect pattern: entry out of [0, S]");
                if (j > 1 && v > row[static_cast<std::size_t>(j - 2)])
                    throw std::invalid_argument("rect pattern: rows must be weakly decreasing");
                if (k > 1 && v < m_[static_cast<std::size_t>(k - 2)][static_cast<std::size_t>(j - 1)])
                    throw std::invalid_argument("rect pattern: columns must be weakly increasing");
            }
        }
    }

    int rows() const { return static_cast<int>(m_.size()); }
    int cols() const { return m_.empty() ? 0 : static_cast<int>(m_.front().size()); }

    /// m_{k,j}, 1-based.
    int at(int k, int j) const
    {
        return m_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)];
    }

    /// Row k as a partition mu_k = [m_{k1} >= ... >= m_{kA}].
    Partition row_partition(int k) const
    {
        return Partition(m_[static_cast<std::size_t>(k - 1)]);
    }

    const std::vector<std::vector<int>>& table() const { return m_; }

    std::vector<int> flattened() const
    {
        std::vector<int> flat;
        for (const auto& row : m_)
            for (int v : row) flat.push_back(v);
        return flat;
    }

    bool operator==(const RectPattern& o) const { return m_ == o.m_; }
    bool operator<(const RectPattern& o) const { return flattened() < o.flattened(); }

private:
    std::vector<std::vector<int>> m_;
};

/// True iff the pattern has top row (S^A) and all nodes outside the free
/// diamond take their forced values (S on the left, 0 on the right).
inline bool is_rectangular_type(const GTPattern& p, int a, int s)
{
    const int n = p.levels();
    if (p.top() != Partition::rectangle(a, s)) return false;
    for (int l = 1; l < n; ++l)
        for (int j = 1; j <= l; ++j) {
            const int k = l - j + 1;
            const bool free_node = (j <= a) && (k >= 1) && (k <= n - a);
            if (free_node) continue;
            const int forced = (j <= a) ? s : 0;
            if (p.at(l, j) != forced) return false;
        }
    return true;
}

inline RectPattern rect_from_gt(const GTPattern& p, int a, int s)
{
    const int n = p.levels();
    if (!is_rectangular_type(p, a, s))
        throw std::invalid_argument("rect_from_gt: pattern not of rectangular type");
    std::vector<std::vector<int>> m(static_cast<std::size_t>(n - a),
                                    std::vector<int>(static_cast<std::size_t>(a), 0));
    for (int k = 1; k <= n - a; ++k)
        for (int j = 1; j <= a; ++j)
            m[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)] = p.at(k + j - 1, j);
    return RectPattern(std::move(m), s);
}

inline GTPattern gt_from_rect(const RectPattern& r, int n, int a, int s)
{
    std::vector<std::vector<int>> rows;
    for (int l = 1; l <= n; ++l) {
        std::vector<int> row;
        for (int j = 1; j <= l; ++j) {
            const int k = l - j + 1;
            if (l == n)
                row.push_back(j <= a ? s : 0);
            else if (j <= a && k >= 1 && k <= n - a)
                row.push_back(r.at(k, j));
            else
                row.push_back(j <= a ? s : 0);
        }
        rows.push_back(std::move(row));
    }
    return GTPattern(std::move(rows));
}

/// All RectPatterns for (N, A, S), lexicographic on the flattened table.
inline std::vector<RectPattern> enumerate_rect(int n, int a, int s)
{
    std::vector<RectPattern> out;
    for (const auto& p : enumerate_gt(Partition::rectangle(a, s), n))
        if (is_rectangular_type(p, a, s)) out.push_back(rect_from_gt(p, a, s));
    std::sort(out.begin(), out.end());
    return out;
}

/// L-tuple of per-site RectPatterns.
struct PatternTuple {
    std::vector<RectPattern> patterns;

    bool operator==(const PatternTuple& o) const { return patterns == o.patterns; }
    bool operator<(const PatternTuple& o) const
    {
        for (std::size_t i = 0; i < patterns.size(); ++i) {
            if (patterns[i] < o.patterns[i]) return true;
            if (o.patterns[i] < patterns[i]) return false;
        }
        return false;
    }
};

/// All L-tuples, sites in order alpha = 1..L, lexicographic.
inline std::vector<PatternTuple> enumerate_tuples(int n, int a, int s, int l)
{
    const auto site = enumerate_rect(n, a, s);
    std::vector<PatternTuple> out;
    std::vector<RectPattern> cur;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == l) {
            out.push_back(PatternTuple{cur});
            return;
        }
        for (const auto& p : site) {
            cur.push_back(p);
            self(self, pos + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

/// Predicted separated-variable eigenvalue table
/// x_{kj}^alpha = theta_alpha + hbar (m_{kj}^alpha + 1 - j).
template <class R>
struct SpectrumTable {
    // x[alpha][k-1][j-1]
    std::vector<std::vector<std::vector<R>>> x;
    Poly<R> b_poly; // prod (u - x_{kj}^alpha)
};

template <class R>
SpectrumTable<R> predicted_x(const PatternTuple& t, const ChainSpec<R>& spec)
{
    SpectrumTable<R> out;
    std::vector<R> roots;
    for (int alpha = 0; alpha < spec.L; ++alpha) {
        const RectPattern& p = t.patterns[static_cast<std::size_t>(alpha)];
        std::vector<std::vector<R>> site;
        for (int k = 1; k <= spec.N - spec.A; ++k) {
            std::vector<R> row;
            for (int j = 1; j <= spec.A; ++j) {
                R x = spec.theta[static_cast<std::size_t>(alpha)] +
                      spec.hbar * R(p.at(k, j) + 1 - j);
                roots.push_back(x);
                row.push_back(std::move(x));
            }
            site.push_back(std::move(row));
        }
        out.x.push_back(std::move(site));
    }
    out.b_poly = Poly<R>::from_roots(roots);
    return out;
}

/// Predicted full B-spectrum factor for a general (not necessarily
/// rectangular) pattern tuple: prod over k=1..N-1, j=1..N-k of
/// (u - theta_alpha - hbar (lambda_{k+j-1,j} + 1 - j)).
template <class R>
Poly<R> predicted_b_general(const std::vector<GTPattern>& tuple, const std::vector<R>& theta,
                            const R& hbar)
{
    std::vector<R> roots;
    for (std::size_t alpha = 0; alpha < tuple.size(); ++alpha) {
        const GTPattern& p = tuple[alpha];
        const int n = p.levels();
        for (int k = 1; k <= n - 1; ++k)
            for (int j = 1; j <= n - k; ++j)
                roots.push_back(theta[alpha] + hbar * R(p.at(k + j - 1, j) + 1 - j));
    }
    return Poly<R>::from_roots(roots);
}

} // namespace sovchain
