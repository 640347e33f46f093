#pragma once

#include "sovchain/chain_spec.hpp"
#include "sovchain/glrep.hpp"
#include "sovchain/matrix.hpp"
#include "sovchain/partitions.hpp"
#include "sovchain/poly.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sovchain {

/// Polynomial in the spectral parameter whose coefficients are operators
/// on the chain Hilbert space.  Coefficients ascending; the zero
/// polynomial keeps its operator dimension.
template <class R>
class OpPoly {
public:
    OpPoly() = default;

    explicit OpPoly(std::size_t dim)
        : dim_(dim)
    {
    }

    OpPoly(std::size_t dim, std::vector<Matrix<R>> coeffs)
        : dim_(dim), c_(std::move(coeffs))
    {
        for (const auto& m : c_)
            if (m.rows() != dim_ || m.cols() != dim_)
                throw std::invalid_argument("operator polynomial: coefficient shape mismatch");
        trim();
    }

    static OpPoly constant(Matrix<R> m)
    {
        const std::size_t d = m.rows();
        return OpPoly(d, std::vector<Matrix<R>>{std::move(m)});
    }

    std::size_t dim() const { return dim_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const Matrix<R>& coeff_ref(std::size_t k) const { return c_[k]; }
    Matrix<R> coeff(std::size_t k) const
    {
        return k < c_.size() ? c_[k] : Matrix<R>(dim_, dim_);
    }

    Matrix<R> eval(const R& u) const
    {
        Matrix<R> acc(dim_, dim_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * u + *it;
        return acc;
    }

    /// p(u + n*hbar).
    OpPoly shifted(long n, const R& hbar) const
    {
        if (n == 0) return *this;
        const R c = hbar * R(n);
        OpPoly acc(dim_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            // acc = acc*(u + c) + coeff
            OpPoly next(dim_);
            next.c_.assign(acc.c_.size() + 1, Matrix<R>(dim_, dim_));
            for (std::size_t k = 0; k < acc.c_.size(); ++k) {
                next.c_[k + 1] = next.c_[k + 1] + acc.c_[k];
                next.c_[k] = next.c_[k] + acc.c_[k] * c;
            }
            if (next.c_.empty()) next.c_.push_back(Matrix<R>(dim_, dim_));
            next.c_[0] = next.c_[0] + *it;
            next.trim();
            acc = std::move(next);
        }
        return acc;
    }

    OpPoly operator+(const OpPoly& o) const
    {
        check_dim(o);
        OpPoly r(dim_);
        r.c_.assign(std::max(c_.size(), o.c_.size()), Matrix<R>(dim_, dim_));
        for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = r.c_[k] + c_[k];
        for (std::size_t k = 0; k < o.c_.size(); ++k) r.c_[k] = r.c_[k] + o.c_[k];
        r.trim();
        return r;
    }

    OpPoly operator-(const OpPoly& o) const { return *this + o * R(-1); }

    /// Operator product; coefficient order is preserved (left factor acts
    /// after the right one in operator composition, as in matrix products).
    OpPoly operator*(const OpPoly& o) const
    {
        check_dim(o);
        if (is_zero() || o.is_zero()) return OpPoly(dim_);
        OpPoly r(dim_);
        r.c_.assign(c_.size() + o.c_.size() - 1, Matrix<R>(dim_, dim_));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
        r.trim();
        return r;
    }

    OpPoly operator*(const R& s) const
    {
        OpPoly r = *this;
        for (auto& m : r.c_) m = m * s;
        r.trim();
        return r;
    }

    bool operator==(const OpPoly& o) const { return dim_ == o.dim_ && c_ == o.c_; }

    /// Leading coefficient must be a scalar multiple of the identity;
    /// returns that scalar.
    R leading_scalar() const
    {
        if (is_zero()) throw std::logic_error("leading scalar of zero operator polynomial");
        const Matrix<R>& top = c_.back();
        const R s = top(0, 0);
        if (!(top - Matrix<R>::identity(dim_) * s).is_zero())
            throw std::logic_error("leading coefficient is not proportional to identity");
        return s;
    }

    OpPoly monic() const
    {
        return *this * (R(1) / leading_scalar());
    }

    /// Newton interpolation through (u_k, operator) samples.
    static OpPoly from_samples(std::size_t dim, const std::vector<std::pair<R, Matrix<R>>>& pts)
    {
        const std::size_t n = pts.size();
        if (n == 0) return OpPoly(dim);
        std::vector<Matrix<R>> coef;
        coef.reserve(n);
        for (const auto& p : pts) coef.push_back(p.second);
        for (std::size_t level = 1; level < n; ++level)
            for (std::size_t i = n - 1; i >= level; --i) {
                const R dx = pts[i].first - pts[i - level].first;
                if (RingTraits<R>::is_zero(dx, 0.0))
                    throw std::invalid_argument("operator interpolation: duplicate abscissae");
                coef[i] = (coef[i] - coef[i - 1]) * (R(1) / dx);
            }
        OpPoly result = constant(coef[n - 1]);
        for (std::size_t i = n - 1; i-- > 0;) {
            // result = result*(u - u_i) + coef[i]
            OpPoly next(dim);
            next.c_.assign(result.c_.size() + 1, Matrix<R>(dim, dim));
            for (std::size_t k = 0; k < result.c_.size(); ++k) {
                next.c_[k + 1] = next.c_[k + 1] + result.c_[k];
                next.c_[k] = next.c_[k] + result.c_[k] * (-pts[i].first);
            }
            next.c_[0] = next.c_[0] + coef[i];
            next.trim();
            result = std::move(next);
        }
        return result;
    }

private:
    void check_dim(const OpPoly& o) const
    {
        if (dim_ != o.dim_) throw std::invalid_argument("operator polynomial dim mismatch");
    }

    void trim()
    {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::size_t dim_ = 0;
    std::vector<Matrix<R>> c_;
};

/// N x N table of operator-valued polynomial entries T_ij(u) acting on
/// the chain Hilbert space.
template <class R>
struct Monodromy {
    int N = 0;
    std::size_t dim = 0; // dim of the Hilbert space
    ChainSpec<R> spec;
    std::vector<OpPoly<R>> t; // row-major, (i-1)*N + (j-1)

    const OpPoly<R>& entry(int i, int j) const
    {
        return t[static_cast<std::size_t>((i - 1) * N + (j - 1))];
    }

    Matrix<R> eval(int i, int j, const R& u0) const { return entry(i, j).eval(u0); }

    /// Right-twisted monodromy T(u) G in the auxiliary space.
    Monodromy twisted(const Matrix<R>& g) const
    {
        Monodromy out;
        out.N = N;
        out.dim = dim;
        out.spec = spec;
        out.t.assign(t.size(), OpPoly<R>(dim));
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j) {
                OpPoly<R> acc(dim);
                for (int k = 1; k <= N; ++k) {
                    const R& gkj = g(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(j - 1));
                    if (RingTraits<R>::is_zero(gkj, 0.0)) continue;
                    acc = acc + entry(i, k) * gkj;
                }
                out.t[static_cast<std::size_t>((i - 1) * N + (j - 1))] = std::move(acc);
            }
        return out;
    }
};

/// E_{ij} of the site representation acting on site alpha of V^{x L}.
template <class R>
Matrix<R> site_generator(const Rep<R>& rep, int sites, int alpha, int i, int j)
{
    Matrix<R> m = Matrix<R>::identity(1);
    for (int a = 1; a <= sites; ++a)
        m = Matrix<R>::kron(m, a == alpha ? rep.e(i, j) : Matrix<R>::identity(rep.dim));
    return m;
}

/// T(u) = R_L(u - theta_L) ... R_1(u - theta_1) with
/// R(u)_{ij} = u delta_ij - hbar pi(E_ji).
template <class R>
Monodromy<R> build_monodromy(const ChainSpec<R>& spec, const Rep<R>& rep)
{
    spec.validate();
    Monodromy<R> m;
    m.N = spec.N;
    m.spec = spec;
    std::size_t dim = 1;
    for (int a = 0; a < spec.L; ++a) dim *= rep.dim;
    m.dim = dim;

    const int n = spec.N;
    // current = identity in the auxiliary space
    std::vector<OpPoly<R>> cur(static_cast<std::size_t>(n * n), OpPoly<R>(dim));
    for (int i = 0; i < n; ++i)
        cur[static_cast<std::size_t>(i * n + i)] = OpPoly<R>::constant(Matrix<R>::identity(dim));

    for (int alpha = 1; alpha <= spec.L; ++alpha) {
        // site factor entries: (u - theta_alpha) delta_ij - hbar E_ji at site alpha
        std::vector<OpPoly<R>> site(static_cast<std::size_t>(n * n), OpPoly<R>(dim));
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                std::vector<Matrix<R>> c;
                Matrix<R> c0 = site_generator(rep, spec.L, alpha, j, i) * (-spec.hbar);
                if (i == j)
                    c0 = c0 - Matrix<R>::identity(dim) * spec.theta[static_cast<std::size_t>(alpha - 1)];
                c.push_back(std::move(c0));
                if (i == j) c.push_back(Matrix<R>::identity(dim));
                site[static_cast<std::size_t>((i - 1) * n + (j - 1))] = OpPoly<R>(dim, std::move(c));
            }
        // new = site * cur  (site alpha multiplies from the left)
        std::vector<OpPoly<R>> next(static_cast<std::size_t>(n * n), OpPoly<R>(dim));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                OpPoly<R> acc(dim);
                for (int k = 0; k < n; ++k)
                    acc = acc + site[static_cast<std::size_t>(i * n + k)] *
                                    cur[static_cast<std::size_t>(k * n + j)];
                next[static_cast<std::size_t>(i * n + j)] = std::move(acc);
            }
        cur = std::move(next);
    }
    m.t = std::move(cur);
    return m;
}

/// Elementary symmetric polynomials: prod (t + z_i) = sum t^{N-i} chi_i.
template <class R>
std::vector<R> elementary_symmetric(const std::vector<R>& z)
{
    std::vector<R> chi(z.size() + 1, R(0));
    chi[0] = R(1);
    for (const R& zi : z)
        for (std::size_t k = chi.size() - 1; k >= 1; --k) chi[k] += chi[k - 1] * zi;
    return chi;
}

/// Companion twist G_{kj} = (-1)^{j-1} chi_j delta_{k1} + delta_{k,j+1}.
template <class R>
Matrix<R> companion_twist(const std::vector<R>& z)
{
    const std::size_t n = z.size();
    const std::vector<R> chi = elementary_symmetric(z);
    Matrix<R> g(n, n);
    for (std::size_t j = 1; j <= n; ++j) {
        g(0, j - 1) = (j % 2 == 1 ? chi[j] : -chi[j]);
        if (j + 1 <= n) g(j, j - 1) = R(1);
    }
    return g;
}

/// Quantum minor T[^rows_cols](u0): antisymmetrized column-ordered product
/// with arguments u0, u0 - hbar, ..., u0 - (m-1) hbar.
template <class R>
Matrix<R> quantum_minor(const Monodromy<R>& m, const std::vector<int>& rows,
                        const std::vector<int>& cols, const R& u0)
{
    if (rows.size() != cols.size())
        throw std::invalid_argument("quantum minor: index count mismatch");
    const int k = static_cast<int>(rows.size());
    Matrix<R> total(m.dim, m.dim);
    for (const auto& sigma : detail::all_permutations(k)) {
        Matrix<R> prod = Matrix<R>::identity(m.dim);
        for (int t = 0; t < k; ++t)
            prod = prod * m.eval(rows[static_cast<std::size_t>(sigma[static_cast<std::size_t>(t)])],
                                 cols[static_cast<std::size_t>(t)],
                                 u0 - m.spec.hbar * R(t));
        if (detail::perm_sign(sigma) < 0) prod = -prod;
        total = total + prod;
    }
    return total;
}

/// lambda-minor T[^A_B](u0): symmetrize the A tableau over rows, then
/// antisymmetrize over columns; factor for box (a,s) evaluated at
/// u0 + hbar (s - a), boxes multiplied in row-major order.
template <class R>
Matrix<R> fused_minor(const Monodromy<R>& m, const Partition& lambda,
                      const std::vector<std::vector<int>>& taba,
                      const std::vector<std::vector<int>>& tabb, const R& u0)
{
    const int h = lambda.height();
    const Partition lt = lambda.transpose();

    // enumerate per-row permutations sigma and per-column permutations tilde
    std::vector<std::vector<std::vector<int>>> row_perms, col_perms;
    for (int a = 0; a < h; ++a)
        row_perms.push_back(detail::all_permutations(lambda.part(static_cast<std::size_t>(a))));
    for (int s = 0; s < lambda.width(); ++s)
        col_perms.push_back(detail::all_permutations(lt.part(static_cast<std::size_t>(s))));

    Matrix<R> total(m.dim, m.dim);
    std::vector<std::size_t> ri(row_perms.size(), 0), ci(col_perms.size(), 0);

    auto advance = [](std::vector<std::size_t>& idx,
                      const std::vector<std::vector<std::vector<int>>>& sets) {
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (++idx[k] < sets[k].size()) return true;
            idx[k] = 0;
        }
        return false;
    };

    do { // over column permutations tilde
        int sign = 1;
        for (std::size_t s = 0; s < col_perms.size(); ++s)
            sign *= detail::perm_sign(col_perms[s][ci[s]]);
        std::fill(ri.begin(), ri.end(), static_cast<std::size_t>(0));
        do { // over row permutations sigma
            Matrix<R> prod = Matrix<R>::identity(m.dim);
            for (int a = 1; a <= h; ++a)
                for (int s = 1; s <= lambda.part(static_cast<std::size_t>(a - 1)); ++s) {
                    const auto& tilde = col_perms[static_cast<std::size_t>(s - 1)]
                                                 [ci[static_cast<std::size_t>(s - 1)]];
                    const int ap = tilde[static_cast<std::size_t>(a - 1)] + 1; // row after column perm
                    const auto& sig = row_perms[static_cast<std::size_t>(ap - 1)]
                                               [ri[static_cast<std::size_t>(ap - 1)]];
                    const int sp = sig[static_cast<std::size_t>(s - 1)] + 1; // column after row perm
                    const int top = taba[static_cast<std::size_t>(ap - 1)][static_cast<std::size_t>(sp - 1)];
                    const int bot = tabb[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(s - 1)];
                    prod = prod * m.eval(top, bot, u0 + m.spec.hbar * R(s - a));
                }
            if (sign < 0) prod = -prod;
            total = total + prod;
        } while (advance(ri, row_perms));
    } while (advance(ci, col_perms));
    return total;
}

/// Max-norm of the RTT commutator defects
/// (u-v)[T_ij(u),T_kl(v)] - hbar (T_kj(u)T_il(v) - T_kj(v)T_il(u)).
template <class R>
double rtt_residual(const Monodromy<R>& m, const R& u0, const R& v0)
{
    double worst = 0.0;
    const int n = m.N;
    std::vector<Matrix<R>> tu(static_cast<std::size_t>(n * n), Matrix<R>(m.dim, m.dim));
    std::vector<Matrix<R>> tv = tu;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            tu[static_cast<std::size_t>((i - 1) * n + (j - 1))] = m.eval(i, j, u0);
            tv[static_cast<std::size_t>((i - 1) * n + (j - 1))] = m.eval(i, j, v0);
        }
    auto at = [n](std::vector<Matrix<R>>& v, int i, int j) -> Matrix<R>& {
        return v[static_cast<std::size_t>((i - 1) * n + (j - 1))];
    };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int l = 1; l <= n; ++l) {
                    Matrix<R> lhs = (at(tu, i, j) * at(tv, k, l) - at(tv, k, l) * at(tu, i, j)) *
                                    (u0 - v0);
                    Matrix<R> rhs = (at(tu, k, j) * at(tv, i, l) - at(tv, k, j) * at(tu, i, l)) *
                                    m.spec.hbar;
                    Matrix<R> defect = lhs - rhs;
                    if (!defect.is_zero()) worst = std::max(worst, defect.max_abs());
                }
    return worst;
}

/// Defect of the minor-entry commutation
/// (v-u)/hbar [T_jk(v), T[^A_B](u)] = sum_i T_{A_i k}(v) T[^{A[i;j]}_B](u)
///                                  - sum_i T[^A_{B[i;k]}](u) T_{j B_i}(v).
template <class R>
double minor_comm_residual(const Monodromy<R>& m, const std::vector<int>& a,
                           const std::vector<int>& b, int j, int k, const R& u0, const R& v0)
{
    Matrix<R> minor = quantum_minor(m, a, b, u0);
    Matrix<R> tjk = m.eval(j, k, v0);
    Matrix<R> lhs = (tjk * minor - minor * tjk) * ((v0 - u0) / m.spec.hbar);
    Matrix<R> rhs(m.dim, m.dim);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<int> arep = a;
        arep[i] = j;
        rhs = rhs + m.eval(a[i], k, v0) * quantum_minor(m, arep, b, u0);
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        std::vector<int> brep = b;
        brep[i] = k;
        rhs = rhs - quantum_minor(m, a, brep, u0) * m.eval(j, b[i], v0);
    }
    Matrix<R> defect = lhs - rhs;
    return defect.is_zero() ? 0.0 : defect.max_abs();
}

/// All sorted index subsets of {1..n} of size k.
inline std::vector<std::vector<int>> index_subsets(int n, int k)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int next) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = next; v <= n; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

} // namespace sovchain
