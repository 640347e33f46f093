#pragma once

#include "sovchain/boperator.hpp"
#include "sovchain/gt_patterns.hpp"
#include "sovchain/transfer.hpp"
#include "sovchain/yangian.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sovchain {

/// Unique irrep basis index carrying the given Cartan weight; throws if
/// the weight space is not one-dimensional.
template <class R>
std::size_t weight_index(const Rep<R>& rep, const std::vector<int>& w)
{
    std::size_t found = rep.dim;
    for (std::size_t b = 0; b < rep.dim; ++b)
        if (rep.weight[b] == w) {
            if (found != rep.dim) throw std::runtime_error("weight_index: weight not simple");
            found = b;
        }
    if (found == rep.dim) throw std::runtime_error("weight_index: weight not present");
    return found;
}

/// Lowest-weight Cartan weight of the irrep: the shape read backwards.
template <class R>
std::vector<int> lowest_weight(const Rep<R>& rep)
{
    std::vector<int> w(static_cast<std::size_t>(rep.n_colors), 0);
    for (int i = 0; i < rep.n_colors; ++i)
        w[static_cast<std::size_t>(rep.n_colors - 1 - i)] = rep.shape.part(static_cast<std::size_t>(i));
    return w;
}

/// Dual of the lowest-weight vector of V^{x sites}: the coordinate
/// covector of the per-site lowest-weight basis vector.  Because basis
/// vectors are weight vectors and the lowest weight is simple, this is a
/// simultaneous left eigenvector of the diagonal monodromy entries.
template <class R>
Matrix<R> gt_vacuum_dual(const Rep<R>& rep, int sites)
{
    const std::size_t i0 = weight_index(rep, lowest_weight(rep));
    std::size_t idx = 0, dim = 1;
    for (int a = 0; a < sites; ++a) {
        idx = idx * rep.dim + i0;
        dim *= rep.dim;
    }
    Matrix<R> row(1, dim);
    row(0, idx) = R(1);
    return row;
}

/// Normalization factor accompanying the transfer matrix of shape mu
/// applied at theta_alpha:
///   Phi = prod_{j=1}^{A} prod_{r=1}^{mu_j} Q_theta(theta_alpha - hbar (S + j - r)).
template <class R>
R phi_factor(const ChainSpec<R>& spec, int alpha, const Partition& mu)
{
    const Poly<R> q = q_theta(spec.theta);
    const R& th = spec.theta[static_cast<std::size_t>(alpha)];
    R prod(1);
    for (int j = 1; j <= spec.A; ++j)
        for (int r = 1; r <= mu.part(static_cast<std::size_t>(j - 1)); ++r)
            prod *= q.eval(th - spec.hbar * R(spec.S + j - r));
    return prod;
}

/// Separated-variable covector basis: one row per pattern tuple,
/// rows[t] = <0| prod_{alpha,k} T_{mu_k^alpha}(theta_alpha), with the
/// scalar normalization prod Phi stored separately.
template <class R>
struct SovBasis {
    ChainSpec<R> spec;
    std::vector<PatternTuple> tuples;
    Matrix<R> rows;     // tuples.size() x dim, unnormalized
    std::vector<R> phi; // per-tuple normalization

    Matrix<R> row(std::size_t t) const
    {
        Matrix<R> r(1, rows.cols());
        for (std::size_t c = 0; c < rows.cols(); ++c) r(0, c) = rows(t, c);
        return r;
    }

    Matrix<R> normalized_row(std::size_t t) const
    {
        return row(t) * (R(1) / phi[t]);
    }
};

/// Small cache of transfer matrices evaluated at inhomogeneities, keyed
/// by (site index, shape).
template <class R>
class TransferAtThetaCache {
public:
    TransferAtThetaCache(const Monodromy<R>& twisted)
        : twisted_(twisted)
    {
    }

    const Matrix<R>& get(int alpha, const Partition& mu)
    {
        std::vector<int> parts;
        for (int i = 0; i < mu.height(); ++i) parts.push_back(mu.part(static_cast<std::size_t>(i)));
        auto key = std::make_pair(alpha, parts);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        const R& th = twisted_.spec.theta[static_cast<std::size_t>(alpha)];
        Matrix<R> t = transfer_lambda_twisted(twisted_, mu, th);
        return cache_.emplace(std::move(key), std::move(t)).first->second;
    }

private:
    const Monodromy<R>& twisted_;
    std::map<std::pair<int, std::vector<int>>, Matrix<R>> cache_;
};

/// Builds all basis covectors <0| prod_{k=1..N-A} prod_alpha
/// T_{mu_k^alpha}(theta_alpha) for the given twist (the result is
/// twist-independent; all factors commute, so the ordering is immaterial).
template <class R>
SovBasis<R> build_sov_basis(const Monodromy<R>& bare, const Rep<R>& rep, const Matrix<R>& g)
{
    const ChainSpec<R>& spec = bare.spec;
    Monodromy<R> twisted = bare.twisted(g);
    TransferAtThetaCache<R> cache(twisted);

    SovBasis<R> out;
    out.spec = spec;
    out.tuples = enumerate_tuples(spec.N, spec.A, spec.S, spec.L);
    out.rows = Matrix<R>(out.tuples.size(), bare.dim);

    const Matrix<R> vac = gt_vacuum_dual(rep, spec.L);
    for (std::size_t t = 0; t < out.tuples.size(); ++t) {
        Matrix<R> row = vac;
        R norm(1);
        for (int alpha = 0; alpha < spec.L; ++alpha) {
            const RectPattern& p = out.tuples[t].patterns[static_cast<std::size_t>(alpha)];
            for (int k = 1; k <= spec.N - spec.A; ++k) {
                const Partition mu = p.row_partition(k);
                norm *= phi_factor(spec, alpha, mu);
                if (mu.empty()) continue;
                row = row * cache.get(alpha, mu);
            }
        }
        for (std::size_t c = 0; c < bare.dim; ++c) out.rows(t, c) = row(0, c);
        out.phi.push_back(std::move(norm));
    }
    return out;
}

/// Max defect of the vacuum equations at u0: for columns k <= N-A the
/// covector <0| reproduces delta_jk Q_theta(u) for every row j; for
/// columns k > N-A the diagonal entry gives Q_theta(u - S hbar) and the
/// below-diagonal entries annihilate <0|.
template <class R>
double vacuum_equations_residual(const Monodromy<R>& bare, const Matrix<R>& vac, const R& u0)
{
    const ChainSpec<R>& spec = bare.spec;
    const Poly<R> q = q_theta(spec.theta);
    const R qu = q.eval(u0);
    const R qs = q.eval(u0 - spec.hbar * R(spec.S));
    double worst = 0.0;
    for (int j = 1; j <= spec.N; ++j)
        for (int k = 1; k <= spec.N; ++k) {
            const bool constrained = (k <= spec.N - spec.A) || (j >= k);
            if (!constrained) continue;
            Matrix<R> lhs = vac * bare.eval(j, k, u0);
            if (j == k) lhs = lhs - vac * (k <= spec.N - spec.A ? qu : qs);
            if (!lhs.is_zero()) worst = std::max(worst, lhs.max_abs());
        }
    return worst;
}

/// <psi| prod T_{lambda}(theta_alpha) for the listed (alpha, shape)
/// factors, left to right.
template <class R>
Matrix<R> apply_transfer_products(const Monodromy<R>& twisted, const Matrix<R>& psi,
                                  const std::vector<std::pair<int, Partition>>& factors)
{
    Matrix<R> row = psi;
    for (const auto& [alpha, mu] : factors) {
        if (mu.empty()) continue;
        const R& th = twisted.spec.theta[static_cast<std::size_t>(alpha)];
        row = row * transfer_lambda_twisted(twisted, mu, th);
    }
    return row;
}

/// Max defect of <psi| T_jk(u0) = delta_jk Q_theta(u0) <psi| over columns
/// k <= n and all rows j (the generalized shortening condition at depth n).
template <class R>
double shortening_residual(const Monodromy<R>& bare, const Matrix<R>& psi, int n, const R& u0)
{
    const Poly<R> q = q_theta(bare.spec.theta);
    const R qu = q.eval(u0);
    double worst = 0.0;
    for (int k = 1; k <= n; ++k)
        for (int j = 1; j <= bare.N; ++j) {
            Matrix<R> lhs = psi * bare.eval(j, k, u0);
            if (j == k) lhs = lhs - psi * qu;
            if (!lhs.is_zero()) worst = std::max(worst, lhs.max_abs());
        }
    return worst;
}

/// Max defect of <psi| T_jk(theta_beta) = 0 over columns k <= n+1 and all
/// rows j (the vanishing at unused inhomogeneities).
template <class R>
double unused_site_vanishing_residual(const Monodromy<R>& bare, const Matrix<R>& psi, int n,
                                      int beta)
{
    const R& th = bare.spec.theta[static_cast<std::size_t>(beta)];
    double worst = 0.0;
    for (int k = 1; k <= n + 1; ++k)
        for (int j = 1; j <= bare.N; ++j) {
            Matrix<R> lhs = psi * bare.eval(j, k, th);
            if (!lhs.is_zero()) worst = std::max(worst, lhs.max_abs());
        }
    return worst;
}

/// Predicted eigenvalue of the separating operator on the basis row of
/// the given pattern tuple, evaluated at u0.
template <class R>
R predicted_b_eigenvalue(const PatternTuple& t, const ChainSpec<R>& spec, const R& u0)
{
    std::vector<GTPattern> gt;
    for (const auto& p : t.patterns) gt.push_back(gt_from_rect(p, spec.N, spec.A, spec.S));
    return predicted_b_general(gt, spec.theta, spec.hbar).eval(u0);
}

/// Max defect of <Lambda_t| B(u0) = b_t(u0) <Lambda_t| over all basis rows.
template <class R>
double b_eigen_residual(const SovBasis<R>& basis, const Matrix<R>& b_at_u0, const R& u0)
{
    double worst = 0.0;
    for (std::size_t t = 0; t < basis.tuples.size(); ++t) {
        const R ev = predicted_b_eigenvalue(basis.tuples[t], basis.spec, u0);
        Matrix<R> defect = basis.row(t) * b_at_u0 - basis.row(t) * ev;
        if (!defect.is_zero()) worst = std::max(worst, defect.max_abs());
    }
    return worst;
}

/// Rank-2 ladder identity: <0| T_{1,s}(theta_alpha) equals <0| times the
/// ordered product of bare corner entries T_12 at theta_alpha + hbar r,
/// r = 0..s-1.  The left-hand side may carry any twist.
template <class R>
double ladder_residual_rank2(const Monodromy<R>& bare, const Monodromy<R>& twisted,
                             const Matrix<R>& vac, int s, int alpha)
{
    if (bare.N != 2) throw std::invalid_argument("ladder identity: rank 2 only");
    const R& th = bare.spec.theta[static_cast<std::size_t>(alpha)];
    Matrix<R> lhs = vac * transfer_lambda_twisted(twisted, Partition(std::vector<int>{s}), th);
    Matrix<R> rhs = vac;
    for (int r = 0; r < s; ++r) rhs = rhs * bare.eval(1, 2, R(th + bare.spec.hbar * R(r)));
    Matrix<R> defect = lhs - rhs;
    return defect.is_zero() ? 0.0 : defect.max_abs();
}

/// Permutation sending i to n-i+1 (1-based values); its vacuum has the
/// lowest weight.
inline std::vector<int> sigma_reverse(int n)
{
    std::vector<int> s;
    for (int i = 1; i <= n; ++i) s.push_back(n - i + 1);
    return s;
}

inline std::vector<int> sigma_identity(int n)
{
    std::vector<int> s;
    for (int i = 1; i <= n; ++i) s.push_back(i);
    return s;
}

inline std::vector<int> sigma_inverse(const std::vector<int>& sigma)
{
    std::vector<int> inv(sigma.size(), 0);
    for (std::size_t i = 0; i < sigma.size(); ++i)
        inv[static_cast<std::size_t>(sigma[i] - 1)] = static_cast<int>(i) + 1;
    return inv;
}

/// Diagonal-frame ferromagnetic vacuum for sigma: the tensor power of the
/// per-site extreme-weight vector with weight w_j = S for sigma(j) <= A
/// (zero otherwise).  Satisfies
///   T_jj(u) (g)_jj |vac> = z_j Q_theta(u - hbar lambda_sigma(j)) |vac>
/// for the diagonal twist g = diag(z).
template <class R>
Matrix<R> omega_state_diagonal(const Rep<R>& rep, const ChainSpec<R>& spec,
                               const std::vector<int>& sigma)
{
    std::vector<int> w(static_cast<std::size_t>(spec.N), 0);
    for (int j = 1; j <= spec.N; ++j)
        if (sigma[static_cast<std::size_t>(j - 1)] <= spec.A)
            w[static_cast<std::size_t>(j - 1)] = spec.S;
    const std::size_t i0 = weight_index(rep, w);
    Matrix<R> onehot(rep.dim, 1);
    onehot(i0, 0) = R(1);
    Matrix<R> full = Matrix<R>::identity(1);
    for (int a = 0; a < spec.L; ++a) full = Matrix<R>::kron(full, onehot);
    return full;
}

/// Ferromagnetic vacuum |Omega_sigma> in the companion-twist frame: the
/// diagonal-frame vacuum pushed through the representation of
/// K_ij = z_j^{N-i}, normalized so that <0|Omega_sigma> = 1.
template <class R>
Matrix<R> omega_state(const Rep<R>& rep, const ChainSpec<R>& spec, const std::vector<int>& sigma,
                      const Matrix<R>& vac_dual)
{
    const int n = spec.N;
    Matrix<R> k(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            R p(1);
            for (int e = 0; e < n - i; ++e) p *= spec.z[static_cast<std::size_t>(j - 1)];
            k(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = p;
        }
    Matrix<R> pik = rep.group_element(k);
    Matrix<R> big = Matrix<R>::identity(1);
    for (int a = 0; a < spec.L; ++a) big = Matrix<R>::kron(big, pik);
    Matrix<R> full = big * omega_state_diagonal(rep, spec, sigma);

    Matrix<R> overlap = vac_dual * full;
    if (RingTraits<R>::is_zero(overlap(0, 0), 0.0))
        throw std::runtime_error("omega_state: vacuum overlap vanishes");
    return full * (R(1) / overlap(0, 0));
}

/// Predicted overlap of the normalized basis covector of tuple t with
/// |Omega_sigma>: the product of Schur characters of mu_k^alpha at the A
/// twist eigenvalues z_{sigma^{-1}(1..A)}.
template <class R>
R predicted_omega_overlap(const PatternTuple& t, const ChainSpec<R>& spec,
                          const std::vector<int>& sigma)
{
    const std::vector<int> inv = sigma_inverse(sigma);
    std::vector<R> zs;
    for (int i = 1; i <= spec.A; ++i)
        zs.push_back(spec.z[static_cast<std::size_t>(inv[static_cast<std::size_t>(i - 1)] - 1)]);
    R prod(1);
    for (int alpha = 0; alpha < spec.L; ++alpha) {
        const RectPattern& p = t.patterns[static_cast<std::size_t>(alpha)];
        for (int k = 1; k <= spec.N - spec.A; ++k) prod *= schur(p.row_partition(k), zs);
    }
    return prod;
}

} // namespace sovchain
