#pragma once

#include "sovchain/gt_patterns.hpp"
#include "sovchain/transfer.hpp"
#include "sovchain/yangian.hpp"

#include <algorithm>
#include <vector>

namespace sovchain {

/// Separating operator evaluated at u0, built from bare quantum minors in
/// the companion-twist frame:
///   B(u) ~ sum_k T[^{k_1}_1] T^{[2]}[^{k_2}_{1,k_1+1}] ...
///                T^{[2N-4]}[^{1..N-1}_{1,k_{N-2}+1}],
/// summed over independent strictly increasing multi-indices k_t of
/// length t in 1..N-1.
template <class R>
Matrix<R> eval_b(const Monodromy<R>& bare, const R& u0)
{
    const int n = bare.N;
    const R& hbar = bare.spec.hbar;

    // chains[t] enumerates the choices of k_{t+1} (0-based t), t = 0..n-3
    std::vector<std::vector<std::vector<int>>> choices;
    for (int t = 1; t <= n - 2; ++t) choices.push_back(index_subsets(n - 1, t));

    Matrix<R> total(bare.dim, bare.dim);
    std::vector<std::size_t> pick(choices.size(), 0);
    bool done = false;
    while (!done) {
        // assemble the ordered product of n-1 minors for this chain
        Matrix<R> prod = Matrix<R>::identity(bare.dim);
        std::vector<int> prev; // k_{t-1}, empty for t = 1
        for (int t = 1; t <= n - 1; ++t) {
            std::vector<int> upper;
            if (t <= n - 2)
                upper = choices[static_cast<std::size_t>(t - 1)][pick[static_cast<std::size_t>(t - 1)]];
            else
                for (int i = 1; i <= n - 1; ++i) upper.push_back(i);
            std::vector<int> lower{1};
            for (int v : prev) lower.push_back(v + 1);
            prod = prod * quantum_minor(bare, upper, lower, u0 + hbar * R(t - 1));
            prev = std::move(upper);
        }
        total = total + prod;
        // advance the multi-index odometer
        done = true;
        for (std::size_t t = 0; t < pick.size(); ++t) {
            if (++pick[t] < choices[t].size()) {
                done = false;
                break;
            }
            pick[t] = 0;
        }
        if (choices.empty()) break;
    }
    return total;
}

/// Gelfand-Tsetlin variant: the product of leading principal minors
/// T[^{1..t}_{1..t}] with the same shifts.  Shares the characteristic
/// polynomial with eval_b; the two differ by a nilpotent part.
template <class R>
Matrix<R> eval_b_gt(const Monodromy<R>& bare, const R& u0)
{
    const int n = bare.N;
    const R& hbar = bare.spec.hbar;
    Matrix<R> prod = Matrix<R>::identity(bare.dim);
    for (int t = 1; t <= n - 1; ++t) {
        std::vector<int> idx;
        for (int i = 1; i <= t; ++i) idx.push_back(i);
        prod = prod * quantum_minor(bare, idx, idx, u0 + hbar * R(t - 1));
    }
    return prod;
}

inline int b_degree(int n, int l) { return l * n * (n - 1) / 2; }

/// Monic separating polynomial B(u), assembled by sampling eval_b at
/// deg+1 rational points and interpolating.
template <class R>
OpPoly<R> build_b(const Monodromy<R>& bare)
{
    const int deg = b_degree(bare.N, bare.spec.L);
    std::vector<std::pair<R, Matrix<R>>> pts;
    for (int k = 0; k <= deg; ++k) {
        const R u = R(2 * k + 1) / R(2); // half-integers, away from default thetas
        pts.push_back({u, eval_b(bare, u)});
    }
    return OpPoly<R>::from_samples(bare.dim, pts).monic();
}

template <class R>
OpPoly<R> build_b_gt(const Monodromy<R>& bare)
{
    const int deg = b_degree(bare.N, bare.spec.L);
    std::vector<std::pair<R, Matrix<R>>> pts;
    for (int k = 0; k <= deg; ++k) {
        const R u = R(2 * k + 1) / R(2);
        pts.push_back({u, eval_b_gt(bare, u)});
    }
    return OpPoly<R>::from_samples(bare.dim, pts).monic();
}

/// State-independent prefactor of B(u) for rectangular weights:
/// beta(u) = prod_alpha prod_{i=1}^{A-1} prod_{j=1}^{i} (u - theta_a - hbar (S - j + 1))
///         * prod_{i=1}^{N-A-1} prod_{j=1}^{i} (u - theta_a + hbar (A + j - 1)).
template <class R>
Poly<R> beta_prefactor(const ChainSpec<R>& spec)
{
    std::vector<R> roots;
    for (int alpha = 0; alpha < spec.L; ++alpha) {
        const R& th = spec.theta[static_cast<std::size_t>(alpha)];
        for (int i = 1; i <= spec.A - 1; ++i)
            for (int j = 1; j <= i; ++j) roots.push_back(th + spec.hbar * R(spec.S - j + 1));
        for (int i = 1; i <= spec.N - spec.A - 1; ++i)
            for (int j = 1; j <= i; ++j) roots.push_back(th - spec.hbar * R(spec.A + j - 1));
    }
    return Poly<R>::from_roots(roots);
}

/// True iff the characteristic polynomial of B(u0) coincides with the
/// predicted product over GT pattern tuples of (x - b_tuple(u0)); an
/// exact eigenvalue-multiset comparison.
template <class R>
bool spectrum_check(const Matrix<R>& b_at_u0, const std::vector<std::vector<GTPattern>>& tuples,
                    const std::vector<R>& theta, const R& hbar, const R& u0)
{
    Poly<R> measured = b_at_u0.char_poly();
    std::vector<R> roots;
    for (const auto& t : tuples) roots.push_back(predicted_b_general(t, theta, hbar).eval(u0));
    return measured == Poly<R>::from_roots(roots);
}

/// All L-tuples of GT patterns with top row nu (general, not necessarily
/// rectangular weights).
inline std::vector<std::vector<GTPattern>> enumerate_gt_tuples(const Partition& nu, int n, int l)
{
    const auto site = enumerate_gt(nu, n);
    std::vector<std::vector<GTPattern>> out;
    std::vector<GTPattern> cur;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == l) {
            out.push_back(cur);
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

/// Exchange defect R(u,v) of the transfer-separator relation
///   T_lambda(v) B(u) = prod_a [(u-v+hbar(a-1-lambda_a))/(u-v+hbar(a-1))]
///                      B(u) T_lambda(v) + R(u,v).
/// R(u, theta_alpha) is annihilated by suitable covectors, not zero as an
/// operator.
template <class R>
Matrix<R> tb_residual_op(const Monodromy<R>& twisted, const Matrix<R>& b_at_u0,
                         const Partition& lambda, const R& u0, const R& v0)
{
    const R& hbar = twisted.spec.hbar;
    Matrix<R> tl = transfer_lambda_twisted(twisted, lambda, v0);
    R ratio(1);
    for (int a = 1; a <= lambda.height(); ++a) {
        const R den = u0 - v0 + hbar * R(a - 1);
        const R num = u0 - v0 + hbar * R(a - 1 - lambda.part(static_cast<std::size_t>(a - 1)));
        ratio *= num / den;
    }
    return tl * b_at_u0 - (b_at_u0 * tl) * ratio;
}

} // namespace sovchain
