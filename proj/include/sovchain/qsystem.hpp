#pragma once

#include "sovchain/boperator.hpp"
#include "sovchain/sov.hpp"
#include "sovchain/transfer.hpp"
#include "sovchain/yangian.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

namespace sovchain {

template <class R>
ChainSpec<Complex> spec_to_complex(const ChainSpec<R>& s)
{
    ChainSpec<Complex> out;
    out.N = s.N;
    out.A = s.A;
    out.S = s.S;
    out.L = s.L;
    out.hbar = to_complex(s.hbar);
    for (const auto& t : s.theta) out.theta.push_back(to_complex(t));
    for (const auto& z : s.z) out.z.push_back(to_complex(z));
    return out;
}

template <class R>
OpPoly<Complex> oppoly_to_complex(const OpPoly<R>& p)
{
    std::vector<Matrix<Complex>> c;
    for (int k = 0; k <= p.degree(); ++k) c.push_back(matrix_to_complex(p.coeff(static_cast<std::size_t>(k))));
    return OpPoly<Complex>(p.dim(), std::move(c));
}

template <class R>
Monodromy<Complex> monodromy_to_complex(const Monodromy<R>& m)
{
    Monodromy<Complex> out;
    out.N = m.N;
    out.dim = m.dim;
    out.spec = spec_to_complex(m.spec);
    for (const auto& e : m.t) out.t.push_back(oppoly_to_complex(e));
    return out;
}

inline Eigen::MatrixXcd to_eigen(const Matrix<Complex>& m)
{
    Eigen::MatrixXcd r(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return r;
}

inline Matrix<Complex> from_eigen(const Eigen::MatrixXcd& m)
{
    Matrix<Complex> r(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            r(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
    return r;
}

/// Roots of a complex polynomial via the companion-matrix spectrum.
inline std::vector<Complex> poly_roots(const Poly<Complex>& p)
{
    const int d = p.degree();
    if (d <= 0) return {};
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
    const Complex lead = p.coeff(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        c(i, d - 1) = -p.coeff(static_cast<std::size_t>(i)) / lead;
        if (i + 1 < d) c(i + 1, i) = 1.0;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
    std::vector<Complex> roots;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) roots.push_back(es.eigenvalues()(i));
    return roots;
}

/// One joint eigenvector of the Bethe algebra together with the measured
/// eigenvalue polynomials t_a(u) of the column transfer matrices,
/// a = 0..N, and the largest commutator residual seen while measuring.
struct BetheState {
    Matrix<Complex> vec; // dim x 1, normalized so <0|tau> = 1
    std::vector<Poly<Complex>> t;
    double residual = 0.0;
};

/// Eigenvalue of op on vec measured at the largest-magnitude coordinate;
/// defect reports || op vec - lambda vec ||_max.
inline Complex rayleigh_eigenvalue(const Matrix<Complex>& op, const Matrix<Complex>& vec,
                                   double* defect = nullptr)
{
    std::size_t p = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < vec.rows(); ++i)
        if (std::abs(vec(i, 0)) > best) {
            best = std::abs(vec(i, 0));
            p = i;
        }
    Matrix<Complex> w = op * vec;
    const Complex lambda = w(p, 0) / vec(p, 0);
    if (defect) {
        Matrix<Complex> d = w - vec * lambda;
        *defect = d.max_abs();
    }
    return lambda;
}

/// Diagonalizes the Bethe algebra of the twisted chain: eigenvectors of a
/// random combination of the column transfer matrices, with the
/// eigenvalue polynomials t_a(u) read off coefficient-wise from the
/// operator expansion of det(1 + T^G(u) e^{-hbar d/du}).  States are
/// normalized against the vacuum covector when it is supplied.
inline std::vector<BetheState> diagonalize_bethe(const Monodromy<Complex>& twisted,
                                                 unsigned seed = 7,
                                                 const Matrix<Complex>* vac = nullptr)
{
    const auto expansion = talalaev_expand(twisted);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);

    // random combination of commuting operators: coefficient matrices of
    // the order-1 column transfer at a few spectral points
    Matrix<Complex> combo(twisted.dim, twisted.dim);
    for (const Complex& u0 : {Complex(0.37, 0.0), Complex(-0.81, 0.0), Complex(1.93, 0.0)}) {
        const Complex c(dist(rng), dist(rng));
        combo = combo + expansion[1].eval(u0) * c;
    }
    if (twisted.N >= 2)
        combo = combo + expansion[2].eval(Complex(0.55, 0.0)) * Complex(dist(rng), dist(rng));

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(combo), true);
    if (es.info() != Eigen::Success) throw std::runtime_error("diagonalize_bethe: solver failed");

    std::vector<BetheState> out;
    for (Eigen::Index k = 0; k < es.eigenvectors().cols(); ++k) {
        BetheState st;
        st.vec = from_eigen(es.eigenvectors().col(k));
        st.t.assign(expansion.size(), Poly<Complex>());
        for (std::size_t a = 0; a < expansion.size(); ++a) {
            std::vector<Complex> coeffs;
            for (int d = 0; d <= expansion[a].degree(); ++d) {
                double defect = 0.0;
                coeffs.push_back(rayleigh_eigenvalue(expansion[a].coeff(static_cast<std::size_t>(d)),
                                                     st.vec, &defect));
                st.residual = std::max(st.residual, defect);
            }
            st.t[a] = Poly<Complex>(std::move(coeffs));
        }
        if (vac) {
            Matrix<Complex> ov = (*vac) * st.vec;
            if (std::abs(ov(0, 0)) > 1e-13) st.vec = st.vec * (Complex(1.0, 0.0) / ov(0, 0));
        }
        out.push_back(std::move(st));
    }
    return out;
}

/// Shift of a complex polynomial: p(u + c).
inline Poly<Complex> poly_shift(const Poly<Complex>& p, const Complex& c)
{
    Poly<Complex> acc;
    const auto& cs = p.coeffs();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it)
        acc = acc * Poly<Complex>(std::vector<Complex>{c, Complex(1.0, 0.0)}) +
              Poly<Complex>::constant(*it);
    return acc;
}

/// Dressing factor of shift order a in the finite-difference wave
/// operator: D_a(u) = prod_{r=a+1}^{N} Q_theta(u - hbar (S + r - 1 + extra)).
inline Poly<Complex> baxter_dressing(const ChainSpec<Complex>& spec, int a, int extra = 0)
{
    const Poly<Complex> q = poly_to_complex(q_theta(spec.theta));
    Poly<Complex> d = Poly<Complex>::constant(Complex(1.0, 0.0));
    for (int r = a + 1; r <= spec.N; ++r)
        d = d * poly_shift(q, -spec.hbar * Complex(spec.S + r - 1 + extra, 0.0));
    return d;
}

/// Minimal-degree polynomial kernel of the dressed difference operator
///   sum_{a=0}^{N} (-1)^a t_a(u) D_a(u) z^{1-a} q(u + hbar (1 - a)) = 0
/// for the given twist eigenvalue z.  Scans candidate degrees upward to
/// max_degree; returns the empty polynomial if no kernel vector survives
/// the residual threshold.
inline Poly<Complex> solve_baxter_q(const std::vector<Poly<Complex>>& t,
                                    const ChainSpec<Complex>& spec, const Complex& z,
                                    int max_degree, double tol = 1e-8,
                                    double* residual_out = nullptr, int dressing_extra = 0)
{
    const int n = spec.N;
    std::vector<Poly<Complex>> dress;
    for (int a = 0; a <= n; ++a) {
        Poly<Complex> d = baxter_dressing(spec, a, dressing_extra);
        dress.push_back(a % 2 == 0 ? d : -d);
    }

    double radius = 1.0;
    for (const Complex& th : spec.theta) radius = std::max(radius, std::abs(th));
    radius += static_cast<double>(spec.S + n + 2);

    // normalized residual of the difference equation at a point
    auto apply = [&](const Poly<Complex>& q, const Complex& u) {
        Complex acc(0.0, 0.0);
        double scale = 0.0;
        for (int a = 0; a <= n; ++a) {
            Complex za(1.0, 0.0);
            for (int r = 0; r < a - 1; ++r) za /= z;
            if (a == 0) za = z;
            const Complex term = t[static_cast<std::size_t>(a)].eval(u) *
                                 dress[static_cast<std::size_t>(a)].eval(u) * za *
                                 q.eval(u + spec.hbar * Complex(1.0 - a, 0.0));
            acc += term;
            scale = std::max(scale, std::abs(term));
        }
        return scale > 0.0 ? std::abs(acc) / scale : 0.0;
    };

    for (int d = 0; d <= max_degree; ++d) {
        // unknown coefficients c_0..c_d of q; sample the identity on a
        // circle enclosing the inhomogeneities and find a null vector
        const int nsamples = 2 * (d + n * spec.L + n * spec.S + 4);
        Matrix<Complex> sys(static_cast<std::size_t>(nsamples), static_cast<std::size_t>(d + 1));
        for (int m = 0; m < nsamples; ++m) {
            const double phase = 2.0 * M_PI * (m + 0.31) / nsamples;
            const Complex u = Complex(0.1, 0.23) +
                              Complex(radius * std::cos(phase), radius * std::sin(phase));
            double scale = 0.0;
            std::vector<Complex> row(static_cast<std::size_t>(d + 1), Complex(0.0, 0.0));
            for (int a = 0; a <= n; ++a) {
                Complex za(1.0, 0.0);
                for (int r = 0; r < a - 1; ++r) za /= z;
                if (a == 0) za = z;
                const Complex pref = t[static_cast<std::size_t>(a)].eval(u) *
                                     dress[static_cast<std::size_t>(a)].eval(u) * za;
                const Complex arg = u + spec.hbar * Complex(1.0 - a, 0.0);
                Complex pw(1.0, 0.0);
                for (int k = 0; k <= d; ++k) {
                    row[static_cast<std::size_t>(k)] += pref * pw;
                    pw *= std::abs(arg) > 0.0 ? arg / radius : arg; // scaled basis u^k / R^k
                }
            }
            for (const Complex& v : row) scale = std::max(scale, std::abs(v));
            if (scale == 0.0) scale = 1.0;
            for (int k = 0; k <= d; ++k)
                sys(static_cast<std::size_t>(m), static_cast<std::size_t>(k)) =
                    row[static_cast<std::size_t>(k)] / scale;
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(sys), Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        std::vector<Complex> coeffs;
        double rscale = 1.0, cmax = 0.0;
        for (int k = 0; k <= d; ++k) {
            coeffs.push_back(svd.matrixV()(k, sv.size() - 1) / rscale);
            rscale *= radius; // undo the scaled basis
            cmax = std::max(cmax, std::abs(coeffs.back()));
        }
        // drop numerically insignificant top coefficients
        while (!coeffs.empty() && std::abs(coeffs.back()) < 1e-10 * cmax) coeffs.pop_back();
        Poly<Complex> q(std::move(coeffs));
        if (q.is_zero()) continue;
        // accept the first degree whose candidate solves the equation at
        // fresh points away from the sampling circle
        double worst = 0.0;
        for (int m = 0; m < 7; ++m) {
            const Complex u(0.37 + 0.61 * m, -0.83 + 0.17 * m);
            worst = std::max(worst, apply(q, u));
        }
        if (worst <= tol) {
            if (residual_out) *residual_out = worst;
            return q.monic();
        }
    }
    if (residual_out) *residual_out = 1.0;
    return Poly<Complex>();
}

/// Per-state family of twisted polynomial kernels q_i, i = 1..N (one per
/// twist eigenvalue z_i), together with the worst equation residual.
struct QFunctions {
    std::vector<Poly<Complex>> q;
    double residual = 0.0;
};

inline QFunctions solve_all_q(const BetheState& st, const ChainSpec<Complex>& spec,
                              double tol = 1e-8)
{
    QFunctions out;
    const int max_degree = spec.L * spec.S * spec.A + 2;
    for (int i = 0; i < spec.N; ++i) {
        double r = 1.0;
        out.q.push_back(
            solve_baxter_q(st.t, spec, spec.z[static_cast<std::size_t>(i)], max_degree, tol, &r));
        out.residual = std::max(out.residual, r);
    }
    return out;
}

/// Pair Wronskian W_ij(u) = z_j^{-1} q_i(u) q_j(u - hbar)
///                        - z_i^{-1} q_j(u) q_i(u - hbar).
inline Poly<Complex> pair_wronskian(const Poly<Complex>& qi, const Poly<Complex>& qj,
                                    const Complex& zi, const Complex& zj,
                                    const Complex& hbar)
{
    return qi * poly_shift(qj, -hbar) * (Complex(1.0, 0.0) / zj) -
           qj * poly_shift(qi, -hbar) * (Complex(1.0, 0.0) / zi);
}

/// Exactness defect of the two-index relation: W_ij must be divisible by
/// prod_{r=1}^{S} Q_theta(u - hbar r), the quotient being the two-index
/// polynomial q_ij.  Returns the relative remainder norm of that division.
inline double qq_residual(const Poly<Complex>& qi, const Poly<Complex>& qj, const Complex& zi,
                          const Complex& zj, const ChainSpec<Complex>& spec,
                          Poly<Complex>* qij = nullptr)
{
    const Poly<Complex> w = pair_wronskian(qi, qj, zi, zj, spec.hbar);
    const Poly<Complex> qth = poly_to_complex(q_theta(spec.theta));
    Poly<Complex> div = Poly<Complex>::constant(Complex(1.0, 0.0));
    for (int r = 1; r <= spec.S; ++r) div = div * poly_shift(qth, -spec.hbar * Complex(r, 0.0));
    auto [quot, rem] = w.divmod(div);
    if (qij) *qij = quot.monic();
    double wmax = 0.0, rmax = 0.0;
    for (const auto& c : w.coeffs()) wmax = std::max(wmax, std::abs(c));
    for (const auto& c : rem.coeffs()) rmax = std::max(rmax, std::abs(c));
    return wmax > 0.0 ? rmax / wmax : rmax;
}

/// det_{i in I, j} of z_i^{t_j} q_i(theta_alpha + hbar t_j) for integer
/// shifts t_j.  The common branch factor z_i^{theta_alpha/hbar} per row
/// cancels in every ratio of such determinants, so relative powers of z_i
/// suffice.
inline Complex qhat_det(const std::vector<Poly<Complex>>& q, const ChainSpec<Complex>& spec,
                        const std::vector<int>& subset, int alpha, const std::vector<int>& ts)
{
    const std::size_t a = subset.size();
    if (ts.size() != a) throw std::invalid_argument("qhat_det: shape mismatch");
    const Complex th = spec.theta[static_cast<std::size_t>(alpha)];
    Matrix<Complex> m(a, a);
    for (std::size_t i = 0; i < a; ++i) {
        const int qi = subset[i] - 1;
        const Complex& z = spec.z[static_cast<std::size_t>(qi)];
        for (std::size_t j = 0; j < a; ++j) {
            const int t = ts[j];
            m(i, j) = std::pow(z, t) *
                      q[static_cast<std::size_t>(qi)].eval(th + spec.hbar * Complex(t, 0.0));
        }
    }
    return m.det();
}

/// Transfer eigenvalue of shape mu (at most A rows) at theta_alpha from
/// the q-family alone:
///   T_mu(theta_alpha) = Phi(mu) det q^_i(theta_alpha + hbar (mu_j+1-j))
///                              / det q^_i(theta_alpha - hbar (j-1)),
/// determinants over any size-A subset of twist labels.
inline Complex wronskian_transfer(const std::vector<Poly<Complex>>& q,
                                  const ChainSpec<Complex>& spec, const std::vector<int>& subset,
                                  int alpha, const Partition& mu)
{
    if (static_cast<int>(subset.size()) != spec.A)
        throw std::invalid_argument("wronskian_transfer: subset size must equal A");
    std::vector<int> tnum, tden;
    for (int j = 1; j <= spec.A; ++j) {
        tnum.push_back(mu.part(static_cast<std::size_t>(j - 1)) + 1 - j);
        tden.push_back(1 - j);
    }
    const Complex num = qhat_det(q, spec, subset, alpha, tnum);
    const Complex den = qhat_det(q, spec, subset, alpha, tden);
    return phi_factor(spec, alpha, mu) * num / den;
}

/// Normalized separated-variable wave function of the pattern tuple:
///   <x_t | tau> = prod_{alpha, k} det q^_i(x^alpha_{kj}) / det q^_i(theta_alpha - hbar (j-1))
/// with x^alpha_{kj} = theta_alpha + hbar (m^alpha_{kj} + 1 - j), for a
/// state normalized by <0|tau> = 1.
inline Complex slater_wavefunction(const std::vector<Poly<Complex>>& q,
                                   const ChainSpec<Complex>& spec, const std::vector<int>& subset,
                                   const PatternTuple& t)
{
    std::vector<int> tden;
    for (int j = 1; j <= spec.A; ++j) tden.push_back(1 - j);
    Complex val(1.0, 0.0);
    for (int alpha = 0; alpha < spec.L; ++alpha) {
        const RectPattern& p = t.patterns[static_cast<std::size_t>(alpha)];
        const Complex den = qhat_det(q, spec, subset, alpha, tden);
        for (int k = 1; k <= spec.N - spec.A; ++k) {
            std::vector<int> ts;
            for (int j = 1; j <= spec.A; ++j) ts.push_back(p.at(k, j) + 1 - j);
            val *= qhat_det(q, spec, subset, alpha, ts) / den;
        }
    }
    return val;
}

/// Reconstructs a state vector from its separated-variable wave function
/// by solving <x_t| tau> = vals_t against the stacked covector rows.
inline Matrix<Complex> generate_state(const Matrix<Complex>& rows, const std::vector<Complex>& vals)
{
    if (rows.rows() != vals.size()) throw std::invalid_argument("generate_state: shape mismatch");
    Eigen::VectorXcd b(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) b(static_cast<Eigen::Index>(i)) = vals[i];
    Eigen::VectorXcd x = to_eigen(rows).fullPivLu().solve(b);
    Matrix<Complex> out(static_cast<std::size_t>(x.size()), 1);
    for (Eigen::Index i = 0; i < x.size(); ++i) out(static_cast<std::size_t>(i), 0) = x(i);
    return out;
}

/// 1 - |<a|b>| / (|a| |b|): zero iff the vectors are proportional.
inline double misalignment(const Matrix<Complex>& a, const Matrix<Complex>& b)
{
    Complex dot(0.0, 0.0);
    double na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        dot += std::conj(a(i, 0)) * b(i, 0);
        na += std::norm(a(i, 0));
        nb += std::norm(b(i, 0));
    }
    const double denom = std::sqrt(na) * std::sqrt(nb);
    return denom > 0.0 ? 1.0 - std::abs(dot) / denom : 1.0;
}

/// Ordered product of the separating operator at the given points applied
/// to a reference vector: prod_r B(u_r) |omega>.
inline Matrix<Complex> b_product_state(const Monodromy<Complex>& bare, const Matrix<Complex>& omega,
                                       const std::vector<Complex>& roots)
{
    Matrix<Complex> v = omega;
    for (const Complex& u : roots) v = eval_b(bare, u) * v;
    return v;
}

} // namespace sovchain
