#include <catch2/catch_amalgamated.hpp>

#include "sovchain/qsystem.hpp"

using namespace sovchain;
using Q = Rational;

namespace {

ChainSpec<Q> make_spec(int n, int a, int s, int l)
{
    ChainSpec<Q> spec;
    spec.N = n;
    spec.A = a;
    spec.S = s;
    spec.L = l;
    spec.theta = ChainSpec<Q>::default_theta(l);
    spec.hbar = Q(1);
    spec.z = ChainSpec<Q>::default_z(n);
    spec.validate();
    return spec;
}

struct Setup {
    ChainSpec<Q> spec;
    Rep<Q> rep;
    Monodromy<Q> bare;
    Matrix<Q> vac;
    ChainSpec<Complex> cspec;
    Monodromy<Complex> cbare;
    Monodromy<Complex> ctwisted;
    Matrix<Complex> cvac;
    std::vector<BetheState> states;
};

Setup make_setup(int n, int a, int s, int l)
{
    Setup st;
    st.spec = make_spec(n, a, s, l);
    st.rep = build_rep<Q>(n, st.spec.weight());
    st.bare = build_monodromy(st.spec, st.rep);
    st.vac = gt_vacuum_dual(st.rep, l);
    st.cspec = spec_to_complex(st.spec);
    st.cbare = monodromy_to_complex(st.bare);
    st.ctwisted = st.cbare.twisted(matrix_to_complex(companion_twist(st.spec.z)));
    st.cvac = matrix_to_complex(st.vac);
    st.states = diagonalize_bethe(st.ctwisted, 7, &st.cvac);
    return st;
}

Matrix<Complex> normalized_rows_complex(const SovBasis<Q>& basis)
{
    Matrix<Complex> rows = matrix_to_complex(basis.rows);
    for (std::size_t t = 0; t < basis.tuples.size(); ++t) {
        const Complex inv = Complex(1.0, 0.0) / to_complex(basis.phi[t]);
        for (std::size_t c = 0; c < rows.cols(); ++c) rows(t, c) = rows(t, c) * inv;
    }
    return rows;
}

} // namespace

TEST_CASE("every joint eigenstate admits polynomial kernels for all twist eigenvalues")
{
    for (auto& cfg : std::vector<std::array<int, 4>>{{3, 1, 1, 2}, {2, 1, 2, 2}}) {
        auto st = make_setup(cfg[0], cfg[1], cfg[2], cfg[3]);
        REQUIRE(st.states.size() == st.bare.dim);
        for (const auto& state : st.states) {
            REQUIRE(state.residual < 1e-9);
            auto qf = solve_all_q(state, st.cspec);
            REQUIRE(qf.residual < 1e-8);
            for (const auto& q : qf.q) REQUIRE_FALSE(q.is_zero());
        }
    }
}

TEST_CASE("pair Wronskians factor through the inhomogeneity string")
{
    for (auto& cfg : std::vector<std::array<int, 4>>{{3, 1, 1, 2}, {2, 1, 2, 2}}) {
        auto st = make_setup(cfg[0], cfg[1], cfg[2], cfg[3]);
        for (const auto& state : st.states) {
            auto qf = solve_all_q(state, st.cspec);
            for (int i = 0; i < st.spec.N; ++i)
                for (int j = i + 1; j < st.spec.N; ++j) {
                    Poly<Complex> qij;
                    const double r = qq_residual(
                        qf.q[static_cast<std::size_t>(i)], qf.q[static_cast<std::size_t>(j)],
                        st.cspec.z[static_cast<std::size_t>(i)],
                        st.cspec.z[static_cast<std::size_t>(j)], st.cspec, &qij);
                    REQUIRE(r < 1e-8);
                }
        }
    }
}

TEST_CASE("determinant ratios of q-values reproduce measured transfer eigenvalues")
{
    for (auto& cfg : std::vector<std::array<int, 4>>{{3, 1, 1, 2}, {2, 1, 2, 2}}) {
        auto st = make_setup(cfg[0], cfg[1], cfg[2], cfg[3]);
        std::vector<Partition> shapes{Partition(std::vector<int>{1})};
        if (st.spec.S >= 2) shapes.push_back(Partition(std::vector<int>{2}));
        for (const auto& state : st.states) {
            auto qf = solve_all_q(state, st.cspec);
            for (int alpha = 0; alpha < st.spec.L; ++alpha) {
                const Complex th = st.cspec.theta[static_cast<std::size_t>(alpha)];
                for (const auto& mu : shapes) {
                    double defect = 0.0;
                    const Complex measured = rayleigh_eigenvalue(
                        transfer_lambda_twisted(st.ctwisted, mu, th), state.vec, &defect);
                    REQUIRE(defect < 1e-8);
                    for (int i = 1; i <= st.spec.N; ++i) {
                        const Complex predicted =
                            wronskian_transfer(qf.q, st.cspec, std::vector<int>{i}, alpha, mu);
                        REQUIRE(std::abs(predicted - measured) <
                                1e-8 * std::max(1.0, std::abs(measured)));
                    }
                }
            }
        }
    }
}

TEST_CASE("separated wave functions match the covector overlaps for two label subsets")
{
    for (auto& cfg : std::vector<std::array<int, 4>>{{3, 1, 1, 2}, {2, 1, 2, 2}}) {
        auto st = make_setup(cfg[0], cfg[1], cfg[2], cfg[3]);
        auto basis = build_sov_basis(st.bare, st.rep, companion_twist(st.spec.z));
        Matrix<Complex> rows = normalized_rows_complex(basis);
        for (const auto& state : st.states) {
            auto qf = solve_all_q(state, st.cspec);
            Matrix<Complex> lhs = rows * state.vec;
            for (const std::vector<int>& subset : {std::vector<int>{1}, std::vector<int>{2}}) {
                double scale = 0.0, worst = 0.0;
                std::vector<Complex> rhs;
                for (std::size_t t = 0; t < basis.tuples.size(); ++t) {
                    rhs.push_back(
                        slater_wavefunction(qf.q, st.cspec, subset, basis.tuples[t]));
                    scale = std::max(scale, std::abs(lhs(t, 0)));
                }
                // the two sides agree up to one overall constant per state;
                // fix it at the vacuum tuple, where both sides equal one
                for (std::size_t t = 0; t < basis.tuples.size(); ++t)
                    worst = std::max(worst, std::abs(lhs(t, 0) - rhs[t]));
                REQUIRE(worst < 1e-8 * std::max(1.0, scale));
            }
        }
    }
}

TEST_CASE("states reconstructed from their wave functions align with the eigenvectors")
{
    auto st = make_setup(3, 1, 1, 2);
    auto basis = build_sov_basis(st.bare, st.rep, companion_twist(st.spec.z));
    Matrix<Complex> rows = normalized_rows_complex(basis);
    for (const auto& state : st.states) {
        auto qf = solve_all_q(state, st.cspec);
        std::vector<Complex> vals;
        for (const auto& t : basis.tuples)
            vals.push_back(slater_wavefunction(qf.q, st.cspec, std::vector<int>{1}, t));
        Matrix<Complex> rebuilt = generate_state(rows, vals);
        REQUIRE(misalignment(rebuilt, state.vec) < 1e-8);
    }
}

TEST_CASE("products of the separating operator at q-roots generate the states")
{
    for (auto& cfg : std::vector<std::array<int, 4>>{{3, 1, 1, 2}, {2, 1, 2, 2}}) {
        auto st = make_setup(cfg[0], cfg[1], cfg[2], cfg[3]);
        Matrix<Complex> omega = matrix_to_complex(
            omega_state(st.rep, st.spec, sigma_identity(st.spec.N), st.vac));
        for (const auto& state : st.states) {
            auto qf = solve_all_q(state, st.cspec);
            Matrix<Complex> built = b_product_state(st.cbare, omega, poly_roots(qf.q[0]));
            REQUIRE(misalignment(built, state.vec) < 1e-8);
        }
    }
}
