#include <catch2/catch_amalgamated.hpp>

#include "sovchain/glrep.hpp"

using namespace sovchain;
using Q = Rational;

namespace {

/// [E_ij, E_kl] = delta_jk E_il - delta_li E_kj on the rep.
void check_gl_relations(const Rep<Q>& rep)
{
    const int n = rep.n_colors;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int l = 1; l <= n; ++l) {
                    Matrix<Q> lhs = commutator(rep.e(i, j), rep.e(k, l));
                    Matrix<Q> rhs(rep.dim, rep.dim);
                    if (j == k) rhs = rhs + rep.e(i, l);
                    if (l == i) rhs = rhs - rep.e(k, j);
                    REQUIRE((lhs - rhs).is_zero());
                }
}

} // namespace

TEST_CASE("Young projector is idempotent")
{
    for (auto& [n, nu] : std::vector<std::pair<int, Partition>>{
             {2, Partition(std::vector<int>{2})},
             {3, Partition(std::vector<int>{2})},
             {3, Partition(std::vector<int>{2, 1})},
             {3, Partition(std::vector<int>{1, 1})},
             {2, Partition(std::vector<int>{2, 1})}}) {
        Matrix<Q> p = young_projector<Q>(n, nu);
        REQUIRE((p * p - p).is_zero());
    }
}

TEST_CASE("rep dimension matches Weyl formula")
{
    REQUIRE(build_rep<Q>(2, Partition(std::vector<int>{1})).dim == 2);
    REQUIRE(build_rep<Q>(3, Partition(std::vector<int>{2})).dim == 6);
    REQUIRE(build_rep<Q>(2, Partition(std::vector<int>{2})).dim == 3);
    REQUIRE(build_rep<Q>(3, Partition(std::vector<int>{2, 1})).dim == 8);
    REQUIRE(build_rep<Q>(4, Partition(std::vector<int>{1})).dim == 4);
}

TEST_CASE("gl commutation relations hold on all acceptance reps")
{
    check_gl_relations(build_rep<Q>(2, Partition(std::vector<int>{1})));
    check_gl_relations(build_rep<Q>(2, Partition(std::vector<int>{2})));
    check_gl_relations(build_rep<Q>(3, Partition(std::vector<int>{1})));
    check_gl_relations(build_rep<Q>(3, Partition(std::vector<int>{2})));
    check_gl_relations(build_rep<Q>(3, Partition(std::vector<int>{2, 1})));
    check_gl_relations(build_rep<Q>(4, Partition(std::vector<int>{1})));
}

TEST_CASE("basis vectors are weight vectors")
{
    auto rep = build_rep<Q>(3, Partition(std::vector<int>{2, 1}));
    for (int j = 1; j <= 3; ++j) {
        const Matrix<Q>& h = rep.e(j, j);
        for (std::size_t m = 0; m < rep.dim; ++m) {
            REQUIRE(h(m, m) == Q(rep.weight[m][static_cast<std::size_t>(j - 1)]));
            for (std::size_t mm = 0; mm < rep.dim; ++mm)
                if (mm != m) REQUIRE(h(mm, m) == Q(0));
        }
    }
}

TEST_CASE("group element restriction is multiplicative and traces to Schur")
{
    auto rep = build_rep<Q>(3, Partition(std::vector<int>{2}));
    Matrix<Q> g(3, 3);
    int gv[3][3] = {{2, 1, 0}, {0, 3, 1}, {1, 0, 5}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = Q(gv[i][j]);
    Matrix<Q> h(3, 3);
    int hv[3][3] = {{1, 0, 2}, {1, 1, 0}, {0, 2, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) h(i, j) = Q(hv[i][j]);

    Matrix<Q> pg = rep.group_element(g);
    Matrix<Q> ph = rep.group_element(h);
    REQUIRE((rep.group_element(g * h) - pg * ph).is_zero());

    // diagonal twist: character is the Schur polynomial
    Matrix<Q> d(3, 3);
    d(0, 0) = Q(2);
    d(1, 1) = Q(3);
    d(2, 2) = Q(5);
    REQUIRE(rep.group_element(d).trace() ==
            schur(Partition(std::vector<int>{2}), std::vector<Q>{Q(2), Q(3), Q(5)}));
}

TEST_CASE("lowest-weight vector is annihilated by lowering operators")
{
    for (auto& [n, nu] : std::vector<std::pair<int, Partition>>{
             {3, Partition(std::vector<int>{2})},
             {2, Partition(std::vector<int>{2})},
             {3, Partition(std::vector<int>{2, 1})}}) {
        auto rep = build_rep<Q>(n, nu);
        Matrix<Q> v = lws_vector(rep);
        REQUIRE_FALSE(v.is_zero());
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j < i; ++j) // E_ij with i > j lowers; must kill LWS
                REQUIRE((rep.e(i, j) * v).is_zero());
        // weight of LWS is the reversed partition
        for (int j = 1; j <= n; ++j) {
            Matrix<Q> hv = rep.e(j, j) * v;
            const int expect = nu.part(static_cast<std::size_t>(n - j));
            REQUIRE((hv - v * Q(expect)).is_zero());
        }
    }
}
