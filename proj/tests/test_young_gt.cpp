#include <catch2/catch_amalgamated.hpp>

#include "sovchain/chain_spec.hpp"
#include "sovchain/gt_patterns.hpp"
#include "sovchain/partitions.hpp"

#include <set>

using namespace sovchain;
using Q = Rational;

TEST_CASE("partition basics and transpose involution")
{
    Partition p(std::vector<int>{4, 2, 2, 1});
    REQUIRE(p.boxes() == 9);
    REQUIRE(p.height() == 4);
    REQUIRE(p.width() == 4);
    REQUIRE(p.transpose().transpose() == p);
    REQUIRE(p.transpose() == Partition(std::vector<int>{4, 3, 1, 1}));
    REQUIRE(p.contains(Partition(std::vector<int>{2, 2})));
    REQUIRE_FALSE(Partition(std::vector<int>{2, 2}).contains(p));
}

TEST_CASE("partitions within a bounding box")
{
    auto all = partitions_within(Partition::rectangle(2, 2));
    // partitions inside 2x2: (), (1), (1,1), (2), (2,1), (2,2)
    REQUIRE(all.size() == 6);
    REQUIRE(all.front().empty());
    std::set<Partition> s(all.begin(), all.end());
    REQUIRE(s.size() == all.size());
    REQUIRE(s.count(Partition(std::vector<int>{2, 1})) == 1);
}

TEST_CASE("Weyl dimension formula on known cases")
{
    REQUIRE(weyl_dim(Partition(std::vector<int>{1}), 3) == 3);
    REQUIRE(weyl_dim(Partition(std::vector<int>{2}), 3) == 6);
    REQUIRE(weyl_dim(Partition(std::vector<int>{1, 1}), 3) == 3);
    REQUIRE(weyl_dim(Partition(std::vector<int>{2, 1}), 3) == 8);
    REQUIRE(weyl_dim(Partition(std::vector<int>{2}), 2) == 3);
    REQUIRE(weyl_dim(Partition(std::vector<int>{1}), 4) == 4);
    REQUIRE(weyl_dim(Partition(std::vector<int>{1, 1, 1}), 3) == 1);
}

TEST_CASE("semistandard tableau count equals dimension")
{
    for (int n : {2, 3, 4})
        for (auto mu : {Partition(std::vector<int>{2}), Partition(std::vector<int>{1, 1}),
                        Partition(std::vector<int>{2, 1})})
            REQUIRE(static_cast<long>(semistandard_tableaux(mu, n).size()) == weyl_dim(mu, n));
}

TEST_CASE("Schur character: determinant and tableau routes agree")
{
    std::vector<Q> z{Q(2), Q(3), Q(5)};
    for (auto mu : {Partition(std::vector<int>{1}), Partition(std::vector<int>{2}),
                    Partition(std::vector<int>{2, 1}), Partition(std::vector<int>{2, 2}),
                    Partition(std::vector<int>{3, 1})})
        REQUIRE(schur_det(mu, z) == schur_ssyt(mu, z));
    // degenerate variables fall back to the tableau sum
    std::vector<Q> zz{Q(2), Q(2), Q(5)};
    REQUIRE(schur(Partition(std::vector<int>{2, 1}), zz) == schur_ssyt(Partition(std::vector<int>{2, 1}), zz));
}

TEST_CASE("GT pattern count equals irrep dimension")
{
    REQUIRE(enumerate_gt(Partition(std::vector<int>{1}), 3).size() == 3);
    REQUIRE(enumerate_gt(Partition(std::vector<int>{2}), 3).size() == 6);
    REQUIRE(enumerate_gt(Partition(std::vector<int>{2, 1}), 3).size() == 8);
    REQUIRE(enumerate_gt(Partition(std::vector<int>{1}), 4).size() == 4);
    REQUIRE(enumerate_gt(Partition(std::vector<int>{2, 2}), 3).size() == 6);
    REQUIRE(enumerate_gt(Partition(std::vector<int>{2}), 2).size() == 3);
}

TEST_CASE("GT pattern weights sum over irrep to n^boxes-consistent content")
{
    // weights of the defining rep of gl(3) are the unit vectors
    auto pats = enumerate_gt(Partition(std::vector<int>{1}), 3);
    std::set<std::vector<int>> weights;
    for (const auto& p : pats) weights.insert(p.weight());
    REQUIRE(weights == std::set<std::vector<int>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

TEST_CASE("rectangular relabelling roundtrip")
{
    const int n = 3, a = 1, s = 2;
    auto pats = enumerate_gt(Partition::rectangle(a, s), n);
    int rect_count = 0;
    for (const auto& p : pats) {
        REQUIRE(is_rectangular_type(p, a, s)); // A=1: every pattern is of rectangular type
        auto r = rect_from_gt(p, a, s);
        REQUIRE(gt_from_rect(r, n, a, s) == p);
        ++rect_count;
    }
    REQUIRE(rect_count == 6);
    REQUIRE(enumerate_rect(n, a, s).size() == 6);
}

TEST_CASE("rect table constraints for N=4, A=2, S=2")
{
    auto rects = enumerate_rect(4, 2, 2);
    for (const auto& r : rects) {
        REQUIRE(r.rows() == 2);
        REQUIRE(r.cols() == 2);
        for (int k = 1; k <= 2; ++k) {
            REQUIRE(r.at(k, 2) <= r.at(k, 1));
            REQUIRE(r.at(k, 1) <= 2);
            REQUIRE(r.at(k, 2) >= 0);
        }
        for (int j = 1; j <= 2; ++j) REQUIRE(r.at(1, j) <= r.at(2, j));
        REQUIRE(gt_from_rect(r, 4, 2, 2).top() == Partition::rectangle(2, 2));
    }
    REQUIRE(static_cast<long>(rects.size()) == weyl_dim(Partition::rectangle(2, 2), 4));
}

TEST_CASE("tuple enumeration is lexicographic and complete")
{
    auto tuples = enumerate_tuples(3, 1, 1, 2);
    REQUIRE(tuples.size() == 9); // dim 3 per site, two sites
    for (std::size_t i = 1; i < tuples.size(); ++i) REQUIRE(tuples[i - 1] < tuples[i]);
}

TEST_CASE("predicted separated-variable table for N=2 defining")
{
    ChainSpec<Q> spec;
    spec.N = 2;
    spec.A = 1;
    spec.S = 1;
    spec.L = 1;
    spec.theta = {Q(1) / Q(3)};
    spec.hbar = Q(1);
    spec.validate();

    auto tuples = enumerate_tuples(2, 1, 1, 1);
    REQUIRE(tuples.size() == 2);
    // m = 0 gives root theta; m = 1 gives root theta + hbar
    auto t0 = predicted_x(tuples[0], spec);
    auto t1 = predicted_x(tuples[1], spec);
    REQUIRE(t0.x[0][0][0] == Q(1) / Q(3));
    REQUIRE(t1.x[0][0][0] == Q(1) / Q(3) + Q(1));
    REQUIRE(t0.b_poly.eval(Q(1) / Q(3)) == Q(0));
    REQUIRE(t1.b_poly.degree() == 1);
}

TEST_CASE("general-pattern predicted factor has the right degree")
{
    auto pats = enumerate_gt(Partition(std::vector<int>{2, 1}), 3);
    std::vector<Q> theta{Q(0)};
    for (const auto& p : pats) {
        auto b = predicted_b_general(std::vector<GTPattern>{p}, theta, Q(1));
        REQUIRE(b.degree() == 3); // L * N(N-1)/2 = 3 for N=3, L=1
        REQUIRE(b.leading() == Q(1));
    }
}

TEST_CASE("chain spec validation rejects resonant inhomogeneities")
{
    ChainSpec<Q> spec;
    spec.N = 2;
    spec.L = 2;
    spec.theta = {Q(0), Q(2)};
    spec.hbar = Q(1);
    REQUIRE_THROWS(spec.validate());
    spec.theta = {Q(0), Q(1) / Q(3)};
    REQUIRE_NOTHROW(spec.validate());
}
