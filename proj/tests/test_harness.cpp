#include <catch2/catch_amalgamated.hpp>

#include "sovchain/cache.hpp"
#include "sovchain/config.hpp"
#include "sovchain/report.hpp"

#include <filesystem>
#include <fstream>

using namespace sovchain;
using Q = Rational;

TEST_CASE("run configuration survives a json round trip")
{
    RunConfig c = default_config();
    c.ring = "float";
    c.suites = {"rtt", "qsystem"};
    c.seed = 42;
    c.tolerances["qsystem"] = 1e-9;
    RunConfig back = config_from_json(config_to_json(c));
    REQUIRE(back.spec.N == c.spec.N);
    REQUIRE(back.spec.theta == c.spec.theta);
    REQUIRE(back.spec.z == c.spec.z);
    REQUIRE(back.ring == "float");
    REQUIRE(back.suites == c.suites);
    REQUIRE(back.seed == 42);
    REQUIRE(back.tolerance("qsystem", 1.0) == 1e-9);
    REQUIRE(back.tolerance("rtt", 0.5) == 0.5);
}

TEST_CASE("invalid configurations are rejected")
{
    Json good = config_to_json(default_config());
    Json bad1 = good;
    bad1["bogus"] = 1;
    REQUIRE_THROWS_AS(config_from_json(bad1), std::invalid_argument);
    Json bad2 = good;
    bad2["spec"]["theta"][0] = "one third";
    REQUIRE_THROWS(config_from_json(bad2));
    Json bad3 = good;
    bad3["suites"] = Json::array({"nonsense"});
    REQUIRE_THROWS_AS(config_from_json(bad3), std::invalid_argument);
    Json bad4 = good;
    bad4["spec"]["theta"] = Json::array({"0", "1"}); // resonant difference
    REQUIRE_THROWS(config_from_json(bad4));
}

TEST_CASE("rational serialization uses p/q strings")
{
    REQUIRE(rational_to_string(Q(7) / Q(3)) == "7/3");
    REQUIRE(rational_from_string("7/3") == Q(7) / Q(3));
    REQUIRE(rational_from_string("-5") == Q(-5));
    Json c = complex_to_json(Complex(1.5, -2.0));
    REQUIRE(complex_from_json(c) == Complex(1.5, -2.0));
}

TEST_CASE("reports round trip and aggregate pass status")
{
    Report r;
    r.ring = "exact";
    r.seed = 7;
    r.suites.push_back({"rtt", true, false, "", 0.0, 5, 12.0});
    r.suites.push_back({"qsystem", false, false, "kernel missing", 2e-3, 9, 40.0});
    r.suites.push_back({"ladder-n2", true, true, "N != 2", 0.0, 0, 0.1});
    REQUIRE_FALSE(r.all_pass());
    Report back = Report::from_json(r.to_json());
    REQUIRE(back.suites.size() == 3);
    REQUIRE(back.suites[1].pass == false);
    REQUIRE(back.suites[2].skipped == true);
    REQUIRE(back.to_text() == r.to_text());
    REQUIRE(back.to_csv().find("qsystem,fail") != std::string::npos);
}

TEST_CASE("operator cache stores and restores exact objects")
{
    const std::string dir =
        (std::filesystem::temp_directory_path() / "sovchain-cache-test").string();
    std::filesystem::remove_all(dir);
    OperatorCache cache(dir);

    Matrix<Q> m(2, 3);
    m(0, 0) = Q(1) / Q(3);
    m(1, 2) = Q(-7) / Q(5);
    cache.store_matrix("m", m);
    Matrix<Q> back;
    REQUIRE(cache.load_matrix("m", back));
    REQUIRE((back - m).is_zero());

    OpPoly<Q> p(2, {Matrix<Q>::identity(2), Matrix<Q>::identity(2) * (Q(2) / Q(9))});
    cache.store_oppoly("p", p);
    OpPoly<Q> pback(1);
    REQUIRE(cache.load_oppoly("p", pback));
    REQUIRE(pback.degree() == p.degree());
    REQUIRE((pback.coeff(1) - p.coeff(1)).is_zero());

    // kind mismatch and corruption read as misses
    REQUIRE_FALSE(cache.load_oppoly("m", pback));
    std::ofstream(dir + "/junk.bin") << "not a cache record";
    REQUIRE_FALSE(cache.load_matrix("junk", back));
    REQUIRE_FALSE(cache.load_matrix("absent", back));
    REQUIRE(cache.hits() == 2);
    REQUIRE(cache.misses() == 3);
    std::filesystem::remove_all(dir);
}

TEST_CASE("twist-independent objects share cache keys across twists")
{
    ChainSpec<Q> a = default_config().spec;
    ChainSpec<Q> b = a;
    b.z = {Q(7), Q(11), Q(13)};
    REQUIRE(spec_hash(a, false) == spec_hash(b, false));
    REQUIRE(spec_hash(a, true) != spec_hash(b, true));
    ChainSpec<Q> c = a;
    c.theta[1] = Q(2) / Q(7);
    REQUIRE(spec_hash(a, false) != spec_hash(c, false));
}
