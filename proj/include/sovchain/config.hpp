#pragma once

#include "sovchain/chain_spec.hpp"
#include "sovchain/ring.hpp"

#include <json.hpp>

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace sovchain {

using Json = nlohmann::json;

inline std::string rational_to_string(const Rational& x) { return x.str(); }

inline Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const Json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("config: complex values must be [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

inline const std::vector<std::string>& all_suites()
{
    static const std::vector<std::string> s{"rtt",       "b-spectrum",   "sov-basis",
                                            "twist-independence", "hirota", "ladder-n2",
                                            "qsystem",   "wavefunction", "b-product"};
    return s;
}

struct RunConfig {
    ChainSpec<Rational> spec;
    std::string ring = "exact";
    std::vector<std::string> suites; // empty means all
    unsigned seed = 7;
    std::map<std::string, double> tolerances;
    std::string cache_dir = "cache";
    std::string output = "out";

    double tolerance(const std::string& suite, double fallback) const
    {
        auto it = tolerances.find(suite);
        return it != tolerances.end() ? it->second : fallback;
    }
};

/// Reference configuration: the rank-3 defining chain of length 2 with
/// twist eigenvalues (2, 3, 5) and inhomogeneities (0, 1/3).
inline RunConfig default_config()
{
    RunConfig c;
    c.spec.N = 3;
    c.spec.A = 1;
    c.spec.S = 1;
    c.spec.L = 2;
    c.spec.hbar = Rational(1);
    c.spec.theta = ChainSpec<Rational>::default_theta(2);
    c.spec.z = ChainSpec<Rational>::default_z(3);
    c.spec.validate();
    return c;
}

inline RunConfig config_from_json(const Json& j)
{
    static const std::set<std::string> known{"spec",       "ring",      "suites", "seed",
                                             "tolerances", "cache_dir", "output"};
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw std::invalid_argument("config: unknown key '" + it.key() + "'");
    if (!j.contains("spec")) throw std::invalid_argument("config: missing 'spec'");

    RunConfig c;
    const Json& s = j.at("spec");
    static const std::set<std::string> spec_known{"N", "A", "S", "L", "hbar", "theta", "z"};
    for (auto it = s.begin(); it != s.end(); ++it)
        if (!spec_known.count(it.key()))
            throw std::invalid_argument("config: unknown spec key '" + it.key() + "'");
    c.spec.N = s.at("N").get<int>();
    c.spec.A = s.at("A").get<int>();
    c.spec.S = s.at("S").get<int>();
    c.spec.L = s.at("L").get<int>();
    c.spec.hbar = s.contains("hbar") ? rational_from_string(s.at("hbar").get<std::string>())
                                     : Rational(1);
    if (s.contains("theta"))
        for (const auto& t : s.at("theta"))
            c.spec.theta.push_back(rational_from_string(t.get<std::string>()));
    else
        c.spec.theta = ChainSpec<Rational>::default_theta(c.spec.L);
    if (s.contains("z"))
        for (const auto& z : s.at("z"))
            c.spec.z.push_back(rational_from_string(z.get<std::string>()));
    else
        c.spec.z = ChainSpec<Rational>::default_z(c.spec.N);
    c.spec.validate();

    if (j.contains("ring")) {
        c.ring = j.at("ring").get<std::string>();
        if (c.ring != "exact" && c.ring != "float")
            throw std::invalid_argument("config: ring must be 'exact' or 'float'");
    }
    if (j.contains("suites"))
        for (const auto& name : j.at("suites")) {
            const std::string n = name.get<std::string>();
            bool ok = false;
            for (const auto& k : all_suites()) ok = ok || k == n;
            if (!ok) throw std::invalid_argument("config: unknown suite '" + n + "'");
            c.suites.push_back(n);
        }
    if (j.contains("seed")) c.seed = j.at("seed").get<unsigned>();
    if (j.contains("tolerances"))
        for (auto it = j.at("tolerances").begin(); it != j.at("tolerances").end(); ++it)
            c.tolerances[it.key()] = it.value().get<double>();
    if (j.contains("cache_dir")) c.cache_dir = j.at("cache_dir").get<std::string>();
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    return c;
}

inline Json config_to_json(const RunConfig& c)
{
    Json spec;
    spec["N"] = c.spec.N;
    spec["A"] = c.spec.A;
    spec["S"] = c.spec.S;
    spec["L"] = c.spec.L;
    spec["hbar"] = rational_to_string(c.spec.hbar);
    spec["theta"] = Json::array();
    for (const auto& t : c.spec.theta) spec["theta"].push_back(rational_to_string(t));
    spec["z"] = Json::array();
    for (const auto& z : c.spec.z) spec["z"].push_back(rational_to_string(z));

    Json j;
    j["spec"] = std::move(spec);
    j["ring"] = c.ring;
    j["suites"] = c.suites;
    j["seed"] = c.seed;
    j["tolerances"] = c.tolerances;
    j["cache_dir"] = c.cache_dir;
    j["output"] = c.output;
    return j;
}

} // namespace sovchain
