#pragma once

#include "sovchain/config.hpp"

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace sovchain {

struct SuiteResult {
    std::string name;
    bool pass = true;
    bool skipped = false;
    std::string note;
    double residual = 0.0;
    int checks = 0;
    double wall_ms = 0.0;
};

struct Report {
    std::string version = "1";
    std::string ring;
    unsigned seed = 0;
    std::vector<SuiteResult> suites;

    bool all_pass() const
    {
        for (const auto& s : suites)
            if (!s.pass) return false;
        return true;
    }

    Json to_json() const
    {
        Json j;
        j["version"] = version;
        j["ring"] = ring;
        j["seed"] = seed;
        j["suites"] = Json::array();
        for (const auto& s : suites) {
            Json e;
            e["name"] = s.name;
            e["status"] = s.skipped ? "skipped" : (s.pass ? "pass" : "fail");
            if (!s.note.empty()) e["note"] = s.note;
            e["residual"] = s.residual;
            e["checks"] = s.checks;
            e["wall_ms"] = s.wall_ms;
            j["suites"].push_back(std::move(e));
        }
        j["all_pass"] = all_pass();
        return j;
    }

    static Report from_json(const Json& j)
    {
        Report r;
        r.version = j.at("version").get<std::string>();
        r.ring = j.at("ring").get<std::string>();
        r.seed = j.at("seed").get<unsigned>();
        for (const auto& e : j.at("suites")) {
            SuiteResult s;
            s.name = e.at("name").get<std::string>();
            const std::string status = e.at("status").get<std::string>();
            s.skipped = status == "skipped";
            s.pass = status != "fail";
            if (e.contains("note")) s.note = e.at("note").get<std::string>();
            s.residual = e.at("residual").get<double>();
            s.checks = e.at("checks").get<int>();
            s.wall_ms = e.at("wall_ms").get<double>();
            r.suites.push_back(std::move(s));
        }
        return r;
    }

    std::string to_text() const
    {
        std::ostringstream out;
        for (const auto& s : suites) {
            out << std::left << std::setw(20) << s.name
                << (s.skipped ? "skipped" : (s.pass ? "pass" : "FAIL")) << "  checks=" << s.checks
                << "  residual=" << std::scientific << std::setprecision(3) << s.residual
                << std::defaultfloat << "  wall=" << s.wall_ms << "ms";
            if (!s.note.empty()) out << "  (" << s.note << ")";
            out << "\n";
        }
        out << "overall: " << (all_pass() ? "pass" : "FAIL") << "\n";
        return out.str();
    }

    std::string to_csv() const
    {
        std::ostringstream out;
        out << "name,status,checks,residual,wall_ms\n";
        for (const auto& s : suites)
            out << s.name << "," << (s.skipped ? "skipped" : (s.pass ? "pass" : "fail")) << ","
                << s.checks << "," << std::scientific << std::setprecision(6) << s.residual
                << std::defaultfloat << "," << s.wall_ms << "\n";
        return out.str();
    }
};

} // namespace sovchain
