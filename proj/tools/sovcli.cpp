#include "sovchain/cache.hpp"
#include "sovchain/config.hpp"
#include "sovchain/qsystem.hpp"
#include "sovchain/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

using namespace sovchain;
using Q = Rational;

namespace {

Monodromy<Q> cached_monodromy(const ChainSpec<Q>& spec, const Rep<Q>& rep, OperatorCache& cache)
{
    const std::string key = spec_hash(spec, false) + "-monodromy";
    const std::size_t n2 = static_cast<std::size_t>(spec.N) * static_cast<std::size_t>(spec.N);
    std::vector<OpPoly<Q>> entries;
    if (cache.load_oppoly_list(key, entries) && entries.size() == n2) {
        Monodromy<Q> m;
        m.N = spec.N;
        m.spec = spec;
        m.dim = entries.front().dim();
        m.t = std::move(entries);
        return m;
    }
    Monodromy<Q> m = build_monodromy(spec, rep);
    cache.store_oppoly_list(key, m.t);
    return m;
}

OpPoly<Q> cached_boperator(const Monodromy<Q>& bare, OperatorCache& cache)
{
    const std::string key = spec_hash(bare.spec, false) + "-boperator";
    OpPoly<Q> b(bare.dim);
    if (cache.load_oppoly(key, b) && b.dim() == bare.dim) return b;
    b = build_b(bare);
    cache.store_oppoly(key, b);
    return b;
}

/// Everything the suites share; exact objects eagerly, float objects and
/// the covector basis on demand.
struct Workspace {
    RunConfig cfg;
    ChainSpec<Q> spec;
    Rep<Q> rep;
    Monodromy<Q> bare;
    Matrix<Q> vac;
    OperatorCache cache;

    std::optional<SovBasis<Q>> basis_;
    std::optional<ChainSpec<Complex>> cspec_;
    std::optional<Monodromy<Complex>> cbare_;
    std::optional<Monodromy<Complex>> ctwisted_;
    std::optional<Matrix<Complex>> cvac_;
    std::optional<std::vector<BetheState>> states_;
    std::optional<std::vector<QFunctions>> qfuns_;

    explicit Workspace(RunConfig c)
        : cfg(std::move(c)),
          spec(cfg.spec),
          rep(build_rep<Q>(spec.N, spec.weight())),
          bare((spec.validate(), Monodromy<Q>())),
          vac(1, 1),
          cache(cfg.cache_dir)
    {
        bare = cached_monodromy(spec, rep, cache);
        vac = gt_vacuum_dual(rep, spec.L);
    }

    const SovBasis<Q>& basis()
    {
        if (!basis_) {
            SovBasis<Q> b;
            b.spec = spec;
            b.tuples = enumerate_tuples(spec.N, spec.A, spec.S, spec.L);
            const std::string key = spec_hash(spec, false);
            Matrix<Q> rows, phis;
            if (cache.load_matrix(key + "-sovbasis", rows) &&
                cache.load_matrix(key + "-sovphi", phis) && rows.rows() == b.tuples.size() &&
                phis.cols() == b.tuples.size()) {
                b.rows = std::move(rows);
                for (std::size_t t = 0; t < b.tuples.size(); ++t) b.phi.push_back(phis(0, t));
            } else {
                b = build_sov_basis(bare, rep, companion_twist(spec.z));
                Matrix<Q> phi_row(1, b.phi.size());
                for (std::size_t t = 0; t < b.phi.size(); ++t) phi_row(0, t) = b.phi[t];
                cache.store_matrix(key + "-sovbasis", b.rows);
                cache.store_matrix(key + "-sovphi", phi_row);
            }
            basis_ = std::move(b);
        }
        return *basis_;
    }

    const ChainSpec<Complex>& cspec()
    {
        if (!cspec_) cspec_ = spec_to_complex(spec);
        return *cspec_;
    }

    const Monodromy<Complex>& cbare()
    {
        if (!cbare_) cbare_ = monodromy_to_complex(bare);
        return *cbare_;
    }

    const Monodromy<Complex>& ctwisted()
    {
        if (!ctwisted_)
            ctwisted_ = cbare().twisted(matrix_to_complex(companion_twist(spec.z)));
        return *ctwisted_;
    }

    const Matrix<Complex>& cvac()
    {
        if (!cvac_) cvac_ = matrix_to_complex(vac);
        return *cvac_;
    }

    const std::vector<BetheState>& states()
    {
        if (!states_) states_ = diagonalize_bethe(ctwisted(), cfg.seed, &cvac());
        return *states_;
    }

    const std::vector<QFunctions>& qfunctions()
    {
        if (!qfuns_) {
            std::vector<QFunctions> qf;
            for (const auto& st : states()) qf.push_back(solve_all_q(st, cspec()));
            qfuns_ = std::move(qf);
        }
        return *qfuns_;
    }
};

template <class Body>
SuiteResult run_suite(const std::string& name, Body&& body)
{
    SuiteResult r;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.pass = false;
        r.note = e.what();
    }
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
    return r;
}

void exact_check(SuiteResult& r, double defect)
{
    ++r.checks;
    r.residual = std::max(r.residual, defect);
    if (defect != 0.0) r.pass = false;
}

void float_check(SuiteResult& r, double defect, double tol)
{
    ++r.checks;
    r.residual = std::max(r.residual, defect);
    if (!(defect < tol)) r.pass = false;
}

double defect_norm(const Matrix<Q>& m) { return m.is_zero() ? 0.0 : m.max_abs(); }

SuiteResult suite_rtt(Workspace& w)
{
    return run_suite("rtt", [&](SuiteResult& r) {
        std::mt19937 rng(w.cfg.seed);
        std::uniform_int_distribution<int> num(-30, 30), den(1, 12);
        for (int k = 0; k < 5; ++k) {
            Q u = Q(num(rng)) / Q(den(rng));
            Q v = Q(num(rng)) / Q(den(rng));
            while (u == v) v = Q(num(rng)) / Q(den(rng));
            exact_check(r, rtt_residual(w.bare, u, v));
        }
    });
}

SuiteResult suite_b_spectrum(Workspace& w)
{
    return run_suite("b-spectrum", [&](SuiteResult& r) {
        const auto tuples = enumerate_gt_tuples(w.spec.weight(), w.spec.N, w.spec.L);
        const Q u0 = Q(1) / Q(2), v0 = Q(-2) / Q(9), w0 = Q(3) / Q(7);
        Matrix<Q> b1 = eval_b(w.bare, u0);
        Matrix<Q> b2 = eval_b(w.bare, v0);
        exact_check(r, defect_norm(b1 * b2 - b2 * b1));
        for (const Q& u : {u0, v0, w0}) {
            const bool match =
                spectrum_check(eval_b(w.bare, u), tuples, w.spec.theta, w.spec.hbar, u);
            exact_check(r, match ? 0.0 : 1.0);
        }
    });
}

SuiteResult suite_sov_basis(Workspace& w)
{
    return run_suite("sov-basis", [&](SuiteResult& r) {
        const auto& basis = w.basis();
        exact_check(r, basis.tuples.size() == w.bare.dim ? 0.0 : 1.0);
        exact_check(r, basis.rows.rank() == w.bare.dim ? 0.0 : 1.0);
        exact_check(r, vacuum_equations_residual(w.bare, w.vac, Q(1) / Q(2)));
        for (const Q& u0 : {Q(1) / Q(2), Q(-2) / Q(9)})
            exact_check(r, b_eigen_residual(basis, eval_b(w.bare, u0), u0));
    });
}

SuiteResult suite_twist_independence(Workspace& w)
{
    return run_suite("twist-independence", [&](SuiteResult& r) {
        const auto& basis = w.basis();
        std::vector<Q> z2;
        for (int i = 0; i < w.spec.N; ++i) z2.push_back(Q(17 + 6 * i));
        auto b2 = build_sov_basis(w.bare, w.rep, companion_twist(z2));
        auto b3 = build_sov_basis(w.bare, w.rep,
                                  companion_twist(std::vector<Q>(
                                      static_cast<std::size_t>(w.spec.N), Q(0))));
        exact_check(r, defect_norm(basis.rows - b2.rows));
        exact_check(r, defect_norm(basis.rows - b3.rows));
    });
}

SuiteResult suite_hirota(Workspace& w)
{
    return run_suite("hirota", [&](SuiteResult& r) {
        Monodromy<Q> tw = w.bare.twisted(companion_twist(w.spec.z));
        for (int s = 1; s <= w.spec.S + 1; ++s)
            exact_check(r, hirota_residual(tw, s, Q(1) / Q(2)));
    });
}

SuiteResult suite_ladder_n2(Workspace& w)
{
    return run_suite("ladder-n2", [&](SuiteResult& r) {
        if (w.spec.N != 2) {
            r.skipped = true;
            r.note = "rank-2 identity; N != 2";
            return;
        }
        Monodromy<Q> tw = w.bare.twisted(companion_twist(w.spec.z));
        for (int alpha = 0; alpha < w.spec.L; ++alpha)
            for (int s = 1; s <= w.spec.S; ++s)
                exact_check(r, ladder_residual_rank2(w.bare, tw, w.vac, s, alpha));
    });
}

SuiteResult suite_qsystem(Workspace& w)
{
    return run_suite("qsystem", [&](SuiteResult& r) {
        const double tol = w.cfg.tolerance("qsystem", 1e-8);
        const auto& states = w.states();
        const auto& qf = w.qfunctions();
        float_check(r, states.size() == w.bare.dim ? 0.0 : 1.0, tol);
        for (std::size_t k = 0; k < states.size(); ++k) {
            float_check(r, states[k].residual, tol);
            float_check(r, qf[k].residual, tol);
            for (int i = 0; i < w.spec.N; ++i)
                for (int j = i + 1; j < w.spec.N; ++j)
                    float_check(r, qq_residual(qf[k].q[static_cast<std::size_t>(i)],
                                               qf[k].q[static_cast<std::size_t>(j)],
                                               w.cspec().z[static_cast<std::size_t>(i)],
                                               w.cspec().z[static_cast<std::size_t>(j)],
                                               w.cspec()),
                                tol);
            for (int alpha = 0; alpha < w.spec.L; ++alpha)
                for (int s = 1; s <= w.spec.S; ++s) {
                    const Partition mu(std::vector<int>{s});
                    const Complex th = w.cspec().theta[static_cast<std::size_t>(alpha)];
                    double defect = 0.0;
                    const Complex measured = rayleigh_eigenvalue(
                        transfer_lambda_twisted(w.ctwisted(), mu, th), states[k].vec, &defect);
                    float_check(r, defect, tol);
                    for (int i = 1; i <= w.spec.N; ++i) {
                        const Complex predicted = wronskian_transfer(
                            qf[k].q, w.cspec(), std::vector<int>{i}, alpha, mu);
                        float_check(r, std::abs(predicted - measured) /
                                           std::max(1.0, std::abs(measured)),
                                    tol);
                    }
                }
        }
    });
}

SuiteResult suite_wavefunction(Workspace& w)
{
    return run_suite("wavefunction", [&](SuiteResult& r) {
        const double tol = w.cfg.tolerance("wavefunction", 1e-8);
        const auto& basis = w.basis();
        const auto& states = w.states();
        const auto& qf = w.qfunctions();
        Matrix<Complex> rows = matrix_to_complex(basis.rows);
        for (std::size_t t = 0; t < basis.tuples.size(); ++t) {
            const Complex inv = Complex(1.0, 0.0) / to_complex(basis.phi[t]);
            for (std::size_t c = 0; c < rows.cols(); ++c) rows(t, c) = rows(t, c) * inv;
        }
        for (std::size_t k = 0; k < states.size(); ++k) {
            Matrix<Complex> lhs = rows * states[k].vec;
            double scale = 0.0;
            for (std::size_t t = 0; t < basis.tuples.size(); ++t)
                scale = std::max(scale, std::abs(lhs(t, 0)));
            for (const std::vector<int>& subset : {std::vector<int>{1}, std::vector<int>{2}}) {
                double worst = 0.0;
                for (std::size_t t = 0; t < basis.tuples.size(); ++t)
                    worst = std::max(
                        worst, std::abs(lhs(t, 0) - slater_wavefunction(qf[k].q, w.cspec(),
                                                                        subset, basis.tuples[t])));
                float_check(r, worst / std::max(1.0, scale), tol);
            }
        }
    });
}

SuiteResult suite_b_product(Workspace& w)
{
    return run_suite("b-product", [&](SuiteResult& r) {
        if (w.spec.A != 1) {
            r.skipped = true;
            r.note = "single-row sectors only; A != 1";
            return;
        }
        const double tol = w.cfg.tolerance("b-product", 1e-8);
        Matrix<Complex> omega = matrix_to_complex(
            omega_state(w.rep, w.spec, sigma_identity(w.spec.N), w.vac));
        const auto& states = w.states();
        const auto& qf = w.qfunctions();
        for (std::size_t k = 0; k < states.size(); ++k) {
            Matrix<Complex> built = b_product_state(w.cbare(), omega, poly_roots(qf[k].q[0]));
            float_check(r, misalignment(built, states[k].vec), tol);
        }
    });
}

std::vector<std::string> requested_suites(const RunConfig& cfg,
                                          const std::vector<std::string>& cli_suites)
{
    std::vector<std::string> names = cli_suites.empty() ? cfg.suites : cli_suites;
    if (names.empty() || (names.size() == 1 && names.front() == "all")) return all_suites();
    for (const auto& n : names) {
        bool ok = false;
        for (const auto& k : all_suites()) ok = ok || k == n;
        if (!ok) throw std::invalid_argument("unknown suite '" + n + "'");
    }
    return names;
}

Report run_verify(Workspace& w, const std::vector<std::string>& names)
{
    Report rep;
    rep.ring = w.cfg.ring;
    rep.seed = w.cfg.seed;
    for (const auto& name : names) {
        if (name == "rtt") rep.suites.push_back(suite_rtt(w));
        else if (name == "b-spectrum") rep.suites.push_back(suite_b_spectrum(w));
        else if (name == "sov-basis") rep.suites.push_back(suite_sov_basis(w));
        else if (name == "twist-independence") rep.suites.push_back(suite_twist_independence(w));
        else if (name == "hirota") rep.suites.push_back(suite_hirota(w));
        else if (name == "ladder-n2") rep.suites.push_back(suite_ladder_n2(w));
        else if (name == "qsystem") rep.suites.push_back(suite_qsystem(w));
        else if (name == "wavefunction") rep.suites.push_back(suite_wavefunction(w));
        else if (name == "b-product") rep.suites.push_back(suite_b_product(w));
    }
    return rep;
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

Json poly_to_json(const Poly<Q>& p, bool as_float)
{
    Json arr = Json::array();
    for (int k = 0; k <= p.degree(); ++k) {
        const Q& c = p.coeff(static_cast<std::size_t>(k));
        arr.push_back(as_float ? complex_to_json(to_complex(c)) : Json(rational_to_string(c)));
    }
    return arr;
}

int cmd_build(Workspace& w)
{
    OpPoly<Q> b = cached_boperator(w.bare, w.cache);
    Json j;
    j["config"] = config_to_json(w.cfg);
    j["dim"] = w.bare.dim;
    j["monodromy_degree"] = w.bare.t.front().degree();
    j["separating_operator_degree"] = b.degree();
    j["cache"] = {{"hits", w.cache.hits()}, {"misses", w.cache.misses()}};
    write_file(w.cfg.output + "/build.json", j.dump(2) + "\n");
    std::cout << "built chain: dim " << w.bare.dim << ", cache hits " << w.cache.hits()
              << ", misses " << w.cache.misses() << "\n";
    return 0;
}

int cmd_spectrum(Workspace& w)
{
    const bool as_float = w.cfg.ring == "float";
    const auto tuples = enumerate_gt_tuples(w.spec.weight(), w.spec.N, w.spec.L);
    const Q u0 = Q(1) / Q(2);
    const bool match = spectrum_check(eval_b(w.bare, u0), tuples, w.spec.theta, w.spec.hbar, u0);
    Json j;
    j["dim"] = w.bare.dim;
    j["match"] = match;
    j["point"] = rational_to_string(u0);
    j["tuples"] = Json::array();
    for (std::size_t t = 0; t < tuples.size(); ++t) {
        Json e;
        e["id"] = t;
        e["b_poly"] = poly_to_json(predicted_b_general(tuples[t], w.spec.theta, w.spec.hbar),
                                   as_float);
        j["tuples"].push_back(std::move(e));
    }
    write_file(w.cfg.output + "/spectrum.json", j.dump(2) + "\n");
    std::cout << "spectrum: " << tuples.size() << " tuples, multiset match "
              << (match ? "pass" : "FAIL") << "\n";
    return match ? 0 : 1;
}

int cmd_sov(Workspace& w)
{
    const bool as_float = w.cfg.ring == "float";
    const auto& basis = w.basis();
    Json j = Json::array();
    for (std::size_t t = 0; t < basis.tuples.size(); ++t) {
        Json e;
        e["id"] = t;
        e["patterns"] = Json::array();
        for (const auto& p : basis.tuples[t].patterns) e["patterns"].push_back(p.table());
        e["phi"] = as_float ? complex_to_json(to_complex(basis.phi[t]))
                            : Json(rational_to_string(basis.phi[t]));
        Json row = Json::array();
        for (std::size_t c = 0; c < basis.rows.cols(); ++c)
            row.push_back(as_float ? complex_to_json(to_complex(basis.rows(t, c)))
                                   : Json(rational_to_string(basis.rows(t, c))));
        e["covector"] = std::move(row);
        j.push_back(std::move(e));
    }
    write_file(w.cfg.output + "/sov_basis.json", j.dump(2) + "\n");
    std::cout << "exported " << basis.tuples.size() << " covectors\n";
    return 0;
}

int cmd_qsolve(Workspace& w)
{
    const auto& states = w.states();
    const auto& qf = w.qfunctions();
    Json j;
    j["seed"] = w.cfg.seed;
    j["z"] = Json::array();
    for (const auto& z : w.cspec().z) j["z"].push_back(complex_to_json(z));
    j["states"] = Json::array();
    double worst = 0.0;
    for (std::size_t k = 0; k < states.size(); ++k) {
        Json e;
        e["id"] = k;
        e["eigen_residual"] = states[k].residual;
        e["q_residual"] = qf[k].residual;
        Json qs = Json::object();
        for (int i = 0; i < w.spec.N; ++i) {
            Json arr = Json::array();
            const Poly<Complex>& q = qf[k].q[static_cast<std::size_t>(i)];
            for (int d = 0; d <= q.degree(); ++d)
                arr.push_back(complex_to_json(q.coeff(static_cast<std::size_t>(d))));
            qs[std::to_string(i + 1)] = std::move(arr);
        }
        e["q"] = std::move(qs);
        j["states"].push_back(std::move(e));
        worst = std::max(worst, std::max(states[k].residual, qf[k].residual));
    }
    j["worst_residual"] = worst;
    write_file(w.cfg.output + "/qsystem.json", j.dump(2) + "\n");
    std::cout << "solved q-functions for " << states.size() << " states, worst residual "
              << worst << "\n";
    return worst < w.cfg.tolerance("qsystem", 1e-8) ? 0 : 1;
}

int cmd_verify(Workspace& w, const std::vector<std::string>& cli_suites)
{
    const auto names = requested_suites(w.cfg, cli_suites);
    Report rep = run_verify(w, names);
    write_file(w.cfg.output + "/report.json", rep.to_json().dump(2) + "\n");
    write_file(w.cfg.output + "/report.txt", rep.to_text());
    std::cout << rep.to_text();
    return rep.all_pass() ? 0 : 1;
}

int cmd_report(const RunConfig& cfg)
{
    std::ifstream in(cfg.output + "/report.json");
    if (!in) throw std::runtime_error("no report.json in " + cfg.output);
    Json j;
    in >> j;
    Report rep = Report::from_json(j);
    write_file(cfg.output + "/report.txt", rep.to_text());
    write_file(cfg.output + "/report.csv", rep.to_csv());
    std::cout << rep.to_text();
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"separation-of-variables toolkit for rational gl(N) spin chains"};
    app.require_subcommand(1);

    std::string config_path, ring, out_dir;
    std::vector<std::string> cli_suites;
    std::optional<unsigned> seed;
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--suite", cli_suites, "suite name (repeatable) or 'all'");
    app.add_option("--ring", ring, "scalar ring for exports")
        ->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--seed", seed, "seed for randomized checks and diagonalization");
    app.add_option("--out", out_dir, "output directory");

    auto* build = app.add_subcommand("build", "construct and cache the chain operators");
    auto* spectrum = app.add_subcommand("spectrum", "export the separating-operator spectrum");
    auto* sov = app.add_subcommand("sov", "export the separated covector basis");
    auto* qsolve = app.add_subcommand("qsolve", "diagonalize and export the q-functions");
    auto* verify = app.add_subcommand("verify", "run verification suites and write a report");
    auto* report = app.add_subcommand("report", "re-emit an existing report as text and csv");
    for (auto* sub : {build, spectrum, sov, qsolve, verify, report}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::runtime_error("cannot read config " + config_path);
            Json j;
            in >> j;
            cfg = config_from_json(j);
        } else {
            cfg = default_config();
        }
        if (!ring.empty()) cfg.ring = ring;
        if (seed) cfg.seed = *seed;
        if (!out_dir.empty()) cfg.output = out_dir;
        std::filesystem::create_directories(cfg.output);

        if (report->parsed()) return cmd_report(cfg);

        Workspace w(cfg);
        if (build->parsed()) return cmd_build(w);
        if (spectrum->parsed()) return cmd_spectrum(w);
        if (sov->parsed()) return cmd_sov(w);
        if (qsolve->parsed()) return cmd_qsolve(w);
        if (verify->parsed()) return cmd_verify(w, cli_suites);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
