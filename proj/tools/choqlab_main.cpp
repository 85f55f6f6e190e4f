#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

#include "choq/run_config.hpp"
#include "choq/verify_suite.hpp"

namespace fs = std::filesystem;
using namespace choq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRegime = 2;
constexpr int kExitNoConverge = 3;
constexpr int kExitVerifyFail = 4;

struct CliOverrides {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
};

int resolve_threads(const CliOverrides& ov, const RunConfig& rc) {
    if (ov.threads) return std::max(1, *ov.threads);
    if (const char* env = std::getenv("CHOQUARD_LAB_THREADS"))
        return std::max(1, std::atoi(env));
    return std::max(1, rc.threads);
}

RunConfig load_with_overrides(const CliOverrides& ov) {
    RunConfig rc = load_run_config(ov.config_path);
    if (!ov.out_dir.empty()) rc.output_dir = ov.out_dir;
    if (ov.seed) {
        rc.seed = *ov.seed;
        rc.solver.seed = *ov.seed;
    }
    return rc;
}

json report_shell(const RunConfig& rc) {
    char hash[32];
    std::snprintf(hash, sizeof(hash), "0x%016llx",
                  static_cast<unsigned long long>(rc.content_hash));
    return json{{"config", resolved_config_json(rc)}, {"config_hash", hash}};
}

void write_report(const json& j, const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    write_text_file((fs::path(dir) / name).string(), j.dump(2) + "\n");
}

int cmd_constants(const CliOverrides& ov) {
    RunConfig rc = load_with_overrides(ov);
    SharpConstants sc = compute_constants(rc.params);
    if (rc.include_cgn) {
        Grid g = rc.cgn_grid ? *rc.cgn_grid : rc.grid;
        CgnResult cg = choquard_gn_constant(rc.params, g);
        if (cg.converged) {
            sc.C_cgn = ConstantValue{cg.C_cgn, Provenance::grid_solve,
                                     std::abs(cg.quotient - cg.C_cgn)};
        } else {
            std::cerr << "constants: W_p flow did not converge (residual " << cg.residual
                      << "); C_cgn not emitted\n";
        }
    }
    json rep = report_shell(rc);
    rep["constants"] = to_json(sc);
    rep["exponents"] = to_json(derive_exponents(rc.params));
    rep["regime"] = to_json(validate_regime(rc.params, sc));
    // closed-formula consistency flag for the nonlocal Sobolev constant
    if (sc.S && sc.S_alpha) {
        const double pbar = derive_exponents(rc.params).p_bar.value();
        const double AC = riesz_constant(rc.params.N, rc.params.alpha) *
                          hls_constant(rc.params.N, rc.params.alpha);
        const double lhs = sc.S_alpha->value * std::pow(AC, 1.0 / pbar);
        rep["S_alpha_identity_pass"] = std::abs(lhs - sc.S->value) <= 1e-12 * sc.S->value;
    }
    write_report(rep, rc.output_dir, "constants.json");
    std::cout << rep.dump(2) << "\n";
    return kExitOk;
}

int cmd_solve(const CliOverrides& ov) {
    RunConfig rc = load_with_overrides(ov);
    const CriticalExponents ce = derive_exponents(rc.params);
    SharpConstants sc = compute_constants(rc.params);
    RegimeReport regime = validate_regime(rc.params, sc);
    if (regime.regime != Regime::existence) {
        std::cerr << "solve: parameters are in the '" << regime_name(regime.regime)
                  << "' regime; refusing to run.\n";
        for (const auto& v : regime.violated) std::cerr << "  violated: " << v << "\n";
        json rep = report_shell(rc);
        rep["regime"] = to_json(regime);
        write_report(rep, rc.output_dir, "report.json");
        return kExitRegime;
    }

    Field init = make_named_init(rc.grid, rc.init, rc.params, rc.seed);
    SolveReport sr = minimize_on_pohozaev(rc.params, ce, init, rc.solver);

    json rep = report_shell(rc);
    rep["regime"] = to_json(regime);
    rep["exponents"] = to_json(ce);
    rep["report"] = to_json(sr);
    if (rc.params.N >= 3 && sc.S_alpha && !ce.p_bar.is_unbounded() &&
        std::abs(rc.params.p - ce.p_bar.value()) <= 1e-12 * ce.p_bar.value()) {
        const double expo = (rc.params.N + rc.params.alpha) / (2.0 + rc.params.alpha);
        const double level = (2.0 + rc.params.alpha) /
                             (2.0 * (rc.params.N + rc.params.alpha)) *
                             std::pow(sc.S_alpha->value, expo);
        rep["critical_level"] = level;
        rep["critical_margin"] = sr.c_po - level;
    }
    fs::create_directories(rc.output_dir);
    write_report(rep, rc.output_dir, "report.json");
    write_field(sr.field, (fs::path(rc.output_dir) / "field.bin").string());
    write_radial_csv(recenter_to_node(modulus(sr.field), sr.symmetry.center),
                     (fs::path(rc.output_dir) / "radial.csv").string());
    write_history_csv(sr.history, (fs::path(rc.output_dir) / "history.csv").string());
    std::cout << "solve: converged=" << (sr.converged ? "true" : "false")
              << " c_po=" << fmt17(sr.c_po) << " lambda=" << fmt17(sr.lambda)
              << " iterations=" << sr.iterations << "\n";
    return sr.converged ? kExitOk : kExitNoConverge;
}

int cmd_sweep(const CliOverrides& ov) {
    RunConfig rc = load_with_overrides(ov);
    const CriticalExponents ce = derive_exponents(rc.params);
    SharpConstants sc = compute_constants(rc.params);
    if (!sc.a_star) {
        std::cerr << "sweep: a_star could not be computed\n";
        return kExitError;
    }
    const double a_star = sc.a_star->value;
    const double mu_thr =
        std::pow(a_star / rc.params.a, 4.0 / rc.params.N);
    std::vector<double> mus;
    for (double f : rc.mu_threshold_factors) mus.push_back(f * mu_thr);
    for (double m : rc.mu_values) mus.push_back(m);
    if (mus.empty()) {
        std::cerr << "sweep: no mu values configured\n";
        return kExitError;
    }

    const int nthreads = std::min<int>(resolve_threads(ov, rc), int(mus.size()));
    ThresholdReport merged;
    if (nthreads <= 1) {
        merged = sweep_threshold(rc.params, ce, a_star, mus, rc.grid, rc.solver);
    } else {
        // one worker per chunk; rows merged back in μ order
        std::vector<std::vector<double>> chunks(nthreads);
        for (std::size_t i = 0; i < mus.size(); ++i)
            chunks[i % nthreads].push_back(mus[i]);
        std::vector<ThresholdReport> parts(nthreads);
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&, t] {
                parts[t] = sweep_threshold(rc.params, ce, a_star, chunks[t], rc.grid, rc.solver);
            });
        for (auto& th : pool) th.join();
        merged = parts[0];
        merged.rows.clear();
        for (double m : mus)
            for (const auto& part : parts)
                for (const auto& row : part.rows)
                    if (row.mu == m) merged.rows.push_back(row);
    }

    json rep = report_shell(rc);
    rep["threshold"] = to_json(merged);
    write_report(rep, rc.output_dir, "threshold.json");
    std::cout << rep["threshold"].dump(2) << "\n";
    for (const auto& row : merged.rows)
        if (row.mode == "solve" && !row.converged) return kExitNoConverge;
    return kExitOk;
}

int cmd_gapcheck(const CliOverrides& ov) {
    RunConfig rc = load_with_overrides(ov);
    const CriticalExponents ce = derive_exponents(rc.params);
    if (ce.p_bar.is_unbounded() ||
        std::abs(rc.params.p - ce.p_bar.value()) > 1e-12 * ce.p_bar.value()) {
        std::cerr << "gapcheck: requires p = p_bar (got p=" << rc.params.p << ")\n";
        return kExitRegime;
    }
    GapReport gr = critical_gap_check(rc.params, ce, rc.eps_list, rc.grid, rc.params.a,
                                      rc.gap_tolerance);
    json rep = report_shell(rc);
    rep["gapcheck"] = to_json(gr);
    write_report(rep, rc.output_dir, "gapcheck.json");
    std::cout << rep["gapcheck"].dump(2) << "\n";
    return gr.pass ? kExitOk : kExitVerifyFail;
}

int cmd_verify(const CliOverrides& ov) {
    VerifyOptions vo;
    RunConfig rc;
    bool have_config = !ov.config_path.empty();
    if (have_config) {
        rc = load_with_overrides(ov);
        vo.M_1d = rc.verify_M_1d;
        vo.M_3d = rc.verify_M_3d;
        vo.seed = rc.seed;
    } else if (!ov.out_dir.empty()) {
        rc.output_dir = ov.out_dir;
    }
    if (ov.seed) vo.seed = *ov.seed;

    std::vector<CheckResult> results = run_verify_suite(vo);
    int failures = 0;
    json rows = json::array();
    for (const auto& r : results) {
        if (!r.pass) ++failures;
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
                  << "  measured=" << fmt17(r.measured) << "  tolerance=" << fmt17(r.tolerance)
                  << (r.detail.empty() ? "" : ("  " + r.detail)) << "\n";
        rows.push_back(json{{"name", r.name},
                            {"pass", r.pass},
                            {"measured", r.measured},
                            {"tolerance", r.tolerance},
                            {"detail", r.detail}});
    }
    json rep = have_config ? report_shell(rc) : json::object();
    rep["checks"] = rows;
    rep["failures"] = failures;
    rep["total"] = results.size();
    write_report(rep, rc.output_dir.empty() ? "out" : rc.output_dir, "verify.json");
    std::cout << (failures == 0 ? "verify: all " : "verify: FAILED ")
              << results.size() - failures << "/" << results.size() << " checks passed\n";
    return failures == 0 ? kExitOk : kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"choqlab: normalized ground states of the Choquard equation "
                 "with a local perturbation"};
    app.require_subcommand(1);

    CliOverrides ov;
    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", ov.config_path, "run configuration (JSON)");
        if (config_required) opt->required()->check(CLI::ExistingFile);
        sub->add_option("--out", ov.out_dir, "output directory override");
        sub->add_option("--seed", ov.seed, "seed override");
        sub->add_option("--threads", ov.threads,
                        "worker threads (fallback: CHOQUARD_LAB_THREADS)");
    };

    auto* c_const = app.add_subcommand("constants", "compute the sharp constants");
    add_common(c_const, true);
    auto* c_solve = app.add_subcommand("solve", "minimize E on the Pohozaev manifold");
    add_common(c_solve, true);
    auto* c_sweep = app.add_subcommand("sweep", "nonexistence-threshold sweep over mu");
    add_common(c_sweep, true);
    auto* c_gap = app.add_subcommand("gapcheck", "critical-level bubble bound check");
    add_common(c_gap, true);
    auto* c_verify = app.add_subcommand("verify", "run the module invariant suites");
    add_common(c_verify, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_const->parsed()) return cmd_constants(ov);
        if (c_solve->parsed()) return cmd_solve(ov);
        if (c_sweep->parsed()) return cmd_sweep(ov);
        if (c_gap->parsed()) return cmd_gapcheck(ov);
        if (c_verify->parsed()) return cmd_verify(ov);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
