#include "choq/run_config.hpp"

#include "choq/special.hpp"

namespace choq {

RunConfig load_run_config(const std::string& path) {
    const std::string text = read_text_file(path);
    json j = json::parse(text);
    RunConfig rc;
    rc.source_path = path;
    rc.content_hash = fnv1a64(text);

    if (j.contains("params")) rc.params = params_from_json(j["params"]);
    if (j.contains("grid")) rc.grid = grid_from_json(j["grid"]);
    if (j.contains("solver")) rc.solver = solver_from_json(j["solver"]);
    rc.init = j.value("init", rc.init);
    rc.output_dir = j.value("output_dir", rc.output_dir);
    rc.seed = j.value("seed", rc.seed);
    rc.threads = j.value("threads", rc.threads);

    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        if (s.contains("mu_values")) rc.mu_values = s["mu_values"].get<std::vector<double>>();
        if (s.contains("mu_threshold_factors"))
            rc.mu_threshold_factors = s["mu_threshold_factors"].get<std::vector<double>>();
    }
    if (j.contains("gapcheck")) {
        const json& gc = j["gapcheck"];
        if (gc.contains("eps_list")) rc.eps_list = gc["eps_list"].get<std::vector<double>>();
        rc.gap_tolerance = gc.value("tolerance", rc.gap_tolerance);
    }
    if (j.contains("constants")) {
        const json& cs = j["constants"];
        rc.include_cgn = cs.value("include_cgn", false);
        if (cs.contains("cgn_grid")) rc.cgn_grid = grid_from_json(cs["cgn_grid"]);
    }
    if (j.contains("verify")) {
        const json& v = j["verify"];
        rc.verify_M_1d = v.value("M_1d", rc.verify_M_1d);
        rc.verify_M_3d = v.value("M_3d", rc.verify_M_3d);
    }
    rc.solver.seed = rc.seed;
    rc.raw = std::move(j);
    return rc;
}

json resolved_config_json(const RunConfig& rc) {
    json j = rc.raw;
    j["params"] = to_json(rc.params);
    j["grid"] = to_json(rc.grid);
    j["solver"] = to_json(rc.solver);
    j["init"] = rc.init;
    j["output_dir"] = rc.output_dir;
    j["seed"] = rc.seed;
    j["threads"] = rc.threads;
    return j;
}

} // namespace choq
