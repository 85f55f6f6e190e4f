#include "choq/report_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "choq/symmetry.hpp"

namespace choq {

namespace {

json const_value_json(const std::optional<ConstantValue>& cv) {
    if (!cv) return nullptr;
    return json{{"value", cv->value},
                {"provenance", provenance_name(cv->provenance)},
                {"error", cv->error}};
}

} // namespace

json to_json(const ProblemParams& p) {
    return json{{"N", p.N},   {"alpha", p.alpha}, {"p", p.p},        {"q", p.q},
                {"mu", p.mu}, {"a", p.a},         {"kappa", p.kappa}};
}

json to_json(const CriticalExponents& ce) {
    json j{{"p_lower", ce.p_lower}, {"p_star", ce.p_star},   {"q_star", ce.q_star},
           {"eta_p", ce.eta_p},     {"gamma_q", ce.gamma_q}};
    j["p_bar"] = ce.p_bar.is_unbounded() ? json("unbounded") : json(ce.p_bar.value());
    j["two_star"] = ce.two_star.is_unbounded() ? json("unbounded") : json(ce.two_star.value());
    return j;
}

json to_json(const SharpConstants& sc) {
    return json{{"A_alpha", const_value_json(sc.A_alpha)},
                {"C_hls", const_value_json(sc.C_hls)},
                {"C_gn", const_value_json(sc.C_gn)},
                {"a_star", const_value_json(sc.a_star)},
                {"C_cgn", const_value_json(sc.C_cgn)},
                {"S", const_value_json(sc.S)},
                {"S_alpha", const_value_json(sc.S_alpha)}};
}

json to_json(const RegimeReport& rr) {
    json j{{"regime", regime_name(rr.regime)},
           {"satisfied", rr.satisfied},
           {"violated", rr.violated},
           {"kappa_standard", rr.kappa_standard}};
    if (rr.threshold_ratio) j["threshold_ratio"] = *rr.threshold_ratio;
    return j;
}

json to_json(const EnergyBreakdown& bd) {
    return json{{"kinetic", bd.kinetic},
                {"nonlocal", bd.nonlocal},
                {"local", bd.local},
                {"energy", bd.energy},
                {"pohozaev", bd.pohozaev}};
}

json to_json(const SymmetryReport& sr) {
    return json{{"center", sr.center},
                {"radial_deviation", sr.radial_deviation},
                {"rearrangement_gap", sr.rearrangement_gap},
                {"phase_deviation", sr.phase_deviation},
                {"theta", sr.theta}};
}

json to_json(const SolveReport& sr) {
    return json{{"c_po", sr.c_po},
                {"lambda", sr.lambda},
                {"iterations", sr.iterations},
                {"converged", sr.converged},
                {"termination", sr.termination},
                {"pde_residual", sr.residuals.pde},
                {"pohozaev_identity_residual", sr.residuals.pohozaev_identity},
                {"pohozaev_rel", sr.pohozaev_rel},
                {"mass_drift", sr.mass_drift},
                {"boundary_warning", sr.boundary_warning},
                {"small_gradient_k", sr.small_gradient_k},
                {"spectral_tail_fraction", sr.spectral_tail_fraction},
                {"breakdown", to_json(sr.breakdown)},
                {"symmetry", to_json(sr.symmetry)}};
}

json to_json(const ThresholdReport& tr) {
    json rows = json::array();
    for (const auto& r : tr.rows)
        rows.push_back(json{{"mu", r.mu},
                            {"ratio", r.ratio},
                            {"c_po", r.c_po},
                            {"attained", r.attained},
                            {"converged", r.converged},
                            {"mode", r.mode},
                            {"witness_points", r.witness_points}});
    return json{{"a_star", tr.a_star}, {"threshold_mu", tr.threshold_mu}, {"rows", rows}};
}

json to_json(const GapReport& gr) {
    json rows = json::array();
    for (const auto& r : gr.rows) {
        json row{{"epsilon", r.epsilon}, {"ok", r.ok}};
        if (r.ok) {
            row["max_psi"] = r.max_psi;
            row["s_star"] = r.s_star;
            row["margin"] = r.margin;
        }
        if (!r.note.empty()) row["note"] = r.note;
        rows.push_back(row);
    }
    return json{{"level", gr.level},
                {"S_alpha", gr.S_alpha},
                {"tolerance", gr.tolerance},
                {"pass", gr.pass},
                {"rows", rows}};
}

json to_json(const Grid& g) {
    return json{{"dim", g.dim}, {"half_length", g.half_length}, {"points_per_axis", g.points_per_axis}};
}

json to_json(const SolverConfig& c) {
    return json{{"step0", c.step0},
                {"backtrack", c.backtrack},
                {"grad_tol", c.grad_tol},
                {"pohozaev_tol", c.pohozaev_tol},
                {"max_iters", c.max_iters},
                {"seed", c.seed},
                {"s_bracket", c.s_bracket},
                {"precondition", c.precondition},
                {"s_max", c.s_max},
                {"small_gradient_probe", c.small_gradient_probe}};
}

ProblemParams params_from_json(const json& j) {
    ProblemParams p;
    p.N = j.at("N").get<int>();
    p.alpha = j.at("alpha").get<double>();
    p.p = j.at("p").get<double>();
    p.q = j.at("q").get<double>();
    p.mu = j.at("mu").get<double>();
    p.a = j.at("a").get<double>();
    p.kappa = j.value("kappa", 1.0);
    p.validate();
    return p;
}

Grid grid_from_json(const json& j) {
    Grid g(j.at("dim").get<int>(), j.at("half_length").get<double>(),
           j.at("points_per_axis").get<int>());
    return g;
}

SolverConfig solver_from_json(const json& j) {
    SolverConfig c;
    c.step0 = j.value("step0", c.step0);
    c.backtrack = j.value("backtrack", c.backtrack);
    c.grad_tol = j.value("grad_tol", c.grad_tol);
    c.pohozaev_tol = j.value("pohozaev_tol", c.pohozaev_tol);
    c.max_iters = j.value("max_iters", c.max_iters);
    c.seed = j.value("seed", c.seed);
    c.s_bracket = j.value("s_bracket", c.s_bracket);
    c.precondition = j.value("precondition", c.precondition);
    c.s_max = j.value("s_max", c.s_max);
    c.small_gradient_probe = j.value("small_gradient_probe", c.small_gradient_probe);
    c.validate();
    return c;
}

// ---------------------------------------------------------------------------

namespace {

template <typename T>
void write_le(std::ofstream& os, T v) {
    // the build targets are little-endian; byte order is pinned by contract
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_le(std::ifstream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

} // namespace

void write_field(const Field& u, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_field: cannot open " + path);
    write_le<std::uint64_t>(os, std::uint64_t(u.grid().dim));
    write_le<std::uint64_t>(os, std::uint64_t(u.grid().points_per_axis));
    write_le<double>(os, u.grid().half_length);
    for (const auto& v : u.values()) {
        write_le<double>(os, v.real());
        write_le<double>(os, v.imag());
    }
    if (!os) throw std::runtime_error("write_field: write failed for " + path);
}

Field read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_field: cannot open " + path);
    const auto dim = read_le<std::uint64_t>(is);
    const auto M = read_le<std::uint64_t>(is);
    const auto L = read_le<double>(is);
    Grid g(int(dim), L, int(M));
    Field u(g);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double re = read_le<double>(is);
        const double im = read_le<double>(is);
        u[i] = cdouble(re, im);
    }
    if (!is) throw std::runtime_error("read_field: truncated file " + path);
    return u;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_radial_csv(const Field& u, const std::string& path) {
    auto prof = radial_profile(u);
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_radial_csv: cannot open " + path);
    os << "radius,abs_u\n";
    for (const auto& [r, v] : prof) os << fmt17(r) << "," << fmt17(v) << "\n";
}

void write_history_csv(const std::vector<HistoryRow>& history, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_history_csv: cannot open " + path);
    os << "iteration,energy,abs_p,grad_norm\n";
    for (const auto& h : history)
        os << h.iteration << "," << fmt17(h.energy) << "," << fmt17(h.abs_p) << ","
           << fmt17(h.grad_norm) << "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << content;
}

} // namespace choq
