/// @file experiment.cpp

#include "slipflow/experiment.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "slipflow/constants.hpp"
#include "slipflow/ops.hpp"
#include "slipflow/random_fields.hpp"

namespace slipflow {

namespace fs = std::filesystem;
using nlohmann::json;

// ============================================================================
// Strict config parsing
// ============================================================================

namespace {

[[noreturn]] void bad(const std::string& msg) {
    throw std::invalid_argument("config: " + msg);
}

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
    if (!j.is_object()) bad(where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            bad("unknown key '" + it.key() + "' in " + where);
}

double num(const json& j, const std::string& key, double fallback,
           bool* present = nullptr) {
    if (!j.contains(key)) {
        if (present) *present = false;
        return fallback;
    }
    if (present) *present = true;
    if (!j[key].is_number()) bad("'" + key + "' must be a number");
    return j[key].get<double>();
}

int integer(const json& j, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) bad("'" + key + "' must be an integer");
    return j[key].get<int>();
}

bool boolean(const json& j, const std::string& key, bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_boolean()) bad("'" + key + "' must be a boolean");
    return j[key].get<bool>();
}

std::string text(const json& j, const std::string& key,
                 const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) bad("'" + key + "' must be a string");
    return j[key].get<std::string>();
}

ForcingProfile parse_profile(const json& j) {
    ForcingProfile p;
    if (j.is_null()) return p;
    check_keys(j, {"type", "freq", "phase"}, "profile");
    const std::string type = text(j, "type", "constant");
    if (type == "constant") {
        p.type = ForcingProfile::Type::Constant;
    } else if (type == "sinusoidal") {
        p.type = ForcingProfile::Type::Sinusoidal;
        p.freq = num(j, "freq", 1.0);
        p.phase = num(j, "phase", 0.0);
    } else {
        bad("profile type must be 'constant' or 'sinusoidal'");
    }
    return p;
}

ForcingSpec parse_forcing(const json& j, int dims, const std::string& where) {
    ForcingSpec spec;
    if (j.is_null()) return spec;
    check_keys(j, {"normalize", "entries"}, where);
    spec.normalize = boolean(j, "normalize", true);
    if (!j.contains("entries")) return spec;
    if (!j["entries"].is_array()) bad(where + ".entries must be an array");
    for (const json& e : j["entries"]) {
        check_keys(e, {"component", "m", "amplitude", "profile"},
                   where + ".entries[]");
        ForcingEntry fe;
        fe.component = integer(e, "component", 0);
        if (!e.contains("m") || !e["m"].is_array() ||
            e["m"].size() != std::size_t(dims))
            bad(where + ".entries[].m must be an array of " +
                std::to_string(dims) + " mode indices");
        for (int ax = 0; ax < dims; ++ax) {
            if (!e["m"][ax].is_number_integer())
                bad(where + " mode indices must be integers");
            fe.mode[ax] = e["m"][ax].get<int>();
        }
        fe.amplitude = num(e, "amplitude", 0.0);
        fe.profile = parse_profile(e.contains("profile") ? e["profile"]
                                                         : json(nullptr));
        spec.entries.push_back(fe);
    }
    return spec;
}

InitialData2D parse_initial2d(const json& j) {
    InitialData2D d;
    if (j.is_null()) return d;
    check_keys(j, {"kind", "amplitude", "seed", "energy", "max_mode",
                   "modes"},
               "initial2d");
    const std::string kind = text(j, "kind", "zero");
    if (kind == "zero") {
        d.kind = InitialData2D::Kind::Zero;
    } else if (kind == "taylor-green") {
        d.kind = InitialData2D::Kind::TaylorGreen;
        d.amplitude = num(j, "amplitude", 1.0);
    } else if (kind == "random") {
        d.kind = InitialData2D::Kind::Random;
        d.seed = std::uint64_t(integer(j, "seed", 0));
        d.energy = num(j, "energy", 1.0);
        d.max_mode = integer(j, "max_mode", -1);
    } else if (kind == "modes") {
        d.kind = InitialData2D::Kind::Modes;
        if (!j.contains("modes") || !j["modes"].is_array())
            bad("initial2d.modes must be an array");
        for (const json& m : j["modes"]) {
            check_keys(m, {"m", "psi"}, "initial2d.modes[]");
            if (!m.contains("m") || !m["m"].is_array() || m["m"].size() != 2)
                bad("initial2d mode needs m = [m1, m2]");
            d.modes.push_back({m["m"][0].get<int>(), m["m"][1].get<int>(),
                               num(m, "psi", 0.0)});
        }
    } else {
        bad("initial2d.kind must be zero|taylor-green|random|modes");
    }
    return d;
}

InitialData3D parse_initial3d(const json& j) {
    InitialData3D d;
    if (j.is_null()) return d;
    check_keys(j, {"kind", "modes", "seed", "max_mode", "scale_norm",
                   "scale_target"},
               "initial3d");
    const std::string kind = text(j, "kind", "zero");
    if (kind == "zero") {
        d.kind = InitialData3D::Kind::Zero;
    } else if (kind == "modes") {
        d.kind = InitialData3D::Kind::Modes;
        if (!j.contains("modes") || !j["modes"].is_array())
            bad("initial3d.modes must be an array");
        for (const json& m : j["modes"]) {
            check_keys(m, {"component", "m", "amp"}, "initial3d.modes[]");
            if (!m.contains("m") || !m["m"].is_array() || m["m"].size() != 3)
                bad("initial3d mode needs m = [m1, m2, m3]");
            d.modes.push_back({integer(m, "component", 0),
                               m["m"][0].get<int>(), m["m"][1].get<int>(),
                               m["m"][2].get<int>(), num(m, "amp", 0.0)});
        }
    } else if (kind == "random") {
        d.kind = InitialData3D::Kind::Random;
        d.seed = std::uint64_t(integer(j, "seed", 0));
        d.max_mode = integer(j, "max_mode", -1);
    } else if (kind == "embed2d") {
        d.kind = InitialData3D::Kind::Embed2D;
    } else {
        bad("initial3d.kind must be zero|modes|random|embed2d");
    }
    const std::string sn = text(j, "scale_norm", "none");
    if (sn == "none")
        d.scale_norm = InitialData3D::ScaleNorm::None;
    else if (sn == "l2sq")
        d.scale_norm = InitialData3D::ScaleNorm::L2sq;
    else if (sn == "h1sq")
        d.scale_norm = InitialData3D::ScaleNorm::H1sq;
    else
        bad("initial3d.scale_norm must be none|l2sq|h1sq");
    d.scale_target = num(j, "scale_target", 0.0);
    return d;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& textual) {
    json j;
    try {
        j = json::parse(textual);
    } catch (const std::exception& e) {
        bad(std::string("not valid JSON: ") + e.what());
    }
    check_keys(j,
               {"schema_version", "experiment", "domain", "initial2d",
                "initial3d", "forcing2d", "forcing3d", "run", "ledger"},
               "top level");
    if (integer(j, "schema_version", -1) != 1)
        bad("schema_version must be 1");

    ExperimentConfig cfg;
    cfg.experiment = text(j, "experiment", "");
    static const std::set<std::string> kinds{"constants", "decay2d",
                                             "stability3d", "oracle"};
    if (!kinds.count(cfg.experiment))
        bad("experiment must be constants|decay2d|stability3d|oracle");

    if (!j.contains("domain")) bad("missing 'domain'");
    const json& dj = j["domain"];
    check_keys(dj, {"L1", "L2", "a", "N1", "N2", "N3", "nu", "T"}, "domain");
    cfg.domain.L1 = num(dj, "L1", 0.0);
    cfg.domain.L2 = num(dj, "L2", 0.0);
    cfg.domain.a = num(dj, "a", 0.0);
    cfg.domain.N1 = integer(dj, "N1", 0);
    cfg.domain.N2 = integer(dj, "N2", 0);
    cfg.domain.N3 = integer(dj, "N3", 0);
    cfg.domain.nu = num(dj, "nu", 0.0);
    cfg.domain.T = num(dj, "T", 0.0);
    try {
        cfg.domain.validate();
    } catch (const std::invalid_argument& e) {
        bad(std::string("domain: ") + e.what());
    }

    cfg.initial2d = parse_initial2d(j.contains("initial2d") ? j["initial2d"]
                                                            : json(nullptr));
    cfg.initial3d = parse_initial3d(j.contains("initial3d") ? j["initial3d"]
                                                            : json(nullptr));
    cfg.forcing2d = parse_forcing(
        j.contains("forcing2d") ? j["forcing2d"] : json(nullptr), 2,
        "forcing2d");
    cfg.forcing3d = parse_forcing(
        j.contains("forcing3d") ? j["forcing3d"] : json(nullptr), 3,
        "forcing3d");

    if (j.contains("run")) {
        const json& rj = j["run"];
        check_keys(rj, {"dt", "k_max", "stride"}, "run");
        cfg.dt = num(rj, "dt", cfg.dt);
        cfg.k_max = integer(rj, "k_max", cfg.k_max);
        cfg.stride = integer(rj, "stride", cfg.stride);
    }
    if (cfg.dt <= 0.0) bad("run.dt must be positive");
    if (cfg.k_max < 1) bad("run.k_max must be >= 1");
    if (cfg.stride < 1) bad("run.stride must be >= 1");

    if (j.contains("ledger")) {
        const json& lj = j["ledger"];
        check_keys(lj,
                   {"c_generic", "c_0", "c_star", "c_2", "sigma",
                    "sigma_plus", "gamma", "embedding_samples",
                    "sweep_samples", "seed", "check_l2_route"},
                   "ledger");
        cfg.c_generic = num(lj, "c_generic", cfg.c_generic);
        cfg.c_0 = num(lj, "c_0", cfg.c_0);
        cfg.c_star = num(lj, "c_star", cfg.c_star);
        cfg.c_2 = num(lj, "c_2", cfg.c_2);
        cfg.sigma = num(lj, "sigma", cfg.sigma);
        cfg.sigma_plus = num(lj, "sigma_plus", cfg.sigma_plus);
        cfg.gamma = num(lj, "gamma", cfg.gamma);
        cfg.embedding_samples =
            integer(lj, "embedding_samples", cfg.embedding_samples);
        cfg.sweep_samples = integer(lj, "sweep_samples", cfg.sweep_samples);
        cfg.seed = std::uint64_t(integer(lj, "seed", int(cfg.seed)));
        cfg.check_l2_route =
            boolean(lj, "check_l2_route", cfg.check_l2_route);
    }
    if (cfg.c_generic <= 0.0) bad("ledger.c_generic must be positive");
    if (cfg.c_0 <= 0.0) bad("ledger.c_0 must be positive");
    const double cs = cfg.c_star <= 0.0 ? cfg.domain.nu : cfg.c_star;
    if (!(cs > 0.0 && cs <= cfg.domain.nu))
        bad("ledger.c_star must lie in (0, nu]");
    if (!(cfg.sigma > 3.0)) bad("ledger.sigma must exceed 3");
    if (!(cfg.sigma_plus > 2.0)) bad("ledger.sigma_plus must exceed 2");
    if (cfg.embedding_samples < 1) bad("ledger.embedding_samples must be >= 1");
    if (cfg.sweep_samples < 1) bad("ledger.sweep_samples must be >= 1");
    return cfg;
}

// ============================================================================
// Shared experiment plumbing
// ============================================================================

namespace {

void write_file(const fs::path& dir, const std::string& name,
                const std::string& content) {
    std::ofstream os(dir / name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (dir / name).string());
    os << content;
}

void check_thread_env() {
    if (const char* v = std::getenv("SLIPFLOW_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(v, &end, 10);
        if (end == v || *end != '\0' || n < 1)
            bad("SLIPFLOW_THREADS must be a positive integer");
        // execution is serial; the variable is validated and recorded only
    }
}

ConstantsLedger make_base_ledger(const Domain& d, const ExperimentConfig& c) {
    ConstantsLedger L;
    fill_domain_constants(d, L);
    L.c_generic = c.c_generic;
    L.c_0 = c.c_0;
    L.c_star = c.c_star <= 0.0 ? d.spec().nu : c.c_star;
    L.c_2 = c.c_2;
    L.sigma = c.sigma;
    L.sigma_plus = c.sigma_plus;
    L.c_I = estimate_embedding(EmbeddingKind::CI, d, c.embedding_samples,
                               c.seed, c.sigma_plus)
                .value;
    L.c_L6 = estimate_embedding(EmbeddingKind::CL6, d, c.embedding_samples,
                                c.seed + 1, c.sigma_plus)
                 .value;
    L.c_Linf = estimate_embedding(EmbeddingKind::CLinf, d,
                                  c.embedding_samples, c.seed + 2,
                                  c.sigma_plus)
                   .value;
    L.gamma_star = compute_gamma_star(L);
    L.gamma = c.gamma > 0.0 ? c.gamma : L.gamma_star;
    return L;
}

std::vector<MonitorReport> constant_sweep_rows(const Domain& d,
                                               const ExperimentConfig& c,
                                               const ConstantsLedger& L) {
    std::vector<MonitorReport> rows;
    const int n = c.sweep_samples;
    // random Rayleigh quotients can only shrink the gap from one side
    rows.push_back(make_report("CONST(c_p)", "sweep", L.c_p,
                               sweep_poincare_min(d, n, c.seed + 11),
                               1e-12 * L.c_p));
    rows.push_back(make_report("CONST(c_1)", "sweep", L.c_1,
                               sweep_coercivity_min(d, n, c.seed + 12),
                               1e-12 * L.c_1));
    rows.push_back(make_report("CONST(c_e)", "sweep",
                               sweep_divcurl_max(d, n, c.seed + 13), L.c_e,
                               1e-12 * L.c_e));
    return rows;
}

double sup_G2_profile(const CompiledForcing3& g, double nu, double c_generic,
                      double t_end) {
    double sup = 0.0;
    const int n = 2048;
    for (int i = 0; i <= n; ++i) {
        const double t = t_end * i / n;
        sup = std::max(sup, c_generic / nu * g.l2sq_normalized(t));
    }
    return sup;
}

bool all_pass(const std::vector<MonitorReport>& rows) {
    for (const auto& r : rows)
        if (!r.pass) return false;
    return true;
}

int count_fail(const std::vector<MonitorReport>& rows) {
    int n = 0;
    for (const auto& r : rows)
        if (!r.pass) ++n;
    return n;
}

char verdict_buf[128];

std::string pass_fail_verdict(const std::vector<MonitorReport>& h,
                              const std::vector<MonitorReport>& m) {
    const int bad_rows = count_fail(h) + count_fail(m);
    if (bad_rows == 0) return "PASS\n";
    std::snprintf(verdict_buf, sizeof verdict_buf, "FAIL: %d check(s)\n",
                  bad_rows);
    return verdict_buf;
}

// ----------------------------------------------------------------------------

int run_constants(const ExperimentConfig& cfg, const fs::path& out) {
    Domain d(cfg.domain);
    ConstantsLedger L = make_base_ledger(d, cfg);

    State2D w0 = init_2d(d, cfg.initial2d);
    RunOptions2D opt{cfg.k_max, cfg.dt, cfg.stride, cfg.sigma};
    Run2DResult run = run_2d(d, w0, cfg.forcing2d, opt);
    compute_A(run.log, L);

    double u0_h1sq = 0.0;
    if (cfg.initial3d.kind != InitialData3D::Kind::Zero) {
        State2D we = w0;
        State3D u0 = init_3d(d, cfg.initial3d, &we);
        u0_h1sq = h1sq(u0.u);
    }
    CompiledForcing3 g(cfg.forcing3d, d);
    const double supG2 = sup_G2_profile(g, L.nu, L.c_generic,
                                        cfg.k_max * d.spec().T);

    auto hyp = hypothesis_checks(L, u0_h1sq, supG2, cfg.check_l2_route);
    auto rows = constant_sweep_rows(d, cfg, L);

    write_file(out, "ledger.json", ledger_to_json(L));
    write_file(out, "monitors.json", reports_to_json(hyp, rows, 0.0, false));
    write_file(out, "verdict.txt", pass_fail_verdict(hyp, rows));
    return all_pass(hyp) && all_pass(rows) ? 0 : 1;
}

int run_decay2d(const ExperimentConfig& cfg, const fs::path& out) {
    Domain d(cfg.domain);
    ConstantsLedger L = make_base_ledger(d, cfg);

    State2D w0 = init_2d(d, cfg.initial2d);
    RunOptions2D opt{cfg.k_max, cfg.dt, cfg.stride, cfg.sigma};
    Run2DResult run = run_2d(d, w0, cfg.forcing2d, opt);
    compute_A(run.log, L);

    CompiledForcing3 g(cfg.forcing3d, d);
    auto hyp = hypothesis_checks(
        L, 0.0, sup_G2_profile(g, L.nu, L.c_generic, cfg.k_max * d.spec().T),
        cfg.check_l2_route);
    auto rows = monitor_recursions(run.log, L);

    std::ostringstream csv;
    run.log.write_csv(csv);
    write_file(out, "trajectory.csv", csv.str());
    write_file(out, "ledger.json", ledger_to_json(L));
    write_file(out, "monitors.json", reports_to_json(hyp, rows, 0.0, false));
    write_file(out, "verdict.txt", pass_fail_verdict(hyp, rows));
    return all_pass(hyp) && all_pass(rows) ? 0 : 1;
}

int run_stability3d(const ExperimentConfig& cfg, const fs::path& out) {
    Domain d(cfg.domain);
    ConstantsLedger L = make_base_ledger(d, cfg);

    State2D w0 = init_2d(d, cfg.initial2d);
    State3D u0 = init_3d(d, cfg.initial3d, &w0);
    const double u0_h1sq = h1sq(u0.u);

    RunOptions3D opt;
    opt.k_max = cfg.k_max;
    opt.dt = cfg.dt;
    opt.stride = cfg.stride;
    opt.sigma = cfg.sigma;
    opt.sigma_plus = cfg.sigma_plus;
    opt.c_generic = cfg.c_generic;
    StabilityRunResult run =
        run_stability(d, w0, u0, cfg.forcing2d, cfg.forcing3d, opt);

    compute_A(run.base_log, L);
    compute_B(run.log, L);

    double supG2 = 0.0;
    for (const Sample3D& s : run.log.samples)
        supG2 = std::max(supG2, s.G2);
    auto hyp = hypothesis_checks(L, u0_h1sq, supG2, cfg.check_l2_route);
    auto rows = monitor_recursions(run.base_log, L);
    StabilityMonitors stab =
        monitor_stability(run.log, L, L.gamma, cfg.check_l2_route);
    rows.insert(rows.end(), stab.reports.begin(), stab.reports.end());

    // verdict: the budget holds along the run or the first crossing time
    double violation_t = -1.0;
    for (const Sample3D& s : run.log.samples)
        if (s.X2 > L.gamma * (1.0 + 1e-8)) {
            violation_t = s.t;
            break;
        }
    char line[160];
    if (violation_t < 0.0)
        std::snprintf(line, sizeof line, "STABLE(gamma=%.17g)\n", L.gamma);
    else
        std::snprintf(line, sizeof line, "VIOLATION(t=%.17g)\n", violation_t);

    std::ostringstream csv2, csv3;
    run.base_log.write_csv(csv2);
    run.log.write_csv(csv3);
    write_file(out, "trajectory.csv", csv2.str());
    write_file(out, "stability.csv", csv3.str());
    write_file(out, "ledger.json", ledger_to_json(L));
    write_file(out, "monitors.json",
               reports_to_json(hyp, rows, stab.empirical_c0, true));
    write_file(out, "verdict.txt",
               std::string(line) + pass_fail_verdict(hyp, rows));
    return all_pass(hyp) && all_pass(rows) ? 0 : 1;
}

int run_oracle(const ExperimentConfig& cfg, const fs::path& out) {
    Domain d(cfg.domain);
    ConstantsLedger L = make_base_ledger(d, cfg);

    std::vector<MonitorReport> rows;
    rows.push_back(make_report("ORACLE(taylor-green-2d)", "global",
                               oracle_taylor_green_error(d, cfg.dt, 1.0),
                               1e-8, 0.0));
    rows.push_back(make_report("ORACLE(eigenmode-3d)", "global",
                               oracle_eigenmode_error(d, cfg.dt, 0.5, 1e-5),
                               1e-8, 0.0));
    rows.push_back(make_report("ORACLE(divcurl-roundtrip)", "global",
                               oracle_divcurl_roundtrip(d, cfg.seed), 1e-13,
                               0.0));
    auto sweeps = constant_sweep_rows(d, cfg, L);
    rows.insert(rows.end(), sweeps.begin(), sweeps.end());
    const SpectralConvergence sc =
        oracle_spectral_convergence(2e-3, 12, 32);
    rows.push_back(
        make_report("ORACLE(steady-error-fine)", "global", sc.err_fine, 1e-8,
                    0.0));
    rows.push_back(make_report("ORACLE(convergence-ratio)", "global", 1e3,
                               sc.err_coarse / std::max(sc.err_fine, 1e-300),
                               0.0));

    write_file(out, "ledger.json", ledger_to_json(L));
    write_file(out, "monitors.json", reports_to_json({}, rows, 0.0, false));
    write_file(out, "verdict.txt", pass_fail_verdict({}, rows));
    return all_pass(rows) ? 0 : 1;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, const std::string& outdir) {
    check_thread_env();
    fs::path out(outdir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw std::runtime_error("cannot create output dir " + outdir);

    if (cfg.experiment == "constants") return run_constants(cfg, out);
    if (cfg.experiment == "decay2d") return run_decay2d(cfg, out);
    if (cfg.experiment == "stability3d") return run_stability3d(cfg, out);
    if (cfg.experiment == "oracle") return run_oracle(cfg, out);
    throw std::invalid_argument("config: unknown experiment " +
                                cfg.experiment);
}

// ============================================================================
// Manufactured-solution oracles
// ============================================================================

double oracle_taylor_green_error(const Domain& d, double dt, double t_end) {
    InitialData2D tg;
    tg.kind = InitialData2D::Kind::TaylorGreen;
    State2D s = init_2d(d, tg);
    Velocity2D w0;
    w0.psi = s.psi;
    const double e0 = std::sqrt(l2sq(velocity_components(w0)));

    detail::Stepper2D st(d, ForcingSpec{});
    const int n = std::max(1, int(std::round(t_end / dt)));
    const double dte = t_end / n;
    for (int i = 1; i <= n; ++i) {
        s = st.step(s, dte);
        s.t = i * dte;
    }
    Velocity2D wt;
    wt.psi = s.psi;
    const double e = std::sqrt(l2sq(velocity_components(wt)));
    const double k1 = d.wavenumber(0, 1), k2 = d.wavenumber(1, 1);
    const double expect =
        e0 * std::exp(-d.spec().nu * (k1 * k1 + k2 * k2) * t_end);
    return std::abs(e - expect) / expect;
}

double oracle_eigenmode_error(const Domain& d, double dt, double t_end,
                              double amplitude) {
    InitialData3D id;
    id.kind = InitialData3D::Kind::Modes;
    id.modes = {{0, 1, 1, 1, amplitude},
                {1, 1, 1, 1, amplitude},
                {2, 1, 1, 1, -2.0 * amplitude}};
    State3D u = init_3d(d, id);
    const double e0 = std::sqrt(l2sq(u.u));

    InitialData2D zero;
    State2D w = init_2d(d, zero);
    CoupledStepper cs(d, ForcingSpec{}, ForcingSpec{});
    const int n = std::max(1, int(std::round(t_end / dt)));
    const double dte = t_end / n;
    for (int i = 1; i <= n; ++i) {
        cs.step(w, u, dte);
        w.t = u.t = i * dte;
    }
    const double e = std::sqrt(l2sq(u.u));
    const double k1 = d.wavenumber(0, 1), k2 = d.wavenumber(1, 1),
                 k3 = d.wavenumber(2, 1);
    const double expect =
        e0 * std::exp(-d.spec().nu * (k1 * k1 + k2 * k2 + k3 * k3) * t_end);
    return std::abs(e - expect) / expect;
}

double oracle_divcurl_roundtrip(const Domain& d, std::uint64_t seed) {
    Vorticity2D b(d);
    b.f = random_scalar2(d, Domain::stream_parity, seed, 8);
    const Velocity2D w = solve_divcurl_2d(b);
    const Vorticity2D back = rot2(w);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < b.f.c.size(); ++i) {
        const double diff = back.f.c[i] - b.f.c[i];
        num += diff * diff;
        den += b.f.c[i] * b.f.c[i];
    }
    return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

SpectralConvergence oracle_spectral_convergence(double dt, int n_coarse,
                                                int n_fine) {
    const double pi = M_PI;
    DomainSpec rs{pi, pi, pi / 2.0, 64, 64, 8, 1.0, 1.0};
    Domain ref(rs);

    // smooth target streamfunction with super-exponential sine spectrum
    std::vector<double> vals(ref.size2_os());
    for (int j1 = 0; j1 < 2 * rs.N1; ++j1) {
        const double x = ref.node_os(0, j1);
        for (int j2 = 0; j2 < 2 * rs.N2; ++j2) {
            const double y = ref.node_os(1, j2);
            vals[std::size_t(j1) * (2 * rs.N2) + j2] =
                std::sin(x) * std::sin(y) *
                std::exp(2.0 * (std::cos(x) + std::cos(y)));
        }
    }
    ScalarField2 psi_ref(ref, Domain::stream_parity);
    ref.forward2_os(vals, Domain::stream_parity, psi_ref.c);
    Velocity2D wref;
    wref.psi = psi_ref;
    const double scale = 1.0 / linf_norm(velocity_components(wref));
    for (double& c : psi_ref.c) c *= scale;
    wref.psi = psi_ref;

    // steady forcing: rot2 hbar balances advection minus diffusion
    const ScalarField2 omega_ref = laplacian(psi_ref);
    const ScalarField2 adv =
        advect(velocity_components(wref), omega_ref);
    const ScalarField2 lap_omega = laplacian(omega_ref);
    ScalarField2 chi(ref, Domain::stream_parity);
    double max_amp = 0.0;
    for (int m1 = 0; m1 < rs.N1; ++m1) {
        const double k1 = ref.wavenumber(0, m1);
        for (int m2 = 0; m2 < rs.N2; ++m2) {
            const double k2 = ref.wavenumber(1, m2);
            const double lam = k1 * k1 + k2 * k2;
            if (lam == 0.0) continue;
            const double F =
                adv.at(m1, m2) - rs.nu * lap_omega.at(m1, m2);
            chi.at(m1, m2) = -F / lam;
            max_amp = std::max(max_amp, std::abs(chi.at(m1, m2)));
        }
    }

    auto run_at = [&](int N) {
        DomainSpec ds{pi, pi, pi / 2.0, N, N, 8, 1.0, 1.0};
        Domain dn(ds);
        ForcingSpec h;
        InitialData2D init;
        init.kind = InitialData2D::Kind::Modes;
        for (int m1 = 1; m1 < N; ++m1)
            for (int m2 = 1; m2 < N; ++m2) {
                const double k1 = ref.wavenumber(0, m1),
                             k2 = ref.wavenumber(1, m2);
                const double c = chi.at(m1, m2);
                if (std::abs(c) > 1e-18 * max_amp) {
                    ForcingEntry e1;
                    e1.component = 0;
                    e1.mode = {m1, m2, 0};
                    e1.amplitude = -k2 * c;
                    h.entries.push_back(e1);
                    ForcingEntry e2;
                    e2.component = 1;
                    e2.mode = {m1, m2, 0};
                    e2.amplitude = k1 * c;
                    h.entries.push_back(e2);
                }
                if (psi_ref.at(m1, m2) != 0.0)
                    init.modes.push_back({m1, m2, psi_ref.at(m1, m2)});
            }
        State2D s0 = init_2d(dn, init);
        RunOptions2D opt{6, dt, 1000000, 4.0};
        Run2DResult run = run_2d(dn, s0, h, opt);

        // L2 velocity error against the reference profile
        double err2 = 0.0;
        const double wgt = (pi / 2.0) * (pi / 2.0);
        for (int m1 = 1; m1 < rs.N1; ++m1) {
            const double k1 = ref.wavenumber(0, m1);
            for (int m2 = 1; m2 < rs.N2; ++m2) {
                const double k2 = ref.wavenumber(1, m2);
                const double lam = k1 * k1 + k2 * k2;
                const double have = (m1 < N && m2 < N)
                                        ? run.final.psi.at(m1, m2)
                                        : 0.0;
                const double diff = have - psi_ref.at(m1, m2);
                err2 += lam * diff * diff * wgt;
            }
        }
        return std::sqrt(err2);
    };

    SpectralConvergence out;
    out.n_coarse = n_coarse;
    out.n_fine = n_fine;
    out.err_coarse = run_at(n_coarse);
    out.err_fine = run_at(n_fine);
    return out;
}

}  // namespace slipflow
