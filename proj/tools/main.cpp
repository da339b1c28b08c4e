// sgreen: Green's functions of 1D Schroedinger operators with matrix
// potentials. Subcommands: bands, green, dos, mc, verify, blockdemo.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sgreen/blockdecomp.hpp"
#include "sgreen/disorder_mc.hpp"
#include "sgreen/green.hpp"
#include "sgreen/model.hpp"
#include "sgreen/oracle.hpp"
#include "sgreen/verify.hpp"

using nlohmann::json;
using namespace sgreen;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 17 significant digits: shortest representation that round-trips a double.
std::string fmt_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json default_config() {
    return json{
        {"operator", {{"m", 1}, {"D", nullptr}, {"strip", nullptr}}},
        {"disorder", {{"kind", "rademacher"}, {"c", 0.0}, {"alpha", 0.0}, {"seed", 1}}},
        {"engine", {{"tol", 1e-10}, {"max_depth", 1000000}}},
        {"experiment",
         {{"J", json::array({-1.0, 1.0})},
          {"x_grid", {{"min", -1.0}, {"max", 1.0}, {"count", 5}}},
          {"eps_grid", json::array({1.0, 0.1})},
          {"trials", 100},
          {"window", json::array({-1000, 1000})},
          {"sites", json::array({0})}}},
        {"output", {{"format", "csv"}, {"path", ""}}},
    };
}

// Recursive merge of `user` into `base`, rejecting keys absent from the
// default schema so typos surface as config errors with their full path.
void merge_config(json& base, const json& user, const std::string& path) {
    if (!user.is_object()) throw ConfigError("config: expected object at '" + path + "'");
    for (auto it = user.begin(); it != user.end(); ++it) {
        const std::string sub = path.empty() ? it.key() : path + "." + it.key();
        if (!base.contains(it.key())) throw ConfigError("config: unknown key '" + sub + "'");
        json& slot = base[it.key()];
        // x_grid may switch between list and {min,max,count}; D/strip between
        // null and their structured forms. Only same-shaped objects merge.
        if (slot.is_object() && it.value().is_object())
            merge_config(slot, it.value(), sub);
        else
            slot = it.value();
    }
}

json parse_scalar(const std::string& text) {
    json v = json::parse(text, nullptr, false);
    if (v.is_discarded()) return json(text);  // bare strings need no quotes
    return v;
}

void apply_set(json& cfg, const std::string& kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    std::string key = kv.substr(0, eq);
    json::json_pointer ptr;
    std::stringstream ss(key);
    std::string part;
    json* slot = &cfg;
    std::string path;
    while (std::getline(ss, part, '.')) {
        path = path.empty() ? part : path + "." + part;
        if (!slot->is_object() || !slot->contains(part))
            throw ConfigError("--set: unknown key '" + path + "'");
        slot = &(*slot)[part];
    }
    *slot = parse_scalar(kv.substr(eq + 1));
}

json load_config(const std::string& file, const std::vector<std::string>& sets) {
    json cfg = default_config();
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw ConfigError("config: cannot open '" + file + "'");
        json user;
        try {
            user = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError("config: " + std::string(e.what()));
        }
        merge_config(cfg, user, "");
    }
    for (const auto& kv : sets) apply_set(cfg, kv);
    return cfg;
}

template <class T>
T get_as(const json& j, const std::string& path) {
    try {
        return j.get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("config: bad value at '" + path + "': " + e.what());
    }
}

OperatorSpec build_operator(const json& op) {
    const json& strip = op.at("strip");
    const json& D = op.at("D");
    if (!strip.is_null()) {
        if (!strip.is_object() || !strip.contains("L") || !strip.contains("d"))
            throw ConfigError("config: operator.strip expects {L, d}");
        for (auto it = strip.begin(); it != strip.end(); ++it)
            if (it.key() != "L" && it.key() != "d")
                throw ConfigError("config: unknown key 'operator.strip." + it.key() + "'");
        return strip_dirichlet(get_as<int>(strip.at("L"), "operator.strip.L"),
                               get_as<int>(strip.at("d"), "operator.strip.d"));
    }
    int m = get_as<int>(op.at("m"), "operator.m");
    if (m < 1) throw ConfigError("config: operator.m must be >= 1");
    if (D.is_null()) return OperatorSpec(RealSym::Zero(m));
    auto rows = get_as<std::vector<std::vector<double>>>(D, "operator.D");
    if (static_cast<int>(rows.size()) != m) throw ConfigError("config: operator.D must be m x m");
    Mat M(m, m);
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(rows[i].size()) != m)
            throw ConfigError("config: operator.D must be m x m");
        for (int j = 0; j < m; ++j) M(i, j) = rows[i][j];
    }
    try {
        return OperatorSpec(RealSym(M));
    } catch (const NotSymmetric& e) {
        throw ConfigError(std::string("config: operator.D: ") + e.what());
    }
}

DisorderModel build_disorder(const json& dis, int m) {
    try {
        return DisorderModel(disorder_kind_from_string(get_as<std::string>(dis.at("kind"), "disorder.kind")),
                             m, get_as<double>(dis.at("c"), "disorder.c"),
                             get_as<double>(dis.at("alpha"), "disorder.alpha"));
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("config: disorder: ") + e.what());
    }
}

EngineConfig build_engine(const json& eng) {
    EngineConfig cfg;
    cfg.tol = get_as<double>(eng.at("tol"), "engine.tol");
    cfg.max_depth = get_as<long>(eng.at("max_depth"), "engine.max_depth");
    if (!(cfg.tol > 0) || cfg.max_depth < 1) throw ConfigError("config: engine: tol > 0, max_depth >= 1");
    return cfg;
}

std::vector<double> build_x_grid(const json& xg) {
    if (xg.is_array()) return get_as<std::vector<double>>(xg, "experiment.x_grid");
    if (!xg.is_object()) throw ConfigError("config: experiment.x_grid must be a list or {min,max,count}");
    for (auto it = xg.begin(); it != xg.end(); ++it)
        if (it.key() != "min" && it.key() != "max" && it.key() != "count")
            throw ConfigError("config: unknown key 'experiment.x_grid." + it.key() + "'");
    double lo = get_as<double>(xg.at("min"), "experiment.x_grid.min");
    double hi = get_as<double>(xg.at("max"), "experiment.x_grid.max");
    int n = get_as<int>(xg.at("count"), "experiment.x_grid.count");
    if (n < 1 || hi < lo) throw ConfigError("config: experiment.x_grid: need count >= 1 and max >= min");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = (n == 1) ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1);
    return g;
}

struct Resolved {
    OperatorSpec spec;
    DisorderModel model;
    EngineConfig engine;
    Interval J;
    std::vector<double> x_grid, eps_grid;
    int trials = 0;
    std::uint64_t seed = 0;
    long window_min = 0, window_max = 0;
    std::vector<long> sites;
    std::string out_format, out_path;
};

Resolved resolve(const json& cfg) {
    Resolved r{build_operator(cfg.at("operator")),
               DisorderModel(),
               build_engine(cfg.at("engine")),
               {},
               {},
               {},
               0,
               0,
               0,
               0,
               {},
               "",
               ""};
    r.model = build_disorder(cfg.at("disorder"), r.spec.channels());
    r.seed = get_as<std::uint64_t>(cfg.at("disorder").at("seed"), "disorder.seed");
    const json& ex = cfg.at("experiment");
    auto J = get_as<std::vector<double>>(ex.at("J"), "experiment.J");
    if (J.size() != 2 || J[1] < J[0]) throw ConfigError("config: experiment.J must be [lo, hi]");
    r.J = {J[0], J[1]};
    r.x_grid = build_x_grid(ex.at("x_grid"));
    r.eps_grid = get_as<std::vector<double>>(ex.at("eps_grid"), "experiment.eps_grid");
    r.trials = get_as<int>(ex.at("trials"), "experiment.trials");
    if (r.trials < 0) throw ConfigError("config: experiment.trials must be >= 0");
    auto w = get_as<std::vector<long>>(ex.at("window"), "experiment.window");
    if (w.size() != 2 || w[1] < w[0]) throw ConfigError("config: experiment.window must be [lo, hi]");
    r.window_min = w[0];
    r.window_max = w[1];
    r.sites = get_as<std::vector<long>>(ex.at("sites"), "experiment.sites");
    if (r.sites.empty()) throw ConfigError("config: experiment.sites must be nonempty");
    r.out_format = get_as<std::string>(cfg.at("output").at("format"), "output.format");
    if (r.out_format != "csv" && r.out_format != "json")
        throw ConfigError("config: output.format must be csv or json");
    r.out_path = get_as<std::string>(cfg.at("output").at("path"), "output.path");
    return r;
}

// Writes to output.path, or stdout when the path is empty.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);  // '\n' endings on every platform
            if (!file_) throw ConfigError("config: cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string interval_str(const Interval& iv) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "[%f, %f]", iv.lo, iv.hi);
    return buf;
}

int cmd_bands(const Resolved& r) {
    BandReport rep = band_report(r.spec);
    std::string sigma;
    for (const auto& iv : rep.sigma_free) {
        if (!sigma.empty()) sigma += " U ";
        sigma += interval_str(iv);
    }
    std::cout << "I_D = " << (rep.I_D ? interval_str(*rep.I_D) : "(empty)") << "; sigma = " << sigma
              << "\n";
    for (const auto& p : rep.pieces)
        std::cout << interval_str(p.interval) << ": m(lambda) = " << p.mode_count << "\n";
    return 0;
}

int cmd_green(const Resolved& r) {
    if (r.x_grid.empty() || r.eps_grid.empty())
        throw ConfigError("config: green needs nonempty x_grid and eps_grid");
    SpectralParameter lam{r.x_grid.front(), r.eps_grid.front()};
    lam.require_upper();
    PotentialSample q = sample_potential(r.model, r.seed, r.window_min, r.window_max);
    Sink sink(r.out_path);
    std::ostream& out = sink.stream();
    const int m = r.spec.channels();
    out << "n,kind";
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out << ",re_" << i << "_" << j << ",im_" << i << "_" << j;
    out << "\n";
    auto emit = [&](long n, const char* kind, const SiegelPoint& G) {
        out << n << "," << kind;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                out << "," << fmt_float(G.mat()(i, j).real()) << ","
                    << fmt_float(G.mat()(i, j).imag());
        out << "\n";
    };
    for (long n : r.sites) {
        emit(n, "forward", forward_green(r.spec, q, lam, n, r.engine).value);
        emit(n, "backward", backward_green(r.spec, q, lam, n, r.engine).value);
        emit(n, "diagonal", diagonal_green(r.spec, q, lam, n, r.engine).value);
    }
    return 0;
}

int cmd_dos(const Resolved& r) {
    if (r.x_grid.empty() || r.eps_grid.empty())
        throw ConfigError("config: dos needs nonempty x_grid and eps_grid");
    PotentialSample q = sample_potential(r.model, r.seed, r.window_min, r.window_max);
    auto rows = dos_curve(r.spec, q, r.x_grid, r.eps_grid, r.sites.front(), r.engine);
    Sink sink(r.out_path);
    std::ostream& out = sink.stream();
    out << "x,eps,dos\n";
    for (const auto& row : rows)
        out << fmt_float(row.x) << "," << fmt_float(row.eps) << "," << fmt_float(row.dos) << "\n";
    return 0;
}

int cmd_mc(const Resolved& r, int jobs) {
    Experiment exp{r.spec,   r.model,      r.J,          r.x_grid, r.eps_grid, r.trials,
                   r.seed,   r.window_min, r.window_max, r.engine, jobs};
    if (r.trials == 0) std::cerr << "warning: trials = 0, emitting empty results\n";
    MCReport rep = run(exp);
    Sink sink(r.out_path);
    std::ostream& out = sink.stream();
    out << "x,eps,mean,var,max,trials,failures\n";
    if (r.trials == 0) return 0;
    for (const auto& c : rep.cells)
        out << fmt_float(c.x) << "," << fmt_float(c.eps) << "," << fmt_float(c.mean) << ","
            << fmt_float(c.variance) << "," << fmt_float(c.max) << "," << c.trials_used << ","
            << c.failures << "\n";
    if (rep.failure_rate_exceeded) {
        std::cerr << "error: more than 1% of trials failed to converge\n";
        return 3;
    }
    return 0;
}

RealSym parse_delta(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        rows.emplace_back();
        std::stringstream rs(row);
        std::string cell;
        while (std::getline(rs, cell, ','))
            try {
                rows.back().push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ConfigError("--delta: bad number '" + cell + "'");
            }
    }
    const int m = static_cast<int>(rows.size());
    Mat M(m, m);
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(rows[i].size()) != m) throw ConfigError("--delta: matrix must be square");
        for (int j = 0; j < m; ++j) M(i, j) = rows[i][j];
    }
    try {
        return RealSym(M);
    } catch (const NotSymmetric& e) {
        throw ConfigError(std::string("--delta: ") + e.what());
    }
}

int cmd_verify(const std::string& suite, long samples, std::uint64_t seed,
               const std::string& delta_text) {
    if (!delta_text.empty()) {
        RealSym delta = parse_delta(delta_text);
        SpectralParameter lam{0.2, 0.5};
        RealSym D = RealSym::Zero(delta.dim());
        auto rep = lemma25_report(free_fixed_point(lam, D), delta, lam, D);
        json j{{"a", rep.a},     {"b", rep.b},
               {"A", rep.A},     {"C", rep.C},
               {"cd_l", rep.cd_l}, {"ratio", rep.lhs_ratio},
               {"bound", rep.bound_rhs}};
        std::cout << j.dump() << "\n";
    }
    std::vector<PropertyResult> results;
    try {
        results = verify_suite(suite, samples, seed);
    } catch (const InvalidParameter& e) {
        throw ConfigError(e.what());
    }
    bool ok = true;
    for (const auto& p : results) {
        std::printf("%-42s samples=%-7ld violations=%-5ld worst_margin=% .3e", p.name.c_str(),
                    p.samples, p.violations, p.worst_margin);
        if (!p.stat_name.empty()) std::printf("  %s=%.6g", p.stat_name.c_str(), p.stat);
        std::printf("\n");
        if (p.violations > 0) {
            ok = false;
            std::cout << "counterexample: " << p.counterexample << "\n";
            break;  // first failing counterexample only
        }
    }
    return ok ? 0 : 5;
}

int cmd_blockdemo(const Resolved& r) {
    // Weakly coupled 2x2 demonstration instance and its full residual table.
    BlockOperator B(RealSym(Mat::Constant(1, 1, 0.0)), RealSym(Mat::Constant(1, 1, 3.0)),
                    Mat::Constant(1, 1, 0.3));
    ContourSpec c;
    c.center_re = 0.0;
    c.radius = 1.5;
    Mat P1 = riesz_projection(B, c);
    GraphOperators Q = graph_operators(B, P1);
    BlockDiagonalization bd = block_diagonalize(B, Q);
    Mat P1sq = P1 * P1;
    Mat comm = P1 * B.assembled() - B.assembled() * P1;
    json out{{"dim1", B.dim1()},
             {"dim2", B.dim2()},
             {"v_norm", B.v_norm()},
             {"spectral_gap", B.spectral_gap()},
             {"Q1", Q.Q1(0, 0)},
             {"A1", bd.A1(0, 0)},
             {"proj_idempotency_residual", op_norm(Mat(P1sq - P1))},
             {"proj_commutator_residual", op_norm(comm)},
             {"intertwine_residual", bd.intertwine_residual},
             {"offdiag_residual", bd.offdiag_residual},
             {"T1_norm", op_norm(bd.T1)}};
    Sink sink(r.out_path);
    sink.stream() << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Green's functions of 1D Schroedinger operators with matrix potentials"};
    app.require_subcommand(1);

    std::string config_file;
    std::vector<std::string> sets;
    bool print_config = false;
    int jobs = 0;
    app.add_option("--config", config_file, "Configuration file (JSON)");
    app.add_option("--set", sets, "Override a config key, e.g. --set disorder.c=0.5");
    app.add_flag("--print-config", print_config, "Print the effective config and exit");
    app.add_option("--jobs", jobs, "Worker threads (default: SIEGEL_GREEN_JOBS or all cores)");

    for (const char* name : {"bands", "green", "dos", "mc", "blockdemo"})
        app.add_subcommand(name)->fallthrough();
    auto* verify = app.add_subcommand("verify");
    verify->fallthrough();
    std::string suite = "all", delta_text;
    long samples = 1000;
    std::uint64_t vseed = 42;
    verify->add_option("suite", suite, "siegel|lemma25|appendixB|oracle|blockdecomp|all");
    verify->add_option("--samples", samples, "Samples per property");
    verify->add_option("--seed", vseed, "RNG seed");
    verify->add_option("--delta", delta_text, "Symmetric matrix 'a,b;b,c' for a one-shot report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        json cfg = load_config(config_file, sets);
        if (print_config) {
            std::cout << cfg.dump(2) << "\n";
            return 0;
        }
        if (jobs <= 0) {
            if (const char* env = std::getenv("SIEGEL_GREEN_JOBS")) jobs = std::atoi(env);
            if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
            if (jobs <= 0) jobs = 1;
        }
        Resolved r = resolve(cfg);
        if (app.got_subcommand("bands")) return cmd_bands(r);
        if (app.got_subcommand("green")) return cmd_green(r);
        if (app.got_subcommand("dos")) return cmd_dos(r);
        if (app.got_subcommand("mc")) return cmd_mc(r, jobs);
        if (app.got_subcommand("blockdemo")) return cmd_blockdemo(r);
        return cmd_verify(suite, samples, vseed, delta_text);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NoConvergence& e) {
        std::cerr << "error: no convergence: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: numerical invariant breach: " << e.what() << "\n";
        return 4;
    }
}
