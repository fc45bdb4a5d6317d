#include "ampfsi/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <variant>

#include "ampfsi/cauchy_cfl.hpp"
#include "ampfsi/impedance.hpp"
#include "ampfsi/inviscid_modes.hpp"
#include "ampfsi/parallel.hpp"
#include "ampfsi/piston.hpp"
#include "ampfsi/sim1d.hpp"
#include "ampfsi/viscous_modes.hpp"

namespace ampfsi::cli {

using nlohmann::json;

namespace {

// Reads typed parameters with range checks and remembers which keys were used.
class Params {
public:
    explicit Params(const json& j) : j_(j) {}

    double number(const std::string& key, double def, double lo, double hi) {
        const json* v = find(key);
        if (!v) return def;
        if (!v->is_number()) fail(key, "expected a number");
        const double x = v->get<double>();
        if (!(x >= lo && x <= hi)) fail(key, range_text(lo, hi));
        return x;
    }

    int integer(const std::string& key, int def, int lo, int hi) {
        const json* v = find(key);
        if (!v) return def;
        if (!v->is_number_integer()) fail(key, "expected an integer");
        const long long x = v->get<long long>();
        if (x < lo || x > hi) fail(key, range_text(lo, hi));
        return static_cast<int>(x);
    }

    bool boolean(const std::string& key, bool def) {
        const json* v = find(key);
        if (!v) return def;
        if (!v->is_boolean()) fail(key, "expected true or false");
        return v->get<bool>();
    }

    std::string choice(const std::string& key, const std::string& def, const std::vector<std::string>& allowed) {
        const json* v = find(key);
        if (!v) return def;
        if (!v->is_string()) fail(key, "expected a string");
        const std::string s = v->get<std::string>();
        for (const auto& a : allowed)
            if (a == s) return s;
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : "|") + a;
        fail(key, "expected one of " + list);
    }

    std::vector<double> numbers(const std::string& key, std::vector<double> def, double lo, double hi) {
        const json* v = find(key);
        if (!v) return def;
        if (!v->is_array() || v->empty()) fail(key, "expected a non-empty array of numbers");
        std::vector<double> out;
        for (const auto& e : *v) {
            if (!e.is_number()) fail(key, "expected a non-empty array of numbers");
            const double x = e.get<double>();
            if (!(x >= lo && x <= hi)) fail(key, range_text(lo, hi));
            out.push_back(x);
        }
        return out;
    }

    std::vector<Scheme> schemes(const std::string& key) {
        const json* v = find(key);
        if (!v) return {kAllSchemes.begin(), kAllSchemes.end()};
        if (!v->is_array() || v->empty()) fail(key, "expected a non-empty array of scheme names");
        std::vector<Scheme> out;
        for (const auto& e : *v) {
            const auto s = e.is_string() ? parse_scheme(e.get<std::string>()) : std::nullopt;
            if (!s) fail(key, "expected AMP, TP or ATP");
            out.push_back(*s);
        }
        return out;
    }

    Scheme scheme(const std::string& key, Scheme def) {
        const json* v = find(key);
        if (!v) return def;
        const auto s = v->is_string() ? parse_scheme(v->get<std::string>()) : std::nullopt;
        if (!s) fail(key, "expected AMP, TP or ATP");
        return *s;
    }

    void require(bool ok, const std::string& key, const std::string& what) const {
        if (!ok) fail(key, what);
    }

    // Rejects keys that the command did not read.
    void finish() const {
        for (const auto& [k, v] : j_.items())
            if (!used_.count(k)) throw ValidationError("unknown_key " + k);
    }

private:
    const json* find(const std::string& key) {
        used_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    [[noreturn]] static void fail(const std::string& key, const std::string& what) {
        throw ValidationError("invalid_value " + key + ": " + what);
    }

    static std::string range_text(double lo, double hi) {
        std::ostringstream os;
        os << "must be in [" << lo << ", " << hi << "]";
        return os.str();
    }

    const json& j_;
    std::set<std::string> used_;
};

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

void write_csv(std::ostream& os, const Table& t, const RunConfig& cfg) {
    os << "# ampfsi " << cfg.command << " version " << kVersion << " config " << config_hash(cfg) << "\n";
    for (size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            std::visit(
                [&os](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        os << format_double(v);
                    else
                        os << v;
                },
                row[i]);
        }
        os << "\n";
    }
}

void write_json(std::ostream& os, const Table& t, const RunConfig& cfg) {
    nlohmann::ordered_json doc;
    doc["command"] = cfg.command;
    doc["version"] = std::string(kVersion);
    doc["config_hash"] = config_hash(cfg);
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (size_t i = 0; i < row.size(); ++i)
            std::visit([&](const auto& v) { obj[t.columns[i]] = v; }, row[i]);
        doc["rows"].push_back(std::move(obj));
    }
    os << doc.dump(2) << "\n";
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = n == 1 ? lo : std::pow(10.0, std::log10(lo) + (std::log10(hi) - std::log10(lo)) * i / (n - 1));
    return g;
}

std::vector<double> lin_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return g;
}

std::string name_of(Scheme s) { return std::string(to_string(s)); }
std::string name_of(Verdict v) { return std::string(to_string(v)); }

Table impedance_curve(Params& p, int) {
    const auto theta_s = p.numbers("theta_s", {1e-3, 1.0, 1e3}, 1e-12, 1e12);
    const double lo = p.number("lambda_min", 1e-6, 1e-12, 1e12);
    const double hi = p.number("lambda_max", 1e6, 1e-12, 1e12);
    const int n = p.integer("n_lambda", 121, 2, 100000);
    p.require(lo < hi, "lambda_max", "must exceed lambda_min");
    p.finish();
    Table t{{"theta_s", "Lambda", "R", "R_tilde", "R_over_R_tilde"}, {}};
    const auto grid = log_grid(lo, hi, n);
    for (double th : theta_s)
        for (const auto& [L, ratio] : ratio_curve(th, grid))
            t.rows.push_back({th, L, compute_R(L, th), compute_R_tilde(L), ratio});
    return t;
}

Table viscous_sweep(Params& p, int jobs) {
    const auto schemes = p.schemes("schemes");
    const int nL = p.integer("n_Lambda", 31, 1, 1000);
    const int nZ = p.integer("n_Z", 31, 1, 1000);
    const int nx = p.integer("n_lam_x", 20, 1, 1000);
    const int ny = p.integer("n_lam_y", 20, 1, 1000);
    const double lo = p.number("range_min", 1e-3, 1e-12, 1e12);
    const double hi = p.number("range_max", 1e3, 1e-12, 1e12);
    const double l0 = p.number("lam_min", 0.05, 0.0, 1.0);
    const double l1 = p.number("lam_max", 0.95, 0.0, 1.0);
    p.require(lo <= hi, "range_max", "must be >= range_min");
    p.require(l0 <= l1, "lam_max", "must be >= lam_min");
    p.finish();
    const ViscousGrid grid = make_viscous_grid(nL, nZ, nx, ny, lo, hi, l0, l1);
    Table t{{"scheme", "Lambda", "Z", "n_points", "max_unstable", "n_marginal", "min_abs_on_contour", "verdict"}, {}};
    for (Scheme s : schemes)
        for (const ViscousCell& c : sweep(s, grid, jobs))
            t.rows.push_back({name_of(s), c.Lambda, c.Z, static_cast<long long>(c.n_points),
                              static_cast<long long>(c.max_unstable), static_cast<long long>(c.n_marginal),
                              c.min_abs_on_contour, name_of(c.verdict)});
    return t;
}

Table inviscid_1d(Params& p, int jobs) {
    const auto schemes = p.schemes("schemes");
    const double y0 = p.number("lam_y_min", 1e-3, 1e-8, 1.0);
    const double y1 = p.number("lam_y_max", 1.0, 1e-8, 1.0);
    const int ny = p.integer("n_lam_y", 80, 1, 10000);
    const double m0 = p.number("Mcal_min", 1e-3, 1e-12, 1e12);
    const double m1 = p.number("Mcal_max", 1e4, 1e-12, 1e12);
    const int nm = p.integer("n_Mcal", 80, 1, 10000);
    p.require(y0 <= y1, "lam_y_max", "must be >= lam_y_min");
    p.require(m0 <= m1, "Mcal_max", "must be >= Mcal_min");
    p.finish();
    const auto ly = lin_grid(y0, y1, ny);
    const auto mc = log_grid(m0, m1, nm);
    Table t{{"scheme", "lam_y", "Mcal", "n_unstable", "amax", "verdict"}, {}};
    for (Scheme s : schemes) {
        std::vector<RootSet1D> res(ly.size() * mc.size());
        parallel_for(static_cast<int>(res.size()), jobs, [&](int k) {
            const double y = ly[k / mc.size()], m = mc[k % mc.size()];
            res[k] = find_unstable_roots_1d(s, y, m / y);
        });
        for (size_t k = 0; k < res.size(); ++k) {
            double amax = 1.0;
            for (cplx A : res[k].roots) amax = std::max(amax, std::abs(A));
            const Verdict v = res[k].marginal ? Verdict::Marginal
                              : res[k].roots.empty() ? Verdict::Stable
                                                     : Verdict::Unstable;
            t.rows.push_back({name_of(s), ly[k / mc.size()], mc[k % mc.size()],
                              static_cast<long long>(res[k].roots.size()), amax, name_of(v)});
        }
    }
    return t;
}

Table inviscid_2d(Params& p, int jobs) {
    const std::string mode = p.choice("mode", "lam_y_Mcal", {"lam_y_Mcal", "lam_x_lam_y"});
    if (mode == "lam_y_Mcal") {
        const auto schemes = p.schemes("schemes");
        const double y0 = p.number("lam_y_min", 0.05, 1e-8, 1.0);
        const double y1 = p.number("lam_y_max", 1.0, 1e-8, 1.0);
        const int ny = p.integer("n_lam_y", 10, 1, 10000);
        const double m0 = p.number("Mcal_min", 1e-3, 1e-12, 1e12);
        const double m1 = p.number("Mcal_max", 1e3, 1e-12, 1e12);
        const int nm = p.integer("n_Mcal", 10, 1, 10000);
        const int n_lam_x = p.integer("n_lam_x", 8, 1, 1000);
        const int n_eta = p.integer("n_eta", 8, 1, 1000);
        p.require(y0 <= y1, "lam_y_max", "must be >= lam_y_min");
        p.require(m0 <= m1, "Mcal_max", "must be >= Mcal_min");
        p.finish();
        const auto ly = lin_grid(y0, y1, ny);
        const auto mc = log_grid(m0, m1, nm);
        Table t{{"scheme", "lam_y", "Mcal", "amax"}, {}};
        for (Scheme s : schemes) {
            std::vector<double> res(ly.size() * mc.size());
            parallel_for(static_cast<int>(res.size()), jobs, [&](int k) {
                res[k] = script_Amax(s, mc[k % mc.size()], ly[k / mc.size()], n_lam_x, n_eta, 1);
            });
            for (size_t k = 0; k < res.size(); ++k)
                t.rows.push_back({name_of(s), ly[k / mc.size()], mc[k % mc.size()], res[k]});
        }
        return t;
    }
    const int n = p.integer("n_lam", 10, 1, 1000);
    const int n_M = p.integer("n_M", 25, 1, 1000);
    p.finish();
    std::vector<std::pair<double, double>> pts;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const double lx = static_cast<double>(i) / n, ly = static_cast<double>(j) / n;
            if (lx * lx + ly * ly <= 1.0 + 1e-12) pts.emplace_back(lx, ly);
        }
    std::vector<double> res(pts.size());
    parallel_for(static_cast<int>(pts.size()), jobs,
                 [&](int k) { res[k] = script_A_CFL(pts[k].first, pts[k].second, n_M, 1); });
    Table t{{"lam_x", "lam_y", "amax"}, {}};
    for (size_t k = 0; k < pts.size(); ++k) t.rows.push_back({pts[k].first, pts[k].second, res[k]});
    return t;
}

Table cfl_region(Params& p, int jobs) {
    const std::string kind = p.choice("kind", "viscous", {"viscous", "inviscid"});
    const int res = p.integer("resolution", 64, 16, 4096);
    p.finish();
    const CflMap map = region_map(kind == "viscous" ? CflKind::Viscous : CflKind::Inviscid, res, jobs);
    Table t{{"lam_x", "lam_y", "amax", "stable"}, {}};
    for (size_t i = 0; i < map.lam_x_grid.size(); ++i)
        for (size_t j = 0; j < map.lam_y_grid.size(); ++j)
            t.rows.push_back({map.lam_x_grid[i], map.lam_y_grid[j], map.Amax[i][j],
                              static_cast<long long>(map.stable_mask[i][j] ? 1 : 0)});
    return t;
}

Sim1DConfig sim_config_from(Params& p, Scheme scheme, double lam_y, double Mcal) {
    const int cells = p.integer("cells_per_H", 20, 2, 100000);
    const std::string init = p.choice("initial_data", "reference", {"reference", "pulse"});
    Sim1DConfig cfg = sim_config_for(scheme, lam_y, Mcal, cells);
    if (init == "pulse") cfg.init = arriving_pulse_initial_data(1.0, 2.0 * cfg.H, 0.25 * cfg.H);
    return cfg;
}

Table simulate_1d(Params& p, int) {
    const Scheme scheme = p.scheme("scheme", Scheme::AMP);
    const double lam_y = p.number("lam_y", 0.8, 1e-8, 1.0);
    const double Mcal = p.number("Mcal", 1.0, 1e-12, 1e12);
    const int n_steps = p.integer("n_steps", 0, 0, 10000000);
    Sim1DConfig cfg = sim_config_from(p, scheme, lam_y, Mcal);
    p.finish();
    cfg.n_steps = n_steps > 0 ? n_steps : classify_steps(cfg);
    Table t{{"step", "t", "v_I", "p_I", "a_I"}, {}};
    for (const SimRecord& r : simulate(cfg))
        t.rows.push_back({static_cast<long long>(r.step), r.t, r.v_I, r.p_I, r.a_I});
    return t;
}

Table sim_classify_grid(Params& p, int jobs) {
    const auto schemes = p.schemes("schemes");
    const auto ly = p.numbers("lam_y", {0.2, 0.4, 0.6, 0.8, 1.0}, 1e-8, 1.0);
    const auto mc = p.numbers("Mcal", {1e-3, 1e-1, 1e1, 1e3}, 1e-12, 1e12);
    const Sim1DConfig proto = sim_config_from(p, Scheme::AMP, 0.5, 1.0);
    p.finish();
    const int cells = static_cast<int>(std::lround(proto.H / proto.dy));
    const bool pulse = static_cast<bool>(proto.init.arriving);
    Table t{{"scheme", "lam_y", "Mcal", "verdict", "growth_rate", "max_ratio"}, {}};
    for (Scheme s : schemes) {
        std::vector<Classification> res(ly.size() * mc.size());
        parallel_for(static_cast<int>(res.size()), jobs, [&](int k) {
            Sim1DConfig cfg = sim_config_for(s, ly[k / mc.size()], mc[k % mc.size()], cells);
            if (pulse) cfg.init = proto.init;
            res[k] = classify_run(cfg);
        });
        for (size_t k = 0; k < res.size(); ++k)
            t.rows.push_back({name_of(s), ly[k / mc.size()], mc[k % mc.size()], name_of(res[k].verdict),
                              res[k].growth_rate, res[k].max_ratio});
    }
    return t;
}

Table piston_longitudinal(Params& p, int) {
    const double delta = p.number("delta", 1.0, 1e-8, 1e8);
    const double amp = p.number("amplitude", 0.1, 0.0, 0.99);
    const double omega = p.number("omega", 2.0 * kPi, 1e-8, 1e8);
    const int n_y = p.integer("n_y", 21, 2, 100000);
    const auto times = p.numbers("times", {0.0, 0.25, 0.5}, -1e12, 1e12);
    p.finish();
    const LongitudinalPiston pist = longitudinal_from_amplitude(delta, amp, omega);
    Table t{{"field", "y", "t", "value"}, {}};
    for (double tt : times) {
        for (double y : lin_grid(-pist.Hbar, 0.0, n_y)) {
            const LongitudinalFields f = longitudinal_fields(pist, y, tt);
            t.rows.push_back({std::string("u2_bar"), y, tt, f.u2_bar});
            t.rows.push_back({std::string("v2_bar"), y, tt, f.v2_bar});
            t.rows.push_back({std::string("sigma22_bar"), y, tt, f.sigma22_bar});
        }
        const double yI = longitudinal_fields(pist, 0.0, tt).y_I;
        for (double y : lin_grid(yI, pist.H, n_y))
            t.rows.push_back({std::string("p"), y, tt, longitudinal_fluid_pressure(pist, y, tt)});
    }
    return t;
}

Table piston_transverse(Params& p, int) {
    const auto deltas = p.numbers("delta", {1e3, 1.0, 1e-3}, 1e-8, 1e8);
    p.finish();
    Table t{{"delta", "omega_re", "omega_im", "residual"}, {}};
    for (double d : deltas) {
        const TransversePiston pist = transverse_reference(d);
        const cplx w = transverse_fundamental_root(pist);
        t.rows.push_back({d, w.real(), w.imag(), std::abs(transverse_dispersion_regular(pist, w))});
    }
    return t;
}

using Command = std::function<Table(Params&, int)>;

const std::map<std::string, Command>& commands() {
    static const std::map<std::string, Command> table{
        {"impedance-curve", impedance_curve},     {"viscous-sweep", viscous_sweep},
        {"inviscid-1d", inviscid_1d},             {"inviscid-2d", inviscid_2d},
        {"cfl-region", cfl_region},               {"simulate-1d", simulate_1d},
        {"sim-classify-grid", sim_classify_grid}, {"piston-longitudinal", piston_longitudinal},
        {"piston-transverse", piston_transverse},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : commands()) v.push_back(k);
        return v;
    }();
    return names;
}

RunConfig make_config(const std::string& command, const std::string& config_text, const std::string& output_path,
                      int jobs) {
    if (!commands().count(command)) throw ValidationError("unknown_command " + command);
    if (jobs < 1) throw ValidationError("invalid_value jobs: must be >= 1");
    if (output_path.empty()) throw ValidationError("invalid_value out: must not be empty");
    RunConfig cfg;
    cfg.command = command;
    cfg.output_path = output_path;
    cfg.jobs = jobs;
    cfg.format = command == "piston-transverse" ? Format::Json : Format::Csv;
    json j;
    try {
        j = json::parse(config_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("bad_json ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("bad_json config must be a JSON object");
    if (auto it = j.find("format"); it != j.end()) {
        if (*it == "csv")
            cfg.format = Format::Csv;
        else if (*it == "json")
            cfg.format = Format::Json;
        else
            throw ValidationError("invalid_value format: expected csv or json");
        j.erase(it);
    }
    cfg.params = std::move(j);
    return cfg;
}

std::string config_hash(const RunConfig& config) {
    // The object dump has sorted keys, so equal configs hash equally.
    const std::string text = config.command + "\n" + config.params.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void execute(const RunConfig& config) {
    const auto it = commands().find(config.command);
    if (it == commands().end()) throw ValidationError("unknown_command " + config.command);
    if (!config.params.is_object()) throw ValidationError("bad_json config must be a JSON object");
    Params params(config.params);
    Table table;
    try {
        table = it->second(params, std::max(1, config.jobs));
    } catch (const DegenerateInput& e) {
        throw ValidationError(std::string("invalid_input ") + e.what());
    }
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) throw ValidationError("io_error cannot open " + config.output_path);
    if (config.format == Format::Csv)
        write_csv(out, table, config);
    else
        write_json(out, table, config);
    if (!out) throw Error("io_error write failed for " + config.output_path);
}

int run(const RunConfig& config, std::ostream& err) {
    try {
        execute(config);
        return 0;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: numerical_failure " << e.what() << "\n";
        return 2;
    }
}

}  // namespace ampfsi::cli
