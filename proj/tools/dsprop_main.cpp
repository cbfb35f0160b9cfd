// Command-line front end: kernel tables, mode solves with oracle columns,
// fundamental-solution actions, flat-limit studies, and the invariant
// verification suite.
//
// Exit codes: 0 ok, 2 config error, 3 numerical failure, 4 gate failure,
// 5 verify failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dsprop/clifford.hpp"
#include "dsprop/dirac.hpp"
#include "dsprop/errors.hpp"
#include "dsprop/factor.hpp"
#include "dsprop/kernels.hpp"
#include "dsprop/kg.hpp"
#include "dsprop/oracle.hpp"
#include "dsprop/quadrature.hpp"

namespace {

using dsprop::cx;
using json = nlohmann::json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    unsigned long long seed = 12345;
    double gate = std::numeric_limits<double>::infinity();
    std::vector<std::string> sets;
    bool inject_gamma_defect = false;
};

// Flat key -> value store with precedence: --set flags > config file >
// per-command defaults. Key names are validated against the command's
// declared set so typos fail loudly.
class Config {
  public:
    void set_default(const std::string& key, const std::string& value) {
        known_.insert(key);
        if (!values_.count(key)) values_[key] = value;
    }

    void load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const std::string trimmed = trim(line);
            if (trimmed.empty()) continue;
            if (trimmed.front() == '[' && trimmed.back() == ']') {
                section = trim(trimmed.substr(1, trimmed.size() - 2));
                continue;
            }
            const auto eq = trimmed.find('=');
            if (eq == std::string::npos)
                throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
            std::string key = trim(trimmed.substr(0, eq));
            if (!section.empty()) key = section + "." + key;
            put(key, trim(trimmed.substr(eq + 1)));
        }
    }

    void apply_overrides(const std::vector<std::string>& sets) {
        for (const std::string& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw ConfigError("--set expects key=value, got: " + s);
            put(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
        }
    }

    double get_double(const std::string& key) const {
        const std::string& s = fetch(key);
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw ConfigError("");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "': not a number: " + s);
        }
    }

    long get_long(const std::string& key) const {
        const std::string& s = fetch(key);
        try {
            std::size_t pos = 0;
            const long v = std::stol(s, &pos);
            if (pos != s.size()) throw ConfigError("");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "': not an integer: " + s);
        }
    }

    cx get_cx(const std::string& stem) const {
        return cx(get_double(stem + "_re"), get_double(stem + "_im"));
    }

    const std::string& get_string(const std::string& key) const { return fetch(key); }

    // Canonical serialization feeding the reproducibility hash.
    std::string canonical() const {
        std::string s;
        for (const auto& [k, v] : values_) {
            s += k;
            s += '=';
            s += v;
            s += '\n';
        }
        return s;
    }

  private:
    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return "";
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    void put(const std::string& key, const std::string& value) {
        if (!known_.count(key)) throw ConfigError("unknown config key: " + key);
        values_[key] = value;
    }

    const std::string& fetch(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end()) throw ConfigError("missing config key: " + key);
        return it->second;
    }

    std::map<std::string, std::string> values_;
    std::set<std::string> known_;
};

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string config_hash(const std::string& command, const Config& cfg, unsigned long long seed) {
    std::string payload = command + "\n" + cfg.canonical() + "seed=" + std::to_string(seed) + "\n";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(payload)));
    return buf;
}

// One output table; cells are preformatted so CSV bytes are reproducible.
// An empty cell marks a value that was skipped (outside the light cone).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

void write_output(const CommonOpts& co, const std::string& command, const std::string& hash,
                  const std::string& units, const Table& table) {
    std::ostringstream body;
    if (co.format == "csv") {
        body << "# dsprop " << command << "\n";
        body << "# config_hash=" << hash << "\n";
        body << "# units: " << units << "\n";
        for (std::size_t i = 0; i < table.columns.size(); ++i)
            body << (i ? "," : "") << table.columns[i];
        body << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) body << (i ? "," : "") << row[i];
            body << '\n';
        }
    } else {
        json j;
        j["command"] = command;
        j["config_hash"] = hash;
        j["units"] = units;
        j["columns"] = table.columns;
        json rows = json::array();
        for (const auto& row : table.rows) {
            json r = json::array();
            for (const auto& cell : row) {
                if (cell.empty())
                    r.push_back(nullptr);
                else
                    r.push_back(cell);
            }
            rows.push_back(std::move(r));
        }
        j["rows"] = std::move(rows);
        body << j.dump(2) << '\n';
    }
    if (co.out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(co.out_path, std::ios::binary);
        if (!out) throw ConfigError("cannot open output file: " + co.out_path);
        out << body.str();
    }
}

std::vector<double> linspace(double lo, double hi, long count) {
    if (count < 1) throw ConfigError("grid count must be >= 1");
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        v.push_back(lo);
        return v;
    }
    for (long i = 0; i < count; ++i)
        v.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    return v;
}

double mixed_rel_err(cx a, cx b) {
    return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
}

// ---------------------------------------------------------------- kernel ---

int run_kernel(Config& cfg, const CommonOpts& co) {
    cfg.set_default("H", "1.0");
    cfg.set_default("M_re", "0.5");
    cfg.set_default("M_im", "0.0");
    cfg.set_default("t0", "0.0");
    cfg.set_default("r_min", "0.0");
    cfg.set_default("r_max", "2.0");
    cfg.set_default("r_count", "9");
    cfg.set_default("t_min", "0.1");
    cfg.set_default("t_max", "1.5");
    cfg.set_default("t_count", "8");
    if (!co.config_path.empty()) cfg.load_file(co.config_path);
    cfg.apply_overrides(co.sets);

    dsprop::KernelParams p;
    p.H = cfg.get_double("H");
    p.M = cfg.get_cx("M");
    if (!(p.H > 0.0)) throw ConfigError("kernel: H must be > 0");
    const double t0 = cfg.get_double("t0");
    const auto rs = linspace(cfg.get_double("r_min"), cfg.get_double("r_max"), cfg.get_long("r_count"));
    const auto ts = linspace(cfg.get_double("t_min"), cfg.get_double("t_max"), cfg.get_long("t_count"));

    Table table;
    table.columns = {"r", "t", "re_E", "im_E", "re_K0", "im_K0", "re_K1", "im_K1", "outside"};
    for (const double t : ts) {
        for (const double r : rs) {
            std::vector<std::string> row{fmt17(r), fmt17(t)};
            bool outside = false;
            const auto push = [&row, &outside](const std::function<cx()>& eval) {
                try {
                    const cx v = eval();
                    row.push_back(fmt17(v.real()));
                    row.push_back(fmt17(v.imag()));
                } catch (const dsprop::OutsideCone&) {
                    outside = true;
                    row.emplace_back();
                    row.emplace_back();
                }
            };
            push([&] { return dsprop::kernel_E(p, r, t, t0); });
            push([&] { return dsprop::kernel_K0(p, r, t); });
            push([&] { return dsprop::kernel_K1(p, r, t); });
            row.push_back(outside ? "1" : "0");
            table.rows.push_back(std::move(row));
        }
    }
    write_output(co, "kernel", config_hash("kernel", cfg, co.seed),
                 "natural units (c=1); t,t0 cosmological time; r comoving distance", table);
    return 0;
}

// -------------------------------------------------------------- kg-solve ---

int run_kg_solve(Config& cfg, const CommonOpts& co) {
    cfg.set_default("H", "1.0");
    cfg.set_default("M_re", "0.5");
    cfg.set_default("M_im", "0.0");
    cfg.set_default("xi", "1.0");
    cfg.set_default("phi0_re", "1.0");
    cfg.set_default("phi0_im", "0.0");
    cfg.set_default("phi1_re", "0.0");
    cfg.set_default("phi1_im", "0.0");
    cfg.set_default("source_amp_re", "0.0");
    cfg.set_default("source_amp_im", "0.0");
    cfg.set_default("source_rate_re", "0.0");
    cfg.set_default("source_rate_im", "0.0");
    cfg.set_default("t_min", "0.0");
    cfg.set_default("t_max", "1.0");
    cfg.set_default("t_count", "5");
    cfg.set_default("covariant", "0");
    cfg.set_default("T", "16.0");
    if (!co.config_path.empty()) cfg.load_file(co.config_path);
    cfg.apply_overrides(co.sets);

    dsprop::KGProblem p;
    p.H = cfg.get_double("H");
    p.M = cfg.get_cx("M");
    p.mode.xi = {cfg.get_double("xi"), 0.0, 0.0};
    p.phi0 = cfg.get_cx("phi0");
    p.phi1 = cfg.get_cx("phi1");
    p.T = cfg.get_double("T");
    if (p.H < 0.0) throw ConfigError("kg-solve: H must be >= 0");
    const cx samp = cfg.get_cx("source_amp");
    const cx srate = cfg.get_cx("source_rate");
    if (samp != cx(0.0, 0.0))
        p.source = [samp, srate](double b) { return samp * std::exp(srate * b); };
    const bool covariant = cfg.get_long("covariant") != 0;
    const auto ts = linspace(cfg.get_double("t_min"), cfg.get_double("t_max"), cfg.get_long("t_count"));

    const dsprop::QuadratureSpec q;
    Table table;
    table.columns = {"t", "re_val", "im_val", "re_oracle", "im_oracle", "abs_err", "rel_err"};
    double worst = 0.0;
    for (const double t : ts) {
        cx val = (p.H > 0.0) ? dsprop::kg_solve_mode(p, t, q) : dsprop::kg_solve_mode_minkowski(p, t, q);
        cx orc = dsprop::kg_mode_oracle(p.H, p.M, p.mode.abs_xi(), p.phi0, p.phi1, p.source, t);
        if (covariant) {
            const cx w = std::exp(cx(-1.5 * p.H * t, 0.0));
            val *= w;
            orc *= w;
        }
        const double abs_err = std::abs(val - orc);
        const double rel_err = mixed_rel_err(val, orc);
        worst = std::max(worst, rel_err);
        table.rows.push_back({fmt17(t), fmt17(val.real()), fmt17(val.imag()), fmt17(orc.real()),
                              fmt17(orc.imag()), fmt17(abs_err), fmt17(rel_err)});
    }
    write_output(co, "kg-solve", config_hash("kg-solve", cfg, co.seed),
                 "natural units (c=1); t cosmological time; amplitudes dimensionless", table);
    return worst <= co.gate ? 0 : 4;
}

// ----------------------------------------------------------- dirac-solve ---

int run_dirac_solve(Config& cfg, const CommonOpts& co) {
    cfg.set_default("H", "1.0");
    cfg.set_default("m_re", "1.0");
    cfg.set_default("m_im", "0.0");
    cfg.set_default("xi1", "1.0");
    cfg.set_default("xi2", "0.0");
    cfg.set_default("xi3", "0.0");
    for (int j = 0; j < 4; ++j) {
        cfg.set_default("phi" + std::to_string(j) + "_re", j == 0 ? "1.0" : "0.0");
        cfg.set_default("phi" + std::to_string(j) + "_im", "0.0");
    }
    cfg.set_default("t_min", "0.0");
    cfg.set_default("t_max", "0.5");
    cfg.set_default("t_count", "5");
    cfg.set_default("massless_path", "0");
    cfg.set_default("T", "16.0");
    if (!co.config_path.empty()) cfg.load_file(co.config_path);
    cfg.apply_overrides(co.sets);

    dsprop::DiracModeProblem p;
    p.H = cfg.get_double("H");
    p.m = cfg.get_cx("m");
    p.xi = {cfg.get_double("xi1"), cfg.get_double("xi2"), cfg.get_double("xi3")};
    for (int j = 0; j < 4; ++j) p.Phi[static_cast<std::size_t>(j)] = cfg.get_cx("phi" + std::to_string(j));
    p.T = cfg.get_double("T");
    if (p.H < 0.0) throw ConfigError("dirac-solve: H must be >= 0");
    const bool massless_path = cfg.get_long("massless_path") != 0;
    if (massless_path && p.m != cx(0.0, 0.0))
        throw ConfigError("dirac-solve: massless_path=1 requires m = 0");
    const auto ts = linspace(cfg.get_double("t_min"), cfg.get_double("t_max"), cfg.get_long("t_count"));

    const dsprop::QuadratureSpec q;
    Table table;
    table.columns = {"t", "comp", "re_val", "im_val", "re_oracle", "im_oracle", "abs_err", "rel_err"};
    double worst = 0.0;
    for (const double t : ts) {
        dsprop::SpinorValue val;
        if (p.H == 0.0)
            val = dsprop::dirac_solve_mode_minkowski(p, t, q);
        else if (massless_path)
            val = dsprop::dirac_solve_mode_massless(p, t, q);
        else
            val = dsprop::dirac_solve_mode(p, t, q);
        const dsprop::SpinorValue orc = dsprop::dirac_mode_oracle(p.H, p.m, p.xi, p.Phi, p.F, t);
        for (int j = 0; j < 4; ++j) {
            const cx a = val[static_cast<std::size_t>(j)];
            const cx b = orc[static_cast<std::size_t>(j)];
            const double abs_err = std::abs(a - b);
            const double rel_err = mixed_rel_err(a, b);
            worst = std::max(worst, rel_err);
            table.rows.push_back({fmt17(t), std::to_string(j), fmt17(a.real()), fmt17(a.imag()),
                                  fmt17(b.real()), fmt17(b.imag()), fmt17(abs_err), fmt17(rel_err)});
        }
    }
    write_output(co, "dirac-solve", config_hash("dirac-solve", cfg, co.seed),
                 "natural units (c=1); t cosmological time; spinor components dimensionless", table);
    return worst <= co.gate ? 0 : 4;
}

// --------------------------------------------------------------- fundsol ---

int run_fundsol(Config& cfg, const CommonOpts& co) {
    cfg.set_default("H", "1.0");
    cfg.set_default("m_re", "1.0");
    cfg.set_default("m_im", "0.0");
    cfg.set_default("t0", "0.3");
    cfg.set_default("x0", "0.0");
    cfg.set_default("branch", "retarded");
    cfg.set_default("tf_center", "0.6");
    cfg.set_default("tf_width", "4.0");
    cfg.set_default("tf_k", "0.0");
    for (int j = 0; j < 4; ++j) {
        cfg.set_default("amp" + std::to_string(j) + "_re", "1.0");
        cfg.set_default("amp" + std::to_string(j) + "_im", "0.0");
    }
    cfg.set_default("t_min", "0.0");
    cfg.set_default("t_max", "1.0");
    cfg.set_default("t_count", "5");
    if (!co.config_path.empty()) cfg.load_file(co.config_path);
    cfg.apply_overrides(co.sets);

    const double H = cfg.get_double("H");
    if (!(H > 0.0)) throw ConfigError("fundsol: H must be > 0");
    const cx m = cfg.get_cx("m");
    const double t0 = cfg.get_double("t0");
    const double x0 = cfg.get_double("x0");
    const std::string branch_name = cfg.get_string("branch");
    dsprop::Propagator branch;
    if (branch_name == "retarded")
        branch = dsprop::Propagator::Retarded;
    else if (branch_name == "advanced")
        branch = dsprop::Propagator::Advanced;
    else
        throw ConfigError("fundsol: branch must be retarded or advanced");

    const double c = cfg.get_double("tf_center");
    const double w = cfg.get_double("tf_width");
    const double k = cfg.get_double("tf_k");
    dsprop::SpinorTestFn1D tf;
    for (int j = 0; j < 4; ++j) {
        const cx amp = cfg.get_cx("amp" + std::to_string(j));
        tf.comp[static_cast<std::size_t>(j)].f = [amp, c, w, k](double x) {
            return amp * std::exp(cx(-w * (x - c) * (x - c), k * x));
        };
        tf.comp[static_cast<std::size_t>(j)].df = [amp, c, w, k](double x) {
            return amp * std::exp(cx(-w * (x - c) * (x - c), k * x)) * cx(-2.0 * w * (x - c), k);
        };
    }
    const auto ts = linspace(cfg.get_double("t_min"), cfg.get_double("t_max"), cfg.get_long("t_count"));

    const dsprop::QuadratureSpec q;
    Table table;
    table.columns = {"t", "comp", "re_act", "im_act"};
    for (const double t : ts) {
        const dsprop::SpinorValue act = dsprop::dirac_fundsol_action_1d(H, m, t, t0, x0, tf, branch, q);
        for (int j = 0; j < 4; ++j)
            table.rows.push_back({fmt17(t), std::to_string(j),
                                  fmt17(act[static_cast<std::size_t>(j)].real()),
                                  fmt17(act[static_cast<std::size_t>(j)].imag())});
    }
    write_output(co, "fundsol", config_hash("fundsol", cfg, co.seed),
                 "natural units (c=1); t,t0 cosmological time; x0 comoving position", table);
    return 0;
}

// -------------------------------------------------------------- limit-h0 ---

int run_limit_h0(Config& cfg, const CommonOpts& co) {
    cfg.set_default("m", "0.5");
    cfg.set_default("H_start", "0.02");
    cfg.set_default("halvings", "4");
    cfg.set_default("points", "10");
    if (!co.config_path.empty()) cfg.load_file(co.config_path);
    cfg.apply_overrides(co.sets);

    const double m = cfg.get_double("m");
    const double h_start = cfg.get_double("H_start");
    const long halvings = cfg.get_long("halvings");
    const long npts = cfg.get_long("points");
    if (!(h_start > 0.0) || halvings < 1 || npts < 1)
        throw ConfigError("limit-h0: H_start > 0, halvings >= 1, points >= 1 required");

    // Interior sample points (t, b, r) strictly inside the cone, fixed by seed.
    std::mt19937_64 rng(co.seed);
    std::uniform_real_distribution<double> u01(0.05, 0.95);
    std::vector<std::array<double, 3>> pts;
    for (long i = 0; i < npts; ++i) {
        const double t = 0.4 + 0.8 * u01(rng);
        const double b = t * 0.6 * u01(rng);
        const double r = 0.85 * (t - b) * u01(rng);
        pts.push_back({t, b, r});
    }

    Table table;
    table.columns = {"H", "max_abs_2E_minus_I0", "ratio_to_prev"};
    double prev = 0.0;
    double h = h_start;
    for (long step = 0; step < halvings; ++step, h /= 2.0) {
        double worst = 0.0;
        for (const auto& [t, b, r] : pts)
            worst = std::max(worst, dsprop::limit_check_E_to_I0(h, m, t, b, r));
        std::vector<std::string> row{fmt17(h), fmt17(worst)};
        row.push_back(step == 0 ? std::string() : fmt17(prev / worst));
        prev = worst;
        table.rows.push_back(std::move(row));
    }
    write_output(co, "limit-h0", config_hash("limit-h0", cfg, co.seed),
                 "natural units (c=1); H expansion rate; first difference column shrinks ~ linearly in H",
                 table);
    return 0;
}

// ---------------------------------------------------------------- verify ---

struct CheckResult {
    std::string name;
    double max_residual = 0.0;
    double threshold = 0.0;
};

dsprop::TestFunction random_test_function(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    std::uniform_int_distribution<int> pw(0, 2);
    dsprop::TestFunction tf;
    tf.profile.lambda = cx(u(rng), u(rng));
    for (int i = 0; i < 3; ++i) {
        tf.profile.alpha[static_cast<std::size_t>(i)] = cx(u(rng), u(rng));
        tf.profile.beta[static_cast<std::size_t>(i)] = cx(0.2 * u(rng), 0.2 * u(rng));
        tf.profile.power[static_cast<std::size_t>(i)] = pw(rng);
    }
    for (int j = 0; j < 4; ++j) tf.amplitude[static_cast<std::size_t>(j)] = cx(u(rng), u(rng));
    return tf;
}

dsprop::Coord random_point(std::mt19937_64& rng, dsprop::ChartId id) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double t = -0.4 + 1.0 * u(rng);
    switch (id) {
    case dsprop::ChartId::Cylindrical:
        return {t, 0.5 + 1.3 * u(rng), 0.2 + 2.7 * u(rng), -0.8 + 1.6 * u(rng)};
    case dsprop::ChartId::Spherical:
        return {t, 0.6 + 1.3 * u(rng), 0.4 + 2.3 * u(rng), 0.2 + 2.7 * u(rng)};
    default:
        return {t, -0.8 + 1.6 * u(rng), -0.8 + 1.6 * u(rng), -0.8 + 1.6 * u(rng)};
    }
}

int run_verify(Config& cfg, const CommonOpts& co) {
    cfg.set_default("functions", "20");
    cfg.set_default("points", "10");
    if (!co.config_path.empty()) cfg.load_file(co.config_path);
    cfg.apply_overrides(co.sets);
    const long nfun = cfg.get_long("functions");
    const long npts = cfg.get_long("points");
    if (nfun < 1 || npts < 1) throw ConfigError("verify: functions >= 1 and points >= 1 required");

    std::vector<CheckResult> results;

    // Gamma anticommutators, optionally with an injected defect to prove the
    // check can fail.
    {
        dsprop::GammaBasis g = dsprop::standard_basis();
        if (co.inject_gamma_defect) g.g2(2, 1) += cx(0.5, 0.0);
        double worst = 0.0;
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                const dsprop::Matrix4 want =
                    dsprop::Matrix4::identity() * cx(2.0 * dsprop::minkowski_eta(mu, nu), 0.0);
                worst = std::max(
                    worst, (dsprop::anticommutator(g.gamma(mu), g.gamma(nu)) - want).max_abs());
            }
        results.push_back({"gamma_anticommutators", worst, 0.0});
    }

    // Closed-form K0 against a central difference of the emission-time slot.
    {
        const double h = 1e-5;
        double worst = 0.0;
        for (const cx M : {cx(0.5, 0.0), cx(0.5, 1.0), cx(0.5, -1.0), cx(2.0, 0.0)}) {
            dsprop::KernelParams p;
            p.H = 1.0;
            p.M = M;
            for (const double t : {0.5, 0.9, 1.3}) {
                for (const double frac : {0.25, 0.5, 0.75}) {
                    const double r = frac * dsprop::phi(p.H, t);
                    const cx fd = -(dsprop::kernel_E(p, r, t, h) - dsprop::kernel_E(p, r, t, -h)) /
                                  (2.0 * h);
                    worst = std::max(worst, std::abs(dsprop::kernel_K0(p, r, t) - fd));
                }
            }
        }
        results.push_back({"kernel_k0_matches_dE", worst, 1e-5});
    }

    // Massless collapse of the kernel to its boundary value.
    {
        dsprop::KernelParams p;
        p.H = 1.0;
        p.M = cx(0.5, 0.0);
        double worst = 0.0;
        for (const double t : {0.4, 0.8, 1.2}) {
            for (const double t0 : {0.0, 0.2}) {
                const double len = std::abs(dsprop::phi(p.H, t) - dsprop::phi(p.H, t0));
                for (const double frac : {0.2, 0.5, 0.8}) {
                    const cx want = 0.5 * std::exp(0.5 * p.H * (t + t0));
                    worst = std::max(
                        worst, std::abs(dsprop::kernel_E(p, frac * len, t, t0) - want));
                }
            }
        }
        results.push_back({"massless_collapse", worst, 1e-12});
    }

    // Factorization identity suite over random test functions and points.
    {
        std::mt19937_64 rng(co.seed);
        std::uniform_real_distribution<double> u(-0.7, 0.7);
        const dsprop::Chart cart = dsprop::make_chart(dsprop::ChartId::Cartesian);
        const dsprop::Chart var = dsprop::make_chart(dsprop::ChartId::Variable);
        const dsprop::Chart sph = dsprop::make_chart(dsprop::ChartId::Spherical);
        double worst_gen = 0.0, worst_box = 0.0, worst_mm = 0.0;
        for (long f = 0; f < nfun; ++f) {
            const dsprop::TestFunction tf = random_test_function(rng);
            const cx a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng));
            const cx m(u(rng), u(rng));
            const double H = 0.4 + 0.8 * std::abs(u(rng));
            for (long k = 0; k < npts; ++k) {
                const dsprop::Coord pc = random_point(rng, dsprop::ChartId::Cartesian);
                const dsprop::Coord ps = random_point(rng, dsprop::ChartId::Spherical);
                worst_gen = std::max(worst_gen,
                                     dsprop::check_general_factorization(a, b, c, H, m, cart, tf, pc));
                worst_gen = std::max(worst_gen,
                                     dsprop::check_general_factorization(a, b, c, H, m, var, tf, pc));
                worst_gen = std::max(worst_gen,
                                     dsprop::check_general_factorization(a, b, c, H, m, sph, tf, ps));
                // the three named parameter specializations
                worst_gen = std::max(worst_gen, dsprop::check_general_factorization(
                                                    cx(0), cx(1), cx(0), H, cx(0), cart, tf, pc));
                worst_gen = std::max(worst_gen, dsprop::check_general_factorization(
                                                    cx(1), cx(3), cx(2), H, m, cart, tf, pc));
                worst_gen = std::max(worst_gen, dsprop::check_general_factorization(
                                                    cx(-0.5), cx(3), cx(5), H, m, cart, tf, pc));
                worst_box = std::max(worst_box, dsprop::check_spinor_box_identity(H, cart, tf, pc));
                worst_box = std::max(worst_box, dsprop::check_spinor_box_identity(H, sph, tf, ps));
                worst_mm = std::max(worst_mm, dsprop::check_matrix_mass_factorization(H, m, tf, pc));
            }
        }
        results.push_back({"general_factorization", worst_gen, 1e-8});
        results.push_back({"spinor_box_identity", worst_box, 1e-8});
        results.push_back({"matrix_mass_factorization", worst_mm, 1e-8});
    }

    // Clifford squares of all named coefficient examples.
    {
        std::mt19937_64 rng(co.seed + 1);
        double worst = 0.0;
        for (const dsprop::ChartId id :
             {dsprop::ChartId::Cartesian, dsprop::ChartId::Variable, dsprop::ChartId::Cylindrical,
              dsprop::ChartId::Spherical, dsprop::ChartId::EmPotential}) {
            for (long k = 0; k < npts; ++k)
                worst = std::max(worst, dsprop::check_clifford_square(id, random_point(rng, id)));
        }
        results.push_back({"clifford_square_examples", worst, 1e-8});
    }

    // Spherical frame anticommutators at random angles.
    {
        std::mt19937_64 rng(co.seed + 2);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        for (long k = 0; k < npts; ++k)
            worst = std::max(worst, dsprop::check_tetrad_anticommutators(
                                        {0.5 + u(rng), 0.3 + 2.5 * u(rng), 0.2 + 2.8 * u(rng)}));
        results.push_back({"tetrad_anticommutators", worst, 1e-12});
    }

    // Flat-limit bridge: |2E - I0| must halve when H halves.
    {
        std::mt19937_64 rng(co.seed + 3);
        std::uniform_real_distribution<double> u01(0.05, 0.95);
        double worst = 0.0;
        for (long k = 0; k < npts; ++k) {
            const double t = 0.4 + 0.8 * u01(rng);
            const double b = t * 0.6 * u01(rng);
            const double r = 0.85 * (t - b) * u01(rng);
            const double d1 = dsprop::limit_check_E_to_I0(1e-2, 0.5, t, b, r);
            const double d2 = dsprop::limit_check_E_to_I0(5e-3, 0.5, t, b, r);
            worst = std::max(worst, std::abs(d1 / d2 - 2.0));
        }
        results.push_back({"flat_limit_bridge", worst, 0.3});
    }

    bool all_pass = true;
    json checks = json::array();
    for (const auto& r : results) {
        const bool pass = r.max_residual <= r.threshold;
        all_pass = all_pass && pass;
        checks.push_back(
            {{"check", r.name}, {"max_residual", r.max_residual}, {"threshold", r.threshold}, {"pass", pass}});
    }
    json report;
    report["command"] = "verify";
    report["config_hash"] = config_hash("verify", cfg, co.seed);
    report["seed"] = co.seed;
    report["checks"] = std::move(checks);
    report["pass"] = all_pass;

    const std::string body = report.dump(2) + "\n";
    if (co.out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(co.out_path, std::ios::binary);
        if (!out) throw ConfigError("cannot open output file: " + co.out_path);
        out << body;
    }
    return all_pass ? 0 : 5;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dsprop: integral-transform propagators for the expanding-spacetime Dirac and "
                 "Klein-Gordon equations"};
    app.require_subcommand(1);

    CommonOpts co;
    const auto add_common = [&co](CLI::App* sub) {
        sub->add_option("--config", co.config_path, "key = value parameter file");
        sub->add_option("--set", co.sets, "override one key (key=value); repeatable");
        sub->add_option("--out", co.out_path, "output path (default: stdout)");
        sub->add_option("--format", co.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", co.seed, "seed for randomized suites and sample points");
        sub->add_option("--gate", co.gate, "largest allowed rel_err before exit code 4");
    };

    CLI::App* cmd_kernel = app.add_subcommand("kernel", "tabulate E / K0 / K1 on an (r, t) grid");
    CLI::App* cmd_kg = app.add_subcommand("kg-solve", "Klein-Gordon mode solve with oracle columns");
    CLI::App* cmd_dirac = app.add_subcommand("dirac-solve", "Dirac mode solve with oracle columns");
    CLI::App* cmd_fundsol =
        app.add_subcommand("fundsol", "action of the 1d fundamental solution on a test function");
    CLI::App* cmd_limit = app.add_subcommand("limit-h0", "flat-space limit study of the kernels");
    CLI::App* cmd_verify = app.add_subcommand("verify", "run the invariant suite, emit a JSON report");
    for (CLI::App* sub : {cmd_kernel, cmd_kg, cmd_dirac, cmd_fundsol, cmd_limit, cmd_verify})
        add_common(sub);
    cmd_verify->add_flag("--inject-gamma-defect", co.inject_gamma_defect)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Config cfg;
        if (cmd_kernel->parsed()) return run_kernel(cfg, co);
        if (cmd_kg->parsed()) return run_kg_solve(cfg, co);
        if (cmd_dirac->parsed()) return run_dirac_solve(cfg, co);
        if (cmd_fundsol->parsed()) return run_fundsol(cfg, co);
        if (cmd_limit->parsed()) return run_limit_h0(cfg, co);
        if (cmd_verify->parsed()) return run_verify(cfg, co);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const dsprop::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
