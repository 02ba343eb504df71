#include "fbh/carleman.hpp"
#include "fbh/errors.hpp"
#include "fbh/fraclap.hpp"
#include "fbh/fracbackheat.hpp"
#include "fbh/lifting.hpp"
#include "fbh/report.hpp"
#include "fbh/testfn.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

struct Options {
    std::string command;
    std::string config_path;
    std::string out_dir = ".";
    bool strict = false;
    int jobs = 1;
    std::string format = "csv";
};

// ----- flat INI config ------------------------------------------------------

using Config = std::map<std::string, std::map<std::string, std::string>>;

const std::map<std::string, std::set<std::string>> known_keys = {
    {"constants", {"s", "eta", "d", "n"}},
    {"xcheck", {"space_functions", "functions", "s", "probes", "tolerance"}},
    {"lift_converge", {"function", "s", "n_list", "probes"}},
    {"verify_carleman", {"functions", "thm2_function", "s", "eta", "thm2_eta", "p", "d"}},
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

Config parse_config(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            if (!known_keys.count(section))
                throw fbh::config_error("unknown config section: " + section);
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos || section.empty())
            throw fbh::config_error("malformed config line " + std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        if (!known_keys.at(section).count(key))
            throw fbh::config_error("unknown config key: " + section + "." + key);
        cfg[section][key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> double_list(const Config& cfg, const std::string& sec,
                                const std::string& key, std::vector<double> dflt) {
    auto s = cfg.count(sec) && cfg.at(sec).count(key) ? cfg.at(sec).at(key) : "";
    if (s.empty()) return dflt;
    std::vector<double> out;
    for (const auto& tok : split_list(s)) {
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw fbh::config_error("bad number in " + sec + "." + key + ": " + tok);
        }
    }
    if (out.empty()) throw fbh::config_error("empty list for " + sec + "." + key);
    return out;
}

std::vector<std::string> string_list(const Config& cfg, const std::string& sec,
                                     const std::string& key,
                                     std::vector<std::string> dflt) {
    auto s = cfg.count(sec) && cfg.at(sec).count(key) ? cfg.at(sec).at(key) : "";
    if (s.empty()) return dflt;
    return split_list(s);
}

// ----- output helpers -------------------------------------------------------

std::string fmt(double v) { return fbh::report::format_double(v); }

void emit(const Options& opt, const std::string& stem,
          const std::vector<std::string>& csv_lines, const json& summary,
          const std::string& config_text) {
    auto lines = fbh::report::provenance(config_text);
    lines.insert(lines.end(), csv_lines.begin(), csv_lines.end());
    if (opt.format == "csv" || opt.format == "both")
        fbh::report::write_file(opt.out_dir + "/" + stem + ".csv", lines);
    if (opt.format == "json" || opt.format == "both")
        fbh::report::write_file(opt.out_dir + "/" + stem + ".json", {summary.dump(2)});
}

// ----- commands -------------------------------------------------------------

int cmd_constants(const Options& opt, const Config& cfg, const std::string& cfg_text) {
    auto s_list = double_list(cfg, "constants", "s", {0.25, 0.5, 0.75});
    auto eta_list = double_list(cfg, "constants", "eta", {0.3, 0.7, 0.9, 1.3, 1.7, 2.1});
    int d = static_cast<int>(double_list(cfg, "constants", "d", {1})[0]);
    int n = static_cast<int>(double_list(cfg, "constants", "n", {3})[0]);

    std::vector<std::string> rows;
    rows.push_back("name,n_or_d,s,eta,theta,p,j0,j1,value,sign");
    json cells = json::array();
    bool pole_hit = false;
    for (double s : s_list) {
        for (double eta : eta_list) {
            struct Entry {
                std::string name;
                int n_or_d;
                double theta, p;
            };
            double theta = n - 2.0 * eta - 2.0 * s;
            std::vector<Entry> entries = {
                {"eilertsen", n, 0.0, 2.0},
                {"thm1", d, 0.0, 2.0},
                {"denitti", n, theta, 2.0},
                {"thm2_paper", d, 0.0, 2.0},
                {"thm2_derived", d, 0.0, 2.0},
            };
            for (const auto& e : entries) {
                int j0 = -1, j1 = -1;
                double value = std::nan("");
                double sign = 0.0;
                try {
                    if (e.name == "eilertsen") {
                        j0 = fbh::carleman::j0_smallest(n - d, d, s, eta);
                        value = fbh::carleman::constant_eilertsen(n, s, eta);
                        sign = 1.0;
                    } else if (e.name == "thm1") {
                        j1 = fbh::carleman::j1_smallest(s, eta);
                        value = fbh::carleman::constant_thm1(s, eta);
                        sign = 1.0;
                    } else if (e.name == "denitti") {
                        value = fbh::carleman::constant_denitti(n, s, e.theta, e.p);
                        sign = value >= 0.0 ? 1.0 : -1.0;
                    } else if (e.name == "thm2_paper") {
                        auto v = fbh::carleman::constant_thm2_paper(d, eta, s);
                        value = v.get();
                        sign = v.value;
                    } else {
                        value = fbh::carleman::constant_thm2_derived(d, eta, s);
                        sign = value >= 0.0 ? 1.0 : -1.0;
                    }
                } catch (const fbh::pole_error&) {
                    pole_hit = true;
                } catch (const fbh::domain_error&) {
                    // parameter cell outside the constant's domain: NaN row,
                    // but not a pole (strict mode stays green)
                }
                std::ostringstream row;
                row << e.name << ',' << e.n_or_d << ',' << fmt(s) << ',' << fmt(eta)
                    << ',' << fmt(e.theta) << ',' << fmt(e.p) << ',' << j0 << ','
                    << j1 << ',' << fmt(value) << ',' << fmt(sign);
                rows.push_back(row.str());
                cells.push_back({{"name", e.name}, {"s", s}, {"eta", eta},
                                 {"value", value}, {"sign", sign},
                                 {"pole", !std::isfinite(value)}});
            }
        }
    }
    json summary = {{"command", "constants"}, {"cells", cells},
                    {"pole_hit", pole_hit}};
    emit(opt, "constants", rows, summary, cfg_text);
    if (pole_hit && opt.strict) return 3;
    return 0;
}

int cmd_xcheck(const Options& opt, const Config& cfg, const std::string& cfg_text) {
    auto space_ids = string_list(cfg, "xcheck", "space_functions", {"sgauss-a1", "sbump-R3"});
    auto st_ids = string_list(cfg, "xcheck", "functions",
                              {"gauss-a1-b1-t4", "bump-R2-tc2-tw1"});
    auto s_list = double_list(cfg, "xcheck", "s", {0.25, 0.5, 0.75});
    int nprobe = static_cast<int>(double_list(cfg, "xcheck", "probes", {6})[0]);
    double tol = double_list(cfg, "xcheck", "tolerance", {1e-3})[0];

    std::vector<std::string> rows;
    rows.push_back("method_pair,fn_id,s,probe,rel_diff");
    json cells = json::array();
    bool ok = true;
    auto record = [&](const std::string& pair, const std::string& id, double s,
                      double x, double rd) {
        std::ostringstream row;
        row << pair << ',' << id << ',' << fmt(s) << ',' << fmt(x) << ',' << fmt(rd);
        rows.push_back(row.str());
        cells.push_back({{"pair", pair}, {"fn", id}, {"s", s}, {"probe", x},
                         {"rel_diff", rd}});
        if (rd > tol) ok = false;
    };

    for (const auto& id : space_ids) {
        auto f = fbh::testfn::space_by_id(id);
        for (double s : s_list) {
            auto field = fbh::fraclap::fraclap_fourier(f, s);
            std::vector<double> xs, fv, sv, pv;
            double scale = 0.0;
            for (int i = 0; i < nprobe; ++i) {
                double x = -2.0 + 4.5 * i / std::max(1, nprobe - 1);
                xs.push_back(x);
                fv.push_back(field.value_at(x));
                sv.push_back(fbh::fraclap::fraclap_subordination(f, s, x).value);
                pv.push_back(fbh::fraclap::fraclap_pv(f, s, x).value);
                scale = std::max(scale, std::abs(fv.back()));
            }
            for (int i = 0; i < nprobe; ++i) {
                record("fourier/subordination", id, s, xs[i],
                       std::abs(fv[i] - sv[i]) / scale);
                record("fourier/pv", id, s, xs[i], std::abs(fv[i] - pv[i]) / scale);
                record("subordination/pv", id, s, xs[i],
                       std::abs(sv[i] - pv[i]) / scale);
            }
        }
    }
    for (const auto& id : st_ids) {
        auto u = fbh::testfn::by_id(id);
        for (double s : s_list) {
            auto field = fbh::fracbackheat::fbh_fourier(u, s, fbh::fracbackheat::grid_for(u));
            std::vector<double> xs, ts, fv, sv;
            double scale = 0.0;
            for (int i = 0; i < nprobe; ++i) {
                double x = -1.0 + 2.0 * i / std::max(1, nprobe - 1);
                double t = 1.5 + 3.0 * i / std::max(1, nprobe - 1);
                xs.push_back(x);
                ts.push_back(t);
                fv.push_back(field.value_at(x, t));
                sv.push_back(fbh::fracbackheat::fbh_subordination(u, s, x, t));
                scale = std::max(scale, std::abs(fv.back()));
            }
            for (int i = 0; i < nprobe; ++i)
                record("fbh_fourier/fbh_subordination", id, s, xs[i],
                       std::abs(fv[i] - sv[i]) / scale);
        }
    }
    json summary = {{"command", "xcheck"}, {"tolerance", tol}, {"pass", ok},
                    {"cells", cells}};
    emit(opt, "xcheck", rows, summary, cfg_text);
    return ok ? 0 : 1;
}

int cmd_lift_converge(const Options& opt, const Config& cfg,
                      const std::string& cfg_text) {
    auto id = string_list(cfg, "lift_converge", "function", {"gauss-a1-b1-t4"})[0];
    double s = double_list(cfg, "lift_converge", "s", {0.5})[0];
    auto n_raw = double_list(cfg, "lift_converge", "n_list", {8, 32, 128, 512});
    std::vector<int> Ns(n_raw.begin(), n_raw.end());
    auto probe_raw = double_list(cfg, "lift_converge", "probes",
                                 {0.0, 3.0, 0.5, 4.0, -0.5, 3.5, 0.3, 4.5, 0.0, 5.0});
    if (probe_raw.size() % 2 != 0)
        throw fbh::config_error("lift_converge.probes must list x,t pairs");
    std::vector<std::array<double, 2>> probes;
    for (size_t i = 0; i + 1 < probe_raw.size(); i += 2)
        probes.push_back({probe_raw[i], probe_raw[i + 1]});

    auto u = fbh::testfn::by_id(id);
    auto table = fbh::lifting::convergence_study(u, s, Ns, probes);

    std::vector<std::string> rows;
    rows.push_back("N,x,t,G_N,limit,abs_err");
    json cells = json::array();
    for (const auto& r : table.rows) {
        std::ostringstream row;
        row << r.N << ',' << fmt(r.x) << ',' << fmt(r.t) << ',' << fmt(r.gn) << ','
            << fmt(r.limit) << ',' << fmt(r.abs_err);
        rows.push_back(row.str());
        cells.push_back({{"N", r.N}, {"x", r.x}, {"t", r.t}, {"gn", r.gn},
                         {"limit", r.limit}, {"abs_err", r.abs_err}});
    }

    // properties: mean error per N nonincreasing up to noise; final <= 1e-2
    bool ok = true;
    std::vector<double> mean_err(Ns.size(), 0.0);
    for (size_t k = 0; k < Ns.size(); ++k) {
        for (const auto& r : table.rows)
            if (r.N == Ns[k]) mean_err[k] += r.abs_err;
        mean_err[k] /= static_cast<double>(probes.size());
        if (k > 0 && mean_err[k] > mean_err[k - 1] + 2e-4) ok = false;
    }
    if (mean_err.back() > 1e-2) ok = false;

    json summary = {{"command", "lift-converge"}, {"empirical_order", table.empirical_order},
                    {"pass", ok}, {"cells", cells}};
    emit(opt, "lift_converge", rows, summary, cfg_text);
    return ok ? 0 : 1;
}

int cmd_verify_carleman(const Options& opt, const Config& cfg,
                        const std::string& cfg_text) {
    auto fn_ids = string_list(cfg, "verify_carleman", "functions",
                              {"gauss-a1-b1-t4", "bump-R2-tc2-tw1"});
    auto thm2_id = string_list(cfg, "verify_carleman", "thm2_function",
                               {"bump-R2-tc2-tw1"})[0];
    auto s_list = double_list(cfg, "verify_carleman", "s", {0.25, 0.5, 0.75});
    auto eta_list = double_list(cfg, "verify_carleman", "eta",
                                {0.3, 0.7, 0.9, 1.3, 1.7, 2.1});
    auto eta2_list = double_list(cfg, "verify_carleman", "thm2_eta", {0.1, 0.25, 0.4});
    auto p_list = double_list(cfg, "verify_carleman", "p", {1.5, 2.0, 3.0});
    int d = static_cast<int>(double_list(cfg, "verify_carleman", "d", {1})[0]);

    std::vector<std::string> rows;
    rows.push_back("variant,fn_id,d,s,eta,p,lhs,rhs,constant_id,constant,ratio,quad_err");
    json cells = json::array();
    bool ok = true;

    auto add_row = [&](const fbh::carleman::CarlemanReport& r,
                       const std::string& constant_id, double constant, double ratio) {
        std::ostringstream row;
        row << (r.variant == fbh::carleman::Variant::thm1_L2 ? "thm1_L2" : "thm2_Lp")
            << ',' << r.fn_id << ',' << r.params.d << ',' << fmt(r.params.s) << ','
            << fmt(r.params.eta) << ',' << fmt(r.params.p) << ',' << fmt(r.lhs) << ','
            << fmt(r.rhs) << ',' << constant_id << ',' << fmt(constant) << ','
            << fmt(ratio) << ',' << fmt(r.quadrature_error);
        rows.push_back(row.str());
        cells.push_back({{"variant", constant_id == "thm1" ? "thm1_L2" : "thm2_Lp"},
                         {"fn", r.fn_id}, {"s", r.params.s}, {"eta", r.params.eta},
                         {"p", r.params.p}, {"constant_id", constant_id},
                         {"ratio", ratio}, {"quad_err", r.quadrature_error}});
    };

    for (const auto& id : fn_ids) {
        auto u = fbh::testfn::by_id(id);
        for (double s : s_list) {
            for (double eta : eta_list) {
                fbh::carleman::FracParams params{s, eta, 2.0, d, 0};
                auto rep = fbh::carleman::verify_carleman(
                    u, params, fbh::carleman::Variant::thm1_L2);
                add_row(rep, "thm1", rep.constant, rep.ratio);
                if (rep.ratio > 1.0 + rep.quadrature_error) ok = false;
            }
        }
    }
    auto u2 = fbh::testfn::by_id(thm2_id);
    for (double eta : eta2_list) {
        for (double p : p_list) {
            fbh::carleman::FracParams params{0.5, eta, p, d, 0};
            auto rep = fbh::carleman::verify_carleman(u2, params,
                                                      fbh::carleman::Variant::thm2_Lp);
            add_row(rep, "thm2_derived", rep.constant, rep.ratio);
            add_row(rep, "thm2_paper", rep.constant_paper, rep.ratio_paper);
            if (rep.ratio > 1.0 + rep.quadrature_error) ok = false;
        }
    }

    json summary = {{"command", "verify-carleman"}, {"pass", ok}, {"cells", cells}};
    emit(opt, "verify_carleman", rows, summary, cfg_text);
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"Fractional backward heat operator toolkit"};
    app.add_option("command", opt.command, "constants | xcheck | lift-converge | verify-carleman")
        ->required();
    app.add_option("--config", opt.config_path, "config file (flat INI)");
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_flag("--strict", opt.strict, "treat flagged rows as errors");
    app.add_option("--jobs", opt.jobs, "worker count (reserved; runs are sequential)");
    app.add_option("--format", opt.format, "csv | json | both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    CLI11_PARSE(app, argc, argv);

    if (const char* env = std::getenv("OUTPUT_DIR")) opt.out_dir = env;

    try {
        std::string cfg_text;
        if (!opt.config_path.empty()) {
            std::ifstream in(opt.config_path);
            if (!in) throw fbh::config_error("cannot read config: " + opt.config_path);
            std::ostringstream ss;
            ss << in.rdbuf();
            cfg_text = ss.str();
        }
        Config cfg = parse_config(cfg_text);

        if (opt.command == "constants") return cmd_constants(opt, cfg, cfg_text);
        if (opt.command == "xcheck") return cmd_xcheck(opt, cfg, cfg_text);
        if (opt.command == "lift-converge") return cmd_lift_converge(opt, cfg, cfg_text);
        if (opt.command == "verify-carleman")
            return cmd_verify_carleman(opt, cfg, cfg_text);
        throw fbh::config_error("unknown command: " + opt.command);
    } catch (const fbh::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const fbh::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
