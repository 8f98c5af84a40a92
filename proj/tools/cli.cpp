#include "cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "expr.hpp"
#include "lgate/admissibility.hpp"
#include "lgate/catalog.hpp"
#include "lgate/forward.hpp"
#include "lgate/hypersingular.hpp"
#include "lgate/inversion.hpp"

namespace lgate::cli {
namespace {

using Json = nlohmann::ordered_json;

std::string shortest(double x) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    (void)ec;
    return std::string(buf.data(), ptr);
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json report_json(const AdmissibilityReport& r) {
    Json semicircle = Json::array();
    for (const auto& [radius, m] : r.semicircle_max) semicircle.push_back({radius, m});
    Json loops = Json::array();
    for (const auto& l : r.loops) {
        loops.push_back({{"rect", {l.rect.s1, l.rect.s2, l.rect.eta1, l.rect.eta2}},
                         {"integral", complex_json(l.integral)},
                         {"residual", l.residual},
                         {"reliable", l.reliable}});
    }
    Json j;
    j["b_hat"] = r.b_hat;
    j["c_hat"] = r.c_hat;
    j["fit_residual"] = r.fit_residual;
    j["semicircle_max"] = semicircle;
    j["growth_C_hat"] = r.growth_C_hat ? Json(*r.growth_C_hat) : Json(nullptr);
    j["loop_residuals"] = r.loop_residuals;
    j["verdict"] = to_string(r.verdict);
    j["failed_conditions"] = r.failed_conditions;
    j["inconclusive_conditions"] = r.inconclusive_conditions;
    j["loops"] = loops;
    j["diagnostics"] = r.diagnostics;
    return j;
}

Json inversion_json(const InversionResult& inv) {
    Json j;
    j["H"] = inv.truncation.H;
    j["achieved_tol"] = inv.truncation.achieved_tol;
    j["capped"] = inv.truncation.capped;
    j["quadrature_error"] = inv.quadrature_error;
    j["max_level"] = inv.max_level;
    j["node_count"] = inv.node_count;
    j["points"] = inv.signal.size();
    j["sup_estimate"] = inv.signal.sup_estimate;
    j["low_confidence"] = inv.signal.low_confidence;
    return j;
}

Json verification_json(const VerificationRecord& v) {
    Json table = Json::array();
    for (const auto& [N, I] : v.in_table) table.push_back({{"N", N}, {"I_N", complex_json(I)}, {"abs", std::abs(I)}});
    Json j;
    j["sup_estimate"] = v.sup_estimate;
    j["bounded"] = v.bounded;
    j["f0"] = v.f0;
    j["f0_limit"] = v.f0_limit;
    j["f0_pass"] = v.f0_pass;
    j["negative_t"] = default_negative_t_grid;
    j["negative_max"] = v.negative_max;
    j["negative_pass"] = v.negative_pass;
    j["I_N"] = table;
    j["I_N_slope"] = v.in_slope;
    j["I_N_pass"] = v.in_pass;
    j["all_pass"] = v.all_pass;
    return j;
}

struct Common {
    double tol = InversionSettings{}.tol;
    std::uint64_t seed = ProbeSettings{}.seed;
    double eta_max = ProbeSettings{}.eta_max;
    double h_max = InversionSettings{}.H_max;
    std::string json_path;
    std::string out_path;
    bool force = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--tol", tol, "target absolute error of the inverted signal")->capture_default_str();
        cmd->add_option("--seed", seed, "seed for the random analyticity loops")->capture_default_str();
        cmd->add_option("--eta-max", eta_max, "upper end of the decay-fit window")->capture_default_str();
        cmd->add_option("--h-max", h_max, "cap on the truncation frequency H")->capture_default_str();
        cmd->add_option("--json", json_path, "write the JSON report to this file ('-' for stdout)");
        cmd->add_option("--out", out_path, "write the CSV signal to this file instead of stdout");
        cmd->add_flag("--force", force, "invert even when the transform is not judged admissible");
    }

    ProbeSettings probe() const {
        ProbeSettings p;
        p.seed = seed;
        p.eta_max = eta_max;
        p.validate();
        return p;
    }

    InversionSettings inversion() const {
        InversionSettings s;
        s.tol = tol;
        s.H_max = h_max;
        s.validate();
        return s;
    }

    Json settings_json(const ProbeSettings& p, const InversionSettings& s) const {
        Json j;
        j["tol"] = s.tol;
        j["h_max"] = s.H_max;
        j["points_per_period"] = s.points_per_period;
        j["refine_limit"] = s.refine_limit;
        j["seed"] = p.seed;
        j["eta_min"] = p.eta_min;
        j["eta_max"] = p.eta_max;
        j["n_samples"] = p.n_samples;
        j["b_margin"] = p.b_margin;
        j["loop_count"] = p.loop_count;
        j["loop_threshold"] = p.loop_threshold;
        j["force"] = force;
        return j;
    }
};

Json envelope(const std::string& command, Json settings) {
    Json j;
    j["tool_version"] = tool_version;
    j["command"] = command;
    j["settings"] = std::move(settings);
    j["report"] = nullptr;
    j["signals"] = Json::object();
    j["residuals"] = Json::array();
    j["verdict"] = nullptr;
    return j;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    file << text;
    if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::admissible: return exit_ok;
        case Verdict::inadmissible: return exit_inadmissible;
        case Verdict::inconclusive: return exit_inconclusive;
    }
    return exit_error;
}

void print_parse_error(const ParseError& e, const std::string& text, std::ostream& err) {
    err << "error: " << e.what() << "\n  " << text << "\n  " << std::string(e.offset(), ' ') << "^\n";
}

// --- commands ---------------------------------------------------------------

int cmd_check(const Common& c, const std::string& text, std::ostream& out) {
    const auto F = transform_from_expr(parse_expr(text, "p"), text);
    const auto probe = c.probe();
    const auto inv = c.inversion();
    const auto report = assess(F, probe);
    Json settings = c.settings_json(probe, inv);
    settings["F"] = text;
    Json j = envelope("check", settings);
    j["report"] = report_json(report);
    j["verdict"] = to_string(report.verdict);
    const std::string body = dump(j);
    out << body;
    if (!c.json_path.empty() && c.json_path != "-") write_text(c.json_path, body, out);
    return verdict_exit(report.verdict);
}

int cmd_invert(const Common& c, const std::string& text, const std::string& t_text, std::ostream& out,
               std::ostream& err) {
    const auto F = transform_from_expr(parse_expr(text, "p"), text);
    const auto grid = parse_t_range(t_text);
    const auto probe = c.probe();
    const auto settings = c.inversion();
    const auto report = assess(F, probe);
    if (report.verdict != Verdict::admissible && !c.force) {
        err << "refused: transform judged " << to_string(report.verdict);
        for (const auto& f : report.failed_conditions) err << " [failed " << f << "]";
        for (const auto& f : report.inconclusive_conditions) err << " [inconclusive " << f << "]";
        err << "; rerun with --force to invert anyway\n";
        return verdict_exit(report.verdict);
    }
    const auto result = invert(F, grid, settings, report, c.force);
    const auto checks =
        verify_conclusions(F, result, default_negative_t_grid, settings, report, c.force);

    Json s = c.settings_json(probe, settings);
    s["F"] = text;
    s["t"] = t_text;
    Json j = envelope("invert", s);
    j["report"] = report_json(report);
    j["signals"]["f"] = inversion_json(result);
    j["signals"]["checks"] = verification_json(checks);
    j["verdict"] = to_string(report.verdict);

    write_text(c.out_path, format_csv(result.signal), out);
    std::string sidecar = c.json_path;
    if (sidecar.empty() && !c.out_path.empty()) sidecar = c.out_path + ".json";
    if (!sidecar.empty()) write_text(sidecar, dump(j), out);
    if (result.signal.low_confidence) err << "warning: signal is low-confidence (see the JSON sidecar)\n";
    return exit_ok;
}

struct SolveInput {
    std::string f_text;
    std::string csv_path;
    std::string tail_text;
    double lambda = 0.0;
    std::string t_text = "0:10:0.05";
    double residual_tol = SolveSettings{}.residual_tol;
};

int cmd_solve(const Common& c, const SolveInput& in, std::ostream& out, std::ostream& err) {
    if (in.f_text.empty() == in.csv_path.empty()) {
        throw CLI::ValidationError("solve", "give exactly one of --f and --f-csv");
    }
    TransformFunction F_f;
    std::optional<TimeFunction> f_closed;
    Json source;
    if (!in.f_text.empty()) {
        const auto terms = as_exp_polynomial(*parse_expr(in.f_text, "t"));
        if (!terms) {
            throw std::invalid_argument(
                "--f must be a sum of c*t^nu*exp(-a*t) terms; sample other inputs and pass --f-csv with --tail");
        }
        auto input = laplace_of_exp_polynomial(*terms, in.f_text);
        F_f = input.F;
        f_closed = input.f;
        source["f"] = in.f_text;
    } else {
        if (in.tail_text.empty()) throw CLI::ValidationError("solve", "--f-csv requires --tail");
        std::ifstream file(in.csv_path);
        if (!file) throw std::runtime_error("cannot open '" + in.csv_path + "'");
        TimeSignal samples = read_signal_csv(file);
        samples.tail_bound = tail_from_expr(*parse_expr(in.tail_text, "t"));
        F_f = make_transform([samples](Complex p) { return transform_interpolant(samples, p); },
                             in.csv_path);
        source["f_csv"] = in.csv_path;
        source["tail"] = in.tail_text;
    }

    SolveSettings settings;
    settings.probe = c.probe();
    settings.inversion = c.inversion();
    settings.residual_tol = in.residual_tol;
    const auto grid = parse_t_range(in.t_text);

    Json s = c.settings_json(settings.probe, settings.inversion);
    s.update(source);
    s["lambda"] = in.lambda;
    s["t"] = in.t_text;
    s["residual_tol"] = in.residual_tol;
    Json j = envelope("solve", s);

    std::string sidecar = c.json_path;
    if (sidecar.empty() && !c.out_path.empty()) sidecar = c.out_path + ".json";

    HyperSolveResult result;
    try {
        result = solve(F_f, in.lambda, grid, settings);
    } catch (const SolveRefused& refused) {
        j["report"] = report_json(refused.report());
        j["verdict"] = to_string(refused.report().verdict);
        if (!sidecar.empty()) write_text(sidecar, dump(j), out);
        err << "refused: " << refused.what() << "\n";
        return verdict_exit(refused.report().verdict);
    }

    j["report"] = report_json(result.Q_report);
    j["signals"]["q"] = inversion_json(result.q);
    j["signals"]["q0"] = result.q0_magnitude;
    j["signals"]["residual_horizon"] = result.residual_horizon;
    j["signals"]["verified"] = result.verified;
    // independent time-stepping check where it applies
    if (f_closed && in.lambda > 0.0 && grid.size() >= 3 && grid.front() == 0.0) {
        TimeSignal f_samples;
        f_samples.t_grid = grid;
        for (double t : grid) f_samples.values.push_back((*f_closed)(t));
        try {
            const auto oracle = oracle_volterra(f_samples, in.lambda);
            double diff = 0.0;
            for (std::size_t k = 0; k < grid.size(); ++k) {
                diff = std::max(diff, std::abs(oracle.values[k] - result.q.signal.values[k]));
            }
            j["signals"]["oracle_max_diff"] = diff;
        } catch (const std::exception&) {
            // non-uniform grid: no oracle
        }
    }
    for (const auto& r : result.residuals) {
        j["residuals"].push_back({{"p", complex_json(r.p)},
                                  {"residual", complex_json(r.residual)},
                                  {"abs", std::abs(r.residual)},
                                  {"error", r.error}});
    }
    j["verdict"] = result.verified ? "verified" : "unverified";

    write_text(c.out_path, format_csv(result.q.signal), out);
    if (!sidecar.empty()) write_text(sidecar, dump(j), out);
    if (!result.verified) {
        err << "warning: residual or q(0) check did not pass; see the JSON sidecar\n";
        return exit_inconclusive;
    }
    return exit_ok;
}

int cmd_pairs(const Common& c, bool roundtrip, std::ostream& out, std::ostream& err) {
    const auto probe = c.probe();
    const auto settings = c.inversion();
    if (!roundtrip) {
        for (const auto& pair : catalog()) {
            out << pair.name << "\t" << (pair.admissible ? "admissible" : "inadmissible") << "\tb="
                << shortest(pair.b_true) << "\tf(t)=" << pair.f_text << "\tF(p)=" << pair.F_text << "\n";
        }
        return exit_ok;
    }

    Json s = c.settings_json(probe, settings);
    s["t"] = "0:10:0.05";
    Json j = envelope("pairs", s);
    const auto grid = parse_t_range("0:10:0.05");

    // check every truncation first so an unreachable tol fails fast
    std::vector<std::pair<const TransformPair*, AdmissibilityReport>> work;
    for (const auto& pair : catalog()) {
        if (!pair.admissible) continue;
        const auto F = transform_from_expr(parse_expr(pair.F_text, "p"), pair.F_text);
        auto report = assess(F, probe);
        if (report.verdict != Verdict::admissible) {
            err << pair.name << ": judged " << to_string(report.verdict) << "\n";
            return verdict_exit(report.verdict);
        }
        const auto bound = truncation_bound(report.c_hat, report.b_hat, settings.tol, settings.H_max);
        if (bound.capped) {
            err << pair.name << ": tol " << shortest(settings.tol) << " needs H above --h-max "
                << shortest(settings.H_max) << " (best achievable " << shortest(bound.achieved_tol) << ")\n";
            return exit_tolerance;
        }
        work.emplace_back(&pair, std::move(report));
    }

    bool all_ok = true;
    for (const auto& [pair, report] : work) {
        const auto F = transform_from_expr(parse_expr(pair->F_text, "p"), pair->F_text);
        const auto result = invert(F, grid, settings, report);
        double max_err = 0.0, worst_ratio = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double e = std::abs(result.signal.values[k] - pair->f_closed(grid[k]));
            max_err = std::max(max_err, e);
            worst_ratio = std::max(worst_ratio, e / (result.signal.err_bound[k] + settings.tol));
        }
        const bool ok = worst_ratio <= 1.0;
        all_ok = all_ok && ok;
        out << pair->name << "\tmax_error=" << shortest(max_err) << "\tH=" << shortest(result.truncation.H)
            << "\t" << (ok ? "ok" : "FAIL") << "\n";
        Json entry = inversion_json(result);
        entry["max_error"] = max_err;
        entry["within_bound"] = ok;
        j["signals"][pair->name] = entry;
    }
    j["verdict"] = all_ok ? "ok" : "fail";
    if (!c.json_path.empty()) write_text(c.json_path, dump(j), out);
    return all_ok ? exit_ok : exit_error;
}

}  // namespace

std::vector<double> parse_t_range(std::string_view text) {
    std::array<double, 3> v{};
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        const std::size_t end = i < 2 ? text.find(':', pos) : text.size();
        if (end == std::string_view::npos) throw std::invalid_argument("time range must look like a:b:step");
        const auto field = text.substr(pos, end - pos);
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v[i]);
        if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty() || !std::isfinite(v[i])) {
            throw std::invalid_argument("bad number '" + std::string(field) + "' in time range");
        }
        pos = end + 1;
    }
    const auto [a, b, step] = v;
    if (!(step > 0.0) || b < a) throw std::invalid_argument("time range needs step > 0 and b >= a");
    const double count = std::floor((b - a) / step + 1e-9);
    if (count > 1e6) throw std::invalid_argument("time range has more than a million points");
    std::vector<double> grid;
    for (int k = 0; k <= static_cast<int>(count); ++k) grid.push_back(a + k * step);
    return grid;
}

std::string format_csv(const TimeSignal& signal) {
    std::string out = "t,re,im,err_bound\n";
    for (std::size_t k = 0; k < signal.size(); ++k) {
        const double e = signal.err_bound.empty() ? 0.0 : signal.err_bound[k];
        out += shortest(signal.t_grid[k]) + "," + shortest(signal.values[k].real()) + "," +
               shortest(signal.values[k].imag()) + "," + shortest(e) + "\n";
    }
    return out;
}

TimeSignal read_signal_csv(std::istream& in) {
    TimeSignal s;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> fields;
        std::size_t pos = 0;
        bool numeric = true;
        while (pos <= line.size() && fields.size() < 3) {
            std::size_t end = line.find(',', pos);
            if (end == std::string::npos) end = line.size();
            std::string_view field(line.data() + pos, end - pos);
            while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
            while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
            double x = 0.0;
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
            if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
                numeric = false;
                break;
            }
            fields.push_back(x);
            pos = end + 1;
        }
        if (!numeric) {
            if (s.t_grid.empty()) continue;  // header
            throw std::invalid_argument("csv line " + std::to_string(line_no) + " is not numeric");
        }
        if (fields.size() < 2) throw std::invalid_argument("csv line " + std::to_string(line_no) + " needs t,re");
        s.t_grid.push_back(fields[0]);
        s.values.emplace_back(fields[1], fields.size() > 2 ? fields[2] : 0.0);
    }
    if (s.t_grid.size() < 2) throw std::invalid_argument("csv needs at least two samples");
    s.validate_and_update_sup();
    return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Admissibility checks, inversion and hypersingular solves for Laplace transforms",
                 "laplace-gate"};
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1);

    Common common;
    std::string expr_text, t_text;
    bool roundtrip = false;
    SolveInput solve_in;

    auto* check = app.add_subcommand("check", "judge whether F(p) is admissible");
    check->add_option("F", expr_text, "transform in p, e.g. 1/(p+1)^2")->required();
    common.attach(check);

    auto* inv = app.add_subcommand("invert", "recover f(t) from F(p) on a time grid");
    inv->add_option("F", expr_text, "transform in p")->required();
    inv->add_option("--t", t_text, "time grid a:b:step")->required();
    common.attach(inv);

    auto* slv = app.add_subcommand("solve", "solve q + I^lambda q = f");
    slv->add_option("--lambda", solve_in.lambda, "order, 0 < |lambda| < 2")->required();
    slv->add_option("--f", solve_in.f_text, "f(t) as a sum of c*t^nu*exp(-a*t) terms");
    slv->add_option("--f-csv", solve_in.csv_path, "samples t,re[,im] of f");
    slv->add_option("--tail", solve_in.tail_text, "envelope of |f| beyond the samples, e.g. exp(-t)");
    slv->add_option("--t", solve_in.t_text, "time grid a:b:step")->capture_default_str();
    slv->add_option("--residual-tol", solve_in.residual_tol, "bound on the transform-domain residual")
        ->capture_default_str();
    common.attach(slv);

    auto* prs = app.add_subcommand("pairs", "list the reference pairs or round-trip them");
    prs->add_flag("--roundtrip", roundtrip, "invert every admissible pair and compare with f");
    common.attach(prs);

    std::vector<const char*> argv{"laplace-gate"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        out << tool_version << "\n";
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }

    const std::string* parsed_text = &expr_text;
    try {
        if (check->parsed()) return cmd_check(common, expr_text, out);
        if (inv->parsed()) return cmd_invert(common, expr_text, t_text, out, err);
        if (slv->parsed()) {
            parsed_text = solve_in.f_text.empty() ? &solve_in.tail_text : &solve_in.f_text;
            return cmd_solve(common, solve_in, out, err);
        }
        if (prs->parsed()) return cmd_pairs(common, roundtrip, out, err);
    } catch (const ParseError& e) {
        print_parse_error(e, *parsed_text, err);
        return exit_error;
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}

}  // namespace lgate::cli
