#include "seclab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "seclab/acceptance.hpp"
#include "seclab/analysis.hpp"
#include "seclab/dynamics.hpp"
#include "seclab/io.hpp"

namespace seclab {

namespace {

struct RunConfig {
    std::string problem;
    std::string backend = "binary64";
    std::string method = "secant";
    std::string x0, x1, k0, e0;
    std::vector<int> m;
    std::string lo = "-3", hi = "3";
    long long n = 0;
    int max_iter = 200;
    std::string output = "text";
    std::string out_path;
    std::string config_path;
    std::string suite = "fast";
    double m_cost = 1.0;
    double s = 1.0;
    std::string m_alpha;
    std::string eps;
};

struct Artifact {
    std::string text;
    int code = kExitOk;
    std::string report;  // printed to the terminal when the artifact goes to a file
};

template <Real T>
T parse_real(const std::string& s, const char* flag) {
    if constexpr (std::same_as<T, double>) {
        double v = 0.0;
        const auto* first = s.data() + (!s.empty() && s[0] == '+');
        const auto res = std::from_chars(first, s.data() + s.size(), v);
        if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
            throw Error(ErrorCode::BadFlags, std::string(flag) + ": not a number: '" + s + "'");
        }
        return v;
    } else {
        try {
            return parse_double_double(s);
        } catch (const std::invalid_argument&) {
            throw Error(ErrorCode::BadFlags, std::string(flag) + ": not a number: '" + s + "'");
        }
    }
}

double parse_double(const std::string& s, const char* flag) { return parse_real<double>(s, flag); }

void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(ErrorCode::BadFlags, msg);
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

std::string fmt_opt(const std::optional<double>& v) {
    return v ? format_real(*v) : std::string("n/a");
}

std::string report_text(const OrderReport& r) {
    std::ostringstream os;
    os << "p_hat=" << fmt_opt(r.p_hat) << " c_hat=" << fmt_opt(r.c_hat) << "\n"
       << "theoretical_p=" << fmt_opt(r.theoretical_p) << " theoretical_c=" << fmt_opt(r.theoretical_c) << "\n"
       << "verdict=" << r.verdict << "\n";
    return os.str();
}

template <Real T>
Artifact trace_with(const RunConfig& c) {
    const ProblemSpec<T> p = find_problem<T>(c.problem);
    const bool by_ratio = !c.k0.empty() || !c.e0.empty();
    T x0, x1;
    if (by_ratio) {
        require(!c.k0.empty() && !c.e0.empty(), "--k0 and --e0 go together");
        require(c.x0.empty() && c.x1.empty(), "give either --x0/--x1 or --k0/--e0");
        const T root = p.require_root();
        const T e0 = parse_real<T>(c.e0, "--e0");
        x0 = root + e0;
        x1 = root + parse_real<T>(c.k0, "--k0") * e0;
    } else {
        require(!c.x0.empty(), "--x0 is required");
        x0 = parse_real<T>(c.x0, "--x0");
        if (c.method == "secant") {
            require(!c.x1.empty(), "--x1 is required for the secant method");
            x1 = parse_real<T>(c.x1, "--x1");
        }
    }
    StoppingCriteria<T> stop;
    stop.max_iter = c.max_iter;
    const IterationTrace<T> t = c.method == "secant" ? run_secant(p, x0, x1, stop) : run_newton(p, x0, stop);
    const OrderReport rep = order_report(t, p);

    Artifact a;
    a.code = is_breakdown(t.termination) ? kExitBreakdown : kExitOk;
    std::ostringstream os;
    if (c.output == "csv") {
        write_trace_csv(os, t);
    } else if (c.output == "json") {
        auto j = trace_to_json(t);
        j["report"] = order_report_to_json(rep);
        os << dump(j);
    } else {
        os << "problem=" << t.problem_id << " method=" << to_string(t.method)
           << " backend=" << to_string(RealTraits<T>::backend) << " termination=" << to_string(t.termination);
        if (t.breakdown_index) os << " breakdown_index=" << *t.breakdown_index;
        os << "\n";
        write_trace_csv(os, t);
        os << report_text(rep);
    }
    a.text = os.str();
    a.report = "termination=" + std::string(to_string(t.termination)) + "\n" + report_text(rep);
    return a;
}

Artifact cmd_trace(const RunConfig& c) {
    require(!c.problem.empty(), "--problem is required");
    require(c.method == "secant" || c.method == "newton", "--method must be secant or newton");
    return parse_backend(c.backend) == Backend::Binary64 ? trace_with<double>(c) : trace_with<DoubleDouble>(c);
}

Artifact cmd_constants(const RunConfig& c) {
    require(!c.m.empty(), "--m is required");
    for (int m : c.m) require(m >= 2, "--m must be >= 2");
    std::ostringstream os;
    if (c.output == "json") {
        auto rows = nlohmann::ordered_json::array();
        for (int m : c.m) {
            const auto k = CharConstants<double>::compute(m);
            nlohmann::ordered_json row{{"m", m}, {"c_m0", k.c_m0}};
            row["c_2m1"] = k.c_2m1 ? nlohmann::ordered_json(*k.c_2m1) : nullptr;
            row["c_2m2"] = k.c_2m2 ? nlohmann::ordered_json(*k.c_2m2) : nullptr;
            row["max_residual"] = k.max_residual();
            rows.push_back(row);
        }
        os << dump(rows);
    } else {
        write_constants_table(os, c.m, c.output == "csv" ? TableFormat::Csv : TableFormat::Text);
    }
    return {os.str()};
}

// --m, or the multiplicity and domain of --problem.
std::pair<int, ClassifierOptions> multiplicity_from(const RunConfig& c) {
    ClassifierOptions opts;
    if (!c.problem.empty()) {
        const auto p = find_problem<double>(c.problem);
        require(p.multiplicity >= 2, "problem '" + c.problem + "' has a simple root; classify needs m >= 2");
        require(c.m.empty() || (c.m.size() == 1 && c.m[0] == p.multiplicity), "--m conflicts with --problem");
        opts.domain_halfwidth = p.domain_halfwidth;
        return {p.multiplicity, opts};
    }
    require(c.m.size() == 1, "give --problem or a single --m");
    require(c.m[0] >= 2, "--m must be >= 2");
    return {c.m[0], opts};
}

nlohmann::ordered_json classification_json(double k0, const Classification& cl) {
    nlohmann::ordered_json j{{"k0", k0}, {"verdict", std::string(to_string(cl.verdict))}};
    j["breakdown_step"] = cl.breakdown_step ? nlohmann::ordered_json(*cl.breakdown_step) : nullptr;
    j["predicted_aec"] = cl.predicted_aec ? nlohmann::ordered_json(*cl.predicted_aec) : nullptr;
    const bool exit = cl.witness && cl.witness->exit_index;
    j["exit_index"] = exit ? nlohmann::ordered_json(*cl.witness->exit_index) : nullptr;
    j["exit_value"] = exit ? nlohmann::ordered_json(*cl.witness->exit_value) : nullptr;
    return j;
}

Artifact cmd_classify(const RunConfig& c) {
    const auto [m, opts] = multiplicity_from(c);
    require(!c.k0.empty() && !c.e0.empty(), "--k0 and --e0 are required");
    const double k0 = parse_double(c.k0, "--k0");
    const double e0 = parse_double(c.e0, "--e0");
    const Classification cl = classify(m, k0, e0, opts);
    std::ostringstream os;
    if (c.output == "json") {
        auto j = classification_json(k0, cl);
        j = {{"m", m}, {"e0", e0}, {"classification", j}};
        os << dump(j);
    } else {
        const BasinPoint pt{k0, cl};
        write_basin_csv(os, m, std::span(&pt, 1));
    }
    return {os.str()};
}

Artifact cmd_basin(const RunConfig& c) {
    const auto [m, opts] = multiplicity_from(c);
    require(c.n >= 1, "--n must be >= 1");
    const double e0 = c.e0.empty() ? 1e-4 : parse_double(c.e0, "--e0");
    const auto grid = uniform_grid(parse_double(c.lo, "--lo"), parse_double(c.hi, "--hi"),
                                   static_cast<std::size_t>(c.n));
    const auto pts = basin_sweep(m, grid, e0, opts);
    std::ostringstream os;
    if (c.output == "json") {
        auto rows = nlohmann::ordered_json::array();
        for (const auto& p : pts) rows.push_back(classification_json(p.k0, p.classification));
        os << dump({{"m", m}, {"e0", e0}, {"points", rows}});
    } else {
        write_basin_csv(os, m, pts);
    }
    return {os.str()};
}

Artifact cmd_efficiency(const RunConfig& c) {
    require(!c.e0.empty() && !c.eps.empty() && !c.m_alpha.empty(), "--e0, --eps and --m-alpha are required");
    const auto r = efficiency_report(c.m_cost, c.s, parse_double(c.m_alpha, "--m-alpha"),
                                     parse_double(c.e0, "--e0"), parse_double(c.eps, "--eps"));
    std::ostringstream os;
    if (c.output == "json") {
        os << dump({{"K", r.K}, {"T_N", r.T_N}, {"T_S", r.T_S}, {"s", r.s}, {"m_cost", r.m_cost},
                    {"threshold", r.threshold}});
    } else if (c.output == "csv") {
        os << "K,T_N,T_S,s,m_cost,threshold\n"
           << format_real(r.K) << ',' << format_real(r.T_N) << ',' << format_real(r.T_S) << ','
           << format_real(r.s) << ',' << format_real(r.m_cost) << ',' << format_real(r.threshold) << "\n";
    } else {
        os << "K=" << format_real(r.K) << "\nT_N=" << format_real(r.T_N) << "\nT_S=" << format_real(r.T_S)
           << "\nthreshold=" << format_real(r.threshold) << "\nfaster=" << (r.T_S < r.T_N ? "secant" : "newton")
           << "\n";
    }
    return {os.str()};
}

Artifact cmd_verify(const RunConfig& c) {
    const auto results = run_acceptance(parse_suite(c.suite));
    std::ostringstream os;
    bool all = true;
    for (const auto& r : results) {
        os << format_result_line(r) << "\n";
        all = all && r.pass;
    }
    os << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
    Artifact a{os.str(), all ? kExitOk : kExitUsage};
    a.report = a.text;
    return a;
}

// Flags from a JSON config file, for keys not given on the command line.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
    auto it = std::find(args.begin(), args.end(), "--config");
    std::string path;
    if (it != args.end() && it + 1 != args.end()) path = *(it + 1);
    for (const auto& a : args) {
        if (a.rfind("--config=", 0) == 0) path = a.substr(9);
    }
    if (path.empty()) return args;

    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::BadFlags, "cannot read config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadFlags, "config '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::BadFlags, "config must be a JSON object");

    std::vector<std::string> out = args;
    const bool has_sub = std::any_of(args.begin(), args.end(), [](const std::string& a) {
        return !a.empty() && a[0] != '-' && (a == "trace" || a == "constants" || a == "classify" ||
                                             a == "basin" || a == "efficiency" || a == "verify");
    });
    if (!has_sub) {
        if (!j.contains("subcommand")) throw Error(ErrorCode::BadFlags, "no subcommand given");
        out.insert(out.begin(), j["subcommand"].get<std::string>());
    }
    auto given = [&](const std::string& flag) {
        return std::any_of(args.begin(), args.end(),
                           [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
    };
    auto scalar = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    for (const auto& [key, value] : j.items()) {
        if (key == "subcommand" || key == "config") continue;
        const std::string flag = "--" + key;
        if (given(flag)) continue;
        if (value.is_array()) {
            for (const auto& v : value) {
                out.push_back(flag);
                out.push_back(scalar(v));
            }
        } else {
            out.push_back(flag);
            out.push_back(scalar(value));
        }
    }
    return out;
}

void add_io_flags(CLI::App* sub, RunConfig& c) {
    sub->add_option("--output", c.output, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
    sub->add_option("--out", c.out_path, "write the artifact here instead of stdout");
    sub->add_option("--config", c.config_path, "JSON file with default flag values");
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Secant and Newton convergence experiments"};
    app.require_subcommand(1, 1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON file with default flag values");

    auto* trace = app.add_subcommand("trace", "run secant or Newton on a corpus problem");
    trace->add_option("--problem", c.problem);
    trace->add_option("--backend", c.backend)->check(CLI::IsMember({"binary64", "dd"}));
    trace->add_option("--method", c.method);
    trace->add_option("--x0", c.x0);
    trace->add_option("--x1", c.x1);
    trace->add_option("--k0", c.k0, "start from x0 = root + e0, x1 = root + k0 e0");
    trace->add_option("--e0", c.e0);
    trace->add_option("--max-iter", c.max_iter);
    add_io_flags(trace, c);

    auto* constants = app.add_subcommand("constants", "characteristic constants per multiplicity");
    constants->add_option("--m", c.m)->delimiter(',');
    add_io_flags(constants, c);

    auto* cls = app.add_subcommand("classify", "predict the fate of a start (k0, e0) at a multiple root");
    cls->add_option("--problem", c.problem);
    cls->add_option("--m", c.m);
    cls->add_option("--k0", c.k0);
    cls->add_option("--e0", c.e0);
    add_io_flags(cls, c);

    auto* basin = app.add_subcommand("basin", "classify a uniform k0 grid");
    basin->add_option("--problem", c.problem);
    basin->add_option("--m", c.m);
    basin->add_option("--lo", c.lo);
    basin->add_option("--hi", c.hi);
    basin->add_option("--n", c.n);
    basin->add_option("--e0", c.e0);
    add_io_flags(basin, c);

    auto* eff = app.add_subcommand("efficiency", "Newton vs secant cost model");
    eff->add_option("--m-cost", c.m_cost);
    eff->add_option("--s", c.s, "cost of f' relative to f");
    eff->add_option("--m-alpha", c.m_alpha);
    eff->add_option("--e0", c.e0);
    eff->add_option("--eps", c.eps);
    add_io_flags(eff, c);

    auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
    verify->add_option("suite", c.suite, "fast or full");
    add_io_flags(verify, c);

    Artifact art;
    try {
        std::vector<std::string> args = merge_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
        if (c.output.empty()) c.output = "text";

        if (*trace) {
            art = cmd_trace(c);
        } else if (*constants) {
            art = cmd_constants(c);
        } else if (*cls) {
            art = cmd_classify(c);
        } else if (*basin) {
            art = cmd_basin(c);
        } else if (*eff) {
            art = cmd_efficiency(c);
        } else {
            art = cmd_verify(c);
        }
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::SecantBreakdown:
            case ErrorCode::EqualIterates:
            case ErrorCode::NewtonBreakdown:
            case ErrorCode::PoleAtUnitPower:
                return kExitBreakdown;
            default:
                return kExitUsage;
        }
    }

    if (c.out_path.empty()) {
        out << art.text;
    } else {
        std::ofstream f(c.out_path, std::ios::binary);
        if (!f) {
            err << "error: cannot write '" << c.out_path << "'\n";
            return kExitUsage;
        }
        f << art.text;
        out << art.report;
    }
    return art.code;
}

}  // namespace seclab
