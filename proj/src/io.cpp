#include "seclab/io.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace seclab {

namespace {

std::string fixed10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", v);
    return buf;
}

std::string sci2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1e", v);
    return buf;
}

nlohmann::ordered_json opt_number(const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

nlohmann::ordered_json order_report_to_json(const OrderReport& r) {
    return {{"p_hat", opt_number(r.p_hat)},
            {"c_hat", opt_number(r.c_hat)},
            {"theoretical_p", opt_number(r.theoretical_p)},
            {"theoretical_c", opt_number(r.theoretical_c)},
            {"verdict", r.verdict}};
}

void write_basin_csv(std::ostream& os, int m, std::span<const BasinPoint> points) {
    const auto c = CharConstants<double>::compute(m);
    os << "# m=" << m << " c_m0=" << format_real(c.c_m0);
    if (c.c_2m1) os << " c_2m1=" << format_real(*c.c_2m1) << " c_2m2=" << format_real(*c.c_2m2);
    os << '\n';
    os << "k0,verdict,exit_index,exit_value,predicted_aec\n";
    for (const auto& p : points) {
        const auto& cl = p.classification;
        os << format_real(p.k0) << ',' << to_string(cl.verdict);
        if (cl.breakdown_step) os << '(' << *cl.breakdown_step << ')';
        os << ',';
        if (cl.witness && cl.witness->exit_index) os << *cl.witness->exit_index;
        os << ',';
        if (cl.witness && cl.witness->exit_value) os << format_real(*cl.witness->exit_value);
        os << ',';
        if (cl.predicted_aec) os << format_real(*cl.predicted_aec);
        os << '\n';
    }
}

void write_constants_table(std::ostream& os, std::span<const int> ms, TableFormat fmt) {
    for (int m : ms) require_multiplicity(m);
    struct Row {
        int m;
        CharConstants<double> c;
    };
    std::vector<Row> rows;
    for (int m : ms) rows.push_back({m, CharConstants<double>::compute(m)});

    auto residual = [](const std::optional<double>& v, auto poly) -> std::optional<double> {
        if (!v) return std::nullopt;
        return std::abs(poly(*v));
    };

    if (fmt == TableFormat::Csv) {
        os << "m,c_m0,c_2m1,c_2m2,res_c_m0,res_c_2m1,res_c_2m2\n";
        for (const auto& r : rows) {
            auto p = [&](double k) { return p_poly(r.m, k); };
            auto q = [&](double k) { return q_poly(r.m, k); };
            auto str = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
            os << r.m << ',' << format_real(r.c.c_m0) << ',' << str(r.c.c_2m1) << ',' << str(r.c.c_2m2) << ','
               << format_real(std::abs(p(r.c.c_m0))) << ',' << str(residual(r.c.c_2m1, p)) << ','
               << str(residual(r.c.c_2m2, q)) << '\n';
        }
        return;
    }

    char line[256];
    std::snprintf(line, sizeof line, "%3s  %14s  %14s  %14s  %9s  %9s  %9s\n", "m", "c_m0", "c_2m1", "c_2m2",
                  "res_m0", "res_2m1", "res_2m2");
    os << line;
    for (const auto& r : rows) {
        auto p = [&](double k) { return p_poly(r.m, k); };
        auto q = [&](double k) { return q_poly(r.m, k); };
        auto f = [](const std::optional<double>& v) { return v ? fixed10(*v) : std::string(); };
        auto e = [](const std::optional<double>& v) { return v ? sci2(*v) : std::string(); };
        std::snprintf(line, sizeof line, "%3d  %14s  %14s  %14s  %9s  %9s  %9s\n", r.m, fixed10(r.c.c_m0).c_str(),
                      f(r.c.c_2m1).c_str(), f(r.c.c_2m2).c_str(), sci2(std::abs(p(r.c.c_m0))).c_str(),
                      e(residual(r.c.c_2m1, p)).c_str(), e(residual(r.c.c_2m2, q)).c_str());
        os << line;
    }
}

}  // namespace seclab
