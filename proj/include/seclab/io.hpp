#pragma once

#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "seclab/analysis.hpp"
#include "seclab/dynamics.hpp"
#include "seclab/iterate.hpp"

namespace seclab {

// Text output never goes through iostream number formatting, so nothing here
// depends on the global locale. Reals are written with 17 significant digits
// in binary64 and 32 in double-double.

template <Real T>
void write_trace_csv(std::ostream& os, const IterationTrace<T>& t) {
    os << "n,x,fx,e,E,k\n";
    auto cell = [](const std::optional<T>& v) { return v ? format_real(*v) : std::string(); };
    for (const auto& s : t.steps) {
        os << s.n << ',' << format_real(s.x) << ',' << format_real(s.fx) << ',' << cell(s.e) << ','
           << cell(s.E) << ',' << cell(s.k) << '\n';
    }
}

template <Real T>
nlohmann::ordered_json trace_to_json(const IterationTrace<T>& t) {
    nlohmann::ordered_json j;
    j["problem"] = t.problem_id;
    j["method"] = std::string(to_string(t.method));
    j["backend"] = std::string(to_string(RealTraits<T>::backend));
    j["termination"] = std::string(to_string(t.termination));
    j["breakdown_index"] = t.breakdown_index ? nlohmann::ordered_json(*t.breakdown_index) : nullptr;
    j["precision_floor"] = t.precision_floor ? nlohmann::ordered_json(format_real(*t.precision_floor)) : nullptr;
    auto cell = [](const std::optional<T>& v) {
        return v ? nlohmann::ordered_json(format_real(*v)) : nlohmann::ordered_json(nullptr);
    };
    auto& steps = j["steps"] = nlohmann::ordered_json::array();
    for (const auto& s : t.steps) {
        steps.push_back({{"n", s.n},
                         {"x", format_real(s.x)},
                         {"fx", format_real(s.fx)},
                         {"e", cell(s.e)},
                         {"E", cell(s.E)},
                         {"k", cell(s.k)}});
    }
    return j;
}

nlohmann::ordered_json order_report_to_json(const OrderReport& r);

/// Header comment with the constants, then k0,verdict,exit_index,exit_value,predicted_aec.
void write_basin_csv(std::ostream& os, int m, std::span<const BasinPoint> points);

enum class TableFormat { Text, Csv };

/// m, c_m0, c_2m1, c_2m2 and the polynomial residuals, one row per m.
void write_constants_table(std::ostream& os, std::span<const int> ms, TableFormat fmt);

}  // namespace seclab
