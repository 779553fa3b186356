#pragma once

// JSON and CSV exchange formats.
//
//   map:          {"a":[re,im], "b":[re,im], "c":[re,im], "d":[re,im]}
//                 c defaults to 0 and d to 1; scalars stand for real numbers.
//   coefficients: [c0, c1, ...] or {"coeffs":[...], "radius": r}, each entry
//                 a number or [re,im].
//   scan tables:  w_re,w_im,rho,T_phi,T_psi,Q,kernel_diff[,bound]
//   matrices:     row-major, re/im interleaved, as CSV rows or raw doubles.
//
// Floating-point text uses 17 significant digits so output is byte-stable.

#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "oplab/boundary_analysis.hpp"
#include "oplab/error.hpp"
#include "oplab/moebius.hpp"
#include "oplab/operator_lab.hpp"
#include "oplab/weighted_spaces.hpp"

namespace oplab::io {

using json = nlohmann::json;

inline std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    if (x == 0.0) {
        return "0";  // also for -0.0
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// JSON has no infinities; they become null.
inline json number_to_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json complex_to_json(complex z) { return json::array({number_to_json(z.real()), number_to_json(z.imag())}); }

inline complex complex_from_json(const json& j, std::string_view what) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw invalid_argument(std::string(what) + " must be a number or a [re, im] pair");
}

inline json parse_json(std::string_view text, std::string_view what) {
    auto j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw invalid_argument(std::string(what) + " is not valid JSON");
    }
    return j;
}

// ---------------------------------------------------------------------------

inline LinearFractionalMap map_from_json(const json& j) {
    if (!j.is_object()) {
        throw invalid_argument("map must be a JSON object with keys a, b, c, d");
    }
    for (const auto& [key, _] : j.items()) {
        if (key != "a" && key != "b" && key != "c" && key != "d") {
            throw invalid_argument("unknown map key \"" + key + "\"");
        }
    }
    if (!j.contains("a") || !j.contains("b")) {
        throw invalid_argument("map needs at least the keys a and b");
    }
    const complex a = complex_from_json(j["a"], "a");
    const complex b = complex_from_json(j["b"], "b");
    const complex c = j.contains("c") ? complex_from_json(j["c"], "c") : complex{};
    const complex d = j.contains("d") ? complex_from_json(j["d"], "d") : complex{1.0};
    return {a, b, c, d};
}

// Normalized form, d = 1.
inline json map_to_json(const LinearFractionalMap& phi) {
    return {{"a", complex_to_json(phi.a())},
            {"b", complex_to_json(phi.b())},
            {"c", complex_to_json(phi.c())},
            {"d", complex_to_json(1.0)}};
}

struct CoefficientInput {
    CoefficientVector coeffs;
    double radius = 1.0;
};

inline CoefficientInput coefficients_from_json(const json& j) {
    const json* list = &j;
    CoefficientInput out;
    if (j.is_object()) {
        if (!j.contains("coeffs")) {
            throw invalid_argument("coefficient object needs a \"coeffs\" array");
        }
        list = &j["coeffs"];
        if (j.contains("radius")) {
            if (!j["radius"].is_number()) {
                throw invalid_argument("radius must be a number");
            }
            out.radius = j["radius"].get<double>();
        }
    }
    if (!list->is_array() || list->empty()) {
        throw invalid_argument("coefficients must be a non-empty array");
    }
    std::vector<complex> values;
    for (const auto& entry : *list) {
        values.push_back(complex_from_json(entry, "coefficient"));
    }
    out.coeffs = CoefficientVector(std::move(values));
    return out;
}

// ---------------------------------------------------------------------------
// Scan tables.

inline const std::vector<std::string>& scan_columns() {
    static const std::vector<std::string> columns{"w_re", "w_im", "rho", "T_phi", "T_psi", "Q", "kernel_diff"};
    return columns;
}

// RFC 4180 field quoting.
inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(s);
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    out += '"';
    return out;
}

inline void write_csv_row(std::ostream& os, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        os << (i ? "," : "") << csv_field(fields[i]);
    }
    os << "\r\n";
}

// `bound`, when given, adds the running lower-bound column.
inline void write_scan_csv(std::ostream& os, std::span<const ScanRow> rows,
                           std::optional<std::span<const double>> bound = std::nullopt) {
    if (bound && bound->size() != rows.size()) {
        throw invalid_argument("bound column length differs from the number of rows");
    }
    std::vector<std::string> header = scan_columns();
    if (bound) {
        header.emplace_back("bound");
    }
    write_csv_row(os, header);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        std::vector<std::string> fields{format_double(r.w.real()), format_double(r.w.imag()),
                                        format_double(r.rho),      format_double(r.t_phi),
                                        format_double(r.t_psi),    format_double(r.q),
                                        format_double(r.kernel_diff)};
        if (bound) {
            fields.push_back(format_double((*bound)[i]));
        }
        write_csv_row(os, fields);
    }
}

inline json scan_to_json(std::span<const ScanRow> rows, std::optional<std::span<const double>> bound = std::nullopt) {
    if (bound && bound->size() != rows.size()) {
        throw invalid_argument("bound column length differs from the number of rows");
    }
    json out = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        json row = {{"w_re", number_to_json(r.w.real())}, {"w_im", number_to_json(r.w.imag())},
                    {"rho", number_to_json(r.rho)},       {"T_phi", number_to_json(r.t_phi)},
                    {"T_psi", number_to_json(r.t_psi)},   {"Q", number_to_json(r.q)},
                    {"kernel_diff", number_to_json(r.kernel_diff)}};
        if (bound) {
            row["bound"] = number_to_json((*bound)[i]);
        }
        out.push_back(std::move(row));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Matrix dumps.

inline void write_matrix_csv(std::ostream& os, const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            os << (j ? "," : "") << format_double(m(i, j).real()) << ',' << format_double(m(i, j).imag());
        }
        os << "\r\n";
    }
}

// Native-endian doubles, row-major, re/im interleaved; no header.
inline void write_matrix_binary(std::ostream& os, const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const double parts[2] = {m(i, j).real(), m(i, j).imag()};
            os.write(reinterpret_cast<const char*>(parts), sizeof parts);
        }
    }
}

}  // namespace oplab::io
