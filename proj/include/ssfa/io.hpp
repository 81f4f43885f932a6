#ifndef SSFA_IO_HPP
#define SSFA_IO_HPP

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "approximant.hpp"
#include "cases.hpp"
#include "error.hpp"
#include "precision.hpp"
#include "series.hpp"
#include "solver.hpp"

// JSON uses decimal strings for every high-precision number so values
// survive a round trip at any precision. Plain JSON numbers are accepted on
// input and read through their shortest decimal rendering.

namespace ssfa::io {

using json = nlohmann::json;

inline json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(e.what());
    }
}

template <class Real>
Real read_number(const json& j, const std::string& what)
{
    try {
        if (j.is_string())
            return from_decimal<Real>(j.get<std::string>());
        if (j.is_number())
            return from_decimal<Real>(j.dump());
    } catch (const std::invalid_argument& e) {
        throw parse_error(what + ": " + e.what());
    }
    throw parse_error(what + ": expected a number or decimal string");
}

template <class Real>
Real read_optional(const json& obj, const char* key, const Real& fallback)
{
    const auto it = obj.find(key);
    if (it == obj.end())
        return fallback;
    return read_number<Real>(*it, key);
}

template <class Real>
std::string write_number(const Real& v)
{
    return to_decimal(v);
}

// ---- series ---------------------------------------------------------------

template <class Real>
power_series<Real> series_from_json(const json& j)
{
    if (!j.is_object())
        throw parse_error("series: expected a JSON object");
    const auto it = j.find("coefficients");
    if (it == j.end() || !it->is_array() || it->empty())
        throw parse_error("series: \"coefficients\" must be a non-empty array");
    std::vector<Real> coeffs;
    for (std::size_t i = 0; i < it->size(); ++i)
        coeffs.push_back(read_number<Real>((*it)[i], "coefficients[" + std::to_string(i) + "]"));
    try {
        return power_series<Real>(std::move(coeffs), read_optional<Real>(j, "amplitude", Real(1)),
                                  read_optional<Real>(j, "exponent", Real(0)),
                                  read_optional<Real>(j, "substitution_power", Real(1)));
    } catch (const invalid_input& e) {
        throw parse_error(std::string("series: ") + e.what());
    }
}

template <class Real>
json to_json(const power_series<Real>& s)
{
    json coeffs = json::array();
    for (const auto& a : s.coefficients())
        coeffs.push_back(write_number(a));
    return {{"amplitude", write_number(s.amplitude())},
            {"exponent", write_number(s.exponent())},
            {"substitution_power", write_number(s.substitution_power())},
            {"coefficients", std::move(coeffs)}};
}

// ---- factor parameters ----------------------------------------------------

template <class Real>
json to_json(const complex<Real>& z)
{
    return {{"re", write_number(z.re)}, {"im", write_number(z.im)}};
}

template <class Real>
complex<Real> complex_from_json(const json& j, const std::string& what)
{
    if (j.is_object())
        return {read_optional<Real>(j, "re", Real(0)), read_optional<Real>(j, "im", Real(0))};
    return {read_number<Real>(j, what)};
}

template <class Real>
json to_json(const factor_parameters<Real>& p)
{
    json factors = json::array();
    for (const auto& f : p.factors)
        factors.push_back({{"A", to_json(f.rate)}, {"n", to_json(f.power)}});
    return {{"order", p.order}, {"factors", std::move(factors)}};
}

template <class Real>
factor_parameters<Real> parameters_from_json(const json& j)
{
    if (!j.is_object())
        throw parse_error("parameters: expected a JSON object");
    factor_parameters<Real> p;
    const auto order = j.find("order");
    if (order == j.end() || !order->is_number_integer() || order->get<int>() < 0)
        throw parse_error("parameters: \"order\" must be a non-negative integer");
    p.order = order->get<int>();
    const auto factors = j.find("factors");
    if (factors == j.end() || !factors->is_array())
        throw parse_error("parameters: \"factors\" must be an array");
    for (std::size_t i = 0; i < factors->size(); ++i) {
        const auto& f = (*factors)[i];
        if (!f.is_object() || !f.contains("A") || !f.contains("n"))
            throw parse_error("parameters: factor " + std::to_string(i) + " needs \"A\" and \"n\"");
        p.factors.push_back({complex_from_json<Real>(f["A"], "A"), complex_from_json<Real>(f["n"], "n")});
    }
    return p;
}

// ---- approximant ----------------------------------------------------------

template <class Real>
json to_json(const factor_approximant<Real>& a)
{
    json j = to_json(a.parameters);
    j["amplitude"] = write_number(a.amplitude);
    j["exponent"] = write_number(a.exponent);
    j["substitution_power"] = write_number(a.substitution_power);
    return j;
}

template <class Real>
factor_approximant<Real> approximant_from_json(const json& j)
{
    factor_approximant<Real> a;
    a.parameters = parameters_from_json<Real>(j);
    a.amplitude = read_optional<Real>(j, "amplitude", Real(1));
    a.exponent = read_optional<Real>(j, "exponent", Real(0));
    a.substitution_power = read_optional<Real>(j, "substitution_power", Real(1));
    if (!(a.substitution_power > 0))
        throw parse_error("approximant: substitution_power must be positive");
    return a;
}

template <class Real>
json to_json(const asymptotic_form<Real>& f)
{
    return {{"amplitude", write_number(f.amplitude)}, {"exponent", write_number(f.exponent)}};
}

template <class Real>
json to_json(const error_report<Real>& e)
{
    return {{"amplitude_error_percent", write_number(e.amplitude_error_percent)},
            {"exponent_error_percent", write_number(e.exponent_error_percent)}};
}

// ---- tables ---------------------------------------------------------------

// Six significant digits, locale independent and stable across runs.
template <class Real>
std::string format_significant(const Real& v, int digits = 6)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, to_double(v));
    return buf;
}

inline constexpr const char* table_csv_header = "k,B_k,eps_B_percent,gamma_k,eps_gamma_percent";

template <class Real>
std::string table_to_csv(const convergence_table<Real>& t)
{
    std::ostringstream out;
    out << table_csv_header << '\n';
    for (const auto& row : t.rows) {
        out << row.k << ',';
        if (row.predicted)
            out << format_significant(row.predicted->amplitude);
        out << ',';
        if (row.errors)
            out << format_significant(row.errors->amplitude_error_percent);
        out << ',';
        if (row.predicted)
            out << format_significant(row.predicted->exponent);
        out << ',';
        if (row.errors)
            out << format_significant(row.errors->exponent_error_percent);
        out << '\n';
    }
    return out.str();
}

template <class Real>
json to_json(const convergence_table<Real>& t)
{
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r{{"k", row.k}, {"failed", row.failed}};
        if (row.failed)
            r["failure"] = row.failure;
        else {
            r["parameters"] = to_json(row.parameters);
            r["max_relative_residual"] = format_significant(row.max_relative_residual, 3);
        }
        if (row.predicted) {
            r["B_k"] = write_number(row.predicted->amplitude);
            r["gamma_k"] = write_number(row.predicted->exponent);
        }
        if (row.errors) {
            r["eps_B_percent"] = write_number(row.errors->amplitude_error_percent);
            r["eps_gamma_percent"] = write_number(row.errors->exponent_error_percent);
        }
        rows.push_back(std::move(r));
    }
    return {{"case", t.case_name}, {"rows", std::move(rows)}};
}

template <class Real>
json case_summary(const case_definition<Real>& c)
{
    json j{{"name", c.name},
           {"description", c.description},
           {"max_order", c.max_order},
           {"amplitude", write_number(c.amplitude)},
           {"exponent", write_number(c.exponent)},
           {"substitution_power", write_number(c.substitution_power)}};
    if (c.exact_limit)
        j["exact_limit"] = to_json(*c.exact_limit);
    return j;
}

} // namespace ssfa::io

#endif
