// ssfa: command-line front end for self-similar factor approximants.
//
// Exit codes: 0 success, 2 usage, 3 input parse, 4 solver failure,
// 5 domain violation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <ssfa/io.hpp>
#include <ssfa/ssfa.hpp>

namespace {

using ssfa::real;
using json = ssfa::io::json;

enum exit_code : int { ok = 0, usage = 2, parse = 3, solver = 4, domain = 5 };

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct options {
    unsigned precision = 0;
    std::string format = "csv";
    std::string output = "-";

    std::string case_name;
    std::string series_path;
    std::string approx_path;
    int order = 0;
    bool odd = false;
    bool raw = false;
    bool log_spacing = false;
    std::string grid;
    std::string orders;
    std::string exact;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ssfa::parse_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// "2,4,6", "2..16" (even orders in the range) or a mix of both.
std::vector<int> parse_orders(const std::string& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    const auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size())
            throw usage_error("invalid order '" + s + "' in --orders");
        return v;
    };
    while (std::getline(ss, item, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int(item));
            continue;
        }
        const int lo = to_int(item.substr(0, dots));
        const int hi = to_int(item.substr(dots + 2));
        if (lo > hi)
            throw usage_error("empty order range '" + item + "'");
        for (int k = lo + (lo % 2 != 0 ? 1 : 0); k <= hi; k += 2)
            out.push_back(k);
    }
    if (out.empty())
        throw usage_error("--orders is empty");
    return out;
}

struct grid_spec {
    real start, stop;
    int count;
};

grid_spec parse_grid(const std::string& text)
{
    const auto a = text.find(':');
    const auto b = text.find(':', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos)
        throw usage_error("grid must be start:stop:count");
    grid_spec g;
    try {
        g.start = ssfa::from_decimal<real>(text.substr(0, a));
        g.stop = ssfa::from_decimal<real>(text.substr(a + 1, b - a - 1));
        std::size_t used = 0;
        const std::string count = text.substr(b + 1);
        g.count = std::stoi(count, &used);
        if (used != count.size())
            throw std::invalid_argument(count);
    } catch (const std::exception&) {
        throw usage_error("grid must be start:stop:count, got '" + text + "'");
    }
    if (!(g.start > 0))
        throw usage_error("grid start must be > 0");
    if (g.count < 1)
        throw usage_error("grid count must be positive");
    if (g.stop < g.start || (g.stop == g.start && g.count != 1))
        throw usage_error("grid needs start < stop (or start == stop with count 1)");
    return g;
}

struct pipeline_input {
    std::optional<ssfa::case_definition<real>> source_case;
    std::optional<ssfa::power_series<real>> series;
};

pipeline_input load_input(const options& o, bool allow_approx)
{
    const int given = static_cast<int>(!o.case_name.empty()) + static_cast<int>(!o.series_path.empty()) +
                      static_cast<int>(allow_approx && !o.approx_path.empty());
    if (given != 1)
        throw usage_error(allow_approx ? "give exactly one of --case, --series, --approx"
                                       : "give exactly one of --case, --series");
    pipeline_input in;
    if (!o.case_name.empty()) {
        in.source_case = ssfa::find_case<real>(o.case_name);
        const int k = o.order > 0 ? o.order : in.source_case->max_order;
        in.series = ssfa::case_series(*in.source_case, k);
    } else if (!o.series_path.empty()) {
        in.series = ssfa::io::series_from_json<real>(ssfa::io::parse_json(read_file(o.series_path)));
    }
    return in;
}

int checked_order(const options& o, const ssfa::power_series<real>& s)
{
    const int k = o.order > 0 ? o.order : s.order();
    if (k > s.order())
        throw ssfa::order_too_large(k, s.order());
    if (k % 2 != 0 && !o.odd)
        throw usage_error("order " + std::to_string(k) + " is odd; pass --odd to use the A_1 = 1 closure");
    return k;
}

ssfa::factor_approximant<real> build_approximant(const options& o, const pipeline_input& in)
{
    if (!in.series)
        return ssfa::io::approximant_from_json<real>(ssfa::io::parse_json(read_file(o.approx_path)));
    const int k = checked_order(o, *in.series);
    const auto series = in.series->truncated(k);
    return ssfa::assemble(series, ssfa::solve(ssfa::compute_log_derivatives(series)));
}

std::optional<ssfa::asymptotic_form<real>> reference_limit(const options& o, const pipeline_input& in)
{
    if (!o.exact.empty()) {
        const auto comma = o.exact.find(',');
        if (comma == std::string::npos)
            throw usage_error("--exact takes B,gamma");
        try {
            return ssfa::asymptotic_form<real>{ssfa::from_decimal<real>(o.exact.substr(0, comma)),
                                               ssfa::from_decimal<real>(o.exact.substr(comma + 1))};
        } catch (const std::invalid_argument&) {
            throw usage_error("--exact takes B,gamma");
        }
    }
    if (in.source_case)
        return in.source_case->exact_limit;
    return std::nullopt;
}

std::string fmt(const real& v)
{
    return ssfa::io::format_significant(v, 6);
}

std::string cmd_list_cases(const options& o)
{
    const auto cases = ssfa::builtin_cases<real>();
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& c : cases)
            arr.push_back(ssfa::io::case_summary(c));
        return arr.dump(2) + "\n";
    }
    std::ostringstream out;
    for (const auto& c : cases) {
        out << c.name << ',' << c.max_order << ',';
        if (c.exact_limit)
            out << fmt(c.exact_limit->amplitude) << ',' << fmt(c.exact_limit->exponent);
        else
            out << ',';
        out << '\n';
    }
    return out.str();
}

std::string cmd_coeffs(const options& o)
{
    const auto c = ssfa::find_case<real>(o.case_name);
    const int k = o.order > 0 ? o.order : c.max_order;
    const auto values = o.raw ? ssfa::expansion_coefficients(c, k) : ssfa::coefficients(c, k);
    if (o.format == "json") {
        if (o.raw) {
            json arr = json::array();
            for (const auto& v : values)
                arr.push_back(ssfa::to_decimal(v));
            return json{{"case", c.name}, {"leading", ssfa::to_decimal(c.amplitude)}, {"coefficients", arr}}.dump(2) +
                   "\n";
        }
        return ssfa::io::to_json(ssfa::case_series(c, k)).dump(2) + "\n";
    }
    std::ostringstream out;
    out << "n,a_n\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        out << i + 1 << ',' << ssfa::to_decimal(values[i]) << '\n';
    return out.str();
}

std::string cmd_solve(const options& o)
{
    const auto in = load_input(o, false);
    const auto approx = build_approximant(o, in);
    const auto limit = ssfa::asymptotic(approx);
    const auto exact = reference_limit(o, in);

    if (o.format == "json") {
        json j = ssfa::io::to_json(approx);
        j["asymptotic"] = ssfa::io::to_json(limit);
        if (exact)
            j["errors"] = ssfa::io::to_json(ssfa::percentage_errors(limit, *exact));
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "j,A_re,A_im,n_re,n_im\n";
    int j = 1;
    for (const auto& f : approx.parameters.factors)
        out << j++ << ',' << ssfa::to_decimal(f.rate.re) << ',' << ssfa::to_decimal(f.rate.im) << ','
            << ssfa::to_decimal(f.power.re) << ',' << ssfa::to_decimal(f.power.im) << '\n';
    out << "\nB_k,gamma_k\n" << fmt(limit.amplitude) << ',' << fmt(limit.exponent) << '\n';
    return out.str();
}

std::string cmd_asympt(const options& o)
{
    const auto in = load_input(o, true);
    const auto approx = build_approximant(o, in);
    const auto limit = ssfa::asymptotic(approx);
    const auto exact = reference_limit(o, in);
    std::optional<ssfa::error_report<real>> errors;
    if (exact)
        errors = ssfa::percentage_errors(limit, *exact);

    if (o.format == "json") {
        json j = ssfa::io::to_json(limit);
        if (errors)
            j.update(ssfa::io::to_json(*errors));
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "B_k,gamma_k,eps_B_percent,eps_gamma_percent\n" << fmt(limit.amplitude) << ',' << fmt(limit.exponent) << ',';
    if (errors)
        out << fmt(errors->amplitude_error_percent) << ',' << fmt(errors->exponent_error_percent);
    else
        out << ',';
    out << '\n';
    return out.str();
}

std::string cmd_eval(const options& o, int& violations)
{
    const auto grid = parse_grid(o.grid);
    const auto in = load_input(o, true);
    const auto approx = build_approximant(o, in);

    std::vector<std::pair<real, std::optional<real>>> points;
    for (int i = 0; i < grid.count; ++i) {
        real x = grid.start;
        if (grid.count > 1) {
            const real frac = real(i) / real(grid.count - 1);
            if (o.log_spacing) {
                using std::log;
                using std::exp;
                x = exp(log(grid.start) + frac * (log(grid.stop) - log(grid.start)));
            } else {
                x = grid.start + frac * (grid.stop - grid.start);
            }
        }
        try {
            points.emplace_back(x, ssfa::evaluate(approx, x));
        } catch (const ssfa::domain_violation&) {
            points.emplace_back(x, std::nullopt);
            ++violations;
        }
    }

    const auto num = [](const real& v) { return ssfa::io::format_significant(v, 17); };
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& [x, f] : points)
            arr.push_back({{"x", num(x)}, {"f", f ? json(num(*f)) : json(nullptr)}});
        return json{{"points", arr}, {"domain_violations", violations}}.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "x,f\n";
    for (const auto& [x, f] : points)
        out << num(x) << ',' << (f ? num(*f) : std::string{}) << '\n';
    return out.str();
}

std::string cmd_table(const options& o)
{
    const auto c = ssfa::find_case<real>(o.case_name);
    const auto table = ssfa::make_convergence_table(c, parse_orders(o.orders));
    if (o.format == "json")
        return ssfa::io::to_json(table).dump(2) + "\n";
    return ssfa::io::table_to_csv(table);
}

void write_output(const options& o, const std::string& text)
{
    if (o.output == "-" || o.output.empty()) {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out)
        throw usage_error("cannot write '" + o.output + "'");
    out << text;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Self-similar factor approximants: large-variable extrapolation of truncated series"};
    app.require_subcommand(1);
    options o;
    app.add_option("--precision", o.precision, "working precision in decimal digits (default 80, env SSFA_PRECISION)")
        ->check(CLI::Range(ssfa::min_precision_digits, ssfa::max_precision_digits));
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", o.output, "output path, '-' for stdout");

    const auto add_source = [&o](CLI::App* sub, bool with_approx) {
        sub->add_option("--case", o.case_name, "built-in case name");
        sub->add_option("--series", o.series_path, "series JSON file");
        if (with_approx)
            sub->add_option("--approx", o.approx_path, "approximant JSON file (output of solve)");
        sub->add_option("--order", o.order, "number of matched terms (default: all)")->check(CLI::PositiveNumber);
        sub->add_flag("--odd", o.odd, "allow odd orders (A_1 = 1 closure)");
    };

    auto* list = app.add_subcommand("list-cases", "list built-in benchmark cases");
    auto* coeffs = app.add_subcommand("coeffs", "print expansion coefficients of a case");
    coeffs->add_option("--case", o.case_name, "built-in case name")->required();
    coeffs->add_option("--order", o.order, "number of coefficients")->check(CLI::PositiveNumber);
    coeffs->add_flag("--raw", o.raw, "coefficients as written, before dividing by the leading term");
    auto* solve = app.add_subcommand("solve", "solve for factor parameters and large-variable limit");
    add_source(solve, false);
    solve->add_option("--exact", o.exact, "reference limit B,gamma for percentage errors");
    auto* eval = app.add_subcommand("eval", "evaluate an approximant on a grid (CSV x,f)");
    add_source(eval, true);
    eval->add_option("--grid", o.grid, "start:stop:count")->required();
    eval->add_flag("--log-spacing", o.log_spacing, "geometric instead of linear grid");
    auto* asympt = app.add_subcommand("asympt", "large-variable amplitude and exponent");
    add_source(asympt, true);
    asympt->add_option("--exact", o.exact, "reference limit B,gamma for percentage errors");
    auto* table = app.add_subcommand("table", "convergence table over even orders");
    table->add_option("--case", o.case_name, "built-in case name")->required();
    table->add_option("--orders", o.orders, "e.g. 2,4,6 or 2..16")->required();

    for (auto* sub : {list, coeffs, solve, eval, asympt, table})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    if (o.precision == 0) {
        o.precision = ssfa::precision_from_environment();
        if (o.precision == 0) {
            std::cerr << "error: SSFA_PRECISION must be an integer in [" << ssfa::min_precision_digits << ", "
                      << ssfa::max_precision_digits << "]\n";
            return usage;
        }
    }
    ssfa::precision_guard guard(o.precision);

    try {
        std::string text;
        int violations = 0;
        if (*list)
            text = cmd_list_cases(o);
        else if (*coeffs)
            text = cmd_coeffs(o);
        else if (*solve)
            text = cmd_solve(o);
        else if (*eval)
            text = cmd_eval(o, violations);
        else if (*asympt)
            text = cmd_asympt(o);
        else if (*table)
            text = cmd_table(o);
        write_output(o, text);
        if (violations > 0)
            std::cerr << "warning: " << violations << " grid point(s) outside the approximant's real domain\n";
        return ok;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const ssfa::order_too_large& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const ssfa::invalid_input& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const ssfa::parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return parse;
    } catch (const ssfa::non_convergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return solver;
    } catch (const ssfa::domain_violation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return domain;
    }
}
