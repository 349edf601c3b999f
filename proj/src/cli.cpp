#include "lagsum/cli.hpp"

#include "lagsum/analyzer.hpp"
#include "lagsum/format.hpp"
#include "lagsum/model_problems.hpp"
#include "lagsum/series_file.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <ostream>

namespace lagsum {

namespace {

using ordered_json = nlohmann::ordered_json;

enum class Format { Text, Csv, Json };

struct Options {
    int digits = 16;
    std::string format;

    // table
    std::string which;

    // sum
    int p = -1;
    std::vector<std::string> num;
    std::vector<std::string> den;
    std::string z;
    unsigned nu = 0;
    std::string method = "delta";
    unsigned terms = 20;

    // transform / classify
    std::string input;
    unsigned max_nu = 5;
    unsigned budget = default_budget;
    unsigned window = 0;
};

Format resolve_format(const std::string& flag, Format fallback)
{
    if (flag.empty())
        return fallback;
    if (flag == "csv")
        return Format::Csv;
    if (flag == "json")
        return Format::Json;
    return Format::Text;
}

/// Runs `f.template operator()<Real>(ctx)` with the scalar type for the
/// requested number of digits.
template <class F>
int with_precision(int digits, F&& f)
{
    if (digits > 100)
        throw input_error("--digits above 100 is not supported");
    PrecisionContext ctx;
    try {
        ctx = PrecisionContext(digits);
    } catch (const std::invalid_argument& e) {
        throw input_error(e.what());
    }
    if (digits <= 16)
        return f.template operator()<double>(ctx);
    if (digits <= 50)
        return f.template operator()<Real50>(ctx);
    return f.template operator()<Real100>(ctx);
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

void print_table(const std::string& name, const Table& t, Format format, std::ostream& out)
{
    if (format == Format::Json) {
        ordered_json j;
        j["table"] = name;
        j["rows"] = ordered_json::array();
        for (const auto& row : t.rows) {
            ordered_json r;
            for (std::size_t i = 0; i < t.columns.size(); ++i)
                r[t.columns[i]] = row[i];
            j["rows"].push_back(std::move(r));
        }
        out << j.dump(2) << '\n';
        return;
    }
    if (format == Format::Csv) {
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i)
                out << (i ? "," : "") << cells[i];
            out << '\n';
        };
        line(t.columns);
        for (const auto& row : t.rows)
            line(row);
        return;
    }
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        width[i] = t.columns[i].size();
        for (const auto& row : t.rows)
            width[i] = std::max(width[i], row[i].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
        std::string text;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                text += "  ";
            text += std::string(width[i] - cells[i].size(), ' ') + cells[i];
        }
        out << text << '\n';
    };
    line(t.columns);
    for (const auto& row : t.rows)
        line(row);
}

// ---------------------------------------------------------------- table

template <class Real>
Table transform_table(const HypSeriesSpec<Real>& spec, unsigned last_n, bool with_d, const Real& exact,
                      const PrecisionContext& ctx)
{
    Table t;
    t.columns = {"n", "s_n", "epsilon"};
    if (with_d)
        t.columns.push_back("levin_d");
    t.columns.push_back("delta");
    for (const auto& row : transform_rows(spec, last_n, ctx)) {
        std::vector<std::string> cells = {std::to_string(row.n), format_number(row.partial_sum),
                                          format_number(row.epsilon)};
        if (with_d)
            cells.push_back(format_number(row.levin_d));
        cells.push_back(format_number(row.delta));
        t.rows.push_back(std::move(cells));
    }
    std::vector<std::string> exact_row = {"exact", ""};
    for (std::size_t i = 2; i < t.columns.size(); ++i)
        exact_row.push_back(format_number(exact));
    t.rows.push_back(std::move(exact_row));
    return t;
}

template <class Real>
Table inline_table(const HypSeriesSpec<Real>& spec, const HypSeriesSpec<Real100>& wide, unsigned nu,
                   const PrecisionContext& ctx)
{
    // orders of the published inline results
    const unsigned epsilon_last = nu == 0 ? 12 : 17;
    const unsigned levin_order = nu == 0 ? 12 : 17;
    auto r = inline_results(spec, epsilon_last, levin_order, ctx);
    Table t;
    t.columns = {"epsilon", "levin_d", "delta", "exact"};
    t.rows.push_back({format_number(r.epsilon.value), format_number(r.levin_d.value), format_number(r.delta.value),
                      format_number(delta_reference(wide))});
    return t;
}

int cmd_table(const Options& opt, std::ostream& out)
{
    const Format format = resolve_format(opt.format, Format::Text);
    return with_precision(opt.digits, [&]<class Real>(const PrecisionContext& ctx) {
        Table t;
        if (opt.which == "table1" || opt.which == "table2") {
            const unsigned nu = opt.which == "table1" ? 0 : 10;
            auto spec = model_2f1<Real>(nu);
            const auto& a = spec.numerator_params;
            Real exact = gauss_2F1_route<Real>(a[0] + nu, a[1] + nu, spec.denominator_params[0] + nu, Real(-1),
                                               ContinuationRoute::PfaffA, ctx);
            t = opt.which == "table1" ? transform_table(spec, 11, true, exact, ctx)
                                      : transform_table(spec, 17, false, exact, ctx);
        } else {
            const unsigned nu = opt.which.ends_with("nu0") ? 0 : 10;
            if (opt.which.starts_with("f32"))
                t = inline_table(model_3f2<Real>(nu), model_3f2<Real100>(nu), nu, ctx);
            else
                t = inline_table(model_4f3<Real>(nu), model_4f3<Real100>(nu), nu, ctx);
        }
        print_table(opt.which, t, format, out);
        return int(exit_ok);
    });
}

// ---------------------------------------------------------------- sum

int cmd_sum(const Options& opt, std::ostream& out)
{
    if (opt.num.size() != std::size_t(opt.p) + 1 || opt.den.size() != std::size_t(opt.p))
        throw input_error("--num needs p+1 and --den needs p parameters");
    if (opt.terms == 0)
        throw input_error("--terms must be positive");
    const Format format = resolve_format(opt.format, Format::Text);
    return with_precision(opt.digits, [&]<class Real>(const PrecisionContext& ctx) {
        HypSeriesSpec<Real> spec;
        for (const auto& a : opt.num)
            spec.numerator_params.push_back(detail::parse_field<Real>(a, "--num"));
        for (const auto& b : opt.den)
            spec.denominator_params.push_back(detail::parse_field<Real>(b, "--den"));
        spec.argument = detail::parse_field<Real>(opt.z, "--z");
        spec.shift = opt.nu;
        try {
            spec.validate();
        } catch (const std::invalid_argument& e) {
            throw input_error(e.what());
        }
        auto sums = partial_sums(spec, opt.terms);
        std::span<const Real> seq(sums);

        SummationResult<Real> r;
        if (opt.method == "epsilon")
            r = epsilon_best(seq, ctx);
        else if (sums.size() == 1)
            r = {sums[0], 0, Real(0), SummationStatus::Converged};
        else if (opt.method == "levin_d")
            r = d_transform(seq, Real(1), ctx);
        else
            r = delta_transform(seq, Real(1), ctx);

        const std::string value = format_number(r.value);
        const std::string stability = format_number(r.stability);
        const std::string status(to_string(r.status));
        if (format == Format::Json) {
            ordered_json j;
            j["value"] = value;
            j["status"] = status;
            j["stability"] = stability;
            j["order_used"] = r.order_used;
            out << j.dump(2) << '\n';
        } else if (format == Format::Csv) {
            out << "value,status,stability,order_used\n"
                << value << ',' << status << ',' << stability << ',' << r.order_used << '\n';
        } else {
            out << "value      " << value << '\n'
                << "status     " << status << '\n'
                << "stability  " << stability << '\n'
                << "order      " << r.order_used << '\n';
        }
        return int(exit_ok);
    });
}

// ---------------------------------------------------------------- transform / classify

ordered_json verdict_json(const AnalyticityVerdict& v)
{
    ordered_json j;
    j["sign_pattern"] = std::string(to_string(v.sign_pattern));
    j["decay_class"] = std::string(to_string(v.decay.kind));
    j["decay_parameter"] = format_number(v.decay.parameter, 6);
    j["regime"] = std::string(to_string(v.regime));
    j["fit_residual"] = format_number(v.fit_residual, 6);
    return j;
}

void print_verdict_csv(const AnalyticityVerdict& v, std::ostream& out)
{
    out << "sign_pattern,decay_class,decay_parameter,regime,fit_residual\n"
        << to_string(v.sign_pattern) << ',' << to_string(v.decay.kind) << ','
        << format_number(v.decay.parameter, 6) << ',' << to_string(v.regime) << ','
        << format_number(v.fit_residual, 6) << '\n';
}

SumMethod parse_method(const std::string& name)
{
    if (name == "epsilon")
        return SumMethod::Epsilon;
    if (name == "levin_d")
        return SumMethod::LevinD;
    return SumMethod::Delta;
}

int cmd_transform(const Options& opt, std::ostream& out, std::ostream& err)
{
    const SeriesFile file = load_series_file(opt.input);
    if (file.family && *file.family == "exp_power")
        throw input_error("the exp_power family supports classify only");
    const Format format = resolve_format(opt.format, Format::Json);
    return with_precision(opt.digits, [&]<class Real>(const PrecisionContext& ctx) {
        auto series = make_series<Real>(file);
        unsigned budget = opt.budget;
        if (auto avail = series.available()) {
            if (*avail < std::size_t(opt.max_nu) + 2)
                throw input_error("coefficient list too short for --max-nu " + std::to_string(opt.max_nu));
            if (std::size_t(opt.max_nu) + budget > *avail) {
                budget = unsigned(*avail - opt.max_nu);
                err << "note: inner series limited to " << budget << " terms by the coefficient list\n";
            }
        }
        if (budget == 0)
            throw input_error("--budget must be positive");
        auto result = transform_to_power_series(series, opt.max_nu, budget, ctx, parse_method(opt.method));

        if (format == Format::Csv) {
            out << "nu,value,status,stability\n";
            for (std::size_t nu = 0; nu < result.gammas.size(); ++nu) {
                const auto& g = result.gammas[nu];
                out << nu << ',' << format_number(g.value) << ',' << to_string(g.status) << ','
                    << format_number(g.stability) << '\n';
            }
        } else {
            ordered_json j;
            j["verdict"] = result.verdict ? verdict_json(*result.verdict) : ordered_json(nullptr);
            j["gammas"] = ordered_json::array();
            for (std::size_t nu = 0; nu < result.gammas.size(); ++nu) {
                const auto& g = result.gammas[nu];
                j["gammas"].push_back({{"nu", nu},
                                       {"value", format_number(g.value)},
                                       {"status", std::string(to_string(g.status))},
                                       {"stability", format_number(g.stability)}});
            }
            j["exists"] = result.exists;
            out << j.dump(2) << '\n';
        }
        return int(result.exists ? exit_ok : exit_failed);
    });
}

int cmd_classify(const Options& opt, std::ostream& out)
{
    const SeriesFile file = load_series_file(opt.input);
    const Format format = resolve_format(opt.format, Format::Json);
    return with_precision(opt.digits, [&]<class Real>(const PrecisionContext&) {
        auto series = make_series<Real>(file);
        AnalyticityVerdict v;
        try {
            v = classify(series, opt.window);
        } catch (const std::invalid_argument& e) {
            throw input_error(e.what());
        }
        if (format == Format::Csv)
            print_verdict_csv(v, out);
        else
            out << ordered_json{{"verdict", verdict_json(v)}}.dump(2) << '\n';
        return int(exit_ok);
    });
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options opt;
    CLI::App app{"Laguerre series to power series: classification, transformation and summation"};
    app.require_subcommand(1);
    app.add_option("--digits", opt.digits, "working precision in significant digits (15-100)")
        ->capture_default_str();
    app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "csv", "json"}));

    auto* table = app.add_subcommand("table", "reproduce a published transformation table");
    table->add_option("which", opt.which, "table name")
        ->required()
        ->check(CLI::IsMember({"table1", "table2", "f32_nu0", "f32_nu10", "f43_nu0", "f43_nu10"}));

    const std::vector<std::string> methods = {"delta", "levin_d", "epsilon"};
    auto* sum = app.add_subcommand("sum", "sum a shifted hypergeometric series");
    sum->add_option("--p", opt.p, "order: p+1 numerator and p denominator parameters")->required()->check(CLI::NonNegativeNumber);
    sum->add_option("--num", opt.num, "numerator parameters, comma separated")->required()->delimiter(',');
    sum->add_option("--den", opt.den, "denominator parameters, comma separated")->delimiter(',');
    sum->add_option("--z", opt.z, "argument")->required();
    sum->add_option("--nu", opt.nu, "shift added to every parameter")->capture_default_str();
    sum->add_option("--method", opt.method, "summation method")->check(CLI::IsMember(methods))->capture_default_str();
    sum->add_option("--terms", opt.terms, "number of partial sums used")->capture_default_str();

    auto* transform = app.add_subcommand("transform", "power-series coefficients of a Laguerre series");
    transform->add_option("input", opt.input, "series file")->required();
    transform->add_option("--max-nu", opt.max_nu, "highest power coefficient")->capture_default_str();
    transform->add_option("--budget", opt.budget, "inner-series terms per coefficient")->capture_default_str();
    transform->add_option("--method", opt.method, "summation method")->check(CLI::IsMember(methods))->capture_default_str();

    auto* classify_cmd = app.add_subcommand("classify", "analyticity regime of a Laguerre series");
    classify_cmd->add_option("input", opt.input, "series file")->required();
    classify_cmd->add_option("--window", opt.window, "tail window (0 = default)")->capture_default_str();

    for (auto* sub : {table, sum, transform, classify_cmd})
        sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? int(exit_ok) : int(exit_input_error);
    }

    try {
        if (table->parsed())
            return cmd_table(opt, out);
        if (sum->parsed())
            return cmd_sum(opt, out);
        if (transform->parsed())
            return cmd_transform(opt, out, err);
        return cmd_classify(opt, out);
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
    }
    return exit_input_error;
}

} // namespace lagsum
