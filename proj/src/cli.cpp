#include "loewner/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "loewner/defect.hpp"
#include "loewner/io.hpp"

namespace loewner::cli {
namespace {

namespace fs = std::filesystem;

struct Emitted
{
    std::string text;
    bool violation = false;
};

fs::path base_dir(RunConfig const& config)
{
    return fs::path(config.input).parent_path();
}

std::string kv_csv(Json const& flat)
{
    std::string out = "key,value\n";
    for (auto const& [k, v] : flat.items())
    {
        std::string value = v.is_string() ? v.get<std::string>() : v.dump();
        out += k + "," + value + "\n";
    }
    return out;
}

bool violated(DefectReport const& r)
{
    return !r.all_pass()
           || (r.one_var_check.applicable && !r.one_var_check.consistent);
}

Emitted run_reduce(RunConfig const& config, Json const& in)
{
    Lattice const lattice = parse_lattice(in.contains("lattice")
                                              ? in.at("lattice")
                                              : in);
    auto const modulus = reduce(lattice);
    auto const minima = successive_minima(lattice);
    Json j = to_json(modulus);
    j["lambda1"] = round12(minima.lambda1);
    j["lambda2"] = round12(minima.lambda2);
    j["hermite_ratio"] = round12(hermite_ratio(lattice));
    if (config.format == Format::csv)
    {
        Json flat;
        flat["tau_re"] = j["tau"][0];
        flat["tau_im"] = j["tau"][1];
        for (char const* k : {"sigma_sq", "scale", "rotation", "lambda1",
                              "lambda2", "hermite_ratio"})
        {
            flat[k] = j[k];
        }
        return {kv_csv(flat), false};
    }
    return {dump(j), false};
}

Emitted run_systole(RunConfig const& config, Json const& in)
{
    auto const metric = parse_metric(in, config.rows, config.cols,
                                     base_dir(config));
    auto const est = systole_upper(metric);
    Json j = to_json(est);
    if (metric.lattice().is_standard_square()
        && one_variable_axis(metric.factor()))
    {
        j["one_var_exact"] = round12(systole_one_var(metric));
    }
    if (config.format == Format::csv)
    {
        Json flat;
        for (char const* k : {"upper", "error_budget", "err_quadrature",
                              "stencil_error", "lower_fubini", "method"})
        {
            flat[k] = j[k];
        }
        flat["p"] = est.witness_class.p;
        flat["q"] = est.witness_class.q;
        return {kv_csv(flat), false};
    }
    return {dump(j), false};
}

Emitted emit_report(RunConfig const& config, DefectReport const& report,
                    Json prefix)
{
    if (config.format == Format::csv)
    {
        return {to_csv(report), violated(report)};
    }
    prefix["report"] = to_json(report);
    return {dump(prefix), violated(report)};
}

Emitted emit_refined(RunConfig const& config, DefectReport const& coarse,
                     DefectReport const& fine, Json prefix)
{
    bool const bad = violated(coarse) || violated(fine);
    auto const c_rows = coarse.rows();
    auto const f_rows = fine.rows();
    if (config.format == Format::csv)
    {
        std::string out = "inequality,margin_coarse,margin_fine,difference\n";
        for (std::size_t k = 0; k < c_rows.size(); ++k)
        {
            if (!c_rows[k].second->applicable)
            {
                continue;
            }
            double const a = c_rows[k].second->margin;
            double const b = f_rows[k].second->margin;
            out += std::string(c_rows[k].first) + "," + format12(a) + ","
                   + format12(b) + "," + format12(b - a) + "\n";
        }
        return {out, bad};
    }
    Json diff;
    diff["sys_upper"] = round12(fine.sys_upper - coarse.sys_upper);
    diff["area"] = round12(fine.area - coarse.area);
    diff["variance"] = round12(fine.variance - coarse.variance);
    Json margins;
    for (std::size_t k = 0; k < c_rows.size(); ++k)
    {
        if (c_rows[k].second->applicable)
        {
            margins[std::string(c_rows[k].first)] = round12(
                f_rows[k].second->margin - c_rows[k].second->margin);
        }
    }
    diff["margins"] = std::move(margins);
    prefix["coarse"] = {{"grid", {config.rows, config.cols}},
                        {"report", to_json(coarse)}};
    prefix["fine"] = {{"grid", {2 * config.rows, 2 * config.cols}},
                      {"report", to_json(fine)}};
    prefix["differences"] = std::move(diff);
    return {dump(prefix), bad};
}

Emitted run_analyze(RunConfig const& config, Json const& in)
{
    auto const metric = parse_metric(in, config.rows, config.cols,
                                     base_dir(config));
    Json prefix;
    prefix["modulus"] = to_json(metric.modulus());
    auto const report = analyze(metric);
    if (!config.refine)
    {
        return emit_report(config, report, std::move(prefix));
    }
    // Sampled factors have a fixed resolution; refining them would compare
    // a grid with itself.
    if (in.contains("factor") && !in.at("factor").contains("family"))
    {
        throw InputError("--refine needs a parametric factor (\"family\"); "
                         "csv and values grids cannot be resampled");
    }
    auto const fine_metric = parse_metric(in, 2 * config.rows,
                                          2 * config.cols, base_dir(config));
    return emit_refined(config, report, analyze(fine_metric),
                        std::move(prefix));
}

Emitted run_revolution(RunConfig const& config, Json const& in)
{
    auto const curve = arclength_reparametrize(parse_curve(in));
    auto const chart_for = [&](std::size_t rows) {
        return isothermal_chart(curve, rows);
    };
    auto const chart = chart_for(config.rows);
    auto const metric = chart_to_metric(chart, config.cols);
    Json prefix;
    prefix["chart"] = to_json(chart);
    prefix["modulus"] = to_json(metric.modulus());
    auto const report = analyze(metric);
    if (!config.refine)
    {
        return emit_report(config, report, std::move(prefix));
    }
    auto const fine = chart_to_metric(chart_for(2 * config.rows),
                                      2 * config.cols);
    return emit_refined(config, report, analyze(fine), std::move(prefix));
}

Emitted run_sweep(RunConfig const& config, Json const& in)
{
    Json const& base = in.contains("metric") ? in.at("metric") : Json();
    if (!base.is_object())
    {
        throw InputError("field \"metric\": expected a metric spec object");
    }
    if (!in.contains("parameter") || !in.at("parameter").is_string())
    {
        throw InputError("field \"parameter\": expected a JSON pointer "
                         "string such as \"/factor/terms/0/amp\"");
    }
    if (!in.contains("values") || !in.at("values").is_array())
    {
        throw InputError("field \"values\": expected an array of numbers");
    }
    Json::json_pointer pointer;
    try
    {
        pointer = Json::json_pointer(in.at("parameter").get<std::string>());
    }
    catch (Json::exception const& e)
    {
        throw InputError(std::string("field \"parameter\": ") + e.what());
    }

    std::string csv = "value,area,variance,sys_upper";
    Json runs = Json::array();
    bool bad = false;
    bool header_done = false;
    for (std::size_t k = 0; k < in.at("values").size(); ++k)
    {
        Json const& v = in.at("values")[k];
        if (!v.is_number())
        {
            throw InputError("field \"values[" + std::to_string(k)
                             + "]\": expected a number");
        }
        Json spec = base;
        if (!spec.contains(pointer.parent_pointer()))
        {
            throw InputError("field \"parameter\": path does not exist in "
                             "the metric spec");
        }
        spec[pointer] = v;
        auto const report = analyze(parse_metric(spec, config.rows,
                                                 config.cols,
                                                 base_dir(config)));
        bad = bad || violated(report);
        auto const rows = report.rows();
        if (!header_done)
        {
            for (auto const& [name, row] : rows)
            {
                csv += ",margin_" + std::string(name);
            }
            csv += ",all_pass\n";
            header_done = true;
        }
        csv += format12(v.get<double>()) + "," + format12(report.area) + ","
               + format12(report.variance) + ","
               + format12(report.sys_upper);
        Json margins;
        for (auto const& [name, row] : rows)
        {
            csv += ",";
            if (row->applicable)
            {
                csv += format12(row->margin);
                margins[std::string(name)] = round12(row->margin);
            }
        }
        csv += std::string(",") + (report.all_pass() ? "1" : "0") + "\n";
        runs.push_back({{"value", round12(v.get<double>())},
                        {"margins", std::move(margins)},
                        {"all_pass", report.all_pass()}});
    }
    if (!header_done)
    {
        csv += "\n";
    }
    if (config.format == Format::json)
    {
        return {dump(runs), bad};
    }
    return {csv, bad};
}

}  // namespace

Command parse_command(std::string const& name)
{
    if (name == "reduce")
        return Command::reduce;
    if (name == "analyze")
        return Command::analyze;
    if (name == "systole")
        return Command::systole;
    if (name == "revolution")
        return Command::revolution;
    if (name == "sweep")
        return Command::sweep;
    throw InputError("unknown command \"" + name + "\"");
}

void parse_grid(std::string const& text, RunConfig& config)
{
    auto const parse = [&](std::string const& s) -> std::size_t {
        std::size_t used = 0;
        long v = 0;
        try
        {
            v = std::stol(s, &used);
        }
        catch (std::exception const&)
        {
            used = 0;
        }
        if (used != s.size() || v < 4)
        {
            throw InputError("--grid: expected N or N,M with N, M >= 4, got \""
                             + text + "\"");
        }
        return static_cast<std::size_t>(v);
    };
    auto const comma = text.find(',');
    if (comma == std::string::npos)
    {
        config.rows = config.cols = parse(text);
    }
    else
    {
        config.rows = parse(text.substr(0, comma));
        config.cols = parse(text.substr(comma + 1));
    }
}

int run(RunConfig const& config, std::ostream& out, std::ostream& err)
{
    Emitted result;
    try
    {
        if (config.input.empty())
        {
            throw InputError("input path is empty");
        }
        if (config.rows < 4 || config.cols < 4)
        {
            throw InputError("grid must be at least 4x4");
        }
        if (config.refine && config.command != Command::analyze
            && config.command != Command::revolution)
        {
            throw InputError("--refine applies to analyze and revolution only");
        }
        Json const in = read_json_file(config.input);
        switch (config.command)
        {
            case Command::reduce:
                result = run_reduce(config, in);
                break;
            case Command::analyze:
                result = run_analyze(config, in);
                break;
            case Command::systole:
                result = run_systole(config, in);
                break;
            case Command::revolution:
                result = run_revolution(config, in);
                break;
            case Command::sweep:
                result = run_sweep(config, in);
                break;
        }
    }
    catch (Error const& e)
    {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    catch (Json::exception const& e)
    {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    if (config.output.empty())
    {
        out << result.text;
    }
    else
    {
        std::ofstream file(config.output, std::ios::binary);
        if (!file)
        {
            err << "error: cannot write " << config.output << "\n";
            return kExitInputError;
        }
        file << result.text;
    }
    if (result.violation)
    {
        err << "inequality violated beyond its error budget\n";
        return kExitViolation;
    }
    return kExitOk;
}

}  // namespace loewner::cli
