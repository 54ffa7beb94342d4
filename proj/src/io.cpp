#include "loewner/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

namespace loewner {
namespace {

[[noreturn]] void fail_field(std::string const& field, std::string const& what)
{
    throw InputError("field \"" + field + "\": " + what);
}

double get_number(Json const& j, std::string const& field)
{
    if (!j.is_number())
    {
        fail_field(field, "expected a number");
    }
    return j.get<double>();
}

Json const& member(Json const& j, char const* key, std::string const& field)
{
    if (!j.is_object() || !j.contains(key))
    {
        fail_field(field, std::string("missing key \"") + key + "\"");
    }
    return j.at(key);
}

Vec2 get_pair(Json const& j, std::string const& field)
{
    if (!j.is_array() || j.size() != 2)
    {
        fail_field(field, "expected a pair [a, b]");
    }
    return {get_number(j[0], field + "[0]"), get_number(j[1], field + "[1]")};
}

std::vector<std::vector<double>> get_rows(Json const& j,
                                          std::string const& field)
{
    if (!j.is_array())
    {
        fail_field(field, "expected an array of rows");
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < j.size(); ++i)
    {
        std::string const rf = field + "[" + std::to_string(i) + "]";
        if (!j[i].is_array())
        {
            fail_field(rf, "expected an array");
        }
        std::vector<double> row;
        for (std::size_t k = 0; k < j[i].size(); ++k)
        {
            row.push_back(
                get_number(j[i][k], rf + "[" + std::to_string(k) + "]"));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Grid grid_from_rows(std::vector<std::vector<double>> const& rows,
                    std::string const& where)
{
    if (rows.empty() || rows.front().empty())
    {
        throw InputError(where + ": empty grid");
    }
    std::size_t const cols = rows.front().size();
    std::vector<double> values;
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        if (rows[i].size() != cols)
        {
            throw InputError(where + ": row " + std::to_string(i + 1)
                             + " has " + std::to_string(rows[i].size())
                             + " values, expected " + std::to_string(cols));
        }
        values.insert(values.end(), rows[i].begin(), rows[i].end());
    }
    return Grid(rows.size(), cols, std::move(values));
}

Json number(double v)
{
    if (!std::isfinite(v))
    {
        return nullptr;
    }
    return round12(v);
}

}  // namespace

double round12(double v)
{
    if (!std::isfinite(v))
    {
        return v;
    }
    double const r = std::stod(format12(v));
    return r == 0 ? 0.0 : r;
}

std::string format12(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Lattice parse_lattice(Json const& j)
{
    if (j.is_object() && j.contains("basis"))
    {
        Json const& b = j.at("basis");
        if (!b.is_array() || b.size() != 2)
        {
            fail_field("lattice.basis", "expected [[x1,y1],[x2,y2]]");
        }
        return {get_pair(b[0], "lattice.basis[0]"),
                get_pair(b[1], "lattice.basis[1]")};
    }
    if (j.is_object() && j.contains("tau"))
    {
        Vec2 const t = get_pair(j.at("tau"), "lattice.tau");
        return Lattice::from_tau({t.x, t.y});
    }
    fail_field("lattice", "expected {\"basis\": ...} or {\"tau\": ...}");
}

TrigFamily parse_trig_family(Json const& j)
{
    Json const& fam = member(j, "family", "factor");
    if (!fam.is_string() || fam.get<std::string>() != "trig")
    {
        fail_field("factor.family", "only \"trig\" is supported");
    }
    TrigFamily family;
    if (j.contains("offset"))
    {
        family.offset = get_number(j.at("offset"), "factor.offset");
    }
    if (j.contains("terms"))
    {
        Json const& terms = j.at("terms");
        if (!terms.is_array())
        {
            fail_field("factor.terms", "expected an array");
        }
        for (std::size_t k = 0; k < terms.size(); ++k)
        {
            std::string const f = "factor.terms[" + std::to_string(k) + "]";
            Json const& t = terms[k];
            TrigTerm term;
            auto const integer = [&](char const* key) {
                Json const& v = member(t, key, f);
                if (!v.is_number_integer())
                {
                    fail_field(f + "." + key, "expected an integer");
                }
                return v.get<int>();
            };
            term.mx = integer("mx");
            term.my = integer("my");
            term.amp = get_number(member(t, "amp", f), f + ".amp");
            if (t.contains("phase"))
            {
                term.phase = get_number(t.at("phase"), f + ".phase");
            }
            family.terms.push_back(term);
        }
    }
    return family;
}

Grid read_csv_grid(std::istream& in)
{
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
        {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos)
        {
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(ss, cell, ','))
        {
            ++col;
            std::size_t used = 0;
            double v = 0;
            try
            {
                v = std::stod(cell, &used);
            }
            catch (std::exception const&)
            {
                used = 0;
            }
            if (used == 0
                || cell.find_first_not_of(" \t", used) != std::string::npos)
            {
                throw InputError("csv line " + std::to_string(line_no)
                                 + ", column " + std::to_string(col)
                                 + ": not a number: \"" + cell + "\"");
            }
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size())
        {
            throw InputError("csv line " + std::to_string(line_no) + ": "
                             + std::to_string(row.size())
                             + " values, expected "
                             + std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }
    return grid_from_rows(rows, "csv");
}

Grid read_csv_grid(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw InputError("cannot open " + path.string());
    }
    return read_csv_grid(in);
}

Grid parse_factor(Json const& j, std::size_t rows, std::size_t cols,
                  std::filesystem::path const& base_dir)
{
    if (j.is_object() && j.contains("family"))
    {
        return parse_trig_family(j).sample(rows, cols);
    }
    if (j.is_object() && j.contains("csv"))
    {
        Json const& p = j.at("csv");
        if (!p.is_string())
        {
            fail_field("factor.csv", "expected a path string");
        }
        std::filesystem::path path = p.get<std::string>();
        if (path.is_relative())
        {
            path = base_dir / path;
        }
        return read_csv_grid(path);
    }
    if (j.is_object() && j.contains("values"))
    {
        return grid_from_rows(get_rows(j.at("values"), "factor.values"),
                              "factor.values");
    }
    fail_field("factor", "expected a trig family, {\"csv\": path} or "
                         "{\"values\": [[...]]}");
}

TorusMetric parse_metric(Json const& j, std::size_t rows, std::size_t cols,
                         std::filesystem::path const& base_dir)
{
    if (!j.is_object())
    {
        fail_field("metric", "expected an object");
    }
    // Omitted parts default to the unit square and f = 1.
    Lattice const lattice = j.contains("lattice")
                                ? parse_lattice(j.at("lattice"))
                                : Lattice::unit_square();
    Grid const factor = j.contains("factor")
                            ? parse_factor(j.at("factor"), rows, cols,
                                           base_dir)
                            : Grid(rows, cols, 1.0);
    return build_metric(lattice, factor);
}

GeneratingCurve parse_curve(Json const& j)
{
    if (j.is_object() && j.contains("samples"))
    {
        auto const rows = get_rows(j.at("samples"), "samples");
        std::vector<Vec2> pts;
        for (std::size_t k = 0; k < rows.size(); ++k)
        {
            if (rows[k].size() != 2)
            {
                fail_field("samples[" + std::to_string(k) + "]",
                           "expected [x, z]");
            }
            pts.push_back({rows[k][0], rows[k][1]});
        }
        return GeneratingCurve::from_samples(std::move(pts));
    }
    if (j.is_object() && j.contains("profile"))
    {
        Json const& p = j.at("profile");
        Json const& fam = member(p, "family", "profile");
        if (!fam.is_string() || fam.get<std::string>() != "circle")
        {
            fail_field("profile.family", "only \"circle\" is supported");
        }
        double const R = get_number(member(p, "R", "profile"), "profile.R");
        double const r = get_number(member(p, "r", "profile"), "profile.r");
        Json const& n = member(p, "n", "profile");
        if (!n.is_number_integer() || n.get<long>() < 4)
        {
            fail_field("profile.n", "expected an integer >= 4");
        }
        return GeneratingCurve::circle(R, r, n.get<std::size_t>());
    }
    fail_field("curve", "expected {\"samples\": ...} or {\"profile\": ...}");
}

Json parse_json_text(std::string const& text)
{
    try
    {
        return Json::parse(text);
    }
    catch (Json::parse_error const& e)
    {
        throw InputError(e.what());
    }
}

Json read_json_file(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw InputError("cannot open " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

Json to_json(ReducedModulus const& m)
{
    Json j;
    j["tau"] = {number(m.tau.real()), number(m.tau.imag())};
    j["sigma_sq"] = number(m.sigma_sq);
    j["scale"] = number(m.scale);
    j["rotation"] = number(m.rotation);
    return j;
}

Json to_json(HomotopyClass const& c)
{
    Json j;
    j["p"] = c.p;
    j["q"] = c.q;
    j["flat_length"] = number(c.flat_length);
    return j;
}

Json to_json(SystoleEstimate const& est)
{
    Json j;
    j["upper"] = number(est.upper);
    j["error_budget"] = number(est.error_budget);
    j["err_quadrature"] = number(est.err_quadrature);
    j["stencil_error"] = number(est.stencil_error);
    j["witness_class"] = to_json(est.witness_class);
    Json path = Json::array();
    // Only the turning points; runs of identical steps are collinear.
    auto const& w = est.witness_path;
    for (std::size_t k = 0; k < w.size(); ++k)
    {
        if (k > 0 && k + 1 < w.size())
        {
            Vec2 const in = w[k] - w[k - 1];
            Vec2 const out = w[k + 1] - w[k];
            if (norm(in - out) <= 1e-12 * norm(in))
            {
                continue;
            }
        }
        path.push_back({number(w[k].x), number(w[k].y)});
    }
    j["witness_path"] = std::move(path);
    j["lower_fubini"] = number(est.lower_fubini);
    j["grid"] = {est.rows, est.cols};
    j["method"] = to_string(est.method);
    return j;
}

Json to_json(InequalityRow const& row)
{
    Json j;
    j["applicable"] = row.applicable;
    if (row.applicable)
    {
        j["lhs"] = number(row.lhs);
        j["rhs"] = number(row.rhs);
        j["margin"] = number(row.margin);
        j["error_budget"] = number(row.error_budget);
        j["pass"] = row.pass;
        j["strong_pass"] = row.strong_pass;
    }
    return j;
}

Json to_json(DefectReport const& r)
{
    Json j;
    j["area"] = number(r.area);
    j["mean"] = number(r.mean);
    j["variance"] = number(r.variance);
    j["sigma_sq"] = number(r.sigma_sq);
    j["sys_upper"] = number(r.sys_upper);
    j["sys_err"] = number(r.sys_err);
    j["flat_lambda1"] = number(r.flat_lambda1);
    Json ineq;
    for (auto const& [name, row] : r.rows())
    {
        ineq[std::string(name)] = to_json(*row);
    }
    j["inequalities"] = std::move(ineq);
    j["equality_case"] = {
        {"detected", r.equality_case.detected},
        {"distance_to_eisenstein",
         number(r.equality_case.distance_to_eisenstein)},
        {"variance", number(r.equality_case.variance)},
    };
    if (r.one_var_check.applicable)
    {
        j["one_var_check"] = {
            {"exact", number(r.one_var_check.exact)},
            {"grid", number(r.one_var_check.grid)},
            {"consistent", r.one_var_check.consistent},
        };
    }
    if (r.systole)
    {
        j["systole"] = to_json(*r.systole);
    }
    j["all_pass"] = r.all_pass();
    return j;
}

Json to_json(RevolutionChart const& chart)
{
    Json j;
    j["a"] = number(chart.a());
    j["b"] = number(chart.b());
    j["curve_length"] = number(chart.curve().total_length());
    j["surface_area"] = number(surface_area(chart.curve()));
    j["profile_samples"] = chart.factor_profile().size();
    return j;
}

std::string to_csv(DefectReport const& r)
{
    std::string out
        = "inequality,applicable,lhs,rhs,margin,error_budget,pass,"
          "strong_pass\n";
    for (auto const& [name, row] : r.rows())
    {
        out += std::string(name) + "," + (row->applicable ? "1" : "0");
        if (row->applicable)
        {
            out += "," + format12(row->lhs) + "," + format12(row->rhs) + ","
                   + format12(row->margin) + "," + format12(row->error_budget)
                   + "," + (row->pass ? "1" : "0") + ","
                   + (row->strong_pass ? "1" : "0");
        }
        else
        {
            out += ",,,,,,";
        }
        out += "\n";
    }
    return out;
}

std::string dump(Json const& j)
{
    return j.dump(2) + "\n";
}

}  // namespace loewner
