#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include <json.hpp>

#include "defect.hpp"
#include "error.hpp"
#include "field.hpp"
#include "lattice.hpp"
#include "metric.hpp"
#include "revolution.hpp"
#include "systole.hpp"

namespace loewner {

using Json = nlohmann::ordered_json;

//! Malformed input; the message names the offending line or field.
class InputError : public Error
{
  public:
    using Error::Error;
};

//! Value rounded to 12 significant digits (report float format).
double round12(double v);
std::string format12(double v);

//! {"basis": [[x1,y1],[x2,y2]]} or {"tau": [re, im]}.
Lattice parse_lattice(Json const& j);
//! {"family": "trig", "terms": [{"mx","my","amp","phase"}], "offset": c}.
TrigFamily parse_trig_family(Json const& j);
//! CSV of rows x cols values, one grid row (fixed y) per line.
Grid read_csv_grid(std::istream& in);
Grid read_csv_grid(std::filesystem::path const& path);
//! Factor spec: trig family (sampled rows x cols), {"csv": path} resolved
//! against base_dir, or {"values": [[...], ...]}.
Grid parse_factor(Json const& j, std::size_t rows, std::size_t cols,
                  std::filesystem::path const& base_dir = {});
//! {"lattice": ..., "factor": ...}; an omitted factor means f = 1.
TorusMetric parse_metric(Json const& j, std::size_t rows, std::size_t cols,
                         std::filesystem::path const& base_dir = {});
//! {"samples": [[x,z], ...]} or {"profile": {"family": "circle", "R", "r",
//! "n"}}.
GeneratingCurve parse_curve(Json const& j);

Json parse_json_text(std::string const& text);
Json read_json_file(std::filesystem::path const& path);

Json to_json(ReducedModulus const& m);
Json to_json(HomotopyClass const& c);
Json to_json(SystoleEstimate const& est);
Json to_json(InequalityRow const& row);
Json to_json(DefectReport const& report);
Json to_json(RevolutionChart const& chart);

//! One line per inequality: name,applicable,lhs,rhs,margin,error_budget,
//! pass,strong_pass.
std::string to_csv(DefectReport const& report);

//! Compact deterministic serialization used for every report file.
std::string dump(Json const& j);

}  // namespace loewner
