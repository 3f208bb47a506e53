#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "slopelab/adelic.hpp"
#include "slopelab/series.hpp"
#include "slopelab/toric.hpp"

namespace slopelab {

// Config-format parsers. All rationals are strings "p/q" (or "p"); see the
// README for the object layouts. Parse failures throw input_error.

Rational rational_from_json(const nlohmann::json& j);
QVec point_from_json(const nlohmann::json& j);

LatticePolytope polytope_from_json(const nlohmann::json& j);
ConcavePLFunction green_from_json(const nlohmann::json& j, const LatticePolytope& domain);
AdelicCurveSpec curve_from_json(const nlohmann::json& j);
ToricAdelicDivisor divisor_from_json(const nlohmann::json& j, const AdelicCurveSpec& curve);

// "toric" (divisor reference) or "table" (explicit degree lists).
MonomialSeries series_from_json(const nlohmann::json& j, const AdelicCurveSpec* curve);

FilteredSpace filtered_space_from_json(const nlohmann::json& j);

// CSV report assembly: fixed column set, deterministic bytes.
class CsvReport {
 public:
  explicit CsvReport(std::string experiment_id);

  void add_row(const std::string& n, const std::string& quantity, const Rational& value,
               const std::string& note = "");
  void add_text_row(const std::string& n, const std::string& quantity, const std::string& text,
                    const std::string& note = "");

  const std::string& experiment() const { return experiment_; }
  std::string to_string() const;
  void write_file(const std::string& path) const;

 private:
  struct Row {
    std::string n;
    std::string quantity;
    std::string num;
    std::string den;
    std::string decimal;
    std::string note;
  };
  std::string experiment_;
  std::vector<Row> rows_;
};

}  // namespace slopelab
