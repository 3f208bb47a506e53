#include "slopelab/config.hpp"

#include <fstream>

namespace slopelab {

using nlohmann::json;

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  if (!j.is_string()) throw input_error("expected a rational string \"p/q\"");
  return parse_rational(j.get<std::string>());
}

QVec point_from_json(const json& j) {
  if (!j.is_array()) throw input_error("expected a coordinate array");
  QVec p;
  for (const auto& c : j) p.push_back(rational_from_json(c));
  return p;
}

LatticePolytope polytope_from_json(const json& j) {
  if (!j.contains("vertices") || !j["vertices"].is_array() || j["vertices"].empty()) {
    throw input_error("polytope: missing vertex list");
  }
  std::vector<QVec> pts;
  for (const auto& v : j["vertices"]) pts.push_back(point_from_json(v));
  return LatticePolytope(static_cast<int>(pts[0].size()), std::move(pts));
}

ConcavePLFunction green_from_json(const json& j, const LatticePolytope& domain) {
  if (!j.contains("pieces") || !j["pieces"].is_array() || j["pieces"].empty()) {
    throw input_error("green: missing piece list");
  }
  std::vector<ConcavePLFunction::Piece> pieces;
  for (const auto& p : j["pieces"]) {
    if (!p.contains("a") || !p.contains("b")) throw input_error("green piece: need \"a\" and \"b\"");
    pieces.push_back({point_from_json(p["a"]), rational_from_json(p["b"])});
  }
  return ConcavePLFunction(domain, std::move(pieces));
}

AdelicCurveSpec curve_from_json(const json& j) {
  if (!j.contains("places") || !j["places"].is_array()) {
    throw input_error("curve: missing place list");
  }
  std::vector<AdelicPlace> places;
  for (const auto& p : j["places"]) {
    if (!p.contains("label") || !p.contains("weight")) {
      throw input_error("curve place: need \"label\" and \"weight\"");
    }
    places.push_back({p["label"].get<std::string>(), rational_from_json(p["weight"])});
  }
  return AdelicCurveSpec(std::move(places));
}

ToricAdelicDivisor divisor_from_json(const json& j, const AdelicCurveSpec& curve) {
  if (!j.contains("polytope")) throw input_error("divisor: missing polytope");
  LatticePolytope polytope = polytope_from_json(j["polytope"]);
  std::map<std::string, ConcavePLFunction> greens;
  if (j.contains("greens")) {
    for (const auto& [label, g] : j["greens"].items()) {
      greens.emplace(label, green_from_json(g, polytope));
    }
  }
  return ToricAdelicDivisor(std::move(polytope), curve, std::move(greens));
}

namespace {

MonomialSeries table_series_from_json(const json& j) {
  const int ambient_dim = j.value("ambient_dim", 1);
  const int rank = j.value("grading_rank", 1);
  const Rational c = j.contains("C") ? rational_from_json(j["C"]) : Rational(0);
  if (!j.contains("entries") || !j["entries"].is_array()) {
    throw input_error("table series: missing entries");
  }
  auto table = std::make_shared<std::map<Multidegree, std::vector<std::pair<ZPoint, Rational>>>>();
  for (const auto& entry : j["entries"]) {
    if (!entry.contains("degree") || !entry.contains("points")) {
      throw input_error("table series entry: need \"degree\" and \"points\"");
    }
    Multidegree deg;
    for (const auto& d : entry["degree"]) deg.push_back(d.get<int>());
    std::vector<std::pair<ZPoint, Rational>> pts;
    for (const auto& p : entry["points"]) {
      ZPoint m;
      for (const auto& coord : p["m"]) {
        if (coord.is_number_integer()) {
          m.push_back(coord.get<long long>());
        } else {
          m.push_back(std::stoll(coord.get<std::string>()));
        }
      }
      pts.push_back({std::move(m), rational_from_json(p["lambda"])});
    }
    (*table)[deg] = std::move(pts);
  }
  auto provider = [table](const Multidegree& a) {
    auto it = table->find(a);
    if (it == table->end()) return std::vector<std::pair<ZPoint, Rational>>{};
    return it->second;
  };
  return MonomialSeries(ambient_dim, rank, c, std::move(provider));
}

}  // namespace

MonomialSeries series_from_json(const json& j, const AdelicCurveSpec* curve) {
  const std::string type = j.value("type", "");
  if (type == "table") return table_series_from_json(j);
  if (type == "toric") {
    if (!curve) throw input_error("toric series: a curve is required");
    if (!j.contains("divisor")) throw input_error("toric series: missing divisor");
    return to_series(divisor_from_json(j["divisor"], *curve));
  }
  if (type == "toric-bundle") {
    if (!curve) throw input_error("toric-bundle series: a curve is required");
    if (!j.contains("divisors") || !j["divisors"].is_array() || j["divisors"].empty()) {
      throw input_error("toric-bundle series: missing divisor list");
    }
    std::vector<ToricAdelicDivisor> divisors;
    for (const auto& d : j["divisors"]) divisors.push_back(divisor_from_json(d, *curve));
    return bundle_sum_series(to_multigraded_series(divisors));
  }
  throw input_error("series: type must be \"toric\", \"toric-bundle\" or \"table\"");
}

FilteredSpace filtered_space_from_json(const json& j) {
  if (!j.contains("basis") || !j.contains("jumps")) {
    throw input_error("filtered space: need \"basis\" and \"jumps\"");
  }
  QMat basis;
  for (const auto& row : j["basis"]) basis.push_back(point_from_json(row));
  std::vector<Rational> jumps;
  for (const auto& v : j["jumps"]) jumps.push_back(rational_from_json(v));
  return FilteredSpace(std::move(basis), std::move(jumps));
}

CsvReport::CsvReport(std::string experiment_id) : experiment_(std::move(experiment_id)) {}

void CsvReport::add_row(const std::string& n, const std::string& quantity, const Rational& value,
                        const std::string& note) {
  rows_.push_back({n, quantity, numerator_string(value), denominator_string(value),
                   decimal_string(value), note});
}

void CsvReport::add_text_row(const std::string& n, const std::string& quantity,
                             const std::string& text, const std::string& note) {
  rows_.push_back({n, quantity, "", "", text, note});
}

std::string CsvReport::to_string() const {
  std::string out = "experiment,n,quantity,value_num,value_den,value_decimal,note\n";
  for (const Row& r : rows_) {
    out += experiment_;
    out += ',';
    out += r.n;
    out += ',';
    out += r.quantity;
    out += ',';
    out += r.num;
    out += ',';
    out += r.den;
    out += ',';
    out += r.decimal;
    out += ',';
    out += r.note;
    out += '\n';
  }
  return out;
}

void CsvReport::write_file(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw input_error("cannot open output file: " + path);
  f << to_string();
  if (!f) throw input_error("failed writing output file: " + path);
}

}  // namespace slopelab
