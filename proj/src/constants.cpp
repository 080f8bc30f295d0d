#include "fracdeg/constants.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace fracdeg {

namespace {

// JSON has no infinity; an unfitted bound is stored as null.
nlohmann::json bound(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

double read_bound(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  return v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
}

}  // namespace

nlohmann::json to_json(const FittedConstants& c) {
  return {{"version", c.version},          {"restriction", bound(c.restriction)},
          {"apriori", bound(c.apriori)},   {"energy_lo", c.energy_lo},
          {"energy_hi", bound(c.energy_hi)}, {"modulus", bound(c.modulus)},
          {"slack", c.slack},              {"note", c.note}};
}

FittedConstants constants_from_json(const nlohmann::json& j) {
  FittedConstants c;
  c.version = j.at("version").get<int>();
  c.restriction = read_bound(j, "restriction");
  c.apriori = read_bound(j, "apriori");
  c.energy_lo = j.at("energy_lo").get<double>();
  c.energy_hi = read_bound(j, "energy_hi");
  c.modulus = read_bound(j, "modulus");
  c.slack = j.value("slack", 0.10);
  c.note = j.value("note", std::string{});
  return c;
}

FittedConstants load_constants(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open constants file: " + path);
  return constants_from_json(nlohmann::json::parse(in));
}

void save_constants(const FittedConstants& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write constants file: " + path);
  out << to_json(c).dump(2) << '\n';
}

std::string default_constants_path() {
#ifdef FRACDEG_DEFAULT_CONSTANTS
  return FRACDEG_DEFAULT_CONSTANTS;
#else
  return "data/fitted_constants.json";
#endif
}

}  // namespace fracdeg
