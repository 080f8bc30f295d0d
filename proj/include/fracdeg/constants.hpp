#pragma once

#include <limits>
#include <string>

#include <json.hpp>

namespace fracdeg {

/// Constants fitted once over the smooth gallery for the checks whose
/// inequalities hold only up to an unspecified constant.
struct FittedConstants {
  int version = 0;
  double restriction = std::numeric_limits<double>::infinity();
  double apriori = std::numeric_limits<double>::infinity();
  double energy_lo = 0.0;
  double energy_hi = std::numeric_limits<double>::infinity();
  double modulus = std::numeric_limits<double>::infinity();
  /// Relative slack applied when regression runs compare against the table.
  double slack = 0.10;
  std::string note;

  bool calibrated() const { return version > 0; }

  /// ratio <= constant * (1 + slack)
  bool within_upper(double ratio, double constant) const {
    return ratio <= constant * (1.0 + slack);
  }
  /// lo / (1 + slack) <= ratio <= hi * (1 + slack)
  bool within_band(double ratio) const {
    return ratio >= energy_lo / (1.0 + slack) && ratio <= energy_hi * (1.0 + slack);
  }
};

nlohmann::json to_json(const FittedConstants& c);
FittedConstants constants_from_json(const nlohmann::json& j);

FittedConstants load_constants(const std::string& path);
void save_constants(const FittedConstants& c, const std::string& path);

/// Path of the constants table shipped with the sources.
std::string default_constants_path();

}  // namespace fracdeg
