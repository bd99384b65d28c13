#include "sqz/units.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqz {

double nepers_from_db(double db) { return db * std::numbers::ln10 / 20.0; }

double db_from_nepers(double r) { return 20.0 * r / std::numbers::ln10; }

double variance_ratio_from_db(double db) { return std::pow(10.0, db / 10.0); }

double db_from_variance_ratio(double ratio) {
  if (!(ratio > 0.0)) throw std::invalid_argument("variance ratio must be positive");
  return 10.0 * std::log10(ratio);
}

}  // namespace sqz
