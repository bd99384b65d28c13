#pragma once

namespace sqz {

// dB <-> neper conversions. A squeezing of `db` decibels scales a quadrature
// variance by 10^{-db/10}, i.e. a squeezing parameter r = db ln(10) / 20.

double nepers_from_db(double db);
double db_from_nepers(double r);
double variance_ratio_from_db(double db);
double db_from_variance_ratio(double ratio);

}  // namespace sqz
