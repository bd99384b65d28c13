#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "sqz/compiler.hpp"
#include "sqz/gaussian_state.hpp"
#include "sqz/metrology.hpp"
#include "sqz/squeezer.hpp"
#include "sqz/tomography.hpp"
#include "sqz/wigner.hpp"

namespace sqz {

using Json = nlohmann::ordered_json;

/// Fixed text form used by every writer: 12 significant digits ("%.12g"),
/// "inf", "-inf", "nan" for non-finite values.
std::string format_number(double value);

/// `value` rounded to 12 significant digits as a JSON number; non-finite
/// values become the strings of format_number.
Json json_number(double value);

/// {"n_modes", "mean", "cov"}; cov row-major.
Json to_json(const GaussianState& state);
GaussianState state_from_json(const Json& j);

Json to_json(const ProtocolResult& result);
Json to_json(const FidelityReport& report);

/// List of tagged records: {"gate": "rotation", "theta"}, {"gate":
/// "squeezer", "r", "T", "gain"}, {"gate": "displacement", "dx", "dp"}.
Json to_json(const GatePlan& plan);
GatePlan plan_from_json(const Json& j);

/// Window and sizes of a grid (values go to CSV).
Json grid_header(const WignerGrid& grid);
Json record_metadata(const PhaseScanRecord& record);

/// n_x rows of n_p comma-separated values; row i is x_i.
void write_grid_csv(std::ostream& os, const WignerGrid& grid);
/// Header "phase_rad,sample", one line per reading.
void write_record_csv(std::ostream& os, const PhaseScanRecord& record);
/// Header "shot_index,outcome,out_mean_x,out_mean_p".
void write_shots_csv(std::ostream& os, std::span<const ShotRecord> shots);

}  // namespace sqz
