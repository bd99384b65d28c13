#include "sqz/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <type_traits>

namespace sqz {
namespace {

Json vector_json(const Eigen::Ref<const Vector>& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(json_number(v(i)));
  return a;
}

double number_from(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw std::invalid_argument("expected a number");
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

Json json_number(double value) {
  if (!std::isfinite(value)) return format_number(value);
  return std::stod(format_number(value));
}

Json to_json(const GaussianState& state) {
  const Matrix& c = state.cov();
  Json cov = Json::array();
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = 0; j < c.cols(); ++j) cov.push_back(json_number(c(i, j)));
  }
  return Json{{"n_modes", state.n_modes()}, {"mean", vector_json(state.mean())}, {"cov", std::move(cov)}};
}

GaussianState state_from_json(const Json& j) {
  const auto n = j.at("n_modes").get<std::size_t>();
  const auto dim = static_cast<Eigen::Index>(2 * n);
  const Json& mean = j.at("mean");
  const Json& cov = j.at("cov");
  if (n == 0 || mean.size() != 2 * n || cov.size() != 4 * n * n) {
    throw std::invalid_argument("state JSON has inconsistent sizes");
  }
  Vector m(dim);
  Matrix c(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    m(i) = number_from(mean[static_cast<std::size_t>(i)]);
    for (Eigen::Index k = 0; k < dim; ++k) c(i, k) = number_from(cov[static_cast<std::size_t>(i * dim + k)]);
  }
  return GaussianState(m, c);
}

Json to_json(const ProtocolResult& result) {
  Json j{{"output", to_json(result.output)},
         {"effective_squeezing_db", json_number(result.effective_squeezing_db)}};
  if (result.homodyne_trace) j["n_homodyne_outcomes"] = result.homodyne_trace->size();
  return j;
}

Json to_json(const FidelityReport& r) {
  return Json{{"fidelity", json_number(r.fidelity)},
              {"variance_factor", json_number(r.variance_factor)},
              {"exponential_factor", json_number(r.exponential_factor)},
              {"principal_angle", json_number(r.principal_angle)},
              {"coalignment_residual", json_number(r.coalignment_residual)},
              {"ideal_mean", vector_json(r.ideal_mean)},
              {"actual_mean", vector_json(r.actual_mean)},
              {"ideal_variances", vector_json(r.ideal_variances)},
              {"actual_variances", vector_json(r.actual_variances)}};
}

Json to_json(const GatePlan& plan) {
  Json a = Json::array();
  for (const Gate& gate : plan.gates) {
    std::visit(
        [&a](const auto& g) {
          using G = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<G, RotationGate>) {
            a.push_back(Json{{"gate", "rotation"}, {"theta", json_number(g.theta)}});
          } else if constexpr (std::is_same_v<G, SqueezerGate>) {
            a.push_back(Json{{"gate", "squeezer"},
                             {"r", json_number(g.r)},
                             {"T", json_number(g.transmittance)},
                             {"gain", json_number(g.gain)}});
          } else {
            a.push_back(Json{{"gate", "displacement"}, {"dx", json_number(g.dx)}, {"dp", json_number(g.dp)}});
          }
        },
        gate);
  }
  return a;
}

GatePlan plan_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("a gate plan is a JSON list");
  GatePlan plan;
  for (const Json& g : j) {
    const std::string tag = g.at("gate").get<std::string>();
    if (tag == "rotation") {
      plan.gates.emplace_back(RotationGate{number_from(g.at("theta"))});
    } else if (tag == "squeezer") {
      plan.gates.emplace_back(SqueezerGate::from_r(number_from(g.at("r"))));
    } else if (tag == "displacement") {
      plan.gates.emplace_back(DisplacementGate{number_from(g.at("dx")), number_from(g.at("dp"))});
    } else {
      throw std::invalid_argument("unknown gate '" + tag + "'");
    }
  }
  return plan;
}

Json grid_header(const WignerGrid& grid) {
  const WignerGridSpec& s = grid.spec();
  return Json{{"x_min", json_number(s.x_min)}, {"x_max", json_number(s.x_max)},
              {"p_min", json_number(s.p_min)}, {"p_max", json_number(s.p_max)},
              {"n_x", s.n_x},                  {"n_p", s.n_p},
              {"layout", "rows are x, columns are p"}};
}

Json record_metadata(const PhaseScanRecord& record) {
  Json counts = Json::array();
  for (const auto& s : record.samples) counts.push_back(s.size());
  return Json{{"source", record.source},
              {"seed", record.seed},
              {"n_phases", record.phases.size()},
              {"sample_counts", std::move(counts)}};
}

void write_grid_csv(std::ostream& os, const WignerGrid& grid) {
  const Matrix& v = grid.values();
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      if (j) os << ',';
      os << format_number(v(i, j));
    }
    os << '\n';
  }
}

void write_record_csv(std::ostream& os, const PhaseScanRecord& record) {
  os << "phase_rad,sample\n";
  for (std::size_t k = 0; k < record.phases.size(); ++k) {
    const std::string phase = format_number(record.phases[k]);
    for (double s : record.samples[k]) os << phase << ',' << format_number(s) << '\n';
  }
}

void write_shots_csv(std::ostream& os, std::span<const ShotRecord> shots) {
  os << "shot_index,outcome,out_mean_x,out_mean_p\n";
  for (const ShotRecord& s : shots) {
    os << s.index << ',' << format_number(s.outcome.value) << ',' << format_number(s.mean(0)) << ','
       << format_number(s.mean(1)) << '\n';
  }
}

}  // namespace sqz
