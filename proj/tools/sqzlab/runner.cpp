#include "sqzlab/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "sqz/channels.hpp"
#include "sqz/compiler.hpp"
#include "sqz/io.hpp"
#include "sqz/metrology.hpp"
#include "sqz/squeezer.hpp"
#include "sqz/symplectic.hpp"
#include "sqz/tomography.hpp"
#include "sqz/units.hpp"

namespace sqzlab {
namespace {

using sqz::format_number;
using sqz::Json;
using sqz::json_number;

namespace fs = std::filesystem;

// Reference points read off the experiment: squeezed / anti-squeezed noise
// powers and fidelities at the three demonstrated transmittances.
struct Measured {
  double vx_db;
  double vp_db;
  double fidelity;
};
const std::map<double, Measured> kMeasured{
    {0.75, {-0.7, 1.3, 0.94}}, {0.50, {-1.6, 3.0, 0.89}}, {0.25, {-2.5, 5.8, 0.78}}};

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : width_(header.size()) { line(header); }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("csv row width mismatch");
    line(cells);
  }

  std::string str() const { return os_.str(); }

 private:
  void line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
    os_ << '\n';
  }
  std::size_t width_;
  std::ostringstream os_;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void write_json(const fs::path& path, const Json& j) { write_file(path, j.dump(2) + "\n"); }

fs::path prepare_out(const ExperimentConfig& c) {
  const fs::path dir(c.out_dir);
  fs::create_directories(dir);
  return dir;
}

Json stamp(const ExperimentConfig& c) {
  return Json{{"mode", c.mode}, {"config_hash", c.hash}, {"seed", c.seed}};
}

Json moments_json(const sqz::Vector2& mean, const sqz::Matrix2& cov) {
  return Json{{"mean", {json_number(mean(0)), json_number(mean(1))}},
              {"cov", {json_number(cov(0, 0)), json_number(cov(0, 1)), json_number(cov(1, 0)), json_number(cov(1, 1))}}};
}

sqz::GaussianState input_state(const ExperimentConfig& c) { return sqz::make_coherent(c.input_x, c.input_p); }

// Exact squeeze by r = -ln sqrt(T) along the protocol's squeeze axis.
sqz::GaussianState target_for(const sqz::ProtocolConfig& p, const sqz::GaussianState& input) {
  const double a = p.squeeze_angle;
  const auto s = sqz::compose(sqz::phase_rotation(a),
                              sqz::compose(sqz::squeeze(sqz::r_from_T(p.transmittance)), sqz::phase_rotation(-a)));
  return sqz::apply(s, input);
}

double quadrature_db(const sqz::GaussianState& s, double angle) {
  return sqz::noise_power_db(sqz::marginal_variance(s, 0, angle));
}

// Efficiency of the verification homodyne (mode matching, detector and
// propagation), used for the "as detected" fidelity.
double verification_efficiency(const sqz::ImperfectionModel& m) {
  return m.homodyne_efficiency * m.detector_efficiency * m.propagation_efficiency;
}

// Fidelity of the output as a detector would see it, against the target built
// from the loss-corrected (inferred) input.
double detected_fidelity(const sqz::ProtocolConfig& p, const sqz::ImperfectionModel& m,
                         const sqz::GaussianState& input, const sqz::GaussianState& output) {
  const double eta = verification_efficiency(m);
  if (!(eta > 0.0)) return 0.0;
  const sqz::GaussianState inferred = sqz::infer_lossless_state(sqz::apply_loss(input, 0, eta), eta);
  return sqz::fidelity_gaussian(target_for(p, inferred), sqz::apply_loss(output, 0, eta)).fidelity;
}

std::string measured_cell(double t, double Measured::*field) {
  const auto it = kMeasured.find(t);
  return it == kMeasured.end() ? "" : format_number(it->second.*field);
}

void set_sweep_parameter(const std::string& name, double v, sqz::ProtocolConfig& p, double& ancilla_db,
                         sqz::ImperfectionModel& m) {
  if (name == "transmittance") p.transmittance = v;
  else if (name == "ancilla_db") ancilla_db = v;
  else if (name == "gain") p.gain = v;
  else if (name == "homodyne_efficiency") m.homodyne_efficiency = v;
  else if (name == "detector_efficiency") m.detector_efficiency = v;
  else if (name == "propagation_efficiency") m.propagation_efficiency = v;
  else if (name == "electronic_noise_db") m.electronic_noise_db = v;
  else if (name == "phase_jitter_rad") m.phase_jitter_rad = v;
  else if (name == "gain_error") m.gain_error = v;
  else if (name == "displacement_coupler_T") m.displacement_coupler_T = v;
  else throw ConfigError("unknown sweep parameter '" + name + "'");
  p.ancilla_squeezing = sqz::nepers_from_db(ancilla_db);
}

}  // namespace

void run(const ExperimentConfig& c, std::ostream& log) {
  if (c.mode == "reproduce-paper") run_reproduce_paper(c, log);
  else if (c.mode == "sweep") run_sweep(c, log);
  else if (c.mode == "tomography") run_tomography(c, log);
  else if (c.mode == "trajectory") run_trajectory(c, log);
  else if (c.mode == "compile") run_compile(c, log);
  else throw ConfigError("unknown mode '" + c.mode + "'");
}

void run_reproduce_paper(const ExperimentConfig& c, std::ostream& log) {
  const fs::path dir = prepare_out(c);
  const sqz::GaussianState input = input_state(c);
  Csv table({"T", "squeezing_db_nominal", "curve_i_Vx_db", "curve_ii_Vx_db", "curve_iii_Vx_db", "ideal_Vp_db",
             "model_Vx_db", "model_Vp_db", "measured_Vx_db", "measured_Vp_db", "fidelity_ideal_apparatus",
             "fidelity_model", "fidelity_inferred_input", "fidelity_mc", "fidelity_mc_se", "fidelity_classical_limit",
             "fidelity_vacuum_ancilla", "measured_fidelity"});
  Json rows = Json::array();
  log << "     T  nominal   curve ii   model Vx   model Vp   F(model)  F(mc)            F(classical)\n";
  for (std::size_t i = 0; i < c.transmittances.size(); ++i) {
    const double t = c.transmittances[i];
    sqz::ProtocolConfig p = c.protocol;
    p.transmittance = t;
    p.gain.reset();
    const double a = p.squeeze_angle;
    const double anti = a + sqz::kPi / 2.0;
    const sqz::GaussianState target = target_for(p, input);

    sqz::ProtocolConfig inf = p;
    inf.ancilla_squeezing = std::numeric_limits<double>::infinity();
    sqz::ProtocolConfig vac = p;
    vac.ancilla_squeezing = 0.0;
    const sqz::GaussianState curve_i = sqz::ideal_output_map(inf, input);
    const sqz::GaussianState curve_ii = sqz::ideal_output_map(p, input);
    const sqz::GaussianState curve_iii = sqz::ideal_output_map(vac, input);
    const sqz::GaussianState model = sqz::run_deterministic(p, c.imperfections, input).output;

    const sqz::TrajectoryResult traj = sqz::run_trajectory(p, c.imperfections, input, c.n_shots, c.seed + i);
    const sqz::FidelityEstimate mc =
        sqz::bootstrap_fidelity(traj.shots, target, c.bootstrap_batches, c.bootstrap_resamples, c.seed + 1000 + i);

    const double f_ideal = sqz::fidelity_gaussian(target, curve_ii).fidelity;
    const double f_model = sqz::fidelity_gaussian(target, model).fidelity;
    const double f_inferred = detected_fidelity(p, c.imperfections, input, model);
    const double f_vac = sqz::fidelity_gaussian(target, curve_iii).fidelity;
    const double f_classical = sqz::classical_limit_fidelity(t);

    const std::vector<double> values{t,
                                     sqz::squeezing_db_from_T(t),
                                     quadrature_db(curve_i, a),
                                     quadrature_db(curve_ii, a),
                                     quadrature_db(curve_iii, a),
                                     quadrature_db(curve_ii, anti),
                                     quadrature_db(model, a),
                                     quadrature_db(model, anti)};
    std::vector<std::string> cells;
    for (double v : values) cells.push_back(format_number(v));
    cells.push_back(measured_cell(t, &Measured::vx_db));
    cells.push_back(measured_cell(t, &Measured::vp_db));
    for (double v : {f_ideal, f_model, f_inferred, mc.fidelity, mc.standard_error, f_classical, f_vac}) {
      cells.push_back(format_number(v));
    }
    cells.push_back(measured_cell(t, &Measured::fidelity));
    table.row(cells);

    Json row{{"T", json_number(t)},
             {"squeezing_db_nominal", json_number(values[1])},
             {"curve_i_Vx_db", json_number(values[2])},
             {"curve_ii_Vx_db", json_number(values[3])},
             {"curve_iii_Vx_db", json_number(values[4])},
             {"ideal_Vp_db", json_number(values[5])},
             {"model_Vx_db", json_number(values[6])},
             {"model_Vp_db", json_number(values[7])},
             {"fidelity_ideal_apparatus", json_number(f_ideal)},
             {"fidelity_model", json_number(f_model)},
             {"fidelity_inferred_input", json_number(f_inferred)},
             {"fidelity_mc", json_number(mc.fidelity)},
             {"fidelity_mc_se", json_number(mc.standard_error)},
             {"fidelity_classical_limit", json_number(f_classical)},
             {"fidelity_vacuum_ancilla", json_number(f_vac)},
             {"model_output", sqz::to_json(model)}};
    if (const auto it = kMeasured.find(t); it != kMeasured.end()) {
      row["measured"] = Json{{"Vx_db", json_number(it->second.vx_db)},
                             {"Vp_db", json_number(it->second.vp_db)},
                             {"fidelity", json_number(it->second.fidelity)}};
    }
    rows.push_back(std::move(row));

    char line[160];
    std::snprintf(line, sizeof line, "  %4.2f  %6.2f dB  %6.2f dB  %6.2f dB  %6.2f dB   %.4f  %.4f+-%.4f  %.4f\n", t,
                  values[1], values[3], values[6], values[7], f_model, mc.fidelity, mc.standard_error, f_classical);
    log << line;
  }
  write_file(dir / "table.csv", table.str());
  Json summary = stamp(c);
  summary["ancilla_db"] = json_number(c.ancilla_db);
  summary["input"] = sqz::to_json(input);
  summary["n_shots"] = c.n_shots;
  summary["rows"] = std::move(rows);
  write_json(dir / "summary.json", summary);
}

void run_sweep(const ExperimentConfig& c, std::ostream& log) {
  const fs::path dir = prepare_out(c);
  const sqz::GaussianState input = input_state(c);
  const std::string& name = c.sweep.parameter;
  Csv table({name, "T", "gain", "Vx_db", "Vp_db", "fidelity", "fidelity_vacuum_ancilla", "fidelity_classical_limit"});
  Json rows = Json::array();
  double best_vp = std::numeric_limits<double>::infinity();
  double best_at = 0.0;
  double best_f = -1.0;
  double best_f_at = 0.0;
  for (double v : c.sweep.values) {
    sqz::ProtocolConfig p = c.protocol;
    sqz::ImperfectionModel m = c.imperfections;
    double ancilla_db = c.ancilla_db;
    set_sweep_parameter(name, v, p, ancilla_db, m);
    try {
      p.validate();
      m.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("sweep." + name + " = " + format_number(v) + ": " + e.what());
    }
    const double a = p.squeeze_angle;
    const sqz::GaussianState target = target_for(p, input);
    const sqz::GaussianState out = sqz::run_deterministic(p, m, input).output;
    sqz::ProtocolConfig vac = p;
    vac.ancilla_squeezing = 0.0;
    vac.gain.reset();
    const double vx = quadrature_db(out, a);
    const double vp = quadrature_db(out, a + sqz::kPi / 2.0);
    const double f = sqz::fidelity_gaussian(target, out).fidelity;
    const double f_vac = sqz::fidelity_gaussian(target, sqz::ideal_output_map(vac, input)).fidelity;
    const double f_cl = sqz::classical_limit_fidelity(p.transmittance);
    const std::vector<double> values{v, p.transmittance, p.effective_gain(), vx, vp, f, f_vac, f_cl};
    std::vector<std::string> cells;
    for (double x : values) cells.push_back(format_number(x));
    table.row(cells);
    rows.push_back(Json{{name, json_number(v)},
                        {"T", json_number(p.transmittance)},
                        {"gain", json_number(p.effective_gain())},
                        {"Vx_db", json_number(vx)},
                        {"Vp_db", json_number(vp)},
                        {"fidelity", json_number(f)},
                        {"fidelity_vacuum_ancilla", json_number(f_vac)},
                        {"fidelity_classical_limit", json_number(f_cl)}});
    if (vp < best_vp) {
      best_vp = vp;
      best_at = v;
    }
    if (f > best_f) {
      best_f = f;
      best_f_at = v;
    }
  }
  write_file(dir / "table.csv", table.str());
  Json summary = stamp(c);
  summary["parameter"] = name;
  summary["n_points"] = c.sweep.values.size();
  summary["min_Vp_db"] = json_number(best_vp);
  summary["min_Vp_at"] = json_number(best_at);
  summary["max_fidelity"] = json_number(best_f);
  summary["max_fidelity_at"] = json_number(best_f_at);
  summary["rows"] = std::move(rows);
  write_json(dir / "summary.json", summary);
  log << "swept " << name << " over " << c.sweep.values.size() << " points; smallest anti-squeezed noise "
      << format_number(best_vp) << " dB at " << format_number(best_at) << ", highest fidelity "
      << format_number(best_f) << " at " << format_number(best_f_at) << "\n";
}

void run_tomography(const ExperimentConfig& c, std::ostream& log) {
  const fs::path dir = prepare_out(c);
  const sqz::GaussianState state = sqz::run_deterministic(c.protocol, c.imperfections, input_state(c)).output;
  sqz::PhaseScanRecord record = sqz::simulate_phase_scan(state, c.n_phases, c.samples_per_phase, c.seed);
  record.source = "squeezer output, T = " + format_number(c.protocol.transmittance);

  sqz::ReconstructionOptions opts;
  opts.n_bins = c.tomography.n_bins;
  opts.kappa = c.tomography.kappa;
  opts.filter_cutoff = c.tomography.filter_cutoff;

  // The window is centred on what the data say, not on the model state.
  const sqz::ScanMoments scan = sqz::moments_from_scan(record);
  if (!(scan.cov(0, 0) > 0.0 && scan.cov(1, 1) > 0.0)) throw sqz::InvariantError("fitted variances are not positive");
  const auto spec = sqz::WignerGridSpec::around(scan.mean(0), scan.mean(1), std::sqrt(scan.cov(0, 0)),
                                                std::sqrt(scan.cov(1, 1)), c.tomography.window_sigmas,
                                                c.tomography.grid_points);
  const sqz::WignerGrid grid = sqz::reconstruct_wigner(record, spec, opts);
  const sqz::WignerGrid analytic = sqz::analytic_wigner(state, spec);
  const double linf = (grid.values() - analytic.values()).cwiseAbs().maxCoeff() / analytic.peak();
  const sqz::Vector2 grid_mean = grid.grid_mean();
  const sqz::Matrix2 grid_cov = grid.grid_cov();
  const std::vector<double> cutoffs = sqz::filter_cutoffs(record, opts);
  const std::vector<double> corr = sqz::radon_consistency(record, grid, opts);

  Csv table({"phase_rad", "n_samples", "sample_mean", "sample_variance", "model_mean", "model_variance",
             "filter_cutoff", "projection_correlation"});
  for (std::size_t k = 0; k < record.phases.size(); ++k) {
    const auto& s = record.samples[k];
    double mean = 0.0;
    for (double v : s) mean += v;
    mean /= static_cast<double>(s.size());
    double var = 0.0;
    for (double v : s) var += (v - mean) * (v - mean);
    var /= static_cast<double>(s.size() - 1);
    const double phi = record.phases[k];
    table.row({format_number(phi), std::to_string(s.size()), format_number(mean), format_number(var),
               format_number(sqz::marginal_mean(state, 0, phi)), format_number(sqz::marginal_variance(state, 0, phi)),
               format_number(cutoffs[k]), format_number(corr[k])});
  }
  write_file(dir / "table.csv", table.str());

  if (c.write_record) {
    std::ostringstream os;
    sqz::write_record_csv(os, record);
    write_file(dir / "record.csv", os.str());
    Json meta = stamp(c);
    meta["record"] = sqz::record_metadata(record);
    write_json(dir / "record.json", meta);
  }
  if (c.write_wigner) {
    std::ostringstream os;
    sqz::write_grid_csv(os, grid);
    write_file(dir / "wigner.csv", os.str());
    Json meta = stamp(c);
    meta["grid"] = sqz::grid_header(grid);
    write_json(dir / "wigner.json", meta);
  }

  const sqz::Matrix2 model_cov = state.mode_cov(0);
  Json summary = stamp(c);
  summary["state"] = sqz::to_json(state);
  summary["scan_moments"] = moments_json(scan.mean, scan.cov);
  summary["grid_moments"] = moments_json(grid_mean, grid_cov);
  summary["grid_variance_rel_error"] = {json_number(grid_cov(0, 0) / model_cov(0, 0) - 1.0),
                                        json_number(grid_cov(1, 1) / model_cov(1, 1) - 1.0)};
  summary["linf_error_over_peak"] = json_number(linf);
  summary["grid_integral"] = json_number(grid.integral());
  summary["grid_peak"] = json_number(grid.peak());
  summary["analytic_peak"] = json_number(analytic.peak());
  summary["min_projection_correlation"] = json_number(*std::min_element(corr.begin(), corr.end()));
  summary["grid"] = sqz::grid_header(grid);
  write_json(dir / "summary.json", summary);

  log << "reconstructed " << spec.n_x << "x" << spec.n_p << " grid from " << record.total_samples()
      << " samples; L-inf error " << format_number(100.0 * linf) << "% of peak, integral "
      << format_number(grid.integral()) << ", variances x/p off by " << format_number(100.0 * (grid_cov(0, 0) / model_cov(0, 0) - 1.0))
      << "% / " << format_number(100.0 * (grid_cov(1, 1) / model_cov(1, 1) - 1.0)) << "%\n";
}

void run_trajectory(const ExperimentConfig& c, std::ostream& log) {
  const fs::path dir = prepare_out(c);
  const sqz::GaussianState input = input_state(c);
  const sqz::TrajectoryResult traj = sqz::run_trajectory(c.protocol, c.imperfections, input, c.n_shots, c.seed);
  const sqz::GaussianState det = sqz::run_deterministic(c.protocol, c.imperfections, input).output;
  const sqz::EnsembleErrors se = sqz::ensemble_standard_errors(traj.shots);
  const sqz::GaussianState& ens = traj.ensemble.output;
  const sqz::FidelityEstimate mc = sqz::bootstrap_fidelity(traj.shots, target_for(c.protocol, input),
                                                           c.bootstrap_batches, c.bootstrap_resamples, c.seed + 1);

  std::ostringstream os;
  sqz::write_shots_csv(os, traj.shots);
  write_file(dir / "table.csv", os.str());

  // Moments untouched by the measurement have zero shot-to-shot spread; floor
  // the error at rounding level so their z-scores stay meaningful.
  const double floor = 1e-12;
  const sqz::Vector2 zm = (ens.mode_mean(0) - det.mode_mean(0)).cwiseQuotient(se.mean.cwiseMax(floor));
  const sqz::Matrix2 zc = (ens.mode_cov(0) - det.mode_cov(0)).cwiseQuotient(se.cov.cwiseMax(floor));
  Json summary = stamp(c);
  summary["n_shots"] = c.n_shots;
  summary["ensemble"] = moments_json(ens.mode_mean(0), ens.mode_cov(0));
  summary["standard_errors"] = moments_json(se.mean, se.cov);
  summary["deterministic"] = moments_json(det.mode_mean(0), det.mode_cov(0));
  summary["z_scores"] = moments_json(zm, zc);
  summary["fidelity_mc"] = json_number(mc.fidelity);
  summary["fidelity_mc_se"] = json_number(mc.standard_error);
  summary["effective_squeezing_db"] = json_number(traj.ensemble.effective_squeezing_db);
  write_json(dir / "summary.json", summary);

  log << c.n_shots << " shots; ensemble Vx " << format_number(ens.mode_cov(0)(0, 0)) << " (deterministic "
      << format_number(det.mode_cov(0)(0, 0)) << ", z " << format_number(zc(0, 0)) << "), Vp "
      << format_number(ens.mode_cov(0)(1, 1)) << " (deterministic " << format_number(det.mode_cov(0)(1, 1)) << ", z "
      << format_number(zc(1, 1)) << "); fidelity " << format_number(mc.fidelity) << " +- "
      << format_number(mc.standard_error) << "\n";
}

void run_compile(const ExperimentConfig& c, std::ostream& log) {
  const fs::path dir = prepare_out(c);
  const sqz::EulerAngles e = sqz::euler_decompose(c.compile.matrix);
  const sqz::GatePlan plan = sqz::plan_from_unitary(c.compile.matrix, c.compile.displacement);
  const sqz::SymplecticTransform back = sqz::recompose(plan);
  const double recomposition_error =
      std::max((back.matrix() - sqz::Matrix(c.compile.matrix)).cwiseAbs().maxCoeff(),
               (back.displacement() - sqz::Vector(c.compile.displacement)).cwiseAbs().maxCoeff());

  const sqz::GaussianState input = input_state(c);
  const sqz::GaussianState target =
      sqz::apply(sqz::SymplecticTransform(c.compile.matrix, c.compile.displacement), input);
  const sqz::GaussianState sim = sqz::simulate_plan(plan, input, c.compile.ancilla_db);
  const double moment_error = std::max((sim.mean() - target.mean()).cwiseAbs().maxCoeff(),
                                       (sim.cov() - target.cov()).cwiseAbs().maxCoeff());
  const double fidelity = sqz::fidelity_gaussian(target, sim, 1e-6).fidelity;

  Csv table({"step", "gate", "theta", "r", "T", "gain", "dx", "dp"});
  log << "step  gate          theta       r           T           gain        dx          dp\n";
  for (std::size_t i = 0; i < plan.gates.size(); ++i) {
    std::vector<std::string> cells{std::to_string(i), "", "", "", "", "", "", ""};
    if (const auto* r = std::get_if<sqz::RotationGate>(&plan.gates[i])) {
      cells[1] = "rotation";
      cells[2] = format_number(r->theta);
    } else if (const auto* s = std::get_if<sqz::SqueezerGate>(&plan.gates[i])) {
      cells[1] = "squeezer";
      cells[3] = format_number(s->r);
      cells[4] = format_number(s->transmittance);
      cells[5] = format_number(s->gain);
    } else {
      const auto& d = std::get<sqz::DisplacementGate>(plan.gates[i]);
      cells[1] = "displacement";
      cells[6] = format_number(d.dx);
      cells[7] = format_number(d.dp);
    }
    table.row(cells);
    char line[200];
    std::snprintf(line, sizeof line, "%-5s %-13s %-11s %-11s %-11s %-11s %-11s %s\n", cells[0].c_str(),
                  cells[1].c_str(), cells[2].c_str(), cells[3].c_str(), cells[4].c_str(), cells[5].c_str(),
                  cells[6].c_str(), cells[7].c_str());
    log << line;
  }
  write_file(dir / "table.csv", table.str());

  Json plan_json = stamp(c);
  plan_json["plan"] = sqz::to_json(plan);
  write_json(dir / "plan.json", plan_json);

  Json summary = stamp(c);
  summary["euler"] = Json{{"theta_pre", json_number(e.theta_pre)},
                          {"r", json_number(e.r)},
                          {"theta_post", json_number(e.theta_post)}};
  summary["n_gates"] = plan.gates.size();
  summary["n_squeezers"] = plan.squeezer_count();
  summary["recomposition_error"] = json_number(recomposition_error);
  summary["ancilla_db"] = json_number(c.compile.ancilla_db);
  summary["target"] = sqz::to_json(target);
  summary["simulated"] = sqz::to_json(sim);
  summary["moment_error"] = json_number(moment_error);
  summary["fidelity"] = json_number(fidelity);
  write_json(dir / "summary.json", summary);
  log << "recomposition error " << format_number(recomposition_error) << ", simulated moment error "
      << format_number(moment_error) << ", fidelity " << format_number(fidelity) << "\n";
}

}  // namespace sqzlab
