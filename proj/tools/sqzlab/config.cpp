#include "sqzlab/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include "sqz/units.hpp"

namespace sqzlab {
namespace {

const std::vector<std::string> kSweepParameters{
    "transmittance",          "ancilla_db",          "gain",           "homodyne_efficiency",
    "detector_efficiency",    "propagation_efficiency", "electronic_noise_db", "phase_jitter_rad",
    "gain_error",             "displacement_coupler_T"};

std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream os;
  os << std::hex;
  for (unsigned int i = 0; i < len; ++i) os << (digest[i] < 16 ? "0" : "") << static_cast<int>(digest[i]);
  return os.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Resolves node paths to a human location: file line for keys from the
// file, the override itself for keys set on the command line.
class Reader {
 public:
  Reader(std::string file, std::set<std::string> overridden)
      : file_(std::move(file)), overridden_(std::move(overridden)) {}

  std::string where(const std::string& path, const YAML::Node& node) const {
    for (const std::string& o : overridden_) {
      if (path == o || path.rfind(o + ".", 0) == 0) return "--set " + o;
    }
    return file_ + ":" + std::to_string(node.Mark().line + 1);
  }

  [[noreturn]] void fail(const std::string& path, const YAML::Node& node, const std::string& msg) const {
    throw ConfigError(where(path, node) + ": " + path + ": " + msg);
  }

  void require_map(const std::string& path, const YAML::Node& node) const {
    if (!node.IsMap()) fail(path, node, "expected a mapping");
  }

  void known_keys(const std::string& path, const YAML::Node& node, const std::vector<std::string>& keys) const {
    require_map(path, node);
    for (auto it = node.begin(); it != node.end(); ++it) {
      const std::string key = it->first.as<std::string>();
      const std::string full = path.empty() ? key : path + "." + key;
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) fail(full, it->first, "unknown key");
    }
  }

  double number(const std::string& path, const YAML::Node& node) const {
    if (!node.IsScalar()) fail(path, node, "expected a number");
    std::string s = node.Scalar();
    std::string t = s;
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (t == "inf" || t == "+inf" || t == ".inf" || t == "+.inf") return std::numeric_limits<double>::infinity();
    if (t == "-inf" || t == "-.inf") return -std::numeric_limits<double>::infinity();
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    fail(path, node, "expected a number, got '" + s + "'");
  }

  double finite(const std::string& path, const YAML::Node& node) const {
    const double v = number(path, node);
    if (!std::isfinite(v)) fail(path, node, "must be finite");
    return v;
  }

  std::size_t count(const std::string& path, const YAML::Node& node, std::size_t minimum) const {
    const double v = finite(path, node);
    if (v != std::floor(v) || v < 0.0 || v > 9.0e15) fail(path, node, "expected a non-negative integer");
    if (v < static_cast<double>(minimum)) fail(path, node, "must be >= " + std::to_string(minimum));
    return static_cast<std::size_t>(v);
  }

  std::uint64_t seed(const std::string& path, const YAML::Node& node) const {
    if (!node.IsScalar()) fail(path, node, "expected an unsigned integer");
    const std::string& s = node.Scalar();
    try {
      std::size_t used = 0;
      if (!s.empty() && s[0] != '-') {
        const unsigned long long v = std::stoull(s, &used);
        if (used == s.size()) return v;
      }
    } catch (const std::exception&) {
    }
    fail(path, node, "expected an unsigned integer, got '" + s + "'");
  }

  bool flag(const std::string& path, const YAML::Node& node) const {
    try {
      return node.as<bool>();
    } catch (const YAML::Exception&) {
      fail(path, node, "expected true or false");
    }
  }

  std::string text(const std::string& path, const YAML::Node& node) const {
    if (!node.IsScalar()) fail(path, node, "expected a string");
    return node.Scalar();
  }

  std::vector<double> numbers(const std::string& path, const YAML::Node& node) const {
    if (!node.IsSequence() || node.size() == 0) fail(path, node, "expected a non-empty list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < node.size(); ++i) out.push_back(finite(path + "[" + std::to_string(i) + "]", node[i]));
    return out;
  }

  // Turns a library validation failure into a located config error.
  template <typename F>
  void check(const std::string& path, const YAML::Node& node, F&& f) const {
    try {
      f();
    } catch (const std::invalid_argument& e) {
      fail(path, node, e.what());
    }
  }

 private:
  std::string file_;
  std::set<std::string> overridden_;
};

void apply_override(YAML::Node& root, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--set " + assignment + ": expected key=value");
  const std::string key = assignment.substr(0, eq);
  const std::vector<std::string> parts = split(key, '.');
  for (const std::string& p : parts) {
    if (p.empty()) throw ConfigError("--set " + key + ": empty key component");
  }
  YAML::Node value;
  try {
    value = YAML::Load(assignment.substr(eq + 1));
  } catch (const YAML::Exception& e) {
    throw ConfigError("--set " + key + ": " + e.msg);
  }
  YAML::Node cur = root;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    YAML::Node next = cur[parts[i]];
    if (!next.IsMap()) {
      cur[parts[i]] = YAML::Node(YAML::NodeType::Map);
      next = cur[parts[i]];
    }
    cur.reset(next);
  }
  cur[parts.back()] = value;
}

void read_protocol(const Reader& rd, const YAML::Node& n, ExperimentConfig& c) {
  rd.known_keys("protocol", n, {"transmittance", "ancilla_db", "gain", "squeeze_angle"});
  if (n["transmittance"]) c.protocol.transmittance = rd.finite("protocol.transmittance", n["transmittance"]);
  if (n["ancilla_db"]) {
    c.ancilla_db = rd.finite("protocol.ancilla_db", n["ancilla_db"]);
    if (c.ancilla_db < 0.0) rd.fail("protocol.ancilla_db", n["ancilla_db"], "must be >= 0");
  }
  if (n["gain"]) c.protocol.gain = rd.finite("protocol.gain", n["gain"]);
  if (n["squeeze_angle"]) c.protocol.squeeze_angle = rd.finite("protocol.squeeze_angle", n["squeeze_angle"]);
  c.protocol.ancilla_squeezing = sqz::nepers_from_db(c.ancilla_db);
  rd.check("protocol", n, [&] { c.protocol.validate(); });
}

void read_imperfections(const Reader& rd, const YAML::Node& n, ExperimentConfig& c) {
  rd.known_keys("imperfections", n,
                {"preset", "homodyne_efficiency", "detector_efficiency", "propagation_efficiency",
                 "electronic_noise_db", "phase_jitter_rad", "gain_error", "displacement_coupler_T"});
  sqz::ImperfectionModel& m = c.imperfections;
  if (n["preset"]) {
    const std::string p = rd.text("imperfections.preset", n["preset"]);
    if (p == "defaults") m = sqz::ImperfectionModel::defaults();
    else if (p == "none") m = sqz::ImperfectionModel::none();
    else if (p == "degraded") m = sqz::ImperfectionModel::degraded();
    else rd.fail("imperfections.preset", n["preset"], "expected one of defaults, none, degraded");
  }
  const auto set = [&](const char* key, double& field) {
    if (n[key]) field = rd.number(std::string("imperfections.") + key, n[key]);
  };
  set("homodyne_efficiency", m.homodyne_efficiency);
  set("detector_efficiency", m.detector_efficiency);
  set("propagation_efficiency", m.propagation_efficiency);
  set("electronic_noise_db", m.electronic_noise_db);
  set("phase_jitter_rad", m.phase_jitter_rad);
  set("gain_error", m.gain_error);
  set("displacement_coupler_T", m.displacement_coupler_T);
  rd.check("imperfections", n, [&] { m.validate(); });
}

void read_sampling(const Reader& rd, const YAML::Node& n, ExperimentConfig& c) {
  rd.known_keys("sampling", n,
                {"n_shots", "n_phases", "samples_per_phase", "seed", "bootstrap_batches", "bootstrap_resamples"});
  if (n["n_shots"]) c.n_shots = rd.count("sampling.n_shots", n["n_shots"], 2);
  if (n["n_phases"]) c.n_phases = rd.count("sampling.n_phases", n["n_phases"], 8);
  if (n["samples_per_phase"]) c.samples_per_phase = rd.count("sampling.samples_per_phase", n["samples_per_phase"], 2);
  if (n["seed"]) c.seed = rd.seed("sampling.seed", n["seed"]);
  if (n["bootstrap_batches"]) c.bootstrap_batches = rd.count("sampling.bootstrap_batches", n["bootstrap_batches"], 2);
  if (n["bootstrap_resamples"]) {
    c.bootstrap_resamples = rd.count("sampling.bootstrap_resamples", n["bootstrap_resamples"], 1);
  }
  if (c.bootstrap_batches > c.n_shots) rd.fail("sampling", n, "bootstrap_batches exceeds n_shots");
}

void read_sweep(const Reader& rd, const YAML::Node& n, ExperimentConfig& c) {
  rd.known_keys("sweep", n, {"parameter", "values", "start", "stop", "steps"});
  if (n["parameter"]) {
    c.sweep.parameter = rd.text("sweep.parameter", n["parameter"]);
    if (std::find(kSweepParameters.begin(), kSweepParameters.end(), c.sweep.parameter) == kSweepParameters.end()) {
      rd.fail("sweep.parameter", n["parameter"], "unknown sweep parameter '" + c.sweep.parameter + "'");
    }
  }
  const bool range = n["start"] || n["stop"] || n["steps"];
  if (n["values"] && range) rd.fail("sweep", n, "give either values or start/stop/steps, not both");
  if (n["values"]) {
    c.sweep.values = rd.numbers("sweep.values", n["values"]);
  } else if (range) {
    if (!(n["start"] && n["stop"] && n["steps"])) rd.fail("sweep", n, "start, stop and steps are all required");
    const double a = rd.finite("sweep.start", n["start"]);
    const double b = rd.finite("sweep.stop", n["stop"]);
    const std::size_t k = rd.count("sweep.steps", n["steps"], 2);
    c.sweep.values.clear();
    for (std::size_t i = 0; i < k; ++i) {
      c.sweep.values.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(k - 1));
    }
  }
}

void read_tomography(const Reader& rd, const YAML::Node& n, ExperimentConfig& c) {
  rd.known_keys("tomography", n, {"grid_points", "window_sigmas", "n_bins", "kappa", "filter_cutoff"});
  TomographySpec& t = c.tomography;
  if (n["grid_points"]) t.grid_points = rd.count("tomography.grid_points", n["grid_points"], 2);
  if (n["n_bins"]) t.n_bins = rd.count("tomography.n_bins", n["n_bins"], 8);
  if (n["window_sigmas"]) {
    t.window_sigmas = rd.finite("tomography.window_sigmas", n["window_sigmas"]);
    if (!(t.window_sigmas > 0.0)) rd.fail("tomography.window_sigmas", n["window_sigmas"], "must be positive");
  }
  if (n["kappa"]) {
    t.kappa = rd.finite("tomography.kappa", n["kappa"]);
    if (!(t.kappa > 0.0)) rd.fail("tomography.kappa", n["kappa"], "must be positive");
  }
  if (n["filter_cutoff"]) {
    t.filter_cutoff = rd.finite("tomography.filter_cutoff", n["filter_cutoff"]);
    if (!(*t.filter_cutoff > 0.0)) rd.fail("tomography.filter_cutoff", n["filter_cutoff"], "must be positive");
  }
}

void read_compile(const Reader& rd, const YAML::Node& n, ExperimentConfig& c) {
  rd.known_keys("compile", n, {"matrix", "displacement", "ancilla_db"});
  if (n["matrix"]) {
    const YAML::Node& m = n["matrix"];
    std::vector<double> flat;
    if (m.IsSequence() && m.size() == 2 && m[0].IsSequence()) {
      for (std::size_t i = 0; i < 2; ++i) {
        const std::vector<double> row = rd.numbers("compile.matrix[" + std::to_string(i) + "]", m[i]);
        if (row.size() != 2) rd.fail("compile.matrix", m, "expected a 2x2 matrix");
        flat.insert(flat.end(), row.begin(), row.end());
      }
    } else {
      flat = rd.numbers("compile.matrix", m);
      if (flat.size() != 4) rd.fail("compile.matrix", m, "expected [[a, b], [c, d]] or 4 numbers");
    }
    c.compile.matrix << flat[0], flat[1], flat[2], flat[3];
  }
  if (n["displacement"]) {
    const std::vector<double> d = rd.numbers("compile.displacement", n["displacement"]);
    if (d.size() != 2) rd.fail("compile.displacement", n["displacement"], "expected [dx, dp]");
    c.compile.displacement = sqz::Vector2(d[0], d[1]);
  }
  if (n["ancilla_db"]) {
    c.compile.ancilla_db = rd.number("compile.ancilla_db", n["ancilla_db"]);
    if (!(c.compile.ancilla_db >= 0.0)) rd.fail("compile.ancilla_db", n["ancilla_db"], "must be >= 0 or inf");
  }
}

}  // namespace

ExperimentConfig load_config(const std::string& path, const std::string& mode,
                             const std::vector<std::string>& overrides, std::optional<std::uint64_t> seed,
                             std::optional<std::string> out_dir) {
  if (std::find(kModes.begin(), kModes.end(), mode) == kModes.end()) throw ConfigError("unknown mode '" + mode + "'");
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();

  YAML::Node root;
  try {
    root = YAML::Load(buffer.str());
  } catch (const YAML::ParserException& e) {
    throw ConfigError(path + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);

  std::set<std::string> overridden;
  for (const std::string& o : overrides) {
    apply_override(root, o);
    overridden.insert(o.substr(0, o.find('=')));
  }
  if (seed) {
    apply_override(root, "sampling.seed=" + std::to_string(*seed));
    overridden.insert("sampling.seed");
  }

  const Reader rd(path, overridden);
  const YAML::Node cr = root;  // const lookups never insert keys
  rd.known_keys("", cr,
                {"mode", "protocol", "imperfections", "input", "sampling", "reproduce", "sweep", "tomography",
                 "compile", "output"});

  ExperimentConfig c;
  c.mode = mode;
  c.protocol.transmittance = 0.25;
  if (cr["mode"]) {
    const std::string m = rd.text("mode", cr["mode"]);
    if (m != mode) rd.fail("mode", cr["mode"], "config is for mode '" + m + "' but '" + mode + "' was requested");
  }
  if (cr["protocol"]) read_protocol(rd, cr["protocol"], c);
  else c.protocol.ancilla_squeezing = sqz::nepers_from_db(c.ancilla_db);
  if (cr["imperfections"]) read_imperfections(rd, cr["imperfections"], c);
  if (cr["input"]) {
    const YAML::Node n = cr["input"];
    rd.known_keys("input", n, {"mean_x", "mean_p"});
    if (n["mean_x"]) c.input_x = rd.finite("input.mean_x", n["mean_x"]);
    if (n["mean_p"]) c.input_p = rd.finite("input.mean_p", n["mean_p"]);
  }
  if (cr["sampling"]) read_sampling(rd, cr["sampling"], c);
  if (cr["reproduce"]) {
    const YAML::Node n = cr["reproduce"];
    rd.known_keys("reproduce", n, {"transmittances"});
    if (n["transmittances"]) {
      c.transmittances = rd.numbers("reproduce.transmittances", n["transmittances"]);
      for (double t : c.transmittances) {
        if (!(t > 0.0 && t <= 1.0)) rd.fail("reproduce.transmittances", n["transmittances"], "values must lie in (0, 1]");
      }
    }
  }
  if (cr["sweep"]) read_sweep(rd, cr["sweep"], c);
  if (c.sweep.values.empty()) {
    for (int i = 1; i <= 20; ++i) c.sweep.values.push_back(0.05 * i);
  }
  if (cr["tomography"]) read_tomography(rd, cr["tomography"], c);
  if (cr["compile"]) read_compile(rd, cr["compile"], c);
  if (cr["output"]) {
    const YAML::Node n = cr["output"];
    rd.known_keys("output", n, {"dir", "write_record", "write_wigner"});
    if (n["dir"]) c.out_dir = rd.text("output.dir", n["dir"]);
    if (n["write_record"]) c.write_record = rd.flag("output.write_record", n["write_record"]);
    if (n["write_wigner"]) c.write_wigner = rd.flag("output.write_wigner", n["write_wigner"]);
  }
  if (out_dir) c.out_dir = *out_dir;

  // The output location does not change results, so it stays out of the hash.
  YAML::Node hashed = YAML::Clone(root);
  if (hashed["output"] && hashed["output"].IsMap()) hashed["output"].remove("dir");
  YAML::Emitter emitter;
  emitter << hashed;
  c.hash = sha256_hex("mode: " + mode + "\n" + emitter.c_str());
  return c;
}

}  // namespace sqzlab
