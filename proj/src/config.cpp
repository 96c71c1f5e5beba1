#include "floquet/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "floquet/error.hpp"

namespace floquet::config {
namespace {

struct Field {
  std::string key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* what) {
  throw Error(ErrorCode::ValidationError,
              key + ": cannot parse '" + value + "' as " + what);
}

double to_double(const std::string& key, const std::string& value) {
  // "pi" multiples are common for phases: accept "pi", "-pi", "pi/2", "3pi/4".
  std::string v = value;
  const auto pos = v.find("pi");
  if (pos != std::string::npos) {
    const std::string head = v.substr(0, pos);
    const std::string tail = v.substr(pos + 2);
    double factor = 1.0;
    if (head == "-") {
      factor = -1.0;
    } else if (!head.empty()) {
      factor = to_double(key, head.back() == '*' ? head.substr(0, head.size() - 1) : head);
    }
    double divisor = 1.0;
    if (!tail.empty()) {
      if (tail[0] != '/') bad_value(key, value, "a number");
      divisor = to_double(key, tail.substr(1));
    }
    return factor * kPi / divisor;
  }
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  if (!v.empty() && v[0] == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) bad_value(key, value, "a number");
  return out;
}

int to_int(const std::string& key, const std::string& value) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value, "an integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value, "a boolean");
}

Field number(std::string key, double RunConfig::*m) {
  return {key, [key, m](RunConfig& c, const std::string& v) { c.*m = to_double(key, v); },
          [m](const RunConfig& c) { return format_number(c.*m); }};
}

Field integer(std::string key, int RunConfig::*m) {
  return {key, [key, m](RunConfig& c, const std::string& v) { c.*m = to_int(key, v); },
          [m](const RunConfig& c) { return std::to_string(c.*m); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back({"model.kind",
                 [](RunConfig& c, const std::string& v) {
                   try {
                     c.kind = parse_model_kind(v);
                   } catch (const Error&) {
                     bad_value("model.kind", v, "haldane or brickwall");
                   }
                 },
                 [](const RunConfig& c) { return std::string(to_string(c.kind)); }});
    f.push_back(number("model.M", &RunConfig::mass));
    f.push_back(number("model.phi", &RunConfig::phi));
    f.push_back(number("drive.omega1", &RunConfig::omega1));
    f.push_back(number("drive.ratio", &RunConfig::ratio));
    f.push_back(number("drive.phi1", &RunConfig::phi1));
    f.push_back(number("drive.phi2", &RunConfig::phi2));
    f.push_back(number("drive.omega_r", &RunConfig::omega_r));
    f.push_back({"evolution.mode",
                 [](RunConfig& c, const std::string& v) {
                   try {
                     c.mode = sweep::parse_mode(v);
                   } catch (const Error&) {
                     bad_value("evolution.mode", v, "conservative or driven-dissipative");
                   }
                 },
                 [](const RunConfig& c) { return std::string(sweep::to_string(c.mode)); }});
    f.push_back(number("dissipation.gamma", &RunConfig::gamma));
    f.push_back(number("dissipation.gamma_e", &RunConfig::gamma_e));
    f.push_back(number("dissipation.s0", &RunConfig::s0));
    f.push_back(number("dissipation.detuning", &RunConfig::detuning));
    f.push_back(number("evolution.periods", &RunConfig::periods));
    f.push_back(number("evolution.dt", &RunConfig::dt));
    f.push_back(integer("evolution.decimate", &RunConfig::decimate));
    f.push_back(number("evolution.window", &RunConfig::window));
    f.push_back(number("sweep.m_min", &RunConfig::m_min));
    f.push_back(number("sweep.m_max", &RunConfig::m_max));
    f.push_back(integer("sweep.m_n", &RunConfig::m_n));
    f.push_back(number("sweep.phi_min", &RunConfig::phi_min));
    f.push_back(number("sweep.phi_max", &RunConfig::phi_max));
    f.push_back(integer("sweep.phi_n", &RunConfig::phi_n));
    f.push_back(integer("sweep.workers", &RunConfig::workers));
    f.push_back(integer("sweep.chern_grid", &RunConfig::chern_grid));
    f.push_back(integer("dos.grid", &RunConfig::dos_grid));
    f.push_back(integer("dos.bins", &RunConfig::dos_bins));
    f.push_back(number("signals.sample_rate", &RunConfig::sample_rate));
    f.push_back(number("signals.duration", &RunConfig::signal_duration));
    f.push_back({"output.dir", [](RunConfig& c, const std::string& v) { c.output_dir = v; },
                 [](const RunConfig& c) { return c.output_dir; }});
    f.push_back({"output.deterministic",
                 [](RunConfig& c, const std::string& v) {
                   if (!to_bool("output.deterministic", v)) {
                     throw Error(ErrorCode::ValidationError,
                                 "output.deterministic: runs are always deterministic");
                   }
                   c.deterministic = true;
                 },
                 [](const RunConfig&) { return std::string("true"); }});
    return f;
  }();
  return table;
}

const Field& field(const std::string& key) {
  for (const auto& f : fields()) {
    if (f.key == key) return f;
  }
  throw Error(ErrorCode::UnknownKey, "unknown key '" + key + "'");
}

void require(bool ok, const char* key, const char* why) {
  if (!ok) throw Error(ErrorCode::ValidationError, std::string(key) + ": " + why);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

drive::DriveConfig RunConfig::drive() const {
  drive::DriveConfig d;
  d.omega1 = omega1;
  d.omega2 = ratio * omega1;
  d.phi1 = phi1;
  d.phi2 = phi2;
  d.omega_r = omega_r;
  d.delta = drive::detuning_for_mass(mass, omega_r);
  return d;
}

evolution::DissipationConfig RunConfig::dissipation() const {
  evolution::DissipationConfig d;
  d.gamma = gamma;
  d.gamma_e = gamma_e;
  d.s_amp = s0;
  d.drive_detuning = detuning;
  d.enabled = mode == sweep::Mode::DrivenDissipative;
  return d;
}

evolution::EvolutionParams RunConfig::evolution_params() const {
  evolution::EvolutionParams p;
  p.duration = evolution::default_duration(drive(), periods);
  p.dt = dt;
  p.decimate = decimate;
  return p;
}

sweep::SweepSpec RunConfig::sweep_spec() const {
  sweep::SweepSpec s;
  s.kind = kind;
  s.mass = {m_min, m_max, m_n};
  s.phi = {phi_min, phi_max, phi_n};
  s.mode = mode;
  s.ratio = ratio;
  s.base = drive();
  s.dissipation = dissipation();
  s.periods = periods;
  s.dt = dt;
  s.decimate = decimate;
  s.window_start = window;
  s.chern_grid = chern_grid;
  s.workers = workers;
  return s;
}

void RunConfig::validate() const {
  require(finite(mass), "model.M", "must be finite");
  require(finite(phi) && std::abs(phi) <= kPi + 1e-12, "model.phi", "must lie in [-pi, pi]");
  require(finite(omega1) && omega1 > 0.0, "drive.omega1", "must be positive");
  require(finite(ratio) && ratio > 0.0, "drive.ratio", "must be positive");
  require(finite(phi1), "drive.phi1", "must be finite");
  require(finite(phi2), "drive.phi2", "must be finite");
  require(finite(omega_r) && omega_r > 0.0, "drive.omega_r", "must be positive");
  require(finite(gamma) && gamma >= 0.0, "dissipation.gamma", "must be non-negative");
  require(finite(gamma_e) && gamma_e >= 0.0, "dissipation.gamma_e", "must be non-negative");
  require(finite(s0), "dissipation.s0", "must be finite");
  require(finite(detuning), "dissipation.detuning", "must be finite");
  require(finite(periods) && periods > 0.0, "evolution.periods", "must be positive");
  require(finite(dt) && dt > 0.0, "evolution.dt", "must be positive");
  require(decimate >= 1, "evolution.decimate", "must be >= 1");
  require(finite(window) && window >= 0.0 && window < 1.0, "evolution.window",
          "must be in [0, 1)");
  require(finite(m_min) && finite(m_max) && m_min < m_max, "sweep.m_min",
          "must be finite and below sweep.m_max");
  require(m_n >= 2, "sweep.m_n", "must be >= 2");
  require(finite(phi_min) && finite(phi_max) && phi_min < phi_max, "sweep.phi_min",
          "must be finite and below sweep.phi_max");
  require(phi_n >= 2, "sweep.phi_n", "must be >= 2");
  require(workers >= 0, "sweep.workers", "must be >= 0");
  require(chern_grid >= 16, "sweep.chern_grid", "must be >= 16");
  require(dos_grid >= 64, "dos.grid", "must be >= 64");
  require(dos_bins >= 2, "dos.bins", "must be >= 2");
  require(finite(sample_rate) && sample_rate > 0.0, "signals.sample_rate", "must be positive");
  require(finite(signal_duration) && signal_duration >= 0.0, "signals.duration",
          "must be non-negative");
  require(!output_dir.empty(), "output.dir", "must not be empty");
}

void set_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  field(key).set(cfg, value);
}

std::string get_value(const RunConfig& cfg, const std::string& key) { return field(key).get(cfg); }

const std::vector<std::string>& keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& f : fields()) out.push_back(f.key);
    return out;
  }();
  return names;
}

RunConfig parse(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(number) + ": empty key or value");
    }
    // Derived entries of an echo are recomputed, so pasting an echo back works.
    if (key.starts_with("derived.")) continue;
    try {
      set_value(cfg, key, value);
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(number) + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

RunConfig load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config '" + path + "'");
  return parse(in);
}

bool rational_approximation(double x, int max_denominator, Rational& out) {
  if (!std::isfinite(x) || x <= 0.0) return false;
  // Continued-fraction convergents p_k / q_k.
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(r);
    const auto ai = static_cast<long long>(a);
    const long long p2 = ai * p1 + p0;
    const long long q2 = ai * q1 + q0;
    if (q2 > max_denominator) return false;
    if (std::abs(static_cast<double>(p2) / static_cast<double>(q2) - x) <= 1e-9 * x) {
      out = {p2, q2};
      return true;
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = r - a;
    if (frac <= 0.0) return false;
    r = 1.0 / frac;
  }
  return false;
}

bool is_commensurate(const RunConfig& cfg) {
  Rational r;
  return rational_approximation(cfg.ratio, 64, r);
}

std::vector<std::pair<std::string, std::string>> echo(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : fields()) out.emplace_back(f.key, f.get(cfg));
  const drive::DriveConfig d = cfg.drive();
  out.emplace_back("derived.omega2", format_number(d.omega2));
  out.emplace_back("derived.delta", format_number(d.delta));
  Rational r;
  out.emplace_back("derived.commensurate",
                   rational_approximation(cfg.ratio, 64, r)
                       ? std::to_string(r.p) + "/" + std::to_string(r.q)
                       : std::string("no"));
  return out;
}

std::string format_number(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace floquet::config
