#include "ibstab/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string_view>

namespace ibstab {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw std::invalid_argument("config: bad value for '" + key + "': '" + value + "'");
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) bad_value(key, v);
  return out;
}

template <typename Int>
Int to_int(const std::string& key, const std::string& v) {
  Int out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) bad_value(key, v);
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  bad_value(key, v);
}

}  // namespace

void SimConfig::validate() const {
  if (n < 4) throw std::invalid_argument("config: n must be >= 4");
  if (p < 1) throw std::invalid_argument("config: p must be >= 1");
  if (!(length > 0.0)) throw std::invalid_argument("config: l must be positive");
  if (!(rho > 0.0)) throw std::invalid_argument("config: rho must be positive");
  if (!(mu >= 0.0)) throw std::invalid_argument("config: mu must be >= 0");
  if (!(stiffness >= 0.0)) throw std::invalid_argument("config: k must be >= 0");
  if (!(dt > 0.0)) throw std::invalid_argument("config: dt must be positive");
  if (steps <= 0) throw std::invalid_argument("config: steps must be positive");
  if (!(amplitude >= 0.0)) throw std::invalid_argument("config: amplitude must be >= 0");
  if (record_every <= 0) throw std::invalid_argument("config: record_every must be positive");
  if (forcing == ForcingKind::TargetPoint && delta_mode != DeltaMode::FixedAtTarget)
    throw std::invalid_argument("config: target forcing requires delta_mode = fixed");
  if (init == InitKind::MembranePerturbation && forcing != ForcingKind::Membrane)
    throw std::invalid_argument("config: membrane_perturbation init requires membrane forcing");
}

SimConfig parse_config(std::istream& in) {
  static const std::set<std::string> known = {
      "n",     "p",    "l",     "rho",       "mu",        "k",         "dt",
      "steps", "forcing", "delta_mode", "eps1", "eps2",  "eps3",      "nonlinear",
      "init",  "amplitude", "f0", "seed",    "record_every"};
  SimConfig c;
  std::optional<DeltaMode> delta;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) + " has no '='");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string val = trim(std::string_view(t).substr(eq + 1));
    if (!known.count(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
    if (!seen.insert(key).second) throw std::invalid_argument("config: repeated key '" + key + "'");

    if (key == "n") c.n = to_int<int>(key, val);
    else if (key == "p") c.p = to_int<int>(key, val);
    else if (key == "l") c.length = to_double(key, val);
    else if (key == "rho") c.rho = to_double(key, val);
    else if (key == "mu") c.mu = to_double(key, val);
    else if (key == "k") c.stiffness = to_double(key, val);
    else if (key == "dt") c.dt = to_double(key, val);
    else if (key == "steps") c.steps = to_int<long>(key, val);
    else if (key == "forcing") {
      if (val == "target") c.forcing = ForcingKind::TargetPoint;
      else if (val == "membrane") c.forcing = ForcingKind::Membrane;
      else bad_value(key, val);
    } else if (key == "delta_mode") {
      if (val == "fixed") delta = DeltaMode::FixedAtTarget;
      else if (val == "moving") delta = DeltaMode::Moving;
      else bad_value(key, val);
    } else if (key == "eps1") c.eps[0] = to_double(key, val);
    else if (key == "eps2") c.eps[1] = to_double(key, val);
    else if (key == "eps3") c.eps[2] = to_double(key, val);
    else if (key == "nonlinear") c.nonlinear = to_bool(key, val);
    else if (key == "init") {
      if (val == "gaussian") c.init = InitKind::Gaussian;
      else if (val == "zero") c.init = InitKind::Zero;
      else if (val == "membrane_perturbation") c.init = InitKind::MembranePerturbation;
      else if (val == "poiseuille") c.init = InitKind::Poiseuille;
      else bad_value(key, val);
    } else if (key == "amplitude") c.amplitude = to_double(key, val);
    else if (key == "f0") c.f0 = to_double(key, val);
    else if (key == "seed") c.seed = to_int<std::uint64_t>(key, val);
    else if (key == "record_every") c.record_every = to_int<long>(key, val);
  }
  if (delta) c.delta_mode = *delta;
  else c.delta_mode = c.forcing == ForcingKind::Membrane ? DeltaMode::Moving : DeltaMode::FixedAtTarget;
  c.validate();
  return c;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  return parse_config(in);
}

}  // namespace ibstab
