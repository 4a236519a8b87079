#include "dqd/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dqd {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::uint64_t parse_seed(std::string_view text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("seed must be a non-negative integer, got '" + std::string(text) + "'");
  return v;
}

}  // namespace

double parse_number(std::string_view text, std::string_view what) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ConfigError(std::string(what) + ": not a number: '" + std::string(text) + "'");
  return v;
}

Range parse_range(std::string_view text) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos)
    throw ConfigError("range must be lo:hi:step, got '" + std::string(text) + "'");
  Range r{parse_number(text.substr(0, a), "range lo"),
          parse_number(text.substr(a + 1, b - a - 1), "range hi"),
          parse_number(text.substr(b + 1), "range step")};
  if (!(r.step > 0.0)) throw ConfigError("range step must be positive");
  if (r.hi < r.lo) throw ConfigError("range hi must not be below lo");
  return r;
}

std::string format_range(const Range& r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g:%.17g:%.17g", r.lo, r.hi, r.step);
  return buf;
}

void apply_config_text(std::string_view text, ExperimentSpec& spec, std::string_view source) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto where = [&] { return std::string(source) + ":" + std::to_string(line_no) + ": "; };
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where() + "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    try {
      auto num = [&] { return parse_number(value, key); };
      if (key == "device.a_nm") spec.device.a_nm = num();
      else if (key == "device.hbar_omega0_mev") spec.device.hbar_omega0_mev = num();
      else if (key == "device.m_eff") spec.device.m_eff = num();
      else if (key == "device.eps_r") spec.device.eps_r = num();
      else if (key == "control.scheme") {
        if (value != "tilt" && value != "barrier")
          throw ConfigError("control.scheme must be tilt or barrier");
        spec.scheme = std::string(value);
      } else if (key == "control.epsilon_mev") spec.device.epsilon_mev = num();
      else if (key == "control.xi_mev") spec.device.xi_mev = num();
      else if (key == "control.eps_range") spec.eps_range = parse_range(value);
      else if (key == "control.xi_range") spec.xi_range = parse_range(value);
      else if (key == "impurity.x_nm") spec.impurity_x_nm = num();
      else if (key == "impurity.y_nm") spec.impurity_y_nm = num();
      else if (key == "impurity.charge_e") spec.charge_e = num();
      else if (key == "run.mode") spec.mode = parse_mode(value);
      else if (key == "run.j_mhz") spec.j_mhz = num();
      else if (key == "run.seed") spec.seed = parse_seed(value);
      else if (key == "noise.sigma_floor_ghz") spec.sigma_floor_ghz = num();
      else if (key == "noise.j_max_ghz") spec.j_max_ghz = num();
      else if (key == "noise.j_step_ghz") spec.j_step_ghz = num();
      else throw ConfigError("unknown key '" + key + "'");
    } catch (const ConfigError& e) {
      throw ConfigError(where() + e.what());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where() + e.what());
    }
  }
}

void load_config_file(const std::string& path, ExperimentSpec& spec) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(buf.str(), spec, path);
}

}  // namespace dqd
