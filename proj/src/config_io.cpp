#include "csa/config_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace csa {

namespace {

[[noreturn]] void fail_line(std::size_t line, const std::string& what) {
  throw std::runtime_error("config line " + std::to_string(line) + ": " + what);
}

std::string strip(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<double> parse_numbers(const std::string& text, std::size_t line) {
  std::vector<double> values;
  std::istringstream iss(text);
  std::string token;
  while (iss >> token) {
    try {
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      values.push_back(v);
    } catch (const std::exception&) {
      fail_line(line, "expected a number, got '" + token + "'");
    }
  }
  return values;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SystemConfig parse_config(std::istream& in) {
  SystemConfig cfg;
  std::vector<std::vector<double>> access_rows;
  bool have_epsilon = false;

  enum class Section { none, users, slots, access, run } section = Section::none;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string text = strip(raw);
    if (text.empty()) continue;

    if (text.front() == '[') {
      if (text.back() != ']') fail_line(line, "unterminated section header");
      const std::string name = text.substr(1, text.size() - 2);
      if (name == "users") section = Section::users;
      else if (name == "slots") section = Section::slots;
      else if (name == "access") section = Section::access;
      else if (name == "run") section = Section::run;
      else fail_line(line, "unknown section [" + name + "]");
      continue;
    }

    switch (section) {
      case Section::none:
        fail_line(line, "content before any section header");
      case Section::users: {
        const auto v = parse_numbers(text, line);
        if (v.size() != 2) fail_line(line, "expected 'fraction loss_prob' in [users] row");
        cfg.user_classes.push_back({v[0], v[1]});
        break;
      }
      case Section::slots: {
        const auto v = parse_numbers(text, line);
        if (v.size() != 1) fail_line(line, "expected a single fraction in [slots] row");
        cfg.slot_classes.push_back({v[0]});
        break;
      }
      case Section::access: {
        access_rows.push_back(parse_numbers(text, line));
        break;
      }
      case Section::run: {
        const auto eq = text.find('=');
        if (eq == std::string::npos) fail_line(line, "expected key=value in [run]");
        const std::string key = strip(text.substr(0, eq));
        const std::string value = strip(text.substr(eq + 1));
        if (key == "epsilon") {
          const auto v = parse_numbers(value, line);
          if (v.size() != 1) fail_line(line, "expected a single value for epsilon");
          cfg.epsilon = v[0];
          have_epsilon = true;
        } else {
          fail_line(line, "unknown key '" + key + "' in [run]");
        }
        break;
      }
    }
  }

  if (cfg.user_classes.empty()) throw std::runtime_error("config: missing [users] section");
  if (cfg.slot_classes.empty()) throw std::runtime_error("config: missing [slots] section");
  if (access_rows.empty()) throw std::runtime_error("config: missing [access] section");
  if (!have_epsilon) throw std::runtime_error("config: missing epsilon in [run]");

  const std::size_t L = cfg.user_classes.size();
  const std::size_t J = cfg.slot_classes.size();
  if (access_rows.size() != L)
    throw std::runtime_error("config: [access] must have one row per user class (" +
                             std::to_string(access_rows.size()) + " rows for " +
                             std::to_string(L) + " classes)");
  cfg.access = AccessMatrix(L, J);
  for (std::size_t l = 0; l < L; ++l) {
    if (access_rows[l].size() != J)
      throw std::runtime_error("config: [access] row " + std::to_string(l) + " must have " +
                               std::to_string(J) + " entries");
    for (std::size_t j = 0; j < J; ++j) cfg.access(l, j) = access_rows[l][j];
  }

  validate(cfg);
  return cfg;
}

SystemConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::string dump_config(const SystemConfig& config) {
  std::ostringstream out;
  out << "[users]\n";
  for (const UserClass& u : config.user_classes)
    out << format_double(u.fraction) << ' ' << format_double(u.loss_prob) << '\n';
  out << "[slots]\n";
  for (const SlotClass& s : config.slot_classes) out << format_double(s.fraction) << '\n';
  out << "[access]\n";
  for (std::size_t l = 0; l < config.num_user_classes(); ++l) {
    for (std::size_t j = 0; j < config.num_slot_classes(); ++j) {
      if (j) out << ' ';
      out << format_double(config.access(l, j));
    }
    out << '\n';
  }
  out << "[run]\n";
  out << "epsilon=" << format_double(config.epsilon) << '\n';
  return out.str();
}

namespace {

SystemConfig make_preset(std::vector<UserClass> users, std::vector<double> alpha_column,
                         double epsilon) {
  SystemConfig cfg;
  cfg.user_classes = std::move(users);
  cfg.slot_classes = {{1.0}};
  cfg.access = AccessMatrix(cfg.user_classes.size(), 1);
  for (std::size_t l = 0; l < alpha_column.size(); ++l) cfg.access(l, 0) = alpha_column[l];
  cfg.epsilon = epsilon;
  return cfg;
}

}  // namespace

SystemConfig scenario_preset(const std::string& name) {
  if (name == "scenario1") return make_preset({{1.0, 0.0}}, {3.1}, 0.05);
  if (name == "scenario2") return make_preset({{1.0, 0.375}}, {3.1}, 0.7);
  if (name == "scenario3")
    return make_preset({{0.5, 0.25}, {0.5, 0.5}}, {3.1, 0.0}, -0.3);
  throw std::runtime_error("unknown preset '" + name +
                           "' (expected scenario1, scenario2 or scenario3)");
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"scenario1", "scenario2", "scenario3"};
  return names;
}

bool is_preset_name(const std::string& name) {
  for (const auto& n : preset_names())
    if (n == name) return true;
  return false;
}

SystemConfig load_config(const std::string& name_or_path) {
  if (is_preset_name(name_or_path)) return scenario_preset(name_or_path);
  return load_config_file(name_or_path);
}

}  // namespace csa
