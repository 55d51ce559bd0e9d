#ifndef CSA_CONFIG_IO_HPP
#define CSA_CONFIG_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "csa/model.hpp"

namespace csa {

/** Parses the sectioned text format:
 *
 *    [users]            one "fraction loss_prob" row per class
 *    [slots]            one "fraction" row per class
 *    [access]           L rows of J access constants
 *    [run]              epsilon=<value>
 *
 *  '#' starts a comment. Throws std::runtime_error with a line diagnostic on
 *  malformed input; the result is validated before being returned. */
SystemConfig parse_config(std::istream& in);

SystemConfig load_config_file(const std::string& path);

/** Canonical text form; parse_config(dump_config(c)) reproduces c exactly. */
std::string dump_config(const SystemConfig& config);

/** Compiled-in scenario presets, each stored at its optimal operating point:
 *  "scenario1" single class, e = 0;  "scenario2" single class, e = 0.375;
 *  "scenario3" two equal classes, e = {0.25, 0.5} with the weaker class
 *  silenced. */
SystemConfig scenario_preset(const std::string& name);

bool is_preset_name(const std::string& name);

const std::vector<std::string>& preset_names();

/** Resolves a preset name first, then falls back to a file path. */
SystemConfig load_config(const std::string& name_or_path);

}  // namespace csa

#endif
