#pragma once

#include <filesystem>
#include <string_view>

#include "json.hpp"
#include "spinxfer/ensemble.hpp"

namespace spinxfer::cli {

/// Parses and validates a JSON experiment document. Keys:
///
///   N (or chain_length)  required, 2..20
///   max_excitations      default 2
///   input                "TypeI" | "TypeII" | "TypeIII" |
///                        [{"state": "1100", "amplitude": 1 | [re, im]}, ...]
///   profile              "pst"
///   j0                   default 1
///   eta gamma delta chi  default 0
///   epsilon              scalar (uniform) or list of N site energies
///   seed                 unsigned 64-bit master seed, default 1729
///   chi_cross_sector     default true
///   chi_diagonal         default false
///   time                 {"points": 801, "span": 4.0}   (span in units of t_S)
///   observable           {"measure": "fidelity"|"eof",
///                         "target": "initial"|"mirrored",
///                         "eof_sites": [a, b],
///                         "probe": "first_revival"|"first_transfer"}
///   realisations         default 100
///   sweep                {"n": [6, 7, ...]}
///
/// Unknown keys and out-of-range values throw ConfigError naming the key path.
ExperimentConfig parse_config(std::string_view text);

ExperimentConfig parse_config_file(const std::filesystem::path& path);

/// Canonical JSON rendering; parse_config(to_json(c).dump()) reproduces c.
nlohmann::json to_json(const ExperimentConfig& config);

} // namespace spinxfer::cli
