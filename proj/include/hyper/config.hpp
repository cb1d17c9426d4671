#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hyper/dynamics.hpp"
#include "hyper/operator.hpp"
#include "hyper/serialize.hpp"

namespace hyper {

/// Semantically invalid configuration (missing key, unreadable file, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` experiment description.
///
///   dimension   = 2
///   norm        = l2                    # l1 | l2 | linf
///   operator    = single                # single | multi | varying
///   symbol      = exp                   # repeat once per direction for multi
///   direction   = 1;0                   # components re or re,im separated by ';'
///   varying_rule = harmonic             # varying only
///   bound_B     = 2                     # varying only, optional
///   target      = 1 0 : 2 0 : 0 0 0 0   # repeatable, '|' separates terms
///   target_file = targets.txt           # alternative, one function per file
///   source      = ...                   # defaults to 0
///   region      = V                     # approx command
///   epsilon, radius, margin, seed, sample_count, budget, retries, out
struct ExperimentConfig {
  std::size_t dimension = 1;
  NormTag norm = NormTag::L2;
  std::string operator_kind = "single";
  std::vector<std::string> symbols;
  std::vector<Point> directions;
  DirectionRule varying_rule = DirectionRule::Const;
  double bound_B = 0.0;
  std::vector<ExpPoly> targets;
  std::optional<ExpPoly> source;
  Region region = Region::V;
  double epsilon = 0.1;
  double radius = 1.0;
  double margin = 0.2;
  std::uint64_t seed = 0;
  std::size_t sample_count = 256;
  int budget = 8;
  int retries = 4;
  std::string out = ".";

  OperatorSpec build_operator() const;
  BallSpec ball() const { return BallSpec(radius, norm); }
  WitnessConfig witness_config() const;
  ExpPoly source_or_zero() const;
};

/// Parses config text; `base` resolves relative target_file paths. Throws
/// ParseError with the offending line, or ConfigError.
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base = ".");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Components separated by ';', each `re` or `re,im`.
Point parse_point(std::string_view text, NormTag tag);

}  // namespace hyper
