#include "hyper/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

namespace hyper {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view s, const char* what) {
  s = trim(s);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw std::invalid_argument(std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

template <typename Int>
Int to_int(std::string_view s, const char* what) {
  s = trim(s);
  Int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw std::invalid_argument(std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Pending {
  std::size_t line;
  std::string text;
  bool is_file;
};

}  // namespace

Point parse_point(std::string_view text, NormTag tag) {
  std::vector<Complex> coords;
  text = trim(text);
  while (true) {
    const auto semi = text.find(';');
    const std::string_view part = trim(text.substr(0, semi));
    const auto comma = part.find(',');
    if (comma == std::string_view::npos) {
      coords.emplace_back(to_double(part, "coordinate"), 0.0);
    } else {
      coords.emplace_back(to_double(part.substr(0, comma), "coordinate"),
                          to_double(part.substr(comma + 1), "coordinate"));
    }
    if (semi == std::string_view::npos) break;
    text.remove_prefix(semi + 1);
  }
  return Point(std::move(coords), tag);
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base) {
  ExperimentConfig cfg;
  std::vector<std::pair<std::size_t, std::string>> directions;
  std::vector<Pending> targets;
  std::optional<std::pair<std::size_t, std::string>> source;
  bool have_dimension = false;

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(lineno, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (value.empty()) throw ParseError(lineno, "empty value for '" + key + "'");
    try {
      if (key == "dimension") {
        cfg.dimension = to_int<std::size_t>(value, "dimension");
        if (cfg.dimension == 0) throw std::invalid_argument("dimension must be >= 1");
        have_dimension = true;
      } else if (key == "norm") {
        cfg.norm = parse_norm_tag(value);
      } else if (key == "operator") {
        if (value != "single" && value != "multi" && value != "varying") {
          throw std::invalid_argument("operator must be single, multi or varying");
        }
        cfg.operator_kind = value;
      } else if (key == "symbol") {
        (void)parse_symbol(value);
        cfg.symbols.push_back(value);
      } else if (key == "direction") {
        directions.emplace_back(lineno, value);
      } else if (key == "varying_rule") {
        cfg.varying_rule = parse_direction_rule(value);
      } else if (key == "bound_B") {
        cfg.bound_B = to_double(value, "bound_B");
      } else if (key == "target") {
        targets.push_back({lineno, value, false});
      } else if (key == "target_file") {
        targets.push_back({lineno, value, true});
      } else if (key == "source") {
        source.emplace(lineno, value);
      } else if (key == "region") {
        if (value == "U") cfg.region = Region::U;
        else if (value == "V") cfg.region = Region::V;
        else throw std::invalid_argument("region must be U or V");
      } else if (key == "epsilon") {
        cfg.epsilon = to_double(value, "epsilon");
      } else if (key == "radius") {
        cfg.radius = to_double(value, "radius");
      } else if (key == "margin") {
        cfg.margin = to_double(value, "margin");
      } else if (key == "seed") {
        cfg.seed = to_int<std::uint64_t>(value, "seed");
      } else if (key == "sample_count") {
        cfg.sample_count = to_int<std::size_t>(value, "sample_count");
      } else if (key == "budget") {
        cfg.budget = to_int<int>(value, "budget");
      } else if (key == "retries") {
        cfg.retries = to_int<int>(value, "retries");
      } else if (key == "out") {
        cfg.out = value;
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(lineno, e.what());
    }
  }

  if (!have_dimension) throw ConfigError("missing key 'dimension'");
  if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(cfg.radius > 0.0)) throw ConfigError("radius must be positive");
  if (!(cfg.margin > 0.0 && cfg.margin < 1.0)) throw ConfigError("margin must lie in (0, 1)");
  if (cfg.sample_count == 0) throw ConfigError("sample_count must be >= 1");

  for (const auto& [l, v] : directions) {
    try {
      cfg.directions.push_back(parse_point(v, cfg.norm));
    } catch (const std::exception& e) {
      throw ParseError(l, e.what());
    }
    if (cfg.directions.back().dimension() != cfg.dimension) throw ParseError(l, "direction has wrong dimension");
  }
  auto parse_fn = [&](std::size_t l, const std::string& body) {
    try {
      return parse_exp_poly(body, cfg.norm, cfg.dimension);
    } catch (const ParseError& e) {
      throw ParseError(l, e.what());
    } catch (const std::exception& e) {
      throw ParseError(l, e.what());
    }
  };
  for (const auto& t : targets) {
    if (t.is_file) {
      const std::filesystem::path p = base / t.text;
      if (!std::filesystem::exists(p)) throw ConfigError("line " + std::to_string(t.line) + ": no such file " + p.string());
      try {
        cfg.targets.push_back(parse_exp_poly(read_file(p), cfg.norm, cfg.dimension));
      } catch (const ParseError& e) {
        throw ConfigError(p.string() + ": " + e.what());
      }
    } else {
      cfg.targets.push_back(parse_fn(t.line, t.text));
    }
  }
  if (source) cfg.source = parse_fn(source->first, source->second);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

OperatorSpec ExperimentConfig::build_operator() const {
  if (symbols.empty()) throw ConfigError("missing key 'symbol'");
  if (directions.empty()) throw ConfigError("missing key 'direction'");
  if (operator_kind == "multi") {
    if (symbols.size() != directions.size()) throw ConfigError("multi operator needs one symbol per direction");
    std::vector<std::pair<Symbol, Point>> parts;
    for (std::size_t i = 0; i < symbols.size(); ++i) parts.emplace_back(parse_symbol(symbols[i]), directions[i]);
    return OperatorSpec::multi(std::move(parts));
  }
  if (symbols.size() != 1 || directions.size() != 1) {
    throw ConfigError(operator_kind + " operator needs exactly one symbol and one direction");
  }
  if (operator_kind == "varying") {
    return OperatorSpec::varying(parse_symbol(symbols[0]), directions[0], varying_rule, bound_B);
  }
  return OperatorSpec::single(parse_symbol(symbols[0]), directions[0]);
}

WitnessConfig ExperimentConfig::witness_config() const {
  WitnessConfig w;
  w.density.margin = margin;
  w.density.search_budget = budget;
  w.sampler = SamplerConfig(sample_count, seed);
  w.retries = retries;
  return w;
}

ExpPoly ExperimentConfig::source_or_zero() const {
  return source ? *source : ExpPoly::zero(dimension, norm);
}

}  // namespace hyper
