#include "hyper/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "hyper/errors.hpp"

namespace hyper {

namespace {

const char* const kStepHeader = "step,n,sampled_src,sampled_tgt,certified_src,certified_tgt,terms_in_h";

struct Usage : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string step_row(std::size_t step, const TourStep& s) {
  return std::to_string(step) + "," + std::to_string(s.n) + "," + format_metric(s.sampled_src) + "," +
         format_metric(s.sampled_tgt) + "," + format_metric(s.certified_src) + "," +
         format_metric(s.certified_tgt) + "," + std::to_string(s.terms_in_h);
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << body;
}

void print_step(std::ostream& out, std::size_t step, const TourStep& s) {
  out << "step " << step << ": n=" << s.n << " sampled_src=" << format_metric(s.sampled_src)
      << " sampled_tgt=" << format_metric(s.sampled_tgt) << " certified_src=" << format_metric(s.certified_src)
      << " certified_tgt=" << format_metric(s.certified_tgt) << " terms_in_h=" << s.terms_in_h << "\n";
}

const ExpPoly& first_target(const ExperimentConfig& cfg) {
  if (cfg.targets.empty()) throw ConfigError("no target given");
  return cfg.targets.front();
}

int cmd_witness(const ExperimentConfig& cfg, const std::filesystem::path& csv, std::ostream& out) {
  const OperatorSpec op = cfg.build_operator();
  const Witness w = transitivity_witness(op, cfg.source_or_zero(), first_target(cfg), cfg.epsilon, cfg.ball(),
                                         cfg.witness_config());
  TourStep s{w.n, w.src_error, w.tgt_error, w.certified_src, w.certified_tgt, w.z.terms().size(), 0};
  write_file(csv, std::string(kStepHeader) + "\n" + step_row(1, s) + "\n");
  out << "witness for " << op.describe() << " (epsilon " << format_metric(cfg.epsilon) << ")\n";
  print_step(out, 1, s);
  out << "csv: " << csv.string() << "\n";
  return kExitOk;
}

int cmd_tour(const ExperimentConfig& cfg, const std::filesystem::path& csv, std::ostream& out,
             std::ostream& err) {
  if (cfg.targets.empty()) throw ConfigError("no target given");
  const OperatorSpec op = cfg.build_operator();
  const Tour tour = run_tour(op, cfg.targets, cfg.epsilon, cfg.ball(), cfg.witness_config());
  std::string body = std::string(kStepHeader) + "\n";
  for (std::size_t i = 0; i < tour.steps.size(); ++i) body += step_row(i + 1, tour.steps[i]) + "\n";
  write_file(csv, body);
  out << "tour for " << op.describe() << " over " << cfg.targets.size() << " targets (epsilon "
      << format_metric(cfg.epsilon) << ")\n";
  for (std::size_t i = 0; i < tour.steps.size(); ++i) print_step(out, i + 1, tour.steps[i]);
  for (std::size_t i = 0; i < tour.visit_errors.size(); ++i) {
    out << "visit " << i + 1 << ": final error " << format_metric(tour.visit_errors[i]) << "\n";
  }
  out << "csv: " << csv.string() << "\n";
  if (!tour.complete) {
    err << "error: " << tour.failure << "\n";
    return kExitTolerance;
  }
  return kExitOk;
}

int cmd_approx(const ExperimentConfig& cfg, const std::filesystem::path& dir, std::ostream& out) {
  const OperatorSpec op = cfg.build_operator();
  const ExpPoly& f = first_target(cfg);
  DensityConfig dc = cfg.witness_config().density;
  const ExpCombo combo = approx_in_region(f, op, cfg.region, cfg.epsilon, cfg.ball(), dc);
  const ExpPoly g = combo.to_exp_poly(cfg.dimension, cfg.norm);
  const double sampled = sup_lower(subtract(g, f), cfg.ball(), SamplerConfig(cfg.sample_count, cfg.seed));
  const std::string row = std::to_string(g.terms().size()) + "," + format_metric(sampled) + "," +
                          format_metric(combo.certified_error);
  write_file(dir / "approx.csv", "terms,sampled_error,certified_error\n" + row + "\n");
  write_file(dir / "approx.txt", to_text(g));
  out << "approximation in region " << to_string(cfg.region) << ": terms=" << g.terms().size()
      << " sampled_error=" << format_metric(sampled) << " certified_error=" << format_metric(combo.certified_error)
      << "\n";
  out << "combo: " << (dir / "approx.txt").string() << "\n";
  return kExitOk;
}

int cmd_report(const ExperimentConfig& cfg, const std::filesystem::path& dir, std::ostream& out) {
  const OperatorSpec op = cfg.build_operator();
  const CriterionReport rep = criterion_report(op, cfg.ball(), cfg.witness_config());
  std::string body = "curve,n,abs_g,sampled,certified,ratio\n";
  for (const auto& c : rep.curves) {
    for (std::size_t i = 0; i < c.certified.size(); ++i) {
      body += c.label + "," + std::to_string(i + 1) + "," + format_metric(std::abs(c.g)) + "," +
              format_metric(c.sampled[i]) + "," + format_metric(c.certified[i]) + "," + format_metric(c.ratios[i]) + "\n";
    }
    out << c.label << ": |g|=" << format_metric(std::abs(c.g)) << " ratio=" << format_metric(c.ratios.back())
        << " certified(n=" << c.certified.size() << ")=" << format_metric(c.certified.back()) << "\n";
  }
  write_file(dir / "report.csv", body);
  out << "identity_defect=" << format_metric(rep.identity_defect) << "\n";
  return kExitOk;
}

ExperimentConfig demo_text(const std::string& text) { return parse_config(text); }

}  // namespace

std::string format_metric(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

ExperimentConfig demo_config(const std::string& name) {
  static const std::map<std::string, std::string> demos = {
      {"birkhoff",
       "dimension = 2\noperator = single\nsymbol = exp\ndirection = 1;0\nepsilon = 0.2\n"
       "target = 1 0 : 2 0 : 0 0 0 0\n"
       "target = 1 0 : 0 0 : 0 0 0 0 | 1 0 : 0 1 : 0 0 0 0\n"
       "target = 1 0 : 0 0 : -1 0 0 0\n"},
      {"maclane",
       "dimension = 1\noperator = single\nsymbol = poly:0,0;1,0\ndirection = 1\nepsilon = 0.2\n"
       "target = 1 0 : 0 : 0 0 | 1 0 : 1 : 0 0\n"},
      {"godefroy-shapiro",
       "dimension = 1\noperator = single\nsymbol = poly:1,0;0,0;1,0\ndirection = 1\nepsilon = 0.2\n"
       "target = 1 0 : 1 : 0 0\n"},
      {"multidirection",
       "dimension = 2\noperator = multi\nsymbol = exp\ndirection = 1;0\nsymbol = exp\ndirection = 0;1\n"
       "epsilon = 0.2\ntarget = 1 0 : 1 0 : 0 0 0 0 | 1 0 : 0 1 : 0 0 0 0\n"},
      {"varying",
       "dimension = 1\noperator = varying\nsymbol = exp\ndirection = 1\nvarying_rule = harmonic\n"
       "epsilon = 0.2\ntarget = 1 0 : 1 : 0 0\n"},
  };
  const auto it = demos.find(name);
  if (it == demos.end()) throw ConfigError("unknown demo '" + name + "'");
  return demo_text(it->second);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    if (args.empty()) throw Usage("missing command");
    const std::string cmd = args[0];
    std::size_t i = 1;
    std::string demo;
    if (cmd == "demo") {
      if (args.size() < 2) throw Usage("demo needs a name");
      demo = args[1];
      i = 2;
    } else if (cmd != "witness" && cmd != "tour" && cmd != "approx" && cmd != "report") {
      throw Usage("unknown command '" + cmd + "'");
    }

    std::map<std::string, std::string> flags;
    for (; i < args.size(); ++i) {
      const std::string& a = args[i];
      if (a != "--config" && a != "--epsilon" && a != "--radius" && a != "--seed" && a != "--budget" && a != "--out") {
        throw Usage("unknown flag '" + a + "'");
      }
      if (i + 1 >= args.size()) throw Usage("flag " + a + " needs a value");
      flags[a] = args[++i];
    }

    ExperimentConfig cfg;
    if (!demo.empty()) {
      cfg = demo_config(demo);
    } else {
      if (!flags.count("--config")) throw Usage(cmd + " needs --config");
      cfg = load_config(flags["--config"]);
    }
    std::ostringstream overrides;
    for (const auto& [flag, value] : flags) {
      if (flag == "--out") cfg.out = value;
      else if (flag == "--epsilon") cfg.epsilon = std::stod(value);
      else if (flag == "--radius") cfg.radius = std::stod(value);
      else if (flag == "--seed") cfg.seed = std::stoull(value);
      else if (flag == "--budget") cfg.budget = std::stoi(value);
    }
    if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (!(cfg.radius > 0.0)) throw ConfigError("radius must be positive");

    const std::filesystem::path dir(cfg.out);
    if (!demo.empty()) {
      const std::filesystem::path csv = dir / ("demo_" + demo + ".csv");
      return demo == "birkhoff" ? cmd_tour(cfg, csv, out, err) : cmd_witness(cfg, csv, out);
    }
    if (cmd == "witness") return cmd_witness(cfg, dir / "witness.csv", out);
    if (cmd == "tour") return cmd_tour(cfg, dir / "tour.csv", out, err);
    if (cmd == "approx") return cmd_approx(cfg, dir, out);
    return cmd_report(cfg, dir, out);
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n"
        << "usage: hyper_cli <demo NAME|witness|tour|approx|report> [--config P] [--epsilon E] [--radius R]"
           " [--seed S] [--budget B] [--out DIR]\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SearchFailure& e) {
    err << "search failure: " << e.what() << "\n";
    return kExitSearch;
  } catch (const ToleranceFailure& e) {
    err << "tolerance failure: " << e.what() << "\n";
    return kExitTolerance;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace hyper
