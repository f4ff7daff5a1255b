#include "entsim/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace entsim::cli {

using experiments::Model;
using experiments::ScalingSeries;
using experiments::ScenarioConfig;
using experiments::SweepParam;
using experiments::Topology;

namespace {

const std::vector<std::pair<std::string, std::string>>& subcommand_table() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"harmonic-chain",
       "Log-negativity of an oscillator chain vs connectivity n_c"},
      {"harmonic-bipartite",
       "Log-negativity of a bipartite oscillator graph (random: sweep c_p; "
       "regular: sweep n_c)"},
      {"harmonic-scaling",
       "Half/half log-negativity vs system size n (nearest-neighbor, optimal "
       "or complete series)"},
      {"spin-chain", "Entropy of entanglement of an XX chain vs n_c"},
      {"spin-random",
       "Entropy, energy and ground-state degeneracy of random XX graphs vs "
       "c_p"},
      {"spin-bipartite",
       "Entropy of a regular bipartite XX graph vs n_c, with tangle sums"},
      {"monogamy-gaussian",
       "Gaussian monogamy budget on a regular bipartite oscillator graph"},
      {"monogamy-spin", "CKW tangle budget on a regular bipartite XX graph"},
      {"f-curve", "Connectivity function f(alpha, n_c) of the circulant limit"},
  };
  return table;
}

struct RawOptions {
  int n = -1;
  std::vector<double> alphas;
  std::string sweep;
  int seeds = -1;
  std::uint64_t seed = 1;
  std::string convention = "single";
  std::string partition;
  std::string boundary;
  std::string series = "optimal";
  std::string kind = "random";
  std::string out;
  double weight_lo = 0.0;
  double weight_hi = 1.0;
  bool normalize = false;
  int verbosity = 0;
};

struct SweepSpec {
  SweepParam param;
  std::vector<double> values;
};

SweepParam sweep_param_from(const std::string& name) {
  if (name == "n_c") return SweepParam::n_c;
  if (name == "c_p") return SweepParam::c_p;
  if (name == "n") return SweepParam::n;
  if (name == "alpha") return SweepParam::alpha;
  throw std::invalid_argument("--sweep: unknown parameter '" + name +
                              "' (expected n_c, c_p, n or alpha)");
}

SweepSpec parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string piece;
  while (std::getline(stream, piece, ':')) parts.push_back(piece);
  if (parts.size() < 3 || parts.size() > 4)
    throw std::invalid_argument(
        "--sweep: expected <name>:<lo>:<hi>[:<step>], got '" + text + "'");
  SweepSpec spec;
  spec.param = sweep_param_from(parts[0]);
  double lo, hi, step;
  try {
    lo = std::stod(parts[1]);
    hi = std::stod(parts[2]);
    const bool integral =
        spec.param == SweepParam::n_c || spec.param == SweepParam::n;
    step = parts.size() == 4 ? std::stod(parts[3]) : (integral ? 1.0 : 0.05);
  } catch (const std::exception&) {
    throw std::invalid_argument("--sweep: non-numeric bound in '" + text + "'");
  }
  try {
    spec.values = experiments::sweep_grid(lo, hi, step);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("--sweep: ") + e.what());
  }
  return spec;
}

graph::PartitionScheme partition_from(const std::string& name) {
  if (name == "contiguous") return graph::PartitionScheme::contiguous;
  if (name == "parity") return graph::PartitionScheme::parity;
  throw std::invalid_argument("--partition: expected contiguous or parity");
}

ScenarioConfig defaults_for(const std::string& sub) {
  ScenarioConfig cfg;
  if (sub == "harmonic-chain") {
    cfg.model = Model::harmonic;
    cfg.topology = Topology::chain;
    cfg.n = 100;
    cfg.boundary = graph::Boundary::open;
    cfg.sweep = SweepParam::n_c;
    cfg.sweep_values = experiments::sweep_grid(1, 99, 1);
    cfg.seeds = 1;
    cfg.partition = graph::PartitionScheme::contiguous;
  } else if (sub == "harmonic-bipartite") {
    cfg.model = Model::harmonic;
    cfg.topology = Topology::bipartite_random;
    cfg.n = 100;
    cfg.sweep = SweepParam::c_p;
    cfg.sweep_values = experiments::sweep_grid(0.05, 1.0, 0.05);
    cfg.seeds = 100;
    cfg.partition = graph::PartitionScheme::parity;
  } else if (sub == "harmonic-scaling") {
    cfg.model = Model::harmonic;
    cfg.topology = Topology::chain;
    cfg.series = ScalingSeries::optimal;
    cfg.sweep = SweepParam::n;
    cfg.sweep_values = experiments::sweep_grid(20, 200, 20);
    cfg.seeds = 1;
    cfg.partition = graph::PartitionScheme::contiguous;
  } else if (sub == "spin-chain") {
    cfg.model = Model::spin;
    cfg.topology = Topology::chain;
    cfg.n = 14;  // desk-scale stand-in for the published size
    cfg.sweep = SweepParam::n_c;
    cfg.sweep_values = experiments::sweep_grid(1, 7, 1);
    cfg.seeds = 100;
    cfg.partition = graph::PartitionScheme::contiguous;
  } else if (sub == "spin-random") {
    cfg.model = Model::spin;
    cfg.topology = Topology::random;
    cfg.n = 10;
    cfg.sweep = SweepParam::c_p;
    cfg.sweep_values = experiments::sweep_grid(0.0, 1.0, 0.1);
    cfg.seeds = 100;
    cfg.partition = graph::PartitionScheme::contiguous;
    cfg.with_degeneracy = true;
  } else if (sub == "spin-bipartite" || sub == "monogamy-spin") {
    cfg.model = Model::spin;
    cfg.topology = Topology::bipartite_regular;
    cfg.n = 14;
    cfg.sweep = SweepParam::n_c;
    cfg.sweep_values = experiments::sweep_grid(1, 3, 1);
    cfg.seeds = 100;
    cfg.partition = graph::PartitionScheme::parity;
    cfg.with_monogamy = true;
  } else if (sub == "monogamy-gaussian") {
    cfg.model = Model::harmonic;
    cfg.topology = Topology::bipartite_regular;
    cfg.n = 90;
    cfg.sweep = SweepParam::n_c;
    cfg.sweep_values = experiments::sweep_grid(1, 22, 1);
    cfg.seeds = 1;
    cfg.partition = graph::PartitionScheme::parity;
    cfg.with_monogamy = true;
  } else if (sub == "f-curve") {
    cfg.f_curve = true;
    cfg.sweep = SweepParam::n_c;
    cfg.sweep_values = experiments::sweep_grid(1, 20, 1);
    cfg.seeds = 1;
  }
  return cfg;
}

ParsedInvocation assemble(const std::string& sub, const RawOptions& raw) {
  ParsedInvocation inv;
  inv.subcommand = sub;
  inv.config = defaults_for(sub);
  ScenarioConfig& cfg = inv.config;

  if (raw.n >= 0) {
    if (!cfg.f_curve && (raw.n < 2 || raw.n % 2 != 0))
      throw std::invalid_argument(
          "--n: must be even and >= 2 (half/half partition)");
    cfg.n = raw.n;
  }
  if (!raw.alphas.empty()) {
    for (double a : raw.alphas)
      if (a < 0.0) throw std::invalid_argument("--alpha: must be >= 0");
    inv.alphas = raw.alphas;
  }
  if (!raw.sweep.empty()) {
    const SweepSpec spec = parse_sweep(raw.sweep);
    cfg.sweep = spec.param;
    cfg.sweep_values = spec.values;
    if (sub == "harmonic-bipartite") {
      cfg.topology = spec.param == SweepParam::n_c
                         ? Topology::bipartite_regular
                         : Topology::bipartite_random;
    }
  }
  if (raw.kind == "regular" && sub == "harmonic-bipartite" && raw.sweep.empty()) {
    cfg.topology = Topology::bipartite_regular;
    cfg.sweep = SweepParam::n_c;
    cfg.sweep_values = experiments::sweep_grid(1, cfg.n / 4, 1);
  }
  if (raw.seeds >= 0) {
    if (raw.seeds < 1) throw std::invalid_argument("--seeds: must be >= 1");
    cfg.seeds = raw.seeds;
  }
  cfg.base_seed = raw.seed;
  if (raw.convention == "single")
    cfg.convention = graph::BondConvention::single;
  else if (raw.convention == "double")
    cfg.convention = graph::BondConvention::double_count;
  else
    throw std::invalid_argument("--bond-convention: expected single or double");
  if (!raw.partition.empty()) cfg.partition = partition_from(raw.partition);
  if (!raw.boundary.empty()) {
    if (raw.boundary == "open")
      cfg.boundary = graph::Boundary::open;
    else if (raw.boundary == "closed")
      cfg.boundary = graph::Boundary::closed;
    else
      throw std::invalid_argument("--boundary: expected open or closed");
  }
  if (sub == "harmonic-scaling") {
    if (raw.series == "nn") {
      cfg.topology = Topology::chain;
      cfg.series = ScalingSeries::plain;
      cfg.fixed_n_c = 1;
    } else if (raw.series == "optimal") {
      cfg.topology = Topology::chain;
      cfg.series = ScalingSeries::optimal;
    } else if (raw.series == "complete") {
      cfg.topology = Topology::complete;
      cfg.series = ScalingSeries::plain;
    } else {
      throw std::invalid_argument("--series: expected nn, optimal or complete");
    }
  }
  if (!(raw.weight_lo <= raw.weight_hi))
    throw std::invalid_argument("--weight-lo/--weight-hi: interval inverted");
  cfg.weight_lo = raw.weight_lo;
  cfg.weight_hi = raw.weight_hi;
  inv.normalize = raw.normalize;
  inv.verbosity = raw.verbosity;
  inv.out_path = raw.out.empty() ? sub + ".csv" : raw.out;

  experiments::validate(cfg);
  return inv;
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, desc] : subcommand_table()) out.push_back(name);
    return out;
  }();
  return names;
}

ParseResult parse(const std::vector<std::string>& args) {
  CLI::App app{"Ground-state entanglement vs connectivity: coupled harmonic "
               "oscillators and XX spin systems"};
  app.require_subcommand(0, 1);
  app.set_config("--config", "", "Scenario file with key=value lines");

  RawOptions raw;
  for (const auto& [name, desc] : subcommand_table()) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--n", raw.n, "Number of sites (even)");
    sub->add_option("--alpha", raw.alphas,
                    "Coupling constant(s); repeatable, one output series each");
    sub->add_option("--sweep", raw.sweep,
                    "Sweep grid <name>:<lo>:<hi>[:<step>], name in "
                    "{n_c, c_p, n, alpha}");
    sub->add_option("--seeds", raw.seeds, "Replicas per sweep value");
    sub->add_option("--seed", raw.seed, "Base seed for replica derivation");
    sub->add_option("--bond-convention", raw.convention,
                    "single | double (pair bonds counted once or twice)");
    sub->add_option("--partition", raw.partition, "contiguous | parity");
    sub->add_option("--out", raw.out, "CSV destination path");
    sub->add_flag("--normalize", raw.normalize,
                  "Append a per-series normalized column");
    sub->add_flag("-v,--verbose", raw.verbosity, "Print per-point summaries");
    if (name == "harmonic-chain" || name == "spin-chain")
      sub->add_option("--boundary", raw.boundary, "open | closed");
    if (name == "harmonic-bipartite")
      sub->add_option("--kind", raw.kind, "random | regular");
    if (name == "harmonic-scaling")
      sub->add_option("--series", raw.series, "nn | optimal | complete");
    if (name.rfind("spin", 0) == 0 || name == "monogamy-spin") {
      sub->add_option("--weight-lo", raw.weight_lo,
                      "Lower end of the random coupling interval");
      sub->add_option("--weight-hi", raw.weight_hi,
                      "Upper end of the random coupling interval");
    }
  }

  ParseResult result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.show_help = true;
    result.help_text = app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::ParseError& e) {
    throw std::invalid_argument(e.what());
  }

  if (app.get_subcommands().empty()) {
    result.show_help = true;
    result.help_text = app.help("", CLI::AppFormatMode::All);
    return result;
  }
  result.invocation = assemble(app.get_subcommands().front()->get_name(), raw);
  return result;
}

namespace {

std::string alpha_tagged_path(const std::string& path, double alpha,
                              bool multi) {
  if (!multi) return path;
  char tag[32];
  std::snprintf(tag, sizeof(tag), "_a%g", alpha);
  const auto dot = path.rfind('.');
  if (dot == std::string::npos) return path + tag;
  return path.substr(0, dot) + tag + path.substr(dot);
}

}  // namespace

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  ParseResult parsed;
  try {
    parsed = parse(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (parsed.show_help) {
    std::cout << parsed.help_text;
    return 0;
  }

  const ParsedInvocation& inv = parsed.invocation;
  const bool multi = inv.alphas.size() > 1;
  try {
    for (double alpha : inv.alphas) {
      experiments::ScenarioConfig cfg = inv.config;
      cfg.alpha = alpha;
      const auto records = experiments::run_scenario(cfg);
      const auto aggregates = experiments::aggregate(records);
      const std::string path = alpha_tagged_path(inv.out_path, alpha, multi);
      experiments::emit_csv(aggregates, path, inv.normalize);
      int failures = 0;
      for (const auto& rec : records)
        if (!rec.error.empty()) ++failures;
      std::cout << inv.subcommand << " alpha=" << alpha << ": "
                << aggregates.size() << " sweep points, " << records.size()
                << " records (" << failures << " failed) -> " << path << "\n";
      if (inv.verbosity > 0) {
        for (const auto& agg : aggregates)
          std::cout << "  " << agg.sweep_value << ": mean=" << agg.mean
                    << " max=" << agg.max << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace entsim::cli
