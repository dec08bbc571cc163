#include "pstforge/cli.hpp"

#include "pstforge/dynamics.hpp"
#include "pstforge/errors.hpp"
#include "pstforge/hamiltonian.hpp"
#include "pstforge/io.hpp"
#include "pstforge/solver.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pstforge {

namespace {

using io::Json;

constexpr std::uint64_t kDefaultSeed = 42;

struct Options {
  std::string input;
  std::string output;
  std::optional<double> tol;
  std::uint64_t seed = kDefaultSeed;
  double gamma = 1.0;
  std::vector<int> targets;
  std::string preset;
  int n = 0;
  int samples = 500;
  int periods = 1;
  int site = 1;
  int max_starts = 100;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json read_json(const std::string& path) { return io::parse_json(read_file(path)); }

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidInput("cannot open output file '" + path + "'");
  file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Metadata for CSV outputs goes to a sidecar next to the data file, or to stderr.
void emit_sidecar(const Options& opt, const Json& metadata, std::ostream& err) {
  if (opt.output.empty()) {
    err << dump(metadata);
  } else {
    emit(opt.output + ".meta.json", dump(metadata), err);
  }
}

Json base_metadata(const std::string& command, const Options& opt) {
  Json m;
  m["command"] = command;
  m["seed"] = opt.seed;
  if (!opt.input.empty()) m["input"] = opt.input;
  return m;
}

int cmd_synth(const Options& opt, std::ostream& out) {
  const Json doc = read_json(opt.input);
  const auto p = io::permutation_from_json(doc.at("permutation"));
  const auto a = io::assignment_from_json(doc.at("assignment"));
  const double tol = opt.tol.value_or(1e-10);
  const auto h = synthesize(p, a);
  const auto report = verify_pst(h, p, tol);

  Json result;
  result["permutation"] = io::to_json(p);
  result["assignment"] = io::to_json(a);
  result["hamiltonian"] = io::to_json(h);
  result["verification"] = io::to_json(report);
  Json meta = base_metadata("synth", opt);
  meta["tolerance"] = tol;
  result["metadata"] = meta;
  emit(opt.output, dump(result), out);
  return report.pass ? kExitOk : kExitNoSolution;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  const Json doc = read_json(opt.input);
  if (!doc.contains("hamiltonian") || !doc.contains("permutation")) {
    throw InvalidInput("verify input needs \"hamiltonian\" and \"permutation\" objects");
  }
  const auto h = io::hamiltonian_from_json(doc.at("hamiltonian"));
  const auto p = io::permutation_from_json(doc.at("permutation"));
  const double tol = opt.tol.value_or(1e-10);
  const auto report = verify_pst(h, p, tol);
  Json result = io::to_json(report);
  Json meta = base_metadata("verify", opt);
  meta["n"] = h.size();
  meta["tau"] = h.tau;
  result["metadata"] = meta;
  emit(opt.output, dump(result), out);
  return report.pass ? kExitOk : kExitNoSolution;
}

int cmd_solve_nn4(const Options& opt, std::ostream& out) {
  std::vector<int> targets = opt.targets;
  double tau = 1.0;
  if (!opt.input.empty()) {
    const Json doc = read_json(opt.input);
    targets = doc.at("spectrum").get<std::vector<int>>();
    tau = doc.value("tau", 1.0);
  }
  if (targets.size() != 4) throw InvalidInput("solve-nn4 needs four eigenphases (multiples of pi)");
  const auto s = Nn4Spectrum::from_multiples_of_pi(targets[0], targets[1], targets[2], targets[3]);
  const double tol = opt.tol.value_or(1e-10);

  Json meta = base_metadata("solve-nn4", opt);
  meta["spectrum_over_pi"] = targets;
  meta["tau"] = tau;
  meta["tolerance"] = tol;

  Json result;
  result["overlap"] = check_overlap(s);
  try {
    const auto amp = solve_nn4(s);
    const auto h = nn4_hamiltonian(s, amp, tau);
    const auto chain = nn4_chain_parameters(h);
    const auto report = verify_pst(h, antidiagonal_permutation(4), tol);
    result["status"] = "solved";
    result["amplitudes"] = io::to_json(amp);
    result["constraint_residual"] = nn4_constraint_residual(s, amp);
    result["chain"] = {{"E1", chain.e1}, {"E2", chain.e2}, {"g1", chain.g1}, {"g2", chain.g2}};
    result["nearest_neighbour"] = is_nearest_neighbour(h, 1e-12);
    result["hamiltonian"] = io::to_json(h);
    result["verification"] = io::to_json(report);
    result["metadata"] = meta;
    emit(opt.output, dump(result), out);
    return report.pass ? kExitOk : kExitNoSolution;
  } catch (const NoSolution& e) {
    result["status"] = to_string(e.reason());
    result["message"] = e.what();
    result["metadata"] = meta;
    emit(opt.output, dump(result), out);
    return kExitNoSolution;
  }
}

std::vector<PowerLawParams> guesses_from_json(const Json& j) {
  std::vector<PowerLawParams> out;
  for (const auto& g : j) {
    PowerLawParams p;
    if (g.is_array()) {
      const auto v = g.get<std::vector<double>>();
      if (v.size() != 6) throw InvalidInput("a guess array must hold E1,E2,E3,r1,r2,r3");
      p.energies = {v[0], v[1], v[2]};
      p.distances = {v[3], v[4], v[5]};
    } else {
      p.energies = g.at("energies").get<std::array<double, 3>>();
      p.distances = g.at("distances").get<std::array<double, 3>>();
    }
    out.push_back(p);
  }
  return out;
}

int cmd_solve_powerlaw(const Options& opt, CLI::App& sub, std::ostream& out, std::ostream& err) {
  double gamma = opt.gamma;
  std::vector<int> targets = opt.targets;
  std::vector<PowerLawParams> guesses;
  SolverOptions so;
  so.max_starts = opt.max_starts;
  so.seed = opt.seed;
  if (!opt.input.empty()) {
    const Json doc = read_json(opt.input);
    try {
      if (doc.contains("gamma") && sub.count("--gamma") == 0) gamma = doc.at("gamma").get<double>();
      if (doc.contains("targets") && sub.count("--targets") == 0) targets = doc.at("targets").get<std::vector<int>>();
      if (doc.contains("guesses")) guesses = guesses_from_json(doc.at("guesses"));
      if (doc.contains("max_starts") && sub.count("--max-starts") == 0) so.max_starts = doc.at("max_starts").get<int>();
      if (doc.contains("seed") && sub.count("--seed") == 0) so.seed = doc.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
      throw InvalidInput(std::string("problem file: ") + e.what());
    }
  }
  if (targets.size() != 6) throw InvalidInput("solve-powerlaw needs six target eigenphases (multiples of pi)");
  if (opt.tol) so.tolerance = *opt.tol;
  std::array<int, 6> t{};
  std::copy(targets.begin(), targets.end(), t.begin());

  const auto design = solve_power_law(gamma, t, guesses, so);
  const auto report = verify_pst(wire_hamiltonian(design), antidiagonal_permutation(6), 5e-3);

  std::ostringstream csv;
  io::write_design_csv(csv, design);
  emit(opt.output, csv.str(), out);

  Json meta;
  meta["command"] = "solve-powerlaw";
  meta["gamma"] = gamma;
  meta["targets"] = targets;
  meta["guesses"] = guesses.size();
  meta["max_starts"] = so.max_starts;
  meta["seed"] = so.seed;
  meta["tolerance"] = so.tolerance;
  meta["status"] = design.converged ? "converged" : "no_solution";
  meta["residual"] = design.residual;
  meta["start_index"] = design.start_index;
  meta["starts_evaluated"] = design.starts_evaluated;
  meta["pst_residual_max"] = report.residual_max;
  emit_sidecar(opt, meta, err);
  return design.converged ? kExitOk : kExitNoSolution;
}

int cmd_classify4(const Options& opt, std::ostream& out) {
  std::vector<SitePermutation> perms;
  if (opt.input.empty()) {
    perms = enumerate_transfer_permutations(4);
  } else {
    perms.push_back(io::permutation_from_json(read_json(opt.input)));
  }
  Json verdicts = Json::array();
  for (const auto& p : perms) {
    Json cycles = Json::array();
    for (const auto& c : cycle_decompose(p)) cycles.push_back(c.sites);
    verdicts.push_back({{"permutation", io::to_json(p)},
                        {"cycles", cycles},
                        {"verdict", to_string(classify_4site_permutation(p))}});
  }
  Json result;
  result["classifications"] = verdicts;
  result["metadata"] = base_metadata("classify4", opt);
  emit(opt.output, dump(result), out);
  return kExitOk;
}

int cmd_nogo(const Options& opt, std::ostream& out) {
  const auto cert = no_go_certificate(opt.n);
  Json result = io::to_json(cert);
  Json meta = base_metadata("nogo", opt);
  meta["rank_relative_tolerance"] = kRankRelativeTol;
  result["metadata"] = meta;
  emit(opt.output, dump(result), out);
  return cert.holds() ? kExitOk : kExitNoSolution;
}

int cmd_simulate(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.samples < 1) throw InvalidInput("--samples must be at least 1");
  Json meta;
  meta["command"] = "simulate";
  PstHamiltonian h;
  std::optional<SitePermutation> target;
  if (!opt.preset.empty()) {
    const auto preset = parse_preset(opt.preset);
    const int n = opt.n == 0 ? kPresetSites : opt.n;
    if (n != kPresetSites) throw InvalidInput("spectrum presets are defined for n = 11");
    const auto a = preset_assignment(preset, 1.0);
    target = one_cycle_permutation(n);
    h = synthesize(*target, a);
    meta["preset"] = std::string(to_string(preset));
    meta["shifts"] = a.shifts;
    meta["tau"] = a.tau;
    meta["n"] = n;
    meta["index_overflow"] = "rule indices reduced modulo 11; first assignment to an index wins";
  } else if (!opt.input.empty()) {
    const Json doc = read_json(opt.input);
    if (doc.contains("hamiltonian")) {
      h = io::hamiltonian_from_json(doc.at("hamiltonian"));
    } else {
      h = synthesize(io::permutation_from_json(doc.at("permutation")), io::assignment_from_json(doc.at("assignment")));
    }
    if (doc.contains("permutation")) target = io::permutation_from_json(doc.at("permutation"));
    meta["input"] = opt.input;
    meta["tau"] = h.tau;
    meta["n"] = h.size();
  } else {
    throw InvalidInput("simulate needs --preset or --input");
  }
  const auto trace = occupation_trace(h, opt.site, opt.periods, opt.samples);
  std::ostringstream csv;
  io::write_trace_csv(csv, trace);
  emit(opt.output, csv.str(), out);

  meta["initial_site"] = opt.site;
  meta["periods"] = opt.periods;
  meta["samples_per_period"] = opt.samples;
  meta["rows"] = trace.steps.size();
  meta["seed"] = opt.seed;
  if (target) meta["pst_residual_max"] = verify_pst(h, *target, 1.0).residual_max;
  emit_sidecar(opt, meta, err);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perfect state transfer Hamiltonian synthesis, solving and simulation"};
  app.require_subcommand(1);
  Options opt;

  const auto add_io = [&](CLI::App* sub, bool input_required) {
    auto* in = sub->add_option("--input", opt.input, "input JSON file");
    if (input_required) in->required();
    sub->add_option("--output", opt.output, "output file (default: stdout)");
    sub->add_option("--tol", opt.tol, "tolerance override");
    sub->add_option("--seed", opt.seed, "random seed")->capture_default_str();
  };

  auto* synth = app.add_subcommand("synth", "build H from a permutation and a spectral assignment");
  add_io(synth, true);
  auto* verify = app.add_subcommand("verify", "check exp(iH tau) against a permutation");
  add_io(verify, true);
  auto* nn4 = app.add_subcommand("solve-nn4", "solve the 4-site nearest-neighbour chain for a spectrum");
  add_io(nn4, false);
  nn4->add_option("--targets", opt.targets, "eigenphases +1,+2,-1,-2 in units of pi")->delimiter(',');
  auto* power = app.add_subcommand("solve-powerlaw", "design the 6-site 1/r^gamma wire");
  add_io(power, false);
  power->add_option("--gamma", opt.gamma, "coupling exponent")->capture_default_str();
  power->add_option("--targets", opt.targets, "six eigenphases in units of pi")->delimiter(',');
  power->add_option("--max-starts", opt.max_starts, "multistart budget")->capture_default_str();
  auto* classify = app.add_subcommand("classify4", "nearest-neighbour feasibility of 4-site permutations");
  add_io(classify, false);
  auto* nogo = app.add_subcommand("nogo", "certificate that one-cycle classes contain no chain");
  add_io(nogo, false);
  nogo->add_option("--n", opt.n, "number of sites")->required();
  auto* simulate = app.add_subcommand("simulate", "occupation probabilities and tangle over time");
  add_io(simulate, false);
  simulate->add_option("--preset", opt.preset, "descending|interrupted|symmetric_dip|alternating");
  simulate->add_option("--n", opt.n, "number of sites (presets: 11)");
  simulate->add_option("--samples", opt.samples, "samples per period")->capture_default_str();
  simulate->add_option("--periods", opt.periods, "number of periods")->capture_default_str();
  simulate->add_option("--site", opt.site, "initially excited site")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*synth) return cmd_synth(opt, out);
    if (*verify) return cmd_verify(opt, out);
    if (*nn4) return cmd_solve_nn4(opt, out);
    if (*power) return cmd_solve_powerlaw(opt, *power, out, err);
    if (*classify) return cmd_classify4(opt, out);
    if (*nogo) return cmd_nogo(opt, out);
    if (*simulate) return cmd_simulate(opt, out, err);
  } catch (const io::ParseError& e) {
    err << "error: malformed JSON at line " << e.line() << ", column " << e.column() << ": " << e.what() << '\n';
    return kExitInputError;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const NoSolution& e) {
    err << "no solution (" << to_string(e.reason()) << "): " << e.what() << '\n';
    return kExitNoSolution;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace pstforge
