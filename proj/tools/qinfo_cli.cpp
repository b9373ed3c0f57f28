// qinfo command-line front-end: state I/O, named example states, random
// state generation, and analysis reports.
//
// Exit codes: 0 success, 1 validation or applicability failure, 2 usage or
// parse failure. Results go to stdout, diagnostics to stderr.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "qinfo/qinfo.hpp"

namespace {

using qinfo::io::StateDocument;
using nlohmann::json;

constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw qinfo::io::parse_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// A state argument is either a file path or a built-in name such as
// bell-phi-plus or max-mixed-4.
StateDocument load_state(const std::string& arg) {
  if (std::filesystem::exists(arg)) return qinfo::io::parse_state_document(read_file(arg));
  try {
    StateDocument doc;
    doc.kind = StateDocument::Kind::named;
    doc.name = arg;
    qinfo::io::to_density(doc);  // validates the name
    doc.label = arg;
    return doc;
  } catch (const std::invalid_argument&) {
    throw qinfo::io::parse_error("no such file or built-in state: " + arg);
  }
}

qinfo::ComplexMatrix load_operator(const std::string& arg) {
  if (arg == "sigma-x") return qinfo::pauli_x();
  if (arg == "sigma-y") return qinfo::pauli_y();
  if (arg == "sigma-z") return qinfo::pauli_z();
  return qinfo::io::parse_operator_document(read_file(arg)).op;
}

void emit(const qinfo::report::ReportDocument& report, bool as_json) {
  if (as_json)
    std::cout << report.to_json().dump(2) << "\n";
  else
    std::cout << report.to_table();
}

int finish(const qinfo::report::ReportDocument& report, bool as_json) {
  emit(report, as_json);
  return report.all_ok() ? 0 : kExitValidation;
}

struct CommonArgs {
  std::string state;
  bool as_json = false;
  std::string dims;
  double tolerance = 1e-8;
  std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_state = true) {
  if (needs_state)
    cmd->add_option("state", args.state, "state file or built-in name")->required();
  cmd->add_flag("--json", args.as_json, "machine-readable output");
  cmd->add_option("--dims", args.dims, "bipartite split, e.g. 2x2");
  cmd->add_option("--tol", args.tolerance, "tolerance for cutoff-style checks");
  cmd->add_option("--seed", args.seed, "random seed");
}

std::optional<std::pair<int, int>> parse_dims(const std::string& dims) {
  if (dims.empty()) return std::nullopt;
  auto x = dims.find('x');
  if (x == std::string::npos)
    throw CLI::ValidationError("--dims", "expected the form AxB, e.g. 2x2");
  try {
    int a = std::stoi(dims.substr(0, x));
    int b = std::stoi(dims.substr(x + 1));
    if (a < 1 || b < 1) throw std::invalid_argument("");
    return std::make_pair(a, b);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--dims", "expected the form AxB, e.g. 2x2");
  }
}

qinfo::report::ReportOptions make_options(const CommonArgs& args) {
  qinfo::report::ReportOptions opts;
  opts.dims = parse_dims(args.dims);
  opts.schmidt_cutoff = args.tolerance;
  opts.uncorrelated_tol = args.tolerance;
  opts.seed = args.seed;
  return opts;
}

int cmd_validate(const CommonArgs& args) {
  StateDocument doc = load_state(args.state);
  qinfo::report::ReportOptions opts = make_options(args);
  qinfo::DensityMatrix rho = qinfo::report::detail::density_view(doc, opts);
  if (args.as_json) {
    json j;
    j["valid"] = true;
    j["dim"] = rho.dim();
    j["pure_document"] = qinfo::io::to_pure(doc).has_value();
    if (rho.split()) j["dims"] = json::array({rho.split()->first, rho.split()->second});
    if (!doc.label.empty()) j["label"] = doc.label;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "valid " << (qinfo::io::to_pure(doc) ? "pure" : "mixed") << " state, dim "
              << rho.dim();
    if (rho.split())
      std::cout << ", split " << rho.split()->first << "x" << rho.split()->second;
    std::cout << "\n";
  }
  return 0;
}

int cmd_report(const CommonArgs& args, const std::vector<std::string>& requests,
               qinfo::report::ReportOptions opts) {
  StateDocument doc = load_state(args.state);
  if (requests.empty())
    throw CLI::ValidationError("--request", "at least one quantity is required");
  return finish(qinfo::report::run_report(doc, requests, opts), args.as_json);
}

int cmd_analyze(const CommonArgs& args) {
  StateDocument doc = load_state(args.state);
  qinfo::report::ReportOptions opts = make_options(args);
  qinfo::DensityMatrix rho = qinfo::report::detail::density_view(doc, opts);
  std::vector<std::string> requests = {"purity", "von-neumann-entropy", "spectrum"};
  if (rho.dim() == 2) requests.push_back("bloch");
  requests.push_back("l1-coherence");
  if (qinfo::io::to_pure(doc)) requests.push_back("ipr");
  if (rho.split()) {
    requests.push_back("negativity");
    requests.push_back("ppt");
    requests.push_back("uncorrelated");
    if (*rho.split() == std::pair<int, int>(2, 2)) requests.push_back("correlator-zz");
    if (qinfo::io::to_pure(doc)) {
      requests.push_back("schmidt-number");
      requests.push_back("entanglement-entropy");
    }
  }
  return finish(qinfo::report::run_report(doc, requests, opts), args.as_json);
}

int cmd_bloch(const CommonArgs& args) {
  StateDocument doc = load_state(args.state);
  return finish(
      qinfo::report::run_report(doc, {"bloch", "purity", "spectrum"}, make_options(args)),
      args.as_json);
}

int cmd_schmidt(const CommonArgs& args) {
  StateDocument doc = load_state(args.state);
  return finish(qinfo::report::run_report(
                    doc, {"schmidt", "schmidt-number", "entanglement-entropy"},
                    make_options(args)),
                args.as_json);
}

int cmd_entangle(const CommonArgs& args, bool with_er, int er_budget) {
  StateDocument doc = load_state(args.state);
  qinfo::report::ReportOptions opts = make_options(args);
  opts.er_budget = er_budget;
  qinfo::DensityMatrix rho = qinfo::report::detail::density_view(doc, opts);
  std::vector<std::string> requests;
  if (rho.split()) {
    requests.push_back("negativity");
    requests.push_back("ppt");
  }
  if (rho.dim() == 4 && (!rho.split() || *rho.split() == std::pair<int, int>(2, 2))) {
    requests.push_back("concurrence");
    requests.push_back("entanglement-of-formation");
  }
  if (qinfo::io::to_pure(doc) && rho.split()) requests.push_back("entanglement-entropy");
  if (with_er) requests.push_back("er-upper-bound");
  if (requests.empty())
    throw std::invalid_argument(
        "entangle: no applicable entanglement quantity; pass --dims for bipartite measures");
  return finish(qinfo::report::run_report(doc, requests, opts), args.as_json);
}

int cmd_witness_chsh(const CommonArgs& args, const std::vector<double>& a1,
                     const std::vector<double>& a2, const std::vector<double>& b1,
                     const std::vector<double>& b2, const std::string& export_path) {
  StateDocument doc = load_state(args.state);
  qinfo::report::ReportOptions opts = make_options(args);
  auto assign = [](std::array<double, 3>& dst, const std::vector<double>& src) {
    if (!src.empty()) std::copy(src.begin(), src.end(), dst.begin());
  };
  assign(opts.a1, a1);
  assign(opts.a2, a2);
  assign(opts.b1, b1);
  assign(opts.b2, b2);
  if (!export_path.empty()) {
    qinfo::LinearWitness witness =
        qinfo::chsh_witness(qinfo::MeasurementAxis(opts.a1[0], opts.a1[1], opts.a1[2]),
                            qinfo::MeasurementAxis(opts.a2[0], opts.a2[1], opts.a2[2]),
                            qinfo::MeasurementAxis(opts.b1[0], opts.b1[1], opts.b1[2]),
                            qinfo::MeasurementAxis(opts.b2[0], opts.b2[1], opts.b2[2]));
    std::ofstream out(export_path);
    if (!out) throw std::invalid_argument("cannot write witness file: " + export_path);
    out << qinfo::io::serialize_operator(witness.op, witness.description);
  }
  return finish(qinfo::report::run_report(doc, {"chsh"}, opts), args.as_json);
}

int cmd_measure(const CommonArgs& args, const std::string& pvm_path,
                const std::string& kraus_path, const std::string& povm_path,
                const std::string& observable) {
  StateDocument doc = load_state(args.state);
  qinfo::report::ReportOptions opts = make_options(args);
  qinfo::DensityMatrix rho = qinfo::report::detail::density_view(doc, opts);

  int sources = (!pvm_path.empty()) + (!kraus_path.empty()) + (!povm_path.empty()) +
                (!observable.empty());
  if (sources != 1)
    throw CLI::ValidationError("measure",
                               "exactly one of --pvm, --kraus, --povm, --observable");

  std::vector<double> eigenvalues;  // only for --observable
  std::optional<qinfo::KrausSet> kraus;
  std::optional<qinfo::POVMSet> povm;
  if (!observable.empty()) {
    auto [pvm, eps] = qinfo::observable_to_pvm(load_operator(observable));
    eigenvalues = eps;
    kraus = qinfo::kraus_from_pvm(pvm);
  } else if (!povm_path.empty()) {
    auto set = qinfo::io::parse_operator_set_document(read_file(povm_path));
    if (set.kind != qinfo::io::OperatorSetDocument::Kind::povm)
      throw std::invalid_argument("--povm file must have kind \"povm\"");
    povm = qinfo::POVMSet(set.operators, set.labels);
  } else {
    const std::string& path = pvm_path.empty() ? kraus_path : pvm_path;
    auto set = qinfo::io::parse_operator_set_document(read_file(path));
    kraus = qinfo::io::to_kraus(set);
  }

  json j;
  j["label"] = doc.label;
  std::ostringstream table;
  if (povm) {
    // POVMs determine probabilities only.
    std::vector<double> probabilities = qinfo::povm_probabilities(rho, *povm);
    j["outcomes"] = json::array();
    for (std::size_t m = 0; m < probabilities.size(); ++m) {
      j["outcomes"].push_back({{"label", povm->labels()[m]},
                               {"probability", probabilities[m]}});
      table << "  outcome " << povm->labels()[m] << ": p = " << std::setprecision(12)
            << probabilities[m] << "\n";
    }
  } else {
    qinfo::GeneralMeasurementResult result = qinfo::measure_general(rho, *kraus);
    j["outcomes"] = json::array();
    for (std::size_t m = 0; m < result.outcomes.size(); ++m) {
      const auto& outcome = result.outcomes[m];
      json entry;
      entry["label"] = outcome.label;
      entry["probability"] = outcome.probability;
      if (!eigenvalues.empty()) entry["eigenvalue"] = eigenvalues[m];
      if (outcome.post_state)
        entry["post_state"] = qinfo::io::detail::dump_matrix(outcome.post_state->matrix());
      j["outcomes"].push_back(std::move(entry));
      table << "  outcome " << outcome.label << ": p = " << std::setprecision(12)
            << outcome.probability;
      if (!eigenvalues.empty()) table << ", eigenvalue " << eigenvalues[m];
      if (!outcome.post_state) table << " (no post-state: probability below threshold)";
      table << "\n";
    }
    j["average_state"] = qinfo::io::detail::dump_matrix(result.average.matrix());
    table << "  average state purity = " << std::setprecision(12)
          << qinfo::purity(result.average) << "\n";
  }
  if (args.as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << table.str();
  return 0;
}

int cmd_coherence(const CommonArgs& args, const std::string& basis_path) {
  StateDocument doc = load_state(args.state);
  qinfo::report::ReportOptions opts = make_options(args);
  if (!basis_path.empty()) opts.basis = load_operator(basis_path);
  return finish(qinfo::report::run_report(
                    doc, {"l1-coherence", "relative-entropy-coherence"}, opts),
                args.as_json);
}

int cmd_correlate(const CommonArgs& args, const std::string& op_a_arg,
                  const std::string& op_b_arg) {
  StateDocument doc = load_state(args.state);
  qinfo::report::ReportOptions opts = make_options(args);
  qinfo::DensityMatrix rho =
      qinfo::report::detail::split_density_view(doc, opts, "correlate");
  qinfo::ComplexMatrix op_a = op_a_arg.empty() ? qinfo::pauli_z() : load_operator(op_a_arg);
  qinfo::ComplexMatrix op_b = op_b_arg.empty() ? qinfo::pauli_z() : load_operator(op_b_arg);
  qinfo::CorrelatorResult corr = qinfo::two_point_correlator(rho, op_a, op_b);
  bool uncorrelated = qinfo::is_uncorrelated(rho, args.tolerance);
  if (args.as_json) {
    json j;
    j["plain"] = json::array({corr.plain.real(), corr.plain.imag()});
    j["connected"] = json::array({corr.connected.real(), corr.connected.imag()});
    j["uncorrelated"] = uncorrelated;
    j["tolerance"] = args.tolerance;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << std::setprecision(12) << "  plain <O_A O_B> = " << corr.plain
              << "\n  connected = " << corr.connected
              << "\n  uncorrelated (tol " << args.tolerance << "): "
              << (uncorrelated ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_random(const std::string& kind, int dim, int rank, std::uint64_t seed,
               const std::string& dims, const std::string& label,
               const std::string& out_path) {
  qinfo::Rng rng(seed);
  StateDocument doc;
  doc.label = label;
  doc.dims = parse_dims(dims);
  if (doc.dims && doc.dims->first * doc.dims->second != dim)
    throw CLI::ValidationError("--dims", "must factor --dim");
  if (kind == "pure") {
    doc.kind = StateDocument::Kind::pure;
    doc.pure_payload = qinfo::random_pure_state(dim, rng).amplitudes();
  } else if (kind == "mixed") {
    doc.kind = StateDocument::Kind::matrix;
    doc.matrix_payload =
        qinfo::random_density_matrix(dim, rank > 0 ? rank : dim, rng).matrix();
  } else {
    throw CLI::ValidationError("--kind", "must be pure or mixed");
  }
  std::string text = qinfo::io::serialize(doc);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write state file: " + out_path);
    out << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum-information numerics: states, measurement, entropy, entanglement"};
  app.require_subcommand(1);

  CommonArgs validate_args;
  add_common(app.add_subcommand("validate", "parse and validate a state document"),
             validate_args);

  CommonArgs analyze_args;
  add_common(app.add_subcommand("analyze", "standard scalar diagnostics of a state"),
             analyze_args);

  CommonArgs bloch_args;
  add_common(app.add_subcommand("bloch", "Bloch vector of a single-qubit state"), bloch_args);

  CommonArgs schmidt_args;
  add_common(app.add_subcommand("schmidt", "Schmidt data of a bipartite pure state"),
             schmidt_args);

  CommonArgs entangle_args;
  bool with_er = false;
  int er_budget = 4000;
  {
    CLI::App* cmd = app.add_subcommand("entangle", "entanglement measures of a state");
    add_common(cmd, entangle_args);
    cmd->add_flag("--er", with_er, "include the relative-entropy-of-entanglement upper bound");
    cmd->add_option("--er-budget", er_budget, "refinement iterations for the upper bound");
  }

  CommonArgs witness_args;
  std::vector<double> axis_a1, axis_a2, axis_b1, axis_b2;
  std::string witness_export;
  {
    CLI::App* cmd = app.add_subcommand(
        "witness-chsh", "CHSH witness value; defaults to the axes that violate on the singlet");
    add_common(cmd, witness_args);
    cmd->add_option("--a1", axis_a1, "first axis on A (three numbers)")->expected(3);
    cmd->add_option("--a2", axis_a2, "second axis on A")->expected(3);
    cmd->add_option("--b1", axis_b1, "first axis on B")->expected(3);
    cmd->add_option("--b2", axis_b2, "second axis on B")->expected(3);
    cmd->add_option("--export", witness_export, "write the witness operator to a file");
  }

  CommonArgs measure_args;
  std::string pvm_path, kraus_path, povm_path, observable;
  {
    CLI::App* cmd = app.add_subcommand("measure", "measurement statistics and post-states");
    add_common(cmd, measure_args);
    cmd->add_option("--pvm", pvm_path, "projector set file");
    cmd->add_option("--kraus", kraus_path, "Kraus operator set file");
    cmd->add_option("--povm", povm_path, "POVM effect set file (probabilities only)");
    cmd->add_option("--observable", observable,
                    "Hermitian operator file, or sigma-x / sigma-y / sigma-z");
  }

  CommonArgs coherence_args;
  std::string basis_path;
  {
    CLI::App* cmd = app.add_subcommand("coherence", "basis-dependent coherence quantifiers");
    add_common(cmd, coherence_args);
    cmd->add_option("--basis", basis_path, "unitary reference basis (operator file)");
  }

  CommonArgs correlate_args;
  std::string op_a_arg, op_b_arg;
  {
    CLI::App* cmd = app.add_subcommand("correlate", "two-point correlators across the split");
    add_common(cmd, correlate_args);
    cmd->add_option("--op-a", op_a_arg, "operator on subsystem A (default sigma-z)");
    cmd->add_option("--op-b", op_b_arg, "operator on subsystem B (default sigma-z)");
  }

  std::string random_kind = "pure", random_dims, random_label, random_out;
  int random_dim = 2, random_rank = 0;
  std::uint64_t random_seed = 1;
  {
    CLI::App* cmd = app.add_subcommand("random", "sample a random state document");
    cmd->add_option("--kind", random_kind, "pure or mixed")->required();
    cmd->add_option("--dim", random_dim, "Hilbert-space dimension")->required();
    cmd->add_option("--rank", random_rank, "rank of a mixed state (default: dim)");
    cmd->add_option("--seed", random_seed, "random seed");
    cmd->add_option("--dims", random_dims, "bipartite split to record, e.g. 2x2");
    cmd->add_option("--label", random_label, "label to record");
    cmd->add_option("-o,--out", random_out, "output file (default stdout)");
  }

  CommonArgs report_args;
  std::vector<std::string> requests;
  int report_er_budget = 4000;
  {
    CLI::App* cmd = app.add_subcommand("report", "compute a requested list of quantities");
    add_common(cmd, report_args);
    std::string quantity_help = "comma-separated quantities:";
    for (const auto& name : qinfo::report::known_quantities()) quantity_help += " " + name;
    cmd->add_option("--request", requests, quantity_help)->required()->delimiter(',');
    cmd->add_option("--er-budget", report_er_budget, "budget for er-upper-bound");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("validate")) return cmd_validate(validate_args);
    if (app.got_subcommand("analyze")) return cmd_analyze(analyze_args);
    if (app.got_subcommand("bloch")) return cmd_bloch(bloch_args);
    if (app.got_subcommand("schmidt")) return cmd_schmidt(schmidt_args);
    if (app.got_subcommand("entangle")) return cmd_entangle(entangle_args, with_er, er_budget);
    if (app.got_subcommand("witness-chsh"))
      return cmd_witness_chsh(witness_args, axis_a1, axis_a2, axis_b1, axis_b2,
                              witness_export);
    if (app.got_subcommand("measure"))
      return cmd_measure(measure_args, pvm_path, kraus_path, povm_path, observable);
    if (app.got_subcommand("coherence")) return cmd_coherence(coherence_args, basis_path);
    if (app.got_subcommand("correlate"))
      return cmd_correlate(correlate_args, op_a_arg, op_b_arg);
    if (app.got_subcommand("random"))
      return cmd_random(random_kind, random_dim, random_rank, random_seed, random_dims,
                        random_label, random_out);
    if (app.got_subcommand("report")) {
      qinfo::report::ReportOptions opts = make_options(report_args);
      opts.er_budget = report_er_budget;
      return cmd_report(report_args, requests, opts);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qinfo::io::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
