#pragma once

#include <array>
#include <functional>
#include <map>
#include <sstream>

#include "qinfo/bloch.hpp"
#include "qinfo/coherence.hpp"
#include "qinfo/entanglement.hpp"
#include "qinfo/state_io.hpp"
#include "qinfo/witness.hpp"

namespace qinfo::report {

using nlohmann::json;

struct ReportOptions {
  std::optional<std::pair<int, int>> dims;  // overrides the document split
  double schmidt_cutoff = 1e-8;
  double uncorrelated_tol = 1e-8;
  int er_budget = 4000;
  std::uint64_t seed = 1;
  std::optional<ComplexMatrix> basis;  // coherence / IPR basis; default computational
  // CHSH axes; the defaults reproduce the singlet violation 2(1 - sqrt(2)).
  std::array<double, 3> a1{0, 0, 1};
  std::array<double, 3> a2{1, 0, 0};
  std::array<double, 3> b1{-1.0 / std::sqrt(2.0), 0, -1.0 / std::sqrt(2.0)};
  std::array<double, 3> b2{1.0 / std::sqrt(2.0), 0, -1.0 / std::sqrt(2.0)};
};

struct ReportItem {
  std::string quantity;
  bool ok = false;
  json values;        // numeric results plus the bases/axes/tolerances used
  std::string error;  // set when !ok
};

struct ReportDocument {
  std::string label;
  std::vector<ReportItem> items;

  bool all_ok() const {
    for (const auto& item : items)
      if (!item.ok) return false;
    return true;
  }

  json to_json() const {
    json j;
    j["label"] = label;
    j["quantities"] = json::array();
    for (const auto& item : items) {
      json entry;
      entry["quantity"] = item.quantity;
      entry["ok"] = item.ok;
      if (item.ok)
        entry["values"] = item.values;
      else
        entry["error"] = item.error;
      j["quantities"].push_back(std::move(entry));
    }
    return j;
  }

  std::string to_table() const {
    std::ostringstream out;
    if (!label.empty()) out << "state: " << label << "\n";
    for (const auto& item : items) {
      out << "  " << item.quantity << ": ";
      if (!item.ok) {
        out << "error: " << item.error << "\n";
        continue;
      }
      bool first = true;
      for (const auto& [key, value] : item.values.items()) {
        if (!first) out << ", ";
        first = false;
        out << key << " = " << value.dump();
      }
      out << "\n";
    }
    return out.str();
  }
};

namespace detail {

inline std::pair<int, int> require_dims(const io::StateDocument& doc, const ReportOptions& opts,
                                        const char* what) {
  if (opts.dims) return *opts.dims;
  if (doc.dims) return *doc.dims;
  if (doc.kind == io::StateDocument::Kind::named) {
    io::StateDocument resolved = io::resolve_named_state(doc.name);
    if (resolved.dims) return *resolved.dims;
  }
  throw std::invalid_argument(std::string(what) +
                              ": requires a bipartite split (dims missing)");
}

inline DensityMatrix density_view(const io::StateDocument& doc, const ReportOptions& opts) {
  DensityMatrix rho = io::to_density(doc);
  if (opts.dims) return rho.with_split(opts.dims->first, opts.dims->second);
  return rho;
}

inline PureState pure_view(const io::StateDocument& doc, const char* what) {
  auto psi = io::to_pure(doc);
  if (!psi)
    throw std::invalid_argument(std::string(what) + ": requires a pure state document");
  return *psi;
}

inline DensityMatrix split_density_view(const io::StateDocument& doc,
                                        const ReportOptions& opts, const char* what) {
  auto [da, db] = require_dims(doc, opts, what);
  return io::to_density(doc).with_split(da, db);
}

}  // namespace detail

inline const std::vector<std::string>& known_quantities() {
  static const std::vector<std::string> names = {
      "purity",           "von-neumann-entropy",
      "spectrum",         "bloch",
      "ipr",              "schmidt",
      "schmidt-number",   "entanglement-entropy",
      "concurrence",      "entanglement-of-formation",
      "negativity",       "ppt",
      "er-upper-bound",   "l1-coherence",
      "relative-entropy-coherence",
      "correlator-zz",    "uncorrelated",
      "chsh"};
  return names;
}

// Computes one named quantity; throws when the request does not apply to the
// document. Results carry the bases, axes, and tolerances they were
// computed with, since several quantities are meaningless without them.
inline json compute_quantity(const std::string& quantity, const io::StateDocument& doc,
                             const ReportOptions& opts) {
  json values;
  if (quantity == "purity") {
    values["value"] = purity(detail::density_view(doc, opts));
  } else if (quantity == "von-neumann-entropy") {
    values["value"] = von_neumann_entropy(detail::density_view(doc, opts));
  } else if (quantity == "spectrum") {
    HermitianSpectrum spec = spectrum(detail::density_view(doc, opts));
    values["eigenvalues"] = std::vector<double>(
        spec.eigenvalues.data(), spec.eigenvalues.data() + spec.eigenvalues.size());
  } else if (quantity == "bloch") {
    BlochVector r = to_bloch(detail::density_view(doc, opts));
    values["x"] = r.x;
    values["y"] = r.y;
    values["z"] = r.z;
    values["length"] = r.length();
  } else if (quantity == "ipr") {
    PureState psi = detail::pure_view(doc, "ipr");
    std::optional<ComplexMatrix> basis = opts.basis;
    values["value"] = ipr(psi, basis);
    values["basis"] = basis ? "custom" : "computational";
  } else if (quantity == "schmidt" || quantity == "schmidt-number" ||
             quantity == "entanglement-entropy") {
    auto [da, db] = detail::require_dims(doc, opts, quantity.c_str());
    PureState psi = detail::pure_view(doc, quantity.c_str());
    if (quantity == "schmidt") {
      SchmidtDecomposition schmidt = schmidt_decompose(psi, da, db);
      values["coefficients"] = std::vector<double>(
          schmidt.coefficients.data(),
          schmidt.coefficients.data() + schmidt.coefficients.size());
    } else if (quantity == "schmidt-number") {
      values["value"] = schmidt_number(psi, da, db, opts.schmidt_cutoff);
      values["cutoff"] = opts.schmidt_cutoff;
    } else {
      values["value"] = entanglement_entropy(psi, da, db);
    }
  } else if (quantity == "concurrence") {
    values["value"] = concurrence(detail::density_view(doc, opts));
  } else if (quantity == "entanglement-of-formation") {
    values["value"] = entanglement_of_formation_2q(detail::density_view(doc, opts));
  } else if (quantity == "negativity") {
    values["value"] = negativity(detail::split_density_view(doc, opts, "negativity"));
  } else if (quantity == "ppt") {
    DensityMatrix rho = detail::split_density_view(doc, opts, "ppt");
    auto [da, db] = *rho.split();
    bool ppt = is_ppt(rho);
    values["ppt"] = ppt;
    if (!ppt)
      values["verdict"] = "entangled";
    else
      values["verdict"] = ppt_decides_separability(da, db) ? "separable" : "ppt-undecided";
  } else if (quantity == "er-upper-bound") {
    DensityMatrix rho = detail::split_density_view(doc, opts, "er-upper-bound");
    values["value"] = relative_entropy_of_entanglement_ub(rho, opts.er_budget, opts.seed);
    values["budget"] = opts.er_budget;
    values["seed"] = opts.seed;
  } else if (quantity == "l1-coherence" || quantity == "relative-entropy-coherence") {
    DensityMatrix rho = detail::density_view(doc, opts);
    BasisSpec basis =
        opts.basis ? BasisSpec(*opts.basis) : BasisSpec::computational(rho.dim());
    values["value"] = quantity == "l1-coherence" ? l1_coherence(rho, basis)
                                                 : relative_entropy_coherence(rho, basis);
    values["basis"] = opts.basis ? "custom" : "computational";
  } else if (quantity == "correlator-zz") {
    DensityMatrix rho = detail::split_density_view(doc, opts, "correlator-zz");
    CorrelatorResult corr = two_point_correlator(rho, pauli_z(), pauli_z());
    values["plain"] = corr.plain.real();
    values["connected"] = corr.connected.real();
    values["operators"] = "sigma_z (x) sigma_z";
  } else if (quantity == "uncorrelated") {
    DensityMatrix rho = detail::split_density_view(doc, opts, "uncorrelated");
    values["value"] = is_uncorrelated(rho, opts.uncorrelated_tol);
    values["tolerance"] = opts.uncorrelated_tol;
  } else if (quantity == "chsh") {
    DensityMatrix rho = detail::density_view(doc, opts);
    MeasurementAxis a1(opts.a1[0], opts.a1[1], opts.a1[2]);
    MeasurementAxis a2(opts.a2[0], opts.a2[1], opts.a2[2]);
    MeasurementAxis b1(opts.b1[0], opts.b1[1], opts.b1[2]);
    MeasurementAxis b2(opts.b2[0], opts.b2[1], opts.b2[2]);
    auto [value, verdict] = evaluate_witness(chsh_witness(a1, a2, b1, b2), rho);
    values["value"] = value;
    values["verdict"] = to_string(verdict);
    values["axes"] = json::array({opts.a1, opts.a2, opts.b1, opts.b2});
  } else {
    throw std::invalid_argument("unknown quantity: " + quantity);
  }
  return values;
}

// Inapplicable requests become per-item errors; the rest of the report still
// runs.
inline ReportDocument run_report(const io::StateDocument& doc,
                                 const std::vector<std::string>& requests,
                                 const ReportOptions& opts = {}) {
  ReportDocument report;
  report.label = doc.label.empty()
                     ? (doc.kind == io::StateDocument::Kind::named ? doc.name : "state")
                     : doc.label;
  for (const auto& quantity : requests) {
    ReportItem item;
    item.quantity = quantity;
    try {
      item.values = compute_quantity(quantity, doc, opts);
      item.ok = true;
    } catch (const std::exception& e) {
      item.ok = false;
      item.error = e.what();
    }
    report.items.push_back(std::move(item));
  }
  return report;
}

}  // namespace qinfo::report
