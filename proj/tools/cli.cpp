#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "acceptance.hpp"
#include "vbslab/csv.hpp"
#include "vbslab/localizable.hpp"
#include "vbslab/models.hpp"
#include "vbslab/transfer.hpp"

namespace vbs::cli {

namespace {

constexpr double infinity = std::numeric_limits<double>::infinity();

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\"'");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\"'");
  return s.substr(b, e - b + 1);
}

// Output goes to the named file, or to `fallback` when the name is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw UsageError("cannot write to '" + path + "'");
    stream_ = &file_;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

}  // namespace

void SweepConfig::validate() const {
  if (!std::isfinite(phi_min) || !std::isfinite(phi_max)) throw UsageError("phi range must be finite");
  if (!(phi_min < phi_max)) throw UsageError("phi-min must be smaller than phi-max");
  if (steps < 2) throw UsageError("steps must be at least 2");
  if (n_list.empty()) throw UsageError("n-list is empty");
  for (int n : n_list) {
    if (n < 1) throw UsageError("chain lengths must be positive");
  }
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(trim(text));
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) throw UsageError("empty entry in n-list '" + text + "'");
    const auto dash = item.find('-', 1);
    if (dash == std::string::npos) {
      out.push_back(parse_int(item));
      continue;
    }
    const int lo = parse_int(trim(item.substr(0, dash))), hi = parse_int(trim(item.substr(dash + 1)));
    if (hi < lo) throw UsageError("descending range in n-list: '" + item + "'");
    for (int n = lo; n <= hi; ++n) out.push_back(n);
  }
  if (out.empty()) throw UsageError("n-list is empty");
  return out;
}

SweepRow sweep_point(double phi, const std::vector<int>& n_list) {
  const FcsTensor t = deformed_tensor(phi);
  SweepRow row;
  row.phi = phi;
  row.xi_c_closed = deformed_xi_c_closed(phi);
  const SpectralLength s = correlation_length_spectral(t);
  row.xi_c_spectral = s.finite ? s.xi : infinity;
  row.xi_c_fit = model_correlation_length_fit(make_chain(sweep_fit_length, t), sweep_fit_r_min, sweep_fit_r_max).xi;
  row.xi_e_closed = deformed_xi_e_closed(phi);
  std::vector<int> sizes;
  for (int n = 4; n <= 20; ++n) sizes.push_back(n);
  const LeReport rep = xi_e(t, sizes);
  row.xi_e_fit = rep.infinite ? infinity : rep.xi;
  for (int n : n_list) row.le.push_back(le_closed_form(t, n));
  return row;
}

std::vector<SweepRow> sweep_phi(const SweepConfig& config) {
  config.validate();
  const int steps = config.steps;
  std::vector<SweepRow> rows(steps);
  std::vector<std::exception_ptr> errors(steps);
  const double h = (config.phi_max - config.phi_min) / (steps - 1);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < steps; ++i) {
    const double phi = i == steps - 1 ? config.phi_max : config.phi_min + i * h;
    try {
      rows[i] = sweep_point(phi, config.n_list);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<int>& n_list, const std::vector<SweepRow>& rows) {
  out << "phi,xi_C_closed,xi_C_spectral,xi_C_fit,xi_E_closed,xi_E_fit";
  for (int n : n_list) out << ",LE_" << n;
  out << '\n';
  for (const auto& r : rows) {
    out << csv_number(r.phi) << ',' << csv_number(r.xi_c_closed) << ',' << csv_number(r.xi_c_spectral) << ','
        << csv_number(r.xi_c_fit) << ',' << csv_number(r.xi_e_closed) << ',' << csv_number(r.xi_e_fit);
    for (double le : r.le) out << ',' << csv_number(le);
    out << '\n';
  }
}

std::vector<HeisenbergRow> heisenberg_le(const std::vector<int>& n_list) {
  for (int n : n_list) {
    if (n < 1 || n > heisenberg_max_n) {
      throw UsageError("heisenberg-le supports 1 <= N <= " + std::to_string(heisenberg_max_n));
    }
  }
  std::vector<HeisenbergRow> rows;
  for (int n : n_list) {
    const auto spec = diagonalize(heisenberg_hamiltonian(n), 1);
    const double le = average_entanglement_dense(spec.vectors.col(0), n, 3, 2, MeasurementBasis{aklt_measurement_basis()});
    rows.push_back({n, le, spec.gap});
  }
  return rows;
}

void write_heisenberg_csv(std::ostream& out, const std::vector<HeisenbergRow>& rows) {
  out << "N,LE,gap\n";
  for (const auto& r : rows) out << r.N << ',' << csv_number(r.le) << ',' << csv_number(r.gap) << '\n';
}

std::vector<StringOrderRow> string_order_rows(const std::string& model, double phi, const std::vector<int>& n_list) {
  FcsTensor t;
  if (model == "aklt") {
    t = aklt_tensor();
  } else if (model == "deformed") {
    if (!std::isfinite(phi)) throw UsageError("phi must be finite");
    t = deformed_tensor(phi);
  } else {
    throw UsageError("unknown model '" + model + "' (expected aklt or deformed)");
  }
  std::vector<StringOrderRow> rows;
  for (int n : n_list) {
    if (n < 1) throw UsageError("chain lengths must be positive");
    const ChainSpec chain = make_chain(n, t);
    StringOrderRow row;
    row.N = n;
    row.value = string_order(chain);
    const Operator rho = string_order_reduced(chain);
    for (int i = 0; i < 4; ++i) row.diagonal[i] = rho(i, i).real();
    rows.push_back(row);
  }
  return rows;
}

void write_string_order_csv(std::ostream& out, const std::vector<StringOrderRow>& rows) {
  out << "N,string_order,rho_00,rho_11,rho_22,rho_33\n";
  for (const auto& r : rows) {
    out << r.N << ',' << csv_number(r.value);
    for (double d : r.diagonal) out << ',' << csv_number(d);
    out << '\n';
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Valence-bond chains: correlation and entanglement lengths, string order, localizable entanglement"};
  app.name("vbslab");
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file with the same keys as the long flags; flags override it");

  SweepConfig sweep;
  std::vector<std::string> n_list_parts;
  std::string level = "fast";
  std::string model = "aklt";
  double phi = 1.0;
  app.add_option("--phi-min", sweep.phi_min, "lower end of the phi grid");
  app.add_option("--phi-max", sweep.phi_max, "upper end of the phi grid");
  app.add_option("--steps", sweep.steps, "number of grid points (>= 2)");
  // A config line "n-list=2,3" arrives as two values; they are rejoined below.
  app.add_option("--n-list", n_list_parts, "chain lengths, e.g. 2,4,8 or 1-5");
  app.add_option("--out", sweep.out, "output file (default: standard output)");
  app.add_option("--seed", sweep.seed, "seed for optimizer restarts and random gauges");
  app.add_option("--level", level, "verification level")->check(CLI::IsMember({"fast", "full"}));
  app.add_option("--model", model, "string-order model")->check(CLI::IsMember({"aklt", "deformed"}));
  app.add_option("--phi", phi, "deformation for the deformed string-order model");

  auto* sweep_cmd = app.add_subcommand("sweep-phi", "correlation/entanglement lengths and LE over a phi grid");
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
  auto* heis_cmd = app.add_subcommand("heisenberg-le", "end-to-end LE of the Heisenberg chain (N <= 5)");
  auto* string_cmd = app.add_subcommand("string-order", "string order and its reduced two-qubit diagonal");
  for (auto* c : {sweep_cmd, verify_cmd, heis_cmd, string_cmd}) c->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  std::string n_list_text;
  for (const auto& part : n_list_parts) n_list_text += (n_list_text.empty() ? "" : ",") + part;

  try {
    if (verify_cmd->parsed()) {
      acceptance::Options opts;
      opts.level = level == "full" ? acceptance::Level::full : acceptance::Level::fast;
      opts.seed = sweep.seed;
      const auto results = acceptance::run(opts);
      acceptance::print(out, results);
      return acceptance::exit_code(results) == 0 ? exit_ok : exit_failure;
    }
    if (sweep_cmd->parsed()) {
      if (!n_list_text.empty()) sweep.n_list = parse_n_list(n_list_text);
      sweep.validate();
      const auto rows = sweep_phi(sweep);
      Sink sink(sweep.out, out);
      write_sweep_csv(sink.stream(), sweep.n_list, rows);
      return exit_ok;
    }
    if (heis_cmd->parsed()) {
      const auto n = parse_n_list(n_list_text.empty() ? "1-5" : n_list_text);
      const auto rows = heisenberg_le(n);
      Sink sink(sweep.out, out);
      write_heisenberg_csv(sink.stream(), rows);
      return exit_ok;
    }
    const auto n = parse_n_list(n_list_text.empty() ? "1-8" : n_list_text);
    const auto rows = string_order_rows(model, phi, n);
    Sink sink(sweep.out, out);
    write_string_order_csv(sink.stream(), rows);
    return exit_ok;
  } catch (const UsageError& e) {
    err << "vbslab: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "vbslab: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::length_error& e) {
    err << "vbslab: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "vbslab: error: " << e.what() << '\n';
    return exit_failure;
  }
}

}  // namespace vbs::cli
