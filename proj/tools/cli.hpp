#pragma once

// Command implementations behind the vbslab executable. Each command writes
// plot-ready CSV (header row, 12 significant digits, "inf" for infinite
// lengths) and run() maps outcomes to exit codes: 0 success, 1 failed
// verification, 2 usage error.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace vbs::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

/// Thrown for invalid user input; run() reports it and exits with 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SweepConfig {
  double phi_min = -2.0;
  double phi_max = 2.0;
  int steps = 81;
  std::vector<int> n_list{2, 4, 8, 16, 32};
  std::string out;  // empty: standard output
  std::uint64_t seed = 20040101;

  void validate() const;  // throws UsageError
};

/// "2,4,8" -> {2, 4, 8}; ranges "1-5" are expanded. Throws UsageError.
std::vector<int> parse_n_list(const std::string& text);

struct SweepRow {
  double phi = 0.0;
  double xi_c_closed = 0.0;
  double xi_c_spectral = 0.0;
  double xi_c_fit = 0.0;
  double xi_e_closed = 0.0;
  double xi_e_fit = 0.0;
  std::vector<double> le;  // one entry per n_list element
};

/// Chain length and window used for the correlator fit column.
inline constexpr int sweep_fit_length = 30;
inline constexpr int sweep_fit_r_min = 2;
inline constexpr int sweep_fit_r_max = 12;

SweepRow sweep_point(double phi, const std::vector<int>& n_list);

/// Grid points phi_min + i (phi_max - phi_min) / (steps - 1), evaluated in
/// parallel; rows come back in grid order.
std::vector<SweepRow> sweep_phi(const SweepConfig& config);
void write_sweep_csv(std::ostream& out, const std::vector<int>& n_list, const std::vector<SweepRow>& rows);

inline constexpr int heisenberg_max_n = 5;

struct HeisenbergRow {
  int N = 0;
  double le = 0.0;
  double gap = 0.0;
};

/// Exact diagonalization of the spin-1 Heisenberg chain with spin-1/2 ends
/// and the end-to-end LE over all 3^N outcomes in the Pauli basis.
std::vector<HeisenbergRow> heisenberg_le(const std::vector<int>& n_list);
void write_heisenberg_csv(std::ostream& out, const std::vector<HeisenbergRow>& rows);

struct StringOrderRow {
  int N = 0;
  double value = 0.0;
  double diagonal[4] = {0, 0, 0, 0};
};

/// model is "aklt" or "deformed" (phi used only for the latter).
std::vector<StringOrderRow> string_order_rows(const std::string& model, double phi, const std::vector<int>& n_list);
void write_string_order_csv(std::ostream& out, const std::vector<StringOrderRow>& rows);

/// Parse argv and run one command.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vbs::cli
