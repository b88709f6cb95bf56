#pragma once

// Built-in validation suites run by `ep_lab validate`. Each case produces an
// oracle::ValidationReport; the report file has one line per case:
//   <suite> <case id> <max residual> <tolerance> PASS|FAIL

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "eplab/chiellini.hpp"
#include "eplab/oracle.hpp"

namespace eplab::validation {

enum class Suite { Residual, Invariant, Chiellini, Phase, Factorization, Abel, All };

std::optional<Suite> parse_suite(std::string_view name);
const char* to_string(Suite suite);

struct CaseResult {
  std::string suite;
  std::string id;
  oracle::ValidationReport report;
};

struct RunOptions {
  /// Replaces every case tolerance (EP_LAB_TOL).
  std::optional<double> tolerance_override;
};

/// Cases sorted by id within each suite; suites in declaration order.
std::vector<CaseResult> run_suite(Suite suite, const RunOptions& options = {});

bool all_passed(const std::vector<CaseResult>& results);
void write_report(std::ostream& out, const std::vector<CaseResult>& results);

/// Parameter matrix used to certify the three closed-form branches.
struct ClosedFormCase {
  std::string id;
  chiellini::EPParams params;
  oracle::Window window;
};

std::vector<ClosedFormCase> closed_form_cases();

/// Residual of the dissipative equation along a closed form, sampled where
/// the solution is real, increasing in v^2, and outside the guard bands.
oracle::ValidationReport closed_form_residual(const ClosedFormCase& c, std::size_t samples,
                                              double tolerance);

/// Initial state of the closed form at zeta (v and v' from w = v^2).
struct ClosedFormState {
  double v = 0.0;
  double dv = 0.0;
};
ClosedFormState closed_form_state(const chiellini::DissipativeSolution& sol, double zeta);

}  // namespace eplab::validation
