#pragma once

// Property checks over generated fixtures, collected into a report whose
// records are sorted by name so that the output does not depend on the
// order in which worker threads finish.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "banalg/fixtures.hpp"
#include "banalg/io.hpp"

namespace banalg::verify {

enum class Verdict { pass, fail, skipped };
std::string_view to_string(Verdict v);

struct Record {
  std::string name;    // "<fixture>/<check>"
  std::string anchor;  // theorem anchor or "plumbing"
  double residual = 0.0;
  Verdict verdict = Verdict::pass;
  std::size_t samples = 1;
  std::string detail;
};

struct RunConfig {
  double tol = kAlgebraicTol;
  double opt_tol = kOptimizationTol;
  std::uint64_t seed = 0;
  std::vector<fixtures::Family> families{std::begin(fixtures::kAllFamilies), std::end(fixtures::kAllFamilies)};
  std::size_t count = 10;  // fixtures per family
  std::size_t max_dim = fixtures::kDefaultMaxDim;
  std::size_t sigma_samples = 12;   // random functions per fixture for the duality checks
  std::size_t theta_samples = 100;  // (tau, rho) pairs per Lau fixture
  unsigned jobs = 1;
  /// Restricts the theorem checks; plumbing records are always produced.
  std::optional<std::string> theorem;
};

/// Throws SCHEMA_ERROR for non-positive tolerances, count 0 or an unknown theorem.
void validate_config(const RunConfig& config);

/// Anchors selected by a --theorem value.
std::set<std::string> anchors_for_theorem(const std::string& theorem);

struct Summary {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skipped = 0;
};

struct Report {
  std::uint64_t seed = 0;
  double tol = 0.0;
  double opt_tol = 0.0;
  std::vector<Record> records;

  Summary summary() const;
  bool ok() const { return summary().fail == 0; }
};

Report run_verify(const RunConfig& config);

/// Runs every applicable check on one fixture (for instance one read from a
/// product file). `index` seeds the per-check sample streams.
std::vector<Record> check_fixture(const fixtures::Fixture& fixture, std::size_t index, const RunConfig& config);

/// Wraps a loaded product document into a fixture, computing the hypothesis flags.
fixtures::Fixture fixture_from_document(const io::ProductDocument& doc, const std::string& name);

Report single_report(std::vector<Record> records, const RunConfig& config);

io::Json report_to_json(const Report& report);
std::string render_text(const Report& report, bool color);

}  // namespace banalg::verify
