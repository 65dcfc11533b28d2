#pragma once

#include "walkent/certify.hpp"
#include "walkent/graph.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace walkent {

/// Entropic values of kks(4,5) under exp, frozen from an independent
/// bisection oracle.
inline constexpr double kks45_golden_beta_low = 0.4990014129333032;
inline constexpr double kks45_golden_beta_high = 1.9120235051798988;

struct Check {
  std::string description;
  bool passed = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;

  bool passed() const;
};

/// Graphs used by the property suites, as family specs.
const std::vector<std::string>& fixture_specs();

/// Closed walks of each length 0..max_length at every node, by depth-first
/// enumeration. Exponential; meant for small graphs.
std::vector<std::vector<long long>> enumerate_closed_walks(const Graph& g, int max_length);

enum class PositiveSolutionKind { none, nonnegative_only, positive };

/// Exact answer for W x = e over x >= 0 / x > 0 via basic solutions of the
/// system and of its recession cone, in rationals. Intended for a handful of
/// columns.
PositiveSolutionKind exact_positive_solution(const BigMatrix& w);

CriterionResult check_walk_classes();
CriterionResult check_kks_eigensystem();
CriterionResult check_kks_entropic_values();
CriterionResult check_cartesian_invariance();
CriterionResult check_beta_accumulation();
CriterionResult check_tensor_family();
CriterionResult check_collision_certificate();
CriterionResult check_negative_certificate();
CriterionResult check_property_suites();

/// Runs criteria 1..9, or just `only` when given.
std::vector<CriterionResult> run_acceptance(std::optional<int> only = std::nullopt);

/// One line per criterion, followed by indented sub-checks.
void print_acceptance(std::ostream& out, const std::vector<CriterionResult>& results);

} // namespace walkent
