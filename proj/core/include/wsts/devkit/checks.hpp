#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wsts/net.hpp"

// Seeded cross-checks of the library against the oracles. Shared by the acceptance suite
// and `wsts-verify devtool check`.
namespace wsts::devkit {

struct CheckReport {
  std::string name;
  std::size_t cases = 0;
  std::size_t agreed = 0;
  std::vector<std::string> failures;  // first few disagreements
  std::vector<std::string> notes;     // per-case lines for the micro examples
  double seconds = 0;

  bool passed() const noexcept { return cases > 0 && agreed == cases; }
  void record(bool ok, const std::string& what);
};

/// A seeded query: a net, an initial marking and, for coverability queries, a target.
struct Instance {
  NetModel net;
  Marking x0;
  std::optional<Marking> target;
  std::string origin;
};

/// The instance sets used by the checks below, reproducible from the seed.
std::vector<Instance> clover_instances(std::uint64_t seed, std::size_t nets, std::size_t omega_nets);
std::vector<Instance> coverability_instances(std::uint64_t seed, std::size_t queries);
std::vector<Instance> trace_instances(std::uint64_t seed, std::size_t nets);
std::vector<Instance> bounded_instances(std::uint64_t seed, std::size_t nets);

/// Nets in the line format whose first `# init: v` comment gives the initial marking.
Instance load_instance(const std::string& path);
/// Every `*.net` file of a directory, sorted by name.
std::vector<Instance> shipped_instances(const std::string& directory);

/// "(w,8,3,w)" parses to ℕ×↓8×↓3×ℕ and renders back.
CheckReport check_omega_rendering();

/// accelerate from (5,0,1) with a word of effect (0,+1,+2) gives (5,w,w).
CheckReport check_acceleration_example();

/// Clover membership against truncated forward search on every point of [0..box]^d.
CheckReport check_clover(const std::vector<Instance>& instances, std::uint64_t box = 12,
                         std::uint64_t cap = 36);

/// IKM coverability against backward coverability.
CheckReport check_coverability(const std::vector<Instance>& instances,
                               std::size_t node_budget = 2000000);

/// Trees within the default node budget, numaccel <= d on every node, and equal clovers
/// under FIFO and LIFO worklists.
CheckReport check_termination(const std::vector<Instance>& instances);

/// Concrete traces up to `depth` are accepted by A_{↓x0}; K_{↓x0}-accepted words up to
/// `depth` embed in concrete traces up to `2 * depth`.
CheckReport check_trace_sandwich(const std::vector<Instance>& instances, std::size_t depth = 8);

/// Subword closure and inclusion against bounded enumeration of words.
CheckReport check_languages(std::uint64_t seed, std::size_t pairs, std::size_t max_length = 10);

/// exists_positive_sequence (length-bounded) against enumeration, with witness validation.
CheckReport check_positivity(std::uint64_t seed, std::size_t automata,
                             std::size_t max_length = 10);

/// The three micro examples, then bounded nets against lasso detection.
CheckReport check_repeated_coverability(const std::vector<Instance>& instances);

/// The model-checking examples on the +1 a-loop, then the translator against lasso
/// semantics on random (formula, lasso) pairs.
CheckReport check_ltl(std::uint64_t seed, std::size_t pairs, std::size_t max_formula = 6,
                      std::size_t max_lasso = 4);

/// Every worked example with a brute-force reference value, one note per example.
CheckReport check_examples();

/// Names accepted by run_check.
std::vector<std::string> check_names();

/// Runs a check by name; `count` of 0 selects the default size. "termination" covers every
/// seeded instance of the other checks plus the nets in `nets_directory`, if given. Throws
/// PreconditionError for unknown names.
CheckReport run_check(const std::string& name, std::uint64_t seed, std::size_t count = 0,
                      const std::string& nets_directory = {});

}  // namespace wsts::devkit
