#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wsts/ideal.hpp"

namespace wsts {

/// Index of a transition label inside its net's alphabet.
using Label = std::size_t;

/// A labeled transition: consumes `guard`, then produces `output`. An ω output produces
/// arbitrarily many tokens (ω-Petri nets). Guards are always finite.
struct Transition {
  std::string label;
  std::vector<std::uint64_t> guard;
  IdealVec output;
};

/// Per-coordinate displacement of one transition. `omega[i]` marks an ω output on i, in
/// which case `displacement[i]` holds only the (negated) guard and is not a finite effect.
struct EffectSummary {
  std::vector<std::int64_t> displacement;
  std::vector<bool> omega;

  std::size_t dimension() const noexcept { return displacement.size(); }
  bool operator==(const EffectSummary&) const = default;
};

/// A labeled VAS, Petri net or ω-Petri net. Labels are unique, so the ideal completion is
/// deterministic. Immutable once built.
class NetModel {
 public:
  /// Validates and builds. Throws ValidationError listing every violation.
  NetModel(std::size_t dimension, std::vector<Transition> transitions);

  /// Builds a VAS from displacement vectors: guard = max(-t, 0), output = guard + t.
  static NetModel from_vas(std::size_t dimension,
                           const std::vector<std::pair<std::string, std::vector<std::int64_t>>>& t);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t alphabet_size() const noexcept { return transitions_.size(); }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  const Transition& transition(Label a) const { return transitions_.at(a); }
  const std::string& label_name(Label a) const { return transitions_.at(a).label; }
  std::vector<std::string> alphabet() const;

  /// Throws UnknownSymbol.
  Label label_of(std::string_view name) const;
  std::optional<Label> find_label(std::string_view name) const;

  bool has_omega_outputs() const noexcept;

 private:
  std::size_t dimension_;
  std::vector<Transition> transitions_;
  std::map<std::string, Label, std::less<>> index_;
};

/// Concrete successors of x under `label`. Each ω output is expanded to every value in
/// 0..bound. Without ω outputs the result has at most one element. Sorted, no duplicates.
std::vector<Marking> post_concrete(const NetModel& net, const Marking& x, std::string_view label,
                                   std::uint64_t bound = 8);
std::vector<Marking> post_concrete(const NetModel& net, const Marking& x, Label label,
                                   std::uint64_t bound = 8);

/// One step of the ideal completion. Absent when the guard is not met.
std::optional<IdealVec> post_ideal(const NetModel& net, const IdealVec& v, std::string_view label);
std::optional<IdealVec> post_ideal(const NetModel& net, const IdealVec& v, Label label);

EffectSummary effect_summary(const NetModel& net, std::string_view label);
EffectSummary effect_summary(const NetModel& net, Label label);

/// Backward coverability: least fixpoint of minimal predecessors of ↑y, then x0 ∈ Pre*(↑y).
/// Rejects nets with ω outputs.
bool backward_coverable(const NetModel& net, const Marking& x0, const Marking& y);

/// Parses a net in the line format or in JSON (detected by a leading '{').
///
/// Line format:
///
///     # comment
///     dim 2
///     t1 | 1,0 | 0,w        # label | guard | output
///     t2 : -1,2             # label : VAS displacement
///
/// JSON format:
///
///     {"dimension": 2, "transitions": [
///        {"label": "t1", "guard": [1,0], "output": [0,"w"]},
///        {"label": "t2", "effect": [-1,2]}]}
///
/// Throws ParseError (with line/column) or ValidationError.
NetModel load_net(std::string_view text);
NetModel load_net_file(const std::string& path);

/// Renders a net in the line format; load_net(render_net(n)) reproduces n.
std::string render_net(const NetModel& net);

}  // namespace wsts
