#include "wsts/net.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace wsts {

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  });
}

// LTL keywords cannot double as atoms.
bool is_reserved(const std::string& s) {
  static const std::set<std::string> kReserved = {"X", "U", "R", "F", "G", "tt", "ff",
                                                  "true", "false", "eps"};
  return kReserved.count(s) > 0;
}

}  // namespace

NetModel::NetModel(std::size_t dimension, std::vector<Transition> transitions)
    : dimension_(dimension), transitions_(std::move(transitions)) {
  std::vector<std::string> violations;
  if (dimension_ == 0) violations.push_back("dimension must be at least 1");
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    const auto& t = transitions_[i];
    if (!is_identifier(t.label) || is_reserved(t.label)) {
      violations.push_back("label '" + t.label + "' is not a valid identifier");
    }
    if (t.guard.size() != dimension_) {
      violations.push_back("transition '" + t.label + "': guard has length " +
                           std::to_string(t.guard.size()) + ", expected " +
                           std::to_string(dimension_));
    }
    if (t.output.dimension() != dimension_) {
      violations.push_back("transition '" + t.label + "': output has length " +
                           std::to_string(t.output.dimension()) + ", expected " +
                           std::to_string(dimension_));
    }
    if (!index_.emplace(t.label, i).second) {
      violations.push_back("labels must be unique: '" + t.label + "' is declared twice");
    }
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

NetModel NetModel::from_vas(
    std::size_t dimension,
    const std::vector<std::pair<std::string, std::vector<std::int64_t>>>& t) {
  std::vector<Transition> ts;
  for (const auto& [label, delta] : t) {
    Transition tr{label, std::vector<std::uint64_t>(delta.size()), {}};
    std::vector<OmegaNat> out(delta.size());
    for (std::size_t i = 0; i < delta.size(); ++i) {
      tr.guard[i] = delta[i] < 0 ? static_cast<std::uint64_t>(-delta[i]) : 0;
      out[i] = OmegaNat(static_cast<std::uint64_t>(static_cast<std::int64_t>(tr.guard[i]) + delta[i]));
    }
    tr.output = IdealVec(std::move(out));
    ts.push_back(std::move(tr));
  }
  return NetModel(dimension, std::move(ts));
}

std::vector<std::string> NetModel::alphabet() const {
  std::vector<std::string> out;
  out.reserve(transitions_.size());
  for (const auto& t : transitions_) out.push_back(t.label);
  return out;
}

Label NetModel::label_of(std::string_view name) const {
  auto l = find_label(name);
  if (!l) throw UnknownSymbol(std::string(name));
  return *l;
}

std::optional<Label> NetModel::find_label(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool NetModel::has_omega_outputs() const noexcept {
  return std::any_of(transitions_.begin(), transitions_.end(),
                     [](const Transition& t) { return level(t.output) > 0; });
}

std::vector<Marking> post_concrete(const NetModel& net, const Marking& x, std::string_view label,
                                   std::uint64_t bound) {
  return post_concrete(net, x, net.label_of(label), bound);
}

std::vector<Marking> post_concrete(const NetModel& net, const Marking& x, Label label,
                                   std::uint64_t bound) {
  if (x.dimension() != net.dimension()) throw DimensionMismatch(net.dimension(), x.dimension());
  const auto& t = net.transition(label);
  const std::size_t d = net.dimension();
  Marking base = x;
  std::vector<std::size_t> omega_coords;
  for (std::size_t i = 0; i < d; ++i) {
    if (x[i] < t.guard[i]) return {};
    base[i] = x[i] - t.guard[i];
    if (t.output[i].is_omega())
      omega_coords.push_back(i);
    else
      base[i] += t.output[i].value();
  }
  // Odometer over the ω coordinates.
  std::vector<Marking> out;
  std::vector<std::uint64_t> produce(omega_coords.size(), 0);
  while (true) {
    Marking y = base;
    for (std::size_t k = 0; k < omega_coords.size(); ++k) y[omega_coords[k]] += produce[k];
    out.push_back(std::move(y));
    std::size_t k = 0;
    while (k < produce.size() && produce[k] == bound) produce[k++] = 0;
    if (k == produce.size()) break;
    ++produce[k];
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<IdealVec> post_ideal(const NetModel& net, const IdealVec& v, std::string_view label) {
  return post_ideal(net, v, net.label_of(label));
}

std::optional<IdealVec> post_ideal(const NetModel& net, const IdealVec& v, Label label) {
  if (v.dimension() != net.dimension()) throw DimensionMismatch(net.dimension(), v.dimension());
  const auto& t = net.transition(label);
  std::vector<OmegaNat> out(v.dimension());
  for (std::size_t i = 0; i < v.dimension(); ++i) {
    if (v[i] < OmegaNat(t.guard[i])) return std::nullopt;
    out[i] = (v[i] - t.guard[i]) + t.output[i];
  }
  return IdealVec(std::move(out));
}

EffectSummary effect_summary(const NetModel& net, std::string_view label) {
  return effect_summary(net, net.label_of(label));
}

EffectSummary effect_summary(const NetModel& net, Label label) {
  const auto& t = net.transition(label);
  EffectSummary e{std::vector<std::int64_t>(net.dimension()), std::vector<bool>(net.dimension())};
  for (std::size_t i = 0; i < net.dimension(); ++i) {
    e.omega[i] = t.output[i].is_omega();
    const auto produced = e.omega[i] ? 0 : static_cast<std::int64_t>(t.output[i].value());
    e.displacement[i] = produced - static_cast<std::int64_t>(t.guard[i]);
  }
  return e;
}

}  // namespace wsts
