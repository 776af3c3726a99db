#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wsts/net.hpp"

namespace wsts {

namespace {

struct RawTransition {
  std::string label;
  IdealVec guard;
  IdealVec output;
  std::size_t line;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Re-raises a vector parse error at the position of the field inside the line.
IdealVec parse_field(std::string_view field, std::size_t line, std::size_t column) {
  try {
    return IdealVec::parse(field);
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()).substr(std::string(e.what()).find(' ') + 1), line,
                     column + e.column() - 1);
  }
}

std::vector<std::int64_t> parse_effect(std::string_view field, std::size_t line,
                                       std::size_t column) {
  std::vector<std::int64_t> out;
  std::string s(trim(field));
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto t = std::string(trim(item));
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw ParseError("expected an integer displacement, got '" + t + "'", line, column);
    }
  }
  if (out.empty()) throw ParseError("empty displacement vector", line, column);
  return out;
}

RawTransition from_effect(std::string label, const std::vector<std::int64_t>& delta,
                          std::size_t line) {
  std::vector<OmegaNat> g(delta.size()), o(delta.size());
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const std::uint64_t guard = delta[i] < 0 ? static_cast<std::uint64_t>(-delta[i]) : 0;
    g[i] = guard;
    o[i] = static_cast<std::uint64_t>(static_cast<std::int64_t>(guard) + delta[i]);
  }
  return {std::move(label), IdealVec(std::move(g)), IdealVec(std::move(o)), line};
}

NetModel build(std::size_t dim, const std::vector<RawTransition>& raw) {
  std::vector<std::string> violations;
  std::vector<Transition> ts;
  for (const auto& r : raw) {
    std::vector<std::uint64_t> guard;
    bool finite = true;
    for (const auto& g : r.guard) {
      if (g.is_omega()) {
        finite = false;
        break;
      }
      guard.push_back(g.value());
    }
    if (!finite) {
      violations.push_back("line " + std::to_string(r.line) + ": guards must be finite (transition '" +
                           r.label + "')");
      continue;
    }
    ts.push_back({r.label, std::move(guard), r.output});
  }
  try {
    NetModel net(dim, std::move(ts));
    if (!violations.empty()) throw ValidationError(violations);
    return net;
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) violations.push_back(v);
    throw ValidationError(std::move(violations));
  }
}

NetModel load_lines(std::string_view text) {
  std::optional<std::size_t> dim;
  std::vector<RawTransition> raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::string_view body = trim(line);
    if (body.empty()) continue;
    const std::size_t col0 = static_cast<std::size_t>(body.data() - line.data()) + 1;

    if (!dim) {
      std::istringstream in{std::string(body)};
      std::string kw;
      long long n = -1;
      in >> kw;
      if (kw != "dim" && kw != "dimension") {
        throw ParseError("expected 'dim N' before any transition", line_no, col0);
      }
      if (!(in >> n) || n < 0) throw ParseError("expected a dimension after 'dim'", line_no, col0);
      std::string rest;
      if (in >> rest) throw ParseError("unexpected text after dimension", line_no, col0);
      dim = static_cast<std::size_t>(n);
      continue;
    }

    const auto bar = body.find('|');
    const auto colon = body.find(':');
    if (bar != std::string_view::npos) {
      const auto bar2 = body.find('|', bar + 1);
      if (bar2 == std::string_view::npos) {
        throw ParseError("expected 'label | guard | output'", line_no, col0 + bar);
      }
      std::string label(trim(body.substr(0, bar)));
      auto guard = parse_field(body.substr(bar + 1, bar2 - bar - 1), line_no, col0 + bar + 1);
      auto output = parse_field(body.substr(bar2 + 1), line_no, col0 + bar2 + 1);
      raw.push_back({std::move(label), std::move(guard), std::move(output), line_no});
    } else if (colon != std::string_view::npos) {
      std::string label(trim(body.substr(0, colon)));
      auto delta = parse_effect(body.substr(colon + 1), line_no, col0 + colon + 1);
      raw.push_back(from_effect(std::move(label), delta, line_no));
    } else {
      throw ParseError("expected 'label | guard | output' or 'label : effect'", line_no, col0);
    }
  }
  if (!dim) throw ParseError("missing 'dim N' header", line_no, 1);
  return build(*dim, raw);
}

IdealVec json_vector(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError({what + " must be an array"});
  std::vector<OmegaNat> out;
  for (const auto& e : j) {
    if (e.is_string() && (e == "w" || e == "ω" || e == "omega")) {
      out.push_back(kOmega);
    } else if (e.is_number_unsigned()) {
      out.push_back(e.get<std::uint64_t>());
    } else {
      throw ValidationError({what + " entries must be naturals or \"w\""});
    }
  }
  return IdealVec(std::move(out));
}

NetModel load_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte offset -> line/column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(e.what(), line, col);
  }
  if (!j.is_object() || !j.contains("dimension") || !j["dimension"].is_number_unsigned()) {
    throw ValidationError({"JSON net needs an unsigned \"dimension\""});
  }
  std::vector<RawTransition> raw;
  std::size_t index = 0;
  for (const auto& t : j.value("transitions", nlohmann::json::array())) {
    ++index;
    if (!t.contains("label") || !t["label"].is_string()) {
      throw ValidationError({"transition #" + std::to_string(index) + " needs a string \"label\""});
    }
    std::string label = t["label"];
    if (t.contains("effect")) {
      std::vector<std::int64_t> delta;
      for (const auto& e : t["effect"]) {
        if (!e.is_number_integer()) throw ValidationError({"effect entries must be integers"});
        delta.push_back(e.get<std::int64_t>());
      }
      raw.push_back(from_effect(label, delta, index));
    } else {
      raw.push_back({label, json_vector(t.value("guard", nlohmann::json()), "guard of " + label),
                     json_vector(t.value("output", nlohmann::json()), "output of " + label), index});
    }
  }
  return build(j["dimension"].get<std::size_t>(), raw);
}

}  // namespace

NetModel load_net(std::string_view text) {
  auto body = trim(text);
  if (!body.empty() && body.front() == '{') return load_json(text);
  return load_lines(text);
}

NetModel load_net_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open net file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_net(ss.str());
}

std::string render_net(const NetModel& net) {
  std::ostringstream os;
  os << "dim " << net.dimension() << '\n';
  for (const auto& t : net.transitions()) {
    os << t.label << " | ";
    for (std::size_t i = 0; i < t.guard.size(); ++i) os << (i ? "," : "") << t.guard[i];
    os << " | ";
    for (std::size_t i = 0; i < t.output.dimension(); ++i) os << (i ? "," : "") << t.output[i].to_string();
    os << '\n';
  }
  return os.str();
}

}  // namespace wsts
