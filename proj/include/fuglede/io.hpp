#pragma once

// JSON encodings shared by the library and the command line tool.
//
//   GroupSpec        {"moduli": [n1, n2, ...]}
//   GroupElement     [c1, c2, ...]
//   element sets     [[...], [...], ...]
//   ButsonMatrix     {"q": q, "logs": [[...], ...]}
//   LatticeSet       [[...], [...], ...]
//   FrequencySet     {"denominator": D, "numerators": [[...], ...]}
//   geometry export  {"cube_corners": [...], "dimension": n, "measure": m,
//                     "spectrum": FrequencySet}

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fuglede/continuum.hpp"
#include "fuglede/group.hpp"
#include "fuglede/hadamard.hpp"
#include "fuglede/lattice.hpp"
#include "fuglede/tiling.hpp"

namespace fuglede {

using json = nlohmann::json;

inline void to_json(json& j, const GroupSpec& g) { j = json{{"moduli", g.moduli()}}; }
inline void from_json(const json& j, GroupSpec& g) { g = GroupSpec(j.at("moduli").get<std::vector<int>>()); }

inline void to_json(json& j, const GroupElement& x) { j = x.coords; }
inline void from_json(const json& j, GroupElement& x) { x.coords = j.get<std::vector<int>>(); }

inline void to_json(json& j, const ButsonMatrix& h) { j = json{{"q", h.q()}, {"logs", h.logs()}}; }

inline void to_json(json& j, const LatticeSet& s) {
  j = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto p = s.point(i);
    j.push_back(std::vector<int>(p.begin(), p.end()));
  }
}
inline LatticeSet lattice_set_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("lattice set must be a nonempty array of points");
  LatticeSet s(j.front().size());
  for (const auto& p : j) s.push_back(p.get<std::vector<int>>());
  return s;
}

inline void to_json(json& j, const FrequencySet& f) {
  j = json{{"denominator", f.denominator}, {"numerators", f.numerators}};
}
inline void from_json(const json& j, FrequencySet& f) {
  f.denominator = j.at("denominator").get<int>();
  f.numerators = j.at("numerators").get<std::vector<std::vector<int>>>();
  if (f.denominator < 1) throw std::invalid_argument("frequency denominator must be positive");
  for (auto& v : f.numerators)
    for (int& c : v) c = GroupSpec::mod(c, f.denominator);
}

inline void to_json(json& j, const DivisibilityObstruction& d) {
  j = json{{"set_size", d.set_size}, {"group_order", d.group_order}};
}

inline json tiling_certificate_json(const TilingResult& r) {
  if (r.tiles()) return json{{"kind", "complement"}, {"complement", *r.complement}};
  if (const auto* d = r.obstruction()) return json{{"kind", "divisibility"}, {"obstruction", *d}};
  return json{{"kind", "exhausted_cover"}};
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses JSON, reporting the line and column of a syntax error.
inline json parse_json(std::string_view text, const std::string& origin = "<input>") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw std::invalid_argument(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                ": JSON parse error: " + e.what());
  }
}

inline json load_json_file(const std::string& path) { return parse_json(read_text_file(path), path); }

/// Accepts a JSON array of elements, or a brace literal such as "{0,1}" for
/// one-factor groups and "{(0,1),(2,2)}" in general.
inline ElementSet parse_element_set(const GroupSpec& g, std::string_view text) {
  ElementSet out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw std::invalid_argument("empty set literal");
  if (text[first] == '[') {
    out = parse_json(text).get<ElementSet>();
  } else if (text[first] == '{') {
    const auto last = text.find_last_not_of(" \t\r\n");
    if (text[last] != '}') throw std::invalid_argument("set literal must end with '}'");
    std::string body(text.substr(first + 1, last - first - 1));
    std::string arr = "[";
    int depth = 0;
    for (char c : body) {
      if (c == '(') {
        ++depth;
        arr += '[';
      } else if (c == ')') {
        --depth;
        arr += ']';
      } else {
        arr += c;
      }
      if (depth < 0 || depth > 1) throw std::invalid_argument("unbalanced parentheses in set literal");
    }
    arr += ']';
    const json j = parse_json(arr, "set literal");
    for (const auto& e : j) {
      if (e.is_number_integer()) {
        if (g.dimension() != 1) throw std::invalid_argument("bare integers need a one-factor group; use tuples");
        out.emplace_back(std::vector<int>{e.get<int>()});
      } else {
        out.push_back(e.get<GroupElement>());
      }
    }
  } else {
    throw std::invalid_argument("set must be a JSON array or a {...} literal");
  }
  for (auto& x : out) g.require(x);
  return out;
}

inline json geometry_json(const CubeUnion& omega2, const FrequencySet& lambda1) {
  FrequencySet spec = lambda1;
  std::sort(spec.numerators.begin(), spec.numerators.end());
  return json{{"dimension", omega2.dimension()},
              {"cube_corners", omega2.corners.sorted()},
              {"spectrum", spec},
              {"measure", omega2.measure()}};
}

/// Writes the geometry as one line of JSON with sorted keys and
/// lexicographically ordered corners and numerators.
inline void export_geometry(const CubeUnion& omega2, const FrequencySet& lambda1, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << geometry_json(omega2, lambda1).dump() << '\n';
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

struct Geometry {
  CubeUnion omega2;
  FrequencySet spectrum;
};

inline Geometry import_geometry(const json& j) {
  Geometry g{CubeUnion{lattice_set_from_json(j.at("cube_corners"))}, j.at("spectrum").get<FrequencySet>()};
  if (g.omega2.dimension() != j.at("dimension").get<std::size_t>())
    throw std::invalid_argument("geometry dimension does not match its corners");
  if (g.omega2.measure() != j.at("measure").get<std::uint64_t>())
    throw std::invalid_argument("geometry measure does not match its corner count");
  return g;
}

inline Geometry import_geometry(const std::string& path) { return import_geometry(load_json_file(path)); }

}  // namespace fuglede

template <>
struct nlohmann::adl_serializer<fuglede::ButsonMatrix> {
  static fuglede::ButsonMatrix from_json(const json& j) {
    return {j.at("q").get<int>(), j.at("logs").get<std::vector<std::vector<int>>>()};
  }
  static void to_json(json& j, const fuglede::ButsonMatrix& h) { fuglede::to_json(j, h); }
};
