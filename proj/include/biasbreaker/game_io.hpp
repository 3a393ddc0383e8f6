// On-disk game format, version 1. JSON with a fixed key order:
//   {"version": 1, "n": 3, "payoffs": [[...], ...], "actions": [...]}
// "actions" is optional. serialize -> parse is an identity, and
// serialization is canonical (stable bytes for equal matrices).

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "biasbreaker/game.hpp"

namespace biasbreaker {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string serialize_game(const GameMatrix& g) {
  nlohmann::ordered_json doc;
  doc["version"] = 1;
  doc["n"] = g.n();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < g.n(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int j = 0; j < g.n(); ++j) row.push_back(g.payoff(i, j));
    rows.push_back(std::move(row));
  }
  doc["payoffs"] = std::move(rows);
  if (!g.action_names().empty()) doc["actions"] = g.action_names();
  return doc.dump(2) + "\n";
}

inline GameMatrix parse_game(const std::string& text,
                             bool allow_nonpermissible = false) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed game document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("game document is not an object");
  if (!doc.contains("version") || !doc["version"].is_number_integer())
    throw ParseError("missing or non-integer field: version");
  if (doc["version"].get<int>() != 1)
    throw ParseError("unsupported version: " + doc["version"].dump());
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw ParseError("missing or non-integer field: n");
  const int n = doc["n"].get<int>();
  if (!doc.contains("payoffs") || !doc["payoffs"].is_array())
    throw ParseError("missing or non-array field: payoffs");
  const auto& rows = doc["payoffs"];
  if (static_cast<int>(rows.size()) != n)
    throw ParseError("payoffs table is not n x n: wrong row count");
  std::vector<std::int8_t> cells;
  cells.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
      throw ParseError("payoffs[" + std::to_string(i) +
                       "] is not a row of n entries");
    for (int j = 0; j < n; ++j) {
      if (!rows[i][j].is_number_integer())
        throw ParseError("payoffs[" + std::to_string(i) + "][" +
                         std::to_string(j) + "] is not an integer");
      const int v = rows[i][j].get<int>();
      if (v < -1 || v > 1)
        throw ParseError("payoffs[" + std::to_string(i) + "][" +
                         std::to_string(j) + "] entry out of domain {-1,0,1}");
      cells.push_back(static_cast<std::int8_t>(v));
    }
  }
  std::vector<std::string> names;
  if (doc.contains("actions")) {
    if (!doc["actions"].is_array() ||
        static_cast<int>(doc["actions"].size()) != n)
      throw ParseError("actions is not a list of n strings");
    for (const auto& s : doc["actions"]) {
      if (!s.is_string()) throw ParseError("actions entries must be strings");
      names.push_back(s.get<std::string>());
    }
  }
  GameMatrix g = [&] {
    try {
      return GameMatrix(n, std::move(cells), std::move(names));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }();
  if (!allow_nonpermissible) {
    auto rep = g.validate_permissible();
    if (!rep.ok())
      throw ParseError("game is not permissible: " + rep.issues.front().what);
  }
  return g;
}

inline GameMatrix load_game_file(const std::string& path,
                                 bool allow_nonpermissible = false) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read game file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_game(buf.str(), allow_nonpermissible);
}

inline void save_game_file(const GameMatrix& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write game file: " + path);
  out << serialize_game(g);
}

}  // namespace biasbreaker
