#ifndef REDORB_SERIALIZATION_HPP
#define REDORB_SERIALIZATION_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "redorb/matrix.hpp"
#include "redorb/subspace.hpp"

namespace redorb {

using json = nlohmann::ordered_json;

/// {"rows":r,"cols":c,"entries":[["p/q",...],...]} in exact mode.
inline json to_json(const Mat<Rational>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

/// Same layout with plain numbers in floating mode.
inline json to_json(const Mat<double>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

inline Mat<Rational> mat_rational_from_json(const json& j) {
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  Mat<Rational> m(rows, cols);
  const auto& e = j.at("entries");
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) {
      const auto& cell = e.at(i).at(c);
      if (cell.is_string())
        m(i, c) = Rational::parse(cell.get<std::string>());
      else
        m(i, c) = Rational(cell.get<long>());
    }
  return m;
}

inline Mat<double> mat_double_from_json(const json& j) {
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  Mat<double> m(rows, cols);
  const auto& e = j.at("entries");
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) {
      const auto& cell = e.at(i).at(c);
      m(i, c) = cell.is_string() ? Rational::parse(cell.get<std::string>()).to_double()
                                 : cell.get<double>();
    }
  return m;
}

template <typename T>
json to_json(const Subspace<T>& s) {
  json basis = json::array();
  for (const auto& b : s.basis()) basis.push_back(to_json(b));
  return json{{"ambient_rows", s.ambient_rows()},
              {"ambient_cols", s.ambient_cols()},
              {"basis", basis}};
}

}  // namespace redorb

#endif
