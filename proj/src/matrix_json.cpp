#include "endolift/matrix_json.hpp"

#include <cstdio>

#include "endolift/error.hpp"

namespace endolift {

using nlohmann::json;

json ring_json_gf(int m) { return {{"kind", "gf"}, {"m", m}}; }
json ring_json_zmod(int n) { return {{"kind", "zmod"}, {"n", n}}; }

json matrix_to_json(const FMatrix& a) {
  json data = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    if (a.packed()) {
      for (std::uint64_t w : a.bits().row(i)) {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(w));
        row.push_back(buf);
      }
    } else {
      for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(a.get(i, j));
    }
    data.push_back(std::move(row));
  }
  return {{"ring", ring_json_gf(a.degree())}, {"rows", a.rows()}, {"cols", a.cols()}, {"data", data}};
}

json matrix_to_json(const ZMatrix& a) {
  json data = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(a.get(i, j));
    data.push_back(std::move(row));
  }
  return {{"ring", ring_json_zmod(a.level())}, {"rows", a.rows()}, {"cols", a.cols()}, {"data", data}};
}

namespace {

void check_shape(const json& j, std::size_t& rows, std::size_t& cols) {
  if (!j.is_object() || !j.contains("ring") || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data"))
    throw Error("matrix JSON needs ring, rows, cols, data");
  rows = j.at("rows").get<std::size_t>();
  cols = j.at("cols").get<std::size_t>();
  if (!j.at("data").is_array() || j.at("data").size() != rows)
    throw DimensionMismatch("matrix JSON: data has the wrong number of rows");
}

}  // namespace

FMatrix fmatrix_from_json(const json& j) {
  std::size_t rows = 0, cols = 0;
  check_shape(j, rows, cols);
  const json& ring = j.at("ring");
  if (ring.value("kind", "") != "gf") throw RingMismatch("expected a GF(2^m) matrix");
  const int m = ring.at("m").get<int>();
  FMatrix a(m, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j.at("data")[i];
    if (m == 1) {
      if (row.size() != gf2::words_for(cols)) throw DimensionMismatch("matrix JSON: row word count");
      auto words = a.bits().row(i);
      for (std::size_t w = 0; w < words.size(); ++w) {
        const auto s = row[w].get<std::string>();
        std::size_t used = 0;
        words[w] = std::stoull(s, &used, 16);
        if (used != s.size()) throw Error("matrix JSON: bad hex word '" + s + "'");
      }
      const std::size_t tail = cols % gf2::kWordBits;
      if (tail && !words.empty() && (words.back() >> tail))
        throw DimensionMismatch("matrix JSON: bits set beyond the last column");
    } else {
      if (row.size() != cols) throw DimensionMismatch("matrix JSON: row length");
      for (std::size_t c = 0; c < cols; ++c) {
        const auto v = row[c].get<unsigned>();
        if (v >= (1u << m)) throw RingMismatch("matrix JSON: entry outside GF(2^m)");
        a.set(i, c, static_cast<GfElem>(v));
      }
    }
  }
  return a;
}

ZMatrix zmatrix_from_json(const json& j) {
  std::size_t rows = 0, cols = 0;
  check_shape(j, rows, cols);
  const json& ring = j.at("ring");
  if (ring.value("kind", "") != "zmod") throw RingMismatch("expected a Z/2^n matrix");
  ZMatrix a(ring.at("n").get<int>(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j.at("data")[i];
    if (row.size() != cols) throw DimensionMismatch("matrix JSON: row length");
    for (std::size_t c = 0; c < cols; ++c) a.set(i, c, static_cast<std::int64_t>(row[c].get<std::uint64_t>()));
  }
  return a;
}

}  // namespace endolift
