// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace krein::cli {

namespace {

using nlohmann::json;

// Keeps "-0.0" out of reports.
json number_pair(complex c) { return {c.real() + 0.0, c.imag() + 0.0}; }

[[noreturn]] void fail(const std::string& what) { throw error(errc::config_parse, what); }

double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where + ": non-finite value");
  return x;
}

ComplexMatrix parse_matrix(const json& doc, const char* key, Eigen::Index n) {
  if (!doc.contains(key)) fail(std::string("missing matrix \"") + key + "\"");
  const json& rows = doc.at(key);
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
    fail(std::string(key) + ": expected " + std::to_string(n) + " rows");
  }
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      fail(std::string(key) + ": row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const json& entry = row[static_cast<std::size_t>(j)];
      const std::string where = std::string(key) + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      if (!entry.is_array() || entry.size() != 2) fail(where + ": expected [re, im]");
      m(i, j) = complex{finite_number(entry[0], where), finite_number(entry[1], where)};
    }
  }
  return m;
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw error(errc::config_parse, "malformed number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

ModelConfig parse_config(const json& doc) {
  if (!doc.is_object()) fail("top level must be an object");
  ModelConfig cfg;
  if (!doc.contains("model") || !doc.at("model").is_string()) fail("missing string field \"model\"");
  const std::string model = doc.at("model").get<std::string>();
  if (model == "star") {
    cfg.model = ModelKind::star;
  } else if (model == "point3d") {
    cfg.model = ModelKind::point3d;
  } else {
    fail("unknown model '" + model + "'");
  }
  if (!doc.contains("n") || !doc.at("n").is_number_integer() || doc.at("n").get<long long>() < 1) {
    fail("field \"n\" must be a positive integer");
  }
  cfg.n = static_cast<Eigen::Index>(doc.at("n").get<long long>());

  if (cfg.model == ModelKind::point3d) {
    if (!doc.contains("centers") || !doc.at("centers").is_array()) fail("point3d requires \"centers\"");
    const json& centers = doc.at("centers");
    if (static_cast<Eigen::Index>(centers.size()) != cfg.n) fail("\"centers\" must have n entries");
    for (std::size_t k = 0; k < centers.size(); ++k) {
      const json& c = centers[k];
      const std::string where = "centers[" + std::to_string(k) + "]";
      if (!c.is_array() || c.size() != 3) fail(where + ": expected [x, y, z]");
      cfg.centers.push_back({finite_number(c[0], where), finite_number(c[1], where), finite_number(c[2], where)});
    }
  } else if (doc.contains("centers")) {
    fail("\"centers\" is only valid for the point3d model");
  }

  cfg.a = parse_matrix(doc, "A", cfg.n);
  cfg.b = parse_matrix(doc, "B", cfg.n);
  return cfg;
}

ModelConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail(path + ": " + e.what());
  }
  return parse_config(doc);
}

AnyModel make_model(const ModelConfig& cfg) {
  try {
    if (cfg.model == ModelKind::star) return StarGraphModel(cfg.n);
    return PointInteraction3DModel(cfg.centers);
  } catch (const error& e) {
    fail(e.what());
  }
}

BoundaryPair make_pair(const ModelConfig& cfg, bool bypass_validation) {
  if (bypass_validation) return BoundaryPair::unchecked(cfg.a, cfg.b);
  return BoundaryPair::validate(cfg.a, cfg.b);
}

std::string_view model_name(ModelKind kind) { return kind == ModelKind::star ? "star" : "point3d"; }

complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw error(errc::config_parse, "empty complex literal");
  if (s.back() != 'i') return {parse_double(s), 0.0};

  s.pop_back();
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re_part = split == std::string::npos ? std::string() : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  const double re = re_part.empty() ? 0.0 : parse_double(re_part);
  return {re, parse_double(im_part)};
}

nlohmann::json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number_pair(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number_pair(v[i]));
  return out;
}

}  // namespace krein::cli
