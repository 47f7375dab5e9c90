// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "krein/quadrature.hpp"
#include "krein/resolvent.hpp"
#include "krein/spectrum.hpp"

namespace krein::cli {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

int exit_for(const error& e) {
  return e.code() == errc::config_parse || e.code() == errc::bad_range ? input_error : math_failure;
}

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

std::string full(double value) { return fmt("%.17g", value); }

// Buffers a report and sends it to stdout or to a file in one piece.
int emit(const std::string& path, const std::string& text, std::ostream& out, std::ostream& err) {
  if (path.empty() || path == "-") {
    out << text;
    return ok;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot write '" << path << "'\n";
    return input_error;
  }
  file << text;
  return file ? ok : input_error;
}

template <class F>
decltype(auto) visit_model(const AnyModel& model, F&& f) {
  return std::visit(std::forward<F>(f), model);
}

// Runs `body` and converts library errors to exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return math_failure;
  }
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double number_field(const std::string& text, std::size_t line_no) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last || !std::isfinite(value)) {
    throw error(errc::config_parse, "points line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  return value;
}

EdgePoint edge_field(const std::string& text, std::size_t line_no) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw error(errc::config_parse, "points line " + std::to_string(line_no) + ": expected edge:coordinate");
  }
  const std::string edge_text = trim(std::string_view(text).substr(0, colon));
  long long edge = 0;
  const auto [ptr, ec] = std::from_chars(edge_text.data(), edge_text.data() + edge_text.size(), edge);
  if (ec != std::errc{} || ptr != edge_text.data() + edge_text.size() || edge_text.empty()) {
    throw error(errc::config_parse, "points line " + std::to_string(line_no) + ": bad edge '" + edge_text + "'");
  }
  return {static_cast<Eigen::Index>(edge), number_field(trim(std::string_view(text).substr(colon + 1)), line_no)};
}

struct PointRow {
  std::vector<std::string> echo;
  std::variant<std::pair<EdgePoint, EdgePoint>, std::pair<Point3, Point3>> pts;
};

std::vector<PointRow> read_points(const std::string& path, ModelKind kind) {
  std::ifstream in(path);
  if (!in) throw error(errc::config_parse, "cannot open points file '" + path + "'");
  std::vector<PointRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto f = split_fields(body);
    PointRow row;
    row.echo = f;
    if (kind == ModelKind::star) {
      if (f.size() != 2) {
        throw error(errc::config_parse, "points line " + std::to_string(line_no) + ": expected 2 fields");
      }
      row.pts = std::pair{edge_field(f[0], line_no), edge_field(f[1], line_no)};
    } else {
      if (f.size() != 6) {
        throw error(errc::config_parse, "points line " + std::to_string(line_no) + ": expected 6 fields");
      }
      Point3 x{number_field(f[0], line_no), number_field(f[1], line_no), number_field(f[2], line_no)};
      Point3 y{number_field(f[3], line_no), number_field(f[4], line_no), number_field(f[5], line_no)};
      row.pts = std::pair{x, y};
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// Row-level failures that leave the rest of the grid computable.
bool is_row_error(errc code) {
  return code == errc::coincident_points || code == errc::point_at_center || code == errc::invalid_point;
}

// ---- check suite -----------------------------------------------------------

struct CheckLine {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool skipped = false;
  std::string note;

  void record(double e) { max_error = std::isnan(e) ? kInf : std::max(max_error, e); }
  [[nodiscard]] bool passed() const { return skipped || max_error <= tolerance; }
};

CheckLine check_line(std::string name, double tolerance) {
  CheckLine line;
  line.name = std::move(name);
  line.tolerance = tolerance;
  return line;
}

complex draw_nonreal(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> re(-6.0, 6.0);
  std::uniform_real_distribution<double> im(0.1, 4.0);
  std::bernoulli_distribution flip(0.5);
  const double x = re(rng);
  const double y = im(rng);
  return {x, flip(rng) ? y : -y};
}

EdgePoint draw_point(std::mt19937_64& rng, const StarGraphModel& star) {
  std::uniform_int_distribution<Eigen::Index> edge(0, star.size() - 1);
  std::uniform_real_distribution<double> coord(0.0, 3.0);
  const Eigen::Index e = edge(rng);
  return {e, coord(rng)};
}

Point3 draw_point(std::mt19937_64& rng, const PointInteraction3DModel&) {
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  const double x = coord(rng);
  const double y = coord(rng);
  const double z = coord(rng);
  return {x, y, z};
}

// Entrywise quadrature of the Gram matrix of the deficiency fields.
ComplexMatrix quadrature_gram(const StarGraphModel& star, complex z, complex zeta) {
  const Eigen::Index n = star.size();
  const double decay = std::sqrt(-z).real() + std::sqrt(-zeta).real();
  ComplexMatrix gram = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      for (Eigen::Index e = 0; e < n; ++e) {
        gram(j, k) += integrate_half_line(
            [&](double t) {
              const EdgePoint p{e, t};
              return std::conj(star.gamma_value(j, p, zeta)) * star.gamma_value(k, p, z);
            },
            decay);
      }
    }
  }
  return gram;
}

template <class M>
std::vector<CheckLine> run_checks(const BoundaryPair& p, const M& model, const CheckOptions& opts) {
  CheckLine forms = check_line("form-equivalence", 1e-10);
  CheckLine oracle = check_line("abstract-oracle", 1e-10);
  CheckLine qfun = check_line("q-fun-quadrature", 1e-8);
  CheckLine herm = check_line("hermiticity", 1e-10);
  CheckLine canon = check_line("canonical-range", kPrincipalAngleTol);
  constexpr bool is_star = std::is_same_v<M, StarGraphModel>;
  if (!is_star) {
    qfun.skipped = true;
    qfun.note = "star model only";
  }

  std::mt19937_64 rng(opts.seed);
  for (int s = 0; s < opts.samples; ++s) {
    // All random draws happen up front so failures cannot shift the stream.
    const complex z = draw_nonreal(rng);
    complex zeta = draw_nonreal(rng);
    while (std::abs(z - std::conj(zeta)) < 1e-3) zeta = draw_nonreal(rng);
    const auto x = draw_point(rng, model);
    const auto y = draw_point(rng, model);

    try {
      const ComplexMatrix q = model.q_matrix(z);
      const ComplexMatrix c1 = correction_matrix_form1(p, q);
      const ComplexMatrix c2 = correction_matrix_form2(p, q);
      forms.record(max_abs(c1 - c2));
      // Conjugating z adjoints the correction.
      forms.record(max_abs(correction_matrix_form1(p, model.q_matrix(std::conj(z))).adjoint() - c2));
      try {
        oracle.record(max_abs(abstract_correction(p, model, z) - c1));
      } catch (const error&) {
        oracle.record(kInf);
      }
    } catch (const error&) {
      forms.record(kInf);
      oracle.record(kInf);
    }

    if constexpr (is_star) {
      const ComplexMatrix gram = gamma_gram(model, z, zeta);
      qfun.record(max_abs(gram - quadrature_gram(model, z, zeta)));
    }

    try {
      herm.record(std::abs(perturbed_green(p, model, x, y, z) - std::conj(perturbed_green(p, model, y, x, std::conj(z)))));
    } catch (const error&) {
      herm.record(kInf);
    }
  }

  try {
    const LinearRelation lambda = lambda_ab(p.a(), p.b());
    const LinearRelation range = canonical_range_form(p);
    if (lambda.dim() != range.dim()) {
      canon.record(kInf);
      canon.note = "dimension " + std::to_string(lambda.dim()) + " vs " + std::to_string(range.dim());
    } else {
      canon.record(std::max(containment_defect(lambda, range), containment_defect(range, lambda)));
    }
  } catch (const error&) {
    canon.record(kInf);
  }

  return {forms, oracle, qfun, herm, canon};
}

std::string describe_relation(const LinearRelation& rel) {
  json doc;
  doc["n"] = rel.n();
  doc["dim"] = rel.dim();
  doc["first"] = to_json(ComplexMatrix(rel.first()));
  doc["second"] = to_json(ComplexMatrix(rel.second()));
  return doc.dump(2) + "\n";
}

}  // namespace

std::optional<unsigned> threads_from_env() {
  const char* raw = std::getenv("KREIN_BC_THREADS");
  if (raw == nullptr || *raw == '\0') return 0u;
  const std::string text = trim(raw);
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

int cmd_validate(const std::string& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ModelConfig cfg = load_config(config);
    (void)make_model(cfg);
    try {
      const BoundaryPair p = BoundaryPair::validate(cfg.a, cfg.b);
      out << "PASS n=" << p.n() << " hermiticity_defect=" << fmt("%.3e", p.hermiticity_defect())
          << " tolerance=" << fmt("%.3e", p.hermiticity_tolerance()) << " rank=" << p.block_rank() << '\n';
      return static_cast<int>(ok);
    } catch (const error& e) {
      if (e.code() == errc::config_parse) throw;
      out << "FAIL " << e.what() << '\n';
      return static_cast<int>(math_failure);
    }
  });
}

int cmd_spectrum(const std::string& config, const SpectrumOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ModelConfig cfg = load_config(config);
    ScanConfig scan;
    scan.z_min = opts.z_min;
    scan.z_max = opts.z_max;
    scan.grid_points = opts.grid;
    scan.refine_tol = opts.tol;
    scan.detect_threshold = opts.threshold;
    scan.threads = opts.threads;
    validate(scan);
    const AnyModel model = make_model(cfg);
    const BoundaryPair p = BoundaryPair::validate(cfg.a, cfg.b);

    bool all_verified = true;
    json hits = json::array();
    visit_model(model, [&](const auto& m) {
      for (const EigenvalueHit& hit : scan_eigenvalues(p, m, scan)) {
        const EigenpairReport check = verify_eigenpair(p, m, hit);
        all_verified = all_verified && check.passed;
        hits.push_back({{"z", hit.z},
                        {"sigma_min", hit.sigma_min},
                        {"residual", hit.residual},
                        {"multiplicity", hit.multiplicity},
                        {"null_vector", to_json(hit.null_vector)},
                        {"verified", check.passed}});
      }
    });

    // Thread count is left out on purpose: the report must not depend on it.
    json doc;
    doc["model"] = std::string(model_name(cfg.model));
    doc["n"] = cfg.n;
    doc["scan"] = {{"z_min", scan.z_min},
                   {"z_max", scan.z_max},
                   {"grid_points", scan.grid_points},
                   {"refine_tol", scan.refine_tol},
                   {"detect_threshold", scan.detect_threshold > 0.0 ? json(scan.detect_threshold) : json("auto")}};
    doc["hits"] = std::move(hits);
    const int written = emit(opts.out, doc.dump(2) + "\n", out, err);
    if (written != ok) return written;
    if (!all_verified) {
      err << "error: a reported eigenpair failed verification\n";
      return static_cast<int>(math_failure);
    }
    return static_cast<int>(ok);
  });
}

int cmd_green(const std::string& config, const GreenOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ModelConfig cfg = load_config(config);
    const complex z = parse_complex(opts.z);
    const std::vector<PointRow> rows = read_points(opts.points, cfg.model);
    const AnyModel model = make_model(cfg);
    const BoundaryPair p = BoundaryPair::validate(cfg.a, cfg.b);

    std::ostringstream csv;
    csv << (cfg.model == ModelKind::star ? "x,y,re_G,im_G\n" : "x1,x2,x3,y1,y2,y3,re_G,im_G\n");
    visit_model(model, [&](const auto& m) {
      using M = std::decay_t<decltype(m)>;
      using Pt = typename M::point_type;
      const ResolventKernel<M> kernel(p, m, z);
      for (const PointRow& row : rows) {
        for (const std::string& field : row.echo) csv << field << ',';
        const auto& [x, y] = std::get<std::pair<Pt, Pt>>(row.pts);
        try {
          const complex g = kernel(x, y);
          csv << full(g.real()) << ',' << full(g.imag()) << '\n';
        } catch (const error& e) {
          if (!is_row_error(e.code())) throw;
          csv << "ERROR," << to_string(e.code()) << '\n';
        }
      }
    });
    return emit(opts.out, csv.str(), out, err);
  });
}

int cmd_check(const std::string& config, const CheckOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.samples < 1) throw error(errc::bad_range, "--samples must be positive");
    const ModelConfig cfg = load_config(config);
    const AnyModel model = make_model(cfg);
    std::optional<BoundaryPair> pair;
    try {
      pair = make_pair(cfg, opts.bypass_validation);
    } catch (const error& e) {
      out << "FAIL validate " << e.what() << '\n';
      return static_cast<int>(math_failure);
    }

    const auto lines = visit_model(model, [&](const auto& m) { return run_checks(*pair, m, opts); });
    std::ostringstream report;
    report << "model=" << model_name(cfg.model) << " n=" << cfg.n << " samples=" << opts.samples
           << " seed=" << opts.seed << (pair->validated() ? "" : " validation=bypassed") << '\n';
    int passed = 0;
    int counted = 0;
    for (const CheckLine& line : lines) {
      char name[24];
      std::snprintf(name, sizeof name, "%-18s", line.name.c_str());
      report << name;
      if (line.skipped) {
        report << " SKIP (" << line.note << ")\n";
        continue;
      }
      ++counted;
      passed += line.passed() ? 1 : 0;
      report << " max_error=" << fmt("%.3e", line.max_error) << " tol=" << fmt("%.0e", line.tolerance) << ' '
             << (line.passed() ? "PASS" : "FAIL");
      if (!line.note.empty()) report << " (" << line.note << ')';
      report << '\n';
    }
    report << "summary: " << passed << '/' << counted << " checks passed\n";
    out << report.str();
    return passed == counted ? static_cast<int>(ok) : static_cast<int>(math_failure);
  });
}

int cmd_relation(const std::string& config, const RelationOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    static const std::vector<std::string> ops{"to-unitary", "canonical", "adjoint", "is-selfadjoint"};
    if (std::find(ops.begin(), ops.end(), opts.op) == ops.end()) {
      throw error(errc::config_parse, "unknown --op '" + opts.op + "'");
    }
    const ModelConfig cfg = load_config(config);
    (void)make_model(cfg);
    std::optional<BoundaryPair> pair;
    try {
      pair = make_pair(cfg, opts.bypass_validation);
    } catch (const error& e) {
      out << "FAIL " << e.what() << '\n';
      return static_cast<int>(math_failure);
    }
    const BoundaryPair& p = *pair;

    if (opts.op == "to-unitary") {
      out << json{{"U", to_json(to_unitary(p))}}.dump(2) << '\n';
    } else if (opts.op == "canonical") {
      out << describe_relation(canonical_range_form(p));
    } else if (opts.op == "adjoint") {
      out << describe_relation(adjoint_relation(lambda_ab(p.a(), p.b())));
    } else {
      out << (is_selfadjoint(lambda_ab(p.a(), p.b())) ? "true" : "false") << '\n';
    }
    return static_cast<int>(ok);
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boundary-condition perturbations via the Krein resolvent formula", "krein-bc"};
  app.require_subcommand(1);

  std::string config;
  auto add_config = [&](CLI::App* sub) { sub->add_option("config", config, "JSON model config")->required(); };

  CLI::App* validate_cmd = app.add_subcommand("validate", "Check the self-adjointness criterion");
  add_config(validate_cmd);

  SpectrumOptions spectrum;
  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "Scan (zmin, zmax) for bound states");
  add_config(spectrum_cmd);
  spectrum_cmd->add_option("--zmin", spectrum.z_min, "Lower end of the window")->capture_default_str();
  spectrum_cmd->add_option("--zmax", spectrum.z_max, "Upper end of the window (< 0)")->capture_default_str();
  spectrum_cmd->add_option("--grid", spectrum.grid, "Number of grid points")->capture_default_str();
  spectrum_cmd->add_option("--tol", spectrum.tol, "Refinement tolerance in z")->capture_default_str();
  spectrum_cmd->add_option("--threshold", spectrum.threshold, "Detection threshold on sigma_min (0 = auto)");
  spectrum_cmd->add_option("--out", spectrum.out, "Report path ('-' for stdout)");

  GreenOptions green;
  CLI::App* green_cmd = app.add_subcommand("green", "Evaluate the perturbed Green function on point pairs");
  add_config(green_cmd);
  green_cmd->add_option("--z", green.z, "Spectral parameter, e.g. -1+0.5i")->required();
  green_cmd->add_option("--points", green.points, "CSV file of point pairs")->required();
  green_cmd->add_option("--out", green.out, "CSV path ('-' for stdout)");

  CheckOptions check;
  CLI::App* check_cmd = app.add_subcommand("check", "Run the identity-check suite");
  add_config(check_cmd);
  check_cmd->add_option("--samples", check.samples, "Random spectral parameters")->capture_default_str();
  check_cmd->add_option("--seed", check.seed, "RNG seed")->capture_default_str();
  check_cmd->add_flag("--no-validate", check.bypass_validation, "Skip the boundary criterion");

  RelationOptions relation;
  CLI::App* relation_cmd = app.add_subcommand("relation", "Print derived relation data");
  add_config(relation_cmd);
  relation_cmd->add_option("--op", relation.op, "to-unitary | canonical | adjoint | is-selfadjoint")->required();
  relation_cmd->add_flag("--no-validate", relation.bypass_validation, "Skip the boundary criterion");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  }

  if (validate_cmd->parsed()) return cmd_validate(config, out, err);
  if (spectrum_cmd->parsed()) {
    const auto threads = threads_from_env();
    if (!threads) {
      err << "error: KREIN_BC_THREADS must be a non-negative integer\n";
      return input_error;
    }
    spectrum.threads = *threads;
    return cmd_spectrum(config, spectrum, out, err);
  }
  if (green_cmd->parsed()) return cmd_green(config, green, out, err);
  if (check_cmd->parsed()) return cmd_check(config, check, out, err);
  return cmd_relation(config, relation, out, err);
}

}  // namespace krein::cli
