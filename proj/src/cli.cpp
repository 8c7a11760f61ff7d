#include "qwzeta/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "qwzeta/graph.hpp"
#include "qwzeta/io.hpp"
#include "qwzeta/mahler.hpp"
#include "qwzeta/operators.hpp"
#include "qwzeta/spectra.hpp"
#include "qwzeta/verify.hpp"
#include "qwzeta/zeta.hpp"

namespace qwz::cli {

namespace {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split_list(text)) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ConfigError("bad integer '" + item + "' in list '" + text + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<Complex> parse_u_list(const std::string& text) {
  std::vector<Complex> out;
  for (const auto& item : split_list(text)) out.push_back(parse_complex(item));
  if (out.empty()) throw ConfigError("empty u list");
  return out;
}

// Sink for results: the --output file when given, otherwise the caller's stream.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw ConfigError("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

struct Common {
  int dim = 1;
  std::string sides;
  std::string marking;
  std::string us = "0.5";
  std::size_t points = 0;
  std::string output;
  std::string format = "csv";
};

void add_torus_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--d", c.dim, "Torus dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--L", c.sides, "Side length(s), comma separated");
  cmd->add_option("--marking", c.marking, "checkerboard | half | none | all | explicit:i,j,...");
}

int single_side(const Common& c, const char* what) {
  const auto sides = parse_int_list(c.sides);
  if (sides.size() != 1) throw ConfigError(std::string(what) + " needs exactly one --L value");
  return sides.front();
}

void require_marking(const Common& c, MarkingKind expected, const std::string& method) {
  if (c.marking.empty()) return;
  if (MarkingSpec::parse(c.marking).kind != expected) {
    throw ConfigError("method " + method + " does not accept marking '" + c.marking + "'");
  }
}

int cmd_zeta(const Common& c, const std::string& method_name, const std::string& ratios_text, int width,
             std::ostream& out_default) {
  const ZetaMethod method = parse_zeta_method(method_name);
  const auto us = parse_u_list(c.us);
  if (c.format != "csv" && c.format != "json") throw ConfigError("--format must be csv or json");
  const std::string canonical = to_string(method);

  std::optional<int> side;
  std::string marking_label;
  std::function<ZetaValue(Complex)> eval;

  auto torus_and_marking = [&]() {
    const int L = single_side(c, canonical.c_str());
    side = L;
    const auto spec = c.marking.empty() ? MarkingSpec::none() : MarkingSpec::parse(c.marking);
    marking_label = spec.to_string();
    auto torus = std::make_shared<TorusGraph>(build_torus(c.dim, L));
    auto marked = std::make_shared<MarkedSet>(resolve_marked(*torus, spec));
    return std::make_pair(torus, marked);
  };
  const std::size_t points = c.points;

  switch (method) {
    case ZetaMethod::Direct: {
      auto [torus, marked] = torus_and_marking();
      auto walk = std::make_shared<ComplexMatrix>(build_time_evolution(build_duplication(*torus, *marked)));
      const std::size_t n = torus->vertex_count();
      eval = [walk, n](Complex u) { return zeta_direct(*walk, n, u); };
      break;
    }
    case ZetaMethod::Factorized: {
      auto [torus, marked] = torus_and_marking();
      eval = [torus, marked](Complex u) { return zeta_factorized(*torus, *marked, u); };
      break;
    }
    case ZetaMethod::Closed1d: {
      if (c.dim != 1) throw ConfigError("method closed-1d needs --d 1");
      auto [torus, marked] = torus_and_marking();
      const auto decomp = decompose_1d(*torus, *marked);
      eval = [decomp](Complex u) { return zeta_1d_finite(decomp, u); };
      break;
    }
    case ZetaMethod::Limit1d: {
      if (c.dim != 1) throw ConfigError("method limit-1d needs --d 1");
      SegmentRatios ratios;
      if (!ratios_text.empty()) {
        const auto parts = split_list(ratios_text);
        if (parts.size() != 3) throw ConfigError("--ratios takes c_M,c_F,c_F'");
        ratios = {std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])};
      } else {
        auto [torus, marked] = torus_and_marking();
        ratios = SegmentRatios::of(decompose_1d(*torus, *marked));
      }
      const auto quad = QuadratureSpec::periodic(1, points ? points : default_quadrature_points(1));
      eval = [ratios, quad](Complex u) { return zeta_1d_limit(ratios, u, quad); };
      break;
    }
    case ZetaMethod::ClosedCase1: {
      require_marking(c, MarkingKind::Checkerboard, canonical);
      marking_label = "checkerboard";
      const int d = c.dim;
      eval = [d](Complex u) { return zeta_case1(d, u); };
      break;
    }
    case ZetaMethod::ClosedCase2: {
      require_marking(c, MarkingKind::HalfRegion, canonical);
      const int L = single_side(c, canonical.c_str());
      if (L % 2 != 0 || L < 2) throw ConfigError("method closed-case2 needs an even --L");
      side = L;
      marking_label = "half";
      const int d = c.dim;
      eval = [d, L](Complex u) { return zeta_case2_finite(d, L / 2, u); };
      break;
    }
    case ZetaMethod::LimitCase2: {
      require_marking(c, MarkingKind::HalfRegion, canonical);
      marking_label = "half";
      const auto quad = QuadratureSpec::half_angle_last(c.dim, points ? points : default_quadrature_points(c.dim));
      const int d = c.dim;
      eval = [d, quad, width](Complex u) { return zeta_case2_limit(d, u, quad, width); };
      break;
    }
    case ZetaMethod::LimitNonsearch: {
      require_marking(c, MarkingKind::None, canonical);
      marking_label = "none";
      const auto quad = QuadratureSpec::periodic(c.dim, points ? points : default_quadrature_points(c.dim));
      const int d = c.dim;
      eval = [d, quad, width](Complex u) { return zeta_nonsearch_limit(d, u, quad, width); };
      break;
    }
  }

  // Quadrature-based evaluators parallelize internally; the rest sweep over u.
  const bool inner_parallel = method == ZetaMethod::LimitCase2 || method == ZetaMethod::LimitNonsearch;
  const auto values = zeta_sweep(us, inner_parallel ? 1 : width, eval);

  Output sink(c.output, out_default);
  auto& out = sink.stream();
  if (c.format == "csv") {
    write_csv_row(out, kZetaCsvHeader);
    for (const auto& z : values) write_csv_row(out, zeta_csv_fields(z, c.dim, side, marking_label));
  } else {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& z : values) {
      const auto fields = zeta_csv_fields(z, c.dim, side, marking_label);
      nlohmann::ordered_json row;
      row["method"] = fields[0];
      row["d"] = c.dim;
      row["L"] = side ? nlohmann::ordered_json(*side) : nlohmann::ordered_json(nullptr);
      row["marking"] = marking_label;
      row["u_re"] = z.u.real();
      row["u_im"] = z.u.imag();
      row["zeta_inv_re"] = z.value.real();
      row["zeta_inv_im"] = z.value.imag();
      row["flags"] = fields[8];
      doc.push_back(row);
    }
    out << doc.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_spectra(const Common& c, std::size_t path_n, bool torus_flag, bool case2_flag, int half_side,
                std::ostream& out_default) {
  const int selected = (path_n > 0) + torus_flag + case2_flag;
  if (selected != 1) throw ConfigError("choose exactly one of --path N, --torus, --case2");
  SpectrumList closed;
  SpectrumList numeric;
  if (path_n > 0) {
    closed = path_spectrum(path_n);
    numeric = make_spectrum(symmetric_eigenvalues(path_adjacency(path_n)), SpectrumProvenance::Numeric);
  } else if (torus_flag) {
    const int L = single_side(c, "spectra --torus");
    const auto torus = build_torus(c.dim, L);
    closed = torus_adjacency_spectrum(c.dim, L);
    numeric = make_spectrum(symmetric_eigenvalues(torus_adjacency(torus)), SpectrumProvenance::Numeric);
  } else {
    if (half_side < 2) throw ConfigError("spectra --case2 needs --N >= 2");
    const auto torus = build_torus(c.dim, 2 * half_side);
    closed = case2_dirichlet_spectrum(c.dim, half_side);
    const auto p = build_dirichlet(torus, resolve_marked(torus, MarkingSpec::half_region()));
    numeric = make_spectrum(symmetric_eigenvalues(p.values), SpectrumProvenance::Numeric);
  }
  Output sink(c.output, out_default);
  auto& out = sink.stream();
  write_csv_row(out, {"index", "eigenvalue", "numeric", "residual"});
  for (std::size_t i = 0; i < closed.size(); ++i) {
    write_csv_row(out, {std::to_string(i), format_double(closed.values[i]), format_double(numeric.values[i]),
                        format_double(std::abs(closed.values[i] - numeric.values[i]))});
  }
  return kExitOk;
}

constexpr const char* kPlotScript =
    "# gnuplot script for the logarithmic zeta comparison\n"
    "set datafile separator ','\n"
    "set key autotitle columnhead top right\n"
    "set xlabel 'u'\n"
    "set ylabel 'log zeta^{-1}'\n"
    "set xrange [0:1]\n"
    "plot DATA using 1:2 with lines lw 2 title 'without search', \\\n"
    "     DATA using 1:3 with lines dt 2 lw 2 title 'with search (half-marked)'\n";

int cmd_figure1(const Common& c, double u_min, double u_max, double u_step, std::size_t points, int width,
                const std::string& plot_script, std::ostream& out_default, std::ostream& err) {
  std::vector<double> grid;
  if (!c.us.empty()) {
    for (Complex u : parse_u_list(c.us)) {
      if (u.imag() != 0.0) throw ConfigError("figure1 grid must be real");
      grid.push_back(u.real());
    }
  } else {
    if (!(u_step > 0.0)) throw ConfigError("--u-step must be positive");
    const auto count = static_cast<long>(std::floor((u_max - u_min) / u_step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) grid.push_back(u_min + static_cast<double>(i) * u_step);
  }
  for (double u : grid) {
    if (!(u > 0.0 && u < 1.0)) throw ConfigError("figure1 grid must lie strictly inside (0, 1)");
  }
  const auto table = figure1_table(c.dim, grid, points, width);
  Output sink(c.output, out_default);
  auto& out = sink.stream();
  write_csv_row(out, {"u", "L_nonsearch", "L_search", "diff"});
  for (const auto& row : table.rows) {
    write_csv_row(out, {format_double(row.u), format_double(row.nonsearch), format_double(row.search),
                        format_double(row.diff)});
  }
  if (!plot_script.empty()) {
    std::ofstream script(plot_script, std::ios::binary);
    if (!script) throw ConfigError("cannot open plot script file '" + plot_script + "'");
    script << "DATA = '" << (c.output.empty() ? std::string("figure1.csv") : c.output) << "'\n" << kPlotScript;
  }
  err << "figure1 d=" << table.dim << ": " << table.rows.size() << " rows, max |diff| = "
      << format_double(table.max_abs_diff) << " at u = " << format_double(table.u_at_max)
      << ", |diff| non-decreasing: " << (table.monotone ? "yes" : "no") << '\n';
  return kExitOk;
}

int cmd_export(const Common& c, const std::string& matrix, std::ostream& out_default) {
  const int L = single_side(c, "export");
  const auto torus = build_torus(c.dim, L);
  const auto marked = resolve_marked(torus, c.marking.empty() ? MarkingSpec::none() : MarkingSpec::parse(c.marking));
  const auto gm = build_duplication(torus, marked);
  std::optional<SparseRealMatrix> m;
  if (matrix == "K") {
    m = build_K(gm);
  } else if (matrix == "L") {
    m = build_L(gm);
  } else if (matrix == "W") {
    const auto w = build_time_evolution(gm);
    RealMatrix real(w.rows(), w.cols());
    for (std::size_t i = 0; i < w.rows(); ++i) {
      for (std::size_t j = 0; j < w.cols(); ++j) real(i, j) = w(i, j).real();
    }
    m = SparseRealMatrix::from_dense(real);
  } else if (matrix == "P") {
    m = SparseRealMatrix::from_dense(build_dirichlet(torus, marked).values);
  } else {
    throw ConfigError("--matrix must be K, L, W or P");
  }
  Output sink(c.output, out_default);
  write_triplets(sink.stream(), *m);
  return kExitOk;
}

}  // namespace

std::vector<std::string> merge_config(const std::vector<std::string>& args, const std::string& config_text) {
  std::vector<std::string> out = args;
  std::stringstream in(config_text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
    }
    if (!given) {
      out.push_back(flag);
      out.push_back(value);
    }
  }
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  try {
    // --config is expanded before parsing so that explicit flags win.
    std::vector<std::string> args;
    std::string config_path;
    for (std::size_t i = 0; i < raw_args.size(); ++i) {
      if (raw_args[i] == "--config" && i + 1 < raw_args.size()) {
        config_path = raw_args[++i];
      } else if (raw_args[i].rfind("--config=", 0) == 0) {
        config_path = raw_args[i].substr(9);
      } else {
        args.push_back(raw_args[i]);
      }
    }
    if (!config_path.empty()) {
      std::ifstream file(config_path);
      if (!file) throw ConfigError("cannot read config file '" + config_path + "'");
      std::stringstream text;
      text << file.rdbuf();
      args = merge_config(args, text.str());
    }

    CLI::App app{"Zeta functions of quantum-search walks on tori"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: QWZETA_THREADS or 1)")
        ->envname("QWZETA_THREADS")
        ->check(CLI::NonNegativeNumber);

    Common common;

    auto* verify = app.add_subcommand("verify", "Run an oracle suite and print a JSON report");
    VerifyOptions vopt;
    std::string u_list;
    verify->add_option("--suite", vopt.suite, "Suite name")->check(CLI::IsMember(kVerifySuites));
    verify->add_option("--d", vopt.dim, "Torus dimension")->check(CLI::PositiveNumber);
    verify->add_option("--L", common.sides, "Side lengths, comma separated");
    verify->add_option("--u", u_list, "Evaluation points, comma separated (complex as a+bi)");
    verify->add_option("--random-markings", vopt.random_markings, "Random markings per torus");
    verify->add_option("--seed", vopt.seed, "Seed for random markings");
    verify->add_option("--tol-det", vopt.det_tolerance, "Tolerance for determinant identities");
    verify->add_option("--tol-quad", vopt.quad_tolerance, "Tolerance for quadrature identities");
    verify->add_option("--max-dim", vopt.max_dimension, "Largest walk dimension 2*eps+m");
    verify->add_option("--points", vopt.points, "Quadrature points per axis");
    verify->add_option("--output", common.output, "Write the report here instead of stdout");

    auto* zeta = app.add_subcommand("zeta", "Evaluate zeta^{-1} with one method");
    std::string method = "direct";
    std::string ratios;
    zeta->add_option("--method", method, "direct | factorized | closed-1d | closed-case1 | closed-case2 | "
                                         "limit-1d | limit-case2 | limit-nonsearch (or aliases)");
    add_torus_options(zeta, common);
    zeta->add_option("--u", common.us, "Evaluation points, comma separated (complex as a+bi)");
    zeta->add_option("--ratios", ratios, "c_M,c_F,c_F' for limit-1d");
    zeta->add_option("--points", common.points, "Quadrature points per axis");
    zeta->add_option("--format", common.format, "csv | json");
    zeta->add_option("--output", common.output, "Output file");

    auto* figure = app.add_subcommand("figure1", "Tabulate log zeta with and without search over u in (0,1)");
    double u_min = 0.01, u_max = 0.99, u_step = 0.01;
    std::size_t fig_points = 1024;
    std::string plot_script;
    int figure_dim = 2;
    figure->add_option("--d", figure_dim, "Torus dimension")->check(CLI::PositiveNumber);
    figure->add_option("--u-min", u_min);
    figure->add_option("--u-max", u_max);
    figure->add_option("--u-step", u_step);
    figure->add_option("--u", common.us, "Explicit grid, comma separated");
    figure->add_option("--points", fig_points, "Quadrature points per axis");
    figure->add_option("--output", common.output, "CSV output file");
    figure->add_option("--plot-script", plot_script, "Also write a gnuplot script here");

    auto* spectra = app.add_subcommand("spectra", "Closed-form spectra next to numeric eigenvalues");
    std::size_t path_n = 0;
    bool torus_flag = false, case2_flag = false;
    int half_side = 0;
    spectra->add_option("--path", path_n, "Path graph D_n");
    spectra->add_flag("--torus", torus_flag, "Torus adjacency (uses --d, --L)");
    spectra->add_flag("--case2", case2_flag, "Dirichlet walk of the half-marked torus (uses --d, --N)");
    spectra->add_option("--d", common.dim)->check(CLI::PositiveNumber);
    spectra->add_option("--L", common.sides);
    spectra->add_option("--N", half_side);
    spectra->add_option("--output", common.output);

    auto* exporter = app.add_subcommand("export", "Write K, L, W or P as text triplets");
    std::string matrix = "W";
    exporter->add_option("--matrix", matrix, "K | L | W | P");
    add_torus_options(exporter, common);
    exporter->add_option("--output", common.output);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << '\n';
      return kExitConfigError;
    }
    const int width = resolve_width(threads);

    if (verify->parsed()) {
      if (!common.sides.empty()) vopt.sides = parse_int_list(common.sides);
      if (!u_list.empty()) vopt.us = parse_u_list(u_list);
      vopt.width = width;
      const auto report = run_verify(vopt);
      Output sink(common.output, out);
      sink.stream() << report.to_json() << '\n';
      return report.pass() ? kExitOk : kExitVerifyFailed;
    }
    if (zeta->parsed()) return cmd_zeta(common, method, ratios, width, out);
    if (figure->parsed()) {
      common.dim = figure_dim;
      if (figure->count("--u") == 0) common.us.clear();
      return cmd_figure1(common, u_min, u_max, u_step, fig_points, width, plot_script, out, err);
    }
    if (spectra->parsed()) return cmd_spectra(common, path_n, torus_flag, case2_flag, half_side, out);
    if (exporter->parsed()) return cmd_export(common, matrix, out);
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace qwz::cli
