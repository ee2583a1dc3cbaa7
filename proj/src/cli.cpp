#include "conjsum/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "conjsum/conjugate.hpp"
#include "conjsum/errors.hpp"
#include "conjsum/functions.hpp"
#include "conjsum/kernels.hpp"
#include "conjsum/moduli.hpp"
#include "conjsum/summability.hpp"
#include "conjsum/verify.hpp"

namespace conjsum::cli {

namespace {

/// Thrown for anything the user can fix in the invocation.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const Cell& c) {
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  if (std::holds_alternative<std::string>(c)) {
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    return quoted + "\"";
  }
  return "";
}

std::string json_field(const Cell& c) {
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<double>(c)) {
    const double v = std::get<double>(c);
    // JSON has no inf/nan literals
    if (!std::isfinite(v)) return nlohmann::json(format_double(v)).dump();
    return format_double(v);
  }
  if (std::holds_alternative<std::string>(c)) return nlohmann::json(std::get<std::string>(c)).dump();
  return "null";
}

void write_table(const Table& t, Format format, std::ostream& os) {
  if (format == Format::kCsv) {
    for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << t.columns[j];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << csv_field(row[j]);
      os << '\n';
    }
    return;
  }
  os << "[\n";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    os << "  {";
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
      os << (j ? ", " : "") << nlohmann::json(t.columns[j]).dump() << ": " << json_field(t.rows[i][j]);
    }
    os << (i + 1 < t.rows.size() ? "},\n" : "}\n");
  }
  os << "]\n";
}

void emit(const Table& t, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out.empty()) {
    write_table(t, cfg.format, out);
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file '" + cfg.out + "'");
  write_table(t, cfg.format, file);
  if (!file) throw ConfigError("failed writing output file '" + cfg.out + "'");
}

const PeriodicFunction& resolve_function(const std::string& name) {
  const auto* f = find_function(name);
  if (!f) throw ConfigError("unknown function '" + name + "'; registry: " + registry_names());
  return *f;
}

TriangularMatrix load_matrix(const std::string& spec, int n_max) {
  if (auto m = build_named_matrix(spec, n_max)) return *m;
  if (!std::filesystem::is_regular_file(spec)) {
    throw ConfigError("matrix '" + spec +
                      "' is neither a builder (cesaro, identity, delta0, nordlund-linear) nor a JSON file");
  }
  std::ifstream in(spec);
  std::stringstream buf;
  buf << in.rdbuf();
  return matrix_from_json(buf.str());
}

// Like load_matrix, but the matrix must reach row n_max.
TriangularMatrix resolve_matrix(const std::string& spec, int n_max) {
  auto m = load_matrix(spec, n_max);
  if (m.n_max() < n_max) {
    throw ConfigError("matrix '" + m.name() + "' has rows 0.." + std::to_string(m.n_max()) + " but n = " +
                      std::to_string(n_max) + " was requested");
  }
  return m;
}

std::vector<double> x_values(const RunConfig& cfg) { return cfg.x.empty() ? default_x_grid() : cfg.x; }

std::vector<double> p_values(const RunConfig& cfg) {
  if (!cfg.p.empty()) return cfg.p;
  return {1.0, 2.0, std::numeric_limits<double>::infinity()};
}

std::vector<int> n_values(const RunConfig& cfg, std::vector<int> fallback) {
  std::vector<int> ns = !cfg.n_list.empty() ? cfg.n_list : cfg.n ? std::vector<int>{*cfg.n} : fallback;
  for (int n : ns) {
    if (n < 0) throw ConfigError("n values must be nonnegative, got " + std::to_string(n));
  }
  return ns;
}

int max_of(const std::vector<int>& ns) { return *std::max_element(ns.begin(), ns.end()); }

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    body();
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const SingularIntegrandError& e) {
    err << "numerical failure: " << e.what() << " (node " << format_double(e.node()) << ")\n";
    return kExitNumerical;
  } catch (const ValidationError& e) {
    err << "invalid matrix: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {  // DomainError, bad JSON
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::out_of_range& e) {  // CutoffError
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ConfigError("bad integer '" + s + "' in list '" + text + "'");
    return v;
  };
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(item));
      continue;
    }
    const int lo = to_int(item.substr(0, dots));
    const int hi = to_int(item.substr(dots + 2));
    if (hi < lo) throw ConfigError("empty range '" + item + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "inf" || item == "infinity") {
      out.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    // [k*]pi[/d]
    const auto pos = item.find("pi");
    if (pos != std::string::npos) {
      double scale = 1.0;
      std::string head = item.substr(0, pos);
      std::string tail = item.substr(pos + 2);
      if (!head.empty() && head.back() == '*') head.pop_back();
      if (head == "-") head = "-1";
      try {
        if (!head.empty()) scale *= std::stod(head);
        if (!tail.empty()) {
          if (tail[0] != '/') throw std::invalid_argument(tail);
          scale /= std::stod(tail.substr(1));
        }
      } catch (const std::exception&) {
        throw ConfigError("bad real '" + item + "'");
      }
      out.push_back(scale * kPi);
      continue;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ConfigError("bad real '" + item + "' in list '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty real list");
  return out;
}

GridSpec default_grid() {
  GridSpec g;
  if (const char* env = std::getenv("CONJSUM_GRID_M"); env && *env) {
    try {
      std::size_t used = 0;
      g.m = std::stoi(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("CONJSUM_GRID_M is not an integer: '") + env + "'");
    }
  }
  return g;
}

int cmd_coeffs(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto& f = resolve_function(cfg.function);
    const int N = cfg.n.value_or(16);
    if (N < 0) throw ConfigError("cutoff n must be nonnegative");
    const auto c = fourier_coeffs(f, N, cfg.grid);
    Table t{{"nu", "a", "b"}, {}};
    for (int nu = 0; nu <= N; ++nu) t.rows.push_back({Cell{(long long)nu}, c.a(nu), c.b(nu)});
    emit(t, cfg, out);
  });
}

int cmd_conjugate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto& f = resolve_function(cfg.function);
    const double eps = cfg.delta.value_or(kPi / (cfg.n.value_or(16) + 1));
    Table t{{"x", "conjugate", "eps", "truncated", "levels"}, {}};
    for (double x : x_values(cfg)) {
      const auto trace = conjugate_trace(f, x, {}, cfg.grid);
      t.rows.push_back({x, trace.value, eps, conjugate_truncated(f, x, eps, cfg.grid),
                        Cell{(long long)trace.levels_used}});
    }
    emit(t, cfg, out);
  });
}

int cmd_transform(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto& f = resolve_function(cfg.function);
    const auto ns = n_values(cfg, {16});
    const int n_max = max_of(ns);
    const auto A = resolve_matrix(cfg.matrix_a, n_max);
    const auto B = resolve_matrix(cfg.matrix_b, n_max);
    const auto c = fourier_coeffs(f, std::max(n_max, kDefaultCutoff), cfg.grid);
    Table t{{"x", "n", "transform", "conj_transform"}, {}};
    for (double x : x_values(cfg)) {
      const auto plain = partial_sums(c, n_max, x, false);
      const auto conj = partial_sums(c, n_max, x, true);
      for (int n : ns) {
        t.rows.push_back({x, Cell{(long long)n}, ab_transform(plain, A, B, n), ab_transform(conj, A, B, n)});
      }
    }
    emit(t, cfg, out);
  });
}

int cmd_check_matrix(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const int n_max = cfg.n.value_or(128);
    if (n_max < 1) throw ConfigError("check-matrix needs n >= 1");
    const auto A = load_matrix(cfg.matrix_a, n_max);
    const auto B = load_matrix(cfg.matrix_b, n_max);
    const int na = std::min(n_max, A.n_max());
    const int nb = std::min(n_max, B.n_max());
    const int nab = std::min(na, nb);

    Table t{{"condition", "matrix", "min_constant", "fails", "witness", "n_max"}, {}};
    auto add = [&](const ConditionReport& r, const std::string& matrix) {
      std::string witness;
      for (std::size_t i = 0; i < r.witness.size(); ++i) witness += (i ? ";" : "") + std::to_string(r.witness[i]);
      t.rows.push_back({std::string(condition_label(r.id)), matrix, r.min_constant,
                        std::string(r.fails ? "true" : "false"), witness, Cell{(long long)r.n_max}});
    };
    add(check_condition_2_1(A, na), A.name());
    add(check_condition_2_2(A, na), A.name());
    add(check_condition_2_21(A, B, nab), A.name() + "|" + B.name());
    add(check_condition_3_2(B, nb), B.name());
    add(remark1_report(A, na), A.name());
    add(remark2_report(B, nb), B.name());
    emit(t, cfg, out);
  });
}

int cmd_moduli(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto& f = resolve_function(cfg.function);
    const int n = cfg.n.value_or(32);
    if (n < 0) throw ConfigError("n must be nonnegative");
    Table t{{"kind", "x", "p", "k", "delta", "value"}, {}};
    const Cell none{};
    for (double x : x_values(cfg)) {
      const AveragedModulus psi(f, x, true, cfg.grid);
      const AveragedModulus phi(f, x, false, cfg.grid);
      for (auto kind : {ModulusKind::kWTilde, ModulusKind::kWTildeBar, ModulusKind::kW, ModulusKind::kWBar}) {
        const auto& m = uses_psi(kind) ? psi : phi;
        const std::string label(modulus_label(kind));
        if (cfg.delta) {
          const double v = is_bar(kind) ? m.bar(*cfg.delta) : m.plain(*cfg.delta);
          t.rows.push_back({label, x, none, none, *cfg.delta, v});
          continue;
        }
        const auto profile = modulus_profile(m, kind, n);
        for (int k = 0; k <= n; ++k) {
          t.rows.push_back({label, x, none, Cell{(long long)k}, profile.delta(k), profile.values[k]});
        }
      }
    }
    if (!cfg.p.empty()) {
      for (double p : cfg.p) {
        for (bool use_phi : {false, true}) {
          const std::string label = use_phi ? "omega" : "omega_tilde";
          if (cfg.delta) {
            t.rows.push_back({label, none, p, none, *cfg.delta, classical_modulus(f, *cfg.delta, p, cfg.grid, use_phi)});
            continue;
          }
          const auto profile = classical_profile(f, n, p, cfg.grid, use_phi);
          for (int k = 0; k <= n; ++k) {
            t.rows.push_back({label, none, p, Cell{(long long)k}, kPi / (k + 1), profile[k]});
          }
        }
      }
    }
    emit(t, cfg, out);
  });
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto id = parse_theorem(cfg.theorem);
    if (!id) throw ConfigError("unknown theorem '" + cfg.theorem + "'; expected T1.51, T1.5, R1.6, T2, T2.trunc, T3, T4 or COR");
    const auto& f = resolve_function(cfg.function);
    SweepSpec spec;
    spec.theorem = *id;
    spec.n_list = n_values(cfg, parse_int_list("4..32"));
    if (!cfg.x.empty()) spec.x_grid = cfg.x;
    spec.p_list = p_values(cfg);
    spec.truncated = cfg.truncated;
    spec.grid = cfg.grid;
    const int n_max = max_of(spec.n_list);
    const auto A = resolve_matrix(cfg.matrix_a, n_max);
    const auto B = resolve_matrix(cfg.matrix_b, n_max);
    const auto rows = run_theorem(spec, f, A, B);

    Table t{{"theorem", "function", "matrix_a", "matrix_b", "x", "p", "n", "lhs", "rhs", "ratio", "flag"}, {}};
    for (const auto& r : rows) {
      t.rows.push_back({std::string(theorem_label(r.theorem)), r.function, r.matrix_a, r.matrix_b,
                        r.x ? Cell{*r.x} : Cell{}, r.p ? Cell{*r.p} : Cell{}, Cell{(long long)r.n}, r.lhs, r.rhs,
                        r.ratio, std::string(ratio_flag_label(r.flag))});
    }
    emit(t, cfg, out);
  });
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg.grid = default_grid();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  CLI::App app{"conjsum: conjugate Fourier summability toolkit"};
  app.require_subcommand(1);

  std::string n_list, x_list, p_list, format = "csv";
  std::optional<int> grid_m;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--function", cfg.function, "function name from the registry")->capture_default_str();
    sub->add_option("--n", cfg.n, "row index / cutoff / profile length");
    sub->add_option("--x", x_list, "comma list of points (accepts pi/3 style); default: j*pi/16 grid");
    sub->add_option("--grid-m", grid_m, "quadrature nodes per period (overrides CONJSUM_GRID_M)");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto matrices = [&](CLI::App* sub) {
    sub->add_option("--matrix-a", cfg.matrix_a, "builder name or matrix JSON path")->capture_default_str();
    sub->add_option("--matrix-b", cfg.matrix_b, "builder name or matrix JSON path")->capture_default_str();
  };

  auto* coeffs = app.add_subcommand("coeffs", "Fourier coefficients. Columns: nu,a,b");
  common(coeffs);

  auto* conj = app.add_subcommand("conjugate", "conjugate function. Columns: x,conjugate,eps,truncated,levels");
  common(conj);
  conj->add_option("--delta", cfg.delta, "truncation eps (default pi/(n+1))");

  auto* transform = app.add_subcommand("transform", "AB-transforms. Columns: x,n,transform,conj_transform");
  common(transform);
  matrices(transform);
  transform->add_option("--n-list", n_list, "n values: 4..32 or 8,16,32");

  auto* check = app.add_subcommand(
      "check-matrix", "matrix conditions. Columns: condition,matrix,min_constant,fails,witness,n_max");
  common(check);
  matrices(check);

  auto* moduli = app.add_subcommand("moduli", "moduli of continuity. Columns: kind,x,p,k,delta,value");
  common(moduli);
  moduli->add_option("--delta", cfg.delta, "single delta instead of the pi/(k+1) profile");
  moduli->add_option("--p", p_list, "also emit classical L^p moduli for these p (inf allowed)");

  auto* verify = app.add_subcommand(
      "verify", "bound reports. Columns: theorem,function,matrix_a,matrix_b,x,p,n,lhs,rhs,ratio,flag");
  common(verify);
  matrices(verify);
  verify->add_option("--theorem", cfg.theorem, "T1.51, T1.5, R1.6, T2, T2.trunc, T3, T4 or COR")->capture_default_str();
  verify->add_option("--n-list", n_list, "n values: 4..32 or 8,16,32");
  verify->add_option("--p", p_list, "p values for T3/T4 (default 1,2,inf)");
  verify->add_flag("--truncated", cfg.truncated, "compare against f~(x, pi/(n+1)) for R1.6, T3, T4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (grid_m) cfg.grid.m = *grid_m;
    cfg.grid.validate();
    if (!n_list.empty()) cfg.n_list = parse_int_list(n_list);
    if (!x_list.empty()) cfg.x = parse_real_list(x_list);
    if (!p_list.empty()) cfg.p = parse_real_list(p_list);
    cfg.format = format == "json" ? Format::kJson : Format::kCsv;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (coeffs->parsed()) return cmd_coeffs(cfg, out, err);
  if (conj->parsed()) return cmd_conjugate(cfg, out, err);
  if (transform->parsed()) return cmd_transform(cfg, out, err);
  if (check->parsed()) return cmd_check_matrix(cfg, out, err);
  if (moduli->parsed()) return cmd_moduli(cfg, out, err);
  return cmd_verify(cfg, out, err);
}

}  // namespace conjsum::cli
