// lattice: evaluation, thresholds, trajectories, phase rows and verification from the shell.
//
//   lattice eval theta --s 1 --z 0+1i
//   lattice eval J --z 0.5+0.8660254i --a 0.3333333 --b 0.3333333 --grad
//   lattice thresholds --format text
//   lattice trajectory --kind W1 --sweep 0:2:200
//   lattice phase --sweep -1:1:256 --format json
//   lattice verify appendix
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lattice_theta/lattice_theta.hpp"

namespace {

using namespace lattice;

enum class Format { csv, json, text };

using Cell = std::variant<double, long long, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, double>) return fmt_double(v);
        else if constexpr (std::is_same_v<V, long long>) return std::to_string(v);
        else if constexpr (std::is_same_v<V, bool>) return v ? "true" : "false";
        else return v;
      },
      c);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void render(const Table& t, Format f, std::ostream& os) {
  switch (f) {
    case Format::csv: {
      for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_quote(t.columns[i]);
      os << "\n";
      for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_quote(cell_text(r[i]));
        os << "\n";
      }
      break;
    }
    case Format::json: {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& r : t.rows) {
        nlohmann::ordered_json o;
        for (std::size_t i = 0; i < r.size(); ++i)
          std::visit([&](const auto& v) { o[t.columns[i]] = v; }, r[i]);
        arr.push_back(o);
      }
      os << arr.dump(1) << "\n";
      break;
    }
    case Format::text: {
      std::vector<std::size_t> w(t.columns.size());
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = t.columns[i].size();
      for (const auto& r : t.rows)
        for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], cell_text(r[i]).size());
      auto line = [&](auto&& get) {
        for (std::size_t i = 0; i < w.size(); ++i) {
          const std::string s = get(i);
          os << s << std::string(w[i] - s.size() + (i + 1 < w.size() ? 2 : 0), ' ');
        }
        os << "\n";
      };
      line([&](std::size_t i) { return t.columns[i]; });
      for (const auto& r : t.rows) line([&](std::size_t i) { return cell_text(r[i]); });
      break;
    }
  }
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Point parse_complex(const std::string& s) {
  static const std::string num = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
  static const std::regex full("^\\s*([+-]?" + num + ")([+-]" + num + ")i\\s*$");
  static const std::regex imag("^\\s*([+-]?" + num + ")i\\s*$");
  std::smatch m;
  if (std::regex_match(s, m, full)) return Point(std::stod(m[1]), std::stod(m[2]));
  if (std::regex_match(s, m, imag)) return Point(0.0, std::stod(m[1]));
  throw UsageError("cannot parse complex number '" + s + "' (expected x+yi)");
}

struct Sweep {
  double lo, hi;
  int n;
  bool log;

  double at(int k) const {
    const double t = double(k) / (n - 1);
    return log ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
  }
};

Sweep parse_sweep(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 3 || parts.size() > 4) throw UsageError("sweep must be lo:hi:n[:log]");
  Sweep sw{};
  try {
    sw.lo = std::stod(parts[0]);
    sw.hi = std::stod(parts[1]);
    sw.n = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw UsageError("sweep must be lo:hi:n[:log]");
  }
  sw.log = parts.size() == 4;
  if (sw.log && parts[3] != "log") throw UsageError("sweep scale must be 'log'");
  if (!(sw.lo < sw.hi) || sw.n < 2) throw UsageError("sweep needs lo < hi and n >= 2");
  if (sw.log && !(sw.lo > 0)) throw UsageError("log sweep needs lo > 0");
  return sw;
}

struct Options {
  std::string format = "csv";
  std::string out;
  std::string expr;
  std::string kind = "W1";
  std::string suite = "all";
  std::string z = "0+1i";
  std::string sweep;
  std::string precision = "double";
  std::optional<double> rho, alpha, s, a, b, tol;
  int grid = 0;
  bool grad = false;
};

Format parse_format(const std::string& f) {
  if (f == "csv") return Format::csv;
  if (f == "json") return Format::json;
  if (f == "text") return Format::text;
  throw UsageError("format must be csv, json or text");
}

SeriesTruncation<double> truncation(const Options& o) {
  SeriesTruncation<double> t;
  if (o.tol) {
    if (!(*o.tol > 0)) throw UsageError("--tol must be > 0");
    t.tail_tol = *o.tol;
  }
  return t;
}

double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing ") + flag);
  return *v;
}

Table cmd_eval(const Options& o) {
  const auto trunc = truncation(o);
  const Point z = parse_complex(o.z);
  const std::string& e = o.expr;
  std::optional<Sweep> sw;
  if (!o.sweep.empty()) sw = parse_sweep(o.sweep);
  const int n = sw ? sw->n : 1;

  Table t;
  if (e == "theta" || e == "theta_shifted") {
    t.columns = {"s", "x", "y", "value", "tail_bound"};
    for (int k = 0; k < n; ++k) {
      const double s = sw ? sw->at(k) : need(o.s, "--s");
      const auto r = e == "theta" ? theta2d_bounded(s, z, trunc) : theta2d_shifted_bounded(s, z, trunc);
      t.rows.push_back({s, z.x, z.y, r.value, r.tail});
    }
  } else if (e == "W1" || e == "W2") {
    const Functional kind = e == "W1" ? Functional::W1 : Functional::W2;
    t.columns = {"rho", "x", "y", "value", "tail_bound"};
    for (int k = 0; k < n; ++k) {
      const double rho = sw ? sw->at(k) : need(o.rho, "--rho");
      const double s_shift = kind == Functional::W1 ? 2 : 1;
      const auto sh = theta2d_shifted_bounded(s_shift, z, trunc);
      const auto pl = theta2d_bounded(3 - s_shift, z, trunc);
      const double v = w_eval(kind, rho, z, trunc);
      t.rows.push_back({rho, z.x, z.y, v, sh.tail + rho * pl.tail});
    }
  } else if (e == "J") {
    if (sw) throw UsageError("--sweep is not supported for J");
    const Displacement<double> d(need(o.a, "--a"), need(o.b, "--b"));
    const auto r = j_eval_bounded(z, d, 0, 0, trunc);
    if (o.grad) {
      const auto ga = j_eval_bounded(z, d, 1, 0, trunc);
      const auto gb = j_eval_bounded(z, d, 0, 1, trunc);
      t.columns = {"x", "y", "a", "b", "value", "dJ_da", "dJ_db", "tail_bound"};
      t.rows.push_back({z.x, z.y, d.a, d.b, r.value, ga.value, gb.value, std::max({r.tail, ga.tail, gb.tail})});
    } else {
      t.columns = {"x", "y", "a", "b", "value", "tail_bound"};
      t.rows.push_back({z.x, z.y, d.a, d.b, r.value, r.tail});
    }
  } else if (e == "E_MH") {
    const Displacement<double> d(need(o.a, "--a"), need(o.b, "--b"));
    t.columns = {"alpha", "x", "y", "a", "b", "value", "tail_bound"};
    for (int k = 0; k < n; ++k) {
      const double alpha = sw ? sw->at(k) : need(o.alpha, "--alpha");
      const auto th = theta2d_bounded(1.0, z, trunc);
      const auto j = j_eval_bounded(z, d, 0, 0, trunc);
      t.rows.push_back({alpha, z.x, z.y, d.a, d.b, energy(alpha, z, d, trunc),
                        th.tail + std::abs(alpha) * j.tail});
    }
  } else {
    throw UsageError("eval target must be theta, theta_shifted, W1, W2, J or E_MH");
  }
  return t;
}

template <class T>
Table thresholds_table() {
  namespace R = reference;
  const Thresholds<T> th = compute_thresholds<T>();
  const AlphaThresholds<T> at{alpha_from_rho(th.sigma1b), alpha_from_rho(th.sigma1a)};
  const Alpha0Result<T> a0 = solve_alpha0<T>();
  Table t;
  t.columns = {"name", "computed", "reference", "delta"};
  auto row = [&](const char* name, T v, double ref) {
    t.rows.push_back({std::string(name), double(v), ref, double(v) - ref});
  };
  row("rho1", th.rho1, R::rho1);
  row("rho2", th.rho2, R::rho2);
  row("sigma1a", th.sigma1a, R::rho1);
  row("sigma1b", th.sigma1b, 1 / R::rho2);
  row("sigma2a", th.sigma2a, R::rho2);
  row("sigma2b", th.sigma2b, R::sigma2b);
  row("alpha0", a0.alpha0, R::alpha0);
  row("alpha1", at.alpha1, R::alpha1);
  row("alpha2", at.alpha2, R::alpha2);
  row("theta_alpha0", a0.theta_alpha0, R::theta_alpha0);
  row("alpha0_rough_bound", a0.rough_bound, R::alpha0_rough);
  row("consistency_sigma2b_times_rho1", th.sigma2b * th.rho1, 1.0);
  return t;
}

Table cmd_trajectory(const Options& o) {
  const auto trunc = truncation(o);
  Functional kind;
  if (o.kind == "W1") kind = Functional::W1;
  else if (o.kind == "W2") kind = Functional::W2;
  else throw UsageError("--kind must be W1 or W2");
  const Sweep sw = parse_sweep(o.sweep.empty() ? "0:2:256" : o.sweep);
  if (!(sw.lo >= 0)) throw UsageError("trajectory sweep needs rho >= 0");
  struct Row {
    TrajectoryPoint<double> p, probe;
    double w;
  };
  auto rows = parallel_map<Row>(sw.n, [&](std::size_t k) {
    const double rho = sw.at(int(k));
    const double step = k > 0 ? rho - sw.at(int(k) - 1) : 0;
    const auto p = minimizer(kind, rho, trunc);
    const auto probe = k > 0 ? minimizer(kind, rho - step / 10, trunc) : p;
    return Row{p, probe, w_eval(kind, rho, p.z, trunc)};
  });
  Table t;
  t.columns = {"rho", "x", "y", "branch", "W", "continuous"};
  for (int k = 0; k < sw.n; ++k) {
    const auto& r = rows[k];
    bool cont = true;
    if (k > 0) {
      // jump vs ten steps of the local slope (estimated over a tenth of a step)
      const double step = r.p.rho - rows[k - 1].p.rho;
      const double jump = std::hypot(r.p.z.x - rows[k - 1].p.z.x, r.p.z.y - rows[k - 1].p.z.y);
      const double slope = std::max(1.0, std::hypot(r.p.z.x - r.probe.z.x, r.p.z.y - r.probe.z.y) / (step / 10));
      cont = jump <= 10 * step * slope;
    }
    t.rows.push_back({r.p.rho, r.p.z.x, r.p.z.y, std::string(to_string(r.p.branch)), r.w, cont});
  }
  return t;
}

Table cmd_phase(const Options& o) {
  const auto trunc = truncation(o);
  const Sweep sw = parse_sweep(o.sweep.empty() ? "-1:1:256" : o.sweep);
  if (sw.lo < -1 || sw.hi > 1) throw UsageError("phase sweep must lie in [-1, 1]");
  const double alpha0 = solve_alpha0<double>(trunc).alpha0;
  auto rows = parallel_map<PhaseRow<double>>(sw.n, [&](std::size_t k) {
    const double alpha = sw.at(int(k));
    if (alpha <= 0) return hexagonal_row(alpha, trunc);
    auto row = optimal_lattice(alpha, trunc);
    if (alpha < alpha0) {
      // below alpha0 the hexagonal lattice with the (1/3,1/3) shift has the lower energy
      const double third = 1.0 / 3;
      const double e = hexagonal_third_energy(alpha, trunc);
      if (e < row.energy)
        row = {alpha, Shape::hexagonal, hexagonal_point<double>(), pi_v<double> / 3, e,
               Displacement<double>(third, third)};
    }
    return row;
  });
  Table t;
  t.columns = {"alpha", "shape", "x", "y", "angle_or_ratio", "energy", "a", "b", "below_alpha0"};
  for (const auto& r : rows)
    t.rows.push_back({r.alpha, std::string(to_string(r.shape)), r.z.x, r.z.y, r.angle_or_ratio, r.energy,
                      r.d.a, r.d.b, r.alpha > 0 && r.alpha < alpha0});
  return t;
}

Table cmd_verify(const Options& o, bool& all_pass) {
  static const std::map<std::string, Suite> suites{{"identities", Suite::identities},
                                                   {"thresholds", Suite::thresholds},
                                                   {"appendix", Suite::appendix},
                                                   {"oracle", Suite::oracle},
                                                   {"all", Suite::all}};
  const auto it = suites.find(o.suite);
  if (it == suites.end()) throw UsageError("suite must be identities, thresholds, appendix, oracle or all");
  std::vector<Check> checks;
  if (it->second == Suite::oracle && o.grid > 0) checks = verify_oracle(o.grid);
  else checks = run_suite(it->second);
  Table t;
  t.columns = {"suite", "name", "expected", "computed", "tolerance", "status"};
  all_pass = true;
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    t.rows.push_back({c.suite, c.name, c.expected, c.computed, c.tol, std::string(c.pass ? "PASS" : "FAIL")});
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice theta functions, competing functionals and the Mueller-Ho energy"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));
    sub->add_option("--out", o.out, "write output to this file instead of stdout");
    sub->add_option("--tol", o.tol, "absolute tail tolerance for series truncation");
  };

  auto* eval = app.add_subcommand("eval", "evaluate theta, theta_shifted, W1, W2, J or E_MH");
  eval->add_option("expr", o.expr, "theta | theta_shifted | W1 | W2 | J | E_MH")->required();
  eval->add_option("--z", o.z, "modulus x+yi");
  eval->add_option("--s", o.s, "inverse temperature s > 0");
  eval->add_option("--rho", o.rho, "weight rho >= 0");
  eval->add_option("--alpha", o.alpha, "coupling alpha in [-1, 1]");
  eval->add_option("--a", o.a, "displacement a");
  eval->add_option("--b", o.b, "displacement b");
  eval->add_option("--sweep", o.sweep, "lo:hi:n[:log] over s, rho or alpha");
  eval->add_flag("--grad", o.grad, "also print (dJ/da, dJ/db)");
  common(eval);

  auto* thr = app.add_subcommand("thresholds", "rho/sigma/alpha thresholds with deltas to reference values");
  thr->add_option("--precision", o.precision, "double or extended")->check(CLI::IsMember({"double", "extended"}));
  common(thr);

  auto* traj = app.add_subcommand("trajectory", "minimizer of W1 or W2 along a rho sweep");
  traj->add_option("--kind", o.kind, "W1 or W2");
  traj->add_option("--sweep", o.sweep, "lo:hi:n[:log] over rho (default 0:2:256)");
  common(traj);

  auto* phase = app.add_subcommand("phase", "Mueller-Ho optimal lattice along an alpha sweep");
  phase->add_option("--sweep", o.sweep, "lo:hi:n over alpha (default -1:1:256)");
  common(phase);

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", o.suite, "identities | thresholds | appendix | oracle | all");
  ver->add_option("--grid", o.grid, "grid size for the oracle suite (default 400)");
  common(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const Format fmt = parse_format(o.format);
    Table table;
    int code = 0;
    if (*eval) {
      table = cmd_eval(o);
    } else if (*thr) {
      table = o.precision == "extended" ? thresholds_table<long double>() : thresholds_table<double>();
    } else if (*traj) {
      table = cmd_trajectory(o);
    } else if (*phase) {
      table = cmd_phase(o);
    } else if (*ver) {
      if (o.grid != 0 && o.grid < 100) throw UsageError("--grid must be >= 100");
      bool ok = true;
      table = cmd_verify(o, ok);
      code = ok ? 0 : 1;
    }
    if (o.out.empty()) {
      render(table, fmt, std::cout);
    } else {
      std::ofstream f(o.out);
      if (!f) throw UsageError("cannot open " + o.out);
      render(table, fmt, f);
    }
    return code;
  } catch (const UsageError& e) {
    std::cerr << "lattice: " << e.what() << "\n";
  } catch (const DomainError& e) {
    std::cerr << "lattice: domain error: " << e.what() << "\n";
  } catch (const TruncationError& e) {
    std::cerr << "lattice: truncation error: " << e.what() << " (achieved " << e.achieved_bound() << ")\n";
  } catch (const std::exception& e) {
    std::cerr << "lattice: " << e.what() << "\n";
  }
  return 2;
}
