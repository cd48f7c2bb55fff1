// qgrass: batch front end for the q-Grassmann intertwiner library.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qgrass/verify.hpp"

namespace {

using namespace qgrass;
using ojson = nlohmann::ordered_json;

enum class Format { Json, Csv, Table };

struct RunConfig {
  long q = 2;
  int n = 4;
  long r = 1, r1 = 1, r2 = 2, r3 = 3, s = 0, m = 4, k = 2;
  std::string form = "1";
  std::string format = "table";
  std::size_t budget = default_budget();
  int threads = 1;
  bool no_timing = false;
  bool group = false;
  bool complement = false;
  std::string suite;
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Format parse_format(const std::string& f) {
  if (f == "json") return Format::Json;
  if (f == "csv") return Format::Csv;
  if (f == "table") return Format::Table;
  throw UsageError("unknown format '" + f + "' (expected json, csv or table)");
}

/// Rows of string cells with a header; rendered as JSON objects, CSV, or an aligned table.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void emit(std::ostream& os, Format f) const {
    if (f == Format::Json) {
      ojson arr = ojson::array();
      for (const auto& row : rows) {
        ojson o;
        for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = row[i];
        arr.push_back(o);
      }
      os << arr.dump(2) << '\n';
    } else if (f == Format::Csv) {
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_cell(cells[i]);
        os << '\n';
      };
      line(header);
      for (const auto& row : rows) line(row);
    } else {
      std::vector<std::size_t> width(header.size());
      for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
      for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
          os << cells[i];
          if (i + 1 < cells.size()) os << std::string(width[i] - cells[i].size() + 2, ' ');
        }
        os << '\n';
      };
      line(header);
      for (const auto& row : rows) line(row);
    }
  }

  static std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
  }
};

std::string params_str(const Params& ps) {
  std::string s;
  for (const auto& [k, v] : ps) s += (s.empty() ? "" : " ") + k + "=" + std::to_string(v);
  return s;
}

ojson report_json(const SuiteReport& rep, bool timing) {
  ojson o;
  o["suite"] = rep.suite;
  o["q"] = rep.q;
  o["n"] = rep.n;
  ojson checks = ojson::array();
  for (const auto& c : rep.checks) {
    ojson e;
    e["name"] = c.name;
    ojson ps = ojson::object();
    for (const auto& [k, v] : c.params) ps[k] = v;
    e["params"] = ps;
    e["status"] = c.pass ? "pass" : "fail";
    e["lhs"] = c.lhs;
    e["rhs"] = c.rhs;
    if (c.constant) e["constant"] = *c.constant;
    checks.push_back(e);
  }
  o["checks"] = checks;
  if (!rep.notes.empty()) o["notes"] = rep.notes;
  o["elapsed_ms"] = timing ? rep.elapsed_ms : 0.0;
  return o;
}

void emit_reports(const std::vector<SuiteReport>& reps, Format f, bool timing, std::ostream& os) {
  if (f == Format::Json) {
    if (reps.size() == 1) {
      os << report_json(reps[0], timing).dump(2) << '\n';
    } else {
      ojson arr = ojson::array();
      for (const auto& r : reps) arr.push_back(report_json(r, timing));
      os << arr.dump(2) << '\n';
    }
    return;
  }
  if (f == Format::Csv) {
    Table t{{"suite", "q", "n", "name", "params", "status", "lhs", "rhs", "constant"}, {}};
    for (const auto& r : reps)
      for (const auto& c : r.checks)
        t.rows.push_back({r.suite, std::to_string(r.q), std::to_string(r.n), c.name, params_str(c.params),
                          c.pass ? "pass" : "fail", c.lhs, c.rhs, c.constant.value_or("")});
    t.emit(os, f);
    return;
  }
  for (const auto& r : reps) {
    os << "suite " << r.suite << " (q=" << r.q << ", n=" << r.n << "): " << r.checks.size() - r.failures() << "/"
       << r.checks.size() << " pass";
    if (timing) os << ", " << r.elapsed_ms << " ms";
    os << '\n';
    for (const auto& note : r.notes) os << "  note: " << note << '\n';
    Table t{{"status", "name", "params", "lhs", "rhs", "constant"}, {}};
    for (const auto& c : r.checks)
      t.rows.push_back({c.pass ? "pass" : "FAIL", c.name, params_str(c.params), c.lhs, c.rhs, c.constant.value_or("")});
    t.emit(os, f);
  }
}

void emit_matrix(const Mat& m, Format f, std::ostream& os) {
  if (f == Format::Json) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      ojson row = ojson::array();
      for (const auto& v : m.row(i)) row.push_back(v.str());
      rows.push_back(row);
    }
    ojson o;
    o["rows"] = m.rows();
    o["cols"] = m.cols();
    o["matrix"] = rows;
    os << o.dump(2) << '\n';
    return;
  }
  Table t;
  for (std::size_t j = 0; j < m.cols(); ++j) t.header.push_back("c" + std::to_string(j));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<std::string> row;
    for (const auto& v : m.row(i)) row.push_back(v.str());
    t.rows.push_back(std::move(row));
  }
  t.emit(os, f);
}

std::string subspace_str(const Subspace& x) {
  std::string s = "[";
  for (int i = 0; i < x.dim; ++i) {
    s += i ? " " : "";
    for (int j = 0; j < x.n; ++j) s += std::to_string(x.at(i, j));
  }
  return s + "]";
}

// ---------------------------------------------------------------------------

int cmd_qbinom(const RunConfig& cfg, Format f) {
  const QContext c(cfg.q, std::max<long>(0, cfg.m));
  const Rat v = q_binomial(cfg.m, cfg.k, c);
  if (f == Format::Table) {
    std::cout << v.str() << '\n';
  } else {
    Table{{"q", "m", "k", "value"}, {{std::to_string(cfg.q), std::to_string(cfg.m), std::to_string(cfg.k), v.str()}}}
        .emit(std::cout, f);
  }
  return 0;
}

int cmd_counts(const RunConfig& cfg, Format f) {
  const QContext c(cfg.q, cfg.n);
  const long n = cfg.n;
  Table t{{"quantity", "params", "value"}, {}};
  auto row = [&](const std::string& name, const Params& ps, const Rat& v) {
    t.rows.push_back({name, params_str(ps), v.str()});
  };
  row("gl_order", {}, gl_order(c));
  row("transvection_count", {}, transvection_count(c));
  for (long r = 0; r <= n; ++r) {
    row("subspaces", {{"r", r}}, q_binomial(n, r, c));
    row("valence", {{"r", r}}, valence(r, c));
    row("complements", {{"r", r}}, count_complements(r, c));
    const auto g = gamma_factors(c, r);
    row("gamma0", {{"r", r}}, g.gamma0);
    row("gamma1", {{"r", r}}, g.gamma1);
  }
  for (long r1 = 0; r1 <= n; ++r1)
    for (long r2 = 0; r2 <= n; ++r2) {
      const IndexRange I = index_set(c, r1, r2);
      for (long d = I.lo; d <= I.hi; ++d)
        row("pairs_at_distance", {{"r1", r1}, {"r2", r2}, {"t", d}}, count_pairs_at_distance(r1, r2, d, c));
    }
  t.emit(std::cout, f);
  return 0;
}

int cmd_enumerate(const RunConfig& cfg, Format f) {
  require_prime(cfg.q);
  if (cfg.r < 0 || cfg.r > cfg.n) throw UsageError("--r must lie in [0, n]");
  const GrassmannSpace X(cfg.q, cfg.n, static_cast<int>(cfg.r), cfg.budget);
  Table t{{"index", "basis", "pivots"}, {}};
  for (std::size_t i = 0; i < X.size(); ++i) {
    std::string piv;
    for (int p : X[i].pivot_columns()) piv += (piv.empty() ? "" : " ") + std::to_string(p);
    t.rows.push_back({std::to_string(i), subspace_str(X[i]), piv});
  }
  t.emit(std::cout, f);
  return 0;
}

int cmd_laplacian(const RunConfig& cfg, Format f) {
  require_prime(cfg.q);
  if (cfg.r < 0 || cfg.r > cfg.n) throw UsageError("--r must lie in [0, n]");
  Geometry geo(cfg.q, cfg.n, cfg.budget);
  if (cfg.group)
    emit_matrix(group_laplacian(geo.space(cfg.r), geo.transvections()), f, std::cout);
  else
    emit_matrix(geo.laplacian(cfg.r), f, std::cout);
  return 0;
}

int cmd_spectrum(const RunConfig& cfg, Format f) {
  require_prime(cfg.q);
  if (cfg.r < 0 || cfg.r > cfg.n) throw UsageError("--r must lie in [0, n]");
  Geometry geo(cfg.q, cfg.n, cfg.budget);
  const QContext& c = geo.ctx();
  const Mat& L = geo.laplacian(cfg.r);
  Table t{{"s", "eigenvalue", "multiplicity", "expected", "status"}, {}};
  bool ok = true;
  Rat total(0);
  for (long s = 0; s <= std::min(cfg.r, cfg.n - cfg.r); ++s) {
    const Rat mu = mu_eigenvalue(c, s);
    const Rat mult(static_cast<long>(nullity(detail::shifted(L, mu))));
    const Rat expect = isotypic_dimension(c, s);
    total += mult;
    ok = ok && mult == expect;
    t.rows.push_back({std::to_string(s), (-mu).str(), mult.str(), expect.str(), mult == expect ? "pass" : "fail"});
  }
  ok = ok && total == Rat(static_cast<long>(L.rows()));
  t.emit(std::cout, f);
  return ok ? 0 : 1;
}

int cmd_kernel(const RunConfig& cfg, Format f) {
  const QContext c(cfg.q, cfg.n);
  IntertwinerKernel k;
  if (cfg.form == "rodrigues") {
    k = rodrigues_eval(c, cfg.r1, cfg.r2, cfg.s);
  } else if (cfg.form == "extremal") {
    if (cfg.r2 == cfg.s)
      k = extremal_closed_form(c, cfg.r1, cfg.s, Extremal::RToS);
    else if (cfg.r1 == cfg.n - cfg.s)
      k = extremal_closed_form(c, cfg.r2, cfg.s, Extremal::NSToR);
    else
      throw UsageError("--form extremal needs r2 = s or r1 = n - s");
  } else if (cfg.form == "oracle") {
    require_prime(cfg.q);
    Geometry geo(cfg.q, cfg.n, cfg.budget);
    k = lambda_oracle_kernel(geo, cfg.r1, cfg.r2, cfg.s);
  } else if (cfg.form == "1" || cfg.form == "2" || cfg.form == "3" || cfg.form == "4") {
    k = qhahn_kernel(c, cfg.r1, cfg.r2, cfg.s, std::stoi(cfg.form));
  } else {
    throw UsageError("unknown --form '" + cfg.form + "' (expected 1, 2, 3, 4, rodrigues, extremal or oracle)");
  }
  Table t{{"t", "value"}, {}};
  for (long i = k.range.lo; i <= k.range.hi; ++i) t.rows.push_back({std::to_string(i), k.at(i).str()});
  t.emit(std::cout, f);
  return 0;
}

int cmd_radon(const RunConfig& cfg, Format f) {
  require_prime(cfg.q);
  Geometry geo(cfg.q, cfg.n, cfg.budget);
  const QContext& c = geo.ctx();
  Table t{{"quantity", "params", "value", "status"}, {}};
  bool ok = true;
  if (cfg.complement) {
    const long r1 = cfg.r1, r = cfg.r2;
    if (r1 < 0 || r < 0 || r1 + r > cfg.n) throw UsageError("complement transform needs r1 + r2 <= n");
    const Mat Rc = radon_complement(geo, r).matrix;
    for (long s = 0; s <= n_max(c, r1, r); ++s) {
      const Rat m = complement_constant(c, r, s);
      const bool pass = mat_mul(Rc, lambda_op(geo, r1, r, s).matrix) == lambda_op(geo, r1, cfg.n - r, s).matrix * m;
      ok = ok && pass;
      t.rows.push_back({"complement_constant", params_str({{"r1", r1}, {"r", r}, {"s", s}}), m.str(),
                        pass ? "pass" : "fail"});
    }
  } else {
    const long r1 = cfg.r1, r2 = cfg.r2;
    if (r1 < 0 || r1 > r2 || r2 > cfg.n) throw UsageError("inclusion transform needs 0 <= r1 <= r2 <= n");
    const auto w = radon_decomposition(c, r1, r2);
    Mat sum(geo.space(r2).size(), geo.space(r1).size());
    for (std::size_t s = 0; s < w.size(); ++s) sum += lambda_op(geo, r1, r2, static_cast<long>(s)).matrix * w[s];
    const bool pass = sum == radon_subset(geo, r1, r2).matrix;
    ok = pass;
    for (std::size_t s = 0; s < w.size(); ++s)
      t.rows.push_back({"decomposition_weight", params_str({{"r1", r1}, {"r2", r2}, {"s", static_cast<long>(s)}}),
                        w[s].str(), pass ? "pass" : "fail"});
  }
  t.emit(std::cout, f);
  return ok ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, Format f) {
  VerifyOptions opt;
  opt.budget = cfg.budget;
  std::vector<SuiteReport> reps;
  if (cfg.suite == "all") {
    std::vector<std::string> skipped;
    for (const auto& s : suite_registry()) {
      if (s.geometric && !is_prime(cfg.q)) {
        skipped.push_back(s.name);
        continue;
      }
      reps.push_back(s.run(cfg.q, cfg.n, opt));
    }
    if (!skipped.empty() && !reps.empty()) {
      std::string list;
      for (const auto& s : skipped) list += (list.empty() ? "" : ", ") + s;
      reps.front().notes.push_back("q is not prime: geometric suites skipped (" + list + ")");
    }
  } else {
    const SuiteInfo* s = find_suite(cfg.suite);
    if (!s) {
      std::string names = "all";
      for (const auto& x : suite_registry()) names += ", " + x.name;
      throw UsageError("unknown suite '" + cfg.suite + "' (expected one of: " + names + ")");
    }
    if (s->geometric) require_prime(cfg.q);
    reps.push_back(s->run(cfg.q, cfg.n, opt));
  }
  emit_reports(reps, f, !cfg.no_timing, std::cout);
  for (const auto& r : reps)
    if (!r.passed()) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact identities for intertwiners between Grassmann levels over GF(q)"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--q,--p", cfg.q, "field size (prime for geometric commands)")
        ->check(CLI::Range(2L, 1L << 20));
    sub->add_option("--n", cfg.n, "ambient dimension")->check(CLI::Range(0, 16));
    sub->add_option("--format", cfg.format, "output format: json, csv or table");
    sub->add_option("--threads", cfg.threads, "worker threads (0 = hardware concurrency)")->check(CLI::NonNegativeNumber);
    sub->add_option("--budget", cfg.budget, "maximum points per enumerated level (env QGRASS_BUDGET)");
    sub->add_flag("--no-timing", cfg.no_timing, "report elapsed_ms as 0 for reproducible output");
  };

  auto* qb = app.add_subcommand("qbinom", "Gaussian binomial [m k]_q");
  common(qb);
  qb->add_option("--m", cfg.m, "top index")->required();
  qb->add_option("--k", cfg.k, "bottom index")->required();

  auto* counts = app.add_subcommand("counts", "closed-form subspace and group counts");
  common(counts);

  auto* en = app.add_subcommand("enumerate", "list the r-dimensional subspaces in RREF");
  common(en);
  en->add_option("--r", cfg.r, "subspace dimension")->required();

  auto* lap = app.add_subcommand("laplacian", "graph (or transvection group) Laplacian on X_r");
  common(lap);
  lap->add_option("--r", cfg.r, "subspace dimension")->required();
  lap->add_flag("--group", cfg.group, "sum over transvections instead of graph neighbors");

  auto* spec = app.add_subcommand("spectrum", "Laplacian eigenvalues with exact multiplicities");
  common(spec);
  spec->add_option("--r", cfg.r, "subspace dimension")->required();

  auto* ker = app.add_subcommand("kernel", "values of the normalized kernel lambda_s^{r1,r2}(t)");
  common(ker);
  ker->add_option("--r1", cfg.r1, "source level")->required();
  ker->add_option("--r2", cfg.r2, "target level")->required();
  ker->add_option("--s", cfg.s, "eigen-index")->required();
  ker->add_option("--form", cfg.form, "1, 2, 3, 4, rodrigues, extremal or oracle (prime q)");

  auto* rad = app.add_subcommand("radon", "Radon transform decomposition (or complement constants)");
  common(rad);
  rad->add_option("--r1", cfg.r1, "source level")->required();
  rad->add_option("--r2", cfg.r2, "target level (complement: dimension r)")->required();
  rad->add_flag("--complement", cfg.complement, "complement transform R_c on X_{r2}");

  auto* ver = app.add_subcommand("verify", "run an identity-verification suite");
  common(ver);
  ver->add_option("suite", cfg.suite, "suite name or 'all'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const Format f = parse_format(cfg.format);
    set_thread_count(cfg.threads == 0 ? std::thread::hardware_concurrency() : static_cast<unsigned>(cfg.threads));
    if (*qb) return cmd_qbinom(cfg, f);
    if (*counts) return cmd_counts(cfg, f);
    if (*en) return cmd_enumerate(cfg, f);
    if (*lap) return cmd_laplacian(cfg, f);
    if (*spec) return cmd_spectrum(cfg, f);
    if (*ker) return cmd_kernel(cfg, f);
    if (*rad) return cmd_radon(cfg, f);
    if (*ver) return cmd_verify(cfg, f);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
