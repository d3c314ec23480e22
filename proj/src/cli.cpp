#include "qgb/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgb/error.hpp"
#include "qgb/goldbach.hpp"
#include "qgb/irreducibility.hpp"
#include "qgb/mahler.hpp"

namespace qgb::cli {

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Csv, Json };

struct RunConfig {
  std::int64_t k = 0;
  std::vector<std::int64_t> k_list;
  std::string mode = "box";
  std::string engine = "fast";
  std::string f_text;
  std::vector<std::int64_t> y;
  std::optional<std::int64_t> y_min;
  std::optional<std::int64_t> y_max;
  std::int64_t step = 1;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "csv";
  // lemma2
  int d = 2;
  std::string g_lead = "(0,0)";
  bool free_lead = false;
  // mahler-check
  std::uint64_t trials = 10'000;
  int max_degree = 6;
  std::int64_t max_norm = 100;
  std::uint64_t quadrature_samples = 100;
  double tamper_scale = 1.0;
};

Json real_json(double value) { return Json(std::stod(format_real(value))); }

Json integer_json(const Integer& value) {
  if (value >= std::numeric_limits<std::int64_t>::min() && value <= std::numeric_limits<std::int64_t>::max()) {
    return Json(value.convert_to<std::int64_t>());
  }
  return Json(value.str());
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

Format parse_format(const std::string& text) { return text == "json" ? Format::Json : Format::Csv; }

std::vector<std::int64_t> y_values(const RunConfig& cfg) {
  if (!cfg.y.empty()) return cfg.y;
  if (!cfg.y_min || !cfg.y_max) throw InvalidInput("give --y, or both --y-min and --y-max");
  if (*cfg.y_max < *cfg.y_min) throw InvalidInput("--y-max must be >= --y-min");
  if (cfg.step < 1) throw InvalidInput("--step must be >= 1");
  std::vector<std::int64_t> ys;
  for (std::int64_t y = *cfg.y_min; y <= *cfg.y_max; y += cfg.step) ys.push_back(y);
  return ys;
}

// ---------------------------------------------------------------------------

int cmd_irred(const RunConfig& cfg, std::ostream& out) {
  const RingSpec ring = make_ring(cfg.k);
  const OkPolynomial f = parse_poly(cfg.f_text, ring);
  const Verdict verdict = is_irreducible(f, parse_engine(cfg.engine));
  if (parse_format(cfg.format) == Format::Json) {
    Json j;
    j["k"] = cfg.k;
    j["f"] = to_string(f);
    j["status"] = verdict.reducible() ? "reducible" : "irreducible";
    if (verdict.witness) {
      j["a"] = to_string(verdict.witness->first);
      j["b"] = to_string(verdict.witness->second);
    }
    out << j.dump() << '\n';
    return kExitOk;
  }
  if (verdict.reducible()) {
    out << "reducible: (" << to_string(verdict.witness->first) << ") * (" << to_string(verdict.witness->second)
        << ")\n";
  } else {
    out << "irreducible\n";
  }
  return kExitOk;
}

std::string sweep_csv_row(const SweepRecord& r) {
  std::ostringstream row;
  row << r.k << ',' << to_string(r.mode) << ',' << r.d << ',' << csv_field(r.f_text) << ',' << r.y << ','
      << r.T_enum << ',' << (r.T_formula ? r.T_formula->str() : "") << ',' << r.pairs_reducible << ',' << r.R
      << ',' << format_real(r.ratio_R_T) << ',' << format_real(r.ratio_R_2y) << ',' << format_real(r.ratio_R_4y);
  return row.str();
}

Json sweep_json_row(const SweepRecord& r) {
  Json j;
  j["k"] = r.k;
  j["mode"] = std::string(to_string(r.mode));
  j["d"] = r.d;
  j["f"] = r.f_text;
  j["y"] = r.y;
  j["T_enum"] = r.T_enum;
  j["T_formula"] = r.T_formula ? integer_json(*r.T_formula) : Json(nullptr);
  j["pairs_reducible"] = r.pairs_reducible;
  j["R"] = r.R;
  j["ratio_R_T"] = real_json(r.ratio_R_T);
  j["ratio_R_2y"] = real_json(r.ratio_R_2y);
  j["ratio_R_4y"] = real_json(r.ratio_R_4y);
  return j;
}

void write_fit(std::ostream& out, Format format, const std::optional<PowerLawFit>& fit,
               const std::vector<std::pair<std::string, double>>& extra) {
  if (format == Format::Json) {
    Json j;
    j["fit"] = fit ? "ok" : "insufficient data";
    if (fit) {
      j["slope"] = real_json(fit->slope);
      j["constant"] = real_json(fit->constant);
      j["log2_constant"] = real_json(fit->log2_constant);
    }
    for (const auto& [name, value] : extra) j[name] = real_json(value);
    out << j.dump() << '\n';
    return;
  }
  out << "# fit";
  if (fit) {
    out << " slope=" << format_real(fit->slope) << " constant=" << format_real(fit->constant)
        << " log2_constant=" << format_real(fit->log2_constant);
  } else {
    out << " insufficient data";
  }
  for (const auto& [name, value] : extra) out << ' ' << name << '=' << format_real(value);
  out << '\n';
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const RingSpec ring = make_ring(cfg.k);
  const OkPolynomial f = parse_poly(cfg.f_text, ring);
  const BoundMode mode = parse_bound_mode(cfg.mode);
  const auto ys = y_values(cfg);
  const Format format = parse_format(cfg.format);
  CountingOptions options;
  options.engine = parse_engine(cfg.engine);
  options.jobs = cfg.jobs;

  if (format == Format::Csv) out << kSweepCsvHeader << '\n';
  const auto records = sweep(f, mode, ys, options, [&](const SweepRecord& r) {
    if (format == Format::Csv) {
      out << sweep_csv_row(r) << '\n';
    } else {
      out << sweep_json_row(r).dump() << '\n';
    }
    out.flush();
  });

  std::optional<PowerLawFit> fit;
  std::vector<std::pair<std::string, double>> extra{{"ratio_R_2y", records.back().ratio_R_2y},
                                                    {"ratio_R_4y", records.back().ratio_R_4y}};
  try {
    fit = asymptotic_fit(records).fit;
  } catch (const InvalidInput&) {
  }
  write_fit(out, format, fit, extra);
  return kExitOk;
}

int cmd_pairs_total(const RunConfig& cfg, std::ostream& out) {
  const RingSpec ring = make_ring(cfg.k);
  const OkPolynomial f = parse_poly(cfg.f_text, ring);
  const BoundMode mode = parse_bound_mode(cfg.mode);
  const Format format = parse_format(cfg.format);
  if (format == Format::Csv) out << "k,mode,d,f,y,T_enum,T_formula\n";
  for (auto y : y_values(cfg)) {
    const PairTotals t = total_pairs(f, BoundSpec{y, mode});
    if (format == Format::Csv) {
      out << cfg.k << ',' << to_string(mode) << ',' << f.degree() << ',' << csv_field(to_string(f)) << ',' << y
          << ',' << t.enumerated << ',' << (t.formula ? t.formula->str() : "") << '\n';
    } else {
      Json j;
      j["k"] = cfg.k;
      j["mode"] = std::string(to_string(mode));
      j["d"] = f.degree();
      j["f"] = to_string(f);
      j["y"] = y;
      j["T_enum"] = t.enumerated;
      j["T_formula"] = t.formula ? integer_json(*t.formula) : Json(nullptr);
      out << j.dump() << '\n';
    }
    out.flush();
  }
  return kExitOk;
}

int cmd_lemma2(const RunConfig& cfg, std::ostream& out) {
  const RingSpec ring = make_ring(cfg.k);
  const BoundMode mode = parse_bound_mode(cfg.mode);
  if (cfg.d < 2) throw InvalidInput("--d must be >= 2");
  const OkElement lead = parse_element(cfg.g_lead);
  const Format format = parse_format(cfg.format);
  CountOptions options;
  options.engine = parse_engine(cfg.engine);
  options.jobs = cfg.jobs;
  const std::string lead_text = cfg.free_lead ? "free" : to_string(lead);

  if (format == Format::Csv) out << "k,mode,d,g_lead,y,candidates,r_y,ratio\n";
  std::vector<double> ys;
  std::vector<double> counts;
  for (auto y : y_values(cfg)) {
    const BoundSpec bound{y, mode};
    const Integer candidates = reducible_candidates(cfg.d, cfg.free_lead, bound, ring);
    const std::uint64_t r = cfg.free_lead ? count_reducible_free(cfg.d, bound, ring, options)
                                          : count_reducible_fixed_lead(cfg.d, lead, bound, ring, options);
    const double ratio = candidates == 0 ? 0.0 : static_cast<double>(r) / candidates.convert_to<double>();
    ys.push_back(static_cast<double>(y));
    counts.push_back(static_cast<double>(r));
    if (format == Format::Csv) {
      out << cfg.k << ',' << to_string(mode) << ',' << cfg.d << ',' << csv_field(lead_text) << ',' << y << ','
          << candidates.str() << ',' << r << ',' << format_real(ratio) << '\n';
    } else {
      Json j;
      j["k"] = cfg.k;
      j["mode"] = std::string(to_string(mode));
      j["d"] = cfg.d;
      j["g_lead"] = lead_text;
      j["y"] = y;
      j["candidates"] = integer_json(candidates);
      j["r_y"] = r;
      j["ratio"] = real_json(ratio);
      out << j.dump() << '\n';
    }
    out.flush();
  }
  std::optional<PowerLawFit> fit;
  try {
    fit = fit_power_law(ys, counts);
  } catch (const InvalidInput&) {
  }
  write_fit(out, format, fit, {});
  return kExitOk;
}

int cmd_mahler_check(const RunConfig& cfg, std::ostream& out) {
  SuiteConfig suite;
  suite.trials = cfg.trials;
  suite.seed = cfg.seed;
  if (!cfg.k_list.empty()) suite.ks = cfg.k_list;
  suite.max_degree = cfg.max_degree;
  suite.max_norm = cfg.max_norm;
  suite.quadrature_samples = cfg.quadrature_samples;
  suite.jobs = cfg.jobs;
  suite.rhs_scale = cfg.tamper_scale;
  if (suite.trials < 1) throw InvalidInput("--trials must be >= 1");

  const auto results = run_mahler_suites(suite);
  std::string ks;
  for (auto k : suite.ks) ks += (ks.empty() ? "" : ";") + std::to_string(k);

  const Format format = cfg.format == "csv" ? Format::Csv : Format::Json;
  if (format == Format::Csv) {
    out << "# seed=" << suite.seed << " generator=" << kGeneratorName << " ks=" << ks << '\n';
    out << "inequality,trials,failures,worst_slack,seed,counterexample\n";
  }
  bool failed = false;
  for (const auto& r : results) {
    failed = failed || r.failures > 0;
    if (format == Format::Csv) {
      out << r.inequality << ',' << r.trials << ',' << r.failures << ',' << format_real(r.worst_slack) << ','
          << r.seed << ',' << csv_field(r.counterexample.value_or("")) << '\n';
      continue;
    }
    Json j;
    j["inequality"] = r.inequality;
    j["trials"] = r.trials;
    j["failures"] = r.failures;
    j["worst_slack"] = real_json(r.worst_slack);
    j["seed"] = r.seed;
    j["generator"] = std::string(kGeneratorName);
    j["ks"] = ks;
    j["counterexample"] = r.counterexample ? Json(*r.counterexample) : Json(nullptr);
    out << j.dump() << '\n';
  }
  return failed ? kExitPropertyFailure : kExitOk;
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* cmd, RunConfig& cfg, bool with_k = true) {
  if (with_k) cmd->add_option("--k", cfg.k, "squarefree k >= 2 selecting Q(sqrt(-k))")->required();
  cmd->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", cfg.out_path, "write results to this file instead of stdout");
  cmd->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
}

void add_counting(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--mode", cfg.mode, "coefficient bound")->check(CLI::IsMember({"box", "disk"}));
  cmd->add_option("--engine", cfg.engine, "irreducibility engine")->check(CLI::IsMember({"fast", "oracle"}));
  auto* y = cmd->add_option("--y", cfg.y, "bound values (comma separated or repeated)")->delimiter(',');
  auto* y_min = cmd->add_option("--y-min", cfg.y_min, "first bound of a range");
  auto* y_max = cmd->add_option("--y-max", cfg.y_max, "last bound of a range");
  cmd->add_option("--step", cfg.step, "range step")->check(CLI::PositiveNumber);
  y->excludes(y_min)->excludes(y_max);
  y_min->needs(y_max);
  y_max->needs(y_min);
  cmd->add_option("--seed", cfg.seed, "accepted for a uniform command line; counting is deterministic");
}

int dispatch(const std::string& name, const RunConfig& cfg, std::ostream& out) {
  if (name == "irred") return cmd_irred(cfg, out);
  if (name == "sweep") return cmd_sweep(cfg, out);
  if (name == "pairs-total") return cmd_pairs_total(cfg, out);
  if (name == "lemma2") return cmd_lemma2(cfg, out);
  return cmd_mahler_check(cfg, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Goldbach representation counts for polynomials over imaginary quadratic orders", "qgoldbach"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* irred = app.add_subcommand("irred", "decide irreducibility of a monic polynomial");
  add_common(irred, cfg);
  irred->add_option("poly", cfg.f_text, "polynomial, e.g. \"x^2 + (0,1)*x + 2\"")->required();
  irred->add_option("--engine", cfg.engine, "irreducibility engine")->check(CLI::IsMember({"fast", "oracle"}));
  irred->add_option("--seed", cfg.seed, "accepted for a uniform command line; unused");

  auto* sweep_cmd = app.add_subcommand("sweep", "count representations f = g + h over a range of bounds");
  add_common(sweep_cmd, cfg);
  add_counting(sweep_cmd, cfg);
  sweep_cmd->add_option("--f", cfg.f_text, "monic polynomial of degree >= 2")->required();

  auto* pairs = app.add_subcommand("pairs-total", "count all monic pairs (enumeration and closed form)");
  add_common(pairs, cfg);
  add_counting(pairs, cfg);
  pairs->add_option("--f", cfg.f_text, "monic polynomial of degree >= 2")->required();

  auto* lemma2 = app.add_subcommand("lemma2", "count reducible monic polynomials with a fixed second coefficient");
  add_common(lemma2, cfg);
  add_counting(lemma2, cfg);
  lemma2->add_option("--d", cfg.d, "degree (>= 2)");
  lemma2->add_option("--g-lead", cfg.g_lead, "fixed coefficient of x^(d-1), e.g. \"(-1,0)\"");
  lemma2->add_flag("--free-lead", cfg.free_lead, "let the x^(d-1) coefficient range over the bound too");

  auto* mahler = app.add_subcommand("mahler-check", "run the height and Mahler-measure inequality suites");
  add_common(mahler, cfg, false);
  mahler->add_option("--k", cfg.k_list, "rings to sample (default 2,3,5,7)")->delimiter(',');
  mahler->add_option("--trials", cfg.trials, "random inputs per suite");
  mahler->add_option("--seed", cfg.seed, "generator seed");
  mahler->add_option("--max-degree", cfg.max_degree, "largest random degree")->check(CLI::Range(2, 64));
  mahler->add_option("--max-norm", cfg.max_norm, "largest coefficient norm")->check(CLI::PositiveNumber);
  mahler->add_option("--quadrature-samples", cfg.quadrature_samples, "inputs also checked by quadrature");
  mahler->add_option("--tamper-scale", cfg.tamper_scale, "test hook: scale every right-hand side")
      ->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitSyntax;
  }
  CLI::App* chosen = app.get_subcommands().front();
  // mahler-check reports JSON unless --format says otherwise.
  if (chosen == mahler && mahler->count("--format") == 0) cfg.format = "json";

  std::unique_ptr<std::ofstream> file;
  std::ostream* sink = &out;
  if (!cfg.out_path.empty()) {
    file = std::make_unique<std::ofstream>(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!*file) {
      err << "error: cannot open " << cfg.out_path << " for writing\n";
      return kExitCapacity;
    }
    sink = file.get();
  }

  try {
    return dispatch(chosen->get_name(), cfg, *sink);
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << '\n';
    return kExitSyntax;
  } catch (const InvalidParameter& e) {
    err << "invalid ring: " << e.what() << '\n';
    return kExitInvalidRing;
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const InvalidInput& e) {
    err << "precondition: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const DivisionByZero& e) {
    err << "precondition: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const Error& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitPropertyFailure;
  }
}

}  // namespace qgb::cli
