// exh: Hilbert series of exterior algebra quotients E/(f), lower bounds for
// odd-degree generic forms, certificate checks, and prime-field sampling.
//
// Exit codes: 0 success/PASS, 1 FAIL verdict, 2 usage/parse, 3 constraint
// violation, 4 I/O failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "exh/certificates.hpp"
#include "exh/result_record.hpp"
#include "exh/sampler.hpp"
#include "exh/series.hpp"

using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

std::int64_t ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("EXH_SEED")) {
    try {
      std::size_t pos = 0;
      std::uint64_t v = std::stoull(env, &pos);
      if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw exh::ParseError("EXH_SEED is not a decimal 64-bit integer");
  }
  return 0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw exh::IoError("cannot open form file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json series_json(const exh::IntSeries& s, std::size_t len) { return json(s.to_int64(len)); }

void emit(const json& j, bool pretty, const std::string& table) {
  if (pretty)
    std::cout << table;
  else
    std::cout << j.dump() << "\n";
}

std::string render_series(const exh::IntSeries& s, std::size_t len) {
  std::string out = "[";
  for (std::size_t i = 0; i < len; ++i) {
    if (i) out += ", ";
    out += s.coeff(i).str();
  }
  return out + "]";
}

struct CommonArgs {
  int n = 0;
  int d = 0;
  bool pretty = false;
};

int run_series(const CommonArgs& c, const std::string& form_file, bool random,
               std::uint64_t prime, const std::optional<std::uint64_t>& seed_flag) {
  const auto start = Clock::now();
  exh::QuotientSeries qs;
  json extra;
  if (random) {
    std::uint64_t seed = resolve_seed(seed_flag);
    exh::PrimeField field(prime);
    auto f = exh::random_form(c.n, c.d, field, seed);
    qs = exh::hilbert_series_quotient(f);
    extra["prime"] = prime;
    extra["seed"] = seed;
  } else {
    auto text = read_file(form_file);
    auto compute = [&](auto field) {
      auto f = exh::parse_form(field, c.n, text);
      if (f.degree() != c.d)
        throw exh::ConstraintError("form degree " + std::to_string(f.degree()) +
                                   " does not match --d " + std::to_string(c.d));
      return exh::hilbert_series_quotient(f);
    };
    if (prime != 0) {
      qs = compute(exh::PrimeField(prime));
      extra["prime"] = prime;
    } else {
      qs = compute(exh::RationalField{});
    }
    extra["form"] = form_file;
  }

  exh::IntSeries bound = c.d % 2 == 1 ? exh::lower_bound(c.n, c.d).a
                                      : exh::even_minimal_series(c.n, c.d);
  int cmp = exh::lex_compare(qs.series, bound);
  if (cmp < 0) throw std::logic_error("series fell below the bound: implementation bug");
  const std::string verdict = qs.series == bound ? "EQUALS_BOUND" : "ABOVE_BOUND";

  const std::size_t len = static_cast<std::size_t>(c.n) + 1;
  json j{{"command", "series"}, {"n", c.n},       {"d", c.d},
         {"series", series_json(qs.series, len)}, {"bound", series_json(bound, len)},
         {"ranks", qs.ranks},                     {"verdict", verdict},
         {"runtime_ms", ms_since(start)}};
  j.update(extra);

  std::ostringstream table;
  table << "HS(E/(f), t) for n=" << c.n << ", d=" << c.d << "\n"
        << "  series : " << render_series(qs.series, len) << "\n"
        << "  bound  : " << render_series(bound, len) << "\n"
        << "  ranks  : " << json(qs.ranks).dump() << "\n"
        << "  verdict: " << verdict << "\n";
  emit(j, c.pretty, table.str());
  return 0;
}

int run_bound(const CommonArgs& c) {
  const auto start = Clock::now();
  auto rep = exh::lower_bound(c.n, c.d);
  const std::size_t len = static_cast<std::size_t>(c.n) + 1;
  json j{{"command", "bound"},
         {"n", c.n},
         {"d", c.d},
         {"bound", series_json(rep.a, len)},
         {"b", series_json(rep.b, len)},
         {"c", series_json(rep.c, len)},
         {"p", series_json(rep.p, static_cast<std::size_t>(c.d))},
         {"identity_checked", rep.b_identity_checked},
         {"verdict", "OK"},
         {"runtime_ms", ms_since(start)}};
  std::ostringstream table;
  table << "Lower bound for n=" << c.n << ", d=" << c.d << "\n"
        << "  a = b + c : " << render_series(rep.a, len) << "\n"
        << "  b         : " << render_series(rep.b, len) << "\n"
        << "  c         : " << render_series(rep.c, len) << "\n"
        << "  p(t)      : " << render_series(rep.p, static_cast<std::size_t>(c.d)) << "\n"
        << "  B(t)(1+t^d) = t^{floor((n+d)/2+1)}p(t) + (1+t)^n : "
        << (rep.b_identity_checked ? "checked" : "unchecked") << "\n";
  emit(j, c.pretty, table.str());
  return 0;
}

int run_certify(const CommonArgs& c, const std::string& name, std::uint64_t prime) {
  const auto start = Clock::now();
  exh::CertificateSpec spec;
  spec.n = c.n;
  spec.d = c.d;
  if (name == "h_form")
    spec.name = exh::CertificateName::HForm;
  else if (name == "n_minus_2")
    spec.name = exh::CertificateName::NMinus2;
  else if (name == "cyclic" || name == "cyclic_n_minus_3")
    spec.name = exh::CertificateName::CyclicNMinus3;
  else if (name == "vinberg9")
    spec.name = exh::CertificateName::Vinberg9;
  else if (name == "h2d_power")
    spec.name = exh::CertificateName::H2dPower;
  else
    throw CLI::ValidationError("--name", "unknown certificate " + name);

  auto rep = exh::verify_certificate(spec, prime);
  const std::size_t len = static_cast<std::size_t>(c.n) + 1;
  json j{{"command", "certify"}, {"name", rep.name},        {"n", rep.n},
         {"d", rep.d},           {"mode", rep.mode},        {"verdict", rep.pass ? "PASS" : "FAIL"},
         {"runtime_ms", ms_since(start)}};
  if (spec.name != exh::CertificateName::H2dPower) {
    j["series"] = series_json(rep.actual, len);
    j["expected"] = series_json(rep.expected, len);
    if (rep.first_mismatch) j["first_mismatch"] = *rep.first_mismatch;
  }
  std::ostringstream table;
  table << "Certificate " << rep.name << " at n=" << rep.n << " (d=" << rep.d << ", " << rep.mode
        << "): " << (rep.pass ? "PASS" : "FAIL") << "\n";
  if (spec.name != exh::CertificateName::H2dPower) {
    table << "  series  : " << render_series(rep.actual, len) << "\n"
          << "  expected: " << render_series(rep.expected, len) << "\n";
    if (rep.first_mismatch) table << "  first mismatch at degree " << *rep.first_mismatch << "\n";
  }
  emit(j, c.pretty, table.str());
  return rep.pass ? 0 : 1;
}

json outcome_json(const exh::VerifyOutcome& o, const char* command) {
  const std::size_t len = static_cast<std::size_t>(o.config.n) + 1;
  json j{{"command", command},
         {"n", o.config.n},
         {"d", o.config.d},
         {"prime", o.config.prime},
         {"seed", o.config.seed},
         {"trials", o.config.trials},
         {"trials_run", o.trials_run},
         {"series", series_json(o.best_series, len)},
         {"bound", series_json(o.bound, len)},
         {"verdict", exh::verdict_name(o.verdict)},
         {"runtime_ms", o.runtime_ms}};
  if (o.first_gap_degree) j["first_gap_degree"] = *o.first_gap_degree;
  return j;
}

std::string outcome_table(const exh::VerifyOutcome& o) {
  const std::size_t len = static_cast<std::size_t>(o.config.n) + 1;
  std::ostringstream t;
  t << "n=" << o.config.n << " d=" << o.config.d << " p=" << o.config.prime
    << " seed=" << o.config.seed << " trials=" << o.trials_run << "/" << o.config.trials << " : "
    << exh::verdict_name(o.verdict) << "\n"
    << "  best  : " << render_series(o.best_series, len) << "\n"
    << "  bound : " << render_series(o.bound, len) << "\n";
  if (o.first_gap_degree) t << "  first gap at degree " << *o.first_gap_degree << "\n";
  return t.str();
}

int run_verify(const CommonArgs& c, std::uint64_t prime, const std::optional<std::uint64_t>& seed_flag,
               int trials, const std::string& out_path) {
  exh::TrialConfig cfg;
  cfg.n = c.n;
  cfg.d = c.d;
  cfg.prime = prime;
  cfg.trials = trials;
  cfg.seed = resolve_seed(seed_flag);
  auto outcome = exh::verify_minimal(cfg);
  if (!out_path.empty()) {
    exh::ResultStore store(out_path);
    store.append(exh::make_record(outcome, "verify"));
  }
  emit(outcome_json(outcome, "verify"), c.pretty, outcome_table(outcome));
  return outcome.verdict == exh::VerifyVerdict::CertifiedEqual ? 0 : 1;
}

int run_scan(int d, int n_min, int n_max, bool pretty, std::uint64_t prime,
             const std::optional<std::uint64_t>& seed_flag, int trials, const std::string& out_path,
             int jobs, bool allow_long) {
  const auto start = Clock::now();
  exh::TrialConfig defaults;
  defaults.prime = prime;
  defaults.trials = trials;
  defaults.seed = resolve_seed(seed_flag);
  exh::ScanOptions opts;
  opts.allow_long = allow_long;
  opts.jobs = jobs;
  std::optional<exh::ResultStore> store;
  if (!out_path.empty()) store.emplace(out_path);
  auto outcomes = exh::scan(d, n_min, n_max, defaults, opts, store ? &*store : nullptr);

  json results = json::array();
  std::string table;
  for (const auto& o : outcomes) {
    results.push_back(outcome_json(o, "scan"));
    table += outcome_table(o);
  }
  json j{{"command", "scan"}, {"d", d},           {"n_min", n_min},
         {"n_max", n_max},    {"results", results}, {"runtime_ms", ms_since(start)}};
  emit(j, pretty, table);
  return 0;
}

int run_multisection(bool pretty, const std::optional<int>& n, const std::optional<int>& parity_ell) {
  const auto start = Clock::now();
  if (n) {
    auto closed = exh::multisection_closed(*n);
    json direct = json::array();
    bool match = true;
    std::ostringstream table;
    table << "d=3 multisection block for n=" << *n << "\n";
    for (int i = (*n + 4) / 2; 2 * i <= *n + 9; ++i) {
      auto v = exh::multisection_direct(*n, i);
      bool ok = v == closed.coeff(static_cast<std::size_t>(i));
      match = match && ok;
      direct.push_back({{"i", i}, {"value", v.str()}, {"matches_closed", ok}});
      table << "  i=" << i << "  direct=" << v.str()
            << "  closed=" << closed.coeff(static_cast<std::size_t>(i)).str() << "\n";
    }
    json closed_coeffs = json::array();
    for (std::size_t i = 0; i < closed.size(); ++i) closed_coeffs.push_back(closed.coeff(i).str());
    json j{{"command", "multisection"}, {"n", *n},        {"closed", closed_coeffs},
           {"direct", direct},          {"verdict", match ? "MATCH" : "MISMATCH"},
           {"runtime_ms", ms_since(start)}};
    table << "  verdict: " << (match ? "MATCH" : "MISMATCH") << "\n";
    emit(j, pretty, table.str());
    return match ? 0 : 1;
  }
  auto r = exh::parity_lemma(*parity_ell);
  json j{{"command", "multisection"},
         {"parity_ell", *parity_ell},
         {"value", r.value.str()},
         {"odd", r.odd},
         {"unsigned_sum", r.unsigned_sum.str()},
         {"identity_3A", r.identity_ok},
         {"verdict", r.odd && r.identity_ok ? "OK" : "FAIL"},
         {"runtime_ms", ms_since(start)}};
  std::ostringstream table;
  table << "parity lemma l=" << *parity_ell << ": value=" << r.value.str()
        << " odd=" << (r.odd ? "yes" : "no") << " A=" << r.unsigned_sum.str()
        << " 3A=2^{4l}-1: " << (r.identity_ok ? "yes" : "no") << "\n";
  emit(j, pretty, table.str());
  return r.odd && r.identity_ok ? 0 : 1;
}

int run_refute(const CommonArgs& c) {
  const auto start = Clock::now();
  auto rep = exh::refute_conjecture61(c.n, c.d);
  json j{{"command", "refute"},
         {"n", rep.n},
         {"d", rep.d},
         {"verdict", rep.verdict},
         {"mid_degree", rep.mid},
         {"mid_binomial", rep.mid_binomial.str()},
         {"binomial_odd", rep.binomial_odd},
         {"parity_min_kernel", rep.parity_min_kernel},
         {"conjecture_c", rep.conjecture_c},
         {"runtime_ms", ms_since(start)}};
  if (rep.bound_c_index) j["bound_c_index"] = *rep.bound_c_index;
  std::ostringstream table;
  table << "Conjecture 6.1 check at n=" << rep.n << ", d=" << rep.d << ": " << rep.verdict << "\n"
        << "  middle degree " << rep.mid << ", C(n,mid) = " << rep.mid_binomial.str()
        << (rep.binomial_odd ? " (odd)" : " (even)") << "\n"
        << "  skew parity forces kernel >= " << rep.parity_min_kernel
        << ", conjectured c = " << rep.conjecture_c << "\n";
  if (rep.bound_c_index) table << "  lower bound has c = 1 at degree " << *rep.bound_c_index << "\n";
  emit(j, c.pretty, table.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hilbert series of the exterior algebra modulo a principal ideal"};
  app.require_subcommand(1);

  auto* sc_series = app.add_subcommand("series", "Hilbert series of E/(f)");
  CommonArgs a_series;
  std::string form_file;
  bool use_random = false;
  std::uint64_t prime_series = 0;
  std::optional<std::uint64_t> seed_series;
  sc_series->add_option("--n", a_series.n, "ambient variable count")->required();
  sc_series->add_option("--d", a_series.d, "form degree")->required();
  auto* opt_form = sc_series->add_option("--form", form_file, "form file (see README for grammar)");
  auto* opt_rand = sc_series->add_flag("--random", use_random, "sample a random form over F_p");
  sc_series->add_option("--prime", prime_series, "odd prime modulus (rational mode when absent)");
  sc_series->add_option("--seed", seed_series, "RNG seed (else EXH_SEED, else 0)");
  sc_series->add_flag("--pretty", a_series.pretty, "human-readable output");
  opt_form->excludes(opt_rand);

  auto* sc_bound = app.add_subcommand("bound", "lower-bound series for odd degree");
  CommonArgs a_bound;
  sc_bound->add_option("--n", a_bound.n)->required();
  sc_bound->add_option("--d", a_bound.d)->required();
  sc_bound->add_flag("--pretty", a_bound.pretty);

  auto* sc_certify = app.add_subcommand("certify", "verify an explicit certificate form");
  CommonArgs a_certify;
  std::string cert_name;
  std::uint64_t prime_certify = exh::kDefaultPrime;
  sc_certify
      ->add_option("--name", cert_name, "h_form | n_minus_2 | cyclic | vinberg9 | h2d_power")
      ->required();
  sc_certify->add_option("--n", a_certify.n)->required();
  sc_certify->add_option("--d", a_certify.d, "degree (h_form, h2d_power)");
  sc_certify->add_option("--prime", prime_certify, "modulus used above n = 11");
  sc_certify->add_flag("--pretty", a_certify.pretty);

  auto* sc_verify = app.add_subcommand("verify", "certify the bound by prime-field sampling");
  CommonArgs a_verify;
  std::uint64_t prime_verify = exh::kDefaultPrime;
  std::optional<std::uint64_t> seed_verify;
  int trials_verify = 3;
  std::string out_verify;
  sc_verify->add_option("--n", a_verify.n)->required();
  sc_verify->add_option("--d", a_verify.d)->required();
  sc_verify->add_option("--prime", prime_verify);
  sc_verify->add_option("--seed", seed_verify);
  sc_verify->add_option("--trials", trials_verify);
  sc_verify->add_option("--out", out_verify, "append a JSONL record here");
  sc_verify->add_flag("--pretty", a_verify.pretty);

  auto* sc_scan = app.add_subcommand("scan", "verify a range of n for one degree");
  int scan_d = 0, scan_nmin = 0, scan_nmax = 0, scan_jobs = 0, scan_trials = 3;
  bool scan_pretty = false, scan_long = false;
  std::uint64_t prime_scan = exh::kDefaultPrime;
  std::optional<std::uint64_t> seed_scan;
  std::string out_scan;
  sc_scan->add_option("--d", scan_d)->required();
  sc_scan->add_option("--n-min", scan_nmin)->required();
  sc_scan->add_option("--n-max", scan_nmax)->required();
  sc_scan->add_option("--prime", prime_scan);
  sc_scan->add_option("--seed", seed_scan);
  sc_scan->add_option("--trials", scan_trials);
  sc_scan->add_option("--out", out_scan, "append JSONL records here");
  sc_scan->add_option("--jobs", scan_jobs, "worker cap (default: hardware)");
  sc_scan->add_flag("--long", scan_long, "allow n above the desk ceiling");
  sc_scan->add_flag("--pretty", scan_pretty);

  auto* sc_multi = app.add_subcommand("multisection", "d=3 multisection block / parity lemma");
  bool multi_pretty = false;
  std::optional<int> multi_n, multi_parity;
  auto* opt_mn = sc_multi->add_option("--n", multi_n, "closed form vs direct summation");
  auto* opt_mp = sc_multi->add_option("--parity", multi_parity, "parity lemma at l");
  sc_multi->add_flag("--pretty", multi_pretty);
  opt_mn->excludes(opt_mp);

  auto* sc_refute = app.add_subcommand("refute", "parity refutation of conjecture 6.1");
  CommonArgs a_refute;
  a_refute.n = 21;
  a_refute.d = 11;
  sc_refute->add_option("--n", a_refute.n);
  sc_refute->add_option("--d", a_refute.d);
  sc_refute->add_flag("--pretty", a_refute.pretty);

  try {
    app.parse(argc, argv);

    if (*sc_series) {
      if (form_file.empty() == !use_random)
        throw CLI::ValidationError("series", "exactly one of --form or --random is required");
      std::uint64_t prime = prime_series;
      if (use_random && prime == 0) prime = exh::kDefaultPrime;
      return run_series(a_series, form_file, use_random, prime, seed_series);
    }
    if (*sc_bound) return run_bound(a_bound);
    if (*sc_certify) return run_certify(a_certify, cert_name, prime_certify);
    if (*sc_verify)
      return run_verify(a_verify, prime_verify, seed_verify, trials_verify, out_verify);
    if (*sc_scan) {
      int jobs = scan_jobs > 0 ? scan_jobs
                               : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
      return run_scan(scan_d, scan_nmin, scan_nmax, scan_pretty, prime_scan, seed_scan, scan_trials,
                      out_scan, jobs, scan_long);
    }
    if (*sc_multi) {
      if (multi_n.has_value() == multi_parity.has_value())
        throw CLI::ValidationError("multisection", "exactly one of --n or --parity is required");
      return run_multisection(multi_pretty, multi_n, multi_parity);
    }
    if (*sc_refute) return run_refute(a_refute);
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help path
    app.exit(e);
    return 2;
  } catch (const exh::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const exh::ConstraintError& e) {
    std::cerr << "constraint violation: " << e.what() << "\n";
    return 3;
  } catch (const exh::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
