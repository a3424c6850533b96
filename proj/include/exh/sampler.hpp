#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "exh/errors.hpp"
#include "exh/form.hpp"
#include "exh/result_record.hpp"
#include "exh/series.hpp"

namespace exh {

struct TrialConfig {
  int n = 0;
  int d = 0;
  std::uint64_t prime = kDefaultPrime;
  int trials = 3;
  std::uint64_t seed = 0;
};

enum class VerifyVerdict { CertifiedEqual, Undetermined };

inline std::string verdict_name(VerifyVerdict v) {
  return v == VerifyVerdict::CertifiedEqual ? "CERTIFIED_EQUAL" : "UNDETERMINED";
}

struct VerifyOutcome {
  TrialConfig config;
  VerifyVerdict verdict = VerifyVerdict::Undetermined;
  IntSeries best_series;  // the certified series, or the coefficientwise best observed
  IntSeries bound;        // lower_bound(n, d).a
  std::optional<int> first_gap_degree;
  int trials_run = 0;
  std::int64_t runtime_ms = 0;
};

/// Uniform random form: independent coefficients in {1..p-1} on all C(n,d)
/// monomials, assigned in colex order. Fully determined by the seed.
inline Form<PrimeField> random_form(int n, int d, const PrimeField& field, std::uint64_t seed) {
  if (d < 0 || d > n) throw ConstraintError("degree out of range");
  std::mt19937_64 rng(seed);
  Form<PrimeField> f(field, n, d);
  const std::uint64_t p = field.modulus();
  for_each_subset(n, d, [&](const Monomial& m) { f.add_term(m, 1 + rng() % (p - 1)); });
  return f;
}

/// Samples generic forms over F_p and certifies when the lower bound is the
/// generic series: one matching trial suffices, because the rational rank of
/// the integer lift is at least the rank mod p while the bound holds over
/// every field of odd characteristic. Never claims non-attainment.
inline VerifyOutcome verify_minimal(const TrialConfig& cfg) {
  if (cfg.d % 2 == 0) throw ConstraintError("verify_minimal requires odd d (see even_minimal_series)");
  if (cfg.d < 1 || cfg.d > cfg.n) throw ConstraintError("degree out of range");
  if (cfg.trials < 1) throw ConstraintError("at least one trial required");
  const auto start = std::chrono::steady_clock::now();
  const PrimeField field(cfg.prime);

  VerifyOutcome out;
  out.config = cfg;
  out.bound = lower_bound(cfg.n, cfg.d).a;
  for (int t = 0; t < cfg.trials; ++t) {
    Form<PrimeField> f = random_form(cfg.n, cfg.d, field, cfg.seed + static_cast<std::uint64_t>(t));
    IntSeries series = hilbert_series_quotient(f).series;
    if (lex_compare(series, out.bound) < 0)
      throw std::logic_error("sampled series fell below the lower bound: implementation bug");
    out.trials_run = t + 1;
    if (series == out.bound) {
      out.verdict = VerifyVerdict::CertifiedEqual;
      out.best_series = series;
      out.first_gap_degree.reset();
      break;
    }
    if (t == 0) {
      out.best_series = series;
    } else {
      IntSeries best = IntSeries::zeros(series.size());
      for (std::size_t i = 0; i < series.size(); ++i)
        best.set(i, std::min(series.coeff(i), out.best_series.coeff(i)));
      out.best_series = best;
    }
  }
  if (out.verdict == VerifyVerdict::Undetermined) {
    for (std::size_t i = 0; i < std::max(out.best_series.size(), out.bound.size()); ++i)
      if (out.best_series.coeff(i) != out.bound.coeff(i)) {
        out.first_gap_degree = static_cast<int>(i);
        break;
      }
  }
  out.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return out;
}

/// Largest n the scan accepts for a given odd d without the long-running
/// flag; beyond these the mid-degree matrix dimension C(n, (n-d)/2) leaves
/// desk scale.
inline int desk_ceiling(int d) {
  switch (d) {
    case 3: return 13;
    case 5: return 11;
    case 7: return 9;
    default: {
      int best = d;
      for (int n = d; n <= kMaxVars; ++n)
        if (binom_u64(n, (n - d) / 2) <= kDenseLimit) best = n;
      return best;
    }
  }
}

struct ScanOptions {
  bool allow_long = false;  // permit n above the desk ceiling
  int jobs = 1;             // worker cap for distinct n values
};

inline ResultRecord make_record(const VerifyOutcome& o, const std::string& command) {
  ResultRecord r;
  r.timestamp = utc_timestamp();
  r.command = command;
  r.n = o.config.n;
  r.d = o.config.d;
  r.prime = o.config.prime;
  r.seed = o.config.seed;
  r.series = o.best_series.to_int64(static_cast<std::size_t>(o.config.n) + 1);
  r.bound = o.bound.to_int64(static_cast<std::size_t>(o.config.n) + 1);
  r.verdict = verdict_name(o.verdict);
  r.runtime_ms = o.runtime_ms;
  return r;
}

/// One verify_minimal per n in [n_min, n_max]; outcomes are returned in n
/// order and appended to the store (when given) in the same order.
inline std::vector<VerifyOutcome> scan(int d, int n_min, int n_max, const TrialConfig& defaults,
                                       const ScanOptions& opts = {}, ResultStore* store = nullptr) {
  if (d % 2 == 0) throw ConstraintError("scan requires odd d");
  if (n_min < d || n_min > n_max) throw ConstraintError("bad n range");
  if (n_max > kMaxVars) throw ConstraintError("n exceeds the supported variable cap");
  if (!opts.allow_long && n_max > desk_ceiling(d))
    throw ConstraintError("n above the desk ceiling for d=" + std::to_string(d) +
                          " (" + std::to_string(desk_ceiling(d)) + "); pass the long-running flag");

  const std::size_t count = static_cast<std::size_t>(n_max - n_min + 1);
  std::vector<VerifyOutcome> out(count);
  const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(count)));
  if (jobs == 1) {
    for (std::size_t k = 0; k < count; ++k) {
      TrialConfig cfg = defaults;
      cfg.n = n_min + static_cast<int>(k);
      cfg.d = d;
      out[k] = verify_minimal(cfg);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w)
      workers.emplace_back([&, w] {
        try {
          for (;;) {
            std::size_t k = next.fetch_add(1);
            if (k >= count) return;
            TrialConfig cfg = defaults;
            cfg.n = n_min + static_cast<int>(k);
            cfg.d = d;
            out[k] = verify_minimal(cfg);
          }
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    for (auto& t : workers) t.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  if (store)
    for (const auto& o : out) store->append(make_record(o, "scan"));
  return out;
}

}  // namespace exh
