#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "exh/combinatorics.hpp"
#include "exh/errors.hpp"
#include "exh/fields.hpp"

namespace exh {

/// A homogeneous element of the exterior algebra on x_1..x_n: a sparse map
/// monomial -> coefficient. Keys are monomial bit masks, so iteration is in
/// colex order and matrix construction is reproducible. Zero coefficients
/// are never stored. The declared degree is kept even for the zero form.
template <class F>
class Form {
 public:
  using Elem = typename F::Elem;
  using TermMap = std::map<std::uint64_t, Elem>;

  Form(F field, int n, int degree) : field_(std::move(field)), n_(n), degree_(degree) {
    if (n < 0 || n > kMaxVars) throw ConstraintError("ambient variable count out of range");
    if (degree < 0) throw ConstraintError("negative degree");
  }

  static Form monomial_form(F field, const Monomial& m, Elem c) {
    Form f(std::move(field), m.n(), m.degree());
    f.add_term(m, c);
    return f;
  }

  const F& field() const { return field_; }
  int n() const { return n_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  Monomial key_monomial(std::uint64_t mask) const { return Monomial(mask, n_); }

  Elem coeff(const Monomial& m) const {
    auto it = terms_.find(m.mask());
    return it == terms_.end() ? field_.zero() : it->second;
  }

  /// Accumulate c on monomial m, dropping the term if the sum cancels.
  void add_term(const Monomial& m, const Elem& c) {
    if (m.n() != n_) throw ConstraintError("monomial ambient mismatch");
    if (m.degree() != degree_) throw ConstraintError("monomial degree mismatch");
    if (field_.is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m.mask(), c);
    if (!inserted) {
      it->second = field_.add(it->second, c);
      if (field_.is_zero(it->second)) terms_.erase(it);
    }
  }

  Form scaled(const Elem& c) const {
    Form out(field_, n_, degree_);
    if (field_.is_zero(c)) return out;
    for (const auto& [mask, a] : terms_) out.terms_.emplace(mask, field_.mul(a, c));
    return out;
  }

  Form operator-() const {
    Form out(field_, n_, degree_);
    for (const auto& [mask, a] : terms_) out.terms_.emplace(mask, field_.neg(a));
    return out;
  }

  friend Form operator+(const Form& a, const Form& b) {
    a.require_compatible(b);
    if (a.degree_ != b.degree_) throw ConstraintError("degree mismatch in form addition");
    Form out = a;
    for (const auto& [mask, c] : b.terms_) out.add_term(Monomial(mask, a.n_), c);
    return out;
  }

  friend Form operator-(const Form& a, const Form& b) { return a + (-b); }

  friend bool operator==(const Form& a, const Form& b) {
    return a.field_ == b.field_ && a.n_ == b.n_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [mask, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += field_.str(c) + "*" + Monomial(mask, n_).str();
    }
    return s;
  }

 private:
  void require_compatible(const Form& o) const {
    require_same_field(field_, o.field_);
    if (n_ != o.n_) throw ConstraintError("ambient mismatch between forms");
  }

  template <class G>
  friend Form<G> wedge(const Form<G>&, const Form<G>&);

  F field_;
  int n_;
  int degree_;
  TermMap terms_;
};

/// Bilinear wedge product: sum of σ(I,J) a_I b_J x_{I∪J} over disjoint pairs.
template <class F>
Form<F> wedge(const Form<F>& a, const Form<F>& b) {
  a.require_compatible(b);
  const F& field = a.field();
  Form<F> out(field, a.n(), a.degree() + b.degree());
  if (a.degree() + b.degree() > a.n()) return out;
  for (const auto& [ma, ca] : a.terms()) {
    Monomial I(ma, a.n());
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      Monomial J(mb, a.n());
      auto prod = field.mul(ca, cb);
      if (wedge_sign(I, J) < 0) prod = field.neg(prod);
      out.add_term(I.unite(J), prod);
    }
  }
  return out;
}

namespace detail {

inline std::string coeff_text(const RationalField&, const BigRational& a) {
  if (boost::multiprecision::denominator(a) != 1)
    throw ConstraintError("non-integer coefficient cannot be written in the form-file grammar");
  return boost::multiprecision::numerator(a).str();
}

inline std::string coeff_text(const PrimeField&, std::uint64_t a) { return std::to_string(a); }

inline int sort_sign_and_check(std::vector<int>& idx) {
  int parity = 0;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (idx[i] == idx[j]) throw ParseError("repeated index within a term");
      if (idx[i] > idx[j]) parity ^= 1;
    }
  std::sort(idx.begin(), idx.end());
  return parity ? -1 : +1;
}

}  // namespace detail

/// Parse the form-file grammar: one term per line, `c i1 i2 ... id`, `#`
/// starts a comment, blank lines ignored. Unsorted indices are accepted and
/// sign-normalized. All terms must share one degree.
template <class F>
Form<F> parse_form(const F& field, int n, std::string_view text) {
  if (n < 1 || n > kMaxVars) throw ConstraintError("ambient variable count out of range");
  std::vector<std::pair<Monomial, typename F::Elem>> parsed;
  int degree = -1;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string coeff_tok;
    if (!(ls >> coeff_tok)) continue;  // blank line

    const std::string where = " (line " + std::to_string(line_no) + ")";
    const std::size_t start = (coeff_tok[0] == '+' || coeff_tok[0] == '-') ? 1 : 0;
    if (start == coeff_tok.size() ||
        coeff_tok.find_first_not_of("0123456789", start) != std::string::npos)
      throw ParseError("malformed coefficient '" + coeff_tok + "'" + where);
    BigInt c(coeff_tok.substr(coeff_tok[0] == '+' ? 1 : 0));

    std::vector<int> idx;
    std::string tok;
    while (ls >> tok) {
      std::size_t pos = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &pos);
      } catch (const std::exception&) {
        pos = std::string::npos;
      }
      if (pos != tok.size()) throw ParseError("malformed index '" + tok + "'" + where);
      if (v < 1) throw ParseError("index must be positive" + where);
      if (v > n) throw ParseError("index " + std::to_string(v) + " exceeds n=" + std::to_string(n) + where);
      idx.push_back(v);
    }

    if (degree < 0)
      degree = static_cast<int>(idx.size());
    else if (static_cast<int>(idx.size()) != degree)
      throw ParseError("mixed degrees in form file" + where);

    int sign = detail::sort_sign_and_check(idx);
    if (sign < 0) c = -c;
    parsed.emplace_back(Monomial::from_indices(idx, n), field.from_integer(c));
  }
  if (degree < 0) throw ParseError("form file contains no terms");
  Form<F> f(field, n, degree);
  for (const auto& [m, c] : parsed) f.add_term(m, c);
  return f;
}

/// Inverse of parse_form on integer-coefficient forms.
template <class F>
std::string format_form(const Form<F>& f) {
  std::string out;
  for (const auto& [mask, c] : f.terms()) {
    out += detail::coeff_text(f.field(), c);
    for (int i : Monomial(mask, f.n()).indices()) out += " " + std::to_string(i);
    out += "\n";
  }
  return out;
}

}  // namespace exh
