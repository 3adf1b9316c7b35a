#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "deltak/errors.hpp"
#include "deltak/ratfunc.hpp"
#include "deltak/rational.hpp"

namespace deltak {

/// Strictly increasing 0-based basis indices; e_{i1} ^ ... ^ e_{ip}.
using IndexSubset = std::vector<std::uint32_t>;

inline std::string field_to_string(const Rational& q) { return to_string(q); }
inline std::string field_to_string(const RatFunc& f) { return f.to_string(); }

/// Homogeneous element of the p-th exterior power of F^N, stored sparsely.
template <class F>
class ExtVector {
 public:
  ExtVector(std::size_t dim, unsigned grade) : dim_(dim), grade_(grade) {
    if (grade > dim) throw PreconditionError("ExtVector: grade exceeds ambient dimension");
  }

  static ExtVector scalar(std::size_t dim, const F& c) {
    ExtVector v(dim, 0);
    v.add(IndexSubset{}, c);
    return v;
  }
  /// c * e_i (0-based).
  static ExtVector basis(std::size_t dim, std::size_t i, const F& c) {
    ExtVector v(dim, 1);
    v.add(IndexSubset{static_cast<std::uint32_t>(i)}, c);
    return v;
  }
  static ExtVector from_coordinates(const std::vector<F>& coords) {
    ExtVector v(coords.size(), 1);
    for (std::size_t i = 0; i < coords.size(); ++i) v.add(IndexSubset{static_cast<std::uint32_t>(i)}, coords[i]);
    return v;
  }

  std::size_t dim() const { return dim_; }
  unsigned grade() const { return grade_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<IndexSubset, F>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of the subset, or nullptr when it is zero.
  const F* coefficient(const IndexSubset& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? nullptr : &it->second;
  }

  void add(const IndexSubset& s, const F& c) {
    if (s.size() != grade_) throw PreconditionError("ExtVector: subset of the wrong grade");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] >= dim_ || (i > 0 && s[i - 1] >= s[i])) throw PreconditionError("ExtVector: subset not strictly increasing in range");
    }
    if (deltak::is_zero(c)) return;
    auto [it, fresh] = terms_.emplace(s, c);
    if (fresh) return;
    it->second = it->second + c;
    if (deltak::is_zero(it->second)) terms_.erase(it);
  }

  ExtVector& operator+=(const ExtVector& o) {
    check_compatible(o);
    for (const auto& [s, c] : o.terms_) add(s, c);
    return *this;
  }
  ExtVector& operator-=(const ExtVector& o) {
    check_compatible(o);
    for (const auto& [s, c] : o.terms_) add(s, F(-c));
    return *this;
  }
  friend ExtVector operator+(ExtVector a, const ExtVector& b) { return a += b; }
  friend ExtVector operator-(ExtVector a, const ExtVector& b) { return a -= b; }
  ExtVector operator-() const {
    ExtVector r(dim_, grade_);
    for (const auto& [s, c] : terms_) r.terms_.emplace(s, F(-c));
    return r;
  }
  friend ExtVector operator*(const F& c, const ExtVector& v) {
    ExtVector r(v.dim_, v.grade_);
    if (deltak::is_zero(c)) return r;
    for (const auto& [s, x] : v.terms_) r.terms_.emplace(s, F(c * x));
    return r;
  }

  bool operator==(const ExtVector& o) const { return dim_ == o.dim_ && grade_ == o.grade_ && terms_ == o.terms_; }

  /// "2*e1^e2 - e3"; 1-based indices, "0" for zero.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [s, c] : terms_) {
      std::string cs = field_to_string(c);
      bool neg = !cs.empty() && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos;
      if (neg) cs.erase(0, 1);
      if (cs.find_first_of("+-/") != std::string::npos) cs = "(" + cs + ")";
      out << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      first = false;
      if (s.empty()) {
        out << cs;
        continue;
      }
      if (cs != "1") out << cs << '*';
      for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "^" : "") << 'e' << (s[i] + 1);
    }
    return out.str();
  }

 private:
  void check_compatible(const ExtVector& o) const {
    if (dim_ != o.dim_) throw SignatureMismatch("ExtVector: ambient dimensions differ");
    if (grade_ != o.grade_) throw PreconditionError("ExtVector: grades differ");
  }

  std::size_t dim_;
  unsigned grade_;
  std::map<IndexSubset, F> terms_;
};

/// Sign of sorting the concatenation a|b, 0 when a and b meet.
inline int merge_sign(const IndexSubset& a, const IndexSubset& b, IndexSubset& out) {
  out.clear();
  std::size_t inversions = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j] < a[i]) {
      inversions += a.size() - i;
      out.push_back(b[j++]);
    } else {
      return 0;
    }
  }
  return inversions % 2 ? -1 : 1;
}

template <class F>
ExtVector<F> wedge(const ExtVector<F>& a, const ExtVector<F>& b) {
  if (a.dim() != b.dim()) throw SignatureMismatch("wedge: ambient dimensions differ");
  if (a.grade() + b.grade() > a.dim()) return ExtVector<F>(a.dim(), 0);
  ExtVector<F> r(a.dim(), a.grade() + b.grade());
  IndexSubset merged;
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      const int sign = merge_sign(sa, sb, merged);
      if (sign == 0) continue;
      F prod = ca * cb;
      if (sign < 0) prod = -prod;
      r.add(merged, prod);
    }
  }
  return r;
}

/// v_1 ^ ... ^ v_k; the empty product is the scalar one.
template <class F>
ExtVector<F> wedge_all(std::size_t dim, const std::vector<ExtVector<F>>& vs, const F& one) {
  ExtVector<F> acc = ExtVector<F>::scalar(dim, one);
  for (const auto& v : vs) acc = wedge(acc, v);
  return acc;
}

enum class A2Outcome {
  confirmed,         // beta ^ gamma = 0 and beta ^ omega = 0
  vacuous,           // beta ^ gamma != 0
  gamma_zero,        // hypothesis gamma != 0 fails
  omega_not_killed,  // hypothesis omega ^ alpha_i = 0 fails
  refuted,           // beta ^ gamma = 0 but beta ^ omega != 0
};

const char* to_string(A2Outcome o);

struct A2Verdict {
  A2Outcome outcome = A2Outcome::confirmed;
  std::size_t failing_alpha = 0;  // for omega_not_killed
  bool holds() const { return outcome != A2Outcome::refuted; }
};

template <class F>
A2Verdict lemma_a2_check(const std::vector<ExtVector<F>>& alphas, const ExtVector<F>& omega, const ExtVector<F>& beta,
                         const F& one) {
  const std::size_t dim = omega.dim();
  for (const auto& a : alphas) {
    if (a.grade() != 1 || a.dim() != dim) throw PreconditionError("lemma_a2_check: alphas must be grade-1 vectors of the same dimension");
  }
  if (beta.grade() != 1 || beta.dim() != dim) throw PreconditionError("lemma_a2_check: beta must be a grade-1 vector of the same dimension");
  const ExtVector<F> gamma = wedge_all(dim, alphas, one);
  if (gamma.is_zero()) return {A2Outcome::gamma_zero, 0};
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!wedge(omega, alphas[i]).is_zero()) return {A2Outcome::omega_not_killed, i};
  }
  if (!wedge(beta, gamma).is_zero()) return {A2Outcome::vacuous, 0};
  return {wedge(beta, omega).is_zero() ? A2Outcome::confirmed : A2Outcome::refuted, 0};
}

struct A2Instance {
  std::vector<ExtVector<Rational>> alphas;
  ExtVector<Rational> omega{1, 0};
  ExtVector<Rational> beta{1, 1};
};

/// Random instance over Q in dimension 2..max_dim meeting both hypotheses:
/// omega = c * gamma ^ (extra vectors) and beta in span(alphas).
A2Instance random_a2_instance(std::mt19937_64& rng, std::size_t max_dim = 6);

struct A1Report {
  unsigned ell = 0;
  std::size_t dim_k_U = 0;     // over Q
  std::size_t dim_K_U = 0;     // over Q(t)
  std::size_t dim_B = 0;       // span_Q of ell-fold wedges
  bool beta_found = false;     // some ell-fold wedge is nonzero
  std::size_t dim_A = 0;       // {a in Q(t) : a * beta in B}
  std::size_t kernel_dim = 0;  // U meet span_K{u_1..u_{ell-1}}
  std::size_t checked = 0;     // kernel vectors whose coefficients were tested
  bool containment = true;     // every tested coefficient lies in A
};

/// Checks the constructive steps behind finiteness of dim_Q U on a finite
/// sample spanning U over Q inside Q(t)^N.
A1Report lemma_a1_span_probe(const std::vector<ExtVector<RatFunc>>& U_sample, unsigned ell);

}  // namespace deltak
