#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qplane/scalar.hpp"

namespace qplane {

// Exponent pair (j, k) naming the normally ordered word theta^j thetabar^k.
struct Monomial {
  std::uint32_t j = 0;  // power of theta
  std::uint32_t k = 0;  // power of thetabar

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

inline bool is_unit(const Monomial& m) { return m.j == 0 && m.k == 0; }

// (theta^a thetabar^b)(theta^c thetabar^d) = q^(-bc) theta^(a+c) thetabar^(b+d):
// each of the c thetas commutes left past each of the b thetabars, and every
// swap thetabar*theta -> q^{-1} theta*thetabar contributes one factor q^{-1}.
template <class S>
std::pair<S, Monomial> mul_monomials(const Monomial& a, const Monomial& b, const S& q) {
  if (scalar_traits<S>::is_zero(q)) throw domain_error("deformation parameter q must be nonzero");
  long swaps = static_cast<long>(a.k) * static_cast<long>(b.j);
  S factor = scalar_traits<S>::pow_int(q, -swaps);
  return {std::move(factor), Monomial{a.j + b.j, a.k + b.k}};
}

// Finite scalar combination of normally ordered monomials, tagged with its q.
// Canonical: zero coefficients are never stored, so equality is map equality.
template <class S>
class Element {
 public:
  using scalar_type = S;
  using term_map = std::map<Monomial, S>;

  explicit Element(S q) : q_(std::move(q)) {
    if (scalar_traits<S>::is_zero(q_)) throw domain_error("deformation parameter q must be nonzero");
  }

  static Element zero(S q) { return Element(std::move(q)); }

  static Element unit(S q) { return monomial(Monomial{0, 0}, scalar_traits<S>::one(), std::move(q)); }

  static Element monomial(Monomial m, S coeff, S q) {
    Element e(std::move(q));
    e.add_term(m, std::move(coeff));
    return e;
  }

  const S& q() const { return q_; }
  const term_map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  S coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? scalar_traits<S>::zero() : it->second;
  }

  Element& add_term(const Monomial& m, S coeff) {
    if (scalar_traits<S>::is_zero(coeff)) return *this;
    auto [it, inserted] = terms_.try_emplace(m, std::move(coeff));
    if (!inserted) {
      it->second += coeff;
      if (scalar_traits<S>::is_zero(it->second)) terms_.erase(it);
    }
    return *this;
  }

  friend bool operator==(const Element& a, const Element& b) {
    return a.q_ == b.q_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

 private:
  S q_;
  term_map terms_;
};

template <class S>
void require_same_q(const Element<S>& a, const Element<S>& b) {
  if (!(a.q() == b.q()))
    throw mismatch_error("elements carry different deformation parameters q");
}

template <class S>
Element<S> add(const Element<S>& a, const Element<S>& b) {
  require_same_q(a, b);
  Element<S> out = a;
  for (const auto& [m, c] : b.terms()) out.add_term(m, c);
  return out;
}

template <class S>
Element<S> scale(const S& c, const Element<S>& f) {
  Element<S> out(f.q());
  if (scalar_traits<S>::is_zero(c)) return out;
  for (const auto& [m, v] : f.terms()) out.add_term(m, c * v);
  return out;
}

template <class S>
Element<S> sub(const Element<S>& a, const Element<S>& b) {
  return add(a, scale(-scalar_traits<S>::one(), b));
}

// Bilinear extension of mul_monomials; the result is canonical.
template <class S>
Element<S> mul(const Element<S>& f, const Element<S>& g) {
  require_same_q(f, g);
  Element<S> out(f.q());
  for (const auto& [mf, cf] : f.terms()) {
    for (const auto& [mg, cg] : g.terms()) {
      auto [factor, m] = mul_monomials(mf, mg, f.q());
      out.add_term(m, cf * cg * factor);
    }
  }
  return out;
}

// (theta^j thetabar^k)* = theta^k thetabar^j, coefficients conjugated; q kept.
template <class S>
Element<S> star(const Element<S>& f) {
  Element<S> out(f.q());
  for (const auto& [m, c] : f.terms())
    out.add_term(Monomial{m.k, m.j}, scalar_traits<S>::conj(c));
  return out;
}

template <class S>
Element<S> lincomb(const std::vector<std::pair<S, Element<S>>>& pairs) {
  if (pairs.empty()) throw domain_error("lincomb of an empty list has no q to carry");
  Element<S> out(pairs.front().second.q());
  for (const auto& [c, f] : pairs) {
    require_same_q(out, f);
    for (const auto& [m, v] : f.terms()) out.add_term(m, c * v);
  }
  return out;
}

// Tests whether star(f g) = star(g) star(f) for this particular pair.
// The *-antihomomorphism property is expected to hold exactly when q is real.
template <class S>
bool star_antihom_probe(const Element<S>& f, const Element<S>& g) {
  return star(mul(f, g)) == mul(star(g), star(f));
}

// Grammar-compatible rendering: "1 - 3/4 t tb + i tb^2".
template <class S>
std::string element_to_string(const Element<S>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    std::string cs = scalar_traits<S>::to_string(c);
    bool negated = false;
    if (!cs.empty() && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos) {
      cs = cs.substr(1);
      negated = true;
    }
    bool needs_parens = cs.find_first_of("+-", 1) != std::string::npos;
    if (needs_parens) cs = "(" + cs + ")";
    if (first) {
      if (negated) out += "-";
      first = false;
    } else {
      out += negated ? " - " : " + ";
    }
    std::string word;
    if (m.j > 0) word += m.j == 1 ? "t" : "t^" + std::to_string(m.j);
    if (m.k > 0) {
      if (!word.empty()) word += " ";
      word += m.k == 1 ? "tb" : "tb^" + std::to_string(m.k);
    }
    if (word.empty()) {
      out += cs;
    } else if (cs == "1") {
      out += word;
    } else {
      out += cs + " " + word;
    }
  }
  return out;
}

}  // namespace qplane
