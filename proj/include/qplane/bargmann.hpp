#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "qplane/element.hpp"
#include "qplane/pairing.hpp"
#include "qplane/weights.hpp"

namespace qplane {

// The orthonormal basis element of the holomorphic subspace:
// w_j^{-1/2} theta^j. Square roots force the floating backend.
inline Element<std::complex<double>> normalized_monomial(std::uint32_t j,
                                                         const WeightSequence<double>& w,
                                                         std::complex<double> q = {1.0, 0.0}) {
  double coeff = std::exp(-0.5 * w.log_at(static_cast<long>(j)));
  return Element<std::complex<double>>::monomial(Monomial{j, 0}, {coeff, 0.0}, q);
}

// Exact variant: the pair (w_j, theta^j), leaving the square root untaken so
// identities can be checked in rational arithmetic.
template <class R>
std::pair<R, Monomial> normalized_monomial_exact(std::uint32_t j, const WeightSequence<R>& w) {
  return {w.at(static_cast<long>(j)), Monomial{j, 0}};
}

// Functional calculus on finite coefficient lists: coeffs -> sum_j f_j theta^j.
// The weight sequence plays no role in the output element, only in its norm.
template <class S>
Element<S> theta_polynomial(const std::vector<S>& coeffs, S q) {
  Element<S> out(std::move(q));
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    out.add_term(Monomial{static_cast<std::uint32_t>(j), 0}, coeffs[j]);
  return out;
}

// The reproducing-kernel projection onto the holomorphic subspace:
// theta^a tb^b -> (w_a / w_{a-b}) theta^{a-b}, with theta^n = 0 for n < 0.
// Linear, idempotent, symmetric for the weighted pairing, and the identity
// on polynomials in theta. The kernel itself is never materialized; only
// this action is.
template <class S, class R>
Element<S> project_holomorphic(const Element<S>& f, const WeightSequence<R>& w) {
  Element<S> out(f.q());
  for (const auto& [m, c] : f.terms()) {
    if (m.k > m.j) continue;  // theta^{negative} = 0
    long a = static_cast<long>(m.j);
    long drop = static_cast<long>(m.j - m.k);
    R ratio = w.at(a) / w.at(drop);
    out.add_term(Monomial{m.j - m.k, 0}, c * scalar_traits<S>::from_real(ratio));
  }
  return out;
}

// Coefficients over the orthonormal basis of the truncated holomorphic space.
template <class S>
class FockVector {
 public:
  using real_type = typename scalar_traits<S>::real_type;

  FockVector(std::vector<S> coeffs, WeightSequence<real_type> w)
      : coeffs_(std::move(coeffs)), weights_(std::move(w)) {
    if (coeffs_.empty()) throw domain_error("FockVector needs dimension >= 1");
  }

  static FockVector zeros(std::size_t dim, WeightSequence<real_type> w) {
    return FockVector(std::vector<S>(dim, scalar_traits<S>::zero()), std::move(w));
  }

  // The a-th orthonormal basis vector as a coordinate vector.
  static FockVector basis_vector(std::size_t a, std::size_t dim, WeightSequence<real_type> w) {
    if (a >= dim) throw domain_error("basis index exceeds truncation dimension");
    FockVector v = zeros(dim, std::move(w));
    v.coeffs_[a] = scalar_traits<S>::one();
    return v;
  }

  std::size_t dim() const { return coeffs_.size(); }
  const std::vector<S>& coeffs() const { return coeffs_; }
  std::vector<S>& coeffs() { return coeffs_; }
  const WeightSequence<real_type>& weights() const { return weights_; }

  friend bool operator==(const FockVector& a, const FockVector& b) {
    return a.weights_ == b.weights_ && a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<S> coeffs_;
  WeightSequence<real_type> weights_;
};

// sum_a c_a w_a^{-1/2} theta^a as an element (floating backend).
inline Element<std::complex<double>> fock_to_element(const FockVector<std::complex<double>>& v,
                                                     std::complex<double> q = {1.0, 0.0}) {
  Element<std::complex<double>> out(q);
  for (std::size_t a = 0; a < v.dim(); ++a) {
    double scale = std::exp(-0.5 * v.weights().log_at(static_cast<long>(a)));
    out.add_term(Monomial{static_cast<std::uint32_t>(a), 0}, v.coeffs()[a] * scale);
  }
  return out;
}

}  // namespace qplane
