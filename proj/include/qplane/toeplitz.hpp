#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qplane/bargmann.hpp"
#include "qplane/element.hpp"
#include "qplane/matrix.hpp"
#include "qplane/weights.hpp"

namespace qplane {

namespace detail {

// value * exp(log_scale), computed through logarithms so that rationals far
// outside double range still convert.
inline double rescaled_rational(const Rational& r, double log_scale) {
  if (sgn(r) == 0) return 0.0;
  double d = r.get_d();
  if (std::isfinite(d) && d != 0.0) {
    double v = d * std::exp(log_scale);
    if (std::isfinite(v) && v != 0.0) return v;
  }
  // |r| escaped double range (or the product under/overflowed): go through logs.
  double mag = std::exp(rational_log(abs(Rational(r))) + log_scale);
  return sgn(r) > 0 ? mag : -mag;
}

template <class S>
std::complex<double> rescaled_entry(const S& value, double log_scale) {
  if constexpr (scalar_traits<S>::is_exact) {
    return {rescaled_rational(value.re(), log_scale), rescaled_rational(value.im(), log_scale)};
  } else {
    return scalar_traits<S>::to_complex(value) * std::exp(log_scale);
  }
}

}  // namespace detail

// A truncated operator on span{phi_0, ..., phi_{N-1}}.
//
// Storage is the weight-scaled matrix: scaled(b, a) = sqrt(w_b w_a) * M[b][a],
// where M[b][a] = <phi_b, T phi_a> is the orthonormal-basis matrix. The scaled
// form is rational whenever the weights and coefficients are, so operator
// identities can be decided exactly; M itself contains square roots and is
// exposed numerically through entry(). Composition inserts a diag(1/w_k)
// factor; the adjoint is still a plain conjugate transpose; the identity has
// scaled form diag(w_a).
//
// interior_margin counts how many trailing columns truncation may corrupt:
// identities between operators hold on the leading dim - margin columns.
template <class S>
class TruncatedOperator {
 public:
  using real_type = typename scalar_traits<S>::real_type;

  TruncatedOperator(std::size_t dim, WeightSequence<real_type> w, unsigned margin,
                    std::optional<Element<S>> symbol = std::nullopt)
      : dim_(dim),
        weights_(std::move(w)),
        margin_(margin),
        symbol_(std::move(symbol)),
        scaled_(dim, dim, scalar_traits<S>::zero()) {
    if (dim_ == 0) throw domain_error("truncation dimension must be >= 1");
  }

  std::size_t dim() const { return dim_; }
  unsigned interior_margin() const { return margin_; }
  std::size_t interior_columns() const { return dim_ > margin_ ? dim_ - margin_ : 0; }
  const WeightSequence<real_type>& weights() const { return weights_; }
  const std::optional<Element<S>>& symbol() const { return symbol_; }

  const S& scaled(std::size_t b, std::size_t a) const { return scaled_(b, a); }
  S& scaled(std::size_t b, std::size_t a) { return scaled_(b, a); }
  const DenseMatrix<S>& scaled_matrix() const { return scaled_; }

  // <phi_b, T phi_a> as a complex double.
  std::complex<double> entry(std::size_t b, std::size_t a) const {
    double log_scale = -0.5 * (weights_.log_at(static_cast<long>(b)) +
                               weights_.log_at(static_cast<long>(a)));
    return detail::rescaled_entry(scaled_(b, a), log_scale);
  }

  void set_symbol(std::optional<Element<S>> symbol) { symbol_ = std::move(symbol); }

 private:
  std::size_t dim_;
  WeightSequence<real_type> weights_;
  unsigned margin_;
  std::optional<Element<S>> symbol_;
  DenseMatrix<S> scaled_;
};

template <class S>
void require_compatible(const TruncatedOperator<S>& a, const TruncatedOperator<S>& b) {
  if (a.dim() != b.dim()) throw mismatch_error("operator dimensions differ");
  if (a.weights() != b.weights()) throw mismatch_error("operator weight sequences differ");
}

// Identity on the truncated space; scaled form diag(w_a).
template <class S>
TruncatedOperator<S> identity_operator(const WeightSequence<typename scalar_traits<S>::real_type>& w,
                                       std::size_t dim) {
  TruncatedOperator<S> t(dim, w, 0);
  for (std::size_t a = 0; a < dim; ++a)
    t.scaled(a, a) = scalar_traits<S>::from_real(w.at(static_cast<long>(a)));
  return t;
}

// T_{theta^i tb^j}: phi_a -> w_{i+a} / sqrt(w_a w_{i+a-j}) phi_{i+a-j}, i.e. a
// weighted shift of degree i - j. Scaled form: w_{i+a} at row i+a-j, column a.
// Rows outside [0, N) are dropped; the last max(i, j) columns are marked
// truncation-affected.
template <class S>
TruncatedOperator<S> toeplitz_monomial(std::uint32_t i, std::uint32_t j,
                                       const WeightSequence<typename scalar_traits<S>::real_type>& w,
                                       std::size_t dim) {
  TruncatedOperator<S> t(dim, w, std::max(i, j));
  for (std::size_t a = 0; a < dim; ++a) {
    long b = static_cast<long>(i) + static_cast<long>(a) - static_cast<long>(j);
    if (b < 0 || b >= static_cast<long>(dim)) continue;
    t.scaled(static_cast<std::size_t>(b), a) =
        scalar_traits<S>::from_real(w.at(static_cast<long>(i) + static_cast<long>(a)));
  }
  return t;
}

// T_g by linearity over the symbol's terms; tagged with the symbol.
template <class S>
TruncatedOperator<S> toeplitz(const Element<S>& g,
                              const WeightSequence<typename scalar_traits<S>::real_type>& w,
                              std::size_t dim) {
  unsigned margin = 0;
  for (const auto& [m, c] : g.terms()) margin = std::max(margin, std::max(m.j, m.k));
  TruncatedOperator<S> t(dim, w, margin, g);
  for (const auto& [m, c] : g.terms()) {
    for (std::size_t a = 0; a < dim; ++a) {
      long b = static_cast<long>(m.j) + static_cast<long>(a) - static_cast<long>(m.k);
      if (b < 0 || b >= static_cast<long>(dim)) continue;
      t.scaled(static_cast<std::size_t>(b), a) +=
          c * scalar_traits<S>::from_real(w.at(static_cast<long>(m.j) + static_cast<long>(a)));
    }
  }
  return t;
}

// Matrix product; scaled forms compose as A diag(1/w_k) B. Valid next to a
// directly built operator only on the leading dim - (margin_A + margin_B)
// columns.
template <class S>
TruncatedOperator<S> compose(const TruncatedOperator<S>& a, const TruncatedOperator<S>& b) {
  require_compatible(a, b);
  std::size_t n = a.dim();
  TruncatedOperator<S> out(n, a.weights(), a.interior_margin() + b.interior_margin());
  std::vector<S> inv_w(n);
  for (std::size_t k = 0; k < n; ++k)
    inv_w[k] = scalar_traits<S>::one() / scalar_traits<S>::from_real(a.weights().at(static_cast<long>(k)));
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t k = 0; k < n; ++k) {
      if (scalar_traits<S>::is_zero(a.scaled(row, k))) continue;
      S left = a.scaled(row, k) * inv_w[k];
      for (std::size_t col = 0; col < n; ++col) {
        if (scalar_traits<S>::is_zero(b.scaled(k, col))) continue;
        out.scaled(row, col) += left * b.scaled(k, col);
      }
    }
  }
  return out;
}

// Conjugate transpose. When the operand carries a symbol g, this equals the
// operator of star(g) entrywise, with no interior caveat.
template <class S>
TruncatedOperator<S> adjoint(const TruncatedOperator<S>& t) {
  std::optional<Element<S>> symbol;
  if (t.symbol()) symbol = star(*t.symbol());
  TruncatedOperator<S> out(t.dim(), t.weights(), t.interior_margin(), std::move(symbol));
  for (std::size_t b = 0; b < t.dim(); ++b)
    for (std::size_t a = 0; a < t.dim(); ++a)
      out.scaled(b, a) = scalar_traits<S>::conj(t.scaled(a, b));
  return out;
}

template <class S>
TruncatedOperator<S> add_op(const TruncatedOperator<S>& a, const TruncatedOperator<S>& b) {
  require_compatible(a, b);
  TruncatedOperator<S> out(a.dim(), a.weights(),
                           std::max(a.interior_margin(), b.interior_margin()));
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c) out.scaled(r, c) = a.scaled(r, c) + b.scaled(r, c);
  return out;
}

template <class S>
TruncatedOperator<S> scale_op(const S& c, const TruncatedOperator<S>& t) {
  TruncatedOperator<S> out(t.dim(), t.weights(), t.interior_margin());
  for (std::size_t r = 0; r < t.dim(); ++r)
    for (std::size_t col = 0; col < t.dim(); ++col) out.scaled(r, col) = c * t.scaled(r, col);
  return out;
}

template <class S>
TruncatedOperator<S> sub_op(const TruncatedOperator<S>& a, const TruncatedOperator<S>& b) {
  return add_op(a, scale_op(-scalar_traits<S>::one(), b));
}

// AB - r BA.
template <class S>
TruncatedOperator<S> q_commutator(const TruncatedOperator<S>& a, const TruncatedOperator<S>& b,
                                  const S& r) {
  return sub_op(compose(a, b), scale_op(r, compose(b, a)));
}

// Exact equality of the stored (scaled) matrices on the leading `cols` columns.
template <class S>
bool equal_on_leading_columns(const TruncatedOperator<S>& a, const TruncatedOperator<S>& b,
                              std::size_t cols) {
  require_compatible(a, b);
  if (cols > a.dim()) return false;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (!scalar_traits<S>::is_zero(a.scaled(r, c) - b.scaled(r, c))) return false;
  return true;
}

// Matrix-vector action in the orthonormal basis. Floating backend only: the
// orthonormal-basis entries contain square roots, so no exact vector action
// exists; exact checks of T_g on elements go through
// project_holomorphic(mul(f, g), w) instead.
inline FockVector<std::complex<double>> apply(const TruncatedOperator<std::complex<double>>& t,
                                              const FockVector<std::complex<double>>& v) {
  if (t.dim() != v.dim()) throw mismatch_error("operator and vector dimensions differ");
  if (t.weights() != v.weights()) throw mismatch_error("operator and vector weights differ");
  FockVector<std::complex<double>> out =
      FockVector<std::complex<double>>::zeros(t.dim(), t.weights());
  for (std::size_t b = 0; b < t.dim(); ++b) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t a = 0; a < t.dim(); ++a) {
      if (scalar_traits<std::complex<double>>::is_zero(t.scaled(b, a))) continue;
      acc += t.entry(b, a) * v.coeffs()[a];
    }
    out.coeffs()[b] = acc;
  }
  return out;
}

// Builds both canonical pair operators at dim N+1 with the weights solving the
// canonical commutation relation, forms [annihilation, creation]_{1/q} - I,
// and reports the largest orthonormal-basis entry magnitude over the leading
// N x N block (which truncation cannot touch). Exact backend: an exact zero
// test runs first, so a clean solution reports literally 0.
template <class S>
double ccr_residual(const typename scalar_traits<S>::real_type& q,
                    const typename scalar_traits<S>::real_type& w0, std::size_t n) {
  using R = typename scalar_traits<S>::real_type;
  WeightSequence<R> w = ccr_weights(q, w0);
  auto creation = toeplitz_monomial<S>(1, 0, w, n + 1);
  auto annihilation = toeplitz_monomial<S>(0, 1, w, n + 1);
  S inv_q = scalar_traits<S>::one() / scalar_traits<S>::from_real(q);
  auto commutator = q_commutator(annihilation, creation, inv_q);
  auto residual = sub_op(commutator, identity_operator<S>(w, n + 1));
  bool all_zero = true;
  for (std::size_t b = 0; b < n && all_zero; ++b)
    for (std::size_t a = 0; a < n && all_zero; ++a)
      if (!scalar_traits<S>::is_zero(residual.scaled(b, a))) all_zero = false;
  if (all_zero) return 0.0;
  double max_mag = 0.0;
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t a = 0; a < n; ++a)
      max_mag = std::max(max_mag, std::abs(residual.entry(b, a)));
  return max_mag;
}

// --- Horizon-scoped boundedness / compactness probes -------------------------

// c_a = || T_{theta^i tb^j} phi_a || = w_{i+a} / sqrt(w_a w_{i+a-j}), or 0 when
// the shift lands below the space. Computed through log-weights so factorial
// growth stays representable.
template <class R>
std::vector<double> action_coefficients(std::uint32_t i, std::uint32_t j,
                                        const WeightSequence<R>& w, std::size_t a_max) {
  std::vector<double> c(a_max + 1, 0.0);
  for (std::size_t a = 0; a <= a_max; ++a) {
    long target = static_cast<long>(i) + static_cast<long>(a) - static_cast<long>(j);
    if (target < 0) continue;
    double lv = w.log_at(static_cast<long>(i) + static_cast<long>(a)) -
                0.5 * (w.log_at(static_cast<long>(a)) + w.log_at(target));
    c[a] = std::exp(lv);
  }
  return c;
}

enum class BoundVerdict { bounded_candidate, diverging, inconclusive };
enum class CompactVerdict { compact_candidate, not_compact_candidate, inconclusive };

inline const char* to_string(BoundVerdict v) {
  switch (v) {
    case BoundVerdict::bounded_candidate: return "BOUNDED_CANDIDATE";
    case BoundVerdict::diverging: return "DIVERGING";
    case BoundVerdict::inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

inline const char* to_string(CompactVerdict v) {
  switch (v) {
    case CompactVerdict::compact_candidate: return "COMPACT_CANDIDATE";
    case CompactVerdict::not_compact_candidate: return "NOT_COMPACT_CANDIDATE";
    case CompactVerdict::inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

struct NormBoundReport {
  double sup_estimate = 0.0;
  std::size_t attained_at = 0;
  BoundVerdict verdict = BoundVerdict::inconclusive;
  std::vector<double> coefficients;
};

namespace detail {

inline std::size_t tail_start(std::size_t a_max) {
  std::size_t len = std::max<std::size_t>(2, (a_max + 1) / 4);
  return a_max + 1 > len ? a_max + 1 - len : 0;
}

}  // namespace detail

// The true operator norm is sup over all a; this scans a <= a_max and labels
// the tail behaviour. Verdicts are horizon-scoped heuristics by construction.
template <class R>
NormBoundReport norm_bound_monomial(std::uint32_t i, std::uint32_t j, const WeightSequence<R>& w,
                                    std::size_t a_max) {
  if (a_max < 1) throw domain_error("norm bound scan needs a_max >= 1");
  NormBoundReport report;
  report.coefficients = action_coefficients(i, j, w, a_max);
  const auto& c = report.coefficients;
  std::size_t best = 0;
  for (std::size_t a = 1; a <= a_max; ++a)
    if (c[a] > c[best]) best = a;
  report.sup_estimate = c[best];
  report.attained_at = best;
  std::size_t tail = detail::tail_start(a_max);
  bool strictly_increasing = true, non_increasing = true;
  for (std::size_t a = tail + 1; a <= a_max; ++a) {
    if (!(c[a] > c[a - 1])) strictly_increasing = false;
    if (c[a] > c[a - 1]) non_increasing = false;
  }
  if (strictly_increasing && best == a_max)
    report.verdict = BoundVerdict::diverging;
  else if (non_increasing)
    report.verdict = BoundVerdict::bounded_candidate;
  else
    report.verdict = BoundVerdict::inconclusive;
  return report;
}

// Compact iff c_a -> 0; this checks whether the scanned tail has dropped
// below tol (and keeps falling) or stays bounded away from zero.
template <class R>
CompactVerdict compactness_probe(std::uint32_t i, std::uint32_t j, const WeightSequence<R>& w,
                                 std::size_t a_max, double tol) {
  if (a_max < 4) throw domain_error("compactness probe needs a_max >= 4");
  if (!(tol > 0.0)) throw domain_error("compactness tolerance must be positive");
  std::vector<double> c = action_coefficients(i, j, w, a_max);
  std::size_t tail = detail::tail_start(a_max);
  bool all_small = true, all_large = true, non_increasing = true;
  for (std::size_t a = tail; a <= a_max; ++a) {
    if (c[a] >= tol) all_small = false;
    if (c[a] < tol) all_large = false;
    if (a > tail && c[a] > c[a - 1]) non_increasing = false;
  }
  if (all_small && non_increasing) return CompactVerdict::compact_candidate;
  if (all_large) return CompactVerdict::not_compact_candidate;
  return CompactVerdict::inconclusive;
}

// Largest singular value of the truncated matrix: a lower bound for the
// operator norm of T_g for general symbols (exact norms exist only for
// monomials).
template <class S>
double operator_norm_lower_bound(const TruncatedOperator<S>& t) {
  Eigen::MatrixXcd m(t.dim(), t.dim());
  for (std::size_t b = 0; b < t.dim(); ++b)
    for (std::size_t a = 0; a < t.dim(); ++a)
      m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = t.entry(b, a);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace qplane
