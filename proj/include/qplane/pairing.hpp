#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qplane/element.hpp"
#include "qplane/matrix.hpp"
#include "qplane/weights.hpp"

namespace qplane {

// Monomials with equal exponent difference j - k form mutually orthogonal
// sectors; the difference indexes the sector.
inline long sector_of(const Monomial& m) {
  return static_cast<long>(m.j) - static_cast<long>(m.k);
}

inline std::uint32_t maxdeg(const Monomial& m) { return std::max(m.j, m.k); }

// The unique monomial of sector n with max-degree r (requires r >= |n|).
inline Monomial sector_element(long n, std::uint32_t r) {
  std::uint32_t abs_n = static_cast<std::uint32_t>(n < 0 ? -n : n);
  if (r < abs_n)
    throw domain_error("sector " + std::to_string(n) + " has no element of max-degree " +
                       std::to_string(r));
  if (n >= 0) return Monomial{r, r - abs_n};
  return Monomial{r - abs_n, r};
}

// Sesquilinear pairing, anti-linear in the first slot:
// <theta^a tb^b, theta^c tb^d> = w_{a+d} if a + d = b + c, else 0.
// Does not read q: elements with different deformation tags may be paired.
template <class S, class R>
S inner(const Element<S>& f, const Element<S>& g, const WeightSequence<R>& w) {
  S acc = scalar_traits<S>::zero();
  for (const auto& [mf, cf] : f.terms()) {
    for (const auto& [mg, cg] : g.terms()) {
      long lhs = static_cast<long>(mf.j) + static_cast<long>(mg.k);
      long rhs = static_cast<long>(mf.k) + static_cast<long>(mg.j);
      if (lhs != rhs) continue;
      acc += scalar_traits<S>::conj(cf) * cg * scalar_traits<S>::from_real(w.at(lhs));
    }
  }
  return acc;
}

// G[i][j] = inner(basis[i], basis[j]); verified Hermitian before returning.
template <class S, class R>
DenseMatrix<S> gram(const std::vector<Element<S>>& basis, const WeightSequence<R>& w) {
  if (basis.empty()) throw domain_error("gram of an empty basis");
  std::size_t n = basis.size();
  DenseMatrix<S> g(n, n, scalar_traits<S>::zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = inner(basis[i], basis[j], w);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      S diff = g(i, j) - scalar_traits<S>::conj(g(j, i));
      if constexpr (scalar_traits<S>::is_exact) {
        if (!scalar_traits<S>::is_zero(diff)) throw error("gram matrix failed its Hermitian self-check");
      } else {
        // Summation order differs between the two triangles.
        if (std::abs(scalar_traits<S>::to_complex(diff)) >
            1e-12 * (1.0 + std::abs(scalar_traits<S>::to_complex(g(i, j)))))
          throw error("gram matrix failed its Hermitian self-check");
      }
    }
  }
  return g;
}

// --- Non-degeneracy scan (finite certificate machinery) ---------------------

// Slice entries M[r'][s'] = w_{r' + s' + m} for 0 <= r' < order, 0 <= s' <= s_max.
// Columns are the weight vectors whose span in C^order decides whether the
// pairing can be degenerate on the sector pair +-m at order `order`.
template <class R>
struct HankelSlice {
  long m = 0;
  std::size_t order = 0;
  long s_max = 0;
  DenseMatrix<R> mat;
};

template <class R>
HankelSlice<R> hankel_slice(const WeightSequence<R>& w, long m, std::size_t order, long s_max) {
  HankelSlice<R> slice{m, order, s_max, DenseMatrix<R>(order, static_cast<std::size_t>(s_max) + 1)};
  for (std::size_t rp = 0; rp < order; ++rp)
    for (long sp = 0; sp <= s_max; ++sp)
      slice.mat(rp, static_cast<std::size_t>(sp)) = w.at(static_cast<long>(rp) + sp + m);
  return slice;
}

// Reduces to row echelon form in place; returns the rank. Exact arithmetic.
inline std::size_t exact_row_reduce(DenseMatrix<Rational>& m, std::vector<std::size_t>* pivot_cols = nullptr) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < m.rows() && sgn(m(piv, col)) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(rank, j));
    Rational inv = 1 / m(rank, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(rank, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || sgn(m(i, col)) == 0) continue;
      Rational factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(rank, j);
    }
    if (pivot_cols) pivot_cols->push_back(col);
    ++rank;
  }
  return rank;
}

inline std::size_t exact_rank(const DenseMatrix<Rational>& m) {
  DenseMatrix<Rational> work = m;
  return exact_row_reduce(work);
}

// A nonzero x with x^T m = 0, or nullopt when the rows of m^T span everything
// (i.e. the columns of m span C^rows). Deterministic: first free column gets 1.
inline std::optional<std::vector<Rational>> exact_left_null_vector(const DenseMatrix<Rational>& m) {
  DenseMatrix<Rational> t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  std::vector<std::size_t> pivots;
  std::size_t rank = exact_row_reduce(t, &pivots);
  if (rank == m.rows()) return std::nullopt;
  std::vector<bool> is_pivot(m.rows(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::size_t free_col = 0;
  while (free_col < m.rows() && is_pivot[free_col]) ++free_col;
  std::vector<Rational> x(m.rows(), Rational(0));
  x[free_col] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -t(r, free_col);
  // Normalize the first nonzero entry to 1 for a deterministic witness.
  for (const Rational& v : x) {
    if (sgn(v) != 0) {
      Rational lead = v;
      for (Rational& u : x) u /= lead;
      break;
    }
  }
  return x;
}

inline std::size_t svd_rank(const DenseMatrix<double>& m, double rel_tol = 1e-10) {
  Eigen::MatrixXd a(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++rank;
  return rank;
}

inline std::optional<std::vector<double>> svd_left_null_vector(const DenseMatrix<double>& m,
                                                               double rel_tol = 1e-10) {
  Eigen::MatrixXd a(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(0) > 0.0 && sv(i) > rel_tol * sv(0)) ++rank;
  if (rank == m.rows()) return std::nullopt;
  std::vector<double> x(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    x[i] = svd.matrixU()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(rank));
  // Fix the overall sign for determinism.
  for (double v : x) {
    if (v > 1e-14) break;
    if (v < -1e-14) {
      for (double& u : x) u = -u;
      break;
    }
  }
  return x;
}

enum class ScanVerdict { certified_nondegenerate, candidate_witness };

inline const char* to_string(ScanVerdict v) {
  return v == ScanVerdict::certified_nondegenerate ? "CERTIFIED_NONDEGENERATE"
                                                   : "CANDIDATE_WITNESS";
}

template <class R>
struct ScanEntry {
  long m = 0;            // |sector index|
  std::size_t order = 0;  // number of sector elements the slice spans
  ScanVerdict verdict = ScanVerdict::certified_nondegenerate;
  std::vector<R> witness;  // nonempty iff candidate; coefficients over sector elements
  long horizon = 0;        // s' range actually checked: [0, horizon]
};

template <class R>
struct DegeneracyReport {
  long m_max = 0;
  std::size_t r_max = 0;
  long s_max = 0;
  std::vector<ScanEntry<R>> entries;
};

namespace detail {

inline std::size_t slice_rank(const DenseMatrix<Rational>& m) { return exact_rank(m); }
inline std::size_t slice_rank(const DenseMatrix<double>& m) { return svd_rank(m); }

inline std::optional<std::vector<Rational>> slice_null(const DenseMatrix<Rational>& m) {
  return exact_left_null_vector(m);
}
inline std::optional<std::vector<double>> slice_null(const DenseMatrix<double>& m) {
  return svd_left_null_vector(m);
}

}  // namespace detail

// Scans every (m <= m_max, order <= r_max) pair against the columns
// W_{order,s} with s' in [0, s_max]. A full-rank slice certifies that sector
// pair at that order; otherwise the left null vector is reported as a
// candidate witness only, since columns beyond the horizon stay unchecked.
template <class R>
DegeneracyReport<R> nondegeneracy_scan(const WeightSequence<R>& w, long m_max, std::size_t r_max,
                                       long s_max) {
  if (r_max < 1) throw domain_error("nondegeneracy scan needs r_max >= 1");
  if (m_max < 0 || s_max < 0) throw domain_error("scan bounds must be nonnegative");
  DegeneracyReport<R> report{m_max, r_max, s_max, {}};
  for (long m = 0; m <= m_max; ++m) {
    for (std::size_t order = 1; order <= r_max; ++order) {
      HankelSlice<R> slice = hankel_slice(w, m, order, s_max);
      ScanEntry<R> entry;
      entry.m = m;
      entry.order = order;
      entry.horizon = s_max;
      if (detail::slice_rank(slice.mat) == order) {
        entry.verdict = ScanVerdict::certified_nondegenerate;
      } else {
        entry.verdict = ScanVerdict::candidate_witness;
        auto null_vec = detail::slice_null(slice.mat);
        if (!null_vec) throw error("rank-deficient slice produced no null vector");
        entry.witness = *null_vec;
      }
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

// The witness as an element: f = sum_r a_r eps_r over sector n = m, so that
// inner(sector basis, f) reproduces the scanned dot products directly.
template <class S, class R>
Element<S> witness_element(const ScanEntry<R>& entry, S q) {
  Element<S> f(std::move(q));
  std::uint32_t base = static_cast<std::uint32_t>(entry.m);
  for (std::size_t rp = 0; rp < entry.witness.size(); ++rp) {
    Monomial eps = sector_element(entry.m, base + static_cast<std::uint32_t>(rp));
    f.add_term(eps, scalar_traits<S>::from_real(entry.witness[rp]));
  }
  return f;
}

// --- Definiteness probe (floating) -------------------------------------------

// All monomials with maxdeg <= d, in graded lexicographic (maxdeg, j, k) order.
inline std::vector<Monomial> monomials_up_to_maxdeg(std::uint32_t d) {
  std::vector<Monomial> out;
  for (std::uint32_t m = 0; m <= d; ++m) {
    for (std::uint32_t j = 0; j <= m; ++j) {
      if (j < m) {
        out.push_back(Monomial{j, m});  // k = m forced
      } else {
        for (std::uint32_t k = 0; k <= m; ++k) out.push_back(Monomial{m, k});
      }
    }
  }
  return out;
}

struct DefinitenessReport {
  double min_eigenvalue = 0.0;
  std::optional<Element<std::complex<double>>> witness;  // present iff negative
  std::vector<Monomial> basis;
};

inline DefinitenessReport definiteness_probe(const WeightSequence<double>& w, std::uint32_t d) {
  DefinitenessReport report;
  report.basis = monomials_up_to_maxdeg(d);
  std::size_t n = report.basis.size();
  std::complex<double> q_tag{1.0, 0.0};  // inner() never reads it
  std::vector<Element<std::complex<double>>> basis_elements;
  basis_elements.reserve(n);
  for (const Monomial& m : report.basis)
    basis_elements.push_back(Element<std::complex<double>>::monomial(m, {1.0, 0.0}, q_tag));
  Eigen::MatrixXd g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          inner(basis_elements[i], basis_elements[j], w).real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g);
  report.min_eigenvalue = solver.eigenvalues()(0);
  if (report.min_eigenvalue < 0.0) {
    Eigen::VectorXd v = solver.eigenvectors().col(0);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (v(i) > 1e-14) break;
      if (v(i) < -1e-14) {
        v = -v;
        break;
      }
    }
    Element<std::complex<double>> witness(q_tag);
    for (std::size_t i = 0; i < n; ++i)
      witness.add_term(report.basis[i], {v(static_cast<Eigen::Index>(i)), 0.0});
    report.witness = std::move(witness);
  }
  return report;
}

}  // namespace qplane
