#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qplane/scalar.hpp"

namespace qplane {

// [n]_r = 1 + r + ... + r^(n-1), with [0]_r = 0. Computed by summation so
// r = 1 needs no special case; for r != 1 this equals (1 - r^n)/(1 - r).
template <class T>
T deformed_int(const T& r, unsigned long n) {
  T sum = T(0);
  T power = T(1);
  for (unsigned long t = 0; t < n; ++t) {
    sum += power;
    power *= r;
  }
  return sum;
}

// [n]!_r = [n]_r [n-1]_r ... [1]_r, with [0]!_r = 1.
template <class T>
T deformed_factorial(const T& r, unsigned long n) {
  T prod = T(1);
  for (unsigned long k = 1; k <= n; ++k) prod *= deformed_int(r, k);
  return prod;
}

enum class TableExtension { strict, repeat_last };

// Rule n -> w_n producing strictly positive weights for n >= 0 and the fixed
// value 1 for n < 0. R is the real backend: Rational (exact) or double.
template <class R>
class WeightSequence {
 public:
  enum class Kind { factorial, constant, q_factorial, table };

  static WeightSequence factorial() { return WeightSequence(Kind::factorial); }

  static WeightSequence constant(R c) {
    if (!real_traits<R>::is_positive(c)) throw weight_error("constant weight must be positive");
    WeightSequence w(Kind::constant);
    w.c_ = std::move(c);
    return w;
  }

  // w_k = [k]!_{1/q} * w0; positivity of each [k]_{1/q} is checked lazily at
  // evaluation, since it can fail only from some index on (e.g. q = -1 at k = 2).
  static WeightSequence q_factorial(R q, R w0) {
    if (q == R(0)) throw domain_error("deformation parameter q must be nonzero");
    if (!real_traits<R>::is_positive(w0)) throw weight_error("w0 must be positive");
    WeightSequence w(Kind::q_factorial);
    w.q_ = std::move(q);
    w.w0_ = std::move(w0);
    return w;
  }

  static WeightSequence table(std::vector<R> entries, TableExtension ext = TableExtension::strict) {
    if (entries.empty()) throw weight_error("weight table must be nonempty");
    for (const R& e : entries)
      if (!real_traits<R>::is_positive(e)) throw weight_error("weight table entries must be positive");
    WeightSequence w(Kind::table);
    w.table_ = std::move(entries);
    w.ext_ = ext;
    return w;
  }

  Kind kind() const { return kind_; }

  // w_n; defined for every integer, with w_n = 1 for n < 0.
  R at(long n) const {
    if (n < 0) return real_traits<R>::one();
    switch (kind_) {
      case Kind::factorial: {
        R f = real_traits<R>::one();
        for (long k = 2; k <= n; ++k) f *= real_traits<R>::from_long(k);
        return f;
      }
      case Kind::constant:
        return c_;
      case Kind::q_factorial: {
        R inv_q = real_traits<R>::one() / q_;
        R w = w0_;
        for (long k = 1; k <= n; ++k) {
          R d = deformed_int(inv_q, static_cast<unsigned long>(k));
          if (!real_traits<R>::is_positive(d))
            throw weight_error("q-factorial weight positivity fails at index " + std::to_string(k) +
                               ": [" + std::to_string(k) + "] = " + real_traits<R>::to_string(d));
          w *= d;
        }
        return w;
      }
      case Kind::table: {
        auto idx = static_cast<std::size_t>(n);
        if (idx < table_.size()) return table_[idx];
        if (ext_ == TableExtension::repeat_last) return table_.back();
        throw weight_error("weight table has " + std::to_string(table_.size()) +
                           " entries; index " + std::to_string(n) + " is out of range");
      }
    }
    throw weight_error("corrupt weight kind");
  }

  // log(w_n), robust where w_n itself overflows a double.
  double log_at(long n) const {
    if (n < 0) return 0.0;
    switch (kind_) {
      case Kind::factorial:
        return std::lgamma(static_cast<double>(n) + 1.0);
      case Kind::constant:
        return real_traits<R>::log(c_);
      case Kind::q_factorial: {
        R inv_q = real_traits<R>::one() / q_;
        double acc = real_traits<R>::log(w0_);
        for (long k = 1; k <= n; ++k) {
          R d = deformed_int(inv_q, static_cast<unsigned long>(k));
          if (!real_traits<R>::is_positive(d))
            throw weight_error("q-factorial weight positivity fails at index " + std::to_string(k));
          acc += real_traits<R>::log(d);
        }
        return acc;
      }
      case Kind::table:
        return real_traits<R>::log(at(n));
    }
    throw weight_error("corrupt weight kind");
  }

  // Round-trips through the CLI weight-spec grammar.
  std::string spec_string() const {
    switch (kind_) {
      case Kind::factorial:
        return "factorial";
      case Kind::constant:
        return "constant:" + real_traits<R>::to_string(c_);
      case Kind::q_factorial:
        return "qfactorial:q=" + real_traits<R>::to_string(q_) +
               ":w0=" + real_traits<R>::to_string(w0_);
      case Kind::table: {
        std::string s = "table:[";
        for (std::size_t i = 0; i < table_.size(); ++i) {
          if (i) s += ",";
          s += real_traits<R>::to_string(table_[i]);
        }
        s += ext_ == TableExtension::repeat_last ? "]:repeat-last" : "]:strict";
        return s;
      }
    }
    return "?";
  }

  friend bool operator==(const WeightSequence& a, const WeightSequence& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
      case Kind::factorial:
        return true;
      case Kind::constant:
        return a.c_ == b.c_;
      case Kind::q_factorial:
        return a.q_ == b.q_ && a.w0_ == b.w0_;
      case Kind::table:
        return a.table_ == b.table_ && a.ext_ == b.ext_;
    }
    return false;
  }
  friend bool operator!=(const WeightSequence& a, const WeightSequence& b) { return !(a == b); }

 private:
  explicit WeightSequence(Kind kind) : kind_(kind) {}

  Kind kind_;
  R c_{};
  R q_{};
  R w0_{};
  std::vector<R> table_;
  TableExtension ext_ = TableExtension::strict;
};

// The unique weight family solving [a+1]_w - q^{-1} [a]_w = 1 with
// [a]_w = w_a / w_{a-1}: namely w_k = [k]!_{1/q} * w0.
template <class R>
WeightSequence<R> ccr_weights(const R& q, const R& w0) {
  return WeightSequence<R>::q_factorial(q, w0);
}

}  // namespace qplane
