#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qplane/bargmann.hpp"
#include "qplane/element.hpp"
#include "qplane/pairing.hpp"
#include "qplane/toeplitz.hpp"
#include "qplane/weights.hpp"

namespace qplane {

using json = nlohmann::ordered_json;

// --- scalars -----------------------------------------------------------------

template <class R>
R real_from_string(const std::string& text);

template <>
inline Rational real_from_string<Rational>(const std::string& text) {
  return parse_rational(text);
}

template <>
inline double real_from_string<double>(const std::string& text) {
  if (text.find('/') != std::string::npos) return parse_rational(text).get_d();
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &consumed);
  } catch (const std::exception&) {
    throw parse_error("malformed number '" + text + "'", 0);
  }
  if (consumed != text.size()) throw parse_error("malformed number '" + text + "'", consumed);
  return value;
}

template <class S>
S scalar_from_strings(const std::string& re, const std::string& im) {
  using R = typename scalar_traits<S>::real_type;
  if constexpr (scalar_traits<S>::is_exact) {
    return GaussianRational(real_from_string<R>(re), real_from_string<R>(im));
  } else {
    return std::complex<double>(real_from_string<R>(re), real_from_string<R>(im));
  }
}

template <class S>
S q_from_string(const std::string& text) {
  if constexpr (scalar_traits<S>::is_exact) {
    return parse_gaussian_rational(text);
  } else {
    std::complex<double> z;
    try {
      GaussianRational g = parse_gaussian_rational(text);
      z = {g.re().get_d(), g.im().get_d()};
    } catch (const error&) {
      z = {real_from_string<double>(text), 0.0};
    }
    return z;
  }
}

// --- elements ----------------------------------------------------------------

template <class S>
json element_to_json(const Element<S>& f) {
  json terms = json::array();
  for (const auto& [m, c] : f.terms()) {
    terms.push_back(json{{"j", m.j},
                         {"k", m.k},
                         {"re", scalar_traits<S>::re_string(c)},
                         {"im", scalar_traits<S>::im_string(c)}});
  }
  return json{{"q", scalar_traits<S>::to_string(f.q())}, {"terms", std::move(terms)}};
}

template <class S>
Element<S> element_from_json(const json& j) {
  if (!j.is_object() || !j.contains("q") || !j.contains("terms"))
    throw parse_error("element JSON needs fields 'q' and 'terms'", 0);
  Element<S> out(q_from_string<S>(j.at("q").get<std::string>()));
  for (const auto& term : j.at("terms")) {
    Monomial m{term.at("j").get<std::uint32_t>(), term.at("k").get<std::uint32_t>()};
    out.add_term(m, scalar_from_strings<S>(term.at("re").get<std::string>(),
                                           term.at("im").get<std::string>()));
  }
  return out;
}

// --- weight specs ------------------------------------------------------------
// "factorial" | "constant:<c>" | "qfactorial:q=<rational>:w0=<rational>"
// | "table:<path>" | "table:[...]" with an optional ":strict"/":repeat-last".

namespace detail {

template <class R>
std::vector<R> weights_from_json_array(const json& arr) {
  if (!arr.is_array()) throw parse_error("weight table must be a JSON array", 0);
  std::vector<R> entries;
  for (const auto& item : arr) {
    if (item.is_string()) {
      entries.push_back(real_from_string<R>(item.get<std::string>()));
    } else if (item.is_number_integer()) {
      entries.push_back(real_traits<R>::from_long(item.get<long>()));
    } else if (item.is_number_float()) {
      if constexpr (real_traits<R>::is_exact) {
        entries.push_back(Rational(item.get<double>()));
      } else {
        entries.push_back(item.get<double>());
      }
    } else {
      throw parse_error("weight table entries must be numbers or rational strings", 0);
    }
  }
  return entries;
}

}  // namespace detail

template <class R>
WeightSequence<R> weight_sequence_from_spec(const std::string& spec) {
  if (spec == "factorial") return WeightSequence<R>::factorial();
  if (spec.rfind("constant:", 0) == 0)
    return WeightSequence<R>::constant(real_from_string<R>(spec.substr(9)));
  if (spec.rfind("qfactorial:", 0) == 0) {
    std::string rest = spec.substr(11);
    std::size_t sep = rest.find(':');
    if (rest.rfind("q=", 0) != 0 || sep == std::string::npos || rest.compare(sep + 1, 3, "w0=") != 0)
      throw parse_error("expected qfactorial:q=<rational>:w0=<rational>", 0);
    R q = real_from_string<R>(rest.substr(2, sep - 2));
    R w0 = real_from_string<R>(rest.substr(sep + 4));
    return WeightSequence<R>::q_factorial(std::move(q), std::move(w0));
  }
  if (spec.rfind("table:", 0) == 0) {
    std::string rest = spec.substr(6);
    TableExtension ext = TableExtension::strict;
    auto strip_suffix = [&](const std::string& suffix, TableExtension value) {
      if (rest.size() > suffix.size() &&
          rest.compare(rest.size() - suffix.size(), suffix.size(), suffix) == 0) {
        rest = rest.substr(0, rest.size() - suffix.size());
        ext = value;
        return true;
      }
      return false;
    };
    if (!strip_suffix(":repeat-last", TableExtension::repeat_last))
      strip_suffix(":strict", TableExtension::strict);
    json arr;
    if (!rest.empty() && rest.front() == '[') {
      arr = json::parse(rest, nullptr, false);
      if (arr.is_discarded()) throw parse_error("malformed inline weight table", 6);
    } else {
      std::ifstream in(rest);
      if (!in) throw error("cannot open weight table file: " + rest);
      arr = json::parse(in, nullptr, false);
      if (arr.is_discarded()) throw parse_error("malformed JSON in weight table file " + rest, 0);
    }
    return WeightSequence<R>::table(detail::weights_from_json_array<R>(arr), ext);
  }
  throw parse_error("unknown weight spec '" + spec + "'", 0);
}

// --- reports and matrices ----------------------------------------------------

template <class R>
json degeneracy_report_to_json(const DegeneracyReport<R>& report) {
  json results = json::array();
  for (const auto& entry : report.entries) {
    json row{{"m", entry.m}, {"R", entry.order}, {"verdict", to_string(entry.verdict)}};
    if (entry.verdict == ScanVerdict::candidate_witness) {
      json witness = json::array();
      for (const R& a : entry.witness) witness.push_back(real_traits<R>::to_string(a));
      row["witness"] = std::move(witness);
    }
    row["horizon"] = entry.horizon;
    results.push_back(std::move(row));
  }
  return json{{"params", json{{"m_max", report.m_max}, {"R_max", report.r_max}, {"S_max", report.s_max}}},
              {"results", std::move(results)}};
}

inline json definiteness_report_to_json(const DefinitenessReport& report) {
  json out{{"min_eigenvalue", report.min_eigenvalue}};
  if (report.witness) out["witness"] = element_to_json(*report.witness);
  return out;
}

template <class S>
json operator_to_json(const TruncatedOperator<S>& t) {
  json out{{"dim", t.dim()}, {"weights", t.weights().spec_string()}};
  if (t.symbol()) out["symbol"] = element_to_json(*t.symbol());
  json entries = json::array();
  for (std::size_t b = 0; b < t.dim(); ++b)
    for (std::size_t a = 0; a < t.dim(); ++a) {
      std::complex<double> z = t.entry(b, a);
      entries.push_back(json::array({z.real(), z.imag()}));
    }
  out["entries_row_major"] = std::move(entries);
  return out;
}

template <class S>
json gram_to_json(const DenseMatrix<S>& g) {
  json entries = json::array();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      entries.push_back(json::array(
          {scalar_traits<S>::re_string(g(i, j)), scalar_traits<S>::im_string(g(i, j))}));
  return json{{"rows", g.rows()}, {"cols", g.cols()}, {"entries_row_major", std::move(entries)}};
}

}  // namespace qplane
