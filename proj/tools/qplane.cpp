// qplane: command-line front end for the quantum-plane toolkit.
//
// Symbols are written in a small grammar over the generators `t` (theta) and
// `tb` (thetabar): "1 - 3/4 t tb + i tb^2". The deformation parameter --q
// selects the scalar backend: a rational like "1/2" runs every computation in
// exact rational arithmetic, a float like "0.75" runs in complex doubles.

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qplane/qplane.hpp"

namespace {

using qplane::GaussianRational;
using qplane::Rational;
using ComplexD = std::complex<double>;

enum class Format { human, json, csv };

Format parse_format(const std::string& name) {
  if (name == "human") return Format::human;
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw qplane::domain_error("unknown format '" + name + "' (expected human, json or csv)");
}

bool is_rational_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  bool digits = false, slash = false, slash_digits = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      (slash ? slash_digits : digits) = true;
    } else if (s[i] == '/' && !slash && digits) {
      slash = true;
    } else {
      return false;
    }
  }
  return digits && (!slash || slash_digits);
}

template <class S>
typename qplane::scalar_traits<S>::real_type real_from_cli(const std::string& text) {
  return qplane::real_from_string<typename qplane::scalar_traits<S>::real_type>(text);
}

template <class S>
S q_from_cli(const std::string& text) {
  if constexpr (qplane::scalar_traits<S>::is_exact) {
    return GaussianRational(qplane::parse_rational(text));
  } else {
    return ComplexD{qplane::real_from_string<double>(text), 0.0};
  }
}

template <class S>
qplane::WeightSequence<typename qplane::scalar_traits<S>::real_type> weights_from_cli(
    const std::string& spec) {
  return qplane::weight_sequence_from_spec<typename qplane::scalar_traits<S>::real_type>(spec);
}

void emit(const qplane::json& j) { std::cout << j.dump() << "\n"; }

template <class S>
void print_element(const qplane::Element<S>& e, Format format) {
  if (format == Format::json)
    emit(qplane::element_to_json(e));
  else
    std::cout << qplane::element_to_string(e) << "\n";
}

template <class S>
void print_scalar(const S& value, Format format) {
  if (format == Format::json) {
    emit(qplane::json{{"value",
                       qplane::json{{"re", qplane::scalar_traits<S>::re_string(value)},
                                    {"im", qplane::scalar_traits<S>::im_string(value)}}}});
  } else {
    std::cout << qplane::scalar_traits<S>::to_string(value) << "\n";
  }
}

template <class S>
void print_operator(const qplane::TruncatedOperator<S>& t, Format format) {
  if (format == Format::json) {
    emit(qplane::operator_to_json(t));
    return;
  }
  if (format == Format::csv) {
    std::cout << "a,re,im\n";
    for (std::size_t a = 0; a < t.dim(); ++a) {
      ComplexD z = t.entry(a, a);
      std::cout << a << "," << qplane::double_to_string(z.real()) << ","
                << qplane::double_to_string(z.imag()) << "\n";
    }
    return;
  }
  std::cout << "dim=" << t.dim() << " weights=" << t.weights().spec_string()
            << " margin=" << t.interior_margin() << "\n";
  for (std::size_t b = 0; b < t.dim(); ++b) {
    for (std::size_t a = 0; a < t.dim(); ++a) {
      ComplexD z = t.entry(b, a);
      char buf[64];
      if (z.imag() == 0.0)
        std::snprintf(buf, sizeof buf, "%12.6g", z.real());
      else
        std::snprintf(buf, sizeof buf, "%7.4g%+.4gi", z.real(), z.imag());
      std::cout << buf << (a + 1 == t.dim() ? "" : " ");
    }
    std::cout << "\n";
  }
}

struct CommonArgs {
  std::string q = "1";
  std::string weights = "factorial";
  std::string format = "human";
  std::vector<std::string> exprs;
  std::string w0 = "1";
  std::size_t dim = 16;
  long mmax = 2;
  std::size_t rmax = 3;
  long smax = 10;
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::size_t amax = 64;
  double tol = 1e-8;
  std::uint32_t maxdeg = 3;
  std::string symbol;
};

template <class S>
void run_symbol_command(const std::string& verb, const CommonArgs& args, Format format) {
  S q = q_from_cli<S>(args.q);
  if (verb == "mul") {
    auto a = qplane::parse_element<S>(args.exprs.at(0), q);
    auto b = qplane::parse_element<S>(args.exprs.at(1), q);
    print_element(qplane::mul(a, b), format);
  } else if (verb == "star") {
    print_element(qplane::star(qplane::parse_element<S>(args.exprs.at(0), q)), format);
  } else if (verb == "inner") {
    auto w = weights_from_cli<S>(args.weights);
    auto a = qplane::parse_element<S>(args.exprs.at(0), q);
    auto b = qplane::parse_element<S>(args.exprs.at(1), q);
    print_scalar(qplane::inner(a, b, w), format);
  } else if (verb == "gram") {
    auto w = weights_from_cli<S>(args.weights);
    std::vector<qplane::Element<S>> basis;
    for (const auto& text : args.exprs) basis.push_back(qplane::parse_element<S>(text, q));
    auto g = qplane::gram(basis, w);
    if (format == Format::json) {
      emit(qplane::gram_to_json(g));
    } else {
      for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c)
          std::cout << qplane::scalar_traits<S>::to_string(g(r, c))
                    << (c + 1 == g.cols() ? "" : "  ");
        std::cout << "\n";
      }
    }
  } else if (verb == "project") {
    auto w = weights_from_cli<S>(args.weights);
    print_element(qplane::project_holomorphic(qplane::parse_element<S>(args.exprs.at(0), q), w),
                  format);
  } else if (verb == "toeplitz") {
    auto w = weights_from_cli<S>(args.weights);
    print_operator(qplane::toeplitz(qplane::parse_element<S>(args.exprs.at(0), q), w, args.dim),
                   format);
  } else if (verb == "compose") {
    auto w = weights_from_cli<S>(args.weights);
    auto t1 = qplane::toeplitz(qplane::parse_element<S>(args.exprs.at(0), q), w, args.dim);
    auto t2 = qplane::toeplitz(qplane::parse_element<S>(args.exprs.at(1), q), w, args.dim);
    print_operator(qplane::compose(t1, t2), format);
  } else if (verb == "adjoint") {
    auto w = weights_from_cli<S>(args.weights);
    print_operator(qplane::adjoint(qplane::toeplitz(qplane::parse_element<S>(args.exprs.at(0), q),
                                                    w, args.dim)),
                   format);
  } else if (verb == "ccr-check") {
    using R = typename qplane::scalar_traits<S>::real_type;
    R qr = real_from_cli<S>(args.q);
    R w0 = real_from_cli<S>(args.w0);
    double residual = qplane::ccr_residual<S>(qr, w0, args.dim);
    if (format == Format::json)
      emit(qplane::json{{"residual", qplane::double_to_string(residual)}});
    else
      std::cout << "residual = " << qplane::double_to_string(residual) << "\n";
  } else {
    throw qplane::domain_error("unhandled verb " + verb);
  }
}

template <class R>
void run_degeneracy(const CommonArgs& args, Format format) {
  auto w = qplane::weight_sequence_from_spec<R>(args.weights);
  if (args.smax < static_cast<long>(args.rmax))
    std::cerr << "warning: smax < rmax leaves some slices short of full width\n";
  auto report = qplane::nondegeneracy_scan(w, args.mmax, args.rmax, args.smax);
  if (format == Format::json) {
    emit(qplane::degeneracy_report_to_json(report));
    return;
  }
  for (const auto& entry : report.entries) {
    std::cout << "m=" << entry.m << " R=" << entry.order << " " << to_string(entry.verdict)
              << " horizon=" << entry.horizon;
    if (entry.verdict == qplane::ScanVerdict::candidate_witness) {
      std::cout << " witness=[";
      for (std::size_t i = 0; i < entry.witness.size(); ++i)
        std::cout << (i ? ", " : "") << qplane::real_traits<R>::to_string(entry.witness[i]);
      std::cout << "]";
    }
    std::cout << "\n";
  }
}

void run_definiteness(const CommonArgs& args, Format format) {
  auto w = qplane::weight_sequence_from_spec<double>(args.weights);
  auto report = qplane::definiteness_probe(w, args.maxdeg);
  if (format == Format::json) {
    emit(qplane::definiteness_report_to_json(report));
    return;
  }
  std::cout << "min_eigenvalue = " << qplane::double_to_string(report.min_eigenvalue) << "\n";
  if (report.witness)
    std::cout << "witness = " << qplane::element_to_string(*report.witness) << "\n";
}

void run_norm(const CommonArgs& args, Format format) {
  auto w = qplane::weight_sequence_from_spec<double>(args.weights);
  if (!args.symbol.empty()) {
    ComplexD q{1.0, 0.0};
    auto g = qplane::parse_element<ComplexD>(args.symbol, q);
    auto t = qplane::toeplitz(g, w, args.dim);
    double sigma = qplane::operator_norm_lower_bound(t);
    if (format == Format::json)
      emit(qplane::json{{"symbol", qplane::element_to_string(g)},
                        {"dim", args.dim},
                        {"norm_lower_bound", sigma}});
    else
      std::cout << "norm_lower_bound = " << qplane::double_to_string(sigma) << " (dim "
                << args.dim << ")\n";
    return;
  }
  auto report = qplane::norm_bound_monomial(args.i, args.j, w, args.amax);
  if (format == Format::json) {
    emit(qplane::json{{"i", args.i},
                      {"j", args.j},
                      {"sup_estimate", report.sup_estimate},
                      {"attained_at", report.attained_at},
                      {"verdict", to_string(report.verdict)}});
  } else if (format == Format::csv) {
    std::cout << "a,c_a\n";
    for (std::size_t a = 0; a < report.coefficients.size(); ++a)
      std::cout << a << "," << qplane::double_to_string(report.coefficients[a]) << "\n";
  } else {
    std::cout << "sup_estimate = " << qplane::double_to_string(report.sup_estimate)
              << " attained_at = " << report.attained_at
              << " verdict = " << to_string(report.verdict) << "\n";
  }
}

void run_compact(const CommonArgs& args, Format format) {
  auto w = qplane::weight_sequence_from_spec<double>(args.weights);
  auto verdict = qplane::compactness_probe(args.i, args.j, w, args.amax, args.tol);
  if (format == Format::json) {
    emit(qplane::json{{"i", args.i}, {"j", args.j}, {"tol", args.tol}, {"verdict", to_string(verdict)}});
  } else if (format == Format::csv) {
    auto c = qplane::action_coefficients(args.i, args.j, w, args.amax);
    std::cout << "a,c_a\n";
    for (std::size_t a = 0; a < c.size(); ++a)
      std::cout << a << "," << qplane::double_to_string(c[a]) << "\n";
  } else {
    std::cout << "verdict = " << to_string(verdict) << "\n";
  }
}

bool weights_are_rational(const std::string& spec) {
  try {
    qplane::weight_sequence_from_spec<Rational>(spec);
    return true;
  } catch (const qplane::error&) {
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum plane toolkit: normally ordered symbol algebra, weighted pairings,\n"
               "kernel projection and truncated Toeplitz operators"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonArgs args;
  app.add_option("--format,-f", args.format, "output format: human, json or csv")
      ->envname("QPLANE_FORMAT");

  auto add_symbol_command = [&](const std::string& name, const std::string& desc, int min_exprs,
                                int max_exprs, bool needs_weights, bool needs_dim) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--q", args.q, "deformation parameter (rational selects exact arithmetic)");
    if (needs_weights) sub->add_option("--weights", args.weights, "weight sequence spec");
    if (needs_dim) sub->add_option("--dim", args.dim, "truncation dimension");
    sub->add_option("expr", args.exprs, "symbol expression(s)")->required()->expected(min_exprs, max_exprs);
    return sub;
  };

  add_symbol_command("mul", "normally ordered product of two symbols", 2, 2, false, false);
  add_symbol_command("star", "conjugation of a symbol", 1, 1, false, false);
  add_symbol_command("inner", "weighted inner product of two symbols", 2, 2, true, false);
  add_symbol_command("gram", "Gram matrix of the given symbols", 1, -1, true, false);
  add_symbol_command("project", "reproducing-kernel projection onto polynomials in t", 1, 1, true, false);
  add_symbol_command("toeplitz", "truncated Toeplitz operator of a symbol", 1, 1, true, true);
  add_symbol_command("compose", "compose the Toeplitz operators of two symbols", 2, 2, true, true);
  add_symbol_command("adjoint", "adjoint of the Toeplitz operator of a symbol", 1, 1, true, true);

  CLI::App* ccr = app.add_subcommand("ccr-check", "residual of the canonical commutation relation");
  ccr->add_option("--q", args.q, "deformation parameter");
  ccr->add_option("--w0", args.w0, "weight normalization w_0");
  ccr->add_option("--dim", args.dim, "truncation dimension");

  CLI::App* deg = app.add_subcommand("degeneracy", "scan the pairing for degeneracy witnesses");
  deg->add_option("--weights", args.weights, "weight sequence spec");
  deg->add_option("--mmax", args.mmax, "largest |sector| to scan");
  deg->add_option("--rmax", args.rmax, "largest order R to scan");
  deg->add_option("--smax", args.smax, "column horizon s'");

  CLI::App* definiteness = app.add_subcommand("definiteness", "least Gram eigenvalue up to a max-degree");
  definiteness->add_option("--weights", args.weights, "weight sequence spec");
  definiteness->add_option("--maxdeg", args.maxdeg, "largest monomial max-degree");

  CLI::App* norm = app.add_subcommand("norm", "boundedness scan for a monomial symbol");
  norm->add_option("--weights", args.weights, "weight sequence spec");
  norm->add_option("--i", args.i, "power of t");
  norm->add_option("--j", args.j, "power of tb");
  norm->add_option("--amax", args.amax, "scan horizon");
  norm->add_option("--symbol", args.symbol, "general symbol: report a singular-value lower bound");
  norm->add_option("--dim", args.dim, "truncation dimension for --symbol");

  CLI::App* compact = app.add_subcommand("compact", "compactness scan for a monomial symbol");
  compact->add_option("--weights", args.weights, "weight sequence spec");
  compact->add_option("--i", args.i, "power of t");
  compact->add_option("--j", args.j, "power of tb");
  compact->add_option("--amax", args.amax, "scan horizon");
  compact->add_option("--tol", args.tol, "tail threshold");

  CLI11_PARSE(app, argc, argv);

  try {
    Format format = parse_format(args.format);
    std::string verb = app.get_subcommands().front()->get_name();
    if (verb == "degeneracy") {
      if (weights_are_rational(args.weights))
        run_degeneracy<Rational>(args, format);
      else
        run_degeneracy<double>(args, format);
    } else if (verb == "definiteness") {
      run_definiteness(args, format);
    } else if (verb == "norm") {
      run_norm(args, format);
    } else if (verb == "compact") {
      run_compact(args, format);
    } else {
      bool exact = is_rational_literal(args.q);
      if (exact)
        run_symbol_command<GaussianRational>(verb, args, format);
      else
        run_symbol_command<ComplexD>(verb, args, format);
    }
  } catch (const qplane::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
