// Command-line front end: tl <subcommand> [options].
#include <iostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "disk_cache.hpp"
#include "render.hpp"
#include "tl/jw.hpp"
#include "tl/pljw.hpp"
#include "tl/serialize.hpp"

namespace {

using tl::Json;
using tlcli::DiskCache;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kNoDescent = 2;
constexpr int kUsage = 64;
constexpr int kInconsistent = 65;

struct ExitError {
  int code;
  std::string message;
};

std::shared_ptr<const tl::PointedField> parse_field(const std::string& spec) {
  static const std::regex grammar(R"(p=(\d+),minpoly=(-?\d+(?:,-?\d+)*))");
  std::smatch match;
  if (!std::regex_match(spec, match, grammar)) {
    throw ExitError{kUsage, "invalid field spec '" + spec + "', expected p=<prime>,minpoly=c0,c1,..."};
  }
  std::vector<long> minpoly;
  std::stringstream coeffs(match[2].str());
  for (std::string c; std::getline(coeffs, c, ',');) minpoly.push_back(std::stol(c));
  try {
    return tl::PointedField::create(static_cast<std::uint32_t>(std::stoul(match[1].str())), minpoly);
  } catch (const std::exception& e) {
    throw ExitError{kUsage, std::string("invalid field: ") + e.what()};
  }
}

/// Shared torsion/field options.
struct TorsionOptions {
  std::optional<int> ell;
  std::optional<std::string> p;
  std::optional<std::string> field;

  void add(CLI::App* app) {
    app->add_option("--ell", ell, "quantum characteristic ell");
    app->add_option("--p", p, "characteristic p (a prime, or inf)");
    app->add_option("--field", field, "pointed field p=<prime>,minpoly=c0,c1,...");
  }

  std::shared_ptr<const tl::PointedField> pointed_field() const { return field ? parse_field(*field) : nullptr; }

  /// Torsion from --field (checked against --ell/--p) or from --ell and --p.
  std::optional<tl::TorsionParams> torsion(bool required) const {
    std::optional<std::uint32_t> pv;
    bool p_infinite = false;
    if (p) {
      if (*p == "inf" || *p == "infinity") {
        p_infinite = true;
      } else {
        try {
          pv = static_cast<std::uint32_t>(std::stoul(*p));
        } catch (const std::exception&) {
          throw ExitError{kUsage, "--p must be a prime or inf"};
        }
        if (!tl::is_prime(*pv)) throw ExitError{kUsage, "--p must be a prime or inf"};
      }
    }
    if (ell && *ell < 2) throw ExitError{kUsage, "--ell must be at least 2"};
    if (field) {
      const auto k = parse_field(*field);
      const tl::TorsionParams t = tl::torsion_of(*k);
      if (ell && *ell != t.ell) {
        throw ExitError{kInconsistent, "--ell " + std::to_string(*ell) + " but the field has ell = " + std::to_string(t.ell)};
      }
      if (p_infinite || (pv && *pv != *t.p)) throw ExitError{kInconsistent, "--p disagrees with the field characteristic"};
      return t;
    }
    if (ell && (pv || p_infinite)) {
      return tl::TorsionParams{*ell, pv};
    }
    if (required) throw ExitError{kUsage, "give --ell and --p, or --field"};
    return std::nullopt;
  }
};

enum class Format { text, json, latex };

Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "json") return Format::json;
  if (s == "latex") return Format::latex;
  throw ExitError{kUsage, "unknown format '" + s + "'"};
}

template <class M>
void print_morphism(const M& m, Format f, const std::string& title) {
  switch (f) {
    case Format::json:
      std::cout << tl::encode(m).dump(2) << "\n";
      break;
    case Format::latex:
      std::cout << tlcli::render_latex(m, title);
      break;
    case Format::text:
      std::cout << tlcli::render_text(m, title);
      break;
  }
}

std::string join(const std::vector<std::int64_t>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

// ---- jw ----

struct JwCommand {
  int n = 0;
  std::optional<std::string> field;
  std::string format = "text";

  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("jw", "Jones-Wenzl idempotent JW_n over Q(delta) or a pointed field");
    app->add_option("--n", n, "number of strands")->required()->check(CLI::Range(1, 20));
    app->add_option("--field", field, "pointed field p=<prime>,minpoly=c0,c1,...");
    app->add_option("--format", format, "text, json or latex");
    app->final_callback([this] { run(); });
  }

  void run() {
    const Format f = parse_format(format);
    auto cache = DiskCache::from_environment();
    const tl::GenericMorphism& j = cache.jw(n);
    const std::string title = "JW_" + std::to_string(n);
    if (field) {
      auto k = parse_field(*field);
      print_morphism(tl::reduce_morphism(j, k), f, title);
    } else {
      print_morphism(j, f, title);
    }
  }
};

// ---- pljw ----

struct PljwCommand {
  int n = 0;
  TorsionOptions torsion;
  std::string format = "text";
  std::string show = "total";

  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("pljw", "(ell, p)-Jones-Wenzl idempotent pJW_n");
    app->add_option("--n", n, "number of strands")->required()->check(CLI::Range(1, 20));
    torsion.add(app);
    app->add_option("--format", format, "text, json or latex");
    app->add_option("--show", show, "total, lambda, support or terms")
        ->check(CLI::IsMember({"total", "lambda", "support", "terms"}));
    app->final_callback([this] { run(); });
  }

  void run() {
    const Format f = parse_format(format);
    const tl::TorsionParams t = *torsion.torsion(true);
    auto k = torsion.pointed_field();
    const std::string title = "pJW_" + std::to_string(n) + " " + t.to_string();
    if (show == "support") {
      const auto s = tl::supp(n, t);
      if (f == Format::json) {
        std::cout << Json{{"fmt", tl::kFormatVersion}, {"n", n}, {"torsion", tl::encode(t)}, {"support", s}}.dump(2)
                  << "\n";
      } else {
        std::cout << join(s, " ") << "\n";
      }
      return;
    }
    if (show == "lambda") {
      const auto lambdas = tl::pljw_lambda(n, t);
      if (f == Format::json) {
        Json lambda = Json::object();
        for (const auto& [i, l] : lambdas) lambda[std::to_string(i)] = tl::encode(l);
        std::cout << Json{{"fmt", tl::kFormatVersion}, {"n", n}, {"torsion", tl::encode(t)}, {"lambda", lambda}}.dump(2)
                  << "\n";
      } else {
        std::string out = "{";
        bool first = true;
        for (auto it = lambdas.rbegin(); it != lambdas.rend(); ++it) {
          out += (first ? "" : ", ") + std::to_string(it->first) + ": " +
                 (f == Format::latex ? tlcli::latex_rational(it->second) : it->second.to_string());
          first = false;
        }
        std::cout << out << "}\n";
      }
      return;
    }
    auto cache = DiskCache::from_environment();
    const tl::PljwDecomposition& d = cache.pljw(n, t);
    if (show == "terms") {
      if (f == Format::json) {
        Json terms = Json::object();
        for (const auto& [i, u] : d.terms) terms[std::to_string(i)] = tl::encode(u);
        std::cout << Json{{"fmt", tl::kFormatVersion}, {"n", n}, {"torsion", tl::encode(t)}, {"terms", terms}}.dump(2)
                  << "\n";
      } else {
        for (const auto& [i, u] : d.terms) print_morphism(u, f, "U_" + std::to_string(n) + "^" + std::to_string(i));
      }
    } else if (k) {
      print_morphism(tl::descend_pljw(n, k), f, title);
    } else {
      print_morphism(d.total, f, title);
    }
  }
};

// ---- verify ----

class Report {
 public:
  void line(bool pass, const std::string& what, const std::string& detail = {}) {
    std::cout << (pass ? "PASS " : "FAIL ") << what << (detail.empty() ? "" : "  " + detail) << "\n";
    if (!pass) ++failures_;
  }
  void info(const std::string& what) { std::cout << "INFO " << what << "\n"; }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

struct VerifyCommand {
  std::string suite;
  int max_n = 8;
  TorsionOptions torsion;

  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("verify", "run a verification suite");
    app->add_option("--suite", suite, "jw, pljw, traces or descent")
        ->required()
        ->check(CLI::IsMember({"jw", "pljw", "traces", "descent"}));
    app->add_option("--max-n", max_n, "largest n")->check(CLI::Range(1, 14));
    torsion.add(app);
    app->final_callback([this] { run(); });
  }

  void run() {
    Report r;
    auto cache = DiskCache::from_environment();
    if (suite == "jw") {
      run_jw(r, cache);
    } else if (suite == "pljw") {
      run_pljw(r, cache);
    } else if (suite == "traces") {
      run_traces(r, cache);
    } else {
      run_descent(r, cache);
    }
    std::cout << (r.failures() == 0 ? "OK" : std::to_string(r.failures()) + " FAILED") << "\n";
    if (r.failures() != 0) throw ExitError{kVerifyFailed, ""};
  }

  void run_jw(Report& r, DiskCache& cache) {
    for (int n = 1; n <= max_n; ++n) {
      const auto& j = cache.jw(n);
      const std::string tag = "JW_" + std::to_string(n);
      r.line(tl::jw_square(n) == j, tag + " idempotent");
      r.line(tl::annihilated_by_generators(j), tag + " killed by every u_i");
      r.line(tl::involute(j) == j, tag + " iota-invariant");
      r.line(j.coefficient_value(tl::Diagram::identity(n)).is_one(), tag + " identity coefficient 1");
      if (n >= 2) {
        bool morrison = true;
        for (const auto& [d, c] : j.terms()) morrison = morrison && tl::jw_coeff_morrison(d) == c;
        morrison = morrison && j.size() == tl::catalan(n);
        r.line(morrison, tag + " matches the fold recursion");
      }
      for (int m = 1; m < n; ++m) {
        r.line(tl::jw_trace_check(n, m), "tau^" + std::to_string(m) + "(" + tag + ")");
      }
      const auto full = tl::partial_trace(j, n);
      r.line(full == tl::scale(tl::GenericMorphism::identity(tl::GenericRing{}, 0), tl::RationalFunction(tl::quantum_int(n + 1))),
             "full trace of " + tag + " is [" + std::to_string(n + 1) + "]");
    }
  }

  void run_pljw(Report& r, DiskCache& cache) {
    const tl::TorsionParams t = *torsion.torsion(true);
    auto k = torsion.pointed_field();
    for (int n = 1; n <= max_n; ++n) {
      const auto& d = cache.pljw(n, t);
      const auto report = tl::verify_pljw(d);
      const std::string tag = "pJW_" + std::to_string(n);
      for (const auto& c : report.checks) r.line(c.pass, tag + " " + c.name, c.detail);
      r.line(tl::supp_split_check(n, t), tag + " support split");
      if (k) {
        const auto e = tl::descend_pljw(n, k);
        r.line(tl::compose(e, e) == e, tag + " descends to an idempotent over " + k->to_string());
      }
    }
  }

  void run_traces(Report& r, DiskCache& cache) {
    auto k = torsion.pointed_field();
    if (!k) throw ExitError{kUsage, "the traces suite needs --field"};
    const tl::TorsionParams t = *torsion.torsion(true);
    for (int n = 1; n <= max_n; ++n) {
      cache.pljw(n, t);
      const std::string tag = "pJW_" + std::to_string(n);
      if (tl::is_adam(n, t)) {
        for (int m = 1; m < n; ++m) r.line(tl::jw_trace_check(n, m), "tau^" + std::to_string(m) + "(JW_" + std::to_string(n) + ")");
        continue;
      }
      const auto c = tl::trace_case_check(n, k);
      const std::string head = "tau^" + std::to_string(c.t) + "(" + tag + ")";
      r.line(c.generic_form, head + " = " + c.generic_stated + " pJW_" + std::to_string(n - c.t) + " over Q(δ)",
             c.generic_form ? "" : "observed " + c.generic_observed.value_or("not proportional"));
      r.line(c.field_case, head + " = " + c.field_stated + " pJW_" + std::to_string(n - c.t) + " over " + k->to_string(),
             c.field_case ? "" : "observed " + c.field_observed.value_or("not proportional"));
      const tl::LPDigits digits = tl::lp_digits(n + 1, t);
      const int a = digits.lowest();
      if (a > 0 && digits.highest() > a) {
        for (int s = 1; s < digits.digit(a) * tl::p_super(a, t); ++s) {
          const auto ic = tl::identity_coeff_trace(n, s, t);
          r.info("informative: identity coefficient of tau^" + std::to_string(s) + "(" + tag + ") is " +
                 ic.coefficient.to_string() + (ic.matches ? ", equal to " : ", not ") + ic.expected.to_string());
        }
      }
    }
    if (t.p) {
      const int big_p = t.ell;
      for (int a = 2; a < static_cast<int>(*t.p) && a * big_p - 1 <= max_n; ++a) {
        const auto c = tl::trace_proper_check(a, 1, big_p, k);
        r.line(c.holds, c.note + " = " + c.stated, c.holds ? "" : "observed " + c.observed.value_or("not proportional"));
        if (static_cast<int>(*t.p) != big_p) {
          const auto literal = tl::trace_proper_check(a, 1, static_cast<int>(*t.p), k);
          r.info("informative: " + literal.note);
        }
      }
    }
  }

  void run_descent(Report& r, DiskCache& cache) {
    auto k = torsion.pointed_field();
    if (!k) throw ExitError{kUsage, "the descent suite needs --field"};
    const tl::TorsionParams t = *torsion.torsion(true);
    std::cout << "n\tadam\tbinomial\tdescends\n";
    for (int n = 1; n <= max_n; ++n) {
      const bool adam = tl::jw_exists_adam(n, t);
      const bool binomial = tl::jw_exists_binomial(n, *k);
      bool descends = true;
      try {
        tl::reduce_morphism(cache.jw(n), k);
      } catch (const tl::DoesNotDescend&) {
        descends = false;
      }
      std::cout << n << "\t" << adam << "\t" << binomial << "\t" << descends << "\n";
      r.line(adam == binomial && binomial == descends, "JW_" + std::to_string(n) + " trichotomy");
    }
  }
};

// ---- small commands ----

struct DigitsCommand {
  std::int64_t x = 0;
  TorsionOptions torsion;
  std::string format = "text";
  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("digits", "(ell, p)-digits of x");
    app->add_option("--x", x, "integer to expand")->required()->check(CLI::PositiveNumber);
    torsion.add(app);
    app->add_option("--format", format, "text or json");
    app->final_callback([this] {
      const auto d = tl::lp_digits(x, *torsion.torsion(true));
      if (parse_format(format) == Format::json) {
        std::cout << Json{{"fmt", tl::kFormatVersion}, {"x", x}, {"torsion", tl::encode(d.torsion)}, {"digits", d.digits}}.dump(2)
                  << "\n";
      } else {
        std::cout << d.to_string() << "\n";
      }
    });
  }
};

struct SuppCommand {
  std::int64_t n = 0;
  TorsionOptions torsion;
  std::string format = "text";
  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("supp", "support I_n");
    app->add_option("--n", n, "n")->required()->check(CLI::NonNegativeNumber);
    torsion.add(app);
    app->add_option("--format", format, "text or json");
    app->final_callback([this] {
      const auto t = *torsion.torsion(true);
      const auto s = tl::supp(n, t);
      if (parse_format(format) == Format::json) {
        std::cout << Json{{"fmt", tl::kFormatVersion}, {"n", n}, {"torsion", tl::encode(t)}, {"support", s}}.dump(2) << "\n";
      } else {
        std::cout << join(s, " ") << "\n";
      }
    });
  }
};

struct FatherCommand {
  std::int64_t n = 0;
  TorsionOptions torsion;
  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("father", "father f(n) of a non-Adam n");
    app->add_option("--n", n, "n")->required()->check(CLI::NonNegativeNumber);
    torsion.add(app);
    app->final_callback([this] {
      const auto t = *torsion.torsion(true);
      if (tl::is_adam(n, t)) throw ExitError{kUsage, std::to_string(n) + " is Adam and has no father"};
      std::cout << tl::father(n, t) << "\n";
    });
  }
};

struct ExistsCommand {
  int n = 0;
  TorsionOptions torsion;
  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("exists", "whether JW_n descends: closed form and binomial test");
    app->add_option("--n", n, "n")->required()->check(CLI::PositiveNumber);
    torsion.add(app);
    app->final_callback([this] {
      const auto t = *torsion.torsion(true);
      const bool adam = tl::jw_exists_adam(n, t);
      auto k = torsion.pointed_field();
      if (!k) {
        std::cout << "adam: " << (adam ? "true" : "false") << "\n";
        return;
      }
      const bool binomial = tl::jw_exists_binomial(n, *k);
      std::cout << "adam: " << (adam ? "true" : "false") << ", binomial: " << (binomial ? "true" : "false") << "\n";
      if (adam != binomial) throw ExitError{kVerifyFailed, "the two existence tests disagree"};
    });
  }
};

struct TraceCommand {
  int n = 0;
  int steps = 1;
  TorsionOptions torsion;
  std::string format = "text";
  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("trace", "partial trace of pJW_n");
    app->add_option("--n", n, "n")->required()->check(CLI::Range(1, 20));
    app->add_option("--steps", steps, "number of strands to close")->check(CLI::NonNegativeNumber);
    torsion.add(app);
    app->add_option("--format", format, "text, json or latex");
    app->final_callback([this] {
      const Format f = parse_format(format);
      if (steps > n) throw ExitError{kUsage, "--steps exceeds --n"};
      const auto t = *torsion.torsion(true);
      auto cache = DiskCache::from_environment();
      cache.pljw(n, t);
      const auto traced = tl::trace_pljw(n, t, steps);
      const std::string title = "tau^" + std::to_string(steps) + "(pJW_" + std::to_string(n) + ")";
      if (auto k = torsion.pointed_field()) {
        print_morphism(tl::reduce_morphism(traced, k), f, title);
      } else {
        print_morphism(traced, f, title);
      }
    });
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jones-Wenzl and (ell, p)-Jones-Wenzl idempotents of Temperley-Lieb algebras"};
  app.require_subcommand(1);
  JwCommand jw;
  PljwCommand pljw;
  VerifyCommand verify;
  DigitsCommand digits;
  SuppCommand supp;
  FatherCommand father;
  ExistsCommand exists;
  TraceCommand trace;
  jw.attach(app);
  pljw.attach(app);
  verify.attach(app);
  digits.attach(app);
  supp.attach(app);
  father.attach(app);
  exists.attach(app);
  trace.attach(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const ExitError& e) {
    if (!e.message.empty()) std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const tl::DoesNotDescend& e) {
    std::cerr << "DoesNotDescend: " << e.what() << "\n";
    return kNoDescent;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
  return kOk;
}
