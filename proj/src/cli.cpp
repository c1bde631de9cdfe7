#include "singchi/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "singchi/curve.hpp"
#include "singchi/errors.hpp"
#include "singchi/filtration.hpp"
#include "singchi/integral.hpp"
#include "singchi/oracle.hpp"

namespace singchi::cli {

using nlohmann::ordered_json;

ordered_json terms_to_json(const MultiPoly& p) {
  ordered_json terms = ordered_json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back(ordered_json{{"e", e}, {"c", to_string(c)}});
  }
  return terms;
}

MultiPoly terms_from_json(const nlohmann::json& terms, std::size_t arity) {
  if (!terms.is_array()) throw std::invalid_argument("terms must be an array");
  MultiPoly p(arity);
  for (const auto& term : terms) {
    auto e = term.at("e").get<MultiPoly::Exponent>();
    BigInt c;
    if (c.set_str(term.at("c").get<std::string>(), 10) != 0) {
      throw std::invalid_argument("coefficient is not a decimal integer");
    }
    p.add_term(e, c);
  }
  return p;
}

ordered_json motivic_to_json(const MotivicClass& m) {
  ordered_json terms = ordered_json::array();
  for (const auto& [e, c] : m.terms()) {
    terms.push_back(ordered_json{{"e", {e}}, {"c", to_string(c)}});
  }
  return terms;
}

namespace {

struct CommonOptions {
  std::string input;
  std::optional<unsigned> bound;
  std::string format = "human";
  bool jet_level_check = false;
  unsigned threads = 1;
  unsigned max_bound = 256;
  std::string v_text;
  std::vector<std::string> seeds;
};

MultiIndex parse_vector(const std::string& text, std::size_t r) {
  MultiIndex v;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos ||
        piece.size() > 6) {
      throw CLI::ValidationError("--v", "expected comma-separated non-negative integers");
    }
    v.push_back(static_cast<unsigned>(std::stoul(piece)));
  }
  if (v.size() != r) {
    throw CLI::ValidationError("--v", "expected " + std::to_string(r) + " entries, got " +
                                          std::to_string(v.size()));
  }
  return v;
}

std::string delta_label(std::size_t r) {
  if (r == 1) return "Δ(t)";
  std::string s = "Δ(";
  for (std::size_t i = 1; i <= r; ++i) s += (i > 1 ? "," : "") + std::string("t") + std::to_string(i);
  return s + ")";
}

ordered_json stabilization_json(const IntegralResult& integral) {
  ordered_json s;
  s["bound_used"] = integral.bound_used;
  s["stabilized"] = integral.stabilized;
  s["conductor"] = integral.conductor ? ordered_json(*integral.conductor) : ordered_json(nullptr);
  return s;
}

void check_jet_levels_over_box(const CodimTable& table, unsigned bound) {
  for (const auto& v : box_vectors(table.r(), bound)) {
    const unsigned k = default_jet_level(v);
    const auto base = fiber_chi(table, v);
    if (fiber_chi_at_level(table, v, k) != base || fiber_chi_at_level(table, v, k + 1) != base) {
      throw InternalMismatch("fiber Euler characteristic depends on the jet level");
    }
  }
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::string& command, const CommonOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    const Curve curve = opts.input == "-" ? parse_curve(read_stdin(), "stdin") : load_curve(opts.input);
    CodimTable table(curve);
    for (const auto& seed : opts.seeds) {
      const auto eq = seed.find('=');
      if (eq == std::string::npos) throw CLI::ValidationError("--seed-codim", "expected v=c");
      table.seed(parse_vector(seed.substr(0, eq), curve.r()), std::stoul(seed.substr(eq + 1)));
    }
    IntegralOptions integral_options;
    integral_options.bound = opts.bound;
    integral_options.threads = opts.threads;
    integral_options.ceiling = opts.max_bound;

    ordered_json doc;
    doc["curve"] = curve.name();
    doc["r"] = curve.r();
    doc["command"] = command;
    ordered_json params = ordered_json::object();
    params["bound"] = opts.bound ? ordered_json(*opts.bound) : ordered_json(nullptr);
    params["jet_level_check"] = opts.jet_level_check;
    std::string human;
    int code = kOk;

    if (command == "alexander") {
      auto a = alexander_detailed(table, integral_options);
      if (opts.jet_level_check) check_jet_levels_over_box(table, a.integral.bound_used);
      doc["parameters"] = params;
      doc["result"] = {{"terms", terms_to_json(a.delta)}};
      doc["stabilization"] = stabilization_json(a.integral);
      human = delta_label(curve.r()) + " = " + a.delta.to_string();
      warn_unstabilized(a.integral);
    } else if (command == "zeta") {
      auto z = zeta(table, integral_options);
      if (opts.jet_level_check) check_jet_levels_over_box(table, z.integral.bound_used);
      doc["parameters"] = params;
      ordered_json result{{"terms", terms_to_json(z.numerator)}};
      if (z.has_denominator) result["denominator"] = "1-t";
      doc["result"] = result;
      doc["stabilization"] = stabilization_json(z.integral);
      human = "ζ(t) = " + (z.has_denominator ? "(" + z.numerator.to_string() + ")/(1 - t)"
                                              : z.numerator.to_string());
      warn_unstabilized(z.integral);
    } else if (command == "codim" || command == "chi") {
      const MultiIndex v = parse_vector(opts.v_text, curve.r());
      params["v"] = v;
      doc["parameters"] = params;
      const bool is_codim = command == "codim";
      const long long value = is_codim ? static_cast<long long>(table.codim(v)) : fiber_chi(table, v);
      if (opts.jet_level_check) {
        const unsigned k = default_jet_level(v);
        for (unsigned level : {k, k + 1}) {
          const long long other = is_codim ? static_cast<long long>(table.codim_at_level(v, level))
                                           : fiber_chi_at_level(table, v, level);
          if (other != value) {
            throw InternalMismatch(command + " differs at jet level " + std::to_string(level));
          }
        }
      }
      doc["result"] = {{"value", std::to_string(value)}};
      human = std::to_string(value);
    } else if (command == "motivic") {
      const MultiIndex v = parse_vector(opts.v_text, curve.r());
      params["v"] = v;
      doc["parameters"] = params;
      const unsigned k = default_jet_level(v);
      const MotivicClass cls = motivic_fiber_class(table, v, k);
      if (opts.jet_level_check && motivic_fiber_class(table, v, k + 1) != cls) {
        throw InternalMismatch("motivic class differs at jet level " + std::to_string(k + 1));
      }
      doc["result"] = {{"terms", motivic_to_json(cls)}, {"jet_level", k},
                       {"specialization", to_string(cls.at_one())}};
      human = cls.to_string();
    } else if (command == "semigroup") {
      doc["parameters"] = params;
      ordered_json branches = ordered_json::array();
      std::ostringstream text;
      for (std::size_t i = 0; i < curve.r(); ++i) {
        const Branch& b = curve.branch(i);
        if (!b.puiseux_form()) {
          throw ValidationError(ValidationError::Kind::NotPuiseuxForm, i, i,
                                "semigroup needs branch " + std::to_string(i + 1) +
                                    " in Puiseux form (x = t^n)");
        }
        const auto ce = char_exponents(b);
        const auto sg = semigroup_generators(b);
        branches.push_back(ordered_json{{"branch", i + 1},
                                        {"n", ce.n},
                                        {"char_exponents", ce.betas},
                                        {"generators", sg.generators()},
                                        {"conductor", sg.conductor()},
                                        {"gaps", sg.gaps()}});
        text << (i ? "\n" : "") << "branch " << i + 1 << ": <";
        for (std::size_t j = 0; j < sg.generators().size(); ++j) {
          text << (j ? ", " : "") << sg.generators()[j];
        }
        text << ">, conductor " << sg.conductor();
      }
      doc["result"] = {{"branches", branches}};
      human = text.str();
    } else if (command == "verify") {
      doc["parameters"] = params;
      const auto report = verify(table, integral_options);
      ordered_json items = ordered_json::array();
      std::ostringstream text;
      for (const auto& it : report.items) {
        items.push_back(ordered_json{{"name", it.name},
                                     {"applicable", it.applicable},
                                     {"passed", it.passed},
                                     {"detail", it.detail}});
        text << (it.applicable ? (it.passed ? "PASS " : "FAIL ") : "SKIP ") << it.name << ": "
             << it.detail << "\n";
      }
      doc["result"] = {{"passed", report.all_passed()}, {"items", items}};
      human = text.str();
      if (!human.empty()) human.pop_back();
      if (!report.all_passed()) code = kInternal;
    }

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    doc["timing"] = {{"threads", opts.threads}, {"seconds", seconds}};
    if (opts.format == "json") {
      out_ << doc.dump(2) << "\n";
    } else {
      out_ << human << "\n";
    }
    return code;
  }

 private:
  static std::string read_stdin() {
    std::stringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }

  void warn_unstabilized(const IntegralResult& integral) {
    if (!integral.stabilized) {
      err_ << "warning: result not certified stable within bound " << integral.bound_used << "\n";
    }
  }

  std::ostream& out_;
  std::ostream& err_;
};

unsigned default_threads() {
  if (const char* env = std::getenv("SINGCHI_THREADS")) {
    try {
      const unsigned long n = std::stoul(env);
      if (n >= 1 && n <= 1024) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Alexander polynomial and monodromy zeta function of plane curve singularities "
               "via integration with respect to the Euler characteristic"};
  app.name("singchi");
  app.require_subcommand(1);

  CommonOptions opts;
  opts.threads = default_threads();
  unsigned bound_value = 0;

  struct Spec {
    const char* name;
    const char* help;
    bool needs_v;
  };
  const Spec specs[] = {
      {"alexander", "multivariable Alexander polynomial", false},
      {"zeta", "monodromy zeta function", false},
      {"codim", "codimension c(v) = dim O/J(v)", true},
      {"chi", "Euler characteristic of the stratum {v(g) = v}", true},
      {"semigroup", "value semigroup of each Puiseux-form branch", false},
      {"motivic", "class of the stratum {v(g) = v} in Z[L, 1/L]", true},
      {"verify", "cross-check against classical invariants", false},
  };
  std::vector<CLI::Option*> bound_opts;
  for (const auto& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("--input", opts.input, "curve file (.crv), '-' for stdin")->required();
    bound_opts.push_back(sub->add_option("--bound", bound_value, "explicit box bound"));
    sub->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"human", "json"}));
    sub->add_flag("--jet-level-check", opts.jet_level_check,
                  "recompute at the next jet level and fail on any difference");
    sub->add_option("--threads", opts.threads, "worker threads")->check(CLI::Range(1U, 1024U));
    sub->add_option("--max-bound", opts.max_bound, "ceiling for the conductor search (default 256)")
        ->check(CLI::Range(1U, 4096U));
    // Fault injection for exercising the invariant checks; not user facing.
    sub->add_option("--seed-codim", opts.seeds, "override a cached codimension, v=c")->group("");
    if (spec.needs_v) sub->add_option("--v", opts.v_text, "value vector a,b,...")->required();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  for (auto* o : bound_opts) {
    if (o->count() > 0) opts.bound = bound_value;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    return Runner(out, err).run(command, opts);
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const NotStabilized& e) {
    err << "not stabilized: " << e.what() << "\n";
    return kNotStabilized;
  } catch (const InternalMismatch& e) {
    err << "internal invariant violation: " << e.what() << "\n";
    return kInternal;
  } catch (const NotDivisible& e) {
    err << "internal invariant violation: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace singchi::cli
