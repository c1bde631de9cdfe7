#include "singchi/curve.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "singchi/errors.hpp"

namespace singchi {

bool Branch::puiseux_form() const { return puiseux_degree().has_value(); }

std::optional<unsigned> Branch::puiseux_degree() const {
  if (x.terms().size() != 1) return std::nullopt;
  const auto& [e, c] = *x.terms().begin();
  if (e == 0 || c != 1) return std::nullopt;
  return e;
}

bool Curve::weakly_validated() const {
  return std::find(weak_.begin(), weak_.end(), true) != weak_.end();
}

std::string Curve::to_string() const {
  std::string out = "curve \"" + name_ + "\"\n";
  for (const auto& b : branches_) {
    out += "branch { x = " + b.x.to_string() + ", y = " + b.y.to_string() + " }\n";
  }
  return out;
}

namespace {

unsigned exponent_gcd(const UniPoly& p, unsigned start) {
  unsigned g = start;
  for (const auto& [e, c] : p.terms()) g = std::gcd(g, e);
  return g;
}

// Same germ test for two Puiseux-form branches with equal n: the only
// reparameterizations preserving x = t^n are t -> w t with w^n = 1, and with
// rational coefficients w^j must be +1 or -1 wherever y_j != 0.
bool same_puiseux_germ(const Branch& a, const Branch& b, unsigned n) {
  std::vector<unsigned> support;
  for (const auto& [e, c] : a.y.terms()) support.push_back(e);
  for (const auto& [e, c] : b.y.terms()) {
    if (a.y.coefficient(e) == 0) return false;
  }
  if (support.size() != b.y.terms().size()) return false;
  for (unsigned m = 0; m < n; ++m) {
    bool matches = true;
    for (unsigned j : support) {
      const unsigned long long jm = static_cast<unsigned long long>(j) * m;
      if ((2 * jm) % n != 0) {
        matches = false;
        break;
      }
      const BigRat expected = jm % n == 0 ? a.y.coefficient(j) : BigRat(-a.y.coefficient(j));
      if (b.y.coefficient(j) != expected) {
        matches = false;
        break;
      }
    }
    if (matches) return true;
  }
  return false;
}

}  // namespace

Curve validate(std::string name, std::vector<Branch> branches) {
  using Kind = ValidationError::Kind;
  if (branches.empty()) throw ValidationError(Kind::EmptyCurve, 0, 0, "curve has no branches");
  Curve c;
  c.name_ = std::move(name);
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const Branch& b = branches[i];
    const std::string label = "branch " + std::to_string(i + 1);
    if (b.x.is_zero() && b.y.is_zero()) {
      throw ValidationError(Kind::ZeroBranch, i, i, label + " is identically zero");
    }
    if (b.x.coefficient(0) != 0 || b.y.coefficient(0) != 0) {
      throw ValidationError(Kind::NonzeroConstantTerm, i, i,
                            label + " does not pass through the origin (nonzero constant term)");
    }
    unsigned g = 0;
    bool weak = true;
    if (auto n = b.puiseux_degree()) {
      g = exponent_gcd(b.y, *n);
      weak = false;
    } else {
      g = exponent_gcd(b.y, exponent_gcd(b.x, 0));
    }
    if (g != 1) {
      throw ValidationError(Kind::NonPrimitiveBranch, i, i,
                            label + " is not primitive (gcd of exponents " + std::to_string(g) + ")");
    }
    c.weak_.push_back(weak);
  }
  for (std::size_t i = 0; i < branches.size(); ++i) {
    for (std::size_t j = i + 1; j < branches.size(); ++j) {
      const Branch& a = branches[i];
      const Branch& b = branches[j];
      bool same = a == b;
      auto na = a.puiseux_degree();
      auto nb = b.puiseux_degree();
      if (!same && na && nb && *na == *nb) same = same_puiseux_germ(a, b, *na);
      if (same) {
        throw ValidationError(Kind::DuplicateBranch, i, j,
                              "branches " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                  " define the same germ");
      }
    }
  }
  c.branches_ = std::move(branches);
  return c;
}

// ------------------------------------------------------------------ parser

namespace {

class CurveParser {
 public:
  explicit CurveParser(const std::string& text) : text_(text) {}

  Curve parse(const std::string& default_name) {
    std::string name = default_name;
    skip_ws();
    if (peek_word("curve")) {
      consume_word("curve");
      skip_ws();
      name = string_literal();
    }
    std::vector<Branch> branches;
    skip_ws();
    while (peek_word("branch")) {
      branches.push_back(branch_decl());
      skip_ws();
    }
    if (pos_ < text_.size()) fail("expected 'branch'");
    if (branches.empty()) fail("expected at least one 'branch' declaration");
    return validate(std::move(name), std::move(branches));
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(line, column, message);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end()) {
      char ch = text_[pos_];
      if (ch == '#') {
        while (!at_end() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool peek_word(const std::string& w) const { return text_.compare(pos_, w.size(), w) == 0; }

  void consume_word(const std::string& w) {
    if (!peek_word(w)) fail("expected '" + w + "'");
    pos_ += w.size();
  }

  void expect(char ch) {
    skip_ws();
    if (peek() != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  std::string string_literal() {
    if (peek() != '"') fail("expected string literal");
    ++pos_;
    std::size_t start = pos_;
    while (!at_end() && text_[pos_] != '"') ++pos_;
    if (at_end()) fail("unterminated string literal");
    std::string s = text_.substr(start, pos_ - start);
    ++pos_;
    return s;
  }

  Branch branch_decl() {
    consume_word("branch");
    expect('{');
    skip_ws();
    if (peek() != 'x') fail("expected 'x'");
    ++pos_;
    expect('=');
    UniPoly x = poly();
    expect(',');
    skip_ws();
    if (peek() != 'y') fail("expected 'y'");
    ++pos_;
    expect('=');
    UniPoly y = poly();
    expect('}');
    return Branch{std::move(x), std::move(y)};
  }

  std::string digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return text_.substr(start, pos_ - start);
  }

  UniPoly poly() {
    skip_ws();
    UniPoly::Terms terms;
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    add_term(terms, negative);
    while (true) {
      skip_ws();
      char ch = peek();
      if (ch != '+' && ch != '-') break;
      ++pos_;
      add_term(terms, ch == '-');
    }
    return UniPoly(std::move(terms));
  }

  void add_term(UniPoly::Terms& terms, bool negative) {
    skip_ws();
    BigRat coeff = 1;
    bool has_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string num = digits();
      if (peek() == '/') {
        ++pos_;
        std::string den = digits();
        if (BigInt(den) == 0) fail("zero denominator");
        num += "/" + den;
      }
      coeff = parse_rational(num);
      has_coeff = true;
    }
    unsigned exponent = 0;
    std::size_t save = pos_;
    skip_ws();
    if (peek() == '*' && has_coeff) {
      ++pos_;
      skip_ws();
      if (peek() != 't') fail("expected 't' after '*'");
    }
    if (peek() == 't') {
      ++pos_;
      exponent = 1;
      if (peek() == '^') {
        ++pos_;
        std::string e = digits();
        if (e.size() > 9) fail("exponent too large");
        exponent = static_cast<unsigned>(std::stoul(e));
      }
    } else {
      pos_ = save;
      if (!has_coeff) fail("expected a term");
    }
    if (negative) coeff = -coeff;
    auto [it, inserted] = terms.try_emplace(exponent, coeff);
    if (!inserted) it->second += coeff;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Curve parse_curve(const std::string& text, const std::string& default_name) {
  return CurveParser(text).parse(default_name);
}

Curve load_curve(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open curve file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_curve(buffer.str(), std::filesystem::path(path).stem().string());
}

// ------------------------------------------------------------- valuations

Valuation ValueVector::norm() const {
  Valuation s = 0;
  for (auto v : entries) s = s + v;
  return s;
}

bool ValueVector::is_finite() const {
  return std::none_of(entries.begin(), entries.end(), [](Valuation v) { return v.is_infinite(); });
}

std::string ValueVector::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out += (i ? ", " : "") + entries[i].to_string();
  }
  return out + ")";
}

Valuation valuation(const Curve& curve, std::size_t branch, const BiPoly& g) {
  const Branch& b = curve.branch(branch);
  auto order = poly_compose(g, b.x, b.y).order();
  return order ? Valuation(*order) : Valuation::infinity();
}

ValueVector value_vector(const Curve& curve, const BiPoly& g) {
  ValueVector v;
  for (std::size_t i = 0; i < curve.r(); ++i) v.entries.push_back(valuation(curve, i, g));
  return v;
}

}  // namespace singchi
