#include "qccr/parse.hpp"

#include <cctype>
#include <cstdio>
#include <optional>

namespace qccr {

ParseError::ParseError(std::size_t column, const std::string& message)
    : std::invalid_argument("parse error at column " + std::to_string(column) + ": " + message), column_(column) {}

namespace {

using wick::ExactPolynomial;

class Parser {
 public:
  Parser(std::string_view text, std::size_t modes) : text_(text), modes_(modes) {}

  ExactPolynomial parse() {
    ExactPolynomial p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_ + 1, message); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  bool starts_atom() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'q' || c == 'I' || c == 'c' || c == 'a' ||
           c == '(';
  }

  ExactPolynomial scalar(const RationalFunction& r) const { return ExactPolynomial::constant(modes_, r); }

  static bool is_scalar(const ExactPolynomial& p) { return p.is_zero() || (p.degree() == 0); }

  static RationalFunction scalar_value(const ExactPolynomial& p) {
    return p.is_zero() ? RationalFunction() : p.terms().begin()->second;
  }

  ExactPolynomial expression() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    ExactPolynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  ExactPolynomial term() {
    ExactPolynomial acc = power();
    for (;;) {
      if (accept('*')) {
        acc = acc * power();
      } else if (peek() == '/') {
        const std::size_t at = pos_;
        ++pos_;
        ExactPolynomial divisor = power();
        if (!is_scalar(divisor)) {
          pos_ = at;
          fail("division by a non-scalar");
        }
        if (divisor.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        try {
          acc *= RationalFunction(1) / scalar_value(divisor);
        } catch (const std::domain_error& e) {
          pos_ = at;
          fail(e.what());
        }
      } else if (starts_atom()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  ExactPolynomial power() {
    ExactPolynomial base = atom();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a non-negative integer exponent");
    const int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
    ExactPolynomial out = ExactPolynomial::unit(modes_);
    for (int k = 0; k < e; ++k) out = out * base;
    return out;
  }

  ExactPolynomial atom() {
    const char c = peek();
    if (c == '\0') fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return scalar(number());
    if (c == 'q' || c == 'I') {
      ++pos_;
      return c == 'q' ? scalar(RationalFunction::q()) : ExactPolynomial::unit(modes_);
    }
    if (c == 'c' || c == 'a') {
      ++pos_;
      const std::size_t index = mode_index();
      const auto symbol = c == 'c' ? wick::creator(index - 1) : wick::annihilator(index - 1);
      return ExactPolynomial::word(modes_, {symbol});
    }
    if (c == '(') {
      ++pos_;
      ExactPolynomial inner = expression();
      if (accept(',')) {
        ExactPolynomial imag = expression();
        if (!is_scalar(inner) || !is_scalar(imag)) fail("complex literal parts must be scalars");
        inner = scalar(scalar_value(inner) + scalar_value(imag) * RationalFunction(GaussianRational(0, 1)));
      }
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::size_t mode_index() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a mode index");
    const std::size_t index = std::stoul(std::string(text_.substr(start, pos_ - start)));
    if (index == 0 || index > modes_) {
      pos_ = start;
      fail("mode index out of range");
    }
    return index;
  }

  RationalFunction number() {
    const std::size_t start = pos_;
    mpz_class digits = 0;
    long exponent = 0;
    bool any = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits = digits * 10 + (text_[pos_++] - '0');
      any = true;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits = digits * 10 + (text_[pos_++] - '0');
        --exponent;
        any = true;
      }
    }
    if (!any) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      int sign = 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) sign = text_[p++] == '-' ? -1 : 1;
      const std::size_t exp_start = p;
      while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
      if (p == exp_start) fail("malformed exponent");
      exponent += sign * std::stol(std::string(text_.substr(exp_start, p - exp_start)));
      pos_ = p;
    }
    mpq_class value(digits);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent < 0) {
      value /= scale;
    } else {
      value *= scale;
    }
    return RationalFunction(GaussianRational(value));
  }

  std::string_view text_;
  std::size_t modes_;
  std::size_t pos_ = 0;
};

std::size_t infer_modes(std::string_view text) {
  std::size_t modes = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if ((text[i] != 'c' && text[i] != 'a') || i + 1 >= text.size() ||
        !std::isdigit(static_cast<unsigned char>(text[i + 1])))
      continue;
    std::size_t j = i + 1;
    std::size_t index = 0;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      index = index * 10 + static_cast<std::size_t>(text[j] - '0');
      if (index > 65535) throw ParseError(i + 1, "mode index out of range");
      ++j;
    }
    modes = std::max(modes, index);
  }
  return modes;
}

// Splits a scalar into sign and magnitude text when it prints as a single
// signed monomial; otherwise returns the parenthesized general form.
struct CoefficientText {
  bool negative = false;
  std::string magnitude;  // empty means 1
};

CoefficientText coefficient_text(const RationalFunction& c) {
  const QPolynomial& num = c.numerator();
  if (c.is_polynomial() && num.low_order() == num.degree() && num.coefficients().back().is_real()) {
    const int k = num.degree();
    const mpq_class& v = num.coefficients().back().re();
    CoefficientText out;
    out.negative = sgn(v) < 0;
    const mpq_class mag = abs(v);
    std::string power = k == 0 ? "" : (k == 1 ? "q" : "q^" + std::to_string(k));
    if (k == 0) {
      out.magnitude = mag == 1 ? "" : to_string(mag);
    } else {
      out.magnitude = (mag == 1 ? "" : to_string(mag) + "*") + power;
    }
    return out;
  }
  if (c.is_constant()) return {false, to_string(c.constant_value())};
  if (c.is_polynomial()) return {false, "(" + to_string(num) + ")"};
  // Sign chosen so the lowest denominator coefficient is positive.
  QPolynomial n = num;
  QPolynomial d = c.denominator();
  if (sgn(d[static_cast<std::size_t>(d.low_order())].re()) < 0) {
    n = -n;
    d = -d;
  }
  CoefficientText out;
  if (n.degree() == 0 && n[0].is_real()) {
    out.negative = sgn(n[0].re()) < 0;
    out.magnitude = to_string(mpq_class(abs(n[0].re())));
  } else {
    out.magnitude = "(" + to_string(n) + ")";
  }
  out.magnitude += "/(" + to_string(d) + ")";
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CoefficientText coefficient_text(const Complex& c) {
  if (c.imag() == 0.0) {
    CoefficientText out;
    out.negative = std::signbit(c.real());
    const double mag = std::abs(c.real());
    out.magnitude = mag == 1.0 ? "" : format_double(mag);
    return out;
  }
  return {false, "(" + format_double(c.real()) + "," + format_double(c.imag()) + ")"};
}

template <class R>
std::string render(const wick::WickPolynomial<R>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    const CoefficientText coef = coefficient_text(c);
    std::string body;
    if (w.empty()) {
      body = coef.magnitude.empty() ? "I" : coef.magnitude + "*I";
    } else {
      body = coef.magnitude.empty() ? to_string(w) : coef.magnitude + "*" + to_string(w);
    }
    if (first) {
      out += coef.negative ? "-" + body : body;
    } else {
      out += coef.negative ? " - " + body : " + " + body;
    }
    first = false;
  }
  return out;
}

}  // namespace

wick::ExactPolynomial parse_polynomial(std::string_view text, std::size_t modes) {
  if (modes == 0) modes = infer_modes(text);
  return Parser(text, modes).parse();
}

wick::FloatPolynomial parse_float_polynomial(std::string_view text, double q, std::size_t modes) {
  return wick::evaluate_at(parse_polynomial(text, modes), q);
}

std::string to_string(const wick::Word& w) {
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += ' ';
    out += w[k].is_creator() ? 'c' : 'a';
    out += std::to_string(w[k].mode + 1);
  }
  return out;
}

std::string to_string(const wick::ExactPolynomial& p) { return render(p); }
std::string to_string(const wick::FloatPolynomial& p) { return render(p); }

}  // namespace qccr
