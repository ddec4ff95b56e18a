#include "ceub/rational.hpp"

#include <cctype>

#include "ceub/errors.hpp"

namespace ceub {
namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw ParseError("malformed rational \"" + std::string(whole) + "\"");
  }
  std::size_t start = (digits.front() == '-' || digits.front() == '+') ? 1 : 0;
  if (start == digits.size()) {
    throw ParseError("malformed rational \"" + std::string(whole) + "\"");
  }
  for (std::size_t k = start; k < digits.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(digits[k]))) {
      throw ParseError("malformed rational \"" + std::string(whole) + "\"");
    }
  }
  std::string text(digits.substr(digits.front() == '+' ? 1 : 0));
  return Integer(text);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  Integer num = parse_integer(text.substr(0, slash), text);
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
    throw ParseError("malformed rational \"" + std::string(text) + "\": signed denominator");
  }
  Integer den = parse_integer(den_text, text);
  if (den == 0) {
    throw ParseError("malformed rational \"" + std::string(text) + "\": zero denominator");
  }
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  const Integer num = boost::multiprecision::numerator(value);
  const Integer den = boost::multiprecision::denominator(value);
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

}  // namespace ceub
