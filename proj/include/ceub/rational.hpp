#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

namespace ceub {

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator. Division by zero throws std::overflow_error.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

using Matrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RowVector = Eigen::Matrix<Rational, 1, Eigen::Dynamic>;

/// Tokens per whole item.
using PriceVector = Vector;
/// Tokens per agent.
using BudgetVector = Vector;

/// Parses "k", "-k" or "num/den". Throws ParseError on malformed text or a
/// zero denominator. The result is canonicalised, so "2/4" reads as 1/2.
Rational parse_rational(std::string_view text);

/// Canonical text form: "num/den" in lowest terms, or "k" for integers.
std::string to_string(const Rational& value);

inline Rational make_rational(long num, long den = 1) { return Rational(num, den); }

}  // namespace ceub
