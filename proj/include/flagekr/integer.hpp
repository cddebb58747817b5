#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace flagekr {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

/// C(n, k); zero when k < 0, k > n or n < 0.
auto binomial(std::int64_t n, std::int64_t k) -> BigInt;

/// n!; throws ParameterError for negative n.
auto factorial(std::int64_t n) -> BigInt;

auto floor(const Rational & q) -> BigInt;
auto ceil(const Rational & q) -> BigInt;

auto to_string(const BigInt & value) -> std::string;
auto to_string(const Rational & value) -> std::string;

/// Narrowing with a range check.
auto to_int64(const BigInt & value) -> std::int64_t;

}
