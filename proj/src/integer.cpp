#include <flagekr/integer.hpp>
#include <flagekr/errors.hpp>

#include <limits>

namespace flagekr {

auto binomial(std::int64_t n, std::int64_t k) -> BigInt
{
    if (n < 0 || k < 0 || k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    BigInt result = 1;
    for (std::int64_t j = 1; j <= k; ++j) {
        result *= n - k + j;
        result /= j;
    }
    return result;
}

auto factorial(std::int64_t n) -> BigInt
{
    if (n < 0)
        throw ParameterError("factorial of negative number " + std::to_string(n));
    BigInt result = 1;
    for (std::int64_t j = 2; j <= n; ++j)
        result *= j;
    return result;
}

auto floor(const Rational & q) -> BigInt
{
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    BigInt quotient = num / den;
    if (num % den != 0 && num < 0)
        quotient -= 1;
    return quotient;
}

auto ceil(const Rational & q) -> BigInt
{
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    BigInt quotient = num / den;
    if (num % den != 0 && num > 0)
        quotient += 1;
    return quotient;
}

auto to_string(const BigInt & value) -> std::string
{
    return value.str();
}

auto to_string(const Rational & value) -> std::string
{
    BigInt den = boost::multiprecision::denominator(value);
    if (den == 1)
        return boost::multiprecision::numerator(value).str();
    return boost::multiprecision::numerator(value).str() + "/" + den.str();
}

auto to_int64(const BigInt & value) -> std::int64_t
{
    if (value > std::numeric_limits<std::int64_t>::max() || value < std::numeric_limits<std::int64_t>::min())
        throw ResourceError("integer " + value.str() + " does not fit in 64 bits");
    return static_cast<std::int64_t>(value);
}

}
