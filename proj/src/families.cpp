#include <flagekr/errors.hpp>
#include <flagekr/families.hpp>
#include <flagekr/solver.hpp>

#include <bit>

namespace flagekr {

namespace {

auto prefix(int i) -> Mask
{
    return i <= 0 ? Mask{0} : (i >= 64 ? ~Mask{0} : (Mask{1} << i) - 1);
}

auto describe(int n, int a, int b) -> std::string
{
    return "(n,a,b)=(" + std::to_string(n) + "," + std::to_string(a) + "," + std::to_string(b) + ")";
}

}

void check_family_parameters(int n, int a, int b)
{
    if (a < 1 || n > max_ground_size)
        throw ParameterError("family parameters out of range: " + describe(n, a, b));
    if (a + b >= n)
        throw ParameterError("family parameters need a+b < n: " + describe(n, a, b));
    if (! (2 * a < n && n < 2 * b))
        throw ParameterError("family parameters need a < n/2 < b: " + describe(n, a, b));
}

void FamilySpec::validate() const
{
    check_family_parameters(n, a, b);
    if (i < 0 || i > top_shift())
        throw ParameterError("shift i=" + std::to_string(i) + " outside [0," + std::to_string(top_shift()) + "]");
    if (barred && i != top_shift())
        throw ParameterError("the barred family exists only for i = 2b-n+1 = " + std::to_string(top_shift()));
}

auto in_family(const FamilySpec & spec, const Flag & f) -> bool
{
    const Mask a_set = f.levels[0];
    const Mask b_set = f.levels[1];
    const Mask shift = prefix(spec.i);
    const Mask last = Mask{1} << (spec.n - 1);
    bool first = (b_set & shift) == shift && (spec.barred || (b_set & last) == 0);
    int min_a = std::countr_zero(a_set) + 1;
    bool second = min_a <= spec.i && (b_set & prefix(min_a)) == prefix(min_a);
    return first || second;
}

auto build_family(const FamilySpec & spec, const FlagGraph & g) -> VertexSet
{
    spec.validate();
    if (g.n() != spec.n || g.type() != TypeSet({spec.a, spec.b}))
        throw ParameterError("family (" + std::to_string(spec.n) + "," + std::to_string(spec.a) + ","
            + std::to_string(spec.b) + ") does not live in Gamma(" + std::to_string(g.n()) + "," + g.type().to_string() + ")");
    VertexSet result = empty_set(g);
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (in_family(spec, g.flag(v)))
            result.members.set(v);
    if (! is_independent(result, g))
        throw ConsistencyError("constructed family is not independent");
    return result;
}

auto family_breakdown(int n, int a, int b, int i) -> SizeBreakdown
{
    FamilySpec{n, a, b, i, false}.validate();
    SizeBreakdown s;
    s.term_condition_I = binomial(n - 1 - i, b - i) * binomial(b - i, a);
    s.term_condition_II = binomial(n - b + a - 1, a - 1) * (binomial(n, b - a) - binomial(n - i, b - a - i));
    s.total = s.term_condition_I + s.term_condition_II;
    s.i0 = Rational(b - 1) - Rational((n - b) * (n - b - 1), a);
    s.i_star = s.i0 < 0 ? 0 : static_cast<int>(to_int64(ceil(s.i0)));
    s.two_maxima = s.i0 >= 0 && denominator(s.i0) == 1;
#ifndef NDEBUG
    if (s.total != family_size_alternative(n, a, b, i))
        throw ConsistencyError("family size closed forms disagree at " + describe(n, a, b));
#endif
    return s;
}

auto family_size(int n, int a, int b, int i) -> BigInt
{
    return family_breakdown(n, a, b, i).total;
}

auto family_size_alternative(int n, int a, int b, int i) -> BigInt
{
    FamilySpec{n, a, b, i, false}.validate();
    const int s = n - b;
    Rational tail(BigInt(s * s + a * (i - b)) * factorial(n - 1 - i),
        BigInt(s + a) * factorial(a) * factorial(s) * factorial(b - i - a));
    Rational total = Rational(binomial(s + a - 1, a - 1) * binomial(n, b - a)) + tail;
    if (denominator(total) != 1)
        throw ConsistencyError("alternative family size is not an integer at " + describe(n, a, b));
    return numerator(total);
}

auto barred_difference(int n, int a, int b) -> BigInt
{
    check_family_parameters(n, a, b);
    int i = 2 * b - n + 1;
    return binomial(n - i - 1, b - i - 1) * binomial(b - i, a);
}

auto barred_family_size(int n, int a, int b) -> BigInt
{
    return family_size(n, a, b, 2 * b - n + 1) + barred_difference(n, a, b);
}

auto optimal_shift(int n, int a, int b) -> SizeBreakdown
{
    check_family_parameters(n, a, b);
    Rational i0 = Rational(b - 1) - Rational((n - b) * (n - b - 1), a);
    return family_breakdown(n, a, b, i0 < 0 ? 0 : static_cast<int>(to_int64(ceil(i0))));
}

auto f_max(int n, int a, int b) -> BigInt
{
    return optimal_shift(n, a, b).total;
}

auto recurrence_term(int n, int a, int b) -> BigInt
{
    int i = optimal_shift(n, a, b).i_star;
    BigInt numerator = BigInt((n - b) * (n - b) + a * (i - b)) * factorial(n - 1 - i);
    BigInt denominator = factorial(a) * factorial(n - b) * factorial(b - i - a);
    if (numerator % denominator != 0)
        throw ConsistencyError("recurrence term is not an integer at " + describe(n, a, b));
    return numerator / denominator;
}

auto recurrence_applicable(int n, int a, int b) -> bool
{
    try {
        check_family_parameters(n, a, b);
        check_family_parameters(n - 1, a, b - 1);
    }
    catch (const ParameterError &) {
        return false;
    }
    return optimal_shift(n, a, b).i_star >= 1;
}

auto recurrence_values(int n, int a, int b) -> RecurrenceReport
{
    check_family_parameters(n, a, b);
    check_family_parameters(n - 1, a, b - 1);
    RecurrenceReport r;
    r.i_star = optimal_shift(n, a, b).i_star;
    r.f_n = f_max(n, a, b);
    r.f_smaller = f_max(n - 1, a, b - 1);
    r.first_rhs = r.f_smaller + binomial(n - 1, b - 1) * binomial(b - 1, a - 1);
    r.second_lhs = BigInt(n) * r.f_smaller - BigInt(b - a) * r.f_n;
    r.second_rhs = recurrence_term(n, a, b);
    return r;
}

auto recurrence_check(int n, int a, int b) -> bool
{
    if (! recurrence_applicable(n, a, b))
        throw ParameterError("recurrence identities need valid (n,a,b), (n-1,a,b-1) and optimal shift >= 1: "
            + describe(n, a, b));
    RecurrenceReport r = recurrence_values(n, a, b);
    return r.first_holds() && r.second_holds();
}

auto neighbor_profile(const VertexSet & set, const FlagGraph & g) -> NeighborProfile
{
    if (! is_independent(set, g))
        throw ParameterError("neighbor_profile needs an independent set");
    NeighborProfile profile;
    const auto & k = simd::kernels();
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (! set.contains(v))
            ++profile[k.and_popcount(g.dense().row(v), set.members.words())];
    return profile;
}

}
