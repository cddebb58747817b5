#pragma once

#include <flagekr/graph.hpp>
#include <flagekr/integer.hpp>

#include <map>

namespace flagekr {

/// Selects F_i(n,a,b), or the barred family at the top shift.
struct FamilySpec {
    int n = 0;
    int a = 0;
    int b = 0;
    int i = 0;
    bool barred = false;

    /// Throws ParameterError unless a+b < n, a < n/2 < b, 0 <= i <= 2b-n+1
    /// and barred only at i = 2b-n+1.
    void validate() const;
    auto top_shift() const -> int { return 2 * b - n + 1; }
};

/// Throws ParameterError unless a >= 1, a+b < n and a < n/2 < b.
void check_family_parameters(int n, int a, int b);

struct SizeBreakdown {
    BigInt total;
    /// Flags (A,B) with [i] in B in [n-1].
    BigInt term_condition_I;
    /// Remaining flags, counted through j = min A.
    BigInt term_condition_II;
    Rational i0;
    int i_star = 0;
    /// The maximum over shifts is attained at i_star and i_star+1.
    bool two_maxima = false;
};

/// Whether the flag (A,B) = (levels[0], levels[1]) lies in the family.
auto in_family(const FamilySpec & spec, const Flag & f) -> bool;

/// Members of the family in g, which must be Gamma(n,{a,b}). The result is
/// checked to be independent.
auto build_family(const FamilySpec & spec, const FlagGraph & g) -> VertexSet;

auto family_breakdown(int n, int a, int b, int i) -> SizeBreakdown;
auto family_size(int n, int a, int b, int i) -> BigInt;
/// The second closed form; must agree with family_size.
auto family_size_alternative(int n, int a, int b, int i) -> BigInt;
/// |barred F_i \ F_i| at i = 2b-n+1: C(n-i-1, b-i-1) C(b-i, a).
auto barred_difference(int n, int a, int b) -> BigInt;
auto barred_family_size(int n, int a, int b) -> BigInt;

auto optimal_shift(int n, int a, int b) -> SizeBreakdown;
/// f(n,a,b): the family size at i_star.
auto f_max(int n, int a, int b) -> BigInt;

struct RecurrenceReport {
    BigInt f_n, f_smaller;
    BigInt first_rhs;
    BigInt second_lhs, second_rhs;
    int i_star = 0;

    auto first_holds() const -> bool { return f_n == first_rhs; }
    auto second_holds() const -> bool { return second_lhs == second_rhs; }
};

/// Whether (n,a,b) meets the precondition of recurrence_check: valid family
/// parameters for (n,a,b) and (n-1,a,b-1), and an optimal shift i_star >= 1.
auto recurrence_applicable(int n, int a, int b) -> bool;

/// Evaluates both sides of the two identities linking f(n,a,b) and
/// f(n-1,a,b-1); only the parameter checks of (n,a,b) and (n-1,a,b-1) are
/// enforced, so this can also be used to inspect triples with i_star = 0.
auto recurrence_values(int n, int a, int b) -> RecurrenceReport;

/// Throws ParameterError unless recurrence_applicable.
auto recurrence_check(int n, int a, int b) -> bool;

/// ((n-b)^2 + a(i-b)) (n-1-i)! / (a! (n-b)! (b-i-a)!) at i = i_star.
auto recurrence_term(int n, int a, int b) -> BigInt;

/// For each k, how many vertices outside `set` have exactly k neighbours in it.
using NeighborProfile = std::map<std::size_t, std::size_t>;

/// Throws ParameterError when `set` is not independent in g.
auto neighbor_profile(const VertexSet & set, const FlagGraph & g) -> NeighborProfile;

}
