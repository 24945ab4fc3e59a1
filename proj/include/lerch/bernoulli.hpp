#pragma once

// Exact Bernoulli numbers (B_1 = -1/2), Bernoulli polynomials, and p-adic
// Bernoulli data used by the congruence checks.

#include <cstdint>
#include <string_view>
#include <vector>

#include "lerch/numcore.hpp"
#include "lerch/padic.hpp"

namespace lerch {

/// B_0..B_max_index, exact. Immutable once built; share it read-only.
class BernoulliTable {
public:
    explicit BernoulliTable(int max_index);

    int max_index() const noexcept { return static_cast<int>(values_.size()) - 1; }
    bool covers(long n) const noexcept { return n >= 0 && n <= max_index(); }

    /// Throws Errc::TableTooSmall past max_index().
    const BigRational& operator[](long n) const;

    const std::vector<BigRational>& values() const noexcept { return values_; }

private:
    std::vector<BigRational> values_;
};

BernoulliTable bernoulli_table(int n_max);

/// B_n(x) = sum_j C(n, j) B_j x^(n-j).
BigRational bernoulli_polynomial(int n, const BigRational& x, const BernoulliTable& table);

/// w_p = B_{p-1} - 1 + 1/p, which is p-integral.
BigRational w_quantity(std::uint64_t p, const BernoulliTable& table);

/// Product of the primes q with (q - 1) | n, for even n >= 2.
BigInt staudt_clausen_denominator(long n);

enum class EstimateProvenance { QuotientDerived };

std::string_view provenance_name(EstimateProvenance provenance);

/// Bernoulli data recovered from quotient residues mod p^2 (p > 3).
struct BernoulliPadicEstimate {
    std::uint64_t p = 0;
    Residue w_mod_p2;          // w_p mod p^2, taken from the Fermat-quotient sum
    PadicLaurent b_ratio;      // B_{2p-2}/(2p-2), absolute precision 2
    EstimateProvenance provenance = EstimateProvenance::QuotientDerived;

    /// B_{p-1} = w_p + 1 - 1/p, absolute precision 2.
    PadicLaurent b_pm1() const;
    /// B_{2p-2} = (2p - 2) * b_ratio, absolute precision 2.
    PadicLaurent b_2pm2() const;
};

/// Solves the mod p^2 Wilson-quotient evaluation for B_{2p-2}/(2p-2), using the
/// Fermat-quotient sum as w_p. Both inputs must be residues mod p^2.
/// Throws Errc::NotApplicable for p <= 3.
BernoulliPadicEstimate bernoulli_padic_estimate(std::uint64_t p, const Residue& wilson_mod_p2, const Residue& qsum_mod_p2);

/// B_n for even n >= 4 from the power sum over [0, p^2), valid for p >= 5.
/// Uses p^2 B_n = sum_{a < p^2} a^n + O(p^5); the result has absolute precision 3.
PadicLaurent bernoulli_power_sum(std::uint64_t n, std::uint64_t p);

}  // namespace lerch
