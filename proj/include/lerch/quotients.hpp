#pragma once

// Fermat, Wilson and Lerch quotients, harmonic-weighted Fermat-quotient sums,
// C(p-1, a) modulo p^k, and the exact Euler-MacLaurin and Beeger identities.
//
// Residue kernels exponentiate at modulus p^(k+1) and divide exactly by p;
// they run on 64-bit Montgomery words whenever p^(k+1) < 2^63 and fall back
// to GMP otherwise, with identical results.

#include <cstdint>
#include <string_view>
#include <vector>

#include "lerch/bernoulli.hpp"
#include "lerch/detail/ring.hpp"
#include "lerch/numcore.hpp"

namespace lerch {

using detail::Backend;

inline constexpr int kMaxQuotientPrecision = 3;

Residue fermat_quotient(std::uint64_t a, std::uint64_t p, int k);
Residue fermat_quotient_sum(std::uint64_t p, int k, Backend backend = Backend::Automatic);

/// W_p = ((p-1)! + 1)/p mod p^k. Throws NonWilsonIntegerDivision if p does
/// not divide (p-1)! + 1, i.e. p is not prime.
Residue wilson_quotient(std::uint64_t p, int k, Backend backend = Backend::Automatic);

/// l_p mod p; zero exactly for Lerch primes. NotApplicable for p = 2.
Residue lerch_residue(std::uint64_t p);

struct QuotientBundle {
    std::uint64_t p = 0;
    int k = 0;
    Residue qsum;
    Residue wilson;
    Residue lerch;  // l_p mod p
};

/// qsum and W_p mod p^k with l_p mod p, in one pass (k in 2..3).
QuotientBundle quotient_bundle(std::uint64_t p, int k, Backend backend = Backend::Automatic);

/// H_a (order 1) or H_{a,2} (order 2), exactly.
BigRational harmonic(std::uint64_t a, int order);

enum class Weight { Unit, H, HSquared, H2 };

std::string_view weight_name(Weight w);

/// H_a (order 1) or H_{a,2} (order 2) mod p^k for a = 0..p-1.
std::vector<Residue> harmonic_residues(std::uint64_t p, int order, int k, Backend backend = Backend::Automatic);

Residue weighted_qsum(std::uint64_t p, Weight weight, int k, Backend backend = Backend::Automatic);

/// All four weighted sums at once (index = Weight), sharing one pass.
std::vector<Residue> weighted_qsums(std::uint64_t p, int k, Backend backend = Backend::Automatic);

Residue binomial_pm1(std::uint64_t a, std::uint64_t p, int k);

/// C(p-1, a) mod p^k for a = 0..p-1.
std::vector<Residue> binomials_pm1(std::uint64_t p, int k, Backend backend = Backend::Automatic);

/// (-1)^a {1 - p H_a + (p^2/2) H_a^2 - (p^2/2) H_{a,2}} as an exact rational.
BigRational lucas_lehmer_value(std::uint64_t a, std::uint64_t p);
/// The same value reduced mod p^3.
Residue lucas_lehmer_rhs(std::uint64_t a, std::uint64_t p);
/// Reduced mod p^3 for a = 0..p-1 with modular harmonic numbers.
std::vector<Residue> lucas_lehmer_rhs_all(std::uint64_t p, Backend backend = Backend::Automatic);

/// sum_a (-1)^a C(p-1, a) q_p(a) mod p^k.
Residue beeger_sum(std::uint64_t p, int k, Backend backend = Backend::Automatic);

/// -1 + 1/p + sum_{j=1}^{p} C(p, j) p^(j-2) B_{p-j}. NotApplicable for p <= 3.
BigRational euler_maclaurin_rhs(std::uint64_t p, const BernoulliTable& table);

// Exact integer forms, for identity checks at desk scale.
BigInt fermat_quotient_exact(std::uint64_t a, std::uint64_t p);
BigInt fermat_quotient_sum_exact(std::uint64_t p);
BigInt wilson_quotient_exact(std::uint64_t p);
BigInt beeger_sum_exact(std::uint64_t p);

}  // namespace lerch
