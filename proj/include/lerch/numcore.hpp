#pragma once

// Exact integers and rationals, residues modulo odd prime powers p^k (k <= 4),
// and p-adic valuation helpers shared by every other module.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "lerch/error.hpp"

namespace lerch {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline constexpr int kMaxExponent = 4;

/// The modulus p^k for an odd prime p and 1 <= k <= 4.
class PrimePowerModulus {
public:
    /// Throws Errc::InvalidModulus unless p is an odd prime and k is in 1..4.
    PrimePowerModulus(const BigInt& p, int k);
    PrimePowerModulus(std::uint64_t p, int k) : PrimePowerModulus(BigInt(p), k) {}

    const BigInt& p() const noexcept { return p_; }
    int k() const noexcept { return k_; }
    const BigInt& pk() const noexcept { return pk_; }

    /// p^k as a native word if it fits below 2^63, else 0.
    std::uint64_t pk_u64() const noexcept { return pk_u64_; }

    bool operator==(const PrimePowerModulus& other) const { return k_ == other.k_ && p_ == other.p_; }

private:
    BigInt p_;
    int k_;
    BigInt pk_;
    std::uint64_t pk_u64_ = 0;
};

/// A least-nonnegative residue modulo p^k.
class Residue {
public:
    /// Normalizes any signed integer into [0, p^k).
    Residue(const BigInt& value, PrimePowerModulus modulus);
    Residue(long value, PrimePowerModulus modulus) : Residue(BigInt(value), std::move(modulus)) {}

    const BigInt& value() const noexcept { return value_; }
    const PrimePowerModulus& modulus() const noexcept { return modulus_; }
    bool is_zero() const { return value_ == 0; }

    /// Reduces to a coarser modulus p^j, j <= k.
    Residue reduce(int j) const;

    Residue operator+(const Residue& rhs) const;
    Residue operator-(const Residue& rhs) const;
    Residue operator*(const Residue& rhs) const;
    Residue operator-() const;

    bool operator==(const Residue& rhs) const { return modulus_ == rhs.modulus_ && value_ == rhs.value_; }

    std::string to_string() const;

private:
    BigInt value_;
    PrimePowerModulus modulus_;
};

std::ostream& operator<<(std::ostream& os, const Residue& r);

/// p-adic valuation, +infinity for zero.
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr explicit Valuation(long v) : value_(v), infinite_(false) {}
    static constexpr Valuation infinity() { return Valuation(); }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr long value() const { return value_; }

    /// v >= bound, true for +infinity.
    constexpr bool at_least(long bound) const { return infinite_ || value_ >= bound; }

    constexpr bool operator==(const Valuation&) const = default;

    std::string to_string() const;

private:
    long value_ = 0;
    bool infinite_ = true;
};

/// Largest e with p^e | n, for n != 0.
long valuation(const BigInt& n, const BigInt& p);

BigInt ipow(const BigInt& base, unsigned long exp);

Residue mod_pow(const BigInt& base, const BigInt& exp, const PrimePowerModulus& m);
Residue mod_inv(const BigInt& x, const PrimePowerModulus& m);
Residue factorial_mod(std::uint64_t n, const PrimePowerModulus& m);

Valuation rat_valuation(const BigRational& x, const BigInt& p);

/// num * den^{-1} mod p^k; throws Errc::NegativeValuation on a pole.
Residue rat_residue(const BigRational& x, const PrimePowerModulus& m);

/// The congruence x == y (mod p^k) for rationals: v_p(x - y) >= k.
bool rat_congruent(const BigRational& x, const BigRational& y, const BigInt& p, int k);

std::string to_string(const BigRational& x);

/// Deterministic trial division, intended for desk-scale inputs.
bool is_prime_trial(std::uint64_t n);

}  // namespace lerch
