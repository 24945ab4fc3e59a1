#pragma once

#include <string>

#include "lerch/numcore.hpp"

namespace lerch {

/// A finite-precision p-adic number p^v * u, u a unit known modulo p^prec.
///
/// Absolute precision is v + prec: the value is known modulo p^(v + prec).
/// The precision-limited zero has no unit digits (prec = 0, u = 0) and its
/// valuation field holds the absolute precision. Valuations below -2 are
/// rejected; the deepest pole the library handles is a double pole.
class PadicLaurent {
public:
    static constexpr int kMinValuation = -2;

    /// Reduced form of x with `relative_prec` unit digits; an exact zero
    /// becomes the zero known modulo p^relative_prec.
    static PadicLaurent from_rational(const BigRational& x, const BigInt& p, int relative_prec);

    /// A residue mod p^k is a p-adic number with absolute precision k.
    static PadicLaurent from_residue(const Residue& r);

    static PadicLaurent zero(const BigInt& p, int absolute_prec);

    /// p^base_valuation * digits, where digits is known modulo p^(absolute_prec - base_valuation).
    static PadicLaurent from_digits(const BigInt& p, int base_valuation, BigInt digits, int absolute_prec);

    const BigInt& p() const noexcept { return p_; }
    int valuation() const noexcept { return valuation_; }
    const BigInt& unit() const noexcept { return unit_; }
    int precision() const noexcept { return prec_; }
    int absolute_precision() const noexcept { return valuation_ + prec_; }
    bool is_zero() const noexcept { return prec_ == 0; }

    PadicLaurent operator+(const PadicLaurent& rhs) const;
    PadicLaurent operator-(const PadicLaurent& rhs) const;
    PadicLaurent operator*(const PadicLaurent& rhs) const;
    PadicLaurent operator-() const;
    /// Throws Errc::DivisionByZero for the zero element.
    PadicLaurent inverse() const;
    PadicLaurent operator/(const PadicLaurent& rhs) const { return *this * rhs.inverse(); }

    /// Residue mod p^k. Throws NegativeValuation for a pole and
    /// InsufficientPrecision when fewer than k digits are known.
    Residue reduce(int k) const;

    /// v_p(this - rhs) >= k, or InsufficientPrecision if undecidable.
    bool congruent(const PadicLaurent& rhs, int k) const;

    std::string to_string() const;

private:
    PadicLaurent(BigInt p, int valuation, BigInt unit, int prec);

    BigInt p_;
    int valuation_ = 0;
    BigInt unit_;
    int prec_ = 0;
};

PadicLaurent padic_add(const PadicLaurent& a, const PadicLaurent& b);
PadicLaurent padic_mul(const PadicLaurent& a, const PadicLaurent& b);
PadicLaurent padic_inv(const PadicLaurent& a);
Residue padic_reduce(const PadicLaurent& a, int k);

}  // namespace lerch
