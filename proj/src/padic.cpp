#include "lerch/padic.hpp"

#include <algorithm>

namespace lerch {

namespace {

BigInt pow_p(const BigInt& p, int e) { return ipow(p, static_cast<unsigned long>(e)); }

BigInt mod_nonneg(const BigInt& x, const BigInt& m) {
    BigInt r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

}  // namespace

PadicLaurent::PadicLaurent(BigInt p, int valuation, BigInt unit, int prec)
    : p_(std::move(p)), valuation_(valuation), unit_(std::move(unit)), prec_(prec) {
    if (prec_ > 0 && valuation_ < kMinValuation)
        throw Error(Errc::OutOfRange, "p-adic valuation " + std::to_string(valuation_) + " is below -2");
}

PadicLaurent PadicLaurent::zero(const BigInt& p, int absolute_prec) { return PadicLaurent(p, absolute_prec, 0, 0); }

PadicLaurent PadicLaurent::from_digits(const BigInt& p, int base_valuation, BigInt digits, int absolute_prec) {
    if (absolute_prec <= base_valuation) return zero(p, absolute_prec);
    digits = mod_nonneg(digits, pow_p(p, absolute_prec - base_valuation));
    if (digits == 0) return zero(p, absolute_prec);
    const int shift = static_cast<int>(lerch::valuation(digits, p));
    mpz_divexact(digits.get_mpz_t(), digits.get_mpz_t(), pow_p(p, shift).get_mpz_t());
    const int v = base_valuation + shift;
    return PadicLaurent(p, v, std::move(digits), absolute_prec - v);
}

PadicLaurent PadicLaurent::from_rational(const BigRational& x, const BigInt& p, int relative_prec) {
    if (relative_prec < 1) throw Error(Errc::InsufficientPrecision, "relative precision must be positive");
    const Valuation v = rat_valuation(x, p);
    if (v.is_infinite()) return zero(p, relative_prec);
    const int val = static_cast<int>(v.value());
    BigRational u = x;
    if (val > 0) u /= BigRational(pow_p(p, val));
    if (val < 0) u *= BigRational(pow_p(p, -val));
    const BigInt m = pow_p(p, relative_prec);
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), u.get_den_mpz_t(), m.get_mpz_t());
    return PadicLaurent(p, val, mod_nonneg(u.get_num() * inv, m), relative_prec);
}

PadicLaurent PadicLaurent::from_residue(const Residue& r) {
    return from_digits(r.modulus().p(), 0, r.value(), r.modulus().k());
}

PadicLaurent PadicLaurent::operator+(const PadicLaurent& rhs) const {
    if (p_ != rhs.p_) throw Error(Errc::ModulusMismatch, "p-adic numbers over different primes");
    const int abs_prec = std::min(absolute_precision(), rhs.absolute_precision());
    const int base = std::min(valuation_, rhs.valuation_);
    if (base >= abs_prec) return zero(p_, abs_prec);
    BigInt digits = unit_ * pow_p(p_, valuation_ - base) + rhs.unit_ * pow_p(p_, rhs.valuation_ - base);
    return from_digits(p_, base, std::move(digits), abs_prec);
}

PadicLaurent PadicLaurent::operator-() const {
    if (is_zero()) return *this;
    return PadicLaurent(p_, valuation_, mod_nonneg(-unit_, pow_p(p_, prec_)), prec_);
}

PadicLaurent PadicLaurent::operator-(const PadicLaurent& rhs) const { return *this + (-rhs); }

PadicLaurent PadicLaurent::operator*(const PadicLaurent& rhs) const {
    if (p_ != rhs.p_) throw Error(Errc::ModulusMismatch, "p-adic numbers over different primes");
    if (is_zero() || rhs.is_zero()) {
        // The result is p^va * p^vb * (unknown), known to the sum of the leading exponents.
        return zero(p_, valuation_ + rhs.valuation_);
    }
    const int prec = std::min(prec_, rhs.prec_);
    return PadicLaurent(p_, valuation_ + rhs.valuation_, mod_nonneg(unit_ * rhs.unit_, pow_p(p_, prec)), prec);
}

PadicLaurent PadicLaurent::inverse() const {
    if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of a p-adic zero");
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), unit_.get_mpz_t(), pow_p(p_, prec_).get_mpz_t());
    return PadicLaurent(p_, -valuation_, std::move(inv), prec_);
}

Residue PadicLaurent::reduce(int k) const {
    const PrimePowerModulus m(p_, k);
    if (is_zero()) {
        if (valuation_ < k)
            throw Error(Errc::InsufficientPrecision, "known only modulo p^" + std::to_string(valuation_));
        return Residue(0, m);
    }
    if (valuation_ < 0) throw Error(Errc::NegativeValuation, "value has a pole of order " + std::to_string(-valuation_));
    if (valuation_ >= k) return Residue(0, m);
    if (absolute_precision() < k)
        throw Error(Errc::InsufficientPrecision, "known only modulo p^" + std::to_string(absolute_precision()));
    return Residue(unit_ * pow_p(p_, valuation_), m);
}

bool PadicLaurent::congruent(const PadicLaurent& rhs, int k) const {
    const PadicLaurent d = *this - rhs;
    if (!d.is_zero()) return d.valuation() >= k;
    if (d.absolute_precision() >= k) return true;
    throw Error(Errc::InsufficientPrecision,
                "difference known only modulo p^" + std::to_string(d.absolute_precision()));
}

std::string PadicLaurent::to_string() const {
    const std::string tail = "O(" + p_.get_str() + "^" + std::to_string(absolute_precision()) + ")";
    if (is_zero()) return tail;
    return p_.get_str() + "^" + std::to_string(valuation_) + "*" + unit_.get_str() + " + " + tail;
}

PadicLaurent padic_add(const PadicLaurent& a, const PadicLaurent& b) { return a + b; }
PadicLaurent padic_mul(const PadicLaurent& a, const PadicLaurent& b) { return a * b; }
PadicLaurent padic_inv(const PadicLaurent& a) { return a.inverse(); }
Residue padic_reduce(const PadicLaurent& a, int k) { return a.reduce(k); }

}  // namespace lerch
