#include "lerch/numcore.hpp"

#include <ostream>

#include "lerch/detail/ring.hpp"

namespace lerch {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidModulus: return "InvalidModulus";
        case Errc::ModulusMismatch: return "ModulusMismatch";
        case Errc::NotInvertible: return "NotInvertible";
        case Errc::NegativeValuation: return "NegativeValuation";
        case Errc::InsufficientPrecision: return "InsufficientPrecision";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::NotApplicable: return "NotApplicable";
        case Errc::TableTooSmall: return "TableTooSmall";
        case Errc::NonWilsonIntegerDivision: return "NonWilsonIntegerDivision";
        case Errc::MethodUnavailable: return "MethodUnavailable";
        case Errc::RangeInvalid: return "RangeInvalid";
        case Errc::IoError: return "IoError";
        case Errc::CheckpointMismatch: return "CheckpointMismatch";
    }
    return "Unknown";
}

PrimePowerModulus::PrimePowerModulus(const BigInt& p, int k) : p_(p), k_(k) {
    if (k < 1 || k > kMaxExponent) throw Error(Errc::InvalidModulus, "exponent must be in 1..4");
    if (p < 3 || mpz_even_p(p.get_mpz_t()) || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        throw Error(Errc::InvalidModulus, "p must be an odd prime, got " + p.get_str());
    pk_ = ipow(p, static_cast<unsigned long>(k));
    if (mpz_sizeinbase(pk_.get_mpz_t(), 2) <= 63) pk_u64_ = pk_.get_ui();
}

Residue::Residue(const BigInt& value, PrimePowerModulus modulus) : modulus_(std::move(modulus)) {
    mpz_mod(value_.get_mpz_t(), value.get_mpz_t(), modulus_.pk().get_mpz_t());
}

Residue Residue::reduce(int j) const {
    if (j > modulus_.k()) throw Error(Errc::InsufficientPrecision, "cannot lift a residue to a finer modulus");
    return Residue(value_, PrimePowerModulus(modulus_.p(), j));
}

namespace {

void require_same(const PrimePowerModulus& a, const PrimePowerModulus& b) {
    if (!(a == b)) throw Error(Errc::ModulusMismatch, "residues carry different moduli");
}

}  // namespace

Residue Residue::operator+(const Residue& rhs) const {
    require_same(modulus_, rhs.modulus_);
    return Residue(value_ + rhs.value_, modulus_);
}

Residue Residue::operator-(const Residue& rhs) const {
    require_same(modulus_, rhs.modulus_);
    return Residue(value_ - rhs.value_, modulus_);
}

Residue Residue::operator*(const Residue& rhs) const {
    require_same(modulus_, rhs.modulus_);
    return Residue(value_ * rhs.value_, modulus_);
}

Residue Residue::operator-() const { return Residue(-value_, modulus_); }

std::string Residue::to_string() const {
    return value_.get_str() + " (mod " + modulus_.p().get_str() + "^" + std::to_string(modulus_.k()) + ")";
}

std::ostream& operator<<(std::ostream& os, const Residue& r) { return os << r.to_string(); }

std::string Valuation::to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

long valuation(const BigInt& n, const BigInt& p) {
    if (n == 0) throw Error(Errc::OutOfRange, "valuation of zero");
    BigInt rest = abs(n);
    long v = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

BigInt ipow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Residue mod_pow(const BigInt& base, const BigInt& exp, const PrimePowerModulus& m) {
    if (exp < 0) throw Error(Errc::OutOfRange, "negative exponent");
    BigInt b;
    mpz_mod(b.get_mpz_t(), base.get_mpz_t(), m.pk().get_mpz_t());
    BigInt r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), exp.get_mpz_t(), m.pk().get_mpz_t());
    return Residue(r, m);
}

Residue mod_inv(const BigInt& x, const PrimePowerModulus& m) {
    BigInt r;
    if (mpz_divisible_p(x.get_mpz_t(), m.p().get_mpz_t()) || mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.pk().get_mpz_t()) == 0)
        throw Error(Errc::NotInvertible, x.get_str() + " is divisible by " + m.p().get_str());
    return Residue(r, m);
}

Residue factorial_mod(std::uint64_t n, const PrimePowerModulus& m) {
    return detail::with_ring(m.pk(), detail::Backend::Automatic, [&](const auto& ring) {
        auto acc = ring.one();
        for (std::uint64_t i = 2; i <= n; ++i) {
            acc = ring.mul(acc, ring.from_u64(i));
            if (ring.is_zero(acc)) break;
        }
        return Residue(ring.to_big(acc), m);
    });
}

Valuation rat_valuation(const BigRational& x, const BigInt& p) {
    if (x == 0) return Valuation::infinity();
    return Valuation(valuation(x.get_num(), p) - valuation(x.get_den(), p));
}

Residue rat_residue(const BigRational& x, const PrimePowerModulus& m) {
    if (mpz_divisible_p(x.get_den_mpz_t(), m.p().get_mpz_t()))
        throw Error(Errc::NegativeValuation, to_string(x) + " has a pole at " + m.p().get_str());
    return Residue(x.get_num(), m) * mod_inv(x.get_den(), m);
}

bool rat_congruent(const BigRational& x, const BigRational& y, const BigInt& p, int k) {
    return rat_valuation(BigRational(x - y), p).at_least(k);
}

std::string to_string(const BigRational& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

bool is_prime_trial(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d <= n / d; d += 6)
        if (n % d == 0 || n % (d + 2) == 0) return false;
    return true;
}

}  // namespace lerch
