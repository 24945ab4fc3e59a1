#include "lerch/bernoulli.hpp"

#include "lerch/detail/ring.hpp"

namespace lerch {

namespace {

constexpr int kConstantPrecision = 6;

PadicLaurent constant(const BigRational& x, std::uint64_t p) {
    return PadicLaurent::from_rational(x, BigInt(p), kConstantPrecision);
}

BigRational frac(long num, const BigInt& den) {
    BigRational r(BigInt(num), den);
    r.canonicalize();
    return r;
}

}  // namespace

// Tangent numbers by the in-place recurrence of Brent and Harvey, then
// B_{2k} = (-1)^(k-1) 2k T_k / (4^k (4^k - 1)). Only integer additions and
// small multiplications happen in the O(n^2) loop.
BernoulliTable::BernoulliTable(int max_index) {
    if (max_index < 0) throw Error(Errc::OutOfRange, "table size must be nonnegative");
    values_.assign(static_cast<std::size_t>(max_index) + 1, BigRational(0));
    values_[0] = 1;
    if (max_index >= 1) values_[1] = BigRational(-1, 2);

    const int half = max_index / 2;
    if (half == 0) return;
    std::vector<BigInt> t(static_cast<std::size_t>(half) + 1);
    t[1] = 1;
    for (int k = 2; k <= half; ++k) t[k] = t[k - 1] * (k - 1);
    for (int k = 2; k <= half; ++k) {
        for (int j = k; j <= half; ++j) {
            mpz_mul_ui(t[j].get_mpz_t(), t[j].get_mpz_t(), static_cast<unsigned long>(j - k + 2));
            mpz_addmul_ui(t[j].get_mpz_t(), t[j - 1].get_mpz_t(), static_cast<unsigned long>(j - k));
        }
    }
    for (int k = 1; k <= half; ++k) {
        const BigInt four_k = ipow(BigInt(4), static_cast<unsigned long>(k));
        BigRational b(t[k] * (2 * k), four_k * (four_k - 1));
        b.canonicalize();
        if (k % 2 == 0) b = -b;
        values_[2 * static_cast<std::size_t>(k)] = std::move(b);
    }
}

const BigRational& BernoulliTable::operator[](long n) const {
    if (!covers(n))
        throw Error(Errc::TableTooSmall, "B_" + std::to_string(n) + " is beyond the table (max index " +
                                              std::to_string(max_index()) + ")");
    return values_[static_cast<std::size_t>(n)];
}

BernoulliTable bernoulli_table(int n_max) { return BernoulliTable(n_max); }

BigRational bernoulli_polynomial(int n, const BigRational& x, const BernoulliTable& table) {
    if (n < 0) throw Error(Errc::OutOfRange, "negative polynomial degree");
    BigRational sum = 0;
    BigInt binom = 1;
    BigRational xpow = 1;
    // Walk j from n down to 0 so the power of x grows.
    for (int j = n; j >= 0; --j) {
        sum += BigRational(binom) * table[j] * xpow;
        xpow *= x;
        binom = binom * j / (n - j + 1);
    }
    return sum;
}

BigRational w_quantity(std::uint64_t p, const BernoulliTable& table) {
    BigRational w = table[static_cast<long>(p - 1)] - 1 + BigRational(1, p);
    w.canonicalize();
    return w;
}

BigInt staudt_clausen_denominator(long n) {
    if (n < 2 || n % 2 != 0) throw Error(Errc::OutOfRange, "index must be even and at least 2");
    BigInt den = 1;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        if (is_prime_trial(static_cast<std::uint64_t>(d + 1))) den *= d + 1;
        if (d != n / d && is_prime_trial(static_cast<std::uint64_t>(n / d + 1))) den *= n / d + 1;
    }
    return den;
}

std::string_view provenance_name(EstimateProvenance provenance) {
    switch (provenance) {
        case EstimateProvenance::QuotientDerived: return "quotient-derived";
    }
    return "unknown";
}

PadicLaurent BernoulliPadicEstimate::b_pm1() const {
    return PadicLaurent::from_residue(w_mod_p2) + constant(BigRational(1) - BigRational(1, p), p);
}

PadicLaurent BernoulliPadicEstimate::b_2pm2() const {
    return b_ratio * constant(BigRational(BigInt(2 * p - 2)), p);
}

BernoulliPadicEstimate bernoulli_padic_estimate(std::uint64_t p, const Residue& wilson_mod_p2, const Residue& qsum_mod_p2) {
    if (p <= 3) throw Error(Errc::NotApplicable, "the estimate needs p > 3");
    const PrimePowerModulus m2(p, 2);
    if (!(wilson_mod_p2.modulus() == m2) || !(qsum_mod_p2.modulus() == m2))
        throw Error(Errc::ModulusMismatch, "estimate inputs must be residues mod p^2");

    BernoulliPadicEstimate est{p, qsum_mod_p2, PadicLaurent::zero(BigInt(p), 0)};
    const PadicLaurent b = est.b_pm1();
    const PadicLaurent ratio = b * constant(frac(1, BigInt(p - 1)), p);
    const PadicLaurent wilson = PadicLaurent::from_residue(wilson_mod_p2);
    est.b_ratio = wilson - constant(BigRational(1, p), p) + ratio + constant(BigRational(p, 2), p) * ratio * ratio;
    return est;
}

PadicLaurent bernoulli_power_sum(std::uint64_t n, std::uint64_t p) {
    if (p < 5) throw Error(Errc::NotApplicable, "power-sum route needs p >= 5");
    if (n < 4 || n % 2 != 0) throw Error(Errc::OutOfRange, "power-sum route needs an even index >= 4");
    const BigInt bp(p);
    const BigInt mod5 = ipow(bp, 5);
    const std::uint64_t count = p * p;
    BigInt sum = detail::with_ring(mod5, detail::Backend::Automatic, [&](const auto& ring) {
        auto acc = ring.zero();
        for (std::uint64_t a = 1; a < count; ++a) acc = ring.add(acc, ring.pow(ring.from_u64(a), n));
        return ring.to_big(acc);
    });
    // sum is p^2 B_n mod p^5.
    return PadicLaurent::from_digits(bp, -2, std::move(sum), 3);
}

}  // namespace lerch
