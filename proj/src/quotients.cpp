#include "lerch/quotients.hpp"

#include <array>

namespace lerch {

namespace {

void require_precision(int k, int max_k) {
    if (k < 1 || k > max_k) throw Error(Errc::OutOfRange, "precision exponent must be in 1.." + std::to_string(max_k));
}

void require_odd_prime(std::uint64_t p) {
    if (p < 3 || !is_prime_trial(p)) throw Error(Errc::OutOfRange, std::to_string(p) + " is not an odd prime");
}

BigInt pow_u(std::uint64_t p, int e) { return ipow(BigInt(p), static_cast<unsigned long>(e)); }

// x is known to be divisible by p (as an integer representative mod p^(k+1));
// returns x/p as a residue mod p^k.
Residue divide_by_p(const BigInt& x, std::uint64_t p, int k) {
    BigInt q;
    mpz_divexact_ui(q.get_mpz_t(), x.get_mpz_t(), p);
    return Residue(q, PrimePowerModulus(p, k));
}

// Inverses of 1..n in the ring by batch inversion: one exponentiation and
// three multiplications per element. index 0 is unused.
template <class Ring>
std::vector<typename Ring::Elem> inverses(const Ring& ring, std::uint64_t n, std::uint64_t phi) {
    std::vector<typename Ring::Elem> prefix(n + 1, ring.one());
    for (std::uint64_t a = 1; a <= n; ++a) prefix[a] = ring.mul(prefix[a - 1], ring.from_u64(a));
    auto inv_all = ring.pow(prefix[n], phi - 1);
    std::vector<typename Ring::Elem> inv(n + 1, ring.zero());
    for (std::uint64_t a = n; a >= 1; --a) {
        inv[a] = ring.mul(inv_all, prefix[a - 1]);
        inv_all = ring.mul(inv_all, ring.from_u64(a));
    }
    return inv;
}

// Euler phi of p^e.
std::uint64_t phi_pe(std::uint64_t p, int e) {
    std::uint64_t r = p - 1;
    for (int i = 1; i < e; ++i) r *= p;
    return r;
}

}  // namespace

Residue fermat_quotient(std::uint64_t a, std::uint64_t p, int k) {
    require_precision(k, kMaxQuotientPrecision);
    require_odd_prime(p);
    if (a < 1 || a > p - 1) throw Error(Errc::OutOfRange, "base must lie in [1, p-1]");
    const PrimePowerModulus hi(p, k + 1);
    const Residue x = mod_pow(BigInt(a), BigInt(p - 1), hi);
    return divide_by_p(x.value() - 1 + hi.pk(), p, k);
}

Residue fermat_quotient_sum(std::uint64_t p, int k, Backend backend) {
    require_precision(k, kMaxQuotientPrecision);
    require_odd_prime(p);
    const BigInt modulus = pow_u(p, k + 1);
    return detail::with_ring(modulus, backend, [&](const auto& ring) {
        auto acc = ring.zero();
        for (std::uint64_t a = 1; a < p; ++a) acc = ring.add(acc, ring.pow(ring.from_u64(a), p - 1));
        acc = ring.sub(acc, ring.from_u64(p - 1));
        return divide_by_p(ring.to_big(acc), p, k);
    });
}

Residue wilson_quotient(std::uint64_t p, int k, Backend backend) {
    require_precision(k, kMaxQuotientPrecision);
    if (p < 3) throw Error(Errc::OutOfRange, "wilson_quotient needs an odd modulus base");
    const BigInt modulus = pow_u(p, k + 1);
    return detail::with_ring(modulus, backend, [&](const auto& ring) {
        auto f = ring.one();
        for (std::uint64_t a = 2; a < p; ++a) f = ring.mul(f, ring.from_u64(a));
        const BigInt top = ring.to_big(ring.add(f, ring.one()));
        if (!mpz_divisible_ui_p(top.get_mpz_t(), p))
            throw Error(Errc::NonWilsonIntegerDivision, std::to_string(p) + " does not divide (p-1)! + 1");
        return divide_by_p(top, p, k);
    });
}

QuotientBundle quotient_bundle(std::uint64_t p, int k, Backend backend) {
    if (k < 2 || k > kMaxQuotientPrecision) throw Error(Errc::OutOfRange, "bundle precision must be 2 or 3");
    require_odd_prime(p);
    Residue qsum = fermat_quotient_sum(p, k, backend);
    Residue wilson = wilson_quotient(p, k, backend);
    const Residue diff = qsum.reduce(2) - wilson.reduce(2);
    Residue lerch = divide_by_p(diff.value(), p, 1);
    return QuotientBundle{p, k, std::move(qsum), std::move(wilson), std::move(lerch)};
}

Residue lerch_residue(std::uint64_t p) {
    if (p == 2) throw Error(Errc::NotApplicable, "the Lerch quotient is defined for p > 2");
    return quotient_bundle(p, 2).lerch;
}

BigRational harmonic(std::uint64_t a, int order) {
    if (order != 1 && order != 2) throw Error(Errc::OutOfRange, "harmonic order must be 1 or 2");
    BigRational h = 0;
    for (std::uint64_t i = 1; i <= a; ++i) {
        BigInt d(i);
        if (order == 2) d *= d;
        h += BigRational(BigInt(1), d);
    }
    h.canonicalize();
    return h;
}

std::vector<Residue> harmonic_residues(std::uint64_t p, int order, int k, Backend backend) {
    if (order != 1 && order != 2) throw Error(Errc::OutOfRange, "harmonic order must be 1 or 2");
    require_precision(k, kMaxExponent);
    require_odd_prime(p);
    const PrimePowerModulus m(p, k);
    return detail::with_ring(m.pk(), backend, [&](const auto& ring) {
        const auto inv = inverses(ring, p - 1, phi_pe(p, k));
        std::vector<Residue> out;
        out.reserve(p);
        auto h = ring.zero();
        out.emplace_back(ring.to_big(h), m);
        for (std::uint64_t a = 1; a < p; ++a) {
            h = ring.add(h, order == 1 ? inv[a] : ring.mul(inv[a], inv[a]));
            out.emplace_back(ring.to_big(h), m);
        }
        return out;
    });
}

std::string_view weight_name(Weight w) {
    switch (w) {
        case Weight::Unit: return "unit";
        case Weight::H: return "H";
        case Weight::HSquared: return "H^2";
        case Weight::H2: return "H2";
    }
    return "unknown";
}

// p * sum_a w(a) q_p(a) == sum_a w(a) (a^(p-1) - 1) (mod p^(k+1)) for p-integral
// weights, so all four sums come out of one pass at modulus p^(k+1).
std::vector<Residue> weighted_qsums(std::uint64_t p, int k, Backend backend) {
    require_precision(k, kMaxQuotientPrecision);
    require_odd_prime(p);
    const BigInt modulus = pow_u(p, k + 1);
    return detail::with_ring(modulus, backend, [&](const auto& ring) {
        const auto inv = inverses(ring, p - 1, phi_pe(p, k + 1));
        std::array<std::decay_t<decltype(ring.one())>, 4> acc{ring.zero(), ring.zero(), ring.zero(), ring.zero()};
        auto h = ring.zero();
        auto h2 = ring.zero();
        const auto one = ring.one();
        for (std::uint64_t a = 1; a < p; ++a) {
            h = ring.add(h, inv[a]);
            h2 = ring.add(h2, ring.mul(inv[a], inv[a]));
            const auto t = ring.sub(ring.pow(ring.from_u64(a), p - 1), one);
            acc[0] = ring.add(acc[0], t);
            acc[1] = ring.add(acc[1], ring.mul(h, t));
            acc[2] = ring.add(acc[2], ring.mul(ring.mul(h, h), t));
            acc[3] = ring.add(acc[3], ring.mul(h2, t));
        }
        std::vector<Residue> out;
        for (const auto& s : acc) out.push_back(divide_by_p(ring.to_big(s), p, k));
        return out;
    });
}

Residue weighted_qsum(std::uint64_t p, Weight weight, int k, Backend backend) {
    return weighted_qsums(p, k, backend)[static_cast<std::size_t>(weight)];
}

std::vector<Residue> binomials_pm1(std::uint64_t p, int k, Backend backend) {
    require_precision(k, kMaxQuotientPrecision);
    require_odd_prime(p);
    const PrimePowerModulus m(p, k);
    return detail::with_ring(m.pk(), backend, [&](const auto& ring) {
        const auto inv = inverses(ring, p - 1, phi_pe(p, k));
        std::vector<Residue> out;
        out.reserve(p);
        auto c = ring.one();
        out.emplace_back(ring.to_big(c), m);
        for (std::uint64_t a = 1; a < p; ++a) {
            c = ring.mul(ring.mul(c, ring.from_u64(p - a)), inv[a]);
            out.emplace_back(ring.to_big(c), m);
        }
        return out;
    });
}

Residue binomial_pm1(std::uint64_t a, std::uint64_t p, int k) {
    require_precision(k, kMaxQuotientPrecision);
    require_odd_prime(p);
    if (a > p - 1) throw Error(Errc::OutOfRange, "a must lie in [0, p-1]");
    const PrimePowerModulus m(p, k);
    Residue c(1, m);
    for (std::uint64_t i = 1; i <= a; ++i) c = c * Residue(BigInt(p - i), m) * mod_inv(BigInt(i), m);
    return c;
}

BigRational lucas_lehmer_value(std::uint64_t a, std::uint64_t p) {
    const BigRational h = harmonic(a, 1);
    const BigRational h2 = harmonic(a, 2);
    const BigRational pp{BigInt(p)};
    BigRational v = 1 - pp * h + pp * pp / 2 * (h * h - h2);
    if (a % 2 == 1) v = -v;
    v.canonicalize();
    return v;
}

Residue lucas_lehmer_rhs(std::uint64_t a, std::uint64_t p) {
    require_odd_prime(p);
    if (a < 1 || a > p - 1) throw Error(Errc::OutOfRange, "a must lie in [1, p-1]");
    return rat_residue(lucas_lehmer_value(a, p), PrimePowerModulus(p, 3));
}

std::vector<Residue> lucas_lehmer_rhs_all(std::uint64_t p, Backend backend) {
    require_odd_prime(p);
    const PrimePowerModulus m(p, 3);
    return detail::with_ring(m.pk(), backend, [&](const auto& ring) {
        const auto inv = inverses(ring, p - 1, phi_pe(p, 3));
        const auto pe = ring.from_u64(p);
        const auto half = ring.pow(ring.from_u64(2), phi_pe(p, 3) - 1);
        const auto half_p2 = ring.mul(ring.mul(pe, pe), half);
        std::vector<Residue> out;
        out.reserve(p);
        auto h = ring.zero();
        auto h2 = ring.zero();
        for (std::uint64_t a = 0; a < p; ++a) {
            if (a > 0) {
                h = ring.add(h, inv[a]);
                h2 = ring.add(h2, ring.mul(inv[a], inv[a]));
            }
            auto v = ring.sub(ring.one(), ring.mul(pe, h));
            v = ring.add(v, ring.mul(half_p2, ring.sub(ring.mul(h, h), h2)));
            if (a % 2 == 1) v = ring.neg(v);
            out.emplace_back(ring.to_big(v), m);
        }
        return out;
    });
}

Residue beeger_sum(std::uint64_t p, int k, Backend backend) {
    require_precision(k, kMaxQuotientPrecision);
    require_odd_prime(p);
    const BigInt modulus = pow_u(p, k + 1);
    return detail::with_ring(modulus, backend, [&](const auto& ring) {
        const auto inv = inverses(ring, p - 1, phi_pe(p, k + 1));
        auto c = ring.one();
        auto acc = ring.zero();
        const auto one = ring.one();
        for (std::uint64_t a = 1; a < p; ++a) {
            c = ring.mul(ring.mul(c, ring.from_u64(p - a)), inv[a]);
            const auto term = ring.mul(c, ring.sub(ring.pow(ring.from_u64(a), p - 1), one));
            acc = a % 2 == 0 ? ring.add(acc, term) : ring.sub(acc, term);
        }
        return divide_by_p(ring.to_big(acc), p, k);
    });
}

BigRational euler_maclaurin_rhs(std::uint64_t p, const BernoulliTable& table) {
    if (p <= 3) throw Error(Errc::NotApplicable, "the Euler-MacLaurin form needs p > 3");
    const BigInt bp(p);
    BigRational sum = BigRational(-1) + BigRational(BigInt(1), bp);
    BigInt binom = 1;
    for (std::uint64_t j = 1; j <= p; ++j) {
        binom = binom * (p - j + 1) / j;
        const BigRational& b = table[static_cast<long>(p - j)];
        if (b == 0) continue;
        BigRational term = BigRational(binom) * b;
        if (j >= 2)
            term *= BigRational(ipow(bp, static_cast<unsigned long>(j - 2)));
        else
            term /= BigRational(bp);
        sum += term;
    }
    sum.canonicalize();
    return sum;
}

BigInt fermat_quotient_exact(std::uint64_t a, std::uint64_t p) {
    BigInt x = ipow(BigInt(a), static_cast<unsigned long>(p - 1)) - 1;
    if (!mpz_divisible_ui_p(x.get_mpz_t(), p)) throw Error(Errc::OutOfRange, "a^(p-1) - 1 is not divisible by p");
    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
    return x;
}

BigInt fermat_quotient_sum_exact(std::uint64_t p) {
    BigInt s = 0;
    for (std::uint64_t a = 1; a < p; ++a) s += fermat_quotient_exact(a, p);
    return s;
}

BigInt wilson_quotient_exact(std::uint64_t p) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), p - 1);
    f += 1;
    if (!mpz_divisible_ui_p(f.get_mpz_t(), p))
        throw Error(Errc::NonWilsonIntegerDivision, std::to_string(p) + " does not divide (p-1)! + 1");
    mpz_divexact_ui(f.get_mpz_t(), f.get_mpz_t(), p);
    return f;
}

BigInt beeger_sum_exact(std::uint64_t p) {
    BigInt s = 0;
    BigInt c = 1;
    for (std::uint64_t a = 1; a < p; ++a) {
        c = c * (p - a) / a;
        const BigInt term = c * fermat_quotient_exact(a, p);
        if (a % 2 == 0)
            s += term;
        else
            s -= term;
    }
    return s;
}

}  // namespace lerch
