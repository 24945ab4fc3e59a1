#include <random>

#include "doctest.h"
#include "lerch/detail/ring.hpp"
#include "lerch/numcore.hpp"
#include "lerch/padic.hpp"
#include "oracles.hpp"

using namespace lerch;

namespace {

BigRational q(long n, long d) {
    BigRational r{BigInt(n), BigInt(d)};
    r.canonicalize();
    return r;
}

}  // namespace

TEST_CASE("prime power modulus validation") {
    CHECK(PrimePowerModulus(5, 3).pk() == 125);
    CHECK_THROWS_AS(PrimePowerModulus(2, 1), Error);
    CHECK_THROWS_AS(PrimePowerModulus(9, 1), Error);
    CHECK_THROWS_AS(PrimePowerModulus(5, 0), Error);
    CHECK_THROWS_AS(PrimePowerModulus(5, 5), Error);
}

TEST_CASE("residues are least nonnegative and need matching moduli") {
    const Residue r(-1, PrimePowerModulus(7, 2));
    CHECK(r.value() == 48);
    CHECK_THROWS_AS(r + Residue(1, PrimePowerModulus(7, 1)), Error);
    CHECK((r * r).value() == 1);
    CHECK(r.reduce(1).value() == 6);
}

TEST_CASE("mod_pow") {
    CHECK(mod_pow(2, 4, PrimePowerModulus(5, 3)).value() == 16);
    CHECK(mod_pow(12345, 0, PrimePowerModulus(11, 2)).value() == 1);
    // 2^6 = 64 = 49 + 15
    CHECK(mod_pow(2, 6, PrimePowerModulus(7, 2)).value() == 64 % 49);
    CHECK(mod_pow(-2, 3, PrimePowerModulus(7, 1)).value() == 6);
}

TEST_CASE("mod_inv") {
    CHECK(mod_inv(1, PrimePowerModulus(13, 2)).value() == 1);
    CHECK(mod_inv(6, PrimePowerModulus(5, 2)).value() == oracle::residue_by_search(1, 6, 25));
    CHECK(mod_inv(6, PrimePowerModulus(5, 2)).value() == 21);
    try {
        mod_inv(5, PrimePowerModulus(5, 2));
        FAIL("expected NotInvertible");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotInvertible);
    }
}

TEST_CASE("factorial_mod") {
    CHECK(factorial_mod(0, PrimePowerModulus(3, 1)).value() == 1);
    CHECK(factorial_mod(4, PrimePowerModulus(5, 2)).value() == 24);
    CHECK(factorial_mod(6, PrimePowerModulus(7, 3)).value() == 720 % 343);
    CHECK(factorial_mod(6, PrimePowerModulus(7, 3)).value() == 34);
}

TEST_CASE("rat_valuation") {
    CHECK(rat_valuation(0, 7).is_infinite());
    CHECK(rat_valuation(q(-5, 6), 5).value() == 1);
    CHECK(rat_valuation(q(-1, 30), 5).value() == -1);
}

TEST_CASE("rat_residue") {
    CHECK(rat_residue(q(3, 2), PrimePowerModulus(3, 1)).value() == 0);
    CHECK(rat_residue(q(-5, 6), PrimePowerModulus(5, 2)).value() == oracle::residue_by_search(-5, 6, 25));
    CHECK(rat_residue(q(-5, 6), PrimePowerModulus(5, 2)).value() == 20);
    try {
        rat_residue(q(-1, 30), PrimePowerModulus(5, 1));
        FAIL("expected NegativeValuation");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NegativeValuation);
    }
}

TEST_CASE("rat_congruent") {
    CHECK(rat_congruent(q(7, 3), q(7, 3), 5, 4));
    CHECK(rat_congruent(q(-1, 30), q(-1, 30), 5, 2));
    CHECK_FALSE(rat_congruent(q(1, 5), 0, 5, 1));
}

TEST_CASE("property: inverses and Fermat's little theorem") {
    std::mt19937_64 rng(20261017);
    for (std::uint64_t p : {3ull, 5ull, 7ull, 101ull, 997ull, 65537ull}) {
        for (int k = 1; k <= 4; ++k) {
            const PrimePowerModulus m(p, k);
            for (int i = 0; i < 50; ++i) {
                BigInt x = BigInt(static_cast<unsigned long>(rng() >> 2)) - BigInt(static_cast<unsigned long>(rng() >> 2));
                if (mpz_divisible_ui_p(x.get_mpz_t(), p)) x += 1;
                CHECK((mod_inv(x, m) * Residue(x, m)).value() == 1);
                if (k == 1) CHECK(mod_pow(x, p - 1, m).value() == 1);
            }
        }
    }
}

TEST_CASE("property: Wilson's theorem") {
    for (std::uint64_t p : oracle::primes_by_trial_division(3, 600))
        CHECK(factorial_mod(p - 1, PrimePowerModulus(p, 1)).value() == p - 1);
}

TEST_CASE("property: rat_congruent is an equivalence and weakens with k") {
    std::mt19937_64 rng(7);
    const BigInt p = 7;
    std::vector<BigRational> xs;
    for (int i = 0; i < 40; ++i) {
        long den = static_cast<long>(rng() % 50) + 1;
        if (den % 7 == 0) ++den;
        // Near-collisions: share a base, differ by multiples of powers of 7.
        xs.push_back(q(1, den) + q(static_cast<long>(rng() % 5) * 49, 1) + q(static_cast<long>(rng() % 3) * 7, 1));
    }
    for (int k = 1; k <= 4; ++k) {
        for (const auto& x : xs) {
            CHECK(rat_congruent(x, x, p, k));
            for (const auto& y : xs) {
                CHECK(rat_congruent(x, y, p, k) == rat_congruent(y, x, p, k));
                if (k > 1 && rat_congruent(x, y, p, k)) CHECK(rat_congruent(x, y, p, k - 1));
                for (const auto& z : xs)
                    if (rat_congruent(x, y, p, k) && rat_congruent(y, z, p, k)) CHECK(rat_congruent(x, z, p, k));
            }
        }
    }
}

TEST_CASE("fast and bignum rings agree") {
    using namespace lerch::detail;
    std::mt19937_64 rng(99);
    for (std::uint64_t p : {3ull, 1009ull, 99991ull, 2097143ull}) {
        for (int e = 1; e <= 4; ++e) {
            const BigInt n = ipow(BigInt(p), static_cast<unsigned long>(e));
            if (!FastRing::fits(n)) continue;
            const FastRing fast(n.get_ui());
            const BigRing big(n);
            for (int i = 0; i < 200; ++i) {
                const std::uint64_t a = rng(), b = rng(), x = rng() % 100000;
                CHECK(fast.to_big(fast.mul(fast.from_u64(a), fast.from_u64(b))) == big.mul(big.from_u64(a), big.from_u64(b)));
                CHECK(fast.to_big(fast.pow(fast.from_u64(a), x)) == big.pow(big.from_u64(a), x));
                CHECK(fast.to_big(fast.sub(fast.from_u64(a), fast.from_u64(b))) == big.sub(big.from_u64(a), big.from_u64(b)));
                CHECK(fast.to_big(fast.from_int(-static_cast<long>(x))) == big.from_int(-static_cast<long>(x)));
            }
        }
    }
}

TEST_CASE("padic: cancellation, valuation additivity, rational round trip") {
    const BigInt p = 5;
    const auto inv_p = PadicLaurent::from_rational(q(1, 5), p, 4);
    const auto sum = inv_p + PadicLaurent::from_rational(q(-1, 5), p, 4);
    CHECK(sum.is_zero());
    CHECK(sum.absolute_precision() == 3);

    const auto x = PadicLaurent::from_rational(q(-5, 6), p, 2);
    CHECK(x.valuation() == 1);
    CHECK(x.reduce(2).value() == 20);

    const auto a = PadicLaurent::from_rational(q(5 * 3, 1), p, 3);
    const auto b = PadicLaurent::from_rational(q(5 * 7, 2), p, 3);
    CHECK((a * b).valuation() == 2);
    CHECK((a * b).precision() == 3);

    CHECK(PadicLaurent::from_rational(q(-1, 30), p, 3).valuation() == -1);
    CHECK_THROWS_AS(PadicLaurent::from_rational(q(1, 125), p, 3), Error);
}

TEST_CASE("padic: error paths") {
    const BigInt p = 7;
    const auto zero = PadicLaurent::zero(p, 2);
    try {
        (void)zero.inverse();
        FAIL("expected DivisionByZero");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DivisionByZero);
    }
    try {
        (void)zero.reduce(3);
        FAIL("expected InsufficientPrecision");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InsufficientPrecision);
    }
    CHECK(zero.reduce(2).value() == 0);
    const auto pole = PadicLaurent::from_rational(q(1, 7), p, 3);
    CHECK_THROWS_AS((void)pole.reduce(1), Error);
    // Adding a value known mod p^1 caps the absolute precision.
    const auto coarse = PadicLaurent::from_residue(Residue(3, PrimePowerModulus(7, 1)));
    const auto fine = PadicLaurent::from_rational(q(2, 3), p, 4);
    CHECK((coarse + fine).absolute_precision() == 1);
    CHECK_THROWS_AS((void)(coarse + fine).reduce(2), Error);
}

TEST_CASE("padic: inverse and product give one") {
    const BigInt p = 11;
    const auto x = PadicLaurent::from_rational(q(22, 7), p, 4);
    const auto one = x * x.inverse();
    CHECK(one.valuation() == 0);
    CHECK(one.reduce(4).value() == 1);
}

TEST_CASE("property: padic pipeline agrees with rat_residue on 1000 rationals") {
    std::mt19937_64 rng(1234);
    const std::uint64_t primes[] = {3, 5, 7, 13, 101};
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t p = primes[i % 5];
        const int k = 1 + static_cast<int>(rng() % 4);
        long num = static_cast<long>(rng() % 20000) - 10000;
        long den = static_cast<long>(rng() % 5000) + 1;
        while (den % static_cast<long>(p) == 0) den += 1;
        const BigRational x = q(num, den);
        const PrimePowerModulus m(p, k);
        const auto via_padic = PadicLaurent::from_rational(x, BigInt(p), k + 2).reduce(k);
        CHECK(via_padic == rat_residue(x, m));
        // Sums and products stay in agreement.
        const BigRational y = q(static_cast<long>(rng() % 999) + 1, den);
        const auto px = PadicLaurent::from_rational(x, BigInt(p), k + 2);
        const auto py = PadicLaurent::from_rational(y, BigInt(p), k + 2);
        CHECK((px * py).reduce(k) == rat_residue(BigRational(x * y), m));
        const BigRational s = x + y;
        if (rat_valuation(s, BigInt(p)).at_least(0) && !rat_valuation(s, BigInt(p)).at_least(k + 2))
            CHECK((px + py).reduce(k) == rat_residue(s, m));
    }
}
