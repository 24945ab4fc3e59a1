#include <random>

#include "doctest.h"
#include "lerch/quotients.hpp"
#include "oracles.hpp"

using namespace lerch;

namespace {

BigRational q(long n, long d) {
    BigRational r{BigInt(n), BigInt(d)};
    r.canonicalize();
    return r;
}

BigInt modp(const BigInt& x, std::uint64_t p, int k) { return oracle::mod(x, oracle::pow_ui(p, static_cast<unsigned long>(k))); }

}  // namespace

TEST_CASE("fermat_quotient") {
    CHECK(fermat_quotient(1, 7, 2).value() == 0);
    CHECK(fermat_quotient(2, 3, 1).value() == 1);
    CHECK(fermat_quotient(2, 5, 1).value() == 3);
    CHECK_THROWS_AS(fermat_quotient(0, 5, 1), Error);
    CHECK_THROWS_AS(fermat_quotient(5, 5, 1), Error);
    for (std::uint64_t p : {7ull, 11ull, 101ull})
        for (std::uint64_t a = 1; a < p; ++a)
            for (int k = 1; k <= 3; ++k) CHECK(fermat_quotient(a, p, k).value() == modp(oracle::fermat_quotient(a, p), p, k));
}

TEST_CASE("fermat_quotient_sum") {
    CHECK(fermat_quotient_sum(3, 2).value() == 1);
    CHECK(oracle::fermat_quotient_sum(5) == 70);
    CHECK(fermat_quotient_sum(5, 2).value() == 20);
    CHECK(fermat_quotient_sum(5, 1).value() == 0);
    for (std::uint64_t p : oracle::primes_by_trial_division(3, 300))
        for (int k = 1; k <= 3; ++k)
            CHECK(fermat_quotient_sum(p, k).value() == modp(oracle::fermat_quotient_sum(p), p, k));
}

TEST_CASE("wilson_quotient") {
    CHECK(wilson_quotient(3, 1).value() == 1);
    CHECK(wilson_quotient(5, 1).value() == 0);
    CHECK(oracle::wilson_quotient(7) == 103);
    CHECK(wilson_quotient(7, 1).value() == 5);
    CHECK(wilson_quotient(7, 2).value() == 5);
    try {
        wilson_quotient(9, 1);
        FAIL("expected NonWilsonIntegerDivision");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonWilsonIntegerDivision);
    }
    for (std::uint64_t p : oracle::primes_by_trial_division(3, 300))
        for (int k = 1; k <= 3; ++k) CHECK(wilson_quotient(p, k).value() == modp(oracle::wilson_quotient(p), p, k));
}

TEST_CASE("lerch_residue") {
    CHECK(lerch_residue(3).value() == 0);
    CHECK(lerch_residue(5).value() == 3);
    CHECK(lerch_residue(103).value() == 0);
    CHECK_THROWS_AS(lerch_residue(2), Error);
    for (std::uint64_t p : oracle::primes_by_trial_division(3, 200)) {
        const BigInt l = (oracle::fermat_quotient_sum(p) - oracle::wilson_quotient(p)) / p;
        CHECK(lerch_residue(p).value() == modp(l, p, 1));
    }
}

TEST_CASE("harmonic numbers") {
    CHECK(harmonic(0, 1) == 0);
    CHECK(harmonic(1, 1) == 1);
    CHECK(harmonic(4, 1) == q(25, 12));
    CHECK(harmonic(2, 2) == q(5, 4));
    for (std::uint64_t p : oracle::primes_by_trial_division(5, 499))
        CHECK(rat_valuation(harmonic(p - 1, 1), BigInt(p)).at_least(2));
    for (std::uint64_t p : {5ull, 11ull, 97ull}) {
        const auto h1 = harmonic_residues(p, 1, 3);
        const auto h2 = harmonic_residues(p, 2, 2);
        for (std::uint64_t a = 0; a < p; ++a) {
            CHECK(h1[a] == rat_residue(harmonic(a, 1), PrimePowerModulus(p, 3)));
            CHECK(h2[a] == rat_residue(harmonic(a, 2), PrimePowerModulus(p, 2)));
        }
    }
}

TEST_CASE("weighted Fermat-quotient sums") {
    // sum_a H_a q_3(a) = 1*0 + (3/2)*1 = 3/2
    CHECK(weighted_qsum(3, Weight::H, 1).value() == 0);
    // sum_a H_a q_5(a) = 1681/12
    BigRational exact5 = 0;
    for (std::uint64_t a = 1; a < 5; ++a) exact5 += harmonic(a, 1) * BigRational(oracle::fermat_quotient(a, 5));
    CHECK(exact5 == q(1681, 12));
    CHECK(weighted_qsum(5, Weight::H, 1).value() == 3);
    CHECK(weighted_qsum(5, Weight::Unit, 2) == fermat_quotient_sum(5, 2));

    for (std::uint64_t p : {7ull, 13ull, 37ull}) {
        for (int k = 1; k <= 3; ++k) {
            const PrimePowerModulus m(p, k);
            BigRational s[4] = {0, 0, 0, 0};
            for (std::uint64_t a = 1; a < p; ++a) {
                const BigRational fq(oracle::fermat_quotient(a, p));
                const BigRational h = harmonic(a, 1);
                s[0] += fq;
                s[1] += h * fq;
                s[2] += h * h * fq;
                s[3] += harmonic(a, 2) * fq;
            }
            const auto all = weighted_qsums(p, k);
            for (int w = 0; w < 4; ++w) CHECK(all[static_cast<std::size_t>(w)] == rat_residue(s[w], m));
        }
    }
}

TEST_CASE("binomial_pm1 and the Lucas-Lehmer form") {
    CHECK(binomial_pm1(0, 11, 3).value() == 1);
    CHECK(binomial_pm1(2, 5, 2).value() == 6);
    CHECK(binomial_pm1(2, 5, 1).value() == 1);
    CHECK(binomial_pm1(2, 7, 3).value() == 15);
    CHECK_THROWS_AS(binomial_pm1(7, 7, 1), Error);
    CHECK(lucas_lehmer_value(2, 7) == 15);
    CHECK(lucas_lehmer_rhs(2, 7).value() == 15);
    CHECK(lucas_lehmer_rhs(1, 5).value() == 4);
    for (std::uint64_t p : {5ull, 7ull, 11ull}) CHECK(lucas_lehmer_rhs(p - 1, p).value() == 1);

    for (std::uint64_t p : oracle::primes_by_trial_division(3, 60)) {
        const auto all = binomials_pm1(p, 3);
        const auto rhs = lucas_lehmer_rhs_all(p);
        for (std::uint64_t a = 0; a < p; ++a) {
            BigInt c;
            mpz_bin_uiui(c.get_mpz_t(), p - 1, a);
            CHECK(all[a].value() == modp(c, p, 3));
            CHECK(binomial_pm1(a, p, 2).value() == modp(c, p, 2));
            if (a > 0) CHECK(rhs[a] == lucas_lehmer_rhs(a, p));
        }
    }
}

TEST_CASE("Beeger sum equals the Wilson quotient") {
    // p = 5: 0 + 6*3 - 4*16 + 1*51 = 5
    CHECK(beeger_sum_exact(5) == 5);
    CHECK(beeger_sum_exact(3) == 1);
    CHECK(beeger_sum(7, 2).value() == wilson_quotient(7, 2).value());
    CHECK(beeger_sum(7, 2).value() == 5);
    for (std::uint64_t p : oracle::primes_by_trial_division(3, 150)) {
        CHECK(beeger_sum_exact(p) == oracle::wilson_quotient(p));
        for (int k = 1; k <= 3; ++k) CHECK(beeger_sum(p, k) == wilson_quotient(p, k));
    }
}

TEST_CASE("Euler-MacLaurin form of the Fermat-quotient sum") {
    const BernoulliTable t(200);
    CHECK(euler_maclaurin_rhs(5, t) == 70);
    CHECK(euler_maclaurin_rhs(5, t) == BigRational(-1) + q(1, 5) - q(1, 30) + q(25, 3) - q(125, 2) + 125);
    CHECK(euler_maclaurin_rhs(7, t) == BigRational(oracle::fermat_quotient_sum(7)));
    CHECK_THROWS_AS(euler_maclaurin_rhs(3, t), Error);
    for (std::uint64_t p : oracle::primes_by_trial_division(5, 199)) {
        const BigRational rhs = euler_maclaurin_rhs(p, t);
        CHECK(rhs == BigRational(oracle::fermat_quotient_sum(p)));
        // The tail is (B_p(p) - B_p)/p^2.
        CHECK(rhs - (BigRational(-1) + q(1, static_cast<long>(p))) ==
              (bernoulli_polynomial(static_cast<int>(p), BigInt(p), t) - t[static_cast<long>(p)]) /
                  BigRational(BigInt(p * p)));
    }
}

TEST_CASE("property: logarithmic law of Fermat quotients mod p") {
    std::mt19937_64 rng(5);
    for (std::uint64_t p : {11ull, 101ull, 1009ull}) {
        for (int i = 0; i < 100; ++i) {
            const std::uint64_t a = 1 + rng() % (p - 1);
            const std::uint64_t b = 1 + rng() % (p - 1);
            if (a * b > p - 1) continue;
            CHECK((fermat_quotient(a, p, 1) + fermat_quotient(b, p, 1)) == fermat_quotient(a * b, p, 1));
        }
    }
}

TEST_CASE("property: Lerch's congruence and Lucas's theorem") {
    for (std::uint64_t p : oracle::primes_by_trial_division(3, 2000)) CHECK(fermat_quotient_sum(p, 1) == wilson_quotient(p, 1));
    for (std::uint64_t p : oracle::primes_by_trial_division(3, 200)) {
        const auto c = binomials_pm1(p, 1);
        for (std::uint64_t a = 0; a < p; ++a) CHECK(c[a] == rat_residue(BigRational(a % 2 == 0 ? 1 : -1), PrimePowerModulus(p, 1)));
    }
    for (std::uint64_t p : oracle::primes_by_trial_division(5, 100)) {
        const auto c = binomials_pm1(p, 3);
        for (std::uint64_t a = 1; a < p; ++a) CHECK(c[a] == lucas_lehmer_rhs(a, p));
    }
}

TEST_CASE("fast and bignum kernels give identical residues") {
    for (std::uint64_t p : {3ull, 5ull, 101ull, 1009ull, 9973ull}) {
        for (int k = 1; k <= 3; ++k) {
            CHECK(fermat_quotient_sum(p, k, Backend::Fast) == fermat_quotient_sum(p, k, Backend::Big));
            CHECK(wilson_quotient(p, k, Backend::Fast) == wilson_quotient(p, k, Backend::Big));
            CHECK(beeger_sum(p, k, Backend::Fast) == beeger_sum(p, k, Backend::Big));
            CHECK(weighted_qsums(p, k, Backend::Fast) == weighted_qsums(p, k, Backend::Big));
        }
    }
    // p^4 above 2^63 takes the bignum route automatically.
    CHECK(fermat_quotient_sum(65537, 3) == fermat_quotient_sum(65537, 3, Backend::Big));
    CHECK_THROWS_AS(fermat_quotient_sum(65537, 3, Backend::Fast), Error);
}
