#include "doctest.h"
#include "lerch/bernoulli.hpp"
#include "lerch/quotients.hpp"
#include "oracles.hpp"

using namespace lerch;

namespace {

BigRational q(long n, long d) {
    BigRational r{BigInt(n), BigInt(d)};
    r.canonicalize();
    return r;
}

const BernoulliTable& table() {
    static const BernoulliTable t(1000);
    return t;
}

}  // namespace

TEST_CASE("bernoulli table: leading values and odd vanishing") {
    const auto& t = table();
    CHECK(t[0] == 1);
    CHECK(t[1] == q(-1, 2));
    CHECK(t[2] == q(1, 6));
    CHECK(t[3] == 0);
    CHECK(t[4] == q(-1, 30));
    for (int n = 3; n < 200; n += 2) CHECK(t[n] == 0);
    CHECK(t[12] == q(-691, 2730));
    CHECK_THROWS_AS((void)t[1001], Error);
}

TEST_CASE("bernoulli table agrees with the defining recurrence") {
    const auto expected = oracle::bernoulli_by_recurrence(200);
    const BernoulliTable t(200);
    for (int n = 0; n <= 200; ++n) CHECK(t[n] == expected[static_cast<std::size_t>(n)]);
}

TEST_CASE("von Staudt-Clausen denominators") {
    CHECK(staudt_clausen_denominator(2) == 6);
    CHECK(staudt_clausen_denominator(4) == 30);
    CHECK(staudt_clausen_denominator(12) == 2 * 3 * 5 * 7 * 13);
    CHECK_THROWS_AS(staudt_clausen_denominator(3), Error);
    for (int n = 2; n <= 1000; n += 2) CHECK(table()[n].get_den() == staudt_clausen_denominator(n));
}

TEST_CASE("bernoulli polynomials") {
    const auto& t = table();
    for (int n = 0; n < 20; ++n) CHECK(bernoulli_polynomial(n, 0, t) == t[n]);
    CHECK(bernoulli_polynomial(1, 1, t) == q(1, 2));
    // (B_5(5) - B_5)/5 is the power sum 1^4 + 2^4 + 3^4 + 4^4 = 354.
    const BigRational value = (bernoulli_polynomial(5, 5, t) - t[5]) / 25;
    CHECK(value == q(354, 5));
    CHECK(value == BigRational(oracle::fermat_quotient_sum(5)) + 1 - q(1, 5));
}

TEST_CASE("property: power sums from Bernoulli polynomials") {
    const auto& t = table();
    for (int n = 1; n <= 12; ++n) {
        for (long big_n = 1; big_n <= 9; ++big_n) {
            BigInt s = 0;
            for (long a = 0; a < big_n; ++a) s += oracle::pow_ui(static_cast<std::uint64_t>(a), static_cast<unsigned long>(n - 1));
            if (n == 1) s = big_n;
            CHECK(BigRational(s) == (bernoulli_polynomial(n, big_n, t) - t[n]) / n);
        }
    }
}

TEST_CASE("w_quantity") {
    const auto& t = table();
    CHECK(w_quantity(5, t) == q(-5, 6));
    CHECK(rat_residue(w_quantity(5, t), PrimePowerModulus(5, 1)).value() == 0);
    CHECK(rat_residue(w_quantity(5, t), PrimePowerModulus(5, 2)).value() == 20);
    CHECK_THROWS_AS(w_quantity(1009, t), Error);
    for (std::uint64_t p : oracle::primes_by_trial_division(3, 499))
        CHECK(rat_valuation(w_quantity(p, t), BigInt(p)).at_least(0));
}

TEST_CASE("quotient-derived Bernoulli estimate") {
    const auto& t = table();
    const auto est5 = bernoulli_padic_estimate(5, wilson_quotient(5, 2), fermat_quotient_sum(5, 2));
    CHECK(est5.w_mod_p2.value() == 20);
    CHECK(provenance_name(est5.provenance) == "quotient-derived");
    try {
        bernoulli_padic_estimate(3, wilson_quotient(3, 2), fermat_quotient_sum(3, 2));
        FAIL("expected NotApplicable");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotApplicable);
    }
    for (std::uint64_t p : oracle::primes_by_trial_division(5, 499)) {
        const auto est = bernoulli_padic_estimate(p, wilson_quotient(p, 2), fermat_quotient_sum(p, 2));
        CHECK(est.w_mod_p2 == rat_residue(w_quantity(p, t), PrimePowerModulus(p, 2)));
        CHECK(est.w_mod_p2.reduce(1) == wilson_quotient(p, 1));
        const BigRational exact_ratio = t[static_cast<long>(2 * p - 2)] / BigRational(BigInt(2 * p - 2));
        const auto exact = PadicLaurent::from_rational(exact_ratio, BigInt(p), 6);
        CHECK(est.b_ratio.absolute_precision() >= 2);
        CHECK(est.b_ratio.congruent(exact, 1));
        CHECK(est.b_ratio.congruent(exact, 2));
    }
}

TEST_CASE("power-sum Bernoulli values match the table") {
    const auto& t = table();
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 31ull}) {
        for (std::uint64_t n = 4; n <= 60; n += 2) {
            const auto est = bernoulli_power_sum(n, p);
            CHECK(est.absolute_precision() == 3);
            CHECK(est.congruent(PadicLaurent::from_rational(t[static_cast<long>(n)], BigInt(p), 6), 3));
        }
    }
    CHECK_THROWS_AS(bernoulli_power_sum(4, 3), Error);
    CHECK_THROWS_AS(bernoulli_power_sum(5, 7), Error);
}
