#pragma once

// Arithmetic back ends for the O(p) quotient kernels. FastRing is Montgomery
// arithmetic on 64-bit words for odd moduli below 2^63; BigRing is GMP. Both
// produce identical residues; the choice is made per modulus.

#include <cstdint>

#include "lerch/numcore.hpp"

namespace lerch::detail {

class FastRing {
public:
    using Elem = std::uint64_t;

    explicit FastRing(std::uint64_t n) : n_(n) {
        std::uint64_t inv = n;
        for (int i = 0; i < 6; ++i) inv *= 2 - n * inv;
        neg_inv_ = ~inv + 1;
        const unsigned __int128 r = (static_cast<unsigned __int128>(1) << 64) % n;
        one_ = static_cast<std::uint64_t>(r);
        r2_ = static_cast<std::uint64_t>((r * r) % n);
    }

    static bool fits(const BigInt& n) { return n > 1 && mpz_odd_p(n.get_mpz_t()) && mpz_sizeinbase(n.get_mpz_t(), 2) <= 63; }

    Elem one() const { return one_; }
    Elem zero() const { return 0; }
    Elem from_u64(std::uint64_t a) const { return mul(a % n_, r2_); }
    Elem from_int(long a) const {
        if (a >= 0) return from_u64(static_cast<std::uint64_t>(a));
        return neg(from_u64(static_cast<std::uint64_t>(-(a + 1)) + 1));
    }
    std::uint64_t to_u64(Elem a) const { return reduce(a); }
    BigInt to_big(Elem a) const {
        BigInt r;
        const std::uint64_t v = reduce(a);
        mpz_import(r.get_mpz_t(), 1, -1, sizeof(std::uint64_t), 0, 0, &v);
        return r;
    }

    Elem mul(Elem a, Elem b) const { return reduce(static_cast<unsigned __int128>(a) * b); }
    Elem add(Elem a, Elem b) const {
        const std::uint64_t s = a + b;
        return s >= n_ ? s - n_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + n_ - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : n_ - a; }
    bool is_zero(Elem a) const { return a == 0; }

    Elem pow(Elem base, std::uint64_t e) const {
        Elem r = one_;
        while (e != 0) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

private:
    std::uint64_t reduce(unsigned __int128 t) const {
        const std::uint64_t m = static_cast<std::uint64_t>(t) * neg_inv_;
        const unsigned __int128 u = (t + static_cast<unsigned __int128>(m) * n_) >> 64;
        const std::uint64_t r = static_cast<std::uint64_t>(u);
        return r >= n_ ? r - n_ : r;
    }

    std::uint64_t n_;
    std::uint64_t neg_inv_ = 0;
    std::uint64_t one_ = 0;
    std::uint64_t r2_ = 0;
};

class BigRing {
public:
    using Elem = BigInt;

    explicit BigRing(BigInt n) : n_(std::move(n)) {}

    Elem one() const { return 1; }
    Elem zero() const { return 0; }
    Elem from_u64(std::uint64_t a) const {
        BigInt r;
        mpz_import(r.get_mpz_t(), 1, -1, sizeof(std::uint64_t), 0, 0, &a);
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n_.get_mpz_t());
        return r;
    }
    Elem from_int(long a) const {
        BigInt r = a;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n_.get_mpz_t());
        return r;
    }
    BigInt to_big(const Elem& a) const { return a; }

    Elem mul(const Elem& a, const Elem& b) const {
        BigInt r = a * b;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n_.get_mpz_t());
        return r;
    }
    Elem add(const Elem& a, const Elem& b) const {
        BigInt r = a + b;
        if (r >= n_) r -= n_;
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        BigInt r = a - b;
        if (r < 0) r += n_;
        return r;
    }
    Elem neg(const Elem& a) const { return a == 0 ? BigInt(0) : BigInt(n_ - a); }
    bool is_zero(const Elem& a) const { return a == 0; }

    Elem pow(const Elem& base, std::uint64_t e) const {
        BigInt r;
        BigInt exp;
        mpz_import(exp.get_mpz_t(), 1, -1, sizeof(std::uint64_t), 0, 0, &e);
        mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), n_.get_mpz_t());
        return r;
    }

private:
    BigInt n_;
};

/// Which back end a kernel uses. Automatic picks FastRing whenever it fits.
enum class Backend { Automatic, Fast, Big };

template <class Fn>
decltype(auto) with_ring(const BigInt& modulus, Backend backend, Fn&& fn) {
    const bool fast = backend == Backend::Fast || (backend == Backend::Automatic && FastRing::fits(modulus));
    if (fast) {
        if (!FastRing::fits(modulus)) throw Error(Errc::OutOfRange, "modulus too large for the 64-bit kernel");
        return fn(FastRing(modulus.get_ui()));
    }
    return fn(BigRing(modulus));
}

}  // namespace lerch::detail
