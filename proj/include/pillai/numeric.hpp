#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace pillai {

// Exact arbitrary-precision integers and rationals. All sequence terms and
// all emitted constants are held exactly; floating point only ever appears
// inside directed-rounding intervals (interval.hpp).
using Integer = mpz_class;
using Rational = mpq_class;

inline Integer ipow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational qpow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    Rational r;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), a);
    r.canonicalize();
    if (e < 0) return Rational(1) / r;
    return r;
}

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(const Integer& n, unsigned long k) {
    Integer r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

// Serialized form used throughout the JSON reports: "p/q" (or "p" when q=1).
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Parses "p", "p/q" or a plain decimal string like "-1.25" into an exact
// rational. Throws ParseError on malformed input.
Rational parse_rational(const std::string& s);

// Euler's totient by trial division; used for root-of-unity order bounds.
unsigned long euler_phi(unsigned long n);

// Deterministic 64-bit mixer/hash for big integers (limb-wise FNV).
std::size_t hash_integer(const Integer& z);

// Small deterministic PRNG (xorshift64*) used wherever the spec calls for
// "random" sampling; seeded explicitly so every run is reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next() {
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545F4914F6CDD1DULL;
    }
    // uniform in [lo, hi] inclusive
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    double unit() { return (next() >> 11) * (1.0 / 9007199254740992.0); }

private:
    std::uint64_t state_;
};

}  // namespace pillai
