#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pillai/heights.hpp"
#include "pillai/linear_forms.hpp"

using namespace pillai;

TEST_CASE("baker-wustholz constant values") {
    // C(1,1) = 18 * 2! * 1^2 * 32^3 * log 2 = 1179648 log 2
    RInterval c11 = bw_constant(1, 1);
    RInterval expect = RInterval::log2(192).mul_rational(Rational(1179648));
    CHECK(c11.intersects(expect));
    CHECK((c11 - expect).abs().certainly_lt(Rational(1, Integer(1) << 32)));
    // C(3,1) = 18 * 24 * 81 * 32^5 * log 6
    RInterval c31 = bw_constant(3, 1);
    Integer rat31 = Integer(18) * 24 * 81 * ipow(Integer(32), 5);
    RInterval e31 = RInterval::log_integer(Integer(6), 192).mul_rational(Rational(rat31));
    CHECK((c31 - e31).abs().certainly_lt(Rational(1, 1024)));
    // C(3,6) = 18 * 24 * 81 * 192^5 * log 36
    RInterval c36 = bw_constant(3, 6);
    Integer rat36 = Integer(18) * 24 * 81 * ipow(Integer(192), 5);
    RInterval e36 = RInterval::log_integer(Integer(36), 192).mul_rational(Rational(rat36));
    CHECK((c36 - e36).abs().certainly_lt(Rational(1)));
    CHECK_THROWS(bw_constant(0, 1));
}

TEST_CASE("bw constant strictly increases in k and d") {
    for (int k = 1; k <= 10; ++k)
        for (int d = 1; d <= 10; ++d) {
            RInterval cur = bw_constant(k, d, 256);
            if (k > 1) CHECK(bw_constant(k - 1, d, 256).certainly_lt(cur));
            if (d > 1) CHECK(bw_constant(k, d - 1, 256).certainly_lt(cur));
        }
}

TEST_CASE("phi bound is lambda bound minus log 2") {
    LinearFormInstance inst;
    inst.k = 2;
    inst.d = 1;
    inst.modified_heights = {RInterval::exact(1, 192), RInterval::log_integer(Integer(3), 192)};
    inst.coefficients = {Integer(4), Integer(-7)};
    RInterval lam = lambda_lower_bound(inst);
    RInterval phi = phi_lower_bound(inst);
    CHECK((lam - phi).intersects(RInterval::log2(192)));
    CHECK(phi.certainly_lt(lam));
}

TEST_CASE("random integer linear forms respect the lower bound") {
    // eta built from primes <= 13 so Lambda = 0 is decidable by factorization
    const long primes[] = {2, 3, 5, 7, 11, 13};
    Rng rng(1234);
    const mpfr_prec_t hp = 512;  // ~150 digits, well past 50
    int tested = 0;
    while (tested < 200) {
        int k = static_cast<int>(rng.range(1, 3));
        std::vector<long> eta(static_cast<std::size_t>(k));
        std::vector<Integer> b(static_cast<std::size_t>(k));
        std::map<long, long> exponents;
        for (int i = 0; i < k; ++i) {
            eta[static_cast<std::size_t>(i)] = primes[rng.range(0, 5)];
            b[static_cast<std::size_t>(i)] = rng.range(-20, 20);
        }
        bool allzero = true;
        for (int i = 0; i < k; ++i) {
            if (b[static_cast<std::size_t>(i)] != 0) allzero = false;
            exponents[eta[static_cast<std::size_t>(i)]] +=
                b[static_cast<std::size_t>(i)].get_si();
        }
        if (allzero) continue;
        bool lambda_zero = true;
        for (auto& [p, e] : exponents)
            if (e != 0) lambda_zero = false;
        if (lambda_zero) continue;  // the theorem needs Lambda != 0
        LinearFormInstance inst;
        inst.k = k;
        inst.d = 1;
        for (int i = 0; i < k; ++i) {
            auto x = AlgebraicNumber::from_rational(Rational(eta[static_cast<std::size_t>(i)]));
            inst.modified_heights.push_back(modified_height(x, 1, hp));
        }
        inst.coefficients = b;
        RInterval bound = lambda_lower_bound(inst, hp);
        // high-precision direct evaluation of log|Lambda|
        RInterval lambda = RInterval::zero(hp);
        for (int i = 0; i < k; ++i) {
            RInterval lg = RInterval::log_integer(Integer(eta[static_cast<std::size_t>(i)]), hp);
            lambda = lambda + lg.mul_rational(Rational(b[static_cast<std::size_t>(i)]));
        }
        RInterval loglam = lambda.abs().log();
        CHECK(bound.certainly_lt(loglam));
        ++tested;
    }
}

TEST_CASE("|e^L - 1| stays within a factor two of |L| for |L| <= 1/2") {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        Rational l(rng.range(-500, 500), 1000);
        if (l == 0) continue;
        RInterval L = RInterval::from_rational(l, 192);
        RInterval phi = (L.exp() - RInterval::exact(1, 192)).abs();
        RInterval half = L.abs().mul_rational(Rational(1, 2));
        RInterval twice = L.abs().mul_rational(Rational(2));
        CHECK(half.certainly_lt(phi));
        CHECK(phi.certainly_lt(twice));
    }
}
