#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pillai/algebraic.hpp"
#include "pillai/errors.hpp"

using namespace pillai;

namespace {
IntPoly ip(std::initializer_list<long> cs) {
    std::vector<Integer> v;
    for (long c : cs) v.emplace_back(c);
    return IntPoly(std::move(v));
}
const IntPoly kFib = ip({-1, -1, 1});
const IntPoly kTrib = ip({-1, -1, -1, 1});

AlgebraicNumber golden() { return algebraic_from_root(kFib, isolate_roots(kFib)[1]); }
}  // namespace

TEST_CASE("number field arithmetic in Q(phi)") {
    auto K = std::make_shared<NumberField>(kFib);
    NFElem phi = NFElem::generator(K);
    // phi^2 = phi + 1
    CHECK(phi * phi == phi + NFElem::from_rational(K, 1));
    // 1/phi = phi - 1
    CHECK(phi.inverse() == phi - NFElem::from_rational(K, 1));
    CHECK((phi * phi.inverse()) == NFElem::from_rational(K, 1));
    CHECK((phi - phi).is_zero());
    // interval evaluation at the isolated root
    auto roots = isolate_roots(kFib);
    RInterval v = (phi * phi).eval_real(roots[1].real_interval(128));
    CHECK(v.certainly_gt(Rational(26, 10)));
    CHECK(v.certainly_lt(Rational(27, 10)));
}

TEST_CASE("NF polynomial gcd") {
    auto K = std::make_shared<NumberField>(kFib);
    auto q = [&](long v) { return NFElem::from_rational(K, Rational(v)); };
    NFElem phi = NFElem::generator(K);
    // (t - phi)(t - 2) and (t - phi)(t - 3): gcd = t - phi
    NFPoly f = nfpoly_mul({-phi, q(1)}, {q(-2), q(1)});
    NFPoly g = nfpoly_mul({-phi, q(1)}, {q(-3), q(1)});
    NFPoly d = nfpoly_gcd_monic(f, g);
    REQUIRE(nfpoly_degree(d) == 1);
    CHECK(d[0] == -phi);
}

TEST_CASE("minimal polynomial extraction") {
    IntPoly prod = kFib * kTrib;
    auto roots = isolate_all_roots(prod);
    int found_fib = 0, found_trib = 0;
    for (const auto& r : roots) {
        IntPoly mp = minimal_polynomial_of_root(squarefree_part(prod), r);
        if (mp == kFib) ++found_fib;
        if (mp == kTrib) ++found_trib;
    }
    CHECK(found_fib == 2);
    CHECK(found_trib == 3);
}

TEST_CASE("full factorization") {
    IntPoly p = kFib * kFib * kTrib * ip({-7, 1});
    auto factors = factor_integer_poly(p);
    int fib_mult = 0, trib_mult = 0, lin = 0;
    for (const auto& [g, m] : factors) {
        if (g == kFib) fib_mult = m;
        if (g == kTrib) trib_mult = m;
        if (g == ip({-7, 1})) lin = m;
    }
    CHECK(fib_mult == 2);
    CHECK(trib_mult == 1);
    CHECK(lin == 1);
}

TEST_CASE("exact equality of algebraic expressions") {
    auto two = AlgebraicNumber::from_rational(Rational(2));
    CHECK(alg_expr_equal(alg_expr_power(two, Integer(3)), alg_expr_rational(Rational(8))));
    CHECK(!alg_expr_equal(alg_expr_power(two, Integer(3)), alg_expr_rational(Rational(9))));

    IntPoly x2m2 = ip({-2, 0, 1});
    auto sqrt2 = algebraic_from_root(x2m2, isolate_roots(x2m2)[1]);
    CHECK(alg_expr_equal(alg_expr_power(sqrt2, Integer(2)), alg_expr_rational(Rational(2))));
    CHECK(alg_expr_equal(alg_expr_power(sqrt2, Integer(6)), alg_expr_rational(Rational(8))));
    CHECK(!alg_expr_equal(alg_expr_power(sqrt2, Integer(5)), alg_expr_rational(Rational(4))));

    // conjugates are distinct even when numerically close under powering
    auto phi = golden();
    auto phibar = algebraic_from_root(kFib, isolate_roots(kFib)[0]);
    CHECK(!algebraic_equal(phi, phibar));
    CHECK(algebraic_equal(phi, phi));
    CHECK(!alg_expr_equal(alg_expr_power(phi, Integer(2)), alg_expr_power(phibar, Integer(2))));
}

TEST_CASE("norm-square expressions") {
    auto roots = isolate_roots(kTrib);
    // |c|^2 of the complex pair equals 1/psi (product of all roots is 1)
    const CertifiedRoot* complex_root = nullptr;
    for (const auto& r : roots)
        if (!r.real && r.center_im > 0) complex_root = &r;
    REQUIRE(complex_root != nullptr);
    AlgExpr n2 = alg_expr_norm2_root(kTrib, *complex_root);
    CHECK(!alg_expr_equal(n2, alg_expr_rational(Rational(1))));
    // |2|^2 = 4 and |-2|^2 = 4: equal moduli detected exactly
    IntPoly x2m4 = ip({-4, 0, 1});
    auto r4 = isolate_roots(x2m4);
    CHECK(alg_expr_equal(alg_expr_norm2_root(x2m4, r4[0]), alg_expr_norm2_root(x2m4, r4[1])));
}

TEST_CASE("transforms annihilate the right values") {
    // phi^2 has minimal polynomial X^2 - 3X + 1
    CHECK(transform_power(kFib, Integer(2)) == ip({1, -3, 1}));
    // phi + phibar = 1 and phi*phibar = -1 appear among transform roots
    IntPoly s = transform_sum(kFib, kFib, Rational(1));
    CHECK(s.eval(Integer(1)) == 0);  // phi + phibar = 1
    IntPoly pr = transform_product(kFib, kFib);
    CHECK(pr.eval(Integer(-1)) == 0);  // phi * phibar = -1
}

TEST_CASE("negation and sign") {
    auto phi = golden();
    CHECK(phi.sign() == 1);
    auto neg = phi.negated();
    CHECK(neg.sign() == -1);
    CHECK(neg.minpoly() == ip({-1, 1, 1}));
    CHECK(neg.abs_value().sign() == 1);
    CHECK(algebraic_equal(neg.abs_value(), phi));
}

TEST_CASE("construction from a region certifies isolation") {
    auto x = AlgebraicNumber::from_poly_and_region(kFib, Rational(1), Rational(2), Rational(-1),
                                                   Rational(1));
    CHECK(x.degree() == 2);
    CHECK(x.is_real());
    CHECK(x.sign() == 1);
    // region holding both roots is rejected
    CHECK_THROWS_AS(AlgebraicNumber::from_poly_and_region(kFib, Rational(-10), Rational(10),
                                                          Rational(-1), Rational(1)),
                    ParseError);
}
