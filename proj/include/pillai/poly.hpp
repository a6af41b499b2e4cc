#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pillai/interval.hpp"
#include "pillai/numeric.hpp"

namespace pillai {

// Dense univariate polynomials, coefficient index == exponent.
// IntPoly is the exact workhorse (characteristic/minimal polynomials);
// RatPoly backs field arithmetic and series manipulation.

class RatPoly;

class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }
    static IntPoly constant(Integer v) { return IntPoly({std::move(v)}); }
    static IntPoly x_power(std::size_t n);  // X^n

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Integer& lc() const;
    const Integer& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<Integer>& coeffs() const { return c_; }

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator-() const;
    bool operator==(const IntPoly& o) const { return c_ == o.c_; }

    IntPoly derivative() const;
    Integer content() const;          // gcd of coefficients (>= 0; 0 for zero poly)
    IntPoly primitive_part() const;   // content removed, leading coefficient > 0
    IntPoly negate_variable() const;  // p(-X)

    Integer eval(const Integer& x) const;
    Rational eval(const Rational& x) const;
    RInterval eval(const RInterval& x) const;
    CInterval eval(const CInterval& x, mpfr_prec_t prec) const;

    // Exact division; throws if remainder is nonzero.
    IntPoly divide_exact(const IntPoly& d) const;
    bool divides(const IntPoly& d) const;  // d | *this ?

    RatPoly to_rat() const;
    std::string to_string(const std::string& var = "X") const;

private:
    void trim();
    std::vector<Integer> c_;
};

class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static RatPoly constant(Rational v) { return RatPoly({std::move(v)}); }
    static RatPoly x_power(std::size_t n);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& lc() const;
    const Rational& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<Rational>& coeffs() const { return c_; }

    RatPoly operator+(const RatPoly& o) const;
    RatPoly operator-(const RatPoly& o) const;
    RatPoly operator*(const RatPoly& o) const;
    RatPoly operator-() const;
    RatPoly scale(const Rational& s) const;
    bool operator==(const RatPoly& o) const { return c_ == o.c_; }

    RatPoly monic() const;
    RatPoly derivative() const;
    Rational eval(const Rational& x) const;
    RInterval eval(const RInterval& x) const;
    CInterval eval(const CInterval& x, mpfr_prec_t prec) const;

    // Euclidean division over Q: *this = q*d + r with deg r < deg d.
    std::pair<RatPoly, RatPoly> divmod(const RatPoly& d) const;
    RatPoly mod(const RatPoly& d) const { return divmod(d).second; }

    // Clears denominators and content: primitive integer polynomial, lc > 0.
    IntPoly primitive_integer() const;

    std::string to_string(const std::string& var = "X") const;

private:
    void trim();
    std::vector<Rational> c_;
};

// gcd over Q returned as primitive integer polynomial (lc > 0).
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

// Yun square-free decomposition of a primitive polynomial:
// result[i] = (g_i, m_i) with p = lc * prod g_i^{m_i}, g_i square-free,
// pairwise coprime, multiplicities strictly increasing.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p);

// Square-free part: product of distinct irreducible factors.
IntPoly squarefree_part(const IntPoly& p);

// Resultant over Q via the polynomial remainder sequence.
Rational resultant(const RatPoly& a, const RatPoly& b);

// t^e mod m over Q (binary powering); m non-constant.
RatPoly powmod(const RatPoly& t, const Integer& e, const RatPoly& m);

// Lagrange interpolation through (x_i, y_i) with distinct integer nodes.
RatPoly interpolate(const std::vector<Integer>& xs, const std::vector<Rational>& ys);

// Achievable degrees of monic integer factors of f, from distinct-degree
// factorization patterns modulo several primes (an over-approximation that
// always contains the true factor degrees). f must be square-free over Q.
std::set<int> factor_degree_candidates(const IntPoly& f);

// N-th cyclotomic polynomial (exact; memoized).
IntPoly cyclotomic_polynomial(unsigned long n);

}  // namespace pillai
