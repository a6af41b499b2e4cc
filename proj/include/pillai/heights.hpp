#pragma once

#include <string>
#include <vector>

#include "pillai/algebraic.hpp"
#include "pillai/errors.hpp"

namespace pillai {

// Thrown by modified_height when the input is not certifiably positive.
class NonPositiveValue : public Error {
public:
    explicit NonPositiveValue(const std::string& msg) : Error(msg) {}
};

// Absolute logarithmic Weil height from the minimal polynomial:
// (1/deg)(log|lead| + sum log max(|conjugate|, 1)).
// `level` refines the conjugate enclosures; enclosures are nested in level.
RInterval weil_height(const AlgebraicNumber& x, mpfr_prec_t prec = 128, int level = 0);

// Same formula applied to a primitive annihilator known to be a power of the
// minimal polynomial (characteristic polynomials of field elements qualify).
RInterval h0_from_power_annihilator(const IntPoly& annihilator, mpfr_prec_t prec = 128,
                                    int level = 0, const PrecisionPolicy& policy = {});

// Modified height (1/d) max{d*h0(x), |log x|, 1} for a real positive x.
RInterval modified_height(const AlgebraicNumber& x, int field_degree, mpfr_prec_t prec = 128,
                          int level = 0);

// Height bound for an integer linear form: log max{|b_1|,...,|b_k|, e}.
// Exactly 1 when max|b_i| <= 2.
RInterval linear_form_height(const std::vector<Integer>& b, mpfr_prec_t prec = 128);

// ------------------------------------------------------------ independence

struct IndependenceResult {
    enum class Verdict { Pass, Fail, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    Integer p = 0, q = 0;  // witness exponents with x^p = y^q when Fail
    unsigned long ceiling = 0;
    std::string note;
    bool passed() const { return verdict == Verdict::Pass; }
};

// Multiplicative independence test for real algebraic numbers of modulus > 1,
// by continued-fraction scan of the height ratio with exact verification of
// every candidate exponent pair. A Pass is certified up to the convergent
// denominator ceiling.
IndependenceResult mult_independent(const AlgebraicNumber& x, const AlgebraicNumber& y,
                                    unsigned long ceiling = 1000000,
                                    const PrecisionPolicy& policy = {});

// ------------------------------------------------------------- place system

// K = Q(x, y) presented by a primitive element gamma = x + lambda*y.
struct FieldJoin {
    IntPoly defining;  // minimal polynomial of gamma (irreducible)
    int d = 1;
    Rational lambda = 0;
    RatPoly x_rep, y_rep;  // x and y as polynomials in gamma
    std::vector<CertifiedRoot> embeddings;  // all roots of `defining`
};

FieldJoin compose_field(const AlgebraicNumber& x, const AlgebraicNumber& y,
                        int degree_ceiling = 24, const PrecisionPolicy& policy = {});

// c * log(base) represented exactly when possible, always with an enclosure.
struct LogValue {
    bool exact = false;
    Rational coeff = 0;  // exact case: value = coeff * log(base)
    Integer base = 0;    // base >= 2 in the exact case; coeff == 0 => value 0
    RInterval value;

    static LogValue zero(mpfr_prec_t prec);
    static LogValue exact_log(const Rational& coeff, const Integer& base, mpfr_prec_t prec);
    static LogValue inexact(RInterval v);
    std::string describe() const;
};

struct Place {
    enum class Kind { Archimedean, Finite };
    Kind kind = Kind::Archimedean;
    int embedding_index = -1;  // archimedean: index into FieldJoin::embeddings
    int local_degree = 1;      // 1 real embedding, 2 conjugate pair
    Integer prime = 0;         // finite
    std::string tag;           // human-readable ("inf#0", "2-adic", ...)
};

struct PlaceSystem {
    IntPoly field_defining;
    int d = 1;
    std::vector<Place> places;  // the set S
    std::vector<LogValue> row_x, row_y;  // log-valuation rows over S
    std::size_t v1 = 0, v2 = 0;          // selected pair
    RInterval det;                        // det M for the selected pair
    Rational abs_det_lower = 0;           // certified |det M| lower bound
    LogValue c1_tilde, c2_tilde, c0;
    Rational c0_lower = 0;  // rational positive lower bound for C0
};

// Builds the place system for multiplicatively independent x, y and derives
// C0 with h0(x^n / y^m) >= C0 * max(|n|, |m|). Finite places are attached
// only when both inputs are rational; otherwise the system is archimedean.
PlaceSystem compute_C0(const AlgebraicNumber& x, const AlgebraicNumber& y, const FieldJoin& K,
                       const PrecisionPolicy& policy = {});

// Explicit constant C with h0(p(n)/q(m)) <= C log max(n, m) for all integer
// n, m >= 0 with max(n, m) >= 2, from per-coefficient height bounds.
Rational poly_ratio_height_bound(const std::vector<RInterval>& h0_coeffs_p, int deg_p,
                                 const std::vector<RInterval>& h0_coeffs_q, int deg_q);

// Trial-division factorization (with a primality check for the cofactor).
std::vector<std::pair<Integer, int>> factor_integer(const Integer& n);

}  // namespace pillai
