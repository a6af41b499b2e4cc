#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "pillai/poly.hpp"
#include "pillai/rootfind.hpp"

namespace pillai {

// ------------------------------------------------------------ number field

// Q[t]/(p) with p irreducible over Q. Elements are residue-class polynomials
// with rational coefficients; all arithmetic is exact.
class NumberField {
public:
    explicit NumberField(IntPoly minpoly);

    int degree() const { return modulus_.degree(); }
    const IntPoly& minpoly() const { return minpoly_; }
    const RatPoly& modulus() const { return modulus_; }  // monic

private:
    IntPoly minpoly_;
    RatPoly modulus_;
};

class NFElem {
public:
    NFElem() = default;
    NFElem(std::shared_ptr<const NumberField> field, RatPoly rep);
    static NFElem from_rational(std::shared_ptr<const NumberField> field, const Rational& q);
    static NFElem generator(std::shared_ptr<const NumberField> field);  // class of t

    const RatPoly& rep() const { return rep_; }
    const std::shared_ptr<const NumberField>& field() const { return field_; }

    bool is_zero() const { return rep_.is_zero(); }
    bool is_rational() const { return rep_.degree() <= 0; }
    Rational rational_value() const;

    NFElem operator+(const NFElem& o) const;
    NFElem operator-(const NFElem& o) const;
    NFElem operator*(const NFElem& o) const;
    NFElem operator-() const;
    NFElem inverse() const;  // throws on zero
    NFElem operator/(const NFElem& o) const { return *this * o.inverse(); }
    bool operator==(const NFElem& o) const { return rep_ == o.rep_; }

    NFElem scale(const Rational& q) const;

    // Enclosure of the element under the embedding sending the generator to
    // the given box.
    CInterval eval(const CInterval& generator_box, mpfr_prec_t prec) const;
    RInterval eval_real(const RInterval& generator_box) const;

private:
    std::shared_ptr<const NumberField> field_;
    RatPoly rep_;
};

// Polynomials over a number field (used for the recurrence coefficient
// polynomials a_i(X) and for gcd computations inside field towers).
using NFPoly = std::vector<NFElem>;  // index == exponent

NFPoly nfpoly_trim(NFPoly p);
int nfpoly_degree(const NFPoly& p);
NFPoly nfpoly_mul(const NFPoly& a, const NFPoly& b);
NFPoly nfpoly_add(const NFPoly& a, const NFPoly& b);
NFPoly nfpoly_sub(const NFPoly& a, const NFPoly& b);
std::pair<NFPoly, NFPoly> nfpoly_divmod(const NFPoly& a, const NFPoly& b);
NFPoly nfpoly_gcd_monic(NFPoly a, NFPoly b);
NFElem nfpoly_eval(const NFPoly& p, const NFElem& x);

// -------------------------------------------------------- algebraic number

// An algebraic number: certified-irreducible primitive minimal polynomial
// plus an isolating disk selecting one of its roots. Conjugates (all roots
// of the minimal polynomial) are isolated lazily and cached; refinement is
// internally synchronized, so const AlgebraicNumbers are safe to share.
class AlgebraicNumber {
public:
    // `minpoly` must already be irreducible (construction via helpers below
    // certifies this); `root` must be one of its certified roots.
    AlgebraicNumber(IntPoly minpoly, CertifiedRoot root);

    static AlgebraicNumber from_rational(const Rational& q);
    static AlgebraicNumber from_integer(long v) { return from_rational(Rational(v)); }

    // Certify irreducibility of `poly` (errors if reducible) and isolate the
    // unique root inside `region`; throws if the region does not isolate.
    static AlgebraicNumber from_poly_and_region(const IntPoly& poly, const Rational& re_lo,
                                                const Rational& re_hi, const Rational& im_lo,
                                                const Rational& im_hi,
                                                const PrecisionPolicy& policy = {});

    const IntPoly& minpoly() const { return minpoly_; }
    int degree() const { return minpoly_.degree(); }
    bool is_rational() const { return degree() == 1; }
    Rational rational_value() const;
    bool is_real() const { return root_.real; }

    // Current certified enclosure; `refined(r)` shrinks the stored disk.
    const CertifiedRoot& enclosure() const;
    CertifiedRoot refined(const Rational& target_radius) const;
    CInterval box(mpfr_prec_t prec) const { return enclosure().box(prec); }
    // Enclosure refined so that its radius is at most 2^-bits.
    CertifiedRoot refined_bits(long bits) const;

    // All roots of the minimal polynomial (conjugates), certified; refined
    // jointly by `level` halvings of the initial radii.
    const std::vector<CertifiedRoot>& conjugates(int level = 0) const;

    // Certified sign for real numbers (refines until decidable).
    int sign() const;
    AlgebraicNumber negated() const;
    AlgebraicNumber abs_value() const;  // real only

private:
    IntPoly minpoly_;
    mutable CertifiedRoot root_;
    struct Cache;
    std::shared_ptr<Cache> cache_;
    PrecisionPolicy policy_;
};

bool algebraic_equal(const AlgebraicNumber& a, const AlgebraicNumber& b);

// ------------------------------------------------------------- transforms
// Integer polynomials whose roots are images of the input roots. Outputs are
// primitive and generally not square-free; they annihilate the transformed
// numbers, which is all the height and equality machinery needs.

// roots { r(theta) : p(theta)=0 }, counted with multiplicity d = deg p.
IntPoly transform_expression(const IntPoly& p, const RatPoly& r);
// roots { theta + lambda*phi } over all root pairs of (p, q).
IntPoly transform_sum(const IntPoly& p, const IntPoly& q, const Rational& lambda);
// roots { theta * phi }; requires p(0) != 0 or q(0) != 0 handled by caller.
IntPoly transform_product(const IntPoly& p, const IntPoly& q);
// roots { theta^e }, e >= 1.
IntPoly transform_power(const IntPoly& p, const Integer& e);

// --------------------------------------------------- roots of annihilators

// A real or complex algebraic value given by an annihilating integer
// polynomial together with a refinable certified enclosure. `enclose(level)`
// must return nested boxes whose widths tend to zero.
struct AlgExpr {
    IntPoly annihilator;
    std::function<CInterval(int level)> enclose;
};

AlgExpr alg_expr_of(const AlgebraicNumber& x);
AlgExpr alg_expr_power(const AlgebraicNumber& x, const Integer& e);
AlgExpr alg_expr_rational(const Rational& q);
// |x|^2 = x * conj(x) for a (possibly complex) algebraic number.
AlgExpr alg_expr_norm2(const AlgebraicNumber& x);
AlgExpr alg_expr_norm2_root(const IntPoly& sf_poly, const CertifiedRoot& root);

// Exact equality of two algebraic values (decides by locating both inside the
// certified root system of gcd/cofactor polynomials and refining).
bool alg_expr_equal(const AlgExpr& u, const AlgExpr& v, const PrecisionPolicy& policy = {});

// ------------------------------------------------------ minimal polynomial

// Minimal polynomial of the root of `squarefree` isolated by `root`
// (subset reconstruction over the certified conjugate blocks, pruned by
// modular factor-degree patterns; result verified by exact division).
IntPoly minimal_polynomial_of_root(const IntPoly& squarefree, const CertifiedRoot& root,
                                   const PrecisionPolicy& policy = {});

// Full factorization into irreducible factors with multiplicities.
std::vector<std::pair<IntPoly, int>> factor_integer_poly(const IntPoly& poly,
                                                         const PrecisionPolicy& policy = {});

// Convenience: the algebraic number "root of `poly` isolated by `root`",
// with the minimal polynomial extracted and certified.
AlgebraicNumber algebraic_from_root(const IntPoly& poly_squarefree, const CertifiedRoot& root,
                                    const PrecisionPolicy& policy = {});

}  // namespace pillai
