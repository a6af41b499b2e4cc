#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pillai/algebraic.hpp"
#include "pillai/heights.hpp"

namespace pillai {

// ------------------------------------------------------------------- spec

struct RecurrenceSpec {
    std::vector<Integer> coefficients;  // c_1..c_k
    std::vector<Integer> initial;       // U_0..U_{k-1}
    std::string label;

    int order() const { return static_cast<int>(coefficients.size()); }
    void validate(int order_ceiling = 8) const;
};

// U_n computed exactly by iteration.
Integer term(const RecurrenceSpec& spec, long n);
// U_0..U_hi
std::vector<Integer> terms_upto(const RecurrenceSpec& spec, long hi);

// X^k - c_1 X^{k-1} - ... - c_k
IntPoly char_poly(const RecurrenceSpec& spec);

// ------------------------------------------------------------ root system

class NoDominantRoot : public HypothesisFailure {
public:
    enum class Reason { EqualMaximalModulus, NotCertified };
    NoDominantRoot(Reason r, const std::string& msg)
        : HypothesisFailure("dominant-root", msg), reason(r) {}
    Reason reason;
};

struct DistinctRoot {
    CertifiedRoot enclosure;
    int multiplicity = 1;   // sigma_i
    int factor_index = 0;   // index into RootSystem::factors
};

struct RootSystem {
    IntPoly poly;
    std::vector<std::pair<IntPoly, int>> factors;  // irreducible factor, multiplicity
    std::vector<DistinctRoot> roots;               // all distinct roots
    int t() const { return static_cast<int>(roots.size()); }
    bool dominant = false;
    int dominant_index = -1;
    bool dominant_modulus_is_one = false;  // dominant root is exactly +-1
};

// Isolates the distinct roots with multiplicities, certifies the dominant
// ordering (or throws NoDominantRoot) and shrinks enclosures to the target
// width. Also certifies the dominant root real, flagging |alpha| = 1 exactly.
RootSystem analyze_roots(const IntPoly& poly, const Rational& target_width,
                         const PrecisionPolicy& policy = {});

struct NondegeneracyVerdict {
    bool pass = true;
    std::size_t witness_i = 0, witness_j = 0;  // root indices when failing
    unsigned long order = 0;                   // (root_i/root_j)^order = 1
    std::string note;
};

// Pass iff no ratio of distinct characteristic roots is a root of unity.
NondegeneracyVerdict nondegeneracy_check(const RootSystem& rs,
                                         const PrecisionPolicy& policy = {});

// ----------------------------------------------------------- Binet system

struct BinetFactor {
    IntPoly minpoly;
    int multiplicity = 1;  // sigma for every root of this factor
    std::shared_ptr<const NumberField> field;
    std::vector<NFElem> coeffs;  // coefficient polynomial in X, size == multiplicity
    int true_degree = -1;        // exact degree (-1 when identically zero)
};

// -------------------------------------------------------------- analysis

struct AnalyzeOptions {
    PrecisionPolicy precision;
    int order_ceiling = 8;
    long growth_enum_ceiling = 1000;  // exact sandwich verification range
    long scan_cap = 200000;           // threshold searches
    Rational root_target_width = Rational(1, Integer(1) << 64);
};

// Everything the bound derivation needs about one sequence.
class SequenceAnalysis {
public:
    RecurrenceSpec spec;
    IntPoly charpoly;
    RootSystem roots;
    std::vector<BinetFactor> binet;  // parallel to roots.factors
    NondegeneracyVerdict nondeg;

    // dominant data
    int dominant_root = -1;    // index into roots.roots
    int dominant_factor = -1;  // index into roots.factors
    std::shared_ptr<AlgebraicNumber> alpha;  // the dominant root, real, |alpha| > 1
    Rational alpha_abs_lower, alpha_abs_upper;  // |alpha| in [lower, upper], lower > 1

    int sigma = 0;           // exact degree of the dominant coefficient polynomial
    int A = 0;               // max exact degree among the other coefficient polynomials
    Rational a_second = 0;   // a'': envelope coefficient
    Rational alpha2_upper = 0;  // upper bound for the second-largest modulus
    Rational alpha_prime = 0;   // alpha' (rational, alpha'^2 >= |alpha|*max(alpha2,1))
    Rational a_prime = 0;       // a'

    Rational C1 = 0, C2 = 0;  // growth sandwich constants
    long N2 = 1;
    Rational C5 = 0, C6 = 0;
    long N0 = 0;  // monotonicity threshold
    long N1 = 1;  // coefficient threshold

    // |a_j| bounds for the dominant coefficient polynomial (index j <= sigma)
    std::vector<Rational> acoef_abs_upper;
    Rational alead_abs_lower = 0;

    // enclosure of the dominant coefficient polynomial at integer n
    RInterval dominant_coeff_abs(long n, mpfr_prec_t prec = 192, int level = 0) const;
    // enclosure of a(n) * alpha^n (both real)
    RInterval dominant_term(long n, mpfr_prec_t prec = 192, int level = 0) const;
    // full Binet sum over all roots at integer n
    CInterval binet_sum(long n, mpfr_prec_t prec = 192, int level = 0) const;

    // h0 enclosures of the nonzero dominant coefficients (for height bounds)
    std::vector<RInterval> dominant_coeff_heights(mpfr_prec_t prec = 192) const;

    // exact comparison |a(n)| vs |a(m)|: -1, 0, +1
    int cmp_coeff_abs(long n, long m) const;

    // certified root enclosure for root index i at the given refinement level
    CertifiedRoot root_box(std::size_t i, int level) const;

private:
    friend SequenceAnalysis analyze_sequence(const RecurrenceSpec&, const AnalyzeOptions&);
    struct Refiner;
    std::shared_ptr<Refiner> refiner_;
};

// Full pipeline: roots -> hypotheses -> Binet -> envelope -> growth ->
// thresholds. Throws HypothesisFailure (with a stage tag), NoDominantRoot,
// or PrecisionExhausted.
SequenceAnalysis analyze_sequence(const RecurrenceSpec& spec, const AnalyzeOptions& opts = {});

// Exposed pieces for tests and reuse by the bound chain.
long coefficient_threshold_for(const std::vector<NFElem>& coeffs, const CertifiedRoot& root_box,
                               const IntPoly& minpoly, long scan_cap = 200000);

}  // namespace pillai
