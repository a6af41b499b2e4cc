#pragma once

#include <vector>

#include "pillai/interval.hpp"
#include "pillai/poly.hpp"

namespace pillai {

// Precision escalation policy shared by every certified computation.
struct PrecisionPolicy {
    mpfr_prec_t start_bits = 128;
    mpfr_prec_t max_bits = 1 << 14;
    mpfr_prec_t next(mpfr_prec_t cur) const { return cur * 2; }
};

// One certified root of a square-free integer polynomial: the closed disk
// |z - center| <= radius contains exactly one root of the polynomial, and
// no other certified disk of the same isolation run intersects it.
// Real roots carry center_im == 0 (the disk is conjugation-symmetric, which
// forces the isolated root to be real); non-real roots satisfy
// |center_im| > radius, so the disk misses the real axis entirely.
struct CertifiedRoot {
    Rational center_re;
    Rational center_im;
    Rational radius;
    bool real = false;
    int multiplicity = 1;  // multiplicity in the original (non-square-free) input

    CInterval box(mpfr_prec_t prec) const;
    RInterval real_interval(mpfr_prec_t prec) const;  // real roots only
    RInterval modulus(mpfr_prec_t prec) const;        // enclosure of |root|
    CertifiedRoot conjugate() const;
};

// Isolates all complex roots of a square-free primitive polynomial.
// Output is ordered deterministically (by center: real part, then imaginary),
// conjugate-closed, with pairwise disjoint certified disks.
std::vector<CertifiedRoot> isolate_roots(const IntPoly& squarefree_poly,
                                         const PrecisionPolicy& policy = {});

// Square-free decomposition first, then per-factor isolation plus a global
// pairwise-disjointness certification; multiplicities filled in.
std::vector<CertifiedRoot> isolate_all_roots(const IntPoly& poly,
                                             const PrecisionPolicy& policy = {});

// Shrinks the isolating disk of `root` (for `poly`, square-free or not as
// long as the root is simple in `sf`, the square-free part actually used)
// until radius <= target. The refined disk is certified to lie inside the
// original one, so it isolates the same root.
CertifiedRoot refine_root(const IntPoly& squarefree_poly, const CertifiedRoot& root,
                          const Rational& target_radius, const PrecisionPolicy& policy = {});

}  // namespace pillai
