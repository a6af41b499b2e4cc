#include "pillai/rootfind.hpp"

#include <algorithm>
#include <cmath>

#include "pillai/errors.hpp"

namespace pillai {

namespace {

// Plain complex number over mpfr, used only inside the Aberth iteration.
// Rounding here is to-nearest: the iteration just produces candidates, all
// guarantees come from the interval certification afterwards.
struct CNum {
    mpfr_t re, im;
    explicit CNum(mpfr_prec_t p) {
        mpfr_init2(re, p);
        mpfr_init2(im, p);
        mpfr_set_zero(re, 1);
        mpfr_set_zero(im, 1);
    }
    CNum(const CNum& o) {
        mpfr_init2(re, mpfr_get_prec(o.re));
        mpfr_init2(im, mpfr_get_prec(o.im));
        mpfr_set(re, o.re, MPFR_RNDN);
        mpfr_set(im, o.im, MPFR_RNDN);
    }
    CNum& operator=(const CNum& o) {
        if (this != &o) {
            mpfr_set_prec(re, mpfr_get_prec(o.re));
            mpfr_set_prec(im, mpfr_get_prec(o.im));
            mpfr_set(re, o.re, MPFR_RNDN);
            mpfr_set(im, o.im, MPFR_RNDN);
        }
        return *this;
    }
    ~CNum() {
        mpfr_clear(re);
        mpfr_clear(im);
    }
};

struct CScratch {
    mpfr_t t1, t2, t3, t4;
    explicit CScratch(mpfr_prec_t p) {
        mpfr_inits2(p, t1, t2, t3, t4, static_cast<mpfr_ptr>(nullptr));
    }
    ~CScratch() { mpfr_clears(t1, t2, t3, t4, static_cast<mpfr_ptr>(nullptr)); }
};

void cadd(CNum& r, const CNum& a, const CNum& b) {
    mpfr_add(r.re, a.re, b.re, MPFR_RNDN);
    mpfr_add(r.im, a.im, b.im, MPFR_RNDN);
}

void csub(CNum& r, const CNum& a, const CNum& b) {
    mpfr_sub(r.re, a.re, b.re, MPFR_RNDN);
    mpfr_sub(r.im, a.im, b.im, MPFR_RNDN);
}

void cmul(CNum& r, const CNum& a, const CNum& b, CScratch& s) {
    mpfr_mul(s.t1, a.re, b.re, MPFR_RNDN);
    mpfr_mul(s.t2, a.im, b.im, MPFR_RNDN);
    mpfr_mul(s.t3, a.re, b.im, MPFR_RNDN);
    mpfr_mul(s.t4, a.im, b.re, MPFR_RNDN);
    mpfr_sub(r.re, s.t1, s.t2, MPFR_RNDN);
    mpfr_add(r.im, s.t3, s.t4, MPFR_RNDN);
}

void cdiv(CNum& r, const CNum& a, const CNum& b, CScratch& s) {
    // (a * conj(b)) / |b|^2
    mpfr_mul(s.t1, b.re, b.re, MPFR_RNDN);
    mpfr_mul(s.t2, b.im, b.im, MPFR_RNDN);
    mpfr_add(s.t1, s.t1, s.t2, MPFR_RNDN);  // |b|^2
    mpfr_mul(s.t2, a.re, b.re, MPFR_RNDN);
    mpfr_mul(s.t3, a.im, b.im, MPFR_RNDN);
    mpfr_add(s.t2, s.t2, s.t3, MPFR_RNDN);
    mpfr_mul(s.t3, a.im, b.re, MPFR_RNDN);
    mpfr_mul(s.t4, a.re, b.im, MPFR_RNDN);
    mpfr_sub(s.t3, s.t3, s.t4, MPFR_RNDN);
    mpfr_div(r.re, s.t2, s.t1, MPFR_RNDN);
    mpfr_div(r.im, s.t3, s.t1, MPFR_RNDN);
}

void cabs(mpfr_t& out, const CNum& a, CScratch& s) {
    mpfr_hypot(out, a.re, a.im, MPFR_RNDN);
}

// Horner evaluation of p and p' at z.
void eval_with_derivative(const IntPoly& p, const CNum& z, CNum& pv, CNum& dv, CScratch& s) {
    mpfr_prec_t prec = mpfr_get_prec(z.re);
    CNum acc(prec), dacc(prec), tmp(prec);
    for (int i = p.degree(); i >= 0; --i) {
        // dacc = dacc*z + acc ; acc = acc*z + c_i
        cmul(tmp, dacc, z, s);
        cadd(dacc, tmp, acc);
        cmul(tmp, acc, z, s);
        mpfr_add_z(tmp.re, tmp.re, p[static_cast<std::size_t>(i)].get_mpz_t(), MPFR_RNDN);
        acc = tmp;
    }
    pv = acc;
    dv = dacc;
}

// Aberth-Ehrlich iteration. Returns approximations (one per root) at the
// working precision; purely numeric.
std::vector<CNum> aberth(const IntPoly& p, mpfr_prec_t prec, int max_iters) {
    int d = p.degree();
    CScratch s(prec);
    std::vector<CNum> z;
    z.reserve(static_cast<std::size_t>(d));
    // Cauchy-style inclusion radius: 1 + max |a_i / a_d|
    double maxratio = 0.0;
    for (int i = 0; i < d; ++i) {
        mpq_class q(p[static_cast<std::size_t>(i)], p.lc());
        double v = std::fabs(q.get_d());
        maxratio = std::max(maxratio, v);
    }
    double radius = 1.0 + maxratio;
    for (int k = 0; k < d; ++k) {
        CNum c(prec);
        double ang = 2.0 * 3.14159265358979323846 * (k + 0.25) / d + 0.39996;
        mpfr_set_d(c.re, radius * 0.7 * std::cos(ang), MPFR_RNDN);
        mpfr_set_d(c.im, radius * 0.7 * std::sin(ang), MPFR_RNDN);
        z.push_back(c);
    }
    mpfr_t corr_norm, tol, tmp;
    mpfr_inits2(prec, corr_norm, tol, tmp, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(tol, 1, MPFR_RNDN);
    mpfr_div_2ui(tol, tol, static_cast<unsigned long>(prec * 3 / 4), MPFR_RNDN);

    CNum pv(prec), dv(prec), ratio(prec), sum(prec), diff(prec), inv(prec), w(prec), denom(prec);
    for (int iter = 0; iter < max_iters; ++iter) {
        mpfr_set_zero(corr_norm, 1);
        for (int k = 0; k < d; ++k) {
            eval_with_derivative(p, z[static_cast<std::size_t>(k)], pv, dv, s);
            if (mpfr_zero_p(dv.re) && mpfr_zero_p(dv.im)) {
                // nudge away from a critical point
                mpfr_add_d(z[static_cast<std::size_t>(k)].re, z[static_cast<std::size_t>(k)].re,
                           1e-3, MPFR_RNDN);
                continue;
            }
            cdiv(ratio, pv, dv, s);
            mpfr_set_zero(sum.re, 1);
            mpfr_set_zero(sum.im, 1);
            for (int j = 0; j < d; ++j) {
                if (j == k) continue;
                csub(diff, z[static_cast<std::size_t>(k)], z[static_cast<std::size_t>(j)]);
                if (mpfr_zero_p(diff.re) && mpfr_zero_p(diff.im)) {
                    mpfr_add_d(z[static_cast<std::size_t>(k)].re,
                               z[static_cast<std::size_t>(k)].re, 1e-3 * (j + 1), MPFR_RNDN);
                    csub(diff, z[static_cast<std::size_t>(k)], z[static_cast<std::size_t>(j)]);
                }
                CNum one(prec);
                mpfr_set_ui(one.re, 1, MPFR_RNDN);
                cdiv(inv, one, diff, s);
                cadd(sum, sum, inv);
            }
            cmul(denom, ratio, sum, s);
            mpfr_ui_sub(denom.re, 1, denom.re, MPFR_RNDN);
            mpfr_neg(denom.im, denom.im, MPFR_RNDN);
            if (mpfr_zero_p(denom.re) && mpfr_zero_p(denom.im)) continue;
            cdiv(w, ratio, denom, s);
            csub(z[static_cast<std::size_t>(k)], z[static_cast<std::size_t>(k)], w);
            cabs(tmp, w, s);
            mpfr_max(corr_norm, corr_norm, tmp, MPFR_RNDN);
        }
        if (mpfr_cmp(corr_norm, tol) < 0) break;
    }
    mpfr_clears(corr_norm, tol, tmp, static_cast<mpfr_ptr>(nullptr));
    return z;
}

Rational dyadic_of(const mpfr_t& v) {
    if (!mpfr_number_p(v)) throw Error("non-finite value in root approximation");
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, v);
    Rational r(q);
    mpq_clear(q);
    return r;
}

// Upper bound for d * |p(z)| / |p'(z)| at an exact rational point; the closed
// disk of that radius around z contains at least one root of p.
// Returns false when |p'| cannot be certified nonzero.
bool inclusion_radius(const IntPoly& p, const Rational& cre, const Rational& cim,
                      mpfr_prec_t prec, Rational& out) {
    CInterval z(RInterval::from_rational(cre, prec), RInterval::from_rational(cim, prec));
    CInterval pv = p.eval(z, prec);
    CInterval dv = p.derivative().eval(z, prec);
    RInterval pn = pv.abs();
    RInterval dn = dv.abs();
    if (!dn.is_positive()) return false;
    RInterval rad = pn / dn;
    out = rad.hi_rational() * Rational(p.degree());
    return true;
}

bool disks_disjoint(const CertifiedRoot& a, const CertifiedRoot& b) {
    Rational dre = a.center_re - b.center_re;
    Rational dim = a.center_im - b.center_im;
    Rational dist2 = dre * dre + dim * dim;
    Rational rsum = a.radius + b.radius;
    return dist2 > rsum * rsum;
}

bool try_certify(const IntPoly& p, std::vector<CNum>& approx, mpfr_prec_t prec,
                 std::vector<CertifiedRoot>& out) {
    int d = p.degree();
    // classification threshold for "this approximation looks real"
    RInterval thr = RInterval::exact(1, prec);
    Rational eps = Rational(1, 1) / Rational(Integer(1) << std::min<mpfr_prec_t>(prec / 4, 256));

    std::vector<CertifiedRoot> roots;
    std::vector<int> complex_idx;
    for (int k = 0; k < d; ++k) {
        Rational re = dyadic_of(approx[static_cast<std::size_t>(k)].re);
        Rational im = dyadic_of(approx[static_cast<std::size_t>(k)].im);
        if (abs(im) < eps) {
            CertifiedRoot r;
            r.center_re = re;
            r.center_im = 0;
            r.real = true;
            if (!inclusion_radius(p, re, Rational(0), prec, r.radius)) return false;
            roots.push_back(std::move(r));
        } else {
            CertifiedRoot r;
            r.center_re = re;
            r.center_im = im;
            r.real = false;
            if (!inclusion_radius(p, re, im, prec, r.radius)) return false;
            roots.push_back(std::move(r));
            complex_idx.push_back(static_cast<int>(roots.size()) - 1);
        }
    }
    // conjugate pairing: match each upper-half root with a lower-half partner
    std::vector<int> upper, lower;
    for (int i : complex_idx)
        (roots[static_cast<std::size_t>(i)].center_im > 0 ? upper : lower).push_back(i);
    if (upper.size() != lower.size()) return false;
    std::vector<bool> used(roots.size(), false);
    for (int ui : upper) {
        int best = -1;
        Rational bestd2;
        for (int li : lower) {
            if (used[static_cast<std::size_t>(li)]) continue;
            Rational dre = roots[static_cast<std::size_t>(ui)].center_re -
                           roots[static_cast<std::size_t>(li)].center_re;
            Rational dim = roots[static_cast<std::size_t>(ui)].center_im +
                           roots[static_cast<std::size_t>(li)].center_im;
            Rational d2 = dre * dre + dim * dim;
            if (best < 0 || d2 < bestd2) {
                best = li;
                bestd2 = d2;
            }
        }
        if (best < 0) return false;
        used[static_cast<std::size_t>(best)] = true;
        // snap the partner to the exact conjugate and share the certificate
        CertifiedRoot& lo = roots[static_cast<std::size_t>(best)];
        const CertifiedRoot& up = roots[static_cast<std::size_t>(ui)];
        lo.center_re = up.center_re;
        lo.center_im = -up.center_im;
        lo.radius = up.radius;
    }
    // non-real disks must miss the real axis
    for (const auto& r : roots)
        if (!r.real && !(abs(r.center_im) > r.radius)) return false;
    // pairwise disjoint
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (!disks_disjoint(roots[i], roots[j])) return false;

    std::sort(roots.begin(), roots.end(), [](const CertifiedRoot& a, const CertifiedRoot& b) {
        if (a.center_re != b.center_re) return a.center_re < b.center_re;
        return a.center_im < b.center_im;
    });
    out = std::move(roots);
    return true;
}

}  // namespace

CInterval CertifiedRoot::box(mpfr_prec_t prec) const {
    RInterval re = RInterval::from_endpoints(center_re - radius, center_re + radius, prec);
    RInterval im = real ? RInterval::zero(prec)
                        : RInterval::from_endpoints(center_im - radius, center_im + radius, prec);
    return {re, im};
}

RInterval CertifiedRoot::real_interval(mpfr_prec_t prec) const {
    if (!real) throw Error("real_interval on a non-real root");
    return RInterval::from_endpoints(center_re - radius, center_re + radius, prec);
}

RInterval CertifiedRoot::modulus(mpfr_prec_t prec) const {
    return box(prec).abs();
}

CertifiedRoot CertifiedRoot::conjugate() const {
    CertifiedRoot c = *this;
    c.center_im = -c.center_im;
    return c;
}

std::vector<CertifiedRoot> isolate_roots(const IntPoly& squarefree_poly,
                                         const PrecisionPolicy& policy) {
    const IntPoly& p = squarefree_poly;
    if (p.degree() < 1) throw Error("isolate_roots needs degree >= 1");
    if (p.degree() == 1) {
        CertifiedRoot r;
        r.center_re = Rational(-p[0], p[1]);
        r.center_re.canonicalize();
        r.center_im = 0;
        r.radius = 0;
        r.real = true;
        return {r};
    }
    int round = 0;
    for (mpfr_prec_t prec = policy.start_bits; prec <= policy.max_bits;
         prec = policy.next(prec), ++round) {
        std::vector<CNum> approx = aberth(p, prec, (60 + 12 * p.degree()) * (1 + 2 * round));
        std::vector<CertifiedRoot> out;
        if (try_certify(p, approx, prec, out)) return out;
    }
    throw PrecisionExhausted("root isolation did not certify below the precision ceiling for " +
                             p.to_string());
}

std::vector<CertifiedRoot> isolate_all_roots(const IntPoly& poly, const PrecisionPolicy& policy) {
    auto factors = squarefree_decomposition(poly);
    std::vector<CertifiedRoot> all;
    for (const auto& [g, mult] : factors) {
        if (g.degree() < 1) continue;
        auto roots = isolate_roots(g, policy);
        for (auto& r : roots) {
            r.multiplicity = mult;
            all.push_back(std::move(r));
        }
    }
    // global disjointness across factors; refine offenders as needed
    bool again = true;
    int guard = 0;
    while (again) {
        again = false;
        if (++guard > 64)
            throw PrecisionExhausted("could not separate roots of distinct square-free factors");
        for (std::size_t i = 0; i < all.size() && !again; ++i)
            for (std::size_t j = i + 1; j < all.size() && !again; ++j) {
                if (all[i].multiplicity == all[j].multiplicity) continue;  // same factor: done
                if (!disks_disjoint(all[i], all[j])) {
                    for (const auto& [g, mult] : factors) {
                        if (mult == all[i].multiplicity)
                            all[i] = refine_root(g, all[i], all[i].radius / 16, policy);
                        if (mult == all[j].multiplicity)
                            all[j] = refine_root(g, all[j], all[j].radius / 16, policy);
                    }
                    again = true;
                }
            }
    }
    std::sort(all.begin(), all.end(), [](const CertifiedRoot& a, const CertifiedRoot& b) {
        if (a.center_re != b.center_re) return a.center_re < b.center_re;
        return a.center_im < b.center_im;
    });
    return all;
}

CertifiedRoot refine_root(const IntPoly& squarefree_poly, const CertifiedRoot& root,
                          const Rational& target_radius, const PrecisionPolicy& policy) {
    if (root.radius <= target_radius) return root;
    const IntPoly& p = squarefree_poly;
    IntPoly dp = p.derivative();
    for (mpfr_prec_t prec = policy.start_bits; prec <= policy.max_bits * 4;
         prec = policy.next(prec)) {
        CScratch s(prec);
        CNum z(prec), pv(prec), dv(prec), step(prec);
        mpfr_set_q(z.re, root.center_re.get_mpq_t(), MPFR_RNDN);
        mpfr_set_q(z.im, root.center_im.get_mpq_t(), MPFR_RNDN);
        for (int it = 0; it < static_cast<int>(mpfr_prec_t(2) + prec / 8); ++it) {
            eval_with_derivative(p, z, pv, dv, s);
            if (mpfr_zero_p(dv.re) && mpfr_zero_p(dv.im)) break;
            cdiv(step, pv, dv, s);
            csub(z, z, step);
            if (root.real) mpfr_set_zero(z.im, 1);
        }
        CertifiedRoot ref;
        ref.real = root.real;
        ref.multiplicity = root.multiplicity;
        ref.center_re = dyadic_of(z.re);
        ref.center_im = root.real ? Rational(0) : dyadic_of(z.im);
        if (!inclusion_radius(p, ref.center_re, ref.center_im, prec, ref.radius)) continue;
        if (ref.radius > target_radius) continue;
        // must stay inside the old isolating disk to be the same root
        Rational dre = ref.center_re - root.center_re;
        Rational dim = ref.center_im - root.center_im;
        Rational need = root.radius - ref.radius;
        if (need < 0 || dre * dre + dim * dim > need * need) continue;
        if (!ref.real && !(abs(ref.center_im) > ref.radius)) continue;
        return ref;
    }
    throw PrecisionExhausted("root refinement exhausted the precision ceiling");
}

}  // namespace pillai
