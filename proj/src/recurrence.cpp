#include "pillai/recurrence.hpp"

#include <algorithm>
#include <mutex>

namespace pillai {

// ---------------------------------------------------------------- basics

void RecurrenceSpec::validate(int order_ceiling) const {
    if (coefficients.empty()) throw ParseError("recurrence needs at least one coefficient");
    if (coefficients.back() == 0)
        throw ParseError("last coefficient c_k must be nonzero");
    if (static_cast<int>(coefficients.size()) > order_ceiling)
        throw ParseError("recurrence order " + std::to_string(coefficients.size()) +
                         " exceeds the ceiling " + std::to_string(order_ceiling));
    if (initial.size() != coefficients.size())
        throw ParseError("need exactly k initial terms");
    bool allzero = true;
    for (const auto& v : initial)
        if (v != 0) allzero = false;
    if (allzero) throw ParseError("initial terms must not all be zero");
}

Integer term(const RecurrenceSpec& spec, long n) {
    if (n < 0) throw Error("term index must be non-negative");
    int k = spec.order();
    if (n < k) return spec.initial[static_cast<std::size_t>(n)];
    std::vector<Integer> window(spec.initial);
    for (long i = k; i <= n; ++i) {
        Integer next = 0;
        for (int j = 0; j < k; ++j)
            next += spec.coefficients[static_cast<std::size_t>(j)] *
                    window[static_cast<std::size_t>(k - 1 - j)];
        for (int j = 0; j + 1 < k; ++j) window[static_cast<std::size_t>(j)] = window[static_cast<std::size_t>(j + 1)];
        window[static_cast<std::size_t>(k - 1)] = next;
    }
    return window[static_cast<std::size_t>(k - 1)];
}

std::vector<Integer> terms_upto(const RecurrenceSpec& spec, long hi) {
    int k = spec.order();
    std::vector<Integer> out;
    out.reserve(static_cast<std::size_t>(hi + 1));
    for (long i = 0; i <= hi; ++i) {
        if (i < k) {
            out.push_back(spec.initial[static_cast<std::size_t>(i)]);
        } else {
            Integer next = 0;
            for (int j = 0; j < k; ++j)
                next += spec.coefficients[static_cast<std::size_t>(j)] *
                        out[static_cast<std::size_t>(i - 1 - j)];
            out.push_back(next);
        }
    }
    return out;
}

IntPoly char_poly(const RecurrenceSpec& spec) {
    int k = spec.order();
    std::vector<Integer> c(static_cast<std::size_t>(k) + 1);
    c[static_cast<std::size_t>(k)] = 1;
    for (int i = 1; i <= k; ++i)
        c[static_cast<std::size_t>(k - i)] = -spec.coefficients[static_cast<std::size_t>(i - 1)];
    return IntPoly(std::move(c));
}

// ------------------------------------------------------------ root system

namespace {

bool modulus_upper_below(const CertifiedRoot& r, const CertifiedRoot& top, mpfr_prec_t prec) {
    return r.modulus(prec).certainly_lt(top.modulus(prec));
}

}  // namespace

RootSystem analyze_roots(const IntPoly& poly, const Rational& target_width,
                         const PrecisionPolicy& policy) {
    if (poly.degree() < 1) throw Error("analyze_roots needs a non-constant polynomial");
    if (poly[0] == 0) throw Error("analyze_roots requires a nonzero constant term");
    RootSystem rs;
    rs.poly = poly;
    for (const auto& [g, mult] : factor_integer_poly(poly, policy)) rs.factors.emplace_back(g, mult);

    for (std::size_t f = 0; f < rs.factors.size(); ++f) {
        auto roots = isolate_roots(rs.factors[f].first, policy);
        for (auto& r : roots) {
            DistinctRoot dr;
            dr.enclosure = r;
            dr.enclosure.multiplicity = rs.factors[f].second;
            dr.multiplicity = rs.factors[f].second;
            dr.factor_index = static_cast<int>(f);
            rs.roots.push_back(std::move(dr));
        }
    }
    // shrink to the requested width and separate across factors
    for (auto& dr : rs.roots)
        if (dr.enclosure.radius > target_width)
            dr.enclosure = refine_root(rs.factors[static_cast<std::size_t>(dr.factor_index)].first,
                                       dr.enclosure, target_width, policy);
    bool again = true;
    int guard = 0;
    while (again) {
        again = false;
        if (++guard > 64) throw PrecisionExhausted("failed to separate distinct roots");
        for (std::size_t i = 0; i < rs.roots.size(); ++i)
            for (std::size_t j = i + 1; j < rs.roots.size(); ++j) {
                auto& a = rs.roots[i].enclosure;
                auto& b = rs.roots[j].enclosure;
                Rational dre = a.center_re - b.center_re, dim = a.center_im - b.center_im;
                Rational rsum = a.radius + b.radius;
                if (dre * dre + dim * dim <= rsum * rsum) {
                    a = refine_root(rs.factors[static_cast<std::size_t>(rs.roots[i].factor_index)].first,
                                    a, a.radius / 64, policy);
                    b = refine_root(rs.factors[static_cast<std::size_t>(rs.roots[j].factor_index)].first,
                                    b, b.radius / 64, policy);
                    again = true;
                }
            }
    }

    if (rs.roots.size() == 1) {
        rs.dominant = true;
        rs.dominant_index = 0;
    } else {
        // certify a strict maximal modulus or detect an exact tie
        const mpfr_prec_t prec = 192;
        for (int round = 0;; ++round) {
            // order candidates by modulus upper bound
            std::size_t top = 0;
            Rational best = -1;
            for (std::size_t i = 0; i < rs.roots.size(); ++i) {
                Rational up = rs.roots[i].enclosure.modulus(prec).hi_rational();
                if (up > best) {
                    best = up;
                    top = i;
                }
            }
            bool strict = true;
            std::size_t rival = 0;
            for (std::size_t i = 0; i < rs.roots.size(); ++i) {
                if (i == top) continue;
                if (!modulus_upper_below(rs.roots[i].enclosure, rs.roots[top].enclosure, prec)) {
                    strict = false;
                    rival = i;
                }
            }
            if (strict) {
                rs.dominant = true;
                rs.dominant_index = static_cast<int>(top);
                break;
            }
            // conjugate pair at the top: moduli equal by symmetry
            const auto& rt = rs.roots[top].enclosure;
            const auto& rr = rs.roots[rival].enclosure;
            if (!rt.real && rr.center_re == rt.center_re && rr.center_im == -rt.center_im)
                throw NoDominantRoot(NoDominantRoot::Reason::EqualMaximalModulus,
                                     "maximal modulus attained by a complex conjugate pair");
            if (round >= 2) {
                // exact |z|^2 comparison between the two contenders
                const IntPoly& pt =
                    rs.factors[static_cast<std::size_t>(rs.roots[top].factor_index)].first;
                const IntPoly& pr =
                    rs.factors[static_cast<std::size_t>(rs.roots[rival].factor_index)].first;
                if (alg_expr_equal(alg_expr_norm2_root(pt, rt), alg_expr_norm2_root(pr, rr),
                                   policy))
                    throw NoDominantRoot(NoDominantRoot::Reason::EqualMaximalModulus,
                                         "two distinct roots share the maximal modulus");
            }
            if (round >= 24)
                throw NoDominantRoot(NoDominantRoot::Reason::NotCertified,
                                     "modulus ordering not certified below the precision ceiling");
            for (auto& dr : rs.roots)
                if (dr.enclosure.radius > 0)
                    dr.enclosure = refine_root(
                        rs.factors[static_cast<std::size_t>(dr.factor_index)].first, dr.enclosure,
                        dr.enclosure.radius / 1024, policy);
        }
    }

    const DistinctRoot& dom = rs.roots[static_cast<std::size_t>(rs.dominant_index)];
    if (!dom.enclosure.real)
        throw NoDominantRoot(NoDominantRoot::Reason::NotCertified,
                             "dominant root not certified real");
    const IntPoly& mp = rs.factors[static_cast<std::size_t>(dom.factor_index)].first;
    if (mp.degree() == 1) {
        Rational v(-mp[0], mp[1]);
        v.canonicalize();
        if (abs(v) == 1) rs.dominant_modulus_is_one = true;
    }
    return rs;
}

// -------------------------------------------------------- non-degeneracy

NondegeneracyVerdict nondegeneracy_check(const RootSystem& rs, const PrecisionPolicy& policy) {
    NondegeneracyVerdict v;
    const mpfr_prec_t prec = 192;
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
        for (std::size_t j = i + 1; j < rs.roots.size(); ++j) {
            const auto& ri = rs.roots[i];
            const auto& rj = rs.roots[j];
            const IntPoly& pi = rs.factors[static_cast<std::size_t>(ri.factor_index)].first;
            const IntPoly& pj = rs.factors[static_cast<std::size_t>(rj.factor_index)].first;
            // equal moduli? refine a little, then decide exactly
            bool maybe_equal_mod;
            bool conj_pair = !ri.enclosure.real && !rj.enclosure.real &&
                             ri.enclosure.center_re == rj.enclosure.center_re &&
                             ri.enclosure.center_im == -rj.enclosure.center_im;
            if (conj_pair) {
                maybe_equal_mod = true;
            } else {
                CertifiedRoot a = ri.enclosure, b = rj.enclosure;
                maybe_equal_mod = true;
                for (int round = 0; round < 4; ++round) {
                    if (!a.modulus(prec).intersects(b.modulus(prec))) {
                        maybe_equal_mod = false;
                        break;
                    }
                    if (a.radius > 0) a = refine_root(pi, a, a.radius / 256, policy);
                    if (b.radius > 0) b = refine_root(pj, b, b.radius / 256, policy);
                }
                if (maybe_equal_mod &&
                    !alg_expr_equal(alg_expr_norm2_root(pi, ri.enclosure),
                                    alg_expr_norm2_root(pj, rj.enclosure), policy))
                    maybe_equal_mod = false;
            }
            if (!maybe_equal_mod) continue;  // |ratio| != 1: not a root of unity

            // The ratio r_i / r_j annihilates the quotient transform
            // (roots theta_a / theta_b). It is a root of unity of order N
            // exactly when the minimal polynomial divides X^N - 1, i.e. when
            // it is a common root of the transform and X^N - 1; candidate
            // orders satisfy phi(N) <= [Q(r_i, r_j) : Q].
            std::vector<Integer> rev(pj.coeffs().rbegin(), pj.coeffs().rend());
            IntPoly quot = squarefree_part(transform_product(pi, IntPoly(std::move(rev))));
            std::set<int> quot_degrees = factor_degree_candidates(quot);

            // refinable enclosure of the specific ratio r_i / r_j
            CertifiedRoot bi = ri.enclosure, bj = rj.enclosure;
            IntPoly pi_c = pi, pj_c = pj;
            auto ratio_box = [bi, bj, pi_c, pj_c, &policy](int level) {
                mpfr_prec_t p2 = 192 + 64 * level;
                CertifiedRoot a = bi, b = bj;
                Rational ta = (abs(a.center_re) + abs(a.center_im) + 1) /
                              (Integer(1) << static_cast<unsigned long>(24 + 24L * level));
                Rational tb = (abs(b.center_re) + abs(b.center_im) + 1) /
                              (Integer(1) << static_cast<unsigned long>(24 + 24L * level));
                if (a.radius > ta) a = refine_root(pi_c, a, ta, policy);
                if (b.radius > tb) b = refine_root(pj_c, b, tb, policy);
                return a.box(p2) / b.box(p2);
            };

            unsigned long dmax = static_cast<unsigned long>(pi.degree()) *
                                 static_cast<unsigned long>(pj.degree());
            unsigned long nmax = 2 * dmax * dmax + 1;
            for (unsigned long N = 1; N <= nmax; ++N) {
                unsigned long phiN = euler_phi(N);
                if (phiN > dmax) continue;
                // a primitive N-th root of unity among the quotient roots
                // forces the N-th cyclotomic polynomial to divide the
                // transform; factor-degree patterns prune most orders
                if (!quot_degrees.count(static_cast<int>(phiN))) continue;
                IntPoly G = cyclotomic_polynomial(N);
                if (!quot.divides(G)) continue;
                IntPoly cof = quot.divide_exact(G);
                bool is_root;
                if (cof.degree() == 0) {
                    is_root = true;  // every root of the transform obeys X^N = 1
                } else {
                    is_root = false;
                    // locate the ratio between G and its cofactor
                    auto loc_roots_G = isolate_roots(G, policy);
                    auto loc_roots_C = isolate_roots(cof, policy);
                    for (int level = 0; level < 48; ++level) {
                        CInterval box = ratio_box(level);
                        std::size_t hits_g = 0, hits_c = 0;
                        auto touches = [&](const CertifiedRoot& r) {
                            return r.center_re >= box.re.lo_rational() - r.radius &&
                                   r.center_re <= box.re.hi_rational() + r.radius &&
                                   r.center_im >= box.im.lo_rational() - r.radius &&
                                   r.center_im <= box.im.hi_rational() + r.radius;
                        };
                        for (const auto& r : loc_roots_G)
                            if (touches(r)) ++hits_g;
                        for (const auto& r : loc_roots_C)
                            if (touches(r)) ++hits_c;
                        if (hits_g + hits_c == 1) {
                            is_root = hits_g == 1;
                            break;
                        }
                        for (auto& r : loc_roots_G)
                            if (touches(r) && r.radius > 0)
                                r = refine_root(G, r, r.radius / 64, policy);
                        for (auto& r : loc_roots_C)
                            if (touches(r) && r.radius > 0)
                                r = refine_root(cof, r, r.radius / 64, policy);
                        if (level == 47)
                            throw PrecisionExhausted("root-of-unity location stalled");
                    }
                }
                if (is_root) {
                    v.pass = false;
                    v.witness_i = i;
                    v.witness_j = j;
                    v.order = N;
                    v.note = "ratio of roots " + std::to_string(i) + "," + std::to_string(j) +
                             " is a root of unity of order " + std::to_string(N);
                    return v;
                }
            }
        }
    }
    v.note = rs.roots.size() <= 1 ? "single distinct root (vacuous)" : "no root-of-unity ratio";
    return v;
}

// ------------------------------------------------------------ Binet system

namespace {

// coefficient polynomial for one irreducible factor via partial fractions of
// the generating function P(z)/Q(z)
BinetFactor binet_for_factor(const RecurrenceSpec& spec, const IntPoly& minpoly, int mult) {
    BinetFactor bf;
    bf.minpoly = minpoly;
    bf.multiplicity = mult;
    bf.field = std::make_shared<NumberField>(minpoly);
    auto K = bf.field;
    int k = spec.order();
    int s = mult;

    auto from_q = [&](const Rational& q) { return NFElem::from_rational(K, q); };
    NFElem theta = NFElem::generator(K);
    NFElem theta_inv = theta.inverse();

    // Q(z) = 1 - c_1 z - ... - c_k z^k
    NFPoly Q{from_q(Rational(1))};
    Q.resize(static_cast<std::size_t>(k) + 1, from_q(Rational(0)));
    for (int i = 1; i <= k; ++i)
        Q[static_cast<std::size_t>(i)] = from_q(Rational(-spec.coefficients[static_cast<std::size_t>(i - 1)]));
    Q = nfpoly_trim(std::move(Q));

    // P(z) = sum_{j<k} p_j z^j with p_j = U_j - sum_{i<=j} c_i U_{j-i}
    NFPoly P;
    for (int j = 0; j < k; ++j) {
        Integer pj = spec.initial[static_cast<std::size_t>(j)];
        for (int i = 1; i <= j; ++i)
            pj -= spec.coefficients[static_cast<std::size_t>(i - 1)] *
                  spec.initial[static_cast<std::size_t>(j - i)];
        P.push_back(from_q(Rational(pj)));
    }
    P = nfpoly_trim(std::move(P));

    // Qred(z) = Q(z) / (1 - theta z)^s
    NFPoly lin{from_q(Rational(1)), -theta};
    NFPoly div = lin;
    for (int i = 1; i < s; ++i) div = nfpoly_mul(div, lin);
    auto [Qred, rem] = nfpoly_divmod(Q, div);
    if (!rem.empty()) throw Error("internal: (1 - theta z)^s does not divide Q");

    // substitute z = (1 - u)/theta and expand in powers of u
    NFPoly zlin{theta_inv, -theta_inv};  // (1 - u)/theta
    auto compose = [&](const NFPoly& f) {
        NFPoly acc;
        for (int i = nfpoly_degree(f); i >= 0; --i) {
            acc = nfpoly_mul(acc, zlin);
            if (acc.empty())
                acc = NFPoly{f[static_cast<std::size_t>(i)]};
            else
                acc[0] = acc[0] + f[static_cast<std::size_t>(i)];
        }
        return acc;
    };
    NFPoly Nu = compose(P);
    NFPoly Du = compose(Qred);
    if (Du.empty() || Du[0].is_zero()) throw Error("internal: removable singularity in Binet expansion");

    // power series division Nu/Du modulo u^s
    std::vector<NFElem> t(static_cast<std::size_t>(s), from_q(Rational(0)));
    NFElem d0inv = Du[0].inverse();
    for (int l = 0; l < s; ++l) {
        NFElem num = l < static_cast<int>(Nu.size()) ? Nu[static_cast<std::size_t>(l)]
                                                     : from_q(Rational(0));
        for (int i = 1; i <= l; ++i) {
            if (i < static_cast<int>(Du.size()))
                num = num - Du[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(l - i)];
        }
        t[static_cast<std::size_t>(l)] = num * d0inv;
    }

    // a(X) = sum_{j=1..s} B_j binom(X + j - 1, j - 1),  B_j = t_{s-j}
    bf.coeffs.assign(static_cast<std::size_t>(s), from_q(Rational(0)));
    for (int j = 1; j <= s; ++j) {
        const NFElem& B = t[static_cast<std::size_t>(s - j)];
        if (B.is_zero()) continue;
        // binom(X + j - 1, j - 1) = prod_{r=1}^{j-1} (X + r) / (j-1)!
        RatPoly binom = RatPoly::constant(Rational(1));
        for (int r = 1; r <= j - 1; ++r) binom = binom * RatPoly({Rational(r), Rational(1)});
        binom = binom.scale(Rational(1, factorial(static_cast<unsigned long>(j - 1))));
        for (int d = 0; d <= binom.degree(); ++d)
            bf.coeffs[static_cast<std::size_t>(d)] =
                bf.coeffs[static_cast<std::size_t>(d)] + B.scale(binom[static_cast<std::size_t>(d)]);
    }
    bf.true_degree = -1;
    for (int d = s - 1; d >= 0; --d)
        if (!bf.coeffs[static_cast<std::size_t>(d)].is_zero()) {
            bf.true_degree = d;
            break;
        }
    return bf;
}

}  // namespace

// --------------------------------------------------------------- analysis

struct SequenceAnalysis::Refiner {
    std::mutex mu;
    std::vector<CertifiedRoot> boxes;  // current enclosures per distinct root
    std::vector<int> levels;
    std::vector<IntPoly> polys;  // minimal polynomial per root
    PrecisionPolicy policy;

    CertifiedRoot get(std::size_t i, int level) {
        std::lock_guard<std::mutex> lock(mu);
        while (levels[i] < level) {
            if (boxes[i].radius > 0)
                boxes[i] = refine_root(polys[i], boxes[i], boxes[i].radius / 256, policy);
            ++levels[i];
        }
        return boxes[i];
    }
};

CertifiedRoot SequenceAnalysis::root_box(std::size_t i, int level) const {
    return refiner_->get(i, level);
}

RInterval SequenceAnalysis::dominant_coeff_abs(long n, mpfr_prec_t prec, int level) const {
    const BinetFactor& bf = binet[static_cast<std::size_t>(dominant_factor)];
    CertifiedRoot box = root_box(static_cast<std::size_t>(dominant_root), level);
    RInterval rb = box.real_interval(prec);
    RInterval acc = RInterval::zero(prec);
    RInterval npow = RInterval::exact(1, prec);
    RInterval nn = RInterval::exact(n, prec);
    for (std::size_t j = 0; j < bf.coeffs.size(); ++j) {
        if (!bf.coeffs[j].is_zero()) acc = acc + bf.coeffs[j].eval_real(rb) * npow;
        npow = npow * nn;
    }
    return acc.abs();
}

RInterval SequenceAnalysis::dominant_term(long n, mpfr_prec_t prec, int level) const {
    const BinetFactor& bf = binet[static_cast<std::size_t>(dominant_factor)];
    CertifiedRoot box = root_box(static_cast<std::size_t>(dominant_root), level);
    RInterval rb = box.real_interval(prec);
    RInterval acc = RInterval::zero(prec);
    RInterval npow = RInterval::exact(1, prec);
    RInterval nn = RInterval::exact(n, prec);
    for (std::size_t j = 0; j < bf.coeffs.size(); ++j) {
        if (!bf.coeffs[j].is_zero()) acc = acc + bf.coeffs[j].eval_real(rb) * npow;
        npow = npow * nn;
    }
    return acc * rb.pow_ui(static_cast<unsigned long>(n));
}

CInterval SequenceAnalysis::binet_sum(long n, mpfr_prec_t prec, int level) const {
    CInterval acc = CInterval::exact_real(Rational(0), prec);
    for (std::size_t i = 0; i < roots.roots.size(); ++i) {
        const BinetFactor& bf = binet[static_cast<std::size_t>(roots.roots[i].factor_index)];
        CertifiedRoot box = root_box(i, level);
        CInterval rb = box.box(prec);
        CInterval coeff = CInterval::exact_real(Rational(0), prec);
        CInterval npow = CInterval::exact_real(Rational(1), prec);
        CInterval nn = CInterval::exact_real(Rational(n), prec);
        for (std::size_t j = 0; j < bf.coeffs.size(); ++j) {
            if (!bf.coeffs[j].is_zero()) coeff = coeff + bf.coeffs[j].eval(rb, prec) * npow;
            npow = npow * nn;
        }
        acc = acc + coeff * rb.pow_ui(static_cast<unsigned long>(n), prec);
    }
    return acc;
}

std::vector<RInterval> SequenceAnalysis::dominant_coeff_heights(mpfr_prec_t prec) const {
    const BinetFactor& bf = binet[static_cast<std::size_t>(dominant_factor)];
    std::vector<RInterval> out;
    for (const auto& c : bf.coeffs) {
        if (c.is_zero()) continue;
        if (c.is_rational()) {
            Rational v = c.rational_value();
            Integer num = abs(v.get_num()), den = v.get_den();
            Integer mx = std::max(num, den);
            out.push_back(mx <= 1 ? RInterval::zero(prec) : RInterval::log_integer(mx, prec));
        } else {
            IntPoly ann = transform_expression(bf.minpoly, c.rep());
            out.push_back(h0_from_power_annihilator(ann, prec));
        }
    }
    return out;
}

int SequenceAnalysis::cmp_coeff_abs(long n, long m) const {
    const BinetFactor& bf = binet[static_cast<std::size_t>(dominant_factor)];
    for (int level = 0;; ++level) {
        if (level > 32) throw PrecisionExhausted("coefficient comparison stalled");
        RInterval an = dominant_coeff_abs(n, 192 + 64 * level, level);
        RInterval am = dominant_coeff_abs(m, 192 + 64 * level, level);
        if (an.certainly_lt(am)) return -1;
        if (am.certainly_lt(an)) return 1;
        // exact tie test: a(n) = +- a(m) in the field
        auto eval_at = [&](long v) {
            NFElem acc = NFElem::from_rational(bf.field, Rational(0));
            Rational npow(1);
            for (std::size_t j = 0; j < bf.coeffs.size(); ++j) {
                acc = acc + bf.coeffs[j].scale(npow);
                npow *= Rational(v);
            }
            return acc;
        };
        NFElem en = eval_at(n), em = eval_at(m);
        if ((en - em).is_zero() || (en + em).is_zero()) return 0;
    }
}

// ---------- helpers for the growth/threshold machinery ----------

namespace {

// Cauchy-style bound: all real roots of p lie below 1 + max |c_i| / |lead|.
Rational cauchy_bound(const std::vector<Rational>& coeffs) {
    if (coeffs.empty()) return 1;
    Rational lead = abs(coeffs.back());
    if (lead == 0) throw Error("cauchy_bound needs a nonzero leading coefficient");
    Rational mx = 0;
    for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) {
        Rational a = abs(coeffs[i]);
        if (a > mx) mx = a;
    }
    return 1 + mx / lead;
}

Rational eval_poly_rat(const std::vector<Rational>& coeffs, const Rational& x) {
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace

namespace {

// a(X + 1) by Pascal expansion over the field
std::vector<NFElem> nf_shift_plus_one(const std::vector<NFElem>& a) {
    if (a.empty()) return a;
    auto K = a[0].field();
    std::vector<NFElem> out(a.size(), NFElem::from_rational(K, Rational(0)));
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j].is_zero()) continue;
        for (std::size_t i = 0; i <= j; ++i) {
            Rational b(binomial(Integer(static_cast<long>(j)), static_cast<unsigned long>(i)));
            out[i] = out[i] + a[j].scale(b);
        }
    }
    return out;
}

std::vector<NFElem> nf_square(const std::vector<NFElem>& a) {
    if (a.empty()) return a;
    auto K = a[0].field();
    std::vector<NFElem> out(2 * a.size() - 1, NFElem::from_rational(K, Rational(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) out[i + j] = out[i + j] + a[i] * a[j];
    return out;
}

// Cauchy root bound for an NF-coefficient polynomial with exactly nonzero
// lead, via interval coefficient bounds refined until the lead separates.
long nf_cauchy_bound(const std::vector<NFElem>& p, const IntPoly& minpoly,
                     const CertifiedRoot& root_box, long scan_cap) {
    int deg = -1;
    for (int d = static_cast<int>(p.size()) - 1; d >= 0; --d)
        if (!p[static_cast<std::size_t>(d)].is_zero()) {
            deg = d;
            break;
        }
    if (deg < 0) throw Error("nf_cauchy_bound of the zero polynomial");
    if (deg == 0) return 1;
    PrecisionPolicy policy;
    CertifiedRoot box = root_box;
    for (int level = 0; level < 40; ++level) {
        mpfr_prec_t prec = 192 + 64 * level;
        RInterval rb = box.real_interval(prec);
        RInterval lead = p[static_cast<std::size_t>(deg)].eval_real(rb).abs();
        if (lead.is_positive()) {
            Rational lead_lo = lead.lo_rational();
            Rational mx = 0;
            for (int j = 0; j < deg; ++j)
                mx = std::max(mx, p[static_cast<std::size_t>(j)].eval_real(rb).abs().hi_rational());
            Rational bound = 1 + mx / lead_lo;
            Integer b_int = bound.get_num() / bound.get_den() + 2;
            if (b_int > scan_cap) throw PrecisionExhausted("Cauchy bound exceeds the scan cap");
            return b_int.get_si();
        }
        if (box.radius > 0) box = refine_root(minpoly, box, box.radius / 256, policy);
    }
    throw PrecisionExhausted("Cauchy bound certification stalled");
}

}  // namespace

long coefficient_threshold_for(const std::vector<NFElem>& coeffs, const CertifiedRoot& root_box,
                               const IntPoly& minpoly, long scan_cap) {
    int deg = -1;
    for (int d = static_cast<int>(coeffs.size()) - 1; d >= 0; --d)
        if (!coeffs[static_cast<std::size_t>(d)].is_zero()) {
            deg = d;
            break;
        }
    if (deg <= 0) return 1;  // constant (or zero) coefficient polynomial

    std::vector<NFElem> a(coeffs.begin(), coeffs.begin() + deg + 1);
    // E(X) = a(X+1)^2 - a(X)^2: positive => |a| strictly increases at X
    std::vector<NFElem> a2 = nf_square(a);
    std::vector<NFElem> ash2 = nf_square(nf_shift_plus_one(a));
    auto K = a[0].field();
    std::vector<NFElem> E(ash2.size(), NFElem::from_rational(K, Rational(0)));
    for (std::size_t i = 0; i < E.size(); ++i) {
        NFElem v = ash2[i];
        if (i < a2.size()) v = v - a2[i];
        E[i] = v;
    }
    long be = nf_cauchy_bound(E, minpoly, root_box, scan_cap);
    long window = be + 2;

    // M = upper bound on |a(n)| over the window
    PrecisionPolicy policy;
    mpfr_prec_t prec = 256;
    RInterval rb = root_box.real_interval(prec);
    Rational M = 0;
    for (long n = 0; n <= window; ++n) {
        RInterval acc = RInterval::zero(prec);
        RInterval npow = RInterval::exact(1, prec);
        RInterval nn = RInterval::exact(n, prec);
        for (const auto& c : a) {
            if (!c.is_zero()) acc = acc + c.eval_real(rb) * npow;
            npow = npow * nn;
        }
        M = std::max(M, acc.abs().hi_rational());
    }
    // F(X) = a(X)^2 - M^2: positive => |a(n)| exceeds everything in the window
    std::vector<NFElem> F = a2;
    F[0] = F[0] - NFElem::from_rational(K, M * M);
    long bf = nf_cauchy_bound(F, minpoly, root_box, scan_cap);
    long beyond = std::max(window, bf + 2);
    if (beyond > scan_cap) throw PrecisionExhausted("coefficient threshold scan too large");
    return beyond;  // caller finishes with exact comparisons up to `beyond`
}

namespace {

long finish_n1_scan(const SequenceAnalysis& an, long beyond) {
    // find minimal N such that, for every n in [N, beyond]:
    //   |a(n+1)| >= |a(n)|  and  |a(n)| > |a(n')| for all 0 <= n' < n
    long bad = 0;  // largest n violating a condition, +1 gives the threshold
    std::vector<long> arg_max = {0};
    for (long n = 1; n <= beyond; ++n) {
        int c = an.cmp_coeff_abs(n, arg_max[0]);
        bool dominates = c > 0;
        if (!dominates) bad = n;
        if (c > 0) {
            arg_max = {n};
        } else if (c == 0) {
            arg_max.push_back(n);
        }
        if (n < beyond && an.cmp_coeff_abs(n + 1, n) < 0) bad = n;
    }
    return std::max<long>(bad + 1, 1);
}

}  // namespace

SequenceAnalysis analyze_sequence(const RecurrenceSpec& spec, const AnalyzeOptions& opts) {
    spec.validate(opts.order_ceiling);
    SequenceAnalysis an;
    an.spec = spec;
    an.charpoly = char_poly(spec);
    an.roots = analyze_roots(an.charpoly, opts.root_target_width, opts.precision);
    an.dominant_root = an.roots.dominant_index;
    an.dominant_factor = an.roots.roots[static_cast<std::size_t>(an.dominant_root)].factor_index;

    an.refiner_ = std::make_shared<SequenceAnalysis::Refiner>();
    an.refiner_->policy = opts.precision;
    for (const auto& dr : an.roots.roots) {
        an.refiner_->boxes.push_back(dr.enclosure);
        an.refiner_->levels.push_back(0);
        an.refiner_->polys.push_back(an.roots.factors[static_cast<std::size_t>(dr.factor_index)].first);
    }

    if (an.roots.dominant_modulus_is_one)
        throw HypothesisFailure("monotonicity",
                                "monotonicity threshold not found: the dominant root has "
                                "modulus exactly 1, so |U_n| is not eventually increasing");

    an.nondeg = nondegeneracy_check(an.roots, opts.precision);
    if (!an.nondeg.pass)
        throw HypothesisFailure("non-degeneracy",
                                "degenerate recurrence: " + an.nondeg.note);

    // the dominant root as an algebraic number (real, |alpha| > 1)
    {
        const auto& df = an.roots.factors[static_cast<std::size_t>(an.dominant_factor)].first;
        an.alpha = std::make_shared<AlgebraicNumber>(
            df, an.roots.roots[static_cast<std::size_t>(an.dominant_root)].enclosure);
    }

    // Binet coefficients per irreducible factor
    for (const auto& [g, mult] : an.roots.factors) an.binet.push_back(binet_for_factor(spec, g, mult));

    const BinetFactor& dom_bf = an.binet[static_cast<std::size_t>(an.dominant_factor)];
    if (dom_bf.true_degree < 0)
        throw HypothesisFailure("binet",
                                "the dominant Binet coefficient vanishes identically; the "
                                "recurrence is not minimal for this sequence");
    an.sigma = dom_bf.true_degree;

    // reconstruction certification for n = 0 .. 4k
    {
        int k = spec.order();
        bool ok = false;
        for (int level = 0; level < 10 && !ok; ++level) {
            ok = true;
            for (long n = 0; n <= 4L * k; ++n) {
                CInterval s = an.binet_sum(n, 192 + 64 * level, level);
                Integer un = term(spec, n);
                if (!s.re.contains(un) || !s.im.contains_zero() ||
                    s.re.width_rational() > Rational(1, 2)) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) throw PrecisionExhausted("Binet reconstruction did not certify");
    }

    // ----- envelope constants -----
    const mpfr_prec_t prec = 256;
    // per-root data, refining until the dominant modulus separates cleanly
    int lvl = 0;
    while (true) {
        if (lvl > 24) throw PrecisionExhausted("envelope separation stalled");
        CertifiedRoot dom = an.root_box(static_cast<std::size_t>(an.dominant_root), lvl);
        RInterval dmod = dom.modulus(prec);
        an.alpha_abs_lower = dmod.lo_rational();
        an.alpha_abs_upper = dmod.hi_rational();
        an.alpha2_upper = 0;
        for (std::size_t i = 0; i < an.roots.roots.size(); ++i) {
            if (static_cast<int>(i) == an.dominant_root) continue;
            Rational up = an.root_box(i, lvl).modulus(prec).hi_rational();
            an.alpha2_upper = std::max(an.alpha2_upper, up);
        }
        if (!(an.alpha_abs_lower > 1)) {
            ++lvl;
            continue;
        }
        if (an.roots.roots.size() > 1 && !(an.alpha2_upper < an.alpha_abs_lower)) {
            ++lvl;
            continue;
        }
        // choose rational alpha' with max(alpha2,1) < alpha' < |alpha| and
        // alpha'^2 >= |alpha| * max(alpha2, 1)
        Rational M = std::max(an.alpha2_upper, Rational(1));
        RInterval s = RInterval::from_rational(an.alpha_abs_upper * M, prec).sqrt();
        Rational cand = s.hi_rational();
        cand += (an.alpha_abs_lower - cand) / 1024;  // nudge above the sqrt
        if (cand * cand >= an.alpha_abs_upper * M && cand < an.alpha_abs_lower && cand > M) {
            an.alpha_prime = cand;
            break;
        }
        ++lvl;
    }

    // A, a'' over the non-dominant roots
    an.A = 0;
    an.a_second = 0;
    for (std::size_t i = 0; i < an.roots.roots.size(); ++i) {
        if (static_cast<int>(i) == an.dominant_root) continue;
        const BinetFactor& bf = an.binet[static_cast<std::size_t>(an.roots.roots[i].factor_index)];
        if (bf.true_degree < 0) continue;
        an.A = std::max(an.A, bf.true_degree);
        CertifiedRoot box = an.root_box(i, lvl);
        CInterval cb = box.box(prec);
        for (const auto& c : bf.coeffs) {
            if (c.is_zero()) continue;
            an.a_second += c.eval(cb, prec).abs().hi_rational();
        }
    }

    // a' = a'' * max(1, max_{n>=1} n^A r^n), r = alpha2_upper / alpha'
    if (an.roots.roots.size() == 1 || an.a_second == 0) {
        an.a_prime = 0;
        an.a_second = 0;
        an.A = 0;
    } else {
        Rational r = std::max(an.alpha2_upper, Rational(1, 1024)) / an.alpha_prime;
        Rational peak = 1;
        if (an.A > 0 && r > 0) {
            // largest n with (n+1)^A * r >= n^A  (the discrete unimodal peak)
            auto increasing_at = [&](long n) {
                Rational lhs = qpow(Rational(n + 1), an.A) * r;
                return lhs >= qpow(Rational(n), an.A);
            };
            long n = 1;
            while (increasing_at(n) && n < (1L << 40)) n *= 2;
            long lo = n / 2, hi = n;
            while (lo + 1 < hi) {
                long mid = lo + (hi - lo) / 2;
                (increasing_at(mid) ? lo : hi) = mid;
            }
            long peak_n = increasing_at(1) ? hi : 1;
            peak = qpow(Rational(peak_n), an.A) * qpow(r, peak_n);
            Rational alt = qpow(Rational(std::max<long>(1, peak_n - 1)), an.A) *
                           qpow(r, std::max<long>(1, peak_n - 1));
            peak = std::max(peak, alt);
        } else {
            peak = r;
        }
        // widened a hair so the envelope stays certifiable when it is attained
        an.a_prime = an.a_second * std::max(Rational(1), peak) *
                     Rational(Integer(1) + (Integer(1) << 20), Integer(1) << 20);
    }

    // dominant coefficient magnitude bounds
    {
        int refine = lvl;
        while (true) {
            if (refine > 30) throw PrecisionExhausted("dominant coefficient bounds stalled");
            CertifiedRoot dom = an.root_box(static_cast<std::size_t>(an.dominant_root), refine);
            RInterval rb = dom.real_interval(prec);
            an.acoef_abs_upper.assign(static_cast<std::size_t>(an.sigma) + 1, Rational(0));
            for (int j = 0; j <= an.sigma; ++j) {
                RInterval v = dom_bf.coeffs[static_cast<std::size_t>(j)].eval_real(rb).abs();
                an.acoef_abs_upper[static_cast<std::size_t>(j)] = v.hi_rational();
                if (j == an.sigma) an.alead_abs_lower = v.lo_rational();
            }
            if (an.alead_abs_lower > 0) break;
            ++refine;
        }
    }

    // ----- growth constants -----
    {
        // rational bounds for |alpha| tight enough that alpha_lower > alpha'
        int refine = lvl;
        while (!(an.alpha_abs_lower > an.alpha_prime)) {
            ++refine;
            if (refine > 40) throw PrecisionExhausted("dominant modulus refinement stalled");
            CertifiedRoot dom = an.root_box(static_cast<std::size_t>(an.dominant_root), refine);
            RInterval dmod = dom.modulus(512);
            an.alpha_abs_lower = dmod.lo_rational();
            an.alpha_abs_upper = dmod.hi_rational();
        }
        Rational rhat = an.alpha_prime / an.alpha_abs_lower;  // < 1
        std::vector<Integer> terms = terms_upto(spec, std::max<long>(opts.growth_enum_ceiling, 64));
        const Rational eps(1, 100);
        bool done = false;
        for (long n2 = 1; n2 <= 2048 && !done; n2 = n2 < 16 ? n2 + 1 : n2 * 2) {
            long ntail = std::max<long>(3 * n2, 48);
            if (static_cast<std::size_t>(ntail) >= terms.size()) terms = terms_upto(spec, ntail);
            // tail bounds valid for all n >= ntail
            Rational tail_lo = an.alead_abs_lower;
            for (int j = 0; j < an.sigma; ++j)
                tail_lo -= an.acoef_abs_upper[static_cast<std::size_t>(j)] / Rational(ntail);
            Rational decay = an.a_prime * qpow(rhat, ntail);
            tail_lo -= decay;
            Rational tail_hi = 0;
            for (int j = 0; j <= an.sigma; ++j)
                tail_hi += an.acoef_abs_upper[static_cast<std::size_t>(j)] /
                           (j == an.sigma ? Rational(1) : Rational(ntail));
            tail_hi += decay;
            if (!(tail_lo > 0)) continue;
            // enumerated segment
            Rational seg_lo = tail_lo, seg_hi = tail_hi;
            bool zero_term = false;
            for (long n = n2; n < ntail; ++n) {
                Integer u = abs(terms[static_cast<std::size_t>(n)]);
                if (u == 0) {
                    zero_term = true;
                    break;
                }
                Rational denom_hi = qpow(Rational(n), an.sigma) * qpow(an.alpha_abs_upper, n);
                Rational denom_lo = qpow(Rational(n), an.sigma) * qpow(an.alpha_abs_lower, n);
                Rational rl = Rational(u) / denom_hi;
                Rational rh = Rational(u) / denom_lo;
                if (rl < seg_lo) seg_lo = rl;
                if (rh > seg_hi) seg_hi = rh;
            }
            if (zero_term) continue;
            Rational c1 = (1 - eps) * seg_lo;
            Rational c2 = (1 + eps) * seg_hi;
            if (!(c2 < c1 * an.alpha_abs_lower)) continue;
            an.C1 = c1;
            an.C2 = c2;
            an.N2 = n2;
            an.C5 = c2 * (1 + Rational(1) / an.alpha_abs_lower);
            an.C6 = c1 - c2 / an.alpha_abs_lower;
            done = true;
        }
        if (!done)
            throw HypothesisFailure("growth",
                                    "could not certify the growth sandwich with C2/C1 < |alpha|");
        // exact verification over the requested range
        for (long n = an.N2; n <= opts.growth_enum_ceiling; ++n) {
            Integer u = abs(terms[static_cast<std::size_t>(n)]);
            Rational lo_claim = an.C1 * qpow(Rational(n), an.sigma) * qpow(an.alpha_abs_upper, n);
            Rational hi_claim = an.C2 * qpow(Rational(n), an.sigma) * qpow(an.alpha_abs_lower, n);
            if (!(lo_claim <= Rational(u) && Rational(u) <= hi_claim))
                throw PrecisionExhausted("growth sandwich failed exact verification at n = " +
                                         std::to_string(n));
        }
    }

    // ----- monotonicity threshold N0 -----
    {
        // |U_{n+1}| > |U_n| is implied by
        //   G(n) = l(n+1) alpha_lo - u(n) - a'(alpha'+1) rhat^n > 0
        // and |U_n| > 0 by
        //   H(n) = l(n) alpha_lo^n ... reduced to l(n) - a' rhat^n > 0,
        // where l/u are lower/upper coefficient envelopes. The polynomial
        // parts of G and H have strictly increasing tails beyond the Cauchy
        // bounds of their discrete differences, and the exponential parts
        // shrink, so past the first certified index both stay positive.
        long nstar = -1;
        for (int level = 0; level < 30 && nstar < 0; ++level) {
            CertifiedRoot dom =
                an.root_box(static_cast<std::size_t>(an.dominant_root), level);
            mpfr_prec_t mprec = 256 + 64 * level;
            RInterval dmod = dom.modulus(mprec);
            Rational alo = dmod.lo_rational();
            if (!(alo > an.alpha_prime)) continue;
            RInterval rb = dom.real_interval(mprec);
            std::vector<Rational> up(static_cast<std::size_t>(an.sigma) + 1);
            Rational lead_lo;
            {
                const BinetFactor& bf = an.binet[static_cast<std::size_t>(an.dominant_factor)];
                for (int j = 0; j <= an.sigma; ++j) {
                    RInterval v = bf.coeffs[static_cast<std::size_t>(j)].eval_real(rb).abs();
                    up[static_cast<std::size_t>(j)] = v.hi_rational();
                    if (j == an.sigma) lead_lo = v.lo_rational();
                }
            }
            if (!(lead_lo > 0)) continue;
            // p(n) = l(n+1) alo - u(n)
            std::vector<Rational> pcoef(static_cast<std::size_t>(an.sigma) + 1, Rational(0));
            for (int j = 0; j <= an.sigma; ++j) {
                Rational c = (j == an.sigma ? lead_lo : -up[static_cast<std::size_t>(j)]) * alo;
                for (int i = 0; i <= j; ++i)
                    pcoef[static_cast<std::size_t>(i)] +=
                        c * Rational(binomial(Integer(j), static_cast<unsigned long>(i)));
                pcoef[static_cast<std::size_t>(j)] -= up[static_cast<std::size_t>(j)];
            }
            if (!(pcoef.back() > 0)) continue;  // refine further
            // l-envelope coefficients
            std::vector<Rational> lcoef(static_cast<std::size_t>(an.sigma) + 1, Rational(0));
            lcoef[static_cast<std::size_t>(an.sigma)] = lead_lo;
            for (int j = 0; j < an.sigma; ++j)
                lcoef[static_cast<std::size_t>(j)] = -up[static_cast<std::size_t>(j)];
            long start = 1;
            if (an.sigma >= 1) {
                // Cauchy bounds of the discrete differences p(x+1)-p(x), l(x+1)-l(x)
                auto diff_bound = [&](const std::vector<Rational>& f) -> long {
                    if (f.size() <= 1) return 1;
                    std::vector<Rational> d(f.size() - 1, Rational(0));
                    for (std::size_t j = 1; j < f.size(); ++j)
                        for (std::size_t i = 0; i < j; ++i)
                            d[i] += f[j] * Rational(binomial(Integer(static_cast<long>(j)),
                                                             static_cast<unsigned long>(i)));
                    if (!(d.back() > 0)) return -1;
                    Rational b = cauchy_bound(d);
                    Integer bi = b.get_num() / b.get_den() + 2;
                    return bi.get_si();
                };
                long b1 = diff_bound(pcoef);
                long b2 = diff_bound(lcoef);
                if (b1 < 0 || b2 < 0) continue;
                start = std::max({start, b1, b2});
            }
            Rational rhat = an.alpha_prime / alo;
            Rational gap = an.a_prime * (an.alpha_prime + 1);
            for (long n = start; n <= opts.scan_cap; ++n) {
                Rational G = eval_poly_rat(pcoef, Rational(n)) - gap * qpow(rhat, n);
                Rational H = eval_poly_rat(lcoef, Rational(n)) - an.a_prime * qpow(rhat, n);
                if (G > 0 && H > 0) {
                    nstar = n;
                    break;
                }
            }
            if (nstar < 0)
                throw HypothesisFailure(
                    "monotonicity", "monotonicity threshold not found below the scan ceiling");
        }
        if (nstar < 0) throw PrecisionExhausted("monotonicity certification stalled");
        std::vector<Integer> terms = terms_upto(spec, nstar + 1);
        long bad = -1;
        for (long n = 0; n <= nstar; ++n) {
            Integer un = abs(terms[static_cast<std::size_t>(n)]);
            Integer un1 = abs(terms[static_cast<std::size_t>(n + 1)]);
            if (!(un1 > un && un > 0)) bad = n;
        }
        an.N0 = bad + 1;
    }

    // ----- coefficient threshold N1 -----
    if (an.sigma == 0) {
        an.N1 = 1;
    } else {
        long beyond = coefficient_threshold_for(
            dom_bf.coeffs, an.roots.roots[static_cast<std::size_t>(an.dominant_root)].enclosure,
            dom_bf.minpoly, opts.scan_cap);
        an.N1 = finish_n1_scan(an, beyond);
    }
    return an;
}

}  // namespace pillai
