#include "pillai/heights.hpp"

#include <algorithm>

namespace pillai {

namespace {

RInterval log_plus(const RInterval& modulus) {
    return RInterval::max(modulus, RInterval::exact(1, modulus.prec())).log();
}

}  // namespace

RInterval weil_height(const AlgebraicNumber& x, mpfr_prec_t prec, int level) {
    const auto& conj = x.conjugates(level);
    RInterval acc = RInterval::log_integer(abs(x.minpoly().lc()), prec);
    for (const auto& r : conj) acc = acc + log_plus(r.modulus(prec));
    return acc.mul_rational(Rational(1, x.degree()));
}

RInterval h0_from_power_annihilator(const IntPoly& annihilator, mpfr_prec_t prec, int level,
                                    const PrecisionPolicy& policy) {
    IntPoly R = annihilator.primitive_part();
    if (R.degree() < 1) throw Error("height of a constant annihilator");
    RInterval acc = RInterval::log_integer(abs(R.lc()), prec);
    for (const auto& [g, mult] : squarefree_decomposition(R)) {
        if (g.degree() < 1) continue;
        auto roots = isolate_roots(g, policy);
        for (auto& r : roots) {
            for (int l = 0; l < level && r.radius > 0; ++l)
                r = refine_root(g, r, r.radius / 256, policy);
            acc = acc + log_plus(r.modulus(prec)).mul_rational(Rational(mult));
        }
    }
    return acc.mul_rational(Rational(1, R.degree()));
}

RInterval modified_height(const AlgebraicNumber& x, int field_degree, mpfr_prec_t prec,
                          int level) {
    if (!x.is_real()) throw NonPositiveValue("modified height needs a real positive number");
    CertifiedRoot r = x.refined_bits(24 + 16L * level);
    if (!(r.center_re - r.radius > 0))
        throw NonPositiveValue("modified height: value not certifiably positive");
    RInterval h0 = weil_height(x, prec, level);
    RInterval logx = r.real_interval(prec).log();
    Rational d(field_degree);
    RInterval m = RInterval::max(h0.mul_rational(d), logx.abs());
    m = RInterval::max(m, RInterval::exact(1, prec));
    return m.mul_rational(Rational(1) / d);
}

RInterval linear_form_height(const std::vector<Integer>& b, mpfr_prec_t prec) {
    Integer mx = 0;
    for (const auto& v : b) {
        Integer a = abs(v);
        if (a > mx) mx = a;
    }
    if (mx <= 2) return RInterval::exact(1, prec);  // B = e
    return RInterval::log_integer(mx, prec);
}

// --------------------------------------------------------------- independence

namespace {

bool verify_power_equality(const AlgebraicNumber& x, const AlgebraicNumber& y, const Integer& p,
                           const Integer& q, const PrecisionPolicy& policy) {
    if (x.is_rational() && y.is_rational()) {
        return qpow(x.rational_value(), p.get_si()) == qpow(y.rational_value(), q.get_si());
    }
    // cheap reject before building the (potentially enormous) annihilators:
    // compare p log|x| against q log|y| and the signs of the powers
    for (int level = 0; level < 6; ++level) {
        mpfr_prec_t prec = 192 + 128 * level;
        CertifiedRoot rx = x.refined_bits(48 + 64L * level);
        CertifiedRoot ry = y.refined_bits(48 + 64L * level);
        RInterval lx = rx.modulus(prec).log().mul_rational(Rational(p));
        RInterval ly = ry.modulus(prec).log().mul_rational(Rational(q));
        if (!lx.intersects(ly)) return false;
        bool neg_x = x.is_real() && rx.center_re < 0 && p % 2 != 0;
        bool neg_y = y.is_real() && ry.center_re < 0 && q % 2 != 0;
        if (neg_x != neg_y) return false;
        if (lx.width_rational() + ly.width_rational() < Rational(1, Integer(1) << 40)) break;
    }
    return alg_expr_equal(alg_expr_power(x, p), alg_expr_power(y, q), policy);
}

}  // namespace

IndependenceResult mult_independent(const AlgebraicNumber& x, const AlgebraicNumber& y,
                                    unsigned long ceiling, const PrecisionPolicy& policy) {
    IndependenceResult res;
    res.ceiling = ceiling;
    if (!x.is_real() || !y.is_real())
        throw Error("mult_independent expects real inputs");

    for (int level = 0; level < 24; ++level) {
        mpfr_prec_t prec = 128 + 128 * level;
        RInterval hx = weil_height(x, prec, level);
        RInterval hy = weil_height(y, prec, level);
        if (!hx.is_positive() || !hy.is_positive()) continue;
        RInterval ratio = hx / hy;

        // continued-fraction walk of the ratio interval
        Integer p_prev = 0, q_prev = 1;  // convergent numerators/denominators of ratio
        Integer p_cur = 1, q_cur = 0;
        RInterval tail = ratio;
        bool need_refine = false;
        while (true) {
            Rational lo = tail.lo_rational();
            Rational hi = tail.hi_rational();
            Integer flo, fhi;
            mpz_fdiv_q(flo.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
            mpz_fdiv_q(fhi.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
            if (flo != fhi) {
                if (fhi - flo > 1) {
                    need_refine = true;
                    break;
                }
                // ambiguous floor: the true tail may be exactly an integer.
                // Close the expansion with each boundary quotient and verify.
                for (const Integer& a : {flo, fhi}) {
                    if (a <= 0 && q_cur == 0) continue;  // ratio interval must stay positive
                    Integer pn = a * p_cur + p_prev;
                    Integer qn = a * q_cur + q_prev;
                    if (pn <= 0 || qn <= 0) continue;
                    // ratio = h0(x)/h0(y) = q/p for x^p = y^q
                    Integer q_cand = pn, p_cand = qn;
                    Integer g = gcd(p_cand, q_cand);
                    p_cand /= g;
                    q_cand /= g;
                    if (verify_power_equality(x, y, p_cand, q_cand, policy)) {
                        res.verdict = IndependenceResult::Verdict::Fail;
                        res.p = p_cand;
                        res.q = q_cand;
                        return res;
                    }
                    // real numbers: a dependence may hide a sign flip
                    if (verify_power_equality(x, y, 2 * p_cand, 2 * q_cand, policy)) {
                        res.verdict = IndependenceResult::Verdict::Fail;
                        res.p = 2 * p_cand;
                        res.q = 2 * q_cand;
                        return res;
                    }
                }
                need_refine = true;
                break;
            }
            Integer a = flo;
            Integer pn = a * p_cur + p_prev;
            Integer qn = a * q_cur + q_prev;
            p_prev = p_cur;
            q_prev = q_cur;
            p_cur = pn;
            q_cur = qn;
            if (q_cur > Integer(ceiling)) {
                res.verdict = IndependenceResult::Verdict::Pass;
                res.note = "ceiling-certified (convergent denominators exceed " +
                           std::to_string(ceiling) + ")";
                return res;
            }
            // tail = 1 / (tail - a)
            RInterval frac = tail.add_rational(Rational(-a));
            if (frac.contains_zero()) {
                need_refine = true;
                break;
            }
            tail = RInterval::exact(1, prec) / frac;
        }
        if (!need_refine) break;
    }
    res.verdict = IndependenceResult::Verdict::Inconclusive;
    res.note = "height-ratio interval too wide at the precision ceiling";
    return res;
}

// ------------------------------------------------------------- field join

FieldJoin compose_field(const AlgebraicNumber& x, const AlgebraicNumber& y, int degree_ceiling,
                        const PrecisionPolicy& policy) {
    FieldJoin join;
    if (x.is_rational() && y.is_rational()) {
        join.defining = IntPoly({Integer(0), Integer(1)});  // X (gamma = 0)
        join.d = 1;
        join.x_rep = RatPoly::constant(x.rational_value());
        join.y_rep = RatPoly::constant(y.rational_value());
        CertifiedRoot zero;
        zero.center_re = 0;
        zero.center_im = 0;
        zero.radius = 0;
        zero.real = true;
        join.embeddings = {zero};
        return join;
    }
    if (x.is_rational() || y.is_rational()) {
        const AlgebraicNumber& gen = x.is_rational() ? y : x;
        join.defining = gen.minpoly();
        join.d = gen.degree();
        if (join.d > degree_ceiling)
            throw UnsupportedPlaceStructure("field degree exceeds the configured ceiling");
        join.lambda = 0;
        RatPoly t = RatPoly::x_power(1);
        if (x.is_rational()) {
            join.x_rep = RatPoly::constant(x.rational_value());
            join.y_rep = t;
        } else {
            join.x_rep = t;
            join.y_rep = RatPoly::constant(y.rational_value());
        }
        join.embeddings = isolate_roots(join.defining, policy);
        return join;
    }

    for (long lam = 1; lam <= 40; ++lam) {
        Rational lambda(lam);
        IntPoly R = transform_sum(x.minpoly(), y.minpoly(), lambda);
        IntPoly sf = squarefree_part(R);
        if (sf.degree() != R.degree()) continue;  // root collision, try next lambda

        // enclosure of gamma = x + lambda*y
        AlgebraicNumber xc = x, yc = y;
        auto enclose = [xc, yc, lambda](int level) {
            mpfr_prec_t prec = 128 + 64 * level;
            CertifiedRoot rx = xc.refined_bits(32 + 32L * level);
            CertifiedRoot ry = yc.refined_bits(32 + 32L * level);
            CInterval bx = rx.box(prec), by = ry.box(prec);
            CInterval l = CInterval::exact_real(lambda, prec);
            return bx + l * by;
        };
        // locate gamma among the roots of sf
        auto roots = isolate_roots(sf, policy);
        std::size_t gi = roots.size();
        for (int level = 0; level < 48 && gi == roots.size(); ++level) {
            CInterval box = enclose(level);
            std::size_t hits = 0, last = 0;
            for (std::size_t i = 0; i < roots.size(); ++i) {
                Rational rl = box.re.lo_rational() - roots[i].radius;
                Rational rh = box.re.hi_rational() + roots[i].radius;
                Rational il = box.im.lo_rational() - roots[i].radius;
                Rational ih = box.im.hi_rational() + roots[i].radius;
                if (roots[i].center_re >= rl && roots[i].center_re <= rh &&
                    roots[i].center_im >= il && roots[i].center_im <= ih) {
                    ++hits;
                    last = i;
                }
            }
            if (hits == 1) {
                gi = last;
                break;
            }
            for (auto& r : roots)
                if (r.radius > 0) r = refine_root(sf, r, r.radius / 64, policy);
        }
        if (gi == roots.size()) continue;

        IntPoly g = minimal_polynomial_of_root(sf, roots[gi], policy);
        if (g.degree() > degree_ceiling)
            throw UnsupportedPlaceStructure("field degree exceeds the configured ceiling");

        // express x as a polynomial in gamma via a gcd in K[t]:
        // gcd( px(t), py((gamma - t)/lambda) ) = (t - x) when gamma is primitive
        auto K = std::make_shared<NumberField>(g);
        NFElem gamma = NFElem::generator(K);
        auto lift = [&](const IntPoly& ip) {
            NFPoly out;
            for (const auto& c : ip.coeffs())
                out.push_back(NFElem::from_rational(K, Rational(c)));
            return nfpoly_trim(std::move(out));
        };
        NFPoly px = lift(x.minpoly());
        // py((gamma - t)/lambda) as a polynomial in t
        NFPoly comp{NFElem::from_rational(K, Rational(0))};
        NFPoly linear{gamma.scale(Rational(1) / lambda),
                      NFElem::from_rational(K, Rational(-1) / lambda)};
        for (int i = y.minpoly().degree(); i >= 0; --i) {
            comp = nfpoly_mul(comp, linear);
            NFElem c = NFElem::from_rational(K, Rational(y.minpoly()[static_cast<std::size_t>(i)]));
            if (comp.empty())
                comp = NFPoly{c};
            else
                comp[0] = comp[0] + c;
        }
        NFPoly gcd = nfpoly_gcd_monic(px, comp);
        if (nfpoly_degree(gcd) != 1) continue;  // lambda not primitive enough
        NFElem x_elem = -gcd[0];  // monic (t - x)
        join.defining = g;
        join.d = g.degree();
        join.lambda = lambda;
        join.x_rep = x_elem.rep();
        // y = (gamma - x)/lambda
        join.y_rep = (gamma - x_elem).scale(Rational(1) / lambda).rep();
        join.embeddings = isolate_roots(g, policy);

        // consistency: x_rep evaluated at gamma's enclosure must meet x's disk
        CInterval xb = join.x_rep.eval(enclose(4), 256);
        CertifiedRoot rx = x.refined_bits(48);
        if (!(xb.re.lo_rational() <= rx.center_re + rx.radius &&
              xb.re.hi_rational() >= rx.center_re - rx.radius))
            throw Error("primitive element expression failed consistency check");
        return join;
    }
    throw UnsupportedPlaceStructure("no primitive element found for the field join");
}

// ------------------------------------------------------------- place system

LogValue LogValue::zero(mpfr_prec_t prec) {
    LogValue v;
    v.exact = true;
    v.coeff = 0;
    v.base = 2;
    v.value = RInterval::zero(prec);
    return v;
}

LogValue LogValue::exact_log(const Rational& coeff, const Integer& base, mpfr_prec_t prec) {
    LogValue v;
    v.exact = true;
    v.coeff = coeff;
    v.base = base;
    v.value = RInterval::log_integer(base, prec).mul_rational(coeff);
    return v;
}

LogValue LogValue::inexact(RInterval iv) {
    LogValue v;
    v.exact = false;
    v.value = std::move(iv);
    return v;
}

std::string LogValue::describe() const {
    if (exact) {
        if (coeff == 0) return "0";
        return to_string(coeff) + "*log(" + base.get_str() + ")";
    }
    return "[" + value.lo_string() + ", " + value.hi_string() + "]";
}

std::vector<std::pair<Integer, int>> factor_integer(const Integer& n_in) {
    Integer n = abs(n_in);
    std::vector<std::pair<Integer, int>> out;
    if (n <= 1) return out;
    for (Integer p = 2; p * p <= n && p < 1000000; p = (p == 2 ? Integer(3) : p + 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) {
        if (!mpz_probab_prime_p(n.get_mpz_t(), 40))
            throw UnsupportedPlaceStructure("could not factor " + n.get_str() +
                                            " for the finite place set");
        out.emplace_back(n, 1);
    }
    return out;
}

namespace {

long valuation(Rational q, const Integer& p) {
    long v = 0;
    Integer num = q.get_num(), den = q.get_den();
    while (num != 0 && num % p == 0) {
        num /= p;
        ++v;
    }
    while (den % p == 0) {
        den /= p;
        --v;
    }
    return v;
}

struct RowEntry {
    LogValue x, y;
};

// exact comparison of |c1| log b1 vs |c2| log b2: b1^{|c1|k} vs b2^{|c2|k}
int cmp_exact_logs(const Rational& c1, const Integer& b1, const Rational& c2, const Integer& b2) {
    Rational a1 = abs(c1), a2 = abs(c2);
    if (a1 == 0 && a2 == 0) return 0;
    if (a1 == 0) return -1;
    if (a2 == 0) return 1;
    Integer k = lcm(a1.get_den(), a2.get_den());
    Rational s1 = a1 * Rational(k);
    Rational s2 = a2 * Rational(k);
    Integer e1 = s1.get_num();
    Integer e2 = s2.get_num();
    Integer lhs = ipow(b1, e1.get_ui());
    Integer rhs = ipow(b2, e2.get_ui());
    return cmp(lhs, rhs);
}

}  // namespace

PlaceSystem compute_C0(const AlgebraicNumber& x, const AlgebraicNumber& y, const FieldJoin& K,
                       const PrecisionPolicy& policy) {
    PlaceSystem ps;
    ps.field_defining = K.defining;
    ps.d = K.d;
    const mpfr_prec_t prec = 192;

    std::vector<RowEntry> rows;

    if (K.d == 1) {
        // both rational: archimedean place plus p-adic places of Q
        Rational xv = K.x_rep.is_zero() ? Rational(0) : K.x_rep[0];
        Rational yv = K.y_rep.is_zero() ? Rational(0) : K.y_rep[0];
        if (xv == 0 || yv == 0) throw Error("compute_C0 requires nonzero inputs");
        auto abs_log_exact = [&](const Rational& v) -> LogValue {
            Rational a = abs(v);
            if (a.get_den() == 1 && a.get_num() > 1)
                return LogValue::exact_log(Rational(1), a.get_num(), prec);
            if (a.get_num() == 1 && a.get_den() > 1)
                return LogValue::exact_log(Rational(-1), a.get_den(), prec);
            LogValue lv = LogValue::inexact(RInterval::from_rational(a, prec).log());
            return lv;
        };
        Place inf;
        inf.kind = Place::Kind::Archimedean;
        inf.tag = "inf";
        RowEntry re{abs_log_exact(xv), abs_log_exact(yv)};
        // the infinite place joins S when either log is nonzero
        if (!(abs(xv) == 1 && abs(yv) == 1)) {
            ps.places.push_back(inf);
            rows.push_back(re);
        }
        std::vector<Integer> primes;
        auto add_primes = [&](const Rational& v) {
            for (auto& [p, e] : factor_integer(v.get_num())) primes.push_back(p);
            for (auto& [p, e] : factor_integer(v.get_den())) primes.push_back(p);
        };
        add_primes(xv);
        add_primes(yv);
        std::sort(primes.begin(), primes.end());
        primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
        for (const auto& p : primes) {
            long vx = valuation(xv, p), vy = valuation(yv, p);
            if (vx == 0 && vy == 0) continue;
            Place pl;
            pl.kind = Place::Kind::Finite;
            pl.prime = p;
            pl.tag = p.get_str() + "-adic";
            ps.places.push_back(pl);
            rows.push_back({vx == 0 ? LogValue::zero(prec)
                                    : LogValue::exact_log(Rational(-vx), p, prec),
                            vy == 0 ? LogValue::zero(prec)
                                    : LogValue::exact_log(Rational(-vy), p, prec)});
        }
    } else {
        // archimedean places of K from the embeddings, conjugate pairs merged
        AlgebraicNumber xc = x, yc = y;
        std::vector<CertifiedRoot> emb = K.embeddings;
        for (std::size_t i = 0; i < emb.size(); ++i) {
            const CertifiedRoot& g = emb[i];
            if (!g.real && g.center_im < 0) continue;  // one place per pair
            int dv = g.real ? 1 : 2;
            auto log_norm = [&](const RatPoly& rep,
                                const AlgebraicNumber& owner) -> LogValue {
                // |rep(gamma_v)|, decided nonzero-vs-one exactly when needed
                CertifiedRoot ge = g;
                IntPoly def = K.defining;
                for (int level = 0; level < 10; ++level) {
                    CInterval tau = rep.eval(ge.box(prec + 64 * level), prec + 64 * level);
                    RInterval mod = tau.abs();
                    if (!mod.is_positive()) {
                        if (ge.radius > 0) ge = refine_root(def, ge, ge.radius / 256, policy);
                        continue;
                    }
                    if (mod.certainly_gt(Rational(1)) || mod.certainly_lt(Rational(1)))
                        return LogValue::inexact(
                            mod.log().mul_rational(Rational(dv, K.d)));
                    // straddling 1: decide |tau| == 1 exactly via the conjugate
                    AlgExpr n2;
                    if (owner.is_rational()) {
                        Rational v = owner.rational_value();
                        n2 = alg_expr_rational(v * v);
                    } else {
                        // tau is a conjugate of the owner: same minimal polynomial
                        IntPoly mp = owner.minpoly();
                        auto conj_roots = isolate_roots(mp, policy);
                        // locate tau among the owner's conjugates
                        std::size_t ci = conj_roots.size();
                        CertifiedRoot ge2 = ge;
                        for (int round = 0; round < 48 && ci == conj_roots.size(); ++round) {
                            CInterval tb =
                                rep.eval(ge2.box(prec + 32 * round), prec + 32 * round);
                            std::size_t hits = 0, last = 0;
                            for (std::size_t j = 0; j < conj_roots.size(); ++j) {
                                Rational rl = tb.re.lo_rational() - conj_roots[j].radius;
                                Rational rh = tb.re.hi_rational() + conj_roots[j].radius;
                                Rational il = tb.im.lo_rational() - conj_roots[j].radius;
                                Rational ih = tb.im.hi_rational() + conj_roots[j].radius;
                                if (conj_roots[j].center_re >= rl &&
                                    conj_roots[j].center_re <= rh &&
                                    conj_roots[j].center_im >= il &&
                                    conj_roots[j].center_im <= ih) {
                                    ++hits;
                                    last = j;
                                }
                            }
                            if (hits == 1) {
                                ci = last;
                                break;
                            }
                            if (ge2.radius > 0)
                                ge2 = refine_root(def, ge2, ge2.radius / 256, policy);
                            for (auto& cr : conj_roots)
                                if (cr.radius > 0)
                                    cr = refine_root(mp, cr, cr.radius / 256, policy);
                        }
                        if (ci == conj_roots.size())
                            throw PrecisionExhausted("embedding-conjugate match failed");
                        n2 = alg_expr_norm2_root(mp, conj_roots[ci]);
                    }
                    if (alg_expr_equal(n2, alg_expr_rational(Rational(1)), policy))
                        return LogValue::zero(prec);
                    if (ge.radius > 0) ge = refine_root(def, ge, ge.radius / 256, policy);
                }
                throw PrecisionExhausted("could not certify a log-valuation sign");
            };
            LogValue lx = log_norm(K.x_rep, xc);
            LogValue ly = log_norm(K.y_rep, yc);
            bool zero_row = lx.exact && lx.coeff == 0 && ly.exact && ly.coeff == 0;
            if (zero_row) continue;  // neither norm differs from 1: not in S
            Place pl;
            pl.kind = Place::Kind::Archimedean;
            pl.embedding_index = static_cast<int>(i);
            pl.local_degree = dv;
            pl.tag = "inf#" + std::to_string(i) + (dv == 2 ? " (pair)" : "");
            ps.places.push_back(pl);
            rows.push_back({lx, ly});
        }
    }

    if (ps.places.size() < 2)
        throw UnsupportedPlaceStructure(
            "fewer than two usable places; cannot build a nonsingular pair");

    for (auto& r : rows) {
        ps.row_x.push_back(r.x);
        ps.row_y.push_back(r.y);
    }

    // choose the pair with the best certified |det| lower bound
    Rational best_lb = -1;
    std::size_t bi = 0, bj = 1;
    bool best_ff = false;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            RInterval det = rows[i].x.value * rows[j].y.value -
                            rows[j].x.value * rows[i].y.value;
            RInterval ad = det.abs();
            Rational lb = ad.lo_rational();
            if (lb < 0) lb = 0;
            bool ff = ps.places[i].kind == Place::Kind::Finite &&
                      ps.places[j].kind == Place::Kind::Finite;
            bool better;
            if (lb > best_lb * Rational(1048577, 1048576))
                better = true;
            else if (best_lb > 0 && lb >= best_lb * Rational(1048575, 1048576) && ff && !best_ff)
                better = true;  // near-tie: prefer the exactly representable pair
            else
                better = false;
            if (better) {
                best_lb = lb;
                bi = i;
                bj = j;
                best_ff = ff;
            }
        }
    if (!(best_lb > 0))
        throw UnsupportedPlaceStructure(
            "no place pair with certifiably nonsingular valuation matrix "
            "(rows may be proportional)");

    ps.v1 = bi;
    ps.v2 = bj;
    ps.det = rows[bi].x.value * rows[bj].y.value - rows[bj].x.value * rows[bi].y.value;
    ps.abs_det_lower = best_lb;

    const LogValue& x1 = rows[bi].x;
    const LogValue& x2 = rows[bj].x;
    const LogValue& y1 = rows[bi].y;
    const LogValue& y2 = rows[bj].y;

    RInterval den_y = RInterval::max(y1.value.abs(), y2.value.abs());
    RInterval den_x = RInterval::max(x1.value.abs(), x2.value.abs());
    RInterval detabs = ps.det.abs();
    ps.c1_tilde = LogValue::inexact(detabs / den_y.mul_rational(Rational(2)));
    ps.c2_tilde = LogValue::inexact(detabs / den_x.mul_rational(Rational(2)));

    // exact forms for a diagonal finite-finite pair:
    // det = (c_x1 log p)(c_y2 log q) with zero off-diagonal entries
    bool ff = ps.places[bi].kind == Place::Kind::Finite &&
              ps.places[bj].kind == Place::Kind::Finite;
    if (ff && x1.exact && y1.exact && x2.exact && y2.exact) {
        // |det| = |c_x1 c_y2 - c_x2 c_y1| only factors cleanly when one
        // product vanishes; handle the diagonal/anti-diagonal cases
        bool diag = (x2.coeff == 0 && y1.coeff == 0 && x1.coeff != 0 && y2.coeff != 0);
        bool anti = (x1.coeff == 0 && y2.coeff == 0 && x2.coeff != 0 && y1.coeff != 0);
        if (diag || anti) {
            const LogValue& ax = diag ? x1 : x2;  // the x entry, coeff * log p
            const LogValue& ay = diag ? y2 : y1;  // the y entry, coeff * log q
            // C~1 = |det| / (2 max|y-entries|) = |ax.coeff| log p * |ay..| / (2 |ay..|)
            ps.c1_tilde = LogValue::exact_log(abs(ax.coeff) / 2, ax.base, prec);
            ps.c2_tilde = LogValue::exact_log(abs(ay.coeff) / 2, ay.base, prec);
        }
    }

    Rational S(static_cast<long>(ps.places.size()));
    if (ps.c1_tilde.exact && ps.c2_tilde.exact) {
        int c = cmp_exact_logs(ps.c1_tilde.coeff, ps.c1_tilde.base, ps.c2_tilde.coeff,
                               ps.c2_tilde.base);
        const LogValue& m = c <= 0 ? ps.c1_tilde : ps.c2_tilde;
        ps.c0 = LogValue::exact_log(m.coeff / S, m.base, prec);
    } else {
        ps.c0 = LogValue::inexact(
            RInterval::min(ps.c1_tilde.value, ps.c2_tilde.value).mul_rational(Rational(1) / S));
    }
    ps.c0_lower = ps.c0.value.lo_rational();
    if (!(ps.c0_lower > 0))
        throw PrecisionExhausted("C0 lower bound not certifiably positive");
    return ps;
}

Rational poly_ratio_height_bound(const std::vector<RInterval>& h0_coeffs_p, int deg_p,
                                 const std::vector<RInterval>& h0_coeffs_q, int deg_q) {
    // h0(p(n)/q(m)) <= sum h0(coeffs) + (deg p + deg q) log 2     [n-free part]
    //                + (sum_j j) log n + (sum_j j) log m          [power part]
    // folded at max(n, m) >= 2 into C log max(n, m).
    mpfr_prec_t prec = 128;
    RInterval nfree = RInterval::zero(prec);
    for (const auto& h : h0_coeffs_p) nfree = nfree + h;
    for (const auto& h : h0_coeffs_q) nfree = nfree + h;
    nfree = nfree + RInterval::log2(prec).mul_rational(Rational(deg_p + deg_q));
    RInterval scaled = nfree / RInterval::log2(prec);
    Rational tri_p((static_cast<long>(deg_p) * (deg_p + 1)) / 2);
    Rational tri_q((static_cast<long>(deg_q) * (deg_q + 1)) / 2);
    return scaled.hi_rational() + tri_p + tri_q;
}

}  // namespace pillai
