#include "pillai/bound_chain.hpp"

#include <algorithm>

#include "pillai/linear_forms.hpp"

namespace pillai {

// ------------------------------------------------------ solve_log_inequality

namespace {

// sign of f(m) = A m - B (log m)^p - C; exact when B = 0
int sign_f(const Rational& A, const Rational& B, int p, const Rational& C, const Integer& m) {
    Rational lin = A * Rational(m) - C;
    if (B == 0) return sgn(lin);
    for (mpfr_prec_t prec = 128; prec <= (1 << 20); prec *= 2) {
        RInterval lg = RInterval::log_integer(m, prec).pow_ui(static_cast<unsigned long>(p));
        RInterval f = RInterval::from_rational(lin, prec) - lg.mul_rational(B);
        if (f.is_positive()) return 1;
        if (f.is_negative()) return -1;
    }
    throw PrecisionExhausted("sign of log-inequality undecided at m = " + m.get_str());
}

// sign of g'(m) = A - p B (log m)^{p-1} / m; exact when p = 1
int sign_gp(const Rational& A, const Rational& B, int p, const Integer& m) {
    if (p == 1) return sgn(A - B / Rational(m));
    for (mpfr_prec_t prec = 128; prec <= (1 << 20); prec *= 2) {
        RInterval lg = RInterval::log_integer(m, prec).pow_ui(static_cast<unsigned long>(p - 1));
        RInterval g = RInterval::from_rational(A, prec) -
                      lg.mul_rational(B * p / Rational(m));
        if (g.is_positive()) return 1;
        if (g.is_negative()) return -1;
    }
    throw PrecisionExhausted("derivative sign undecided at m = " + m.get_str());
}

// least m in (lo, hi] with pred(m) true; pred monotone on the range, pred(hi) true
template <typename Pred>
Integer first_true(Integer lo, Integer hi, Pred pred) {
    while (lo + 1 < hi) {
        Integer mid = (lo + hi) / 2;
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace

Integer solve_log_inequality(const Rational& A, const Rational& B, int p, const Rational& C) {
    if (!(A > 0)) throw Error("solve_log_inequality needs A > 0");
    if (B < 0) throw Error("solve_log_inequality needs B >= 0");
    if (p < 1) throw Error("solve_log_inequality needs p >= 1");
    if (B == 0) {
        // A m > C for all m >= m*: m* = floor(C/A) + 1
        Rational t = C / A;
        Integer fl;
        mpz_fdiv_q(fl.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
        Integer m = fl + 1;
        return m < 2 ? Integer(2) : m;
    }
    auto f_pos = [&](const Integer& m) { return sign_f(A, B, p, C, m) > 0; };
    auto gp_pos = [&](const Integer& m) { return sign_gp(A, B, p, m) > 0; };

    // (log m)^{p-1}/m decreases beyond mu
    Integer mu = 2;
    if (p > 1) {
        RInterval e = RInterval::exact(p - 1, 256).exp();
        Rational hi = e.hi_rational();
        mu = hi.get_num() / hi.get_den() + 2;
    }
    Integer m_t = mu;
    int guard = 0;
    while (!gp_pos(m_t)) {
        m_t *= 2;
        if (++guard > 4000) throw PrecisionExhausted("monotone tail not found");
    }
    Integer hi = m_t;
    guard = 0;
    while (!f_pos(hi)) {
        hi *= 2;
        if (++guard > 4000) throw PrecisionExhausted("positivity never reached");
    }
    if (!f_pos(m_t)) {
        // strictly increasing on [m_t, inf): the last crossing is here
        return first_true(m_t, hi, f_pos);
    }
    if (gp_pos(mu)) {
        // f increasing on [mu, inf)
        if (!f_pos(mu)) return first_true(mu, hi, f_pos);
        // f(mu) > 0 and increasing beyond: the last failure lives in [2, mu)
        Integer lastfail = 1;
        for (Integer m = 2; m < mu; m += 1)
            if (!f_pos(m)) lastfail = m;
        Integer lf1 = lastfail + 1;
        return lf1 < 2 ? Integer(2) : lf1;
    }
    // a dip exists: its bottom is where g' turns positive
    Integer m_c2 = first_true(mu, m_t, gp_pos);
    if (!f_pos(m_c2)) return first_true(m_c2, hi, f_pos);
    // the dip stays positive, so {f <= 0} is an initial segment of [2, m_c2]
    Integer res = f_pos(Integer(2)) ? Integer(2) : first_true(Integer(2), m_c2, f_pos);
    return res;
}

// ------------------------------------------------------------------- orient

std::pair<const SequenceAnalysis*, const SequenceAnalysis*> orient(const SequenceAnalysis& a,
                                                                   const SequenceAnalysis& b,
                                                                   bool& swapped) {
    const mpfr_prec_t prec = 192;
    for (int level = 0; level < 28; ++level) {
        CertifiedRoot ra = a.root_box(static_cast<std::size_t>(a.dominant_root), level);
        CertifiedRoot rb = b.root_box(static_cast<std::size_t>(b.dominant_root), level);
        RInterval ma = ra.modulus(prec + 32 * level);
        RInterval mb = rb.modulus(prec + 32 * level);
        if (mb.certainly_lt(ma)) {
            swapped = false;
            return {&a, &b};
        }
        if (ma.certainly_lt(mb)) {
            swapped = true;
            return {&b, &a};
        }
        if (level == 3) {
            // exact modulus equality test
            const IntPoly& pa = a.alpha->minpoly();
            const IntPoly& pb = b.alpha->minpoly();
            if (alg_expr_equal(alg_expr_norm2_root(pa, ra), alg_expr_norm2_root(pb, rb)))
                throw HypothesisFailure("orient",
                                        "dominant roots have equal modulus (inconsistent with "
                                        "multiplicative independence of real roots > 1)");
        }
    }
    throw PrecisionExhausted("could not order the dominant moduli");
}

// ---------------------------------------------------------------- the chain

namespace {

struct Chain {
    const SequenceAnalysis& U;
    const SequenceAnalysis& V;
    const DeriveOptions& opts;
    BoundReport& rep;
    mpfr_prec_t prec;

    // rational snapshots (refined during setup)
    Rational alo = 0, ahi = 0;  // |alpha| in [alo, ahi]
    Rational blo = 0, bhi = 0;  // |beta|
    Rational ap = 0, bp = 0;    // alpha', beta'
    Rational a_pr = 0, b_pr = 0;  // a', b'
    int sigma = 0, tau = 0;
    Rational C1 = 0, C2 = 0, C5 = 0, C6 = 0;  // U growth constants
    Rational C3 = 0, C4 = 0, C7 = 0, C8 = 0;  // V growth constants
    Rational rho_a = 0, rho_b = 0;    // coefficient-polynomial infima
    Rational ubar_a = 0, ubar_b = 0;  // sum of |coefficient| upper bounds
    Rational Ctilde = 0, Ctilde_a = 0, Ctilde_b = 0;  // h0 poly-ratio bounds
    int d = 1;
    Rational h0a_hi = 0, h0b_hi = 0;  // h0(alpha), h0(beta) upper bounds
    Rational hpa_hi = 0, hpb_hi = 0;  // h'(|alpha|), h'(|beta|) upper bounds
    Rational bw3d_hi = 0;             // C(3, d) upper bound
    Rational logM4p1_lo = 0;  // universal log m lower bound (log 3)
    Rational logM3_lo = 0;    // universal log M3 lower bound (log 2)
    Rational log_a_ratio_lo = 0, log_a_ratio_hi = 0;  // log(|alpha|/alpha')
    Rational log_b_ratio_lo = 0, log_b_ratio_hi = 0;  // log(|beta|/beta')
    Rational log_alpha_hi = 0, log_beta_hi = 0;       // upper bounds of log moduli

    void put(const std::string& name, int index, const Rational& v, const std::string& formula,
             std::vector<std::string> deps, const std::string& anchor) {
        rep.constants[name] = v;
        TraceEntry t;
        t.name = name;
        t.index = index;
        t.value = to_string(v);
        t.formula = formula;
        t.depends_on = std::move(deps);
        t.anchor = anchor;
        rep.trace.push_back(std::move(t));
    }
    void put_int(const std::string& name, const Integer& v, const std::string& formula,
                 std::vector<std::string> deps, const std::string& anchor) {
        TraceEntry t;
        t.name = name;
        t.value = v.get_str();
        t.formula = formula;
        t.depends_on = std::move(deps);
        t.anchor = anchor;
        rep.trace.push_back(std::move(t));
    }
};

Rational log_lo(const Rational& x, mpfr_prec_t prec) {
    return RInterval::from_rational(x, prec).log().lo_rational();
}
Rational log_hi(const Rational& x, mpfr_prec_t prec) {
    return RInterval::from_rational(x, prec).log().hi_rational();
}
Rational log2_hi(mpfr_prec_t prec) { return RInterval::log2(prec).hi_rational(); }

Rational log_plus_hi(const Rational& x, mpfr_prec_t prec) {
    if (x <= 1) return 0;
    return log_hi(x, prec);
}

// inf over n > T of |coefpoly(n)| / n^deg, certified positive
Rational inf_coeff_ratio(const SequenceAnalysis& an, const Integer& T) {
    // tail bound: lead_lo - sum upp_j / N for n >= N
    Rational lead = an.alead_abs_lower;
    Rational sum_low = 0;
    for (int j = 0; j < an.sigma; ++j) sum_low += an.acoef_abs_upper[static_cast<std::size_t>(j)];
    // least Ntail with tail positive
    Integer ntail = T + 1;
    if (lead <= 0) throw Error("internal: nonpositive leading coefficient bound");
    if (an.sigma > 0) {
        Rational need = 2 * sum_low / lead;  // tail >= lead/2 from here on
        Integer need_i = need.get_num() / need.get_den() + 1;
        if (ntail < need_i) ntail = need_i;
    }
    Rational tail = lead;
    if (an.sigma > 0 && ntail > 0) tail = lead - sum_low / Rational(ntail);
    Rational best = tail;
    // enumerate (T, ntail) exactly when the range is small enough
    if (ntail - T > 100000)
        throw PrecisionExhausted("coefficient infimum enumeration too large");
    for (Integer n = T + 1; n < ntail; n += 1) {
        long nl = n.get_si();
        for (int level = 0;; ++level) {
            if (level > 24) throw PrecisionExhausted("coefficient infimum refinement stalled");
            RInterval v = an.dominant_coeff_abs(nl, 192 + 64 * level, level);
            if (v.is_positive()) {
                Rational r = v.lo_rational() / qpow(Rational(nl), an.sigma);
                if (r < best) best = r;
                break;
            }
        }
    }
    if (!(best > 0)) throw PrecisionExhausted("coefficient infimum not certifiably positive");
    return best;
}

void run_chain(Chain& c) {
    const mpfr_prec_t prec = c.prec;
    BoundReport& rep = c.rep;

    // ---- growth constants of the oriented pair ----
    c.sigma = c.U.sigma;
    c.tau = c.V.sigma;
    c.C1 = c.U.C1;
    c.C2 = c.U.C2 * c.opts.u_c2_scale;
    c.alo = c.U.alpha_abs_lower;
    c.ahi = c.U.alpha_abs_upper;
    c.blo = c.V.alpha_abs_lower;
    c.bhi = c.V.alpha_abs_upper;
    c.ap = c.U.alpha_prime;
    c.bp = c.V.alpha_prime;
    c.a_pr = c.U.a_prime;
    c.b_pr = c.V.a_prime;
    if (c.opts.u_c2_scale != 1) {
        c.C5 = c.C2 * (1 + Rational(1) / c.alo);
        c.C6 = c.C1 - c.C2 / c.alo;
        if (!(c.C6 > 0))
            throw HypothesisFailure("growth", "perturbed C2 violates C2/C1 < |alpha|");
    } else {
        c.C5 = c.U.C5;
        c.C6 = c.U.C6;
    }
    c.C3 = c.V.C1;
    c.C4 = c.V.C2;
    c.C7 = c.V.C5;
    c.C8 = c.V.C6;
    c.put("C1", 1, c.C1, "growth sandwich lower (U)", {}, "growth");
    c.put("C2", 2, c.C2, "growth sandwich upper (U)", {}, "growth");
    c.put("C3", 3, c.C3, "growth sandwich lower (V)", {}, "growth");
    c.put("C4", 4, c.C4, "growth sandwich upper (V)", {}, "growth");
    c.put("C5", 5, c.C5, "C2*(1 + 1/|alpha|)", {"C2"}, "difference-bounds");
    c.put("C6", 6, c.C6, "C1*(1 - C2/(C1|alpha|))", {"C1", "C2"}, "difference-bounds");
    c.put("C7", 7, c.C7, "C4*(1 + 1/|beta|)", {"C4"}, "difference-bounds");
    c.put("C8", 8, c.C8, "C3*(1 - C4/(C3|beta|))", {"C3", "C4"}, "difference-bounds");

    // ---- cross constants: C9, M3, N3, N4, M4 ----
    Rational log_alo = log_lo(c.alo, prec);
    Rational log_ahi = log_hi(c.ahi, prec);
    Rational log_blo = log_lo(c.blo, prec);
    Rational log_bhi = log_hi(c.bhi, prec);
    c.log_alpha_hi = log_ahi;
    c.log_beta_hi = log_bhi;
    Rational qhi = log_bhi / log_alo;  // upper bound of log|beta|/log|alpha|
    if (!(qhi < 1)) throw PrecisionExhausted("log-ratio of dominant moduli not below 1");

    Rational C9 = 0;
    if (c.C7 > c.C6) C9 = log_hi(c.C7 / c.C6, prec) / log_alo;
    c.put("C9", 9, C9, "max{0, log(C7/C6)/log|alpha|}", {"C6", "C7"}, "cross-inequality");

    rep.M3 = solve_log_inequality(1 - qhi, Rational(c.tau) / log_alo, 1, C9);
    c.put_int("M3", rep.M3, "least m with m > m log|beta|/log|alpha| + tau log m/log|alpha| + C9",
              {"C9"}, "cross-inequality");

    // N3: least n with C5 n^sigma |alpha|^n >= C8 M3^tau |beta|^M3
    {
        Rational rhs = c.C8 * qpow(Rational(rep.M3), c.tau) *
                       qpow(c.blo, rep.M3.get_ui());
        Integer n = 1;
        int guard = 0;
        while (c.C5 * qpow(Rational(n), c.sigma) * qpow(c.ahi, n.get_ui()) < rhs) {
            n += 1;
            if (++guard > 1000000) throw PrecisionExhausted("N3 search too long");
        }
        rep.N3 = n;
    }
    c.put_int("N3", rep.N3, "least n compatible with C5 n^sigma |alpha|^n >= C8 m^tau |beta|^m at m = M3",
              {"C5", "C8", "M3"}, "cross-inequality");

    rep.N4 = std::max({Integer(c.U.N0), Integer(c.U.N1), Integer(c.U.N2), rep.N3, Integer(2)});
    rep.M4 = std::max({Integer(c.V.N0), Integer(c.V.N1), Integer(c.V.N2), rep.M3, Integer(2)});
    c.put_int("N4", rep.N4, "max{N0, N1, N2, N3, 2}", {"N3"}, "thresholds");
    c.put_int("M4", rep.M4, "max{M0, M1, M2, M3, 2}", {"M3"}, "thresholds");

    // monotone absorption denominators: every admissible m satisfies
    // m > M4 >= 2 (so log m >= log 3) and M3 >= 2 (so log M3 >= log 2);
    // the universal bounds keep the chain monotone in its upstream constants
    c.logM4p1_lo = log_lo(Rational(3), prec);
    c.logM3_lo = log_lo(Rational(2), prec);

    // ---- coefficient-polynomial magnitude bounds past the thresholds ----
    Integer rho_from_u = std::max({Integer(c.U.N0), Integer(c.U.N1), Integer(c.U.N2), Integer(2)});
    Integer rho_from_v = std::max({Integer(c.V.N0), Integer(c.V.N1), Integer(c.V.N2), Integer(2)});
    c.rho_a = inf_coeff_ratio(c.U, rho_from_u);
    c.rho_b = inf_coeff_ratio(c.V, rho_from_v);
    c.ubar_a = 0;
    for (const auto& v : c.U.acoef_abs_upper) c.ubar_a += v;
    c.ubar_b = 0;
    for (const auto& v : c.V.acoef_abs_upper) c.ubar_b += v;
    c.put("rho_a", -1, c.rho_a, "inf |a(n)|/n^sigma past the U thresholds", {}, "coefficient-bounds");
    c.put("rho_b", -1, c.rho_b, "inf |b(m)|/m^tau past the V thresholds", {}, "coefficient-bounds");
    c.put("ubar_a", -1, c.ubar_a, "sum of |a| coefficient upper bounds", {}, "coefficient-bounds");
    c.put("ubar_b", -1, c.ubar_b, "sum of |b| coefficient upper bounds", {}, "coefficient-bounds");

    // ---- heights and the field join ----
    AlgebraicNumber alpha_abs = c.U.alpha->abs_value();
    AlgebraicNumber beta_abs = c.V.alpha->abs_value();
    FieldJoin join = compose_field(*c.U.alpha, *c.V.alpha, c.opts.field_degree_ceiling,
                                   c.opts.precision);
    c.d = join.d;
    c.put("d", -1, Rational(c.d), "[Q(alpha, beta) : Q]", {}, "field");
    c.h0a_hi = weil_height(*c.U.alpha, prec, 1).hi_rational();
    c.h0b_hi = weil_height(*c.V.alpha, prec, 1).hi_rational();
    c.hpa_hi = modified_height(alpha_abs, c.d, prec, 1).hi_rational();
    c.hpb_hi = modified_height(beta_abs, c.d, prec, 1).hi_rational();
    c.bw3d_hi = bw_constant(3, c.d, prec).hi_rational();
    c.put("h0_alpha", -1, c.h0a_hi, "h0(alpha) upper bound", {}, "heights");
    c.put("h0_beta", -1, c.h0b_hi, "h0(beta) upper bound", {}, "heights");
    c.put("hp_alpha", -1, c.hpa_hi, "h'(|alpha|) upper bound", {"d"}, "heights");
    c.put("hp_beta", -1, c.hpb_hi, "h'(|beta|) upper bound", {"d"}, "heights");
    c.put("bw_3_d", -1, c.bw3d_hi, "C(3, d) upper bound", {"d"}, "baker-wustholz");

    std::vector<RInterval> ha = c.U.dominant_coeff_heights(prec);
    std::vector<RInterval> hb = c.V.dominant_coeff_heights(prec);
    c.Ctilde = poly_ratio_height_bound(ha, c.sigma, hb, c.tau);
    c.Ctilde_a = poly_ratio_height_bound(ha, c.sigma, ha, c.sigma);
    c.Ctilde_b = poly_ratio_height_bound(hb, c.tau, hb, c.tau);
    c.put("Ctilde", -1, c.Ctilde, "h0(a(n)/b(m)) <= Ctilde log m", {}, "poly-heights");
    c.put("Ctilde_a", -1, c.Ctilde_a, "h0(a(n1)/a(n)) <= Ctilde_a log m", {}, "poly-heights");
    c.put("Ctilde_b", -1, c.Ctilde_b, "h0(b(m1)/b(m)) <= Ctilde_b log m", {}, "poly-heights");

    c.log_a_ratio_lo = log_lo(c.alo / c.ap, prec);
    c.log_a_ratio_hi = log_hi(c.ahi / c.ap, prec);
    c.log_b_ratio_lo = log_lo(c.blo / c.bp, prec);
    c.log_b_ratio_hi = log_hi(c.bhi / c.bp, prec);

    const Rational lg2 = log2_hi(prec);
    const Rational LM = c.logM4p1_lo;  // log m >= LM > 1 for every admissible m

    // ---- Case 0 ----
    Rational ratio76 = c.C7 / c.C6;
    Rational C11 = ratio76 * c.ubar_a / c.rho_b;
    Rational C12 = ratio76 * c.a_pr / c.rho_b;
    Rational C13 = C12;
    Rational C14 = c.b_pr / c.rho_b;
    Rational C15 = C14;
    Rational C16 = 2 * (C11 + C12 + C13);
    Rational C17 = 2 * (1 + C14 + C15);
    c.put("C11", 11, C11, "(C7/C6) ubar_a / rho_b", {"C6", "C7", "ubar_a", "rho_b"}, "case0");
    c.put("C12", 12, C12, "(C7/C6) a' / rho_b", {"C6", "C7", "rho_b"}, "case0");
    c.put("C13", 13, C13, "(C7/C6) a' / rho_b (alpha'^2 >= |alpha| route)", {"C12"}, "case0");
    c.put("C14", 14, C14, "b' / rho_b", {"rho_b"}, "case0");
    c.put("C15", 15, C15, "b' / rho_b", {"rho_b"}, "case0");
    c.put("C16", 16, C16, "2 (C11 + C12 + C13)", {"C11", "C12", "C13"}, "case0");
    c.put("C17", 17, C17, "2 (1 + C14 + C15)", {"C14", "C15"}, "case0");

    // h'(a(n)/b(m)) <= Ctilde' log m
    Rational K0 = std::max(log_plus_hi(c.ubar_a / c.rho_b, prec),
                           log_plus_hi(c.ubar_b / c.rho_a, prec));
    Rational Ctp = c.Ctilde + Rational(c.sigma + c.tau) / c.d + (K0 + 1) / (c.d * LM);
    c.put("Ctilde_prime", -1, Ctp, "Ctilde + (sigma+tau)/d + (K0+1)/(d log(M4+1))",
          {"Ctilde", "d", "M4"}, "case0");

    Rational W = c.bw3d_hi * Ctp * c.hpa_hi * c.hpb_hi;
    Rational C18 = W + (lg2 + std::max(Rational(0), std::max(log_plus_hi(C16, prec),
                                                             log_plus_hi(C17, prec)))) /
                           (LM * LM);
    {
        Rational floor_cl =
            std::max(log_plus_hi(C16 / Rational(81, 125), prec),
                     log_plus_hi(C17 / Rational(81, 125), prec)) /
            (c.logM3_lo * c.logM3_lo);
        if (floor_cl > C18) C18 = floor_cl;
    }
    c.put("C18", 18, C18,
          "C(3,d) h'(alpha) h'(beta) Ctilde' + absorbed log-terms, raised to the 0.648 floor",
          {"bw_3_d", "hp_alpha", "hp_beta", "Ctilde_prime", "C16", "C17", "M3"}, "case0");

    // Phi = 0 exit: Ctilde log m >= C0 m
    rep.exits["phi0"] = solve_log_inequality(rep.C0, c.Ctilde, 1, 0) - 1;

    // ---- Cases 1 and 2 ----
    Rational C19 = ratio76 * c.a_pr / c.rho_b;
    Rational C20 = C19;
    Rational C21 = c.b_pr / c.rho_b;
    Rational C22 = C21;
    Rational C23 = 1 + C19 + C20 + C21 + C22;
    Rational ratio58 = c.C5 / c.C8;
    Rational C24 = c.a_pr / c.rho_a;
    Rational C25 = C24;
    Rational C26 = ratio58 * c.b_pr / c.rho_a;
    Rational C27 = C26;
    Rational C28 = 1 + C24 + C25 + C26 + C27;
    c.put("C19", 19, C19, "(C7/C6) a'/rho_b", {"C6", "C7", "rho_b"}, "case1");
    c.put("C20", 20, C20, "(C7/C6) a'/rho_b (alpha'^2 >= |alpha| route)", {"C19"}, "case1");
    c.put("C21", 21, C21, "b'/rho_b", {"rho_b"}, "case1");
    c.put("C22", 22, C22, "b'/rho_b", {"rho_b"}, "case1");
    c.put("C23", 23, C23, "1 + C19 + C20 + C21 + C22", {"C19", "C20", "C21", "C22"}, "case1");
    c.put("C24", 24, C24, "a'/rho_a", {"rho_a"}, "case2");
    c.put("C25", 25, C25, "a'/rho_a (alpha'^2 >= |alpha| route)", {"C24"}, "case2");
    c.put("C26", 26, C26, "(C5/C8) b'/rho_a", {"C5", "C8", "rho_a"}, "case2");
    c.put("C27", 27, C27, "(C5/C8) b'/rho_a (beta'^2 >= |beta| route)", {"C26"}, "case2");
    c.put("C28", 28, C28, "1 + C24 + C25 + C26 + C27", {"C24", "C25", "C26", "C27"}, "case2");

    // heights of the composite eta_1 in Case 1 / Case 2
    Rational C29 = C18 * c.h0a_hi / c.log_a_ratio_lo + (c.Ctilde + c.Ctilde_a) / LM +
                   lg2 / (LM * LM);
    c.put("C29", 29, C29, "C18 h0(alpha)/log(|alpha|/alpha') + (Ctilde + Ctilde_a)/log m + ...",
          {"C18", "h0_alpha", "Ctilde", "Ctilde_a"}, "case1");
    {
        Rational K1 = log_plus_hi(2 * c.ubar_a / c.rho_b, prec) +
                      log_plus_hi(c.ubar_b / (c.rho_a * (c.alo - 1)), prec);
        Rational C30 = C29 + (K1 + 1) / (c.d * LM * LM) +
                       Rational(c.sigma + c.tau) / (c.d * LM) +
                       C18 * c.log_alpha_hi / (c.log_a_ratio_lo * c.d);
        c.put("C30", 30, C30, "C29 + |log eta1| absorption / d", {"C29", "C18"}, "case1");
        rep.constants["C30"] = C30;
    }
    Rational C31 = C18 * c.h0b_hi / c.log_b_ratio_lo + (c.Ctilde + c.Ctilde_b) / LM +
                   lg2 / (LM * LM);
    c.put("C31", 31, C31, "C18 h0(beta)/log(|beta|/beta') + (Ctilde + Ctilde_b)/log m + ...",
          {"C18", "h0_beta", "Ctilde", "Ctilde_b"}, "case2");
    {
        Rational K2 = log_plus_hi(2 * c.ubar_b / c.rho_a, prec) +
                      log_plus_hi(c.ubar_a / (c.rho_b * (c.blo - 1)), prec);
        Rational C32 = C31 + (K2 + 1) / (c.d * LM * LM) +
                       Rational(c.sigma + c.tau) / (c.d * LM) +
                       C18 * c.log_beta_hi / (c.log_b_ratio_lo * c.d);
        c.put("C32", 32, C32, "C31 + |log eta1| absorption / d", {"C31", "C18"}, "case2");
        rep.constants["C32"] = C32;
    }
    Rational C30 = rep.constants["C30"];
    Rational C32 = rep.constants["C32"];
    Rational C33 = c.bw3d_hi * C30 * c.hpa_hi * c.hpb_hi +
                   (lg2 + log_plus_hi(C23, prec)) / (LM * LM * LM);
    if (C18 / LM > C33) C33 = C18 / LM;  // carry the Case-0 minimum through
    Rational C34 = c.bw3d_hi * C32 * c.hpa_hi * c.hpb_hi +
                   (lg2 + log_plus_hi(C28, prec)) / (LM * LM * LM);
    if (C18 / LM > C34) C34 = C18 / LM;
    c.put("C33", 33, C33, "C(3,d) C30 h'(alpha) h'(beta) + absorbed terms, >= C18/log m",
          {"bw_3_d", "C30", "hp_alpha", "hp_beta", "C23", "C18"}, "case1");
    c.put("C34", 34, C34, "C(3,d) C32 h'(alpha) h'(beta) + absorbed terms, >= C18/log m",
          {"bw_3_d", "C32", "hp_alpha", "hp_beta", "C28", "C18"}, "case2");
    Rational C35 = std::max(C33, C34);
    {
        Rational floor_cl =
            std::max(log_plus_hi(C28 / Rational(81, 125), prec),
                     log_plus_hi(C23 / Rational(81, 125), prec)) /
            (c.logM3_lo * c.logM3_lo * c.logM3_lo);
        if (floor_cl > C35) C35 = floor_cl;
    }
    c.put("C35", 35, C35, "max{C33, C34}, raised to the 0.648 floor", {"C33", "C34", "M3"},
          "case1-2");

    rep.exits["phi1"] = solve_log_inequality(rep.C0, C29, 2, 0) - 1;
    rep.exits["phi2"] = solve_log_inequality(rep.C0, C31, 2, 0) - 1;

    // ---- Case 3 ----
    // gamma = |beta|^{log alpha'/log|alpha|}, Gamma = min{|beta|/beta', |beta|/gamma}
    RInterval log_ap = RInterval::from_rational(c.ap, prec).log();
    RInterval log_alpha = RInterval::from_endpoints(c.alo, c.ahi, prec).log();
    RInterval log_beta = RInterval::from_endpoints(c.blo, c.bhi, prec).log();
    RInterval gamma_iv = (log_beta * (log_ap / log_alpha)).exp();
    rep.gamma_lo = gamma_iv.lo_rational();
    rep.gamma_hi = gamma_iv.hi_rational();
    if (!(rep.gamma_lo > 1)) throw PrecisionExhausted("gamma not certifiably > 1");
    if (!(rep.gamma_hi < c.blo)) throw PrecisionExhausted("gamma not certifiably < |beta|");
    Rational Gamma_lo = std::min(c.blo / c.bp, c.blo / rep.gamma_hi);
    Rational Gamma_hi = std::min(c.bhi / c.bp, c.bhi / rep.gamma_lo);
    rep.Gamma_lo = Gamma_lo;
    rep.Gamma_hi = Gamma_hi;
    if (!(Gamma_lo > 1)) throw PrecisionExhausted("Gamma not certifiably > 1");
    c.put("gamma", -1, rep.gamma_hi, "|beta|^{log alpha'/log |alpha|} (upper bound)", {}, "case3");
    c.put("Gamma", -1, Gamma_lo, "min{|beta|/beta', |beta|/gamma} (lower bound)", {"gamma"},
          "case3");

    Rational C36 = (log_ap.mul_rational(C9)).exp().hi_rational();  // alpha'^{C9}
    Rational one_minus = 1 - Rational(1) / c.blo;
    Rational C37 = C36 * c.a_pr / (c.rho_b * one_minus);
    Rational C38 = c.b_pr / (c.rho_b * one_minus);
    Rational C39 = C38;
    Rational C40 = 2 * C37 + C38 + C39;
    c.put("C36", 36, C36, "alpha'^{C9}", {"C9"}, "case3");
    c.put("C37", 37, C37, "C36 a' / (rho_b (1 - 1/|beta|))", {"C36", "rho_b"}, "case3");
    c.put("C38", 38, C38, "b' / (rho_b (1 - 1/|beta|))", {"rho_b"}, "case3");
    c.put("C39", 39, C39, "b' / (rho_b (1 - 1/|beta|))", {"C38"}, "case3");
    c.put("C40", 40, C40, "2 C37 + C38 + C39", {"C37", "C38", "C39"}, "case3");

    Rational hsum = c.h0a_hi / c.log_a_ratio_lo + c.h0b_hi / c.log_b_ratio_lo;
    Rational C41 = C35 * hsum + (c.Ctilde + c.Ctilde_a + c.Ctilde_b) / (LM * LM) +
                   2 * lg2 / (LM * LM * LM);
    c.put("C41", 41, C41,
          "C35 (h0(alpha)/log(|alpha|/alpha') + h0(beta)/log(|beta|/beta')) + absorbed terms",
          {"C35", "h0_alpha", "h0_beta", "Ctilde", "Ctilde_a", "Ctilde_b"}, "case3");
    Rational K23 = log_plus_hi(2 * c.ubar_a / (c.rho_b * one_minus), prec) +
                   log_plus_hi(2 * c.ubar_b / (c.rho_a * (c.alo - 1)), prec);
    Rational C42 = C41 + (K23 + 1) / (c.d * LM * LM * LM) +
                   Rational(c.sigma + c.tau) / (c.d * LM * LM) +
                   C35 * (c.log_alpha_hi / c.log_a_ratio_lo + c.log_beta_hi / c.log_b_ratio_lo) /
                       c.d;
    c.put("C42", 42, C42, "C41 + |log eta1| absorption / d", {"C41", "C35"}, "case3");
    Rational C43 = C41;
    c.put("C43", 43, C43, "height bound for the Phi3 = 0 branch (= C41)", {"C41"}, "case3");
    rep.exits["phi3"] = solve_log_inequality(rep.C0, C43, 3, 0) - 1;

    Rational C44 = c.bw3d_hi * C42 * c.hpa_hi * c.hpb_hi;
    c.put("C44", 44, C44, "C(3,d) C42 h'(alpha) h'(beta)", {"bw_3_d", "C42", "hp_alpha", "hp_beta"},
          "case3");

    // m log Gamma > C44 (log m)^4 + log 2 + |log C40| + |log C42| for m >= C45
    Rational logGamma_lo = log_lo(Gamma_lo, prec);
    Rational slack = lg2 + abs(log_hi(C40 > 1 ? C40 : Rational(1) / C40, prec)) +
                     abs(log_hi(C42 > 1 ? C42 : Rational(1) / C42, prec));
    Integer C45 = solve_log_inequality(logGamma_lo, C44, 4, slack);
    {
        // 0.648 floor: C45 >= log(C40/0.648)/log Gamma
        Rational fc = log_plus_hi(C40 / Rational(81, 125), prec) / logGamma_lo;
        Integer fci = fc.get_num() / fc.get_den() + 2;
        if (fci > C45) C45 = fci;
        if (rep.M4 + 1 > C45) C45 = rep.M4 + 1;
    }
    rep.C45 = C45;
    c.put_int("C45", C45, "crossing of m log Gamma vs C44 (log m)^4 + slack, with floors",
              {"C44", "C40", "C42", "Gamma", "M4"}, "case3");

    // final integer bound
    Integer bound = C45;
    for (const auto& [k, v] : rep.exits) bound = std::max(bound, v);
    bound = std::max(bound, rep.N4);
    bound = std::max(bound, rep.M4);
    rep.bound = bound;
    c.put_int("BOUND", bound, "max{C45, degeneracy exits, N4, M4}", {"C45", "N4", "M4"}, "final");
}

}  // namespace

const Rational& BoundReport::c(const std::string& name) const {
    auto it = constants.find(name);
    if (it == constants.end()) throw Error("missing constant " + name);
    return it->second;
}

BoundReport derive_all(const SequenceAnalysis& a, const SequenceAnalysis& b,
                       const DeriveOptions& opts) {
    bool swapped = false;
    auto [U, V] = orient(a, b, swapped);

    // independence of the dominant roots is a theorem hypothesis
    IndependenceResult ind = mult_independent(*U->alpha, *V->alpha, opts.independence_ceiling,
                                              opts.precision);
    if (ind.verdict == IndependenceResult::Verdict::Fail)
        throw HypothesisFailure("independence",
                                "dominant roots are multiplicatively dependent: alpha^" +
                                    ind.p.get_str() + " = beta^" + ind.q.get_str());
    if (ind.verdict == IndependenceResult::Verdict::Inconclusive)
        throw PrecisionExhausted("multiplicative independence undecided: " + ind.note);

    FieldJoin join = compose_field(*U->alpha, *V->alpha, opts.field_degree_ceiling, opts.precision);
    PlaceSystem ps = compute_C0(*U->alpha, *V->alpha, join, opts.precision);

    // the chain is symmetric in (n, n1) by construction; run both index
    // orders and keep the max, as the symmetric case demands
    Integer best = -1;
    BoundReport out;
    for (int role = 0; role < 2; ++role) {
        BoundReport rep;
        rep.u_label = U->spec.label;
        rep.v_label = V->spec.label;
        rep.swapped = swapped;
        rep.C0 = ps.c0_lower;
        {
            TraceEntry t;
            t.name = "C0";
            t.index = 0;
            t.value = ps.c0.exact ? ps.c0.describe() : to_string(ps.c0_lower);
            t.formula = "min{C~1, C~2}/|S| from the place system (pair " +
                        ps.places[ps.v1].tag + ", " + ps.places[ps.v2].tag + ")";
            t.anchor = "height-lemma";
            rep.trace.push_back(std::move(t));
        }
        {
            TraceEntry t;
            t.name = "C10";
            t.index = 10;
            t.value = "absent";
            t.formula = "index 10 does not occur in the source derivation";
            t.anchor = "bookkeeping";
            rep.trace.push_back(std::move(t));
        }
        {
            TraceEntry t;
            t.name = "index_roles";
            t.value = role == 0 ? "n > n1" : "n < n1 (roles interchanged)";
            t.formula = "derivation instance";
            t.anchor = "orientation";
            rep.trace.push_back(std::move(t));
        }
        Chain chain{*U, *V, opts, rep, opts.working_bits};
        run_chain(chain);
        if (rep.bound > best) {
            best = rep.bound;
            out = std::move(rep);
        }
    }
    out.bound = best;
    return out;
}

}  // namespace pillai
