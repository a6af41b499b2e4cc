#include "pillai/algebraic.hpp"

#include <algorithm>
#include <mutex>

#include "pillai/errors.hpp"

namespace pillai {

// ---------------------------------------------------------------- NumberField

NumberField::NumberField(IntPoly minpoly) : minpoly_(std::move(minpoly)) {
    if (minpoly_.degree() < 1) throw Error("number field needs non-constant minimal polynomial");
    modulus_ = minpoly_.to_rat().monic();
}

NFElem::NFElem(std::shared_ptr<const NumberField> field, RatPoly rep)
    : field_(std::move(field)), rep_(std::move(rep)) {
    rep_ = rep_.mod(field_->modulus());
}

NFElem NFElem::from_rational(std::shared_ptr<const NumberField> field, const Rational& q) {
    return NFElem(std::move(field), RatPoly::constant(q));
}

NFElem NFElem::generator(std::shared_ptr<const NumberField> field) {
    return NFElem(std::move(field), RatPoly::x_power(1));
}

Rational NFElem::rational_value() const {
    if (rep_.is_zero()) return Rational(0);
    if (rep_.degree() > 0) throw Error("rational_value of a non-rational field element");
    return rep_[0];
}

NFElem NFElem::operator+(const NFElem& o) const { return NFElem(field_, rep_ + o.rep_); }
NFElem NFElem::operator-(const NFElem& o) const { return NFElem(field_, rep_ - o.rep_); }
NFElem NFElem::operator*(const NFElem& o) const { return NFElem(field_, rep_ * o.rep_); }
NFElem NFElem::operator-() const { return NFElem(field_, -rep_); }
NFElem NFElem::scale(const Rational& q) const { return NFElem(field_, rep_.scale(q)); }

NFElem NFElem::inverse() const {
    if (rep_.is_zero()) throw Error("inverse of zero field element");
    // extended Euclid over Q[t]: s*rep + t*modulus = gcd (a nonzero constant)
    RatPoly r0 = field_->modulus(), r1 = rep_;
    RatPoly s0 = RatPoly(), s1 = RatPoly::constant(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        RatPoly s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r0.degree() != 0)
        throw Error("non-invertible element (modulus not irreducible?)");
    return NFElem(field_, s0.scale(Rational(1) / r0[0]));
}

CInterval NFElem::eval(const CInterval& generator_box, mpfr_prec_t prec) const {
    return rep_.eval(generator_box, prec);
}

RInterval NFElem::eval_real(const RInterval& generator_box) const {
    return rep_.eval(generator_box);
}

// ------------------------------------------------------------------- NFPoly

NFPoly nfpoly_trim(NFPoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

int nfpoly_degree(const NFPoly& p) { return static_cast<int>(p.size()) - 1; }

NFPoly nfpoly_add(const NFPoly& a, const NFPoly& b) {
    NFPoly r = a.size() >= b.size() ? a : b;
    const NFPoly& small = a.size() >= b.size() ? b : a;
    for (std::size_t i = 0; i < small.size(); ++i) r[i] = r[i] + small[i];
    return nfpoly_trim(std::move(r));
}

NFPoly nfpoly_sub(const NFPoly& a, const NFPoly& b) {
    NFPoly nb = b;
    for (auto& v : nb) v = -v;
    return nfpoly_add(a, nb);
}

NFPoly nfpoly_mul(const NFPoly& a, const NFPoly& b) {
    if (a.empty() || b.empty()) return {};
    NFPoly r(a.size() + b.size() - 1, NFElem::from_rational(a[0].field(), Rational(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return nfpoly_trim(std::move(r));
}

std::pair<NFPoly, NFPoly> nfpoly_divmod(const NFPoly& a, const NFPoly& b) {
    if (b.empty()) throw Error("NF polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    NFPoly rem = a;
    NFPoly quot(a.size() - b.size() + 1, NFElem::from_rational(a.empty() ? b[0].field() : a[0].field(), Rational(0)));
    NFElem inv_lead = b.back().inverse();
    for (int i = static_cast<int>(rem.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
        if (rem[static_cast<std::size_t>(i)].is_zero()) continue;
        NFElem f = rem[static_cast<std::size_t>(i)] * inv_lead;
        std::size_t off = static_cast<std::size_t>(i) - (b.size() - 1);
        quot[off] = f;
        for (std::size_t j = 0; j < b.size(); ++j)
            rem[off + j] = rem[off + j] - f * b[j];
    }
    return {nfpoly_trim(std::move(quot)), nfpoly_trim(std::move(rem))};
}

NFPoly nfpoly_gcd_monic(NFPoly a, NFPoly b) {
    a = nfpoly_trim(std::move(a));
    b = nfpoly_trim(std::move(b));
    while (!b.empty()) {
        NFPoly r = nfpoly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        NFElem inv = a.back().inverse();
        for (auto& v : a) v = v * inv;
    }
    return a;
}

NFElem nfpoly_eval(const NFPoly& p, const NFElem& x) {
    NFElem acc = NFElem::from_rational(x.field(), Rational(0));
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// --------------------------------------------------------------- transforms

namespace {

IntPoly transform_by_interpolation(int deg_bound,
                                   const std::function<Rational(const Integer&)>& value_at) {
    std::vector<Integer> xs;
    std::vector<Rational> ys;
    long next = 0;
    while (static_cast<int>(xs.size()) < deg_bound + 1) {
        Integer x(next);
        xs.push_back(x);
        ys.push_back(value_at(x));
        next = next > 0 ? -next : -next + 1;  // 0, 1, -1, 2, -2, ...
    }
    RatPoly r = interpolate(xs, ys);
    if (r.is_zero()) throw Error("degenerate transform (identically zero resultant)");
    return r.primitive_integer();
}

}  // namespace

IntPoly transform_expression(const IntPoly& p, const RatPoly& r) {
    if (p.degree() < 1) throw Error("transform_expression needs non-constant polynomial");
    RatPoly pr = p.to_rat();
    RatPoly rr = r.mod(pr.monic());
    return transform_by_interpolation(p.degree(), [&](const Integer& x0) {
        RatPoly g = RatPoly::constant(Rational(x0)) - rr;
        return resultant(pr, g);
    });
}

IntPoly transform_sum(const IntPoly& p, const IntPoly& q, const Rational& lambda) {
    if (p.degree() < 1 || q.degree() < 1)
        throw Error("transform_sum needs non-constant polynomials");
    RatPoly qr = q.to_rat();
    int bound = p.degree() * q.degree();
    return transform_by_interpolation(bound, [&](const Integer& x0) {
        // A(t) = p(x0 - lambda*t), expanded by Horner over RatPoly
        RatPoly lin({Rational(x0), -lambda});
        RatPoly acc;
        for (int i = p.degree(); i >= 0; --i) {
            acc = acc * lin + RatPoly::constant(Rational(p[static_cast<std::size_t>(i)]));
        }
        return resultant(qr, acc);
    });
}

IntPoly transform_product(const IntPoly& p_in, const IntPoly& q_in) {
    // strip zero roots; the transform is used for products of nonzero values
    IntPoly p = p_in, q = q_in;
    auto strip = [](IntPoly f) {
        std::size_t v = 0;
        while (v < f.coeffs().size() && f[v] == 0) ++v;
        if (v == 0) return f;
        std::vector<Integer> c(f.coeffs().begin() + static_cast<long>(v), f.coeffs().end());
        return IntPoly(std::move(c));
    };
    p = strip(p);
    q = strip(q);
    if (p.degree() < 1 || q.degree() < 1)
        throw Error("transform_product needs non-constant polynomials after stripping zeros");
    RatPoly qr = q.to_rat();
    int dp = p.degree();
    int bound = dp * q.degree();
    return transform_by_interpolation(bound, [&](const Integer& x0) {
        // A(t) = t^dp * p(x0 / t) = sum_i p_i x0^i t^{dp - i}
        std::vector<Rational> a(static_cast<std::size_t>(dp) + 1, Rational(0));
        Rational xp(1);
        for (int i = 0; i <= dp; ++i) {
            a[static_cast<std::size_t>(dp - i)] = Rational(p[static_cast<std::size_t>(i)]) * xp;
            xp *= Rational(x0);
        }
        return resultant(qr, RatPoly(std::move(a)));
    });
}

IntPoly transform_power(const IntPoly& p, const Integer& e) {
    if (e < 1) throw Error("transform_power needs a positive exponent");
    RatPoly r = powmod(RatPoly::x_power(1), e, p.to_rat().monic());
    return transform_expression(p, r);
}

// --------------------------------------------------------- AlgebraicNumber

struct AlgebraicNumber::Cache {
    std::mutex mu;
    std::vector<CertifiedRoot> conjugates;
    int conj_level = -1;
};

AlgebraicNumber::AlgebraicNumber(IntPoly minpoly, CertifiedRoot root)
    : minpoly_(std::move(minpoly)), root_(std::move(root)), cache_(std::make_shared<Cache>()) {
    if (minpoly_.degree() < 1) throw Error("algebraic number needs non-constant minimal polynomial");
    minpoly_ = minpoly_.primitive_part();
}

AlgebraicNumber AlgebraicNumber::from_rational(const Rational& q) {
    IntPoly mp({-q.get_num(), q.get_den()});
    CertifiedRoot r;
    r.center_re = q;
    r.center_im = 0;
    r.radius = 0;
    r.real = true;
    return AlgebraicNumber(std::move(mp), std::move(r));
}

Rational AlgebraicNumber::rational_value() const {
    if (!is_rational()) throw Error("rational_value of a non-rational algebraic number");
    Rational q(-minpoly_[0], minpoly_[1]);
    q.canonicalize();
    return q;
}

const CertifiedRoot& AlgebraicNumber::enclosure() const { return root_; }

CertifiedRoot AlgebraicNumber::refined(const Rational& target_radius) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (root_.radius <= target_radius) return root_;
    if (is_rational()) return root_;  // exact already
    root_ = refine_root(minpoly_, root_, target_radius, policy_);
    return root_;
}

CertifiedRoot AlgebraicNumber::refined_bits(long bits) const {
    Rational target(Integer(1), Integer(1) << static_cast<unsigned long>(std::max(1L, bits)));
    Rational scale = abs(root_.center_re) + abs(root_.center_im) + 1;
    return refined(target * scale);
}

const std::vector<CertifiedRoot>& AlgebraicNumber::conjugates(int level) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->conj_level < 0) {
        cache_->conjugates = isolate_roots(minpoly_, policy_);
        cache_->conj_level = 0;
    }
    while (cache_->conj_level < level) {
        for (auto& r : cache_->conjugates) {
            if (r.radius == 0) continue;
            r = refine_root(minpoly_, r, r.radius / 256, policy_);
        }
        ++cache_->conj_level;
    }
    return cache_->conjugates;
}

int AlgebraicNumber::sign() const {
    if (!is_real()) throw Error("sign of a non-real algebraic number");
    if (is_rational()) return sgn(rational_value());
    CertifiedRoot r = root_;
    for (int i = 0; i < 64; ++i) {
        if (r.center_re - r.radius > 0) return 1;
        if (r.center_re + r.radius < 0) return -1;
        r = refined(r.radius / 256);
    }
    throw PrecisionExhausted("sign of algebraic number undecided (is it zero?)");
}

AlgebraicNumber AlgebraicNumber::negated() const {
    IntPoly mp = minpoly_.negate_variable().primitive_part();
    CertifiedRoot r = root_;
    r.center_re = -r.center_re;
    r.center_im = -r.center_im;  // any conjugate-consistent reflection works
    return AlgebraicNumber(std::move(mp), std::move(r));
}

AlgebraicNumber AlgebraicNumber::abs_value() const {
    if (!is_real()) throw Error("abs_value of a non-real algebraic number");
    return sign() >= 0 ? *this : negated();
}

bool algebraic_equal(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (!(a.minpoly() == b.minpoly())) return false;
    int d = a.degree();
    if (d == 1) return true;
    // Mahler-style root separation lower bound: sqrt(3) d^{-(d+2)/2} |p|_2^{-(d-1)}
    Integer s2 = 0;
    for (const auto& c : a.minpoly().coeffs()) s2 += c * c;
    Integer n2_up = sqrt(s2) + 1;
    Integer denom = ipow(Integer(d), static_cast<unsigned long>((d + 3) / 2)) *
                    ipow(n2_up, static_cast<unsigned long>(d - 1));
    Rational sep_lb(Integer(1), denom);
    CertifiedRoot ra = a.refined(sep_lb / 8);
    CertifiedRoot rb = b.refined(sep_lb / 8);
    if (ra.real != rb.real) return false;
    Rational dre = ra.center_re - rb.center_re;
    Rational dim = ra.center_im - rb.center_im;
    Rational rs = ra.radius + rb.radius;
    return dre * dre + dim * dim <= rs * rs;
}

// ----------------------------------------------------------- root location

namespace {

// Conservative bounding-square intersection between an enclosure box and a
// certified disk; never reports "disjoint" for the root actually inside.
bool box_touches_disk(const CInterval& box, const CertifiedRoot& disk) {
    Rational re_lo = box.re.lo_rational() - disk.radius;
    Rational re_hi = box.re.hi_rational() + disk.radius;
    Rational im_lo = box.im.lo_rational() - disk.radius;
    Rational im_hi = box.im.hi_rational() + disk.radius;
    return disk.center_re >= re_lo && disk.center_re <= re_hi && disk.center_im >= im_lo &&
           disk.center_im <= im_hi;
}

struct LocatedRoot {
    bool in_first;
    std::size_t index;
};

// Decide which root of the pair of coprime square-free polynomials (A, B)
// the enclosed value is. The value must be a root of A*B.
LocatedRoot locate_between(const std::function<CInterval(int)>& enclose, const IntPoly& A,
                           const IntPoly& B, const PrecisionPolicy& policy) {
    std::vector<CertifiedRoot> ra = A.degree() > 0 ? isolate_roots(A, policy)
                                                   : std::vector<CertifiedRoot>{};
    std::vector<CertifiedRoot> rb = B.degree() > 0 ? isolate_roots(B, policy)
                                                   : std::vector<CertifiedRoot>{};
    // make the two systems mutually disjoint
    bool again = true;
    int guard = 0;
    while (again) {
        again = false;
        if (++guard > 80) throw PrecisionExhausted("failed to separate coprime root systems");
        for (auto& x : ra)
            for (auto& y : rb) {
                Rational dre = x.center_re - y.center_re;
                Rational dim = x.center_im - y.center_im;
                Rational rs = x.radius + y.radius;
                if (dre * dre + dim * dim <= rs * rs) {
                    x = refine_root(A, x, x.radius / 64, policy);
                    y = refine_root(B, y, y.radius / 64, policy);
                    again = true;
                }
            }
    }
    for (int level = 0; level < 64; ++level) {
        CInterval box = enclose(level);
        std::vector<std::pair<bool, std::size_t>> hits;
        for (std::size_t i = 0; i < ra.size(); ++i)
            if (box_touches_disk(box, ra[i])) hits.emplace_back(true, i);
        for (std::size_t i = 0; i < rb.size(); ++i)
            if (box_touches_disk(box, rb[i])) hits.emplace_back(false, i);
        if (hits.size() == 1) return {hits[0].first, hits[0].second};
        if (hits.empty())
            throw Error("enclosed value is not a root of the expected polynomial");
        for (auto& [inA, i] : hits) {
            auto& sys = inA ? ra : rb;
            const IntPoly& p = inA ? A : B;
            if (sys[i].radius > 0) sys[i] = refine_root(p, sys[i], sys[i].radius / 64, policy);
        }
    }
    throw PrecisionExhausted("root location did not converge");
}

}  // namespace

// ----------------------------------------------------------------- AlgExpr

AlgExpr alg_expr_of(const AlgebraicNumber& x) {
    AlgExpr e;
    e.annihilator = x.minpoly();
    e.enclose = [x](int level) {
        mpfr_prec_t prec = 128 + 64 * level;
        CertifiedRoot r = x.refined_bits(32 + 32L * level);
        return r.box(prec);
    };
    return e;
}

AlgExpr alg_expr_rational(const Rational& q) {
    AlgExpr e;
    e.annihilator = IntPoly({-q.get_num(), q.get_den()});
    e.enclose = [q](int level) {
        mpfr_prec_t prec = 128 + 64 * level;
        return CInterval::exact_real(q, prec);
    };
    return e;
}

AlgExpr alg_expr_power(const AlgebraicNumber& x, const Integer& e) {
    if (x.is_rational()) return alg_expr_rational(qpow(x.rational_value(), e.get_si()));
    AlgExpr out;
    out.annihilator = transform_power(x.minpoly(), e);
    long ebits = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2));
    unsigned long eu = e.get_ui();
    out.enclose = [x, eu, ebits](int level) {
        long bits = 64 + 32L * level + 2 * ebits;
        mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits + 64);
        CertifiedRoot r = x.refined_bits(bits);
        return r.box(prec).pow_ui(eu, prec);
    };
    return out;
}

AlgExpr alg_expr_norm2_root(const IntPoly& sf_poly, const CertifiedRoot& root) {
    AlgExpr out;
    out.annihilator = transform_product(sf_poly, sf_poly);
    IntPoly sf = sf_poly;
    CertifiedRoot r0 = root;
    out.enclose = [sf, r0](int level) {
        mpfr_prec_t prec = 128 + 64 * level;
        CertifiedRoot r = r0;
        if (r.radius > 0) {
            Rational scale = abs(r.center_re) + abs(r.center_im) + 1;
            Rational target = scale / (Integer(1) << static_cast<unsigned long>(32 + 32L * level));
            if (r.radius > target) r = refine_root(sf, r, target);
        }
        CInterval box = r.box(prec);
        return CInterval(box.norm2(), RInterval::zero(prec));
    };
    return out;
}

AlgExpr alg_expr_norm2(const AlgebraicNumber& x) {
    if (x.is_rational()) {
        Rational v = x.rational_value();
        return alg_expr_rational(v * v);
    }
    return alg_expr_norm2_root(x.minpoly(), x.enclosure());
}

bool alg_expr_equal(const AlgExpr& u, const AlgExpr& v, const PrecisionPolicy& policy) {
    IntPoly U = squarefree_part(u.annihilator);
    IntPoly V = squarefree_part(v.annihilator);
    IntPoly G = poly_gcd(U, V);
    if (G.degree() < 1) return false;
    IntPoly cofU = U.divide_exact(G);
    IntPoly cofV = V.divide_exact(G);
    LocatedRoot lu = locate_between(u.enclose, G, cofU, policy);
    if (!lu.in_first) return false;
    LocatedRoot lv = locate_between(v.enclose, G, cofV, policy);
    if (!lv.in_first) return false;
    // Both located within the same deterministic isolation of G? locate_between
    // isolates G afresh each call; the ordering of isolate_roots is canonical
    // (sorted by center), so indices are comparable.
    return lu.index == lv.index;
}

// ------------------------------------------------- minimal polynomial

namespace {

struct Block {
    std::vector<std::size_t> idx;
    int degree() const { return static_cast<int>(idx.size()); }
};

std::vector<Block> conjugate_blocks(const std::vector<CertifiedRoot>& roots) {
    std::vector<Block> blocks;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        Block b;
        b.idx.push_back(i);
        used[i] = true;
        if (!roots[i].real) {
            bool found = false;
            for (std::size_t j = 0; j < roots.size(); ++j) {
                if (used[j] || roots[j].real) continue;
                if (roots[j].center_re == roots[i].center_re &&
                    roots[j].center_im == -roots[i].center_im) {
                    b.idx.push_back(j);
                    used[j] = true;
                    found = true;
                    break;
                }
            }
            if (!found) throw Error("conjugate partner missing in root system");
        }
        blocks.push_back(std::move(b));
    }
    return blocks;
}

// real-coefficient interval polynomial for one block: (X - r) or the
// quadratic (X^2 - 2 Re r X + |r|^2)
std::vector<RInterval> block_poly(const std::vector<CertifiedRoot>& roots, const Block& b,
                                  mpfr_prec_t prec) {
    const CertifiedRoot& r = roots[b.idx[0]];
    if (r.real) {
        return {-(r.real_interval(prec)), RInterval::exact(1, prec)};
    }
    CInterval z = r.box(prec);
    RInterval re2 = z.re.mul_rational(Rational(-2));
    return {z.norm2(), re2, RInterval::exact(1, prec)};
}

std::vector<RInterval> rpoly_mul(const std::vector<RInterval>& a, const std::vector<RInterval>& b,
                                 mpfr_prec_t prec) {
    std::vector<RInterval> r(a.size() + b.size() - 1, RInterval::zero(prec));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

// Integer polynomial uniquely contained in the interval poly, if any.
// Returns: 0 ok, 1 certified no integer poly inside, 2 ambiguous (refine).
int snap_to_integer_poly(const std::vector<RInterval>& coeffs, const Integer& lead_scale,
                         IntPoly& out) {
    std::vector<Integer> c(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        RInterval scaled = coeffs[i].mul_rational(Rational(lead_scale));
        Rational lo = scaled.lo_rational();
        Rational hi = scaled.hi_rational();
        Integer flo, fhi;
        mpz_cdiv_q(flo.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
        mpz_fdiv_q(fhi.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
        if (flo > fhi) return 1;   // no integer in [lo, hi]
        if (flo < fhi) return 2;   // more than one candidate
        c[i] = flo;
    }
    out = IntPoly(std::move(c));
    return 0;
}

void enumerate_subsets(const std::vector<int>& sizes, int target, std::size_t start,
                       std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out,
                       std::size_t cap) {
    if (target == 0) {
        out.push_back(cur);
        return;
    }
    if (out.size() > cap) return;
    for (std::size_t i = start; i < sizes.size(); ++i) {
        if (sizes[i] > target) continue;
        cur.push_back(i);
        enumerate_subsets(sizes, target - sizes[i], i + 1, cur, out, cap);
        cur.pop_back();
    }
}

}  // namespace

IntPoly minimal_polynomial_of_root(const IntPoly& squarefree, const CertifiedRoot& root,
                                   const PrecisionPolicy& policy) {
    const IntPoly& sf = squarefree;
    if (sf.degree() == 1) return sf.primitive_part();
    std::set<int> allowed = factor_degree_candidates(sf);
    if (allowed.size() <= 2) return sf.primitive_part();  // {0, deg}: irreducible

    std::vector<CertifiedRoot> roots = isolate_roots(sf, policy);
    // locate the target root in this system
    CertifiedRoot target = root;
    std::size_t tgt = roots.size();
    for (int round = 0; round < 64; ++round) {
        std::vector<std::size_t> hits;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            Rational dre = roots[i].center_re - target.center_re;
            Rational dim = roots[i].center_im - target.center_im;
            Rational rs = roots[i].radius + target.radius;
            if (dre * dre + dim * dim <= rs * rs) hits.push_back(i);
        }
        if (hits.size() == 1) {
            tgt = hits[0];
            break;
        }
        if (hits.empty()) throw Error("target root not found in its own root system");
        target = refine_root(sf, target, target.radius / 64, policy);
        for (std::size_t i : hits)
            if (roots[i].radius > 0) roots[i] = refine_root(sf, roots[i], roots[i].radius / 64, policy);
    }
    if (tgt == roots.size()) throw PrecisionExhausted("could not match target root");

    std::vector<Block> blocks = conjugate_blocks(roots);
    std::size_t tgt_block = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (std::size_t i : blocks[b].idx)
            if (i == tgt) tgt_block = b;

    std::vector<int> other_sizes;
    std::vector<std::size_t> other_ids;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (b == tgt_block) continue;
        other_sizes.push_back(blocks[b].degree());
        other_ids.push_back(b);
    }

    int refine_level = 0;
    mpfr_prec_t prec = policy.start_bits;
    auto refine_all = [&]() {
        for (auto& r : roots)
            if (r.radius > 0) r = refine_root(sf, r, r.radius / 1024, policy);
        ++refine_level;
        prec = std::min<mpfr_prec_t>(prec * 2, policy.max_bits);
    };

    for (int deg = blocks[tgt_block].degree(); deg <= sf.degree(); ++deg) {
        if (!allowed.count(deg)) continue;
        if (deg == sf.degree()) return sf.primitive_part();
        std::vector<std::vector<std::size_t>> combos;
        std::vector<std::size_t> cur;
        enumerate_subsets(other_sizes, deg - blocks[tgt_block].degree(), 0, cur, combos,
                          2000000);
        if (combos.size() >= 2000000)
            throw PrecisionExhausted("factor subset search too large");
        for (const auto& combo : combos) {
            // build candidate with escalation local to this combo
            for (int attempt = 0; attempt < 8; ++attempt) {
                std::vector<RInterval> prod = block_poly(roots, blocks[tgt_block], prec);
                for (std::size_t ci : combo)
                    prod = rpoly_mul(prod, block_poly(roots, blocks[other_ids[ci]], prec), prec);
                IntPoly cand;
                int st = snap_to_integer_poly(prod, sf.lc(), cand);
                if (st == 1) break;  // certified: no integer factor on this subset
                if (st == 2) {
                    refine_all();
                    continue;
                }
                cand = cand.primitive_part();
                if (cand.degree() != deg) break;
                if (!sf.divides(cand)) break;
                IntPoly cof = sf.divide_exact(cand);
                // verify the target root belongs to cand, not the cofactor
                CertifiedRoot t2 = roots[tgt];
                IntPoly sf_copy = sf;
                auto enclose = [sf_copy, t2, &policy](int level) {
                    CertifiedRoot r = t2;
                    if (r.radius > 0) {
                        Rational scale = abs(r.center_re) + abs(r.center_im) + 1;
                        Rational tw = scale / (Integer(1)
                                               << static_cast<unsigned long>(24 + 24L * level));
                        if (r.radius > tw) r = refine_root(sf_copy, r, tw, policy);
                    }
                    return r.box(128 + 64 * level);
                };
                if (cof.degree() == 0) return cand;
                LocatedRoot loc = locate_between(enclose, cand, cof, policy);
                if (loc.in_first) return cand;
                break;  // genuine factor, but not ours
            }
        }
    }
    return sf.primitive_part();
}

std::vector<std::pair<IntPoly, int>> factor_integer_poly(const IntPoly& poly,
                                                         const PrecisionPolicy& policy) {
    std::vector<std::pair<IntPoly, int>> out;
    for (const auto& [g, mult] : squarefree_decomposition(poly)) {
        IntPoly rest = g;
        while (rest.degree() > 0) {
            auto roots = isolate_roots(rest, policy);
            IntPoly mp = minimal_polynomial_of_root(rest, roots[0], policy);
            out.emplace_back(mp, mult);
            rest = rest.divide_exact(mp).primitive_part();
        }
    }
    return out;
}

AlgebraicNumber algebraic_from_root(const IntPoly& poly_squarefree, const CertifiedRoot& root,
                                    const PrecisionPolicy& policy) {
    IntPoly mp = minimal_polynomial_of_root(poly_squarefree, root, policy);
    CertifiedRoot r = root;
    r.multiplicity = 1;
    return AlgebraicNumber(std::move(mp), std::move(r));
}

AlgebraicNumber AlgebraicNumber::from_poly_and_region(const IntPoly& poly, const Rational& re_lo,
                                                      const Rational& re_hi, const Rational& im_lo,
                                                      const Rational& im_hi,
                                                      const PrecisionPolicy& policy) {
    IntPoly sf = squarefree_part(poly);
    auto roots = isolate_all_roots(sf, policy);
    auto inside = [&](const CertifiedRoot& r) {
        return r.center_re - r.radius >= re_lo && r.center_re + r.radius <= re_hi &&
               r.center_im - r.radius >= im_lo && r.center_im + r.radius <= im_hi;
    };
    auto outside = [&](const CertifiedRoot& r) {
        return r.center_re + r.radius < re_lo || r.center_re - r.radius > re_hi ||
               r.center_im + r.radius < im_lo || r.center_im - r.radius > im_hi;
    };
    for (int round = 0; round < 40; ++round) {
        std::size_t in_count = 0, undecided = 0, chosen = roots.size();
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (inside(roots[i])) {
                ++in_count;
                chosen = i;
            } else if (!outside(roots[i])) {
                ++undecided;
            }
        }
        if (undecided == 0) {
            if (in_count != 1)
                throw ParseError("region does not isolate exactly one root (contains " +
                                 std::to_string(in_count) + ")");
            return algebraic_from_root(sf, roots[chosen], policy);
        }
        for (auto& r : roots)
            if (!inside(r) && !outside(r) && r.radius > 0)
                r = refine_root(sf, r, r.radius / 256, policy);
    }
    throw PrecisionExhausted("could not certify the root region");
}

}  // namespace pillai
