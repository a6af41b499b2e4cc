#include "pillai/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>

#include "pillai/errors.hpp"

namespace pillai {

// ---------------------------------------------------------------- IntPoly

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::x_power(std::size_t n) {
    std::vector<Integer> c(n + 1, Integer(0));
    c[n] = 1;
    return IntPoly(std::move(c));
}

const Integer& IntPoly::lc() const {
    if (c_.empty()) throw Error("leading coefficient of zero polynomial");
    return c_.back();
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<Integer> r(std::max(c_.size(), o.c_.size()), Integer(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<Integer> r(std::max(c_.size(), o.c_.size()), Integer(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<Integer> r(c_.size() + o.c_.size() - 1, Integer(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-() const {
    std::vector<Integer> r(c_);
    for (auto& v : r) v = -v;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<Integer> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Integer(static_cast<long>(i));
    return IntPoly(std::move(r));
}

Integer IntPoly::content() const {
    Integer g = 0;
    for (const auto& v : c_) g = gcd(g, v);
    return abs(g);
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return IntPoly();
    Integer g = content();
    std::vector<Integer> r(c_);
    for (auto& v : r) v /= g;
    if (r.back() < 0)
        for (auto& v : r) v = -v;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::negate_variable() const {
    std::vector<Integer> r(c_);
    for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
    return IntPoly(std::move(r));
}

Integer IntPoly::eval(const Integer& x) const {
    Integer acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rational IntPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
}

RInterval IntPoly::eval(const RInterval& x) const {
    RInterval acc = RInterval::zero(x.prec());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + RInterval::from_integer(*it, x.prec());
    return acc;
}

CInterval IntPoly::eval(const CInterval& x, mpfr_prec_t prec) const {
    CInterval acc = CInterval::exact_real(Rational(0), prec);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x;
        acc.re = acc.re + RInterval::from_integer(*it, prec);
    }
    return acc;
}

IntPoly IntPoly::divide_exact(const IntPoly& d) const {
    if (d.is_zero()) throw Error("polynomial division by zero");
    RatPoly q, r;
    std::tie(q, r) = to_rat().divmod(d.to_rat());
    if (!r.is_zero()) throw Error("inexact polynomial division");
    std::vector<Integer> out(q.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Rational& v = q[i];
        if (v.get_den() != 1) throw Error("inexact polynomial division (rational quotient)");
        out[i] = v.get_num();
    }
    return IntPoly(std::move(out));
}

bool IntPoly::divides(const IntPoly& d) const {
    if (d.is_zero()) return false;
    if (is_zero()) return true;
    if (degree() < d.degree()) return false;
    RatPoly r = to_rat().divmod(d.to_rat()).second;
    return r.is_zero();
}

RatPoly IntPoly::to_rat() const {
    std::vector<Rational> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = Rational(c_[i]);
    return RatPoly(std::move(r));
}

std::string IntPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        const Integer& v = c_[static_cast<std::size_t>(i)];
        if (v == 0) continue;
        if (!s.empty()) s += v > 0 ? " + " : " - ";
        else if (v < 0) s += "-";
        Integer a = abs(v);
        bool unit = (a == 1 && i > 0);
        if (!unit) s += a.get_str();
        if (i > 0) {
            if (!unit) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

// ---------------------------------------------------------------- RatPoly

void RatPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RatPoly RatPoly::x_power(std::size_t n) {
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    return RatPoly(std::move(c));
}

const Rational& RatPoly::lc() const {
    if (c_.empty()) throw Error("leading coefficient of zero polynomial");
    return c_.back();
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return RatPoly(std::move(r));
}

RatPoly RatPoly::operator-(const RatPoly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return RatPoly(std::move(r));
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
    if (is_zero() || o.is_zero()) return RatPoly();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return RatPoly(std::move(r));
}

RatPoly RatPoly::operator-() const {
    std::vector<Rational> r(c_);
    for (auto& v : r) v = -v;
    return RatPoly(std::move(r));
}

RatPoly RatPoly::scale(const Rational& s) const {
    std::vector<Rational> r(c_);
    for (auto& v : r) v *= s;
    return RatPoly(std::move(r));
}

RatPoly RatPoly::monic() const {
    if (is_zero()) return RatPoly();
    return scale(Rational(1) / lc());
}

RatPoly RatPoly::derivative() const {
    if (c_.size() <= 1) return RatPoly();
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return RatPoly(std::move(r));
}

Rational RatPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RInterval RatPoly::eval(const RInterval& x) const {
    RInterval acc = RInterval::zero(x.prec());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + RInterval::from_rational(*it, x.prec());
    return acc;
}

CInterval RatPoly::eval(const CInterval& x, mpfr_prec_t prec) const {
    CInterval acc = CInterval::exact_real(Rational(0), prec);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x;
        acc.re = acc.re + RInterval::from_rational(*it, prec);
    }
    return acc;
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& d) const {
    if (d.is_zero()) throw Error("polynomial division by zero");
    if (degree() < d.degree()) return {RatPoly(), *this};
    std::vector<Rational> rem(c_);
    std::vector<Rational> quot(static_cast<std::size_t>(degree() - d.degree()) + 1, Rational(0));
    const Rational& dl = d.lc();
    for (int i = degree(); i >= d.degree(); --i) {
        Rational f = rem[static_cast<std::size_t>(i)] / dl;
        if (f == 0) continue;
        quot[static_cast<std::size_t>(i - d.degree())] = f;
        for (int j = 0; j <= d.degree(); ++j)
            rem[static_cast<std::size_t>(i - d.degree() + j)] -= f * d[static_cast<std::size_t>(j)];
    }
    return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

IntPoly RatPoly::primitive_integer() const {
    if (is_zero()) return IntPoly();
    Integer den = 1;
    for (const auto& v : c_) den = lcm(den, v.get_den());
    std::vector<Integer> z(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        Rational v = c_[i] * Rational(den);
        z[i] = v.get_num();
    }
    return IntPoly(std::move(z)).primitive_part();
}

std::string RatPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        const Rational& v = c_[static_cast<std::size_t>(i)];
        if (v == 0) continue;
        if (!s.empty()) s += v > 0 ? " + " : " - ";
        else if (v < 0) s += "-";
        Rational a = abs(v);
        bool unit = (a == 1 && i > 0);
        if (!unit) s += pillai::to_string(a);
        if (i > 0) {
            if (!unit) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

// ------------------------------------------------------------- free funcs

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    RatPoly f = a.to_rat();
    RatPoly g = b.to_rat();
    while (!g.is_zero()) {
        RatPoly r = f.mod(g);
        f = g;
        // keep coefficients tame
        g = r.is_zero() ? RatPoly() : r.monic();
    }
    return f.primitive_integer();
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p) {
    // Yun's algorithm over Q, results normalized to primitive integer parts.
    std::vector<std::pair<IntPoly, int>> out;
    if (p.is_zero() || p.degree() == 0) return out;
    IntPoly f = p.primitive_part();
    IntPoly g = poly_gcd(f, f.derivative());
    if (g.degree() == 0) {
        out.emplace_back(f, 1);
        return out;
    }
    IntPoly w = f.divide_exact(g);
    IntPoly y = f.derivative().divide_exact(g);
    int mult = 1;
    while (true) {
        IntPoly z = y - w.derivative();
        if (z.is_zero()) {
            if (w.degree() > 0) out.emplace_back(w.primitive_part(), mult);
            break;
        }
        IntPoly h = poly_gcd(w, z);
        if (h.degree() > 0) out.emplace_back(h.primitive_part(), mult);
        w = w.divide_exact(h);
        y = z.divide_exact(h);
        ++mult;
    }
    return out;
}

IntPoly squarefree_part(const IntPoly& p) {
    IntPoly acc = IntPoly::constant(Integer(1));
    for (const auto& [g, m] : squarefree_decomposition(p)) acc = acc * g;
    return acc.primitive_part();
}

Rational resultant(const RatPoly& a, const RatPoly& b) {
    // res(f, g) = lc(g)^{deg f - deg r} * (-1)^{deg f * deg g} * res(g, r)
    if (a.is_zero() || b.is_zero()) return Rational(0);
    RatPoly f = a, g = b;
    Rational acc(1);
    while (g.degree() > 0) {
        RatPoly r = f.divmod(g).second;
        int df = f.degree(), dg = g.degree();
        int dr = r.is_zero() ? -1 : r.degree();
        if (r.is_zero()) return Rational(0);
        Rational sign = ((static_cast<long>(df) * dg) % 2 == 0) ? Rational(1) : Rational(-1);
        acc *= sign * qpow(g.lc(), df - dr);
        f = g;
        g = r;
    }
    // g constant: res(f, c) = c^{deg f}
    acc *= qpow(g[0], f.degree());
    return acc;
}

RatPoly powmod(const RatPoly& t, const Integer& e, const RatPoly& m) {
    if (m.degree() < 1) throw Error("powmod modulus must be non-constant");
    if (e < 0) throw Error("powmod negative exponent");
    RatPoly acc = RatPoly::constant(Rational(1));
    RatPoly base = t.mod(m);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return acc;
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = (acc * base).mod(m);
        if (i + 1 < bits) base = (base * base).mod(m);
    }
    return acc;
}

RatPoly interpolate(const std::vector<Integer>& xs, const std::vector<Rational>& ys) {
    if (xs.size() != ys.size()) throw Error("interpolation node/value mismatch");
    // Newton form, then expand.
    std::size_t n = xs.size();
    std::vector<Rational> coef(ys);
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            coef[i] = (coef[i] - coef[i - 1]) / Rational(xs[i] - xs[i - j]);
            if (i == j) break;
        }
    RatPoly acc = RatPoly::constant(coef[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) {
        RatPoly shift({Rational(-xs[i]), Rational(1)});
        acc = acc * shift + RatPoly::constant(coef[i]);
    }
    return acc;
}

// ----------------------------------------------- modular degree patterns

namespace {

using ModPoly = std::vector<std::uint64_t>;  // dense, index == exponent, mod p

void mod_trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mod_mul(r, a, p);
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) { return mod_pow(a, p - 2, p); }

ModPoly mod_mulp(const ModPoly& a, const ModPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p;
    }
    mod_trim(r);
    return r;
}

ModPoly mod_mod(ModPoly a, const ModPoly& m, std::uint64_t p) {
    std::uint64_t inv_lm = mod_inv(m.back(), p);
    while (a.size() >= m.size() && !a.empty()) {
        std::uint64_t f = mod_mul(a.back(), inv_lm, p);
        std::size_t off = a.size() - m.size();
        for (std::size_t j = 0; j < m.size(); ++j) {
            std::uint64_t sub = mod_mul(f, m[j], p);
            a[off + j] = (a[off + j] + p - sub) % p;
        }
        mod_trim(a);
        if (a.size() >= m.size() && a.size() && a.back() == 0) mod_trim(a);
        if (a.empty()) break;
        if (a.size() >= m.size() && a.back() != 0) continue;
    }
    mod_trim(a);
    return a;
}

ModPoly mod_gcd(ModPoly a, ModPoly b, std::uint64_t p) {
    while (!b.empty()) {
        ModPoly r = mod_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::uint64_t inv = mod_inv(a.back(), p);
        for (auto& v : a) v = mod_mul(v, inv, p);
    }
    return a;
}

ModPoly mod_powmod_x(std::uint64_t e_base, int reps, const ModPoly& m, std::uint64_t p) {
    // computes x^(p^reps) mod m by repeated exponentiation
    ModPoly x = {0, 1};
    ModPoly acc = mod_mod(x, m, p);
    for (int r = 0; r < reps; ++r) {
        // acc = acc^p mod m
        ModPoly result = {1};
        ModPoly base = acc;
        std::uint64_t e = e_base;
        while (e) {
            if (e & 1) result = mod_mod(mod_mulp(result, base, p), m, p);
            base = mod_mod(mod_mulp(base, base, p), m, p);
            e >>= 1;
        }
        acc = result;
    }
    return acc;
}

ModPoly reduce_mod(const IntPoly& f, std::uint64_t p) {
    ModPoly r(f.coeffs().size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        Integer c = f[i] % Integer(static_cast<unsigned long>(p));
        if (c < 0) c += Integer(static_cast<unsigned long>(p));
        r[i] = c.get_ui();
    }
    mod_trim(r);
    return r;
}

// Distinct-degree factorization: returns for each d the number of degree-d
// irreducible factors of f mod p. Requires f mod p square-free with degree
// preserved; returns empty vector when that fails.
std::vector<int> ddf_pattern(const IntPoly& f, std::uint64_t p) {
    ModPoly fm = reduce_mod(f, p);
    if (static_cast<int>(fm.size()) - 1 != f.degree()) return {};
    ModPoly d = fm;
    // derivative
    ModPoly der(fm.size() > 1 ? fm.size() - 1 : 0);
    for (std::size_t i = 1; i < fm.size(); ++i) der[i - 1] = mod_mul(fm[i], i % p, p);
    mod_trim(der);
    if (der.empty()) return {};
    ModPoly g = mod_gcd(fm, der, p);
    if (g.size() > 1) return {};  // not square-free mod p
    std::vector<int> counts;
    ModPoly rem = fm;
    ModPoly h = {0, 1};  // x
    int deg_done = 0;
    int dd = 1;
    while (static_cast<int>(rem.size()) - 1 > 0) {
        if (2 * dd > static_cast<int>(rem.size()) - 1) {
            // remainder is irreducible of its own degree
            counts.resize(std::max<std::size_t>(counts.size(), rem.size() - 1), 0);
            counts[rem.size() - 2] += 1;
            break;
        }
        // h = h^p mod rem
        {
            ModPoly result = {1};
            ModPoly base = mod_mod(h, rem, p);
            std::uint64_t e = p;
            while (e) {
                if (e & 1) result = mod_mod(mod_mulp(result, base, p), rem, p);
                base = mod_mod(mod_mulp(base, base, p), rem, p);
                e >>= 1;
            }
            h = result;
        }
        // gcd(h - x, rem); h == x means every remaining factor has degree dd
        ModPoly hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = (hx[1] + p - 1) % p;
        mod_trim(hx);
        ModPoly g2 = hx.empty() ? rem : mod_gcd(rem, hx, p);
        if (g2.size() > 1) {
            int deg_g = static_cast<int>(g2.size()) - 1;
            counts.resize(std::max<std::size_t>(counts.size(), static_cast<std::size_t>(dd)), 0);
            counts[static_cast<std::size_t>(dd - 1)] += deg_g / dd;
            // rem /= g2
            ModPoly q;
            {
                ModPoly num = rem;
                std::uint64_t inv = mod_inv(g2.back(), p);
                q.assign(num.size() - g2.size() + 1, 0);
                for (int i = static_cast<int>(num.size()) - 1;
                     i >= static_cast<int>(g2.size()) - 1; --i) {
                    std::uint64_t fq = mod_mul(num[static_cast<std::size_t>(i)], inv, p);
                    q[static_cast<std::size_t>(i) - g2.size() + 1] = fq;
                    for (std::size_t j = 0; j < g2.size(); ++j) {
                        std::size_t idx = static_cast<std::size_t>(i) - g2.size() + 1 + j;
                        num[idx] = (num[idx] + p - mod_mul(fq, g2[j], p)) % p;
                    }
                }
                rem = q;
                mod_trim(rem);
            }
            h = mod_mod(h, rem.empty() ? ModPoly{1} : rem, p);
        }
        deg_done += 0;
        ++dd;
        if (rem.size() <= 1) break;
    }
    return counts;
}

std::set<int> subset_sums(const std::vector<int>& counts) {
    // counts[d-1] = number of irreducible degree-d blocks
    std::set<int> sums = {0};
    for (std::size_t d = 1; d <= counts.size(); ++d) {
        for (int rep = 0; rep < counts[d - 1]; ++rep) {
            std::set<int> next = sums;
            for (int s : sums) next.insert(s + static_cast<int>(d));
            sums = std::move(next);
        }
    }
    return sums;
}

}  // namespace

std::set<int> factor_degree_candidates(const IntPoly& f) {
    static const std::uint64_t primes[] = {1000003, 1000033, 1000037, 1000039,
                                           1000081, 1000099, 1000117, 1000121};
    std::set<int> allowed;
    for (int d = 0; d <= f.degree(); ++d) allowed.insert(d);
    int used = 0;
    for (std::uint64_t p : primes) {
        if (used >= 4) break;
        std::vector<int> pattern = ddf_pattern(f, p);
        if (pattern.empty()) continue;
        ++used;
        std::set<int> sums = subset_sums(pattern);
        std::set<int> next;
        for (int v : allowed)
            if (sums.count(v)) next.insert(v);
        allowed = std::move(next);
        if (allowed.size() <= 2) break;  // only {0, deg} left: irreducible
    }
    return allowed;
}

IntPoly cyclotomic_polynomial(unsigned long n) {
    static std::map<unsigned long, IntPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    // Phi_d = (X^d - 1) / prod_{e | d, e < d} Phi_e, divisors in ascending order
    for (unsigned long d = 1; d <= n; ++d) {
        if (n % d != 0 || cache.count(d)) continue;
        std::vector<Integer> xd(d + 1, Integer(0));
        xd[0] = -1;
        xd[d] = 1;
        IntPoly acc(std::move(xd));
        for (unsigned long e = 1; e < d; ++e)
            if (d % e == 0) acc = acc.divide_exact(cache.at(e));
        cache[d] = acc;
    }
    return cache.at(n);
}

}  // namespace pillai
