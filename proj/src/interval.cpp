#include "pillai/interval.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "pillai/errors.hpp"

namespace pillai {

namespace {
constexpr mpfr_prec_t kDefaultPrec = 128;
}

RInterval::RInterval() {
    mpfr_init2(lo_, kDefaultPrec);
    mpfr_init2(hi_, kDefaultPrec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

RInterval::RInterval(mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

RInterval::RInterval(const RInterval& o) {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RInterval::RInterval(RInterval&& o) noexcept {
    mpfr_init2(lo_, 2);
    mpfr_init2(hi_, 2);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

RInterval& RInterval::operator=(const RInterval& o) {
    if (this != &o) {
        mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
        mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

RInterval& RInterval::operator=(RInterval&& o) noexcept {
    if (this != &o) {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    return *this;
}

RInterval::~RInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

RInterval RInterval::exact(long v, mpfr_prec_t prec) {
    RInterval r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

RInterval RInterval::from_integer(const Integer& z, mpfr_prec_t prec) {
    RInterval r(prec);
    mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
    return r;
}

RInterval RInterval::from_rational(const Rational& q, mpfr_prec_t prec) {
    RInterval r(prec);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

RInterval RInterval::from_endpoints(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
    RInterval r(prec);
    mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
    return r;
}

RInterval RInterval::zero(mpfr_prec_t prec) { return exact(0, prec); }

Rational RInterval::lo_rational() const {
    if (!mpfr_number_p(lo_)) throw Error("non-finite interval endpoint");
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, lo_);
    Rational r(q);
    mpq_clear(q);
    return r;
}

Rational RInterval::hi_rational() const {
    if (!mpfr_number_p(hi_)) throw Error("non-finite interval endpoint");
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, hi_);
    Rational r(q);
    mpq_clear(q);
    return r;
}

Rational RInterval::mid_rational() const {
    return (lo_rational() + hi_rational()) / 2;
}

Rational RInterval::width_rational() const { return hi_rational() - lo_rational(); }

namespace {
inline mpfr_prec_t join_prec(const RInterval& a, const RInterval& b) {
    return std::max(a.prec(), b.prec());
}
}  // namespace

RInterval RInterval::operator+(const RInterval& o) const {
    RInterval r(join_prec(*this, o));
    mpfr_add(const_cast<mpfr_ptr>(r.lo()), lo_, o.lo_, MPFR_RNDD);
    mpfr_add(const_cast<mpfr_ptr>(r.hi()), hi_, o.hi_, MPFR_RNDU);
    return r;
}

RInterval RInterval::operator-(const RInterval& o) const {
    RInterval r(join_prec(*this, o));
    mpfr_sub(const_cast<mpfr_ptr>(r.lo()), lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(const_cast<mpfr_ptr>(r.hi()), hi_, o.lo_, MPFR_RNDU);
    return r;
}

RInterval RInterval::operator*(const RInterval& o) const {
    RInterval r(join_prec(*this, o));
    mpfr_t t;
    mpfr_init2(t, r.prec());
    // lower bound: min over endpoint products rounded down
    mpfr_mul(const_cast<mpfr_ptr>(r.lo()), lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(t, lo_, o.hi_, MPFR_RNDD);
    mpfr_min(const_cast<mpfr_ptr>(r.lo()), r.lo(), t, MPFR_RNDD);
    mpfr_mul(t, hi_, o.lo_, MPFR_RNDD);
    mpfr_min(const_cast<mpfr_ptr>(r.lo()), r.lo(), t, MPFR_RNDD);
    mpfr_mul(t, hi_, o.hi_, MPFR_RNDD);
    mpfr_min(const_cast<mpfr_ptr>(r.lo()), r.lo(), t, MPFR_RNDD);
    // upper bound: max over endpoint products rounded up
    mpfr_mul(const_cast<mpfr_ptr>(r.hi()), lo_, o.lo_, MPFR_RNDU);
    mpfr_mul(t, lo_, o.hi_, MPFR_RNDU);
    mpfr_max(const_cast<mpfr_ptr>(r.hi()), r.hi(), t, MPFR_RNDU);
    mpfr_mul(t, hi_, o.lo_, MPFR_RNDU);
    mpfr_max(const_cast<mpfr_ptr>(r.hi()), r.hi(), t, MPFR_RNDU);
    mpfr_mul(t, hi_, o.hi_, MPFR_RNDU);
    mpfr_max(const_cast<mpfr_ptr>(r.hi()), r.hi(), t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

RInterval RInterval::operator/(const RInterval& o) const {
    if (o.contains_zero()) throw Error("interval division by an interval containing zero");
    RInterval r(join_prec(*this, o));
    mpfr_t t;
    mpfr_init2(t, r.prec());
    mpfr_div(const_cast<mpfr_ptr>(r.lo()), lo_, o.lo_, MPFR_RNDD);
    mpfr_div(t, lo_, o.hi_, MPFR_RNDD);
    mpfr_min(const_cast<mpfr_ptr>(r.lo()), r.lo(), t, MPFR_RNDD);
    mpfr_div(t, hi_, o.lo_, MPFR_RNDD);
    mpfr_min(const_cast<mpfr_ptr>(r.lo()), r.lo(), t, MPFR_RNDD);
    mpfr_div(t, hi_, o.hi_, MPFR_RNDD);
    mpfr_min(const_cast<mpfr_ptr>(r.lo()), r.lo(), t, MPFR_RNDD);

    mpfr_div(const_cast<mpfr_ptr>(r.hi()), lo_, o.lo_, MPFR_RNDU);
    mpfr_div(t, lo_, o.hi_, MPFR_RNDU);
    mpfr_max(const_cast<mpfr_ptr>(r.hi()), r.hi(), t, MPFR_RNDU);
    mpfr_div(t, hi_, o.lo_, MPFR_RNDU);
    mpfr_max(const_cast<mpfr_ptr>(r.hi()), r.hi(), t, MPFR_RNDU);
    mpfr_div(t, hi_, o.hi_, MPFR_RNDU);
    mpfr_max(const_cast<mpfr_ptr>(r.hi()), r.hi(), t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

RInterval RInterval::operator-() const {
    RInterval r(prec());
    mpfr_neg(const_cast<mpfr_ptr>(r.lo()), hi_, MPFR_RNDD);
    mpfr_neg(const_cast<mpfr_ptr>(r.hi()), lo_, MPFR_RNDU);
    return r;
}

RInterval RInterval::add_rational(const Rational& q) const {
    RInterval r(prec());
    mpfr_add_q(const_cast<mpfr_ptr>(r.lo()), lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_add_q(const_cast<mpfr_ptr>(r.hi()), hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

RInterval RInterval::mul_rational(const Rational& q) const {
    return *this * from_rational(q, prec());
}

RInterval RInterval::abs() const {
    RInterval r(prec());
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return -*this;
    // straddles zero
    mpfr_set_zero(const_cast<mpfr_ptr>(r.lo()), 1);
    mpfr_neg(const_cast<mpfr_ptr>(r.hi()), lo_, MPFR_RNDU);
    mpfr_max(const_cast<mpfr_ptr>(r.hi()), r.hi(), hi_, MPFR_RNDU);
    return r;
}

RInterval RInterval::sqrt() const {
    RInterval r(prec());
    if (mpfr_sgn(lo_) < 0) {
        if (mpfr_sgn(hi_) < 0) throw Error("sqrt of a certainly negative interval");
        mpfr_set_zero(const_cast<mpfr_ptr>(r.lo()), 1);
    } else {
        mpfr_sqrt(const_cast<mpfr_ptr>(r.lo()), lo_, MPFR_RNDD);
    }
    mpfr_sqrt(const_cast<mpfr_ptr>(r.hi()), hi_, MPFR_RNDU);
    return r;
}

RInterval RInterval::log() const {
    if (!is_positive()) throw Error("log of an interval not certainly positive");
    RInterval r(prec());
    mpfr_log(const_cast<mpfr_ptr>(r.lo()), lo_, MPFR_RNDD);
    mpfr_log(const_cast<mpfr_ptr>(r.hi()), hi_, MPFR_RNDU);
    return r;
}

RInterval RInterval::exp() const {
    RInterval r(prec());
    mpfr_exp(const_cast<mpfr_ptr>(r.lo()), lo_, MPFR_RNDD);
    mpfr_exp(const_cast<mpfr_ptr>(r.hi()), hi_, MPFR_RNDU);
    return r;
}

RInterval RInterval::pow_ui(unsigned long e) const {
    if (e == 0) return exact(1, prec());
    // binary powering keeps outward rounding through operator*
    RInterval base = *this;
    RInterval acc = exact(1, prec());
    while (e > 0) {
        if (e & 1UL) acc = acc * base;
        e >>= 1UL;
        if (e) base = base * base;
    }
    return acc;
}

RInterval RInterval::pow_integer(const Integer& e) const {
    if (e < 0) throw Error("pow_integer: negative exponent");
    if (e.fits_ulong_p()) return pow_ui(e.get_ui());
    // exponent too large to enumerate bits via ulong; walk mpz bits
    RInterval base = *this;
    RInterval acc = exact(1, prec());
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = acc * base;
        if (i + 1 < bits) base = base * base;
    }
    return acc;
}

RInterval RInterval::max(const RInterval& a, const RInterval& b) {
    RInterval r(join_prec(a, b));
    mpfr_max(const_cast<mpfr_ptr>(r.lo()), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(const_cast<mpfr_ptr>(r.hi()), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

RInterval RInterval::min(const RInterval& a, const RInterval& b) {
    RInterval r(join_prec(a, b));
    mpfr_min(const_cast<mpfr_ptr>(r.lo()), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_min(const_cast<mpfr_ptr>(r.hi()), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

RInterval RInterval::hull(const RInterval& a, const RInterval& b) {
    RInterval r(join_prec(a, b));
    mpfr_min(const_cast<mpfr_ptr>(r.lo()), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(const_cast<mpfr_ptr>(r.hi()), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

RInterval RInterval::log_integer(const Integer& z, mpfr_prec_t prec) {
    return from_integer(z, prec).log();
}

RInterval RInterval::log_rational(const Rational& q, mpfr_prec_t prec) {
    return from_rational(q, prec).log();
}

RInterval RInterval::log2(mpfr_prec_t prec) {
    RInterval r(prec);
    mpfr_const_log2(const_cast<mpfr_ptr>(r.lo()), MPFR_RNDD);
    mpfr_const_log2(const_cast<mpfr_ptr>(r.hi()), MPFR_RNDU);
    return r;
}

RInterval RInterval::euler_e(mpfr_prec_t prec) {
    return exact(1, prec).exp();
}

bool RInterval::contains(const Rational& q) const {
    return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool RInterval::contains(const Integer& z) const {
    return mpfr_cmp_z(lo_, z.get_mpz_t()) <= 0 && mpfr_cmp_z(hi_, z.get_mpz_t()) >= 0;
}

bool RInterval::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool RInterval::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool RInterval::is_negative() const { return mpfr_sgn(hi_) < 0; }

bool RInterval::certainly_lt(const RInterval& o) const {
    return mpfr_cmp(hi_, o.lo_) < 0;
}

bool RInterval::certainly_le(const RInterval& o) const {
    return mpfr_cmp(hi_, o.lo_) <= 0;
}

bool RInterval::certainly_lt(const Rational& q) const {
    return mpfr_cmp_q(hi_, q.get_mpq_t()) < 0;
}

bool RInterval::certainly_gt(const Rational& q) const {
    return mpfr_cmp_q(lo_, q.get_mpq_t()) > 0;
}

bool RInterval::intersects(const RInterval& o) const {
    return !(certainly_lt(o) || o.certainly_lt(*this));
}

namespace {
std::string format_dir(const mpfr_t& v, int digits, mpfr_rnd_t rnd) {
    char buf[512];
    std::string fmt = "%." + std::to_string(digits) + "R*g";
    mpfr_snprintf(buf, sizeof(buf), fmt.c_str(), rnd, v);
    return std::string(buf);
}
}  // namespace

std::string RInterval::lo_string(int digits) const {
    return format_dir(lo_, digits, MPFR_RNDD);
}

std::string RInterval::hi_string(int digits) const {
    return format_dir(hi_, digits, MPFR_RNDU);
}

CInterval CInterval::pow_ui(unsigned long e, mpfr_prec_t prec) const {
    CInterval acc = exact_real(Rational(1), prec);
    CInterval base = *this;
    while (e > 0) {
        if (e & 1UL) acc = acc * base;
        e >>= 1UL;
        if (e) base = base * base;
    }
    return acc;
}

bool CInterval::is_real_line() const {
    return mpfr_zero_p(im.lo()) && mpfr_zero_p(im.hi());
}

}  // namespace pillai
