#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "pillai/numeric.hpp"

namespace pillai {

// Closed real interval [lo, hi] with MPFR endpoints, all operations rounded
// outward (lo down, hi up). This is the only place floating point enters the
// toolkit; everything built on top treats an RInterval as a certified
// enclosure of one real number.
class RInterval {
public:
    RInterval();
    explicit RInterval(mpfr_prec_t prec);
    RInterval(const RInterval& o);
    RInterval(RInterval&& o) noexcept;
    RInterval& operator=(const RInterval& o);
    RInterval& operator=(RInterval&& o) noexcept;
    ~RInterval();

    static RInterval exact(long v, mpfr_prec_t prec);
    static RInterval from_integer(const Integer& z, mpfr_prec_t prec);
    static RInterval from_rational(const Rational& q, mpfr_prec_t prec);
    // [lo, hi] from two rationals (lo <= hi required).
    static RInterval from_endpoints(const Rational& lo, const Rational& hi, mpfr_prec_t prec);
    static RInterval zero(mpfr_prec_t prec);

    mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }

    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }

    // Exact rational value of an endpoint (MPFR numbers are dyadic).
    Rational lo_rational() const;
    Rational hi_rational() const;
    Rational mid_rational() const;
    Rational width_rational() const;

    double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double mid_d() const { return 0.5 * (lo_d() + hi_d()); }

    bool is_finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }

    RInterval operator+(const RInterval& o) const;
    RInterval operator-(const RInterval& o) const;
    RInterval operator*(const RInterval& o) const;
    RInterval operator/(const RInterval& o) const;  // requires o certainly nonzero
    RInterval operator-() const;

    RInterval add_rational(const Rational& q) const;
    RInterval mul_rational(const Rational& q) const;

    RInterval abs() const;
    RInterval sqrt() const;  // requires lower bound >= 0 (clamped at 0)
    RInterval log() const;   // requires certainly positive
    RInterval exp() const;
    RInterval pow_ui(unsigned long e) const;
    RInterval pow_integer(const Integer& e) const;  // e >= 0

    static RInterval max(const RInterval& a, const RInterval& b);
    static RInterval min(const RInterval& a, const RInterval& b);
    static RInterval hull(const RInterval& a, const RInterval& b);

    // log(z) for an exact big integer z >= 1, at precision prec.
    static RInterval log_integer(const Integer& z, mpfr_prec_t prec);
    static RInterval log_rational(const Rational& q, mpfr_prec_t prec);
    static RInterval log2(mpfr_prec_t prec);
    static RInterval euler_e(mpfr_prec_t prec);

    bool contains(const Rational& q) const;
    bool contains(const Integer& z) const;
    bool contains_zero() const;
    bool is_positive() const;  // lo > 0 certified
    bool is_negative() const;  // hi < 0 certified

    // Certified comparisons: true only when provable from the enclosures.
    bool certainly_lt(const RInterval& o) const;
    bool certainly_le(const RInterval& o) const;
    bool certainly_gt(const RInterval& o) const { return o.certainly_lt(*this); }
    bool certainly_ge(const RInterval& o) const { return o.certainly_le(*this); }
    bool certainly_lt(const Rational& q) const;
    bool certainly_gt(const Rational& q) const;
    bool intersects(const RInterval& o) const;

    // Decimal strings rounded outward, suitable for the JSON reports.
    std::string lo_string(int digits = 20) const;
    std::string hi_string(int digits = 20) const;

private:
    mpfr_t lo_;
    mpfr_t hi_;
};

// Rectangular complex interval (re + i*im).
class CInterval {
public:
    CInterval() = default;
    CInterval(RInterval re_, RInterval im_) : re(std::move(re_)), im(std::move(im_)) {}

    static CInterval exact_real(const Rational& q, mpfr_prec_t prec) {
        return {RInterval::from_rational(q, prec), RInterval::zero(prec)};
    }

    CInterval operator+(const CInterval& o) const { return {re + o.re, im + o.im}; }
    CInterval operator-(const CInterval& o) const { return {re - o.re, im - o.im}; }
    CInterval operator*(const CInterval& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    // requires |o| certainly nonzero
    CInterval operator/(const CInterval& o) const {
        RInterval n2 = o.norm2();
        CInterval num = *this * o.conj();
        return {num.re / n2, num.im / n2};
    }
    CInterval operator-() const { return {-re, -im}; }
    CInterval conj() const { return {re, -im}; }

    RInterval norm2() const { return re * re + im * im; }  // |z|^2
    RInterval abs() const { return norm2().sqrt(); }

    CInterval pow_ui(unsigned long e, mpfr_prec_t prec) const;

    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool is_real_line() const;  // im == [0,0] exactly

    RInterval re, im;
};

}  // namespace pillai
