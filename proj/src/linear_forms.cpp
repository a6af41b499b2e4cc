#include "pillai/linear_forms.hpp"

#include "pillai/errors.hpp"
#include "pillai/heights.hpp"

namespace pillai {

RInterval bw_constant(int k, int d, mpfr_prec_t prec) {
    if (k < 1 || d < 1) throw Error("bw_constant needs k >= 1 and d >= 1");
    Integer rat = 18 * factorial(static_cast<unsigned long>(k + 1)) *
                  ipow(Integer(k), static_cast<unsigned long>(k + 1)) *
                  ipow(Integer(32) * d, static_cast<unsigned long>(k + 2));
    RInterval lg = RInterval::log_integer(Integer(2) * k * d, prec);
    return lg.mul_rational(Rational(rat));
}

RInterval lambda_lower_bound(const LinearFormInstance& inst, mpfr_prec_t prec) {
    if (inst.k < 1 || static_cast<int>(inst.modified_heights.size()) != inst.k)
        throw Error("malformed linear form instance");
    bool all_zero = true;
    for (const auto& b : inst.coefficients)
        if (b != 0) all_zero = false;
    if (all_zero) throw Error("linear form coefficients must not all vanish");
    RInterval prod = bw_constant(inst.k, inst.d, prec);
    for (const auto& h : inst.modified_heights) prod = prod * h;
    prod = prod * linear_form_height(inst.coefficients, prec);
    return -prod;
}

RInterval phi_lower_bound(const LinearFormInstance& inst, mpfr_prec_t prec) {
    return lambda_lower_bound(inst, prec) - RInterval::log2(prec);
}

}  // namespace pillai
