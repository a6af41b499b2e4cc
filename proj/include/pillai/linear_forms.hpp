#pragma once

#include <vector>

#include "pillai/interval.hpp"
#include "pillai/numeric.hpp"

namespace pillai {

// One instance of a linear form in logarithms: Lambda = sum b_i log eta_i,
// with every eta_i real positive (absolute values are taken upstream) carried
// as a certified modified-height enclosure.
struct LinearFormInstance {
    int k = 0;  // number of logarithms
    int d = 1;  // degree of the ambient number field
    std::vector<RInterval> modified_heights;  // h'(eta_i), one per logarithm
    std::vector<Integer> coefficients;        // b_1..b_k
};

// 18 (k+1)! k^{k+1} (32 d)^{k+2} log(2 k d), as exact-rational * log interval.
RInterval bw_constant(int k, int d, mpfr_prec_t prec = 192);

// Certified lower bound for log|Lambda| assuming Lambda != 0:
//   -C(k,d) * prod h'(eta_i) * log B,   B = max{|b_i|, e}.
RInterval lambda_lower_bound(const LinearFormInstance& inst, mpfr_prec_t prec = 192);

// Lower bound for log|Phi| = log|prod eta_i^{b_i} - 1| under |Lambda| <= 1/2:
// lambda_lower_bound - log 2.
RInterval phi_lower_bound(const LinearFormInstance& inst, mpfr_prec_t prec = 192);

}  // namespace pillai
