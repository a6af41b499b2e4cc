#pragma once

#include <map>
#include <string>
#include <vector>

#include "pillai/recurrence.hpp"

namespace pillai {

struct DeriveOptions {
    PrecisionPolicy precision;
    mpfr_prec_t working_bits = 192;
    unsigned long independence_ceiling = 1000000;
    int field_degree_ceiling = 24;
    // test hook: inflate the U-side upper growth constant before deriving
    // (monotone-consistency checks); 1 = no perturbation
    Rational u_c2_scale = 1;
};

struct TraceEntry {
    std::string name;       // "C18", "gamma", "N4", ...
    int index = -1;         // numeric C-index when applicable
    std::string value;      // exact rational or outward decimal interval
    std::string formula;
    std::vector<std::string> depends_on;
    std::string anchor;     // derivation stage tag
};

// The audited constant chain for one ordered pair.
struct BoundReport {
    std::string u_label, v_label;
    bool swapped = false;  // orient() exchanged the inputs so |alpha| > |beta|

    Rational C0;  // positive rational lower bound from the place system
    std::map<std::string, Rational> constants;  // C1..C45 and named auxiliaries
    Integer M3 = 2;
    Integer N3 = 0, N4 = 2, M4 = 2;
    Rational gamma_lo, gamma_hi, Gamma_lo, Gamma_hi;
    Integer C45 = 0;
    std::map<std::string, Integer> exits;  // degeneracy exits per vanishing form
    Integer bound = 0;                     // max of C45, exits, N4, M4
    std::vector<TraceEntry> trace;

    const Rational& c(const std::string& name) const;
};

// Least integer m* >= 2 with A*m > B*(log m)^p + C for ALL m >= m*.
// A > 0, B >= 0, p >= 1; certified interval evaluation throughout.
Integer solve_log_inequality(const Rational& A, const Rational& B, int p, const Rational& C);

// Ordered so the first analysis has the strictly larger dominant modulus.
// Throws HypothesisFailure("orient") when the moduli are provably equal or
// cannot be separated.
std::pair<const SequenceAnalysis*, const SequenceAnalysis*> orient(const SequenceAnalysis& a,
                                                                   const SequenceAnalysis& b,
                                                                   bool& swapped);

// Full derivation: orient -> place system/C0 -> cross constants -> the three
// linear-form stages -> gamma/Gamma -> C45 -> integer BOUND covering both
// index orders.
BoundReport derive_all(const SequenceAnalysis& a, const SequenceAnalysis& b,
                       const DeriveOptions& opts = {});

}  // namespace pillai
