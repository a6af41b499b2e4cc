#include "pillai.h"

#include <cstring>
#include <string>

#include "pillai/bound_chain.hpp"
#include "pillai/json_io.hpp"
#include "pillai/search.hpp"

using namespace pillai;

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_stage;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

struct OptionsImpl {
    mpfr_prec_t precision_bits = 128;
    int threads = 1;
    Integer box_ceiling = 1000000;
};

AnalyzeOptions analyze_opts(const OptionsImpl* o) {
    AnalyzeOptions a;
    if (o != nullptr) {
        a.precision.start_bits = std::max<mpfr_prec_t>(128, o->precision_bits);
        a.precision.max_bits = std::max<mpfr_prec_t>(a.precision.start_bits * 128, 1 << 14);
    }
    return a;
}

template <typename Fn>
pillai_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        g_last_stage.clear();
        return fn();
    } catch (const HypothesisFailure& e) {
        g_last_error = e.what();
        g_last_stage = e.stage;
        return PILLAI_ERR_HYPOTHESIS;
    } catch (const PrecisionExhausted& e) {
        g_last_error = e.what();
        return PILLAI_ERR_PRECISION;
    } catch (const UnsupportedPlaceStructure& e) {
        g_last_error = e.what();
        return PILLAI_ERR_UNSUPPORTED;
    } catch (const BoxTooLarge& e) {
        g_last_error = e.what();
        return PILLAI_ERR_BOX_TOO_LARGE;
    } catch (const ParseError& e) {
        g_last_error = e.what();
        return PILLAI_ERR_PARSE;
    } catch (const Error& e) {
        g_last_error = e.what();
        return PILLAI_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PILLAI_ERR_INTERNAL;
    }
}

}  // namespace

struct pillai_options {
    OptionsImpl impl;
};

struct pillai_sequence {
    RecurrenceSpec spec;
    // analysis is computed on demand and cached per handle
    std::shared_ptr<SequenceAnalysis> analysis;
    std::mutex mu;

    const SequenceAnalysis& analyzed(const OptionsImpl* o) {
        std::lock_guard<std::mutex> lock(mu);
        if (!analysis) {
            auto an = std::make_shared<SequenceAnalysis>(analyze_sequence(spec, analyze_opts(o)));
            analysis = std::move(an);
        }
        return *analysis;
    }
};

extern "C" {

const char* pillai_last_error(void) { return g_last_error.c_str(); }
const char* pillai_last_error_stage(void) { return g_last_stage.c_str(); }

void pillai_string_free(char* s) { std::free(s); }

pillai_options* pillai_options_create(void) { return new pillai_options(); }

void pillai_options_free(pillai_options* opts) { delete opts; }

pillai_status pillai_options_set_precision_bits(pillai_options* opts, long bits) {
    if (opts == nullptr || bits < 32 || bits > (1L << 22)) return PILLAI_ERR_INVALID_ARGUMENT;
    opts->impl.precision_bits = bits;
    return PILLAI_OK;
}

pillai_status pillai_options_set_threads(pillai_options* opts, int threads) {
    if (opts == nullptr || threads < 1 || threads > 1024) return PILLAI_ERR_INVALID_ARGUMENT;
    opts->impl.threads = threads;
    return PILLAI_OK;
}

pillai_status pillai_options_set_box_ceiling(pillai_options* opts, long cells) {
    if (opts == nullptr || cells < 1) return PILLAI_ERR_INVALID_ARGUMENT;
    opts->impl.box_ceiling = cells;
    return PILLAI_OK;
}

pillai_status pillai_sequence_from_json(const char* json_text, pillai_sequence** out) {
    if (json_text == nullptr || out == nullptr) return PILLAI_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        RecurrenceSpec spec = parse_spec_json(json_text);
        spec.validate();
        auto* seq = new pillai_sequence();
        seq->spec = std::move(spec);
        *out = seq;
        return PILLAI_OK;
    });
}

pillai_status pillai_sequence_load_file(const char* path, pillai_sequence** out) {
    if (path == nullptr || out == nullptr) return PILLAI_ERR_INVALID_ARGUMENT;
    return guarded([&]() -> pillai_status {
        RecurrenceSpec spec;
        try {
            spec = load_spec_file(path);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            g_last_error = e.what();
            return PILLAI_ERR_IO;
        }
        spec.validate();
        auto* seq = new pillai_sequence();
        seq->spec = std::move(spec);
        *out = seq;
        return PILLAI_OK;
    });
}

void pillai_sequence_free(pillai_sequence* seq) { delete seq; }

pillai_status pillai_sequence_term(const pillai_sequence* seq, long n, char** out) {
    if (seq == nullptr || out == nullptr || n < 0) return PILLAI_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = dup_string(term(seq->spec, n).get_str());
        return PILLAI_OK;
    });
}

pillai_status pillai_sequence_label(const pillai_sequence* seq, char** out) {
    if (seq == nullptr || out == nullptr) return PILLAI_ERR_INVALID_ARGUMENT;
    *out = dup_string(seq->spec.label);
    return PILLAI_OK;
}

pillai_status pillai_analyze(const pillai_sequence* seq, const pillai_options* opts,
                             char** out_json) {
    if (seq == nullptr || out_json == nullptr) return PILLAI_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        auto* s = const_cast<pillai_sequence*>(seq);
        const SequenceAnalysis& an = s->analyzed(opts ? &opts->impl : nullptr);
        *out_json = dup_string(analysis_to_json(an));
        return PILLAI_OK;
    });
}

pillai_status pillai_independence(const pillai_sequence* u, const pillai_sequence* v,
                                  const pillai_options* opts, int* out_independent,
                                  char** out_json) {
    if (u == nullptr || v == nullptr || out_independent == nullptr)
        return PILLAI_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        auto* su = const_cast<pillai_sequence*>(u);
        auto* sv = const_cast<pillai_sequence*>(v);
        const OptionsImpl* o = opts ? &opts->impl : nullptr;
        const SequenceAnalysis& au = su->analyzed(o);
        const SequenceAnalysis& av = sv->analyzed(o);
        IndependenceResult res = mult_independent(*au.alpha, *av.alpha);
        *out_independent = res.verdict == IndependenceResult::Verdict::Pass ? 1 : 0;
        if (out_json != nullptr)
            *out_json = dup_string(independence_to_json(res, au.spec.label, av.spec.label));
        if (res.verdict == IndependenceResult::Verdict::Inconclusive) {
            g_last_error = res.note;
            return PILLAI_ERR_PRECISION;
        }
        return PILLAI_OK;
    });
}

pillai_status pillai_bound(const pillai_sequence* u, const pillai_sequence* v,
                           const pillai_options* opts, char** out_json) {
    if (u == nullptr || v == nullptr || out_json == nullptr) return PILLAI_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        auto* su = const_cast<pillai_sequence*>(u);
        auto* sv = const_cast<pillai_sequence*>(v);
        const OptionsImpl* o = opts ? &opts->impl : nullptr;
        const SequenceAnalysis& au = su->analyzed(o);
        const SequenceAnalysis& av = sv->analyzed(o);
        DeriveOptions d;
        if (o != nullptr) d.working_bits = std::max<mpfr_prec_t>(192, o->precision_bits);
        BoundReport rep = derive_all(au, av, d);
        // attach the place system of the oriented pair for the audit trail
        bool swapped = false;
        auto [U, V] = orient(au, av, swapped);
        FieldJoin join = compose_field(*U->alpha, *V->alpha, d.field_degree_ceiling, d.precision);
        PlaceSystem ps = compute_C0(*U->alpha, *V->alpha, join, d.precision);
        *out_json = dup_string(bound_report_to_json(rep, &ps));
        return PILLAI_OK;
    });
}

namespace {

pillai_status run_search(const pillai_sequence* u, const pillai_sequence* v, long n_lo, long n_hi,
                         long m_lo, long m_hi, const pillai_options* opts,
                         RepresentationTable& table) {
    SearchBox box{n_lo, n_hi, m_lo, m_hi};
    box.validate();
    SearchOptions so;
    if (opts != nullptr) {
        so.threads = opts->impl.threads;
        so.cell_ceiling = opts->impl.box_ceiling;
    }
    table = enumerate_representations(u->spec, v->spec, box, so);
    return PILLAI_OK;
}

}  // namespace

pillai_status pillai_search(const pillai_sequence* u, const pillai_sequence* v, long n_lo,
                            long n_hi, long m_lo, long m_hi, const pillai_options* opts,
                            char** out_json) {
    if (u == nullptr || v == nullptr || out_json == nullptr) return PILLAI_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        RepresentationTable table;
        pillai_status st = run_search(u, v, n_lo, n_hi, m_lo, m_hi, opts, table);
        if (st != PILLAI_OK) return st;
        *out_json = dup_string(table_to_json(table));
        return PILLAI_OK;
    });
}

pillai_status pillai_search_csv(const pillai_sequence* u, const pillai_sequence* v, long n_lo,
                                long n_hi, long m_lo, long m_hi, const pillai_options* opts,
                                char** out_csv) {
    if (u == nullptr || v == nullptr || out_csv == nullptr) return PILLAI_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        RepresentationTable table;
        pillai_status st = run_search(u, v, n_lo, n_hi, m_lo, m_hi, opts, table);
        if (st != PILLAI_OK) return st;
        *out_csv = dup_string(table_to_csv(table));
        return PILLAI_OK;
    });
}

pillai_status pillai_verify(const pillai_sequence* u, const pillai_sequence* v, long n_lo,
                            long n_hi, long m_lo, long m_hi, const char* expected_path,
                            const pillai_options* opts, int* out_match, char** out_json) {
    if (u == nullptr || v == nullptr || expected_path == nullptr || out_match == nullptr)
        return PILLAI_ERR_INVALID_ARGUMENT;
    return guarded([&]() -> pillai_status {
        std::vector<Integer> expected;
        try {
            expected = read_expected_set(expected_path);
        } catch (const ParseError& e) {
            if (std::string(e.what()).find("cannot open") != std::string::npos) {
                g_last_error = e.what();
                return PILLAI_ERR_IO;
            }
            throw;
        }
        RepresentationTable table;
        pillai_status st = run_search(u, v, n_lo, n_hi, m_lo, m_hi, opts, table);
        if (st != PILLAI_OK) return st;
        DiffReport diff = verify_against(multi_represented(table), expected);
        *out_match = diff.pass() ? 1 : 0;
        if (out_json != nullptr) *out_json = dup_string(verify_to_json(table, expected, diff));
        return PILLAI_OK;
    });
}

}  // extern "C"
