// Command-line front end. Talks to the core exclusively through the C API in
// pillai.h: machine-readable JSON (or CSV) goes to stdout, a short human
// summary to stderr.
//
// Exit codes: 0 success, 1 I/O or parse error, 2 hypothesis failure,
// 64 usage error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "pillai.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitUsage = 64;

struct StringOut {
    char* s = nullptr;
    ~StringOut() { pillai_string_free(s); }
};

struct SeqHandle {
    pillai_sequence* seq = nullptr;
    ~SeqHandle() { pillai_sequence_free(seq); }
};

struct OptsHandle {
    pillai_options* o = nullptr;
    OptsHandle() : o(pillai_options_create()) {}
    ~OptsHandle() { pillai_options_free(o); }
};

int status_to_exit(pillai_status st) {
    switch (st) {
        case PILLAI_OK: return kExitOk;
        case PILLAI_ERR_IO:
        case PILLAI_ERR_PARSE: return kExitIo;
        case PILLAI_ERR_HYPOTHESIS: return kExitHypothesis;
        case PILLAI_ERR_INVALID_ARGUMENT: return kExitUsage;
        default: return kExitHypothesis;  // precision/unsupported: hypothesis-grade
    }
}

int report_failure(pillai_status st, const std::string& what) {
    std::string stage = pillai_last_error_stage();
    std::cerr << "error";
    if (!stage.empty()) std::cerr << " [" << stage << "]";
    std::cerr << ": " << what << ": " << pillai_last_error() << "\n";
    return status_to_exit(st);
}

int load_sequence(const std::string& path, SeqHandle& out) {
    pillai_status st = pillai_sequence_load_file(path.c_str(), &out.seq);
    if (st != PILLAI_OK) return report_failure(st, "loading " + path);
    return kExitOk;
}

bool parse_range(const std::string& text, long& lo, long& hi) {
    auto colon = text.find(':');
    if (colon == std::string::npos) return false;
    try {
        lo = std::stol(text.substr(0, colon));
        hi = std::stol(text.substr(colon + 1));
    } catch (...) {
        return false;
    }
    return lo >= 0 && hi >= lo;
}

int emit(const std::string& payload, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << payload << "\n";
        return kExitOk;
    }
    std::ofstream out(output_path);
    if (!out) {
        std::cerr << "error: cannot write " << output_path << "\n";
        return kExitIo;
    }
    out << payload << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pillai pair toolkit: recurrence analysis, effective bounds, and searches"};
    app.require_subcommand(1);

    long precision_bits = 128;
    int threads = 1;
    std::string output_path;
    std::string format = "json";
    app.add_option("--precision", precision_bits, "working precision in bits")
        ->check(CLI::Range(64L, 1L << 20));
    app.add_option("--threads", threads, "worker threads for the search")
        ->check(CLI::Range(1, 256));
    app.add_option("--output", output_path, "write the report here instead of stdout");
    app.add_option("--format", format, "search output format")
        ->check(CLI::IsMember({"json", "csv"}));

    std::string analyze_path;
    auto* analyze = app.add_subcommand("analyze", "hypothesis checks and sequence analysis");
    analyze->add_option("spec", analyze_path, "sequence spec JSON file")->required();

    std::string ind_u, ind_v;
    auto* independence =
        app.add_subcommand("independence", "multiplicative independence of the dominant roots");
    independence->add_option("specU", ind_u)->required();
    independence->add_option("specV", ind_v)->required();

    std::string bound_u, bound_v;
    auto* bound = app.add_subcommand("bound", "derive the effective bound report");
    bound->add_option("specU", bound_u)->required();
    bound->add_option("specV", bound_v)->required();

    std::string search_u, search_v, n_range = "2:100", m_range = "2:100";
    auto* search = app.add_subcommand("search", "enumerate U_n - V_m over a box");
    search->add_option("specU", search_u)->required();
    search->add_option("specV", search_v)->required();
    search->add_option("--n", n_range, "n range LO:HI");
    search->add_option("--m", m_range, "m range LO:HI");

    std::string verify_u, verify_v, vn_range = "2:100", vm_range = "2:100", expected_path;
    auto* verify = app.add_subcommand("verify", "search and compare against an expected set");
    verify->add_option("specU", verify_u)->required();
    verify->add_option("specV", verify_v)->required();
    verify->add_option("--n", vn_range, "n range LO:HI");
    verify->add_option("--m", vm_range, "m range LO:HI");
    verify->add_option("--expected", expected_path, "expected-set file (one integer per line)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    OptsHandle opts;
    pillai_options_set_precision_bits(opts.o, precision_bits);
    pillai_options_set_threads(opts.o, threads);

    if (analyze->parsed()) {
        SeqHandle seq;
        if (int rc = load_sequence(analyze_path, seq)) return rc;
        StringOut json;
        pillai_status st = pillai_analyze(seq.seq, opts.o, &json.s);
        if (st != PILLAI_OK) return report_failure(st, "analyze");
        std::cerr << "analysis complete\n";
        return emit(json.s, output_path);
    }

    if (independence->parsed()) {
        SeqHandle u, v;
        if (int rc = load_sequence(ind_u, u)) return rc;
        if (int rc = load_sequence(ind_v, v)) return rc;
        StringOut json;
        int indep = 0;
        pillai_status st = pillai_independence(u.seq, v.seq, opts.o, &indep, &json.s);
        if (st != PILLAI_OK && st != PILLAI_ERR_HYPOTHESIS)
            return report_failure(st, "independence");
        if (json.s != nullptr) emit(json.s, output_path);
        if (st != PILLAI_OK) return report_failure(st, "independence");
        std::cerr << (indep ? "independent\n" : "dependent\n");
        return indep ? kExitOk : kExitHypothesis;
    }

    if (bound->parsed()) {
        SeqHandle u, v;
        if (int rc = load_sequence(bound_u, u)) return rc;
        if (int rc = load_sequence(bound_v, v)) return rc;
        StringOut json;
        pillai_status st = pillai_bound(u.seq, v.seq, opts.o, &json.s);
        if (st != PILLAI_OK) return report_failure(st, "bound");
        std::cerr << "bound derivation complete\n";
        return emit(json.s, output_path);
    }

    if (search->parsed() || verify->parsed()) {
        bool is_verify = verify->parsed();
        const std::string& upath = is_verify ? verify_u : search_u;
        const std::string& vpath = is_verify ? verify_v : search_v;
        const std::string& nr = is_verify ? vn_range : n_range;
        const std::string& mr = is_verify ? vm_range : m_range;
        long nlo, nhi, mlo, mhi;
        if (!parse_range(nr, nlo, nhi) || !parse_range(mr, mlo, mhi)) {
            std::cerr << "usage error: ranges must be LO:HI with 0 <= LO <= HI\n";
            return kExitUsage;
        }
        SeqHandle u, v;
        if (int rc = load_sequence(upath, u)) return rc;
        if (int rc = load_sequence(vpath, v)) return rc;
        if (is_verify) {
            StringOut json;
            int match = 0;
            pillai_status st = pillai_verify(u.seq, v.seq, nlo, nhi, mlo, mhi,
                                             expected_path.c_str(), opts.o, &match, &json.s);
            if (st != PILLAI_OK) return report_failure(st, "verify");
            std::cerr << (match ? "expected set matched\n" : "MISMATCH against expected set\n");
            emit(json.s, output_path);
            return match ? kExitOk : kExitHypothesis;
        }
        StringOut payload;
        pillai_status st =
            format == "csv"
                ? pillai_search_csv(u.seq, v.seq, nlo, nhi, mlo, mhi, opts.o, &payload.s)
                : pillai_search(u.seq, v.seq, nlo, nhi, mlo, mhi, opts.o, &payload.s);
        if (st != PILLAI_OK) return report_failure(st, "search");
        std::cerr << "search complete\n";
        return emit(payload.s, output_path);
    }

    return kExitUsage;
}
