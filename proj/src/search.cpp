#include "pillai/search.hpp"

#include <algorithm>
#include <fstream>
#include <thread>
#include <unordered_map>

namespace pillai {

void SearchBox::validate() const {
    if (n_lo < 0 || m_lo < 0) throw ParseError("box bounds must be non-negative");
    if (n_hi < n_lo || m_hi < m_lo) throw ParseError("empty box range");
}

namespace {

struct IntegerHash {
    std::size_t operator()(const Integer& z) const { return hash_integer(z); }
};

using LocalMap = std::unordered_map<Integer, std::vector<Representation>, IntegerHash>;

void enumerate_stripe(const std::vector<Integer>& uterms, const std::vector<Integer>& vterms,
                      const SearchBox& box, long n_from, long n_to, LocalMap& out) {
    for (long n = n_from; n <= n_to; ++n) {
        const Integer& un = uterms[static_cast<std::size_t>(n - box.n_lo)];
        for (long m = box.m_lo; m <= box.m_hi; ++m) {
            Integer c = un - vterms[static_cast<std::size_t>(m - box.m_lo)];
            out[c].push_back({n, m});
        }
    }
}

}  // namespace

RepresentationTable enumerate_representations(const RecurrenceSpec& u, const RecurrenceSpec& v,
                                              const SearchBox& box, const SearchOptions& opts) {
    box.validate();
    if (box.cells() > opts.cell_ceiling)
        throw BoxTooLarge("search box has " + box.cells().get_str() + " cells (ceiling " +
                          opts.cell_ceiling.get_str() + ")");
    std::vector<Integer> uterms_all = terms_upto(u, box.n_hi);
    std::vector<Integer> vterms_all = terms_upto(v, box.m_hi);
    std::vector<Integer> uterms(uterms_all.begin() + box.n_lo, uterms_all.end());
    std::vector<Integer> vterms(vterms_all.begin() + box.m_lo, vterms_all.end());

    RepresentationTable table;
    table.u_label = u.label;
    table.v_label = v.label;
    table.box = box;

    int threads = std::max(1, opts.threads);
    long span = box.n_hi - box.n_lo + 1;
    if (threads == 1 || span < 2 * threads) {
        LocalMap local;
        enumerate_stripe(uterms, vterms, box, box.n_lo, box.n_hi, local);
        for (auto& [c, reps] : local) {
            std::sort(reps.begin(), reps.end());
            table.entries.emplace(c, std::move(reps));
        }
        return table;
    }

    // n-stripes in parallel, deterministic lexicographic merge
    std::vector<LocalMap> locals(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    long chunk = (span + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        long from = box.n_lo + t * chunk;
        long to = std::min(box.n_hi, from + chunk - 1);
        if (from > box.n_hi) break;
        pool.emplace_back([&, t, from, to]() {
            enumerate_stripe(uterms, vterms, box, from, to, locals[static_cast<std::size_t>(t)]);
        });
    }
    for (auto& th : pool) th.join();
    for (auto& local : locals)
        for (auto& [c, reps] : local) {
            auto& dst = table.entries[c];
            dst.insert(dst.end(), reps.begin(), reps.end());
        }
    for (auto& [c, reps] : table.entries) std::sort(reps.begin(), reps.end());
    return table;
}

std::vector<Integer> multi_represented(const RepresentationTable& table) {
    std::vector<Integer> out;
    for (const auto& [c, reps] : table.entries)
        if (reps.size() >= 2) out.push_back(c);
    return out;  // map iteration order is already sorted
}

DiffReport verify_against(const std::vector<Integer>& found, const std::vector<Integer>& expected) {
    DiffReport d;
    std::vector<Integer> f = found, e = expected;
    std::sort(f.begin(), f.end());
    std::sort(e.begin(), e.end());
    std::set_difference(e.begin(), e.end(), f.begin(), f.end(), std::back_inserter(d.missing));
    std::set_difference(f.begin(), f.end(), e.begin(), e.end(), std::back_inserter(d.extra));
    return d;
}

std::string table_to_csv(const RepresentationTable& table) {
    std::string out = "c,n,m\n";
    for (const auto& [c, reps] : table.entries)
        for (const auto& r : reps)
            out += c.get_str() + "," + std::to_string(r.n) + "," + std::to_string(r.m) + "\n";
    return out;
}

std::vector<Integer> read_expected_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open expected-set file: " + path);
    std::vector<Integer> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        std::string trimmed;
        for (char ch : line)
            if (!isspace(static_cast<unsigned char>(ch))) trimmed += ch;
        if (trimmed.empty()) continue;
        try {
            out.emplace_back(trimmed);
        } catch (const std::invalid_argument&) {
            throw ParseError("bad integer in expected set", lineno, 1);
        }
    }
    return out;
}

}  // namespace pillai
