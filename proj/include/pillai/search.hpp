#pragma once

#include <map>
#include <string>
#include <vector>

#include "pillai/recurrence.hpp"

namespace pillai {

struct SearchBox {
    long n_lo = 2, n_hi = 2;
    long m_lo = 2, m_hi = 2;
    void validate() const;
    Integer cells() const {
        return Integer(n_hi - n_lo + 1) * Integer(m_hi - m_lo + 1);
    }
};

struct Representation {
    long n = 0, m = 0;
    bool operator<(const Representation& o) const {
        return n != o.n ? n < o.n : m < o.m;
    }
    bool operator==(const Representation& o) const { return n == o.n && m == o.m; }
};

// map c -> sorted list of (n, m) with U_n - V_m = c inside the box
struct RepresentationTable {
    std::string u_label, v_label;
    SearchBox box;
    // std::map with exact Integer keys keeps the table canonically ordered
    std::map<Integer, std::vector<Representation>> entries;

    bool operator==(const RepresentationTable& o) const {
        return entries == o.entries;
    }
};

struct SearchOptions {
    Integer cell_ceiling = 1000000;
    int threads = 1;
};

// Exact exhaustive enumeration of U_n - V_m over the box.
RepresentationTable enumerate_representations(const RecurrenceSpec& u, const RecurrenceSpec& v,
                                              const SearchBox& box,
                                              const SearchOptions& opts = {});

// All c with at least two representations, sorted.
std::vector<Integer> multi_represented(const RepresentationTable& table);

struct DiffReport {
    std::vector<Integer> missing;  // expected but not found
    std::vector<Integer> extra;    // found but not expected
    bool pass() const { return missing.empty() && extra.empty(); }
};

DiffReport verify_against(const std::vector<Integer>& found, const std::vector<Integer>& expected);

// "c,n,m" rows sorted by (c, n, m)
std::string table_to_csv(const RepresentationTable& table);

// expected-set file: one integer per line ('#' comments allowed)
std::vector<Integer> read_expected_set(const std::string& path);

}  // namespace pillai
