#pragma once

#include <string>

#include "pillai/bound_chain.hpp"
#include "pillai/heights.hpp"
#include "pillai/recurrence.hpp"
#include "pillai/search.hpp"

namespace pillai {

// {"label": str, "coefficients": [int...], "initial": [int...]}
RecurrenceSpec parse_spec_json(const std::string& text);
RecurrenceSpec load_spec_file(const std::string& path);

std::string analysis_to_json(const SequenceAnalysis& an);
std::string bound_report_to_json(const BoundReport& rep, const PlaceSystem* ps = nullptr);
std::string table_to_json(const RepresentationTable& table);
std::string verify_to_json(const RepresentationTable& table, const std::vector<Integer>& expected,
                           const DiffReport& diff);
std::string independence_to_json(const IndependenceResult& res, const std::string& u_label,
                                 const std::string& v_label);
std::string place_system_to_json(const PlaceSystem& ps);
std::string algebraic_to_json(const AlgebraicNumber& x);

}  // namespace pillai
