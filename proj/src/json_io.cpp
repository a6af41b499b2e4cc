#include "pillai/json_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace pillai {

using nlohmann::json;

namespace {

Integer json_integer(const json& v, const char* what) {
    if (v.is_number_integer()) return Integer(static_cast<long>(v.get<long long>()));
    if (v.is_string()) {
        try {
            return Integer(v.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw ParseError(std::string("bad integer for ") + what);
        }
    }
    throw ParseError(std::string("expected an integer for ") + what);
}

json interval_json(const RInterval& v, int digits = 20) {
    return json::array({v.lo_string(digits), v.hi_string(digits)});
}

json rational_interval_json(const Rational& lo, const Rational& hi) {
    return json::array({to_string(lo), to_string(hi)});
}

json root_json(const CertifiedRoot& r, const IntPoly& minpoly) {
    json coeffs = json::array();
    for (const auto& c : minpoly.coeffs()) coeffs.push_back(c.get_str());
    return json{{"minpoly", coeffs},
                {"region",
                 json::array({rational_interval_json(r.center_re - r.radius, r.center_re + r.radius),
                              rational_interval_json(r.center_im - r.radius,
                                                     r.center_im + r.radius)})},
                {"real", r.real}};
}

}  // namespace

RecurrenceSpec parse_spec_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(),
                         static_cast<int>(e.byte), 0);
    }
    if (!j.is_object()) throw ParseError("spec file must be a JSON object");
    RecurrenceSpec spec;
    spec.label = j.value("label", std::string("unnamed"));
    if (!j.contains("coefficients") || !j["coefficients"].is_array())
        throw ParseError("spec needs a 'coefficients' array");
    if (!j.contains("initial") || !j["initial"].is_array())
        throw ParseError("spec needs an 'initial' array");
    for (const auto& v : j["coefficients"]) spec.coefficients.push_back(json_integer(v, "coefficients"));
    for (const auto& v : j["initial"]) spec.initial.push_back(json_integer(v, "initial"));
    return spec;
}

RecurrenceSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open spec file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec_json(ss.str());
}

std::string analysis_to_json(const SequenceAnalysis& an) {
    json j;
    j["label"] = an.spec.label;
    j["order"] = an.spec.order();
    json coeffs = json::array(), init = json::array();
    for (const auto& c : an.spec.coefficients) coeffs.push_back(c.get_str());
    for (const auto& c : an.spec.initial) init.push_back(c.get_str());
    j["coefficients"] = coeffs;
    j["initial"] = init;
    j["char_poly"] = an.charpoly.to_string();

    json roots = json::array();
    for (std::size_t i = 0; i < an.roots.roots.size(); ++i) {
        const auto& dr = an.roots.roots[i];
        json r = root_json(dr.enclosure,
                           an.roots.factors[static_cast<std::size_t>(dr.factor_index)].first);
        r["multiplicity"] = dr.multiplicity;
        r["dominant"] = static_cast<int>(i) == an.dominant_root;
        r["modulus"] = interval_json(dr.enclosure.modulus(192));
        roots.push_back(std::move(r));
    }
    j["roots"] = roots;
    j["nondegenerate"] = an.nondeg.pass;

    json binet;
    binet["sigma"] = an.sigma;
    binet["A"] = an.A;
    json dc = json::array();
    {
        const BinetFactor& bf = an.binet[static_cast<std::size_t>(an.dominant_factor)];
        CertifiedRoot box = an.root_box(static_cast<std::size_t>(an.dominant_root), 0);
        RInterval rb = box.real_interval(192);
        for (const auto& cfe : bf.coeffs) dc.push_back(interval_json(cfe.eval_real(rb)));
    }
    binet["dominant_coefficients"] = dc;
    j["binet"] = binet;

    j["envelope"] = json{{"A", an.A},
                         {"a_second", to_string(an.a_second)},
                         {"alpha_prime", to_string(an.alpha_prime)},
                         {"a_prime", to_string(an.a_prime)},
                         {"alpha2_upper", to_string(an.alpha2_upper)}};
    j["growth"] = json{{"C1", to_string(an.C1)}, {"C2", to_string(an.C2)},
                       {"N2", an.N2},           {"C5", to_string(an.C5)},
                       {"C6", to_string(an.C6)}};
    j["thresholds"] = json{{"N0", an.N0}, {"N1", an.N1}, {"N2", an.N2}};
    j["alpha"] = json{{"modulus", rational_interval_json(an.alpha_abs_lower, an.alpha_abs_upper)},
                      {"value", json::parse(algebraic_to_json(*an.alpha))}};
    return j.dump(2);
}

std::string algebraic_to_json(const AlgebraicNumber& x) {
    return root_json(x.enclosure(), x.minpoly()).dump();
}

std::string place_system_to_json(const PlaceSystem& ps) {
    json j;
    json def = json::array();
    for (const auto& c : ps.field_defining.coeffs()) def.push_back(c.get_str());
    j["field"] = json{{"defining", def}, {"degree", ps.d}};
    json places = json::array();
    for (std::size_t i = 0; i < ps.places.size(); ++i) {
        json p;
        p["tag"] = ps.places[i].tag;
        p["kind"] = ps.places[i].kind == Place::Kind::Finite ? "finite" : "archimedean";
        if (ps.places[i].kind == Place::Kind::Finite) p["prime"] = ps.places[i].prime.get_str();
        p["log_x"] = ps.row_x[i].describe();
        p["log_y"] = ps.row_y[i].describe();
        places.push_back(std::move(p));
    }
    j["places"] = places;
    j["selected_pair"] = json::array({ps.places[ps.v1].tag, ps.places[ps.v2].tag});
    j["M"] = json::array({json::array({interval_json(ps.row_x[ps.v1].value),
                                       interval_json(ps.row_y[ps.v1].value)}),
                          json::array({interval_json(ps.row_x[ps.v2].value),
                                       interval_json(ps.row_y[ps.v2].value)})});
    j["abs_det_lower"] = to_string(ps.abs_det_lower);
    j["C1_tilde"] = ps.c1_tilde.describe();
    j["C2_tilde"] = ps.c2_tilde.describe();
    j["C0"] = json{{"form", ps.c0.describe()}, {"lower", to_string(ps.c0_lower)}};
    return j.dump(2);
}

std::string bound_report_to_json(const BoundReport& rep, const PlaceSystem* ps) {
    json j;
    j["pair"] = json{{"u", rep.u_label},
                     {"v", rep.v_label},
                     {"orientation", rep.swapped ? "swapped" : "direct"}};
    j["C0"] = to_string(rep.C0);
    json consts = json::array();
    for (const auto& t : rep.trace) {
        json e;
        e["name"] = t.name;
        e["index"] = t.index;
        e["value"] = t.value;
        e["formula"] = t.formula;
        json deps = json::array();
        json dep_names = json::array();
        for (const auto& d : t.depends_on) {
            dep_names.push_back(d);
            if (d.size() > 1 && d[0] == 'C') {
                bool numeric = true;
                for (std::size_t i = 1; i < d.size(); ++i)
                    if (!isdigit(static_cast<unsigned char>(d[i]))) numeric = false;
                if (numeric) deps.push_back(std::stoi(d.substr(1)));
            }
        }
        e["depends_on"] = deps;
        e["depends_on_names"] = dep_names;
        e["paper_anchor"] = t.anchor;
        consts.push_back(std::move(e));
    }
    j["constants"] = consts;
    j["thresholds"] = json{{"M3", rep.M3.get_str()},
                           {"N3", rep.N3.get_str()},
                           {"N4", rep.N4.get_str()},
                           {"M4", rep.M4.get_str()}};
    j["gamma"] = rational_interval_json(rep.gamma_lo, rep.gamma_hi);
    j["Gamma"] = rational_interval_json(rep.Gamma_lo, rep.Gamma_hi);
    if (ps != nullptr) j["place_system"] = json::parse(place_system_to_json(*ps));
    json exits;
    for (const auto& [k, v] : rep.exits) exits[k] = v.get_str();
    j["final"] = json{{"bound", rep.bound.get_str()},
                      {"C45", rep.C45.get_str()},
                      {"orientation", rep.swapped ? "swapped" : "direct"},
                      {"exits", exits}};
    return j.dump(2);
}

std::string table_to_json(const RepresentationTable& table) {
    json j;
    j["u"] = table.u_label;
    j["v"] = table.v_label;
    j["box"] = json{{"n", json::array({table.box.n_lo, table.box.n_hi})},
                    {"m", json::array({table.box.m_lo, table.box.m_hi})}};
    std::vector<Integer> multi = multi_represented(table);
    json ms = json::array();
    json reps;
    for (const auto& c : multi) {
        ms.push_back(c.get_str());
        json lst = json::array();
        for (const auto& r : table.entries.at(c)) lst.push_back(json::array({r.n, r.m}));
        reps[c.get_str()] = lst;
    }
    j["multi_represented"] = ms;
    j["representations"] = reps;
    j["counts"] = json{{"cells", table.box.cells().get_str()},
                       {"distinct_c", table.entries.size()},
                       {"multi_represented", multi.size()}};
    return j.dump(2);
}

std::string verify_to_json(const RepresentationTable& table, const std::vector<Integer>& expected,
                           const DiffReport& diff) {
    json j = json::parse(table_to_json(table));
    json exp = json::array(), missing = json::array(), extra = json::array();
    for (const auto& v : expected) exp.push_back(v.get_str());
    for (const auto& v : diff.missing) missing.push_back(v.get_str());
    for (const auto& v : diff.extra) extra.push_back(v.get_str());
    j["expected"] = exp;
    j["missing"] = missing;
    j["extra"] = extra;
    j["pass"] = diff.pass();
    return j.dump(2);
}

std::string independence_to_json(const IndependenceResult& res, const std::string& u_label,
                                 const std::string& v_label) {
    json j;
    j["u"] = u_label;
    j["v"] = v_label;
    switch (res.verdict) {
        case IndependenceResult::Verdict::Pass: j["verdict"] = "pass"; break;
        case IndependenceResult::Verdict::Fail: j["verdict"] = "fail"; break;
        default: j["verdict"] = "inconclusive"; break;
    }
    if (res.verdict == IndependenceResult::Verdict::Fail)
        j["witness"] = json{{"p", res.p.get_str()}, {"q", res.q.get_str()}};
    j["ceiling"] = res.ceiling;
    j["note"] = res.note;
    return j.dump(2);
}

}  // namespace pillai
