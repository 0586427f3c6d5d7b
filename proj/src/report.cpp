#include "nadyn/report.hpp"

#include <sstream>

#include "nadyn/error.hpp"
#include "nadyn/parse.hpp"

namespace nadyn {

namespace {

Json val_json(long v) { return v == kInfinity ? Json("inf") : Json(v); }

Json image_json(const ComponentImage& im) {
    Json j;
    j["kind"] = im.kind == ComponentImage::Kind::Component ? "component" : "point";
    j["component"] = im.component;
    if (im.kind == ComponentImage::Kind::Point) j["point"] = im.point;
    else j["map"] = im.map;
    return j;
}

std::string mult_text(const FixedPointReport& r) {
    return std::string(r.valuation_exact ? "v(multiplier) = " : "v(multiplier) >= ") +
           std::to_string(r.multiplier_valuation);
}

} // namespace

Json to_json(const KElem& x) { return {{"kernel", x.kernel_string()}, {"val", val_json(x.val())}}; }

KElem kelem_from_json(const FieldSpec& f, const Json& j) {
    if (!j.is_object() || !j.contains("kernel") || !j.contains("val"))
        throw Error(ErrorKind::ParseError, "element JSON needs kernel and val");
    KElem x = parse_element(f, j.at("kernel").get<std::string>());
    const Json& v = j.at("val");
    const long want = v.is_string() ? kInfinity : v.get<long>();
    if (x.val() != want) throw Error(ErrorKind::ParseError, "element JSON val disagrees with its kernel");
    return x;
}

Json to_json(const KPoly& f) {
    Json coeffs = Json::array();
    for (const auto& c : f.coeffs()) coeffs.push_back(to_json(c));
    return {{"text", f.to_string()}, {"coefficients", coeffs}};
}

Json to_json(const HenselRoot& r) {
    return {{"value", to_json(r.value)}, {"exact", r.exact()}, {"precision", val_json(r.precision)}};
}

Json to_json(const FixedPointReport& r) {
    Json cycle = Json::array();
    for (const auto& c : r.cycle) cycle.push_back(to_json(c));
    return {{"point", to_json(r.point().value)},
            {"precision", val_json(r.point().precision)},
            {"period", r.period},
            {"cycle", cycle},
            {"multiplier", to_json(r.multiplier)},
            {"multiplier_valuation", r.multiplier_valuation},
            {"valuation_exact", r.valuation_exact},
            {"class", to_string(r.cls)},
            {"certified", r.certified}};
}

Json to_json(const AffineConj& c) { return {{"a", to_json(c.a)}, {"b", to_json(c.b)}}; }

Json to_json(const NormalForm& nf) {
    Json j;
    if (nf.irreducible()) {
        const auto& d = nf.irr();
        j["kind"] = "irreducible";
        j["u"] = to_json(d.u);
        j["n"] = d.n;
        j["n1"] = val_json(d.n1);
        j["n2"] = val_json(d.n2);
        j["n3"] = val_json(d.n3);
        j["l"] = d.l;
        j["r"] = d.r;
        j["case_tag"] = to_string(d.tag);
    } else {
        const auto& d = nf.red();
        j["kind"] = "reducible";
        j["lambda"] = to_json(d.lambda);
        j["lambda_valuation"] = d.lambda_valuation;
        j["repelling_at_zero"] = d.repelling_at_zero;
        if (!d.repelling_at_zero) {
            j["n2"] = val_json(d.n2);
            j["n3"] = val_json(d.n3);
            j["nu"] = d.nu_is_neg_infinite ? Json("-inf") : Json(d.nu.get_str());
            j["u2"] = d.u2 ? to_json(*d.u2) : Json(nullptr);
            j["u3"] = d.u3 ? to_json(*d.u3) : Json(nullptr);
        }
    }
    Json trace = Json::array();
    for (const auto& c : nf.conj_trace) trace.push_back(to_json(c));
    j["conj_trace"] = trace;
    j["normalized"] = to_json(nf.normalized.poly());
    return j;
}

Json to_json(const ModelTrace& m) {
    Json blowups = Json::array(), comps = Json::array(), inter = Json::array();
    for (const auto& b : m.blowups)
        blowups.push_back({{"component", b.component},
                           {"center", b.center},
                           {"substitution", b.substitution},
                           {"new_component", b.new_component}});
    for (const auto& c : m.components)
        comps.push_back({{"id", c.id},
                         {"coordinate", c.coordinate},
                         {"removed_points", c.removed_points},
                         {"image", image_json(c.image)}});
    for (const auto& i : m.intersections)
        inter.push_back({{"first", i.first},
                         {"first_point", i.first_point},
                         {"second", i.second},
                         {"second_point", i.second_point}});
    return {{"components", comps}, {"intersections", inter}, {"blowups", blowups}};
}

Json to_json(const Verdict& v) {
    Json fixed = Json::array();
    for (const auto& r : v.fixed_points) fixed.push_back(to_json(r));
    Json trace = Json::array();
    for (const auto& c : v.normal_form.conj_trace) trace.push_back(to_json(c));
    return {{"wnm_exists", v.wnm_exists},
            {"reduction_type", to_string(v.reduction_type)},
            {"potential_good_reduction", to_string(v.potential_good_reduction)},
            {"julia_nonempty", v.julia_nonempty},
            {"witness", v.repelling_witness ? to_json(*v.repelling_witness) : Json(nullptr)},
            {"conj_trace", trace},
            {"normal_form", to_json(v.normal_form)},
            {"model", v.model ? to_json(*v.model) : Json(nullptr)},
            {"fixed_points", fixed}};
}

Json to_json(const UElem& x) {
    return {{"value", x.to_string()}, {"val", val_json(x.val())}, {"precision", val_json(x.abs_precision())}};
}

Json to_json(const CounterexampleSpec& s) {
    return {{"d", s.d},     {"p", s.p},     {"e0", s.e0}, {"e1", s.e1}, {"n", s.n},
            {"e0p", s.e0p}, {"e1p", s.e1p}, {"r", s.r},   {"s", s.s},   {"ext_degree", s.ext_degree}};
}

Json to_json(const TwoCycle& c) {
    return {{"x", to_json(c.x)},
            {"y", to_json(c.y)},
            {"mult_val", c.multiplier_valuation},
            {"precision", c.precision}};
}

Json to_json(const SubshiftWitness& w) {
    Json balls = Json::array();
    auto add = [&](const std::vector<Ball>& bs, const char* side) {
        for (const auto& b : bs)
            balls.push_back({{"side", side},
                             {"center", b.center.to_string()},
                             {"precision", val_json(b.center.abs_precision())},
                             {"radius_exp", b.radius}});
    };
    add(w.a_balls, "a");
    add(w.b_balls, "b");
    Json inc = Json::array();
    for (const auto& row : w.incidence) {
        Json r = Json::array();
        for (bool e : row) r.push_back(e ? 1 : 0);
        inc.push_back(r);
    }
    return {{"balls", balls},
            {"expansion", {w.e0p, w.e1p}},
            {"incidence", w.complete_bipartite ? "K_{" + std::to_string(w.a_balls.size()) + "," +
                                                     std::to_string(w.b_balls.size()) + "}"
                                               : "other"},
            {"incidence_matrix", inc},
            {"pairs_checked", w.pairs_checked},
            {"two_cycle", w.two_cycle ? to_json(*w.two_cycle) : Json(nullptr)}};
}

Json to_json(const SamplingReport& r) {
    return {{"escape_samples", r.escape_samples},
            {"escaped", r.escaped},
            {"max_escape_steps", r.max_escape_steps},
            {"invariance_samples", r.invariance_samples},
            {"invariant", r.invariant}};
}

std::string describe(const FixedPointReport& r) {
    std::ostringstream os;
    os << (r.period == 1 ? "fixed point " : "cycle ");
    for (std::size_t i = 0; i < r.cycle.size(); ++i) {
        if (i) os << " -> ";
        os << r.cycle[i].value.kernel_string();
        if (!r.cycle[i].exact()) os << " + O(" << r.cycle[i].value.field().uniformizer_symbol() << "^"
                                    << r.cycle[i].precision << ")";
    }
    os << ": " << to_string(r.cls) << ", " << mult_text(r);
    return os.str();
}

std::string describe(const NormalForm& nf) {
    std::ostringstream os;
    if (nf.irreducible()) {
        const auto& d = nf.irr();
        os << "irreducible, " << to_string(d.tag) << ": n = " << d.n << ", n1 = " << d.n1 << ", n2 = " << d.n2
           << ", n3 = " << d.n3 << ", l = " << d.l << ", r = " << d.r;
    } else {
        const auto& d = nf.red();
        os << "reducible: lambda = " << d.lambda.kernel_string();
        if (d.repelling_at_zero) os << ", repelling at 0 (v(lambda) = " << d.lambda_valuation << ")";
        else os << ", nu = " << (d.nu_is_neg_infinite ? std::string("-inf") : d.nu.get_str()) << ", n2 = " << d.n2
                << ", n3 = " << d.n3;
    }
    os << "\nnormalized map: " << nf.normalized.to_string();
    return os.str();
}

std::string describe(const ModelTrace& m) {
    std::ostringstream os;
    for (const auto& b : m.blowups) os << "blowup of " << b.component << " at " << b.center << " (" << b.substitution
                                       << ") -> " << b.new_component << "\n";
    for (const auto& c : m.components) {
        os << c.id << " (coordinate " << c.coordinate << ")";
        if (!c.removed_points.empty()) {
            os << " minus {";
            for (std::size_t i = 0; i < c.removed_points.size(); ++i) os << (i ? ", " : "") << c.removed_points[i];
            os << "}";
        }
        if (c.image.kind == ComponentImage::Kind::Component) os << " maps onto " << c.image.component << " by " << c.image.map;
        else os << " maps to the point " << c.image.point << " of " << c.image.component;
        os << "\n";
    }
    for (const auto& i : m.intersections)
        os << i.first << " meets " << i.second << " at " << i.first_point << " = " << i.second_point << "\n";
    return os.str();
}

std::string describe(const Verdict& v) {
    if (!v.wnm_exists) return "No WNM; repelling fixed point, " + mult_text(*v.repelling_witness);
    std::string s = "WNM exists; ";
    switch (v.reduction_type) {
    case ReductionType::GoodReduction: s += "good reduction"; break;
    case ReductionType::TwoComponent: s += "two-component model"; break;
    case ReductionType::OneComponentPunctured: s += "one component minus a closed point of degree 3"; break;
    case ReductionType::NoWNM: break;
    }
    return s + " (potential good reduction: " + to_string(v.potential_good_reduction) + ")";
}

} // namespace nadyn
