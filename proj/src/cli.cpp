#include "nadyn/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>

#include "nadyn/error.hpp"
#include "nadyn/parse.hpp"
#include "nadyn/report.hpp"

namespace nadyn {

namespace {

struct Options {
    std::string command;
    std::string field = "Qp:3";
    std::string poly;
    bool json = false;
    long precision = 64;
    long max_precision = 1024;
    int q_max = 2;
    std::uint64_t seed = 1;
    std::string batch;
    std::uint32_t p = 0;
    int d = 0;
};

struct Outcome {
    Json json;
    std::string prose;
    int code = kExitQueryDone;
};

int exit_code_for(ErrorKind k) {
    switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidArgument:
    case ErrorKind::ExceptionalCase:
    case ErrorKind::NoDecomposition:
        return kExitUsage;
    case ErrorKind::InternalInconsistency:
        return kExitInternal;
    default:
        return kExitFailure;
    }
}

PrecisionOptions precision_of(const Options& o) {
    PrecisionOptions p;
    p.precision = o.precision;
    p.max_precision = o.max_precision;
    return p;
}

Json envelope(const Options& o, const std::string& poly) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = o.command;
    if (o.command != "counterexample") {
        j["field"] = o.field;
        j["input"] = poly;
    }
    return j;
}

Outcome run_poly(const Options& o, const std::string& text) {
    const FieldSpec f = FieldSpec::parse(o.field);
    const PolyMap phi(parse_poly(f, text));
    const PrecisionOptions prec = precision_of(o);
    Outcome r;
    r.json = envelope(o, text);
    r.json["map"] = to_json(phi.poly());
    std::ostringstream os;
    if (o.command == "decide") {
        const Verdict v = decide(phi, prec);
        r.json["verdict"] = to_json(v);
        r.code = v.wnm_exists ? kExitWnm : kExitNoWnm;
        os << describe(v);
    } else if (o.command == "fixed-points") {
        Json arr = Json::array();
        const auto reps = fixed_points(phi, prec);
        for (const auto& rep : reps) {
            arr.push_back(to_json(rep));
            os << describe(rep) << "\n";
        }
        if (reps.empty()) os << "no K-rational fixed points\n";
        r.json["fixed_points"] = arr;
    } else if (o.command == "periodic") {
        Json by_period = Json::array();
        for (int q = 1; q <= o.q_max; ++q) {
            Json arr = Json::array();
            const auto reps = periodic_points(phi, q, prec);
            for (const auto& rep : reps) {
                arr.push_back(to_json(rep));
                os << describe(rep) << "\n";
            }
            if (reps.empty()) os << "no K-rational cycles of period " << q << "\n";
            by_period.push_back({{"period", q}, {"cycles", arr}});
        }
        r.json["periodic"] = by_period;
    } else if (o.command == "normal-form") {
        const NormalForm nf = normal_form(phi, prec);
        r.json["normal_form"] = to_json(nf);
        os << describe(nf);
    } else if (o.command == "model") {
        const Verdict v = decide(phi, prec);
        r.json["wnm_exists"] = v.wnm_exists;
        r.json["model"] = v.model ? to_json(*v.model) : Json(nullptr);
        r.code = v.wnm_exists ? kExitQueryDone : kExitNoWnm;
        os << (v.model ? describe(*v.model) : describe(v));
    } else if (o.command == "verify") {
        if (phi.degree() == 3) {
            const bool agree = cross_check(phi, prec);
            r.json["paths_agree"] = agree;
            r.code = agree ? kExitQueryDone : kExitInternal;
            os << (agree ? "root criterion and normal form agree" : "root criterion and normal form DISAGREE");
        } else {
            const bool nonrep = verify_fixed_nonrepelling(phi, prec);
            const auto cyc = find_repelling_periodic(phi, o.q_max, prec);
            r.json["fixed_points_nonrepelling"] = nonrep;
            r.json["repelling_cycle"] = cyc ? to_json(*cyc) : Json(nullptr);
            os << (nonrep ? "all K-rational fixed points are non-repelling" : "a K-rational fixed point repels");
            if (cyc) os << "\nrepelling " << describe(*cyc);
            else os << "\nno repelling cycle of period <= " << o.q_max;
        }
    }
    r.prose = os.str();
    return r;
}

Outcome run_counterexample(const Options& o) {
    const auto [phi, spec] = build(o.p, o.d);
    Outcome r;
    r.json = envelope(o, "");
    r.json["spec"] = to_json(spec);
    r.json["map"] = to_json(phi.poly());
    r.json["field"] = unramified_field(spec.p, spec.ext_degree)->name();
    const bool nonrep = verify_fixed_nonrepelling(phi, precision_of(o));
    const SubshiftWitness w = subshift_witness(phi, spec, o.seed, o.precision);
    const SamplingReport s = sample_dynamics(phi, spec, o.seed, 200, o.precision);
    r.json["fixed_points_nonrepelling"] = nonrep;
    r.json["witness"] = to_json(w);
    r.json["sampling"] = to_json(s);
    std::ostringstream os;
    os << "phi = " << phi.to_string() << " over " << unramified_field(spec.p, spec.ext_degree)->name() << "\n"
       << "e0 = " << spec.e0 << ", e1 = " << spec.e1 << ", n = " << spec.n << "\n"
       << "fixed points non-repelling: " << (nonrep ? "yes" : "no") << "\n"
       << "incidence: " << r.json["witness"]["incidence"].get<std::string>() << "\n"
       << "escaped " << s.escaped << "/" << s.escape_samples << ", invariant " << s.invariant << "/"
       << s.invariance_samples << "\n";
    if (w.two_cycle) os << "repelling 2-cycle, v(multiplier) = " << w.two_cycle->multiplier_valuation << "\n";
    os << "witness: " << r.json["witness"].dump();
    r.prose = os.str();
    return r;
}

Outcome guarded(const Options& o, const std::string& poly) {
    try {
        return o.command == "counterexample" ? run_counterexample(o) : run_poly(o, poly);
    } catch (const Error& e) {
        Outcome r;
        r.json = envelope(o, poly);
        r.json["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
        r.prose = std::string("error: ") + e.what();
        r.code = exit_code_for(e.kind());
        return r;
    }
}

void emit(const Options& o, const Outcome& r, std::ostream& out, std::ostream& err) {
    if (o.json) out << r.json.dump() << "\n";
    else if (r.json.contains("error")) err << r.prose << "\n";
    else out << r.prose << (r.prose.empty() || r.prose.back() == '\n' ? "" : "\n");
    if (o.json && r.json.contains("error")) err << r.prose << "\n";
}

int run_batch(const Options& o, std::ostream& out, std::ostream& err) {
    std::ifstream in(o.batch);
    if (!in) {
        err << "error: cannot read " << o.batch << "\n";
        return kExitUsage;
    }
    int worst = kExitQueryDone;
    auto rank = [](int c) { return c == kExitInternal ? 3 : c == kExitUsage ? 2 : c == kExitFailure ? 1 : 0; };
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#')
            continue;
        Outcome r = guarded(o, line);
        r.json["line"] = lineno;
        if (!o.json) r.prose = "[" + std::to_string(lineno) + "] " + line + "\n" + r.prose;
        emit(o, r, out, err);
        if (rank(r.code) > rank(worst)) worst = r.code;
    }
    return worst;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weak Neron models of polynomial dynamics over local fields", "nadyn"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub, bool poly) {
        sub->add_flag("--json", o.json, "Emit JSON");
        sub->add_option("--precision", o.precision, "Working precision")->check(CLI::Range(1L, 1L << 20));
        sub->add_option("--max-precision", o.max_precision, "Precision ladder cap")->check(CLI::Range(1L, 1L << 20));
        sub->add_option("--seed", o.seed, "Sampling seed");
        if (poly) {
            sub->add_option("--field", o.field, "Qp:P or Fpt:P");
            sub->add_option("--q-max", o.q_max, "Largest period")->check(CLI::Range(1, 8));
            auto* b = sub->add_option("--batch", o.batch, "One polynomial per line");
            sub->add_option("poly", o.poly, "Polynomial in z")->excludes(b);
        }
    };
    const std::vector<std::pair<std::string, std::string>> cmds = {
        {"decide", "Decide whether a weak Neron model exists (cubic)"},
        {"fixed-points", "List K-rational fixed points"},
        {"periodic", "List K-rational cycles up to --q-max"},
        {"normal-form", "Normalize a cubic"},
        {"model", "Weak Neron model trace of a cubic"},
        {"verify", "Cross-check a cubic, or test a higher-degree map"},
    };
    for (const auto& [name, help] : cmds) common(app.add_subcommand(name, help), true);
    auto* cx = app.add_subcommand("counterexample", "Build and verify a degree >= 4 counterexample");
    common(cx, false);
    cx->add_option("--p", o.p, "Residue characteristic")->required();
    cx->add_option("--d", o.d, "Degree")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }
    o.command = app.get_subcommands().front()->get_name();
    if (o.max_precision < o.precision) {
        err << "error: --max-precision must be at least --precision\n";
        return kExitUsage;
    }
    if (o.command != "counterexample") {
        if (!o.batch.empty()) return run_batch(o, out, err);
        if (o.poly.empty()) {
            err << "error: a polynomial (or --batch FILE) is required\n";
            return kExitUsage;
        }
    }
    const Outcome r = guarded(o, o.poly);
    emit(o, r, out, err);
    return r.code;
}

} // namespace nadyn
