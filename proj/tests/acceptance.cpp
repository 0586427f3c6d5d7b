// Acceptance harness: one line per criterion, non-zero exit if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "nadyn/counterex.hpp"
#include "nadyn/error.hpp"
#include "nadyn/newton.hpp"
#include "nadyn/wnm.hpp"

using namespace nadyn;

namespace {

struct Result {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string secs(double s) {
    std::ostringstream os;
    os.precision(3);
    os << s << " s";
    return os.str();
}

KElem pw(const FieldSpec& f, long k) { return KElem::uniformizer_power(f, k); }

// A unit of O_K: integer prime to p, or a ratio of F_p[t] polynomials with
// nonzero constant terms.
KElem random_unit(const FieldSpec& f, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> c(1, 60);
    auto unit_int = [&] {
        for (;;) {
            const long a = c(rng) * (c(rng) % 2 ? 1 : -1);
            if (a % static_cast<long>(f.p) != 0) return a;
        }
    };
    if (f.kind == FieldKind::PadicRationals)
        return KElem::from_rational(f, mpq_class(unit_int(), std::abs(unit_int())));
    auto poly = [&] {
        KElem acc = KElem::from_int(f, unit_int());
        for (int i = 1; i < 3; ++i) acc = acc + KElem::from_int(f, c(rng)) * pw(f, i);
        return acc;
    };
    return poly() / poly();
}

// Acceptance cubic: coefficients u * pi^v with v in [-6, 6], a few zeros below the top.
PolyMap random_cubic(const FieldSpec& f, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> v(-6, 6);
    std::bernoulli_distribution zero(0.1);
    std::vector<KElem> c;
    for (int i = 0; i < 4; ++i)
        c.push_back(i < 3 && zero(rng) ? KElem::zero(f) : random_unit(f, rng) * pw(f, v(rng)));
    return PolyMap(KPoly(f, c));
}

const std::vector<FieldSpec>& harness_fields() {
    static const std::vector<FieldSpec> f = {FieldSpec::padic(2), FieldSpec::padic(3), FieldSpec::padic(5),
                                             FieldSpec::laurent(3)};
    return f;
}

// Criteria 1 and 8 share one harness run.
struct Harness {
    long total = 0, agree = 0, internal = 0, other_errors = 0;
    long wnm = 0, cycle_checked = 0, violations = 0, cycle_errors = 0;
    double decide_seconds = 0, cycle_seconds = 0;
    std::string first_problem;
};

const Harness& harness() {
    static const Harness h = [] {
        Harness h;
        std::mt19937_64 rng(20240601);
        for (const FieldSpec& f : harness_fields()) {
            for (int i = 0; i < 500; ++i) {
                const PolyMap phi = random_cubic(f, rng);
                ++h.total;
                std::optional<Verdict> v;
                auto t0 = Clock::now();
                try {
                    v = decide(phi);
                    ++h.agree;
                } catch (const Error& e) {
                    (e.kind() == ErrorKind::InternalInconsistency ? h.internal : h.other_errors)++;
                    if (h.first_problem.empty()) h.first_problem = phi.to_string() + " over " + f.to_string() + ": " + e.what();
                }
                h.decide_seconds += seconds_since(t0);
                if (!v || !v->wnm_exists) continue;
                ++h.wnm;
                t0 = Clock::now();
                try {
                    for (const auto& rep : periodic_points(phi, 2))
                        if (rep.repelling()) {
                            ++h.violations;
                            if (h.first_problem.empty()) h.first_problem = "repelling 2-cycle for " + phi.to_string();
                        }
                    ++h.cycle_checked;
                } catch (const Error& e) {
                    ++h.cycle_errors;
                    if (h.first_problem.empty()) h.first_problem = phi.to_string() + ": " + e.what();
                }
                h.cycle_seconds += seconds_since(t0);
            }
        }
        return h;
    }();
    return h;
}

Result criterion1() {
    const Harness& h = harness();
    Result r;
    r.pass = h.total >= 2000 && h.agree == h.total && h.internal == 0 && h.decide_seconds < 60;
    r.detail = std::to_string(h.agree) + "/" + std::to_string(h.total) + " cubics agree over Q2, Q3, Q5, F3((t)); " +
               std::to_string(h.internal) + " internal inconsistencies, " + std::to_string(h.other_errors) +
               " other errors; " + secs(h.decide_seconds);
    if (!r.pass && !h.first_problem.empty()) r.detail += "; first: " + h.first_problem;
    return r;
}

Result criterion2() {
    std::mt19937_64 rng(7);
    const std::vector<FieldSpec> fields = {FieldSpec::padic(3), FieldSpec::padic(5), FieldSpec::laurent(5)};
    long cases = 0, ok = 0;
    std::string bad;
    for (long nu = 1; nu <= 3; ++nu) {
        for (int i = 0; i < 50; ++i) {
            const FieldSpec& f = fields[static_cast<std::size_t>(i) % fields.size()];
            const KElem lam = random_unit(f, rng), u2 = random_unit(f, rng), u3 = random_unit(f, rng);
            const PolyMap phi(KPoly(f, {KElem::zero(f), lam, u2, u3 * pw(f, 2 * nu)}));
            ++cases;
            try {
                const Verdict v = decide(phi);
                if (!v.wnm_exists && v.repelling_witness && v.repelling_witness->valuation_exact &&
                    v.repelling_witness->multiplier_valuation == -2 * nu)
                    ++ok;
                else if (bad.empty())
                    bad = phi.to_string();
            } catch (const Error& e) {
                if (bad.empty()) bad = phi.to_string() + ": " + e.what();
            }
        }
    }
    Result r{ok == cases, std::to_string(ok) + "/" + std::to_string(cases) +
                              " maps with nu in {1,2,3} give NoWNM with v(multiplier) = -2 nu exactly"};
    if (!bad.empty()) r.detail += "; first failure: " + bad;
    return r;
}

// phi(pi z1) mod pi, computed from the normalized map without the model code.
ResPoly exceptional_image(const PolyMap& phi) {
    const FieldSpec& f = phi.field();
    std::vector<KElem> c;
    for (int i = 0; i <= phi.degree(); ++i) c.push_back(phi.poly().coeff(i) * pw(f, i));
    return reduce_poly(KPoly(f, c));
}

Result criterion3() {
    std::string detail;
    bool pass = true;
    for (std::uint32_t p : {3U, 5U, 7U}) {
        const FieldSpec f = FieldSpec::padic(p);
        const PolyMap phi(KPoly(f, {KElem::one(f), KElem::zero(f), KElem::zero(f), pw(f, -1)}));
        const Verdict v = decide(phi);
        bool ok = v.wnm_exists && v.model && v.model->blowups.size() == 1 && v.model->components.size() == 2 &&
                  v.model->intersections.size() == 1;
        if (ok) {
            const ResPoly psi = exceptional_image(v.normal_form.normalized);
            const auto& img = v.model->components[1].image;
            ok = psi.degree() <= 0 && img.kind == ComponentImage::Kind::Point && img.component == "C0" &&
                 img.point == psi.to_string('z');
        }
        pass = pass && ok;
        detail += (detail.empty() ? "" : ", ") + std::string("p=") + std::to_string(p) + (ok ? " ok" : " MISMATCH");
    }
    return {pass, detail + " (one blowup, two components, C1 -> residue point 1 of C0)"};
}

Result criterion4() {
    const FieldSpec f = FieldSpec::padic(3);
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> c(-200, 200);
    long ok = 0, total = 0;
    auto check = [&](const PolyMap& phi) {
        ++total;
        const Verdict v = decide(phi);
        if (v.wnm_exists && v.reduction_type == ReductionType::GoodReduction && v.model && v.model->blowups.empty()) ++ok;
    };
    check(PolyMap(KPoly(f, {KElem::zero(f), KElem::one(f), KElem::zero(f), KElem::one(f)})));
    for (int i = 0; i < 100; ++i) {
        std::vector<KElem> co;
        for (int k = 0; k < 3; ++k) co.push_back(KElem::from_int(f, c(rng)));
        co.push_back(random_unit(FieldSpec::padic(3), rng));
        check(PolyMap(KPoly(f, co)));
    }
    return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " integral unit-leading cubics give GoodReduction with no blowups"};
}

Result criterion5() {
    const FieldSpec f = FieldSpec::padic(3);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> v(-3, 3);
    long ok = 0;
    std::string bad;
    for (int i = 0; i < 500; ++i) {
        const PolyMap phi = random_cubic(f, rng);
        const AffineConj g{random_unit(f, rng) * pw(f, v(rng)), random_unit(f, rng) * pw(f, v(rng))};
        try {
            const Verdict a = decide(phi), b = decide(conjugate(phi, g));
            if (a.wnm_exists == b.wnm_exists && a.reduction_type == b.reduction_type) ++ok;
            else if (bad.empty()) bad = phi.to_string();
        } catch (const Error& e) {
            if (bad.empty()) bad = phi.to_string() + ": " + e.what();
        }
    }
    Result r{ok == 500, std::to_string(ok) + "/500 conjugate pairs over Q3 share wnm_exists and reduction_type"};
    if (!bad.empty()) r.detail += "; first failure: " + bad;
    return r;
}

Result criterion6() {
    std::mt19937_64 rng(6);
    const std::vector<FieldSpec> fields = {FieldSpec::padic(2), FieldSpec::padic(3), FieldSpec::padic(5),
                                           FieldSpec::laurent(3), FieldSpec::laurent(5)};
    std::uniform_int_distribution<int> deg(1, 6);
    std::uniform_int_distribution<long> v(-3, 3);
    std::bernoulli_distribution repeat(0.2), zero_root(0.05);
    long ok = 0;
    std::string bad;
    for (int i = 0; i < 1000; ++i) {
        const FieldSpec& f = fields[static_cast<std::size_t>(i) % fields.size()];
        std::vector<KElem> roots;
        const int d = deg(rng);
        for (int k = 0; k < d; ++k) {
            if (!roots.empty() && repeat(rng)) roots.push_back(roots.back());
            else if (zero_root(rng)) roots.push_back(KElem::zero(f));
            else roots.push_back(random_unit(f, rng) * pw(f, v(rng)));
        }
        KPoly g = KPoly::constant(random_unit(f, rng) * pw(f, v(rng)));
        for (const auto& r : roots) g = g * (KPoly::variable(f) - KPoly::constant(r));

        std::vector<KElem> distinct;
        for (const auto& r : roots)
            if (std::none_of(distinct.begin(), distinct.end(), [&](const KElem& x) { return x == r; }))
                distinct.push_back(r);
        bool good = true;
        try {
            const auto found = k_rational_roots(g);
            good = found.size() == distinct.size();
            for (const auto& want : distinct)
                good = good && std::any_of(found.begin(), found.end(), [&](const HenselRoot& h) {
                           return (h.value - want).val() >= 32;
                       });
            std::map<mpq_class, int> expect, got;
            int zeros = 0;
            for (const auto& r : roots)
                if (r.is_zero()) ++zeros;
                else ++expect[mpq_class(r.val())];
            const NewtonPolygon np = newton_polygon(g);
            for (const auto& [val, mult] : np.root_valuations()) got[val] += mult;
            good = good && expect == got && np.zero_order == zeros;
        } catch (const Error& e) {
            good = false;
            if (bad.empty()) bad = g.to_string() + ": " + e.what();
        }
        if (good) ++ok;
        else if (bad.empty()) bad = g.to_string();
    }
    Result r{ok == 1000, std::to_string(ok) + "/1000 split polynomials: roots recovered mod pi^32, polygon slopes match"};
    if (!bad.empty()) r.detail += "; first failure: " + bad;
    return r;
}

Result criterion7() {
    const auto t0 = Clock::now();
    bool pass = true;
    std::string detail;
    for (auto [p, d] : std::vector<std::pair<std::uint32_t, int>>{{3, 4}, {5, 4}, {7, 4}, {5, 5}}) {
        std::string line = "(" + std::to_string(p) + "," + std::to_string(d) + ")";
        try {
            const auto [phi, spec] = build(p, d);
            const bool nonrep = verify_fixed_nonrepelling(phi);
            const SubshiftWitness w = subshift_witness(phi, spec);
            const SamplingReport s = sample_dynamics(phi, spec);
            bool ok = nonrep && w.complete_bipartite && s.escaped == s.escape_samples && s.escape_samples >= 200 &&
                      s.invariant == s.invariance_samples;
            if (d == 4) ok = ok && w.two_cycle && w.two_cycle->multiplier_valuation <= -2;
            line += " over " + unramified_field(p, spec.ext_degree)->name();
            if (w.two_cycle) line += " cycle v=" + std::to_string(w.two_cycle->multiplier_valuation);
            line += ok ? " ok" : " FAIL";
            pass = pass && ok;
        } catch (const Error& e) {
            pass = false;
            line += std::string(" ") + e.what();
        }
        detail += (detail.empty() ? "" : "; ") + line;
    }
    int exceptional = 0;
    for (auto [p, d] : std::vector<std::pair<std::uint32_t, int>>{{2, 4}, {2, 5}, {2, 7}, {3, 5}}) {
        try {
            (void)build(p, d);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ExceptionalCase) ++exceptional;
        }
    }
    const double t = seconds_since(t0);
    pass = pass && exceptional == 4 && t < 120;
    detail += "; " + std::to_string(exceptional) + "/4 exceptional pairs rejected; " + secs(t);
    return {pass, detail};
}

Result criterion8() {
    const Harness& h = harness();
    Result r;
    r.pass = h.violations == 0 && h.cycle_errors == 0 && h.cycle_checked == h.wnm;
    r.detail = std::to_string(h.cycle_checked) + "/" + std::to_string(h.wnm) + " WNM cubics checked for period 2, " +
               std::to_string(h.violations) + " repelling cycles, " + std::to_string(h.cycle_errors) + " errors; " +
               secs(h.cycle_seconds);
    if (!r.pass && !h.first_problem.empty()) r.detail += "; first: " + h.first_problem;
    return r;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
        {"1 theorem equivalence harness", criterion1},
        {"2 witness multiplier valuation -2 nu", criterion2},
        {"3 irreducible two-component model", criterion3},
        {"4 good reduction fast path", criterion4},
        {"5 conjugation invariance", criterion5},
        {"6 Newton/Hensel oracle equivalence", criterion6},
        {"7 degree-4 and degree-5 counterexamples", criterion7},
        {"8 no repelling 2-cycles when a model exists", criterion8},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Result r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r = {false, std::string("threw: ") + e.what()};
        }
        if (!r.pass) ++failed;
        std::cout << (r.pass ? "PASS " : "FAIL ") << "criterion " << name << ": " << r.detail << std::endl;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
    return failed ? 1 : 0;
}
