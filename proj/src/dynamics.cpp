#include "nadyn/dynamics.hpp"

#include "nadyn/error.hpp"

namespace nadyn {

PolyMap::PolyMap(KPoly phi) : phi_(std::move(phi)) {
    if (phi_.degree() < 2)
        throw Error(ErrorKind::InvalidArgument, "a dynamical map needs degree >= 2, got " + phi_.to_string());
    dphi_ = phi_.derivative();
}

KPoly PolyMap::iterate(int q) const {
    if (q < 0) throw Error(ErrorKind::InvalidArgument, "negative iterate");
    KPoly r = KPoly::variable(field());
    for (int i = 0; i < q; ++i) r = phi_.compose(r);
    return r;
}

AffineConj AffineConj::inverse() const {
    const KElem ia = KElem::one(a.field()) / a;
    return {ia, -b * ia};
}

AffineConj AffineConj::then(const AffineConj& next) const { return {next.a * a, next.a * b + next.b}; }

PolyMap conjugate(const PolyMap& phi, const AffineConj& f) {
    if (f.a.is_zero()) throw Error(ErrorKind::InvalidArgument, "affine conjugation with a = 0");
    const AffineConj inv = f.inverse();
    return PolyMap(phi.poly().substitute_affine(inv.a, inv.b).scaled(f.a) + KPoly::constant(f.b));
}

std::string to_string(PointClass c) { return c == PointClass::Repelling ? "repelling" : "non-repelling"; }

KElem multiplier(const PolyMap& phi, const KElem& rho) { return phi.derivative_at(rho); }

KElem cycle_multiplier(const PolyMap& phi, const std::vector<KElem>& cycle) {
    KElem m = KElem::one(phi.field());
    for (const auto& x : cycle) m *= phi.derivative_at(x);
    return m;
}

long certified_valuation(const KElem& m) {
    if (!m.valuation_certified())
        throw Error(ErrorKind::UncertifiedValuation,
                    "multiplier is only known to have valuation >= " + std::to_string(m.val()));
    return m.val();
}

namespace {

int checked_power(int d, int q) {
    long r = 1;
    for (int i = 0; i < q; ++i) {
        r *= d;
        if (r > kMaxRootDegree) return kMaxRootDegree + 1;
    }
    return static_cast<int>(r);
}

// One attempt at working precision opts.precision; nullopt asks for more.
std::optional<std::vector<FixedPointReport>> classify(const PolyMap& phi, const KPoly& ambient, const KPoly& radical,
                                                      int q, const PrecisionOptions& opts) {
    const auto roots = k_rational_roots(radical, ambient, opts);
    std::vector<bool> used(roots.size(), false);
    std::vector<FixedPointReport> out;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        FixedPointReport rep;
        rep.period = q;
        std::vector<std::size_t> orbit{i};
        used[i] = true;
        for (int step = 1; step < q; ++step) {
            const KElem y = phi(roots[orbit.back()].value);
            std::optional<std::size_t> hit;
            for (std::size_t j = 0; j < roots.size(); ++j) {
                const KElem diff = roots[j].value - y;
                if (diff.is_zero() || !diff.valuation_certified()) {
                    if (hit) return std::nullopt;
                    hit = j;
                }
            }
            if (!hit || used[*hit]) return std::nullopt;
            used[*hit] = true;
            orbit.push_back(*hit);
        }
        std::vector<KElem> pts;
        for (auto k : orbit) {
            rep.cycle.push_back(roots[k]);
            pts.push_back(roots[k].value);
        }
        rep.multiplier = cycle_multiplier(phi, pts);
        if (rep.multiplier.valuation_certified()) {
            rep.multiplier_valuation = rep.multiplier.val();
            rep.valuation_exact = true;
        } else if (rep.multiplier.val() >= 0) {
            rep.multiplier_valuation = rep.multiplier.val();
            rep.valuation_exact = false;
        } else {
            return std::nullopt;
        }
        rep.cls = rep.multiplier_valuation < 0 ? PointClass::Repelling : PointClass::NonRepelling;
        rep.residual = roots[i].residual;
        out.push_back(std::move(rep));
    }
    return out;
}

} // namespace

std::vector<FixedPointReport> periodic_points(const PolyMap& phi, int q, const PrecisionOptions& opts) {
    if (q < 1) throw Error(ErrorKind::InvalidArgument, "period must be positive");
    if (checked_power(phi.degree(), q) > kMaxRootDegree)
        throw Error(ErrorKind::DegreeCapExceeded, "degree " + std::to_string(phi.degree()) + "^" + std::to_string(q) +
                                                      " exceeds " + std::to_string(kMaxRootDegree));
    const KPoly z = KPoly::variable(phi.field());
    const KPoly ambient = phi.iterate(q) - z;
    KPoly radical = squarefree_part(ambient);
    for (int d = 1; d < q; ++d) {
        if (q % d != 0) continue;
        radical = radical.exact_div(gcd(radical, phi.iterate(d) - z));
    }
    for (long n = opts.precision;; n *= 2) {
        if (n > opts.max_precision)
            throw Error(ErrorKind::PrecisionExhausted,
                        "periodic points of period " + std::to_string(q) + " not certified below precision " +
                            std::to_string(opts.max_precision));
        PrecisionOptions cur = opts;
        cur.precision = n;
        if (auto r = classify(phi, ambient, radical, q, cur)) return *r;
    }
}

std::vector<FixedPointReport> fixed_points(const PolyMap& phi, const PrecisionOptions& opts) {
    return periodic_points(phi, 1, opts);
}

std::optional<FixedPointReport> find_repelling_periodic(const PolyMap& phi, int q_max, const PrecisionOptions& opts) {
    if (checked_power(phi.degree(), q_max) > kMaxRootDegree)
        throw Error(ErrorKind::DegreeCapExceeded, "degree " + std::to_string(phi.degree()) + "^" +
                                                      std::to_string(q_max) + " exceeds " + std::to_string(kMaxRootDegree));
    for (int q = 1; q <= q_max; ++q)
        for (auto& rep : periodic_points(phi, q, opts))
            if (rep.repelling()) return rep;
    return std::nullopt;
}

} // namespace nadyn
