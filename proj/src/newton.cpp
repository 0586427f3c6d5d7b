#include "nadyn/newton.hpp"

#include <algorithm>
#include <optional>

#include "nadyn/error.hpp"

namespace nadyn {

std::vector<std::pair<mpq_class, int>> NewtonPolygon::root_valuations() const {
    std::vector<std::pair<mpq_class, int>> out;
    for (const auto& s : segments) out.emplace_back(-s.slope, s.length);
    return out;
}

NewtonPolygon newton_polygon(const KPoly& f) {
    if (f.is_zero()) throw Error(ErrorKind::InvalidArgument, "Newton polygon of the zero polynomial");
    std::vector<std::pair<int, long>> pts;
    for (int i = 0; i <= f.degree(); ++i) {
        const KElem c = f.coeff(i);
        if (!c.valuation_certified())
            throw Error(ErrorKind::UncertifiedValuation, "coefficient " + std::to_string(i) + " is below its precision");
        if (!c.is_zero()) pts.emplace_back(i, c.val());
    }
    NewtonPolygon np;
    np.zero_order = pts.front().first;
    // Monotone chain, lower hull only.
    std::vector<std::pair<int, long>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            // Drop b when it lies on or above the segment a -> pt.
            const __int128 lhs = static_cast<__int128>(b.second - a.second) * (pt.first - a.first);
            const __int128 rhs = static_cast<__int128>(pt.second - a.second) * (b.first - a.first);
            if (lhs >= rhs) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }
    np.vertices = hull;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        const int run = hull[i].first - hull[i - 1].first;
        mpq_class slope(hull[i].second - hull[i - 1].second, run);
        slope.canonicalize();
        np.segments.push_back({slope, run});
    }
    return np;
}

HenselRoot hensel_lift(const KPoly& f, const KElem& a0, long target, const PrecisionOptions& opts) {
    if (target > opts.max_precision)
        throw Error(ErrorKind::PrecisionExhausted,
                    "target precision " + std::to_string(target) + " exceeds " + std::to_string(opts.max_precision));
    if (!f.is_exact()) throw Error(ErrorKind::ApproximateInput, "Hensel lifting needs exact coefficients");
    if (f.min_valuation() < 0 || a0.val() < 0)
        throw Error(ErrorKind::HenselHypothesisFailed, "Hensel lifting needs integral coefficients and start");
    const KPoly df = f.derivative();
    KElem a = a0.as_exact();
    KElem fa = f.eval(a);
    if (fa.is_zero()) return {a, kInfinity, kInfinity};
    const KElem dfa = df.eval(a);
    if (dfa.is_zero() || fa.val() <= 2 * dfa.val())
        throw Error(ErrorKind::HenselHypothesisFailed,
                    "v(f(a0)) = " + std::to_string(fa.val()) + " is not above 2 v(f'(a0))" +
                        (dfa.is_zero() ? std::string(" = inf") : " = " + std::to_string(2 * dfa.val())));
    const long e = dfa.val();
    for (int iter = 0; iter < 64; ++iter) {
        if (fa.is_zero()) return {a, kInfinity, kInfinity};
        if (fa.val() >= target) {
            const long prec = fa.val() - e;
            return {a.with_precision(prec), prec, fa.val()};
        }
        a = (a - fa / df.eval(a)).with_precision(target + 1).as_exact();
        fa = f.eval(a);
    }
    throw Error(ErrorKind::InternalInconsistency, "Newton iteration failed to converge");
}

bool root_order_less(const KElem& a, const KElem& b, long digits) {
    if (a.val() != b.val()) return a.val() < b.val();
    if (a.is_zero()) return false;
    const Expansion ea = a.expand(a.val() + digits), eb = b.expand(b.val() + digits);
    return std::lexicographical_compare(ea.digits.begin(), ea.digits.end(), eb.digits.begin(), eb.digits.end());
}

namespace {

/// a/b with a == b*u mod p^k and |a|, |b| small, or nothing.
std::optional<mpq_class> reconstruct_rational(const mpz_class& u, const mpz_class& modulus, std::uint32_t p) {
    mpz_class r0 = modulus, r1 = u, t0 = 0, t1 = 1;
    mpz_class bound;
    mpz_class half = modulus / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    while (r1 > bound) {
        const mpz_class q = r0 / r1;
        r0 = r0 - q * r1;
        std::swap(r0, r1);
        t0 = t0 - q * t1;
        std::swap(t0, t1);
    }
    if (abs(t1) > bound || t1 == 0) return std::nullopt;
    if (padic_val(t1, p) > 0) return std::nullopt;
    mpq_class r(r1, t1);
    r.canonicalize();
    return r;
}

/// Pade approximant a/b of a power series s mod t^k, deg a, deg b < k/2.
std::optional<RatFunc> reconstruct_ratfunc(const FpPoly& s, std::size_t k, std::uint32_t p) {
    FpPoly r0 = FpPoly::monomial(p, 1, k), r1 = s, t0(p), t1 = FpPoly::constant(p, 1);
    const long half = static_cast<long>(k / 2);
    while (!r1.is_zero() && r1.degree() >= half) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        FpPoly nt = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    if (t1.is_zero() || t1.degree() >= half || t1.coeff(0) == 0) return std::nullopt;
    return RatFunc(r1, t1);
}

std::optional<KElem> exact_candidate(const KElem& approx) {
    const FieldSpec& fs = approx.field();
    if (approx.is_zero()) return std::nullopt;
    const Expansion e = approx.expand(approx.precision());
    const std::size_t len = e.digits.size();
    if (len < 2) return std::nullopt;
    const KElem scale = KElem::uniformizer_power(fs, e.start);
    if (fs.kind == FieldKind::PadicRationals) {
        mpz_class u = 0, pk = 1;
        for (auto d : e.digits) {
            u += pk * static_cast<unsigned long>(d);
            pk *= fs.p;
        }
        auto r = reconstruct_rational(u, pk, fs.p);
        if (!r) return std::nullopt;
        return KElem::from_rational(fs, *r) * scale;
    }
    auto r = reconstruct_ratfunc(FpPoly(fs.p, e.digits), len, fs.p);
    if (!r) return std::nullopt;
    return KElem::from_ratfunc(fs, *r) * scale;
}

struct RootSearch {
    const KPoly& f;
    const KPoly& g;
    const PrecisionOptions& opts;
    std::vector<HenselRoot>& out;
    long depth_cap = 0;

    // Roots z = c + pi^k w with w in O_K and h(w) = 0, h integral with unit content.
    void integral_roots(const KPoly& h, const KElem& c, long k, long depth, bool units_only) {
        const FieldSpec& fs = h.field();
        const KElem pk = KElem::uniformizer_power(fs, k);
        for (const auto& rr : residue_roots(reduce_poly(h))) {
            if (units_only && rr.root.code == 0) continue;
            const KElem zeta = KElem::from_int(fs, static_cast<long>(rr.root.code));
            if (rr.multiplicity == 1) {
                out.push_back(leaf(h, zeta, c, pk, k));
                continue;
            }
            if (depth >= depth_cap)
                throw Error(ErrorKind::InternalInconsistency, "root isolation exceeded its discriminant depth bound");
            const KPoly next = normalize_content(h.substitute_affine(KElem::uniformizer_power(fs, 1), zeta)).poly;
            integral_roots(next, c + pk * zeta, k + 1, depth + 1, false);
        }
    }

    HenselRoot leaf(const KPoly& h, const KElem& zeta, const KElem& c, const KElem& pk, long k) const {
        const long n = opts.precision;
        long target = std::max<long>(1, n - k);
        for (;;) {
            if (target > opts.max_precision)
                throw Error(ErrorKind::PrecisionExhausted, "root needs more than " +
                                                               std::to_string(opts.max_precision) + " digits");
            PrecisionOptions inner = opts;
            inner.max_precision = std::max(opts.max_precision, target);
            const HenselRoot w = hensel_lift(h, zeta, target, inner);
            const KElem z = c + pk * w.value.as_exact();
            if (w.exact()) return {z, kInfinity, kInfinity};
            const long prec = val_add(k, w.precision);
            const KElem approx = z.with_precision(prec);
            if (auto cand = exact_candidate(approx)) {
                if ((*cand - z).val() >= prec && g.eval(*cand).is_zero()) return {*cand, kInfinity, kInfinity};
            }
            const long residual = f.eval(z).val();
            if (prec >= n && residual >= n) return {approx, prec, residual};
            target += std::max(n - prec, n - residual);
        }
    }
};

long discriminant_valuation(const KPoly& h) {
    if (h.degree() <= 1) return 0;
    const KPoly dh = h.derivative();
    if (dh.is_zero()) throw Error(ErrorKind::InternalInconsistency, "separable part is inseparable");
    // In characteristic p the derivative can drop degree; restore the
    // Sylvester matrix size of degree n - 1.
    const KElem d = resultant(h, dh) * h.lead().pow(h.degree() - 1 - dh.degree()) / h.lead();
    if (d.is_zero()) throw Error(ErrorKind::InternalInconsistency, "separable part has a repeated root");
    return d.val();
}

} // namespace

std::vector<HenselRoot> k_rational_roots(const KPoly& f, const PrecisionOptions& opts) {
    return k_rational_roots(f, f, opts);
}

std::vector<HenselRoot> k_rational_roots(const KPoly& f, const KPoly& ambient, const PrecisionOptions& opts) {
    if (f.is_zero()) throw Error(ErrorKind::InvalidArgument, "roots of the zero polynomial");
    if (f.degree() > kMaxRootDegree)
        throw Error(ErrorKind::DegreeCapExceeded,
                    "degree " + std::to_string(f.degree()) + " exceeds " + std::to_string(kMaxRootDegree));
    if (!f.is_exact()) throw Error(ErrorKind::ApproximateInput, "root finding needs exact coefficients");
    if (opts.precision > opts.max_precision)
        throw Error(ErrorKind::PrecisionExhausted, "precision " + std::to_string(opts.precision) + " exceeds " +
                                                       std::to_string(opts.max_precision));
    const FieldSpec& fs = f.field();
    KPoly g = squarefree_part(f);
    std::vector<HenselRoot> out;
    if (g.degree() <= 0) return out;
    if (g.coeff(0).is_zero()) {
        out.push_back({KElem::zero(fs), kInfinity, kInfinity});
        g = g.exact_div(KPoly::variable(fs));
    }
    RootSearch search{ambient, g, opts, out};
    for (const auto& seg : newton_polygon(g).segments) {
        if (seg.slope.get_den() != 1) continue;
        const long m = -seg.slope.get_num().get_si();
        const KPoly h = normalize_content(g.substitute_affine(KElem::uniformizer_power(fs, m), KElem::zero(fs))).poly;
        search.depth_cap = 2 + discriminant_valuation(h);
        search.integral_roots(h, KElem::zero(fs), m, 0, true);
    }
    std::sort(out.begin(), out.end(),
              [](const HenselRoot& a, const HenselRoot& b) { return root_order_less(a.value, b.value); });
    return out;
}

} // namespace nadyn
