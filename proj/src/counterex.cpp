#include "nadyn/counterex.hpp"

#include <numeric>
#include <random>

#include "nadyn/error.hpp"

namespace nadyn {

namespace {

constexpr std::array<std::pair<std::uint32_t, int>, 4> kExceptional{{{2, 4}, {2, 5}, {2, 7}, {3, 5}}};

// Roots of w^e = c in F_{p^m}, c = +-1.
std::vector<ResidueElem> roots_of_pm_one(const ResidueField& k, int e, int sign) {
    const ResidueElem c = sign > 0 ? k.one() : k.neg(k.one());
    std::vector<ResidueElem> out;
    for (std::uint64_t code = 1; code < k.size(); ++code)
        if (k.pow({code}, static_cast<std::uint64_t>(e)) == c) out.push_back({code});
    return out;
}

int a_sign(const CounterexampleSpec& s) { return s.e1 % 2 == 0 ? 1 : -1; }

struct Engine {
    UnramifiedFieldPtr K;
    UPoly phi, dphi;
    long R;
    long n;

    Engine(const PolyMap& map, const CounterexampleSpec& spec, long working_precision)
        : K(unramified_field(spec.p, spec.ext_degree)), R(working_precision), n(spec.n) {
        phi = UPoly::from_kpoly(K, map.poly(), 2 * (R + spec.n + 16));
        dphi = phi.derivative();
    }

    UElem num(long a) const { return UElem::from_rational(K, a, R + n + 16); }
    UElem pi(long e) const { return UElem::uniformizer_power(K, e, R + n + 16); }

    UElem random_integral(std::mt19937_64& rng) const {
        std::uniform_int_distribution<std::uint32_t> dig(0, K->p() - 1);
        std::vector<mpz_class> c(K->degree(), 0);
        for (auto& x : c)
            for (int i = 0; i < 24; ++i) x = x * K->p() + dig(rng);
        return UElem::from_digits(K, c, 0, R + n + 16);
    }

    UElem random_unit(std::mt19937_64& rng) const {
        for (;;) {
            UElem u = random_integral(rng);
            if (u.val() == 0) return u;
        }
    }

    /// The unique x in ball with phi(x) = y.
    /// The unique x in ball with v(phi(x) - y) >= R.
    UElem preimage(const Ball& ball, const UElem& y) const {
        const long work = R + n + 16;
        UElem x = ball.center.padded_to(work);
        for (int it = 0; it < 64; ++it) {
            const UElem r = phi(x) - y;
            if (r.val() >= R) return x;
            x = (x - r / dphi(x)).padded_to(work);
            if (!ball.contains(x)) break;
        }
        throw Error(ErrorKind::WitnessNotFound, "Newton left the ball or stalled");
    }
};

std::vector<Ball> centers(const Engine& E, const CounterexampleSpec& s, bool near_zero) {
    const auto& k = *E.K->residue();
    const int e = near_zero ? s.e0 : s.e1;
    const long ep = near_zero ? s.e0p : s.e1p;
    const auto zetas = roots_of_pm_one(k, e, near_zero ? a_sign(s) : -1);
    if (static_cast<int>(zetas.size()) != e)
        throw Error(ErrorKind::WitnessNotFound, "residue equation has " + std::to_string(zetas.size()) +
                                                    " roots, expected " + std::to_string(e));
    std::vector<Ball> out;
    const UElem base = near_zero ? UElem::zero(E.K) : E.num(1);
    const UElem target = near_zero ? E.num(1) : UElem::zero(E.K);
    for (const auto& z : zetas) {
        const Ball rough{base + E.pi(ep) * UElem::lift(E.K, z, E.R + E.n + 16), ep + 1};
        out.push_back({E.preimage(rough, target), ep + 1});
    }
    return out;
}

} // namespace

std::pair<PolyMap, CounterexampleSpec> build(std::uint32_t p, int d) {
    for (const auto& [ep, ed] : kExceptional)
        if (ep == p && ed == d)
            throw Error(ErrorKind::ExceptionalCase, "(p, d) = (" + std::to_string(p) + ", " + std::to_string(d) +
                                                        ") has no two-term construction");
    if (d < 4) throw Error(ErrorKind::InvalidArgument, "counterexamples need degree at least 4");
    CounterexampleSpec s;
    s.p = p;
    s.d = d;
    for (int e0 = 2; e0 <= d / 2; ++e0) {
        const int e1 = d - e0;
        if (e0 % static_cast<int>(p) != 0 && e1 % static_cast<int>(p) != 0) {
            s.e0 = e0;
            s.e1 = e1;
            break;
        }
    }
    if (s.e0 == 0) throw Error(ErrorKind::NoDecomposition, "no split d = e0 + e1 with p not dividing e0, e1");
    s.n = std::lcm(s.e0, s.e1);
    s.e0p = s.n / s.e0;
    s.e1p = s.n / s.e1;
    s.r = {(s.e0p + s.e0 - 2) / (s.e0 - 1), (s.e1p + s.e1 - 2) / (s.e1 - 1)};
    s.s = {s.e0p + s.r[0], s.e1p + s.r[1]};

    s.ext_degree = 0;
    for (unsigned m = 1; m <= ResidueField::kMaxDegree; ++m) {
        const auto k = residue_field(p, m);
        if (static_cast<int>(roots_of_pm_one(*k, s.e0, a_sign(s)).size()) == s.e0 &&
            static_cast<int>(roots_of_pm_one(*k, s.e1, -1).size()) == s.e1) {
            s.ext_degree = m;
            break;
        }
    }
    if (s.ext_degree == 0) throw Error(ErrorKind::WitnessNotFound, "no small unramified extension splits the centers");

    const FieldSpec f = FieldSpec::padic(p);
    const KPoly z = KPoly::variable(f);
    const KPoly zm1 = z - KPoly::constant(KElem::one(f));
    KPoly g = KPoly::constant(KElem::one(f));
    for (int i = 0; i < s.e0; ++i) g = g * z;
    for (int i = 0; i < s.e1; ++i) g = g * zm1;
    return {PolyMap(g.scaled(KElem::uniformizer_power(f, -s.n)) + z), s};
}

bool verify_fixed_nonrepelling(const PolyMap& phi, const PrecisionOptions& opts) {
    for (const auto& rep : fixed_points(phi, opts))
        if (rep.repelling() || rep.multiplier_valuation < 0) return false;
    return true;
}

SubshiftWitness subshift_witness(const PolyMap& phi, const CounterexampleSpec& spec, std::uint64_t seed,
                                 long working_precision) {
    const Engine E(phi, spec, working_precision);
    SubshiftWitness w;
    w.e0p = spec.e0p;
    w.e1p = spec.e1p;
    w.a_balls = centers(E, spec, true);
    w.b_balls = centers(E, spec, false);

    std::mt19937_64 rng(seed);
    const Ball to_one{E.num(1), 1}, to_zero{UElem::zero(E.K), 1};
    auto certify = [&](const Ball& b, const Ball& image, long ep) {
        for (int i = 0; i < 16; ++i) {
            const UElem x = b.center + E.pi(b.radius) * E.random_integral(rng);
            const UElem y = b.center + E.pi(b.radius) * E.random_integral(rng);
            const UElem dx = x - y;
            if (dx.is_zero()) continue;
            const UElem fx = E.phi(x), dfx = fx - E.phi(y);
            if (!dfx.valuation_certified() || dfx.val() != dx.val() - ep || !image.contains(fx))
                throw Error(ErrorKind::WitnessNotFound, "expansion exponent " + std::to_string(ep) + " fails at " +
                                                            x.to_string());
            ++w.pairs_checked;
        }
        // Onto: random targets in the image ball have a preimage in b.
        for (int i = 0; i < 4; ++i) (void)E.preimage(b, image.center + E.pi(1) * E.random_integral(rng));
    };
    for (const auto& b : w.a_balls) certify(b, to_one, spec.e0p);
    for (const auto& b : w.b_balls) certify(b, to_zero, spec.e1p);

    std::vector<std::pair<Ball, Ball>> verts;
    for (const auto& b : w.a_balls) verts.emplace_back(b, to_one);
    for (const auto& b : w.b_balls) verts.emplace_back(b, to_zero);
    const std::size_t na = w.a_balls.size();
    w.incidence.assign(verts.size(), std::vector<bool>(verts.size(), false));
    w.complete_bipartite = true;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        for (std::size_t j = 0; j < verts.size(); ++j) {
            w.incidence[i][j] = verts[i].second.contains(verts[j].first);
            if (w.incidence[i][j] != ((i < na) != (j < na))) w.complete_bipartite = false;
        }
    }
    if (spec.d * spec.d <= 20) w.two_cycle = find_two_cycle(phi, spec, working_precision);
    return w;
}

TwoCycle find_two_cycle(const PolyMap& phi, const CounterexampleSpec& spec, long working_precision) {
    if (spec.d * spec.d > 20)
        throw Error(ErrorKind::DegreeCapExceeded, "phi o phi has degree " + std::to_string(spec.d * spec.d));
    const Engine E(phi, spec, working_precision);
    const Ball a = centers(E, spec, true).front();
    const Ball b = centers(E, spec, false).front();
    // The composite of the two inverse branches contracts a by e0' + e1'.
    const long expand = spec.e0p + spec.e1p;
    UElem x = a.center;
    for (long round = 0; round <= E.R; ++round) {
        const UElem y = E.preimage(b, x);
        x = E.preimage(a, y);
        const UElem f = E.phi(E.phi(x)) - x;
        if (f.val() >= E.R - expand) {
            TwoCycle c;
            c.x = x;
            c.y = E.phi(x);
            c.multiplier = E.dphi(c.x) * E.dphi(c.y);
            if (!c.multiplier.valuation_certified())
                throw Error(ErrorKind::UncertifiedValuation, "cycle multiplier below the precision horizon");
            c.multiplier_valuation = c.multiplier.val();
            c.precision = f.val() + expand;
            return c;
        }
    }
    throw Error(ErrorKind::WitnessNotFound, "inverse-branch iteration did not converge");
}

SamplingReport sample_dynamics(const PolyMap& phi, const CounterexampleSpec& spec, std::uint64_t seed, long samples,
                               long working_precision) {
    const Engine E(phi, spec, working_precision);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> vdist(-2, std::max(spec.e0p, spec.e1p));
    std::bernoulli_distribution near_one(0.5);
    const UElem one = E.num(1);
    const Ball zero_ball{UElem::zero(E.K), spec.e0p}, one_ball{one, spec.e1p};
    SamplingReport rep;
    while (rep.escape_samples < samples) {
        const long v = vdist(rng);
        UElem z = E.pi(v) * E.random_unit(rng);
        if (v >= 0 && near_one(rng)) z = one + z;
        if (zero_ball.contains(z) || one_ball.contains(z)) continue;
        ++rep.escape_samples;
        for (int k = 0; k <= 10; ++k) {
            if (z.valuation_certified() && z.val() < 0) {
                // Once v(z) < 0, v(phi(z)) = d v(z) - n < v(z) forever after.
                const UElem next = E.phi(z);
                if (next.valuation_certified() && next.val() < z.val()) {
                    ++rep.escaped;
                    rep.max_escape_steps = std::max(rep.max_escape_steps, k);
                }
                break;
            }
            z = E.phi(z);
        }
    }
    for (long i = 0; i < samples; ++i) {
        const UElem z0 = E.pi(spec.s[0]) * E.random_integral(rng);
        const UElem z1 = one + E.pi(spec.s[1]) * E.random_integral(rng);
        rep.invariance_samples += 2;
        if (E.phi(z0).val() >= spec.s[0]) ++rep.invariant;
        if ((E.phi(z1) - one).val() >= spec.s[1]) ++rep.invariant;
    }
    return rep;
}

} // namespace nadyn
