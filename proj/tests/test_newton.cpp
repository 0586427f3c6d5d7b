#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>
#include <string>

#include "nadyn/error.hpp"
#include "nadyn/newton.hpp"
#include "nadyn/parse.hpp"

using namespace nadyn;

namespace {

const FieldSpec Q3 = FieldSpec::padic(3);

KElem q(const FieldSpec& f, long a, long b = 1) { return KElem::from_rational(f, mpq_class(a, b)); }

KPoly poly(const FieldSpec& f, std::initializer_list<long> c) {
    std::vector<KElem> v;
    for (long x : c) v.push_back(KElem::from_int(f, x));
    return {f, v};
}

KPoly lin(const KElem& r) { return KPoly(r.field(), {-r, KElem::one(r.field())}); }

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

// Digit-by-digit square root of a mod 3^n starting from x0 mod 3.
mpz_class sqrt_mod_3n(long a, long x0, int n) {
    mpz_class x = x0, mod = 3;
    for (int k = 1; k < n; ++k) {
        const mpz_class next = mod * 3;
        for (int d = 0; d < 3; ++d) {
            const mpz_class cand = x + d * mod;
            mpz_class r = cand * cand - a;
            mpz_mod(r.get_mpz_t(), r.get_mpz_t(), next.get_mpz_t());
            if (r == 0) {
                x = cand;
                break;
            }
        }
        mod = next;
    }
    return x;
}

mpz_class residue_mod(const KElem& x, const mpz_class& m) {
    const mpq_class* r = x.rational();
    mpz_class inv, out;
    mpz_invert(inv.get_mpz_t(), r->get_den().get_mpz_t(), m.get_mpz_t());
    out = r->get_num() * inv;
    mpz_mod(out.get_mpz_t(), out.get_mpz_t(), m.get_mpz_t());
    return out;
}

} // namespace

TEST(NewtonPolygon, Examples) {
    for (long p : {2L, 3L, 5L}) {
        const FieldSpec f = FieldSpec::padic(static_cast<std::uint32_t>(p));
        const NewtonPolygon a = newton_polygon(poly(f, {p, -p, 0, 1}));
        ASSERT_EQ(a.segments.size(), 1U);
        EXPECT_EQ(a.segments[0].slope, mpq_class(-1, 3));
        EXPECT_EQ(a.segments[0].length, 3);
        const NewtonPolygon b = newton_polygon(poly(f, {0, -p, 1}));
        EXPECT_EQ(b.zero_order, 1);
        ASSERT_EQ(b.segments.size(), 1U);
        EXPECT_EQ(b.segments[0].slope, -1);
        EXPECT_EQ(b.segments[0].length, 1);
    }
    const NewtonPolygon c = newton_polygon(poly(Q3, {3 * 3 * 3 * 3 * 3, 0, 0, 2}));
    ASSERT_EQ(c.segments.size(), 1U);
    EXPECT_EQ(c.segments[0].slope, mpq_class(-5, 3));
}

TEST(NewtonPolygon, SlopesMatchRootValuations) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> val(-5, 5), unit(1, 200);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<KElem> roots;
        std::multiset<long> want;
        const int d = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < d; ++i) {
            long u = unit(rng);
            while (u % 3 == 0) ++u;
            const long v = val(rng);
            roots.push_back(q(Q3, u, 1) * KElem::uniformizer_power(Q3, v));
            want.insert(v);
        }
        const NewtonPolygon np = newton_polygon(KPoly::from_roots(q(Q3, 7, 2), roots));
        std::multiset<long> got;
        mpq_class prev = -1000;
        for (const auto& s : np.segments) {
            ASSERT_GT(s.slope, prev);
            prev = s.slope;
            ASSERT_EQ(s.slope.get_den(), 1);
            for (int i = 0; i < s.length; ++i) got.insert(-s.slope.get_num().get_si());
        }
        ASSERT_EQ(got, want);
    }
}

TEST(HenselLift, Examples) {
    // x^2 + x with start -1: exact root.
    const HenselRoot e = hensel_lift(poly(Q3, {0, 1, 1}), q(Q3, -1), 20);
    EXPECT_TRUE(e.exact());
    EXPECT_EQ(e.value, q(Q3, -1));
    // x^2 + x + 9 (lambda = 1 + 9 perturbation): root congruent to -1 mod 3.
    const HenselRoot f = hensel_lift(poly(Q3, {9, 1, 1}), q(Q3, -1), 20);
    EXPECT_GE((f.value - q(Q3, -1)).val(), 1);
    EXPECT_GE(f.residual, 20);
    // z^2 - 7 from 1 matches the digit-by-digit oracle.
    const HenselRoot r = hensel_lift(poly(Q3, {-7, 0, 1}), q(Q3, 1), 30);
    EXPECT_FALSE(r.exact());
    EXPECT_GE(r.precision, 30);
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), 3, 30);
    EXPECT_EQ(residue_mod(r.value, m), sqrt_mod_3n(7, 1, 30));
    EXPECT_EQ(kind_of([] { (void)hensel_lift(poly(Q3, {-3, 0, 1}), q(Q3, 0), 10); }),
              ErrorKind::HenselHypothesisFailed);
    EXPECT_EQ(kind_of([] { (void)hensel_lift(poly(Q3, {-7, 0, 1}), q(Q3, 1), 5000); }),
              ErrorKind::PrecisionExhausted);
}

TEST(HenselLift, QuadraticConvergenceAndStability) {
    const KPoly f = poly(Q3, {-7, 0, 1});
    const HenselRoot a = hensel_lift(f, q(Q3, 1), 16);
    const HenselRoot b = hensel_lift(f, q(Q3, 1), 64);
    EXPECT_GE((a.value.as_exact() - b.value.as_exact()).val(), a.precision);
}

TEST(KRationalRoots, Examples) {
    const KElem p = KElem::uniformizer_power(Q3, 1);
    EXPECT_TRUE(k_rational_roots(poly(Q3, {3, -3, 0, 1})).empty());
    const auto r = k_rational_roots(lin(q(Q3, 0)) * lin(q(Q3, 1)) * lin(p));
    ASSERT_EQ(r.size(), 3U);
    for (const auto& x : r) EXPECT_TRUE(x.exact());
    EXPECT_EQ(r[0].value, q(Q3, 1));
    EXPECT_EQ(r[1].value, p);
    EXPECT_TRUE(r[2].value.is_zero());
    const auto s = k_rational_roots(poly(Q3, {-7, 0, 1}) * lin(q(Q3, 1)));
    ASSERT_EQ(s.size(), 3U);
    int approx = 0;
    for (const auto& x : s) {
        if (!x.exact()) {
            ++approx;
            EXPECT_GE(x.precision, 64);
            EXPECT_GE(x.residual, 64);
            EXPECT_GE((x.value * x.value - q(Q3, 7)).val(), 64);
        }
    }
    EXPECT_EQ(approx, 2);
}

TEST(KRationalRoots, ErrorsAndCaps) {
    const KPoly z = KPoly::variable(Q3);
    KPoly big = KPoly::monomial(KElem::one(Q3), 21) - z;
    EXPECT_EQ(kind_of([&] { (void)k_rational_roots(big); }), ErrorKind::DegreeCapExceeded);
    const KPoly approx(Q3, {q(Q3, 1).with_precision(5), q(Q3, 1)});
    EXPECT_EQ(kind_of([&] { (void)k_rational_roots(approx); }), ErrorKind::ApproximateInput);
    EXPECT_EQ(kind_of([&] { (void)k_rational_roots(z, {.precision = 2048, .max_precision = 1024}); }),
              ErrorKind::PrecisionExhausted);
}

TEST(KRationalRoots, ClusteredAndRepeatedRoots) {
    // Roots 1, 1 + 3^5, 1 + 3^5 + 3^9, each doubled: needs deep isolation.
    const KElem a = q(Q3, 1), b = q(Q3, 1 + 243), c = q(Q3, 1 + 243 + 19683);
    const KPoly f = lin(a) * lin(a) * lin(b) * lin(b) * lin(c) * poly(Q3, {-7, 0, 1});
    const auto r = k_rational_roots(f);
    ASSERT_EQ(r.size(), 5U);
}

TEST(KRationalRoots, LaurentField) {
    const FieldSpec F = FieldSpec::laurent(3);
    const KElem t = KElem::uniformizer_power(F, 1);
    const KElem one = KElem::one(F);
    // (z - t)(z - 1/(1 - t))(z^2 - (1 + t))
    const KPoly f = lin(t) * lin(one / (one - t)) * KPoly(F, {-(one + t), KElem::zero(F), one});
    const auto r = k_rational_roots(f);
    ASSERT_EQ(r.size(), 4U);
    int exact = 0;
    for (const auto& x : r) exact += x.exact() ? 1 : 0;
    EXPECT_EQ(exact, 2);
    // Purely inseparable: z^3 - t has no root, z^3 - t^3 has root t.
    const KPoly z = KPoly::variable(F);
    EXPECT_TRUE(k_rational_roots(z * z * z - KPoly::constant(t)).empty());
    const auto s = k_rational_roots(z * z * z - KPoly::constant(t.pow(3)));
    ASSERT_EQ(s.size(), 1U);
    EXPECT_EQ(s[0].value, t);
}

TEST(KRationalRoots, RandomMixedProducts) {
    std::mt19937_64 rng(11);
    for (std::uint32_t p : {2U, 3U, 5U}) {
        const FieldSpec f = FieldSpec::padic(p);
        std::uniform_int_distribution<long> num(-60, 60), val(-4, 4);
        for (int trial = 0; trial < 60; ++trial) {
            std::vector<KElem> roots;
            const int d = 1 + static_cast<int>(rng() % 4);
            for (int i = 0; i < d; ++i)
                roots.push_back(q(f, num(rng), 1 + static_cast<long>(rng() % 9) * 2 + 0) *
                                KElem::uniformizer_power(f, val(rng)));
            KPoly g = KPoly::from_roots(KElem::one(f), roots);
            // Eisenstein factor: no K-roots.
            g = g * poly(f, {static_cast<long>(p), static_cast<long>(p), 1});
            std::set<std::string> want, got;
            for (const auto& r : roots) want.insert(r.kernel_string());
            const auto found = k_rational_roots(g);
            for (const auto& r : found) {
                ASSERT_TRUE(r.exact());
                got.insert(r.value.kernel_string());
            }
            ASSERT_EQ(got, want);
        }
    }
}

TEST(KRationalRoots, DerivativeDropsDegree) {
    // Over F_3((t)) the cubic term has zero derivative; the depth bound
    // must still account for the full Sylvester size.
    const FieldSpec F = FieldSpec::laurent(3);
    const KPoly g = parse_poly(F, "((2*t^7 + t^6 + 2*t^5)/(t^2 + 2*t + 2))*z^3 + ((t + 1)/(t^3 + t^2 + t))*z^2 + "
                                  "2*z + ((t^3 + 2*t^2 + t)/(t^2 + t + 1))");
    const auto r = k_rational_roots(g);
    ASSERT_FALSE(r.empty());
    for (const auto& x : r) EXPECT_GE(g.eval(x.value).val(), 64);
    const KPoly quartic = parse_poly(
        F, "((2)/(t^3))*z^4 + ((2*t^8 + t^7 + t^6 + 2*t^3 + 1)/(t^9 + t^8 + t^6))*z^3 + "
           "((2*t^9 + 2*t^8 + 2*t^7 + t^5 + 2*t^4 + t^3 + t + 2)/(t^8 + 2*t^7 + 2*t^6 + 2*t^5 + t^4 + t^3))*z^2 + "
           "((t^10 + t^8 + 2*t^7 + 2*t^3 + t^2 + 1)/(t^9 + 2*t^8 + 2*t^7 + t^6 + 2*t^5 + 2*t^4 + t^3 + 2*t^2 + 2*t))*z + "
           "((t^4 + t^3 + t + 1)/(t^6 + t^5 + 2*t^2 + 2))");
    const auto u = k_rational_roots(quartic);
    EXPECT_EQ(static_cast<int>(u.size()), squarefree_part(quartic).degree());
    for (const auto& x : u) EXPECT_GE(quartic.eval(x.value).val(), 32);
    // Cluster of three roots with a high-valuation leading coefficient.
    const KElem t = KElem::uniformizer_power(F, 1);
    const KElem one = KElem::one(F);
    const KPoly h = KPoly::constant(t.pow(9)) * lin(one) * lin(one + t.pow(3)) * lin(one + t.pow(3) + t.pow(5));
    const auto s = k_rational_roots(h);
    ASSERT_EQ(s.size(), 3U);
    for (const auto& x : s) EXPECT_TRUE(x.exact());
}
