#include <gtest/gtest.h>

#include <map>
#include <random>
#include <string>

#include "nadyn/error.hpp"
#include "nadyn/respoly.hpp"

using namespace nadyn;

namespace {

const FieldSpec Q3 = FieldSpec::padic(3);
const FieldSpec F3t = FieldSpec::laurent(3);

KElem q(const FieldSpec& f, long a, long b = 1) { return KElem::from_rational(f, mpq_class(a, b)); }

KPoly poly(const FieldSpec& f, std::initializer_list<long> c) {
    std::vector<KElem> v;
    for (long x : c) v.push_back(KElem::from_int(f, x));
    return {f, v};
}

ResPoly rpoly(std::uint32_t p, std::initializer_list<std::uint64_t> c) {
    std::vector<ResidueElem> v;
    for (auto x : c) v.push_back(ResidueElem{x});
    return {residue_field(p), v};
}

} // namespace

TEST(KPoly, TrimAndText) {
    const KPoly f(Q3, {q(Q3, 0), q(Q3, 1), q(Q3, 0), q(Q3, 1), q(Q3, 0)});
    EXPECT_EQ(f.degree(), 3);
    EXPECT_EQ(f.to_string(), "z^3 + z");
    EXPECT_EQ(KPoly(Q3, {q(Q3, -2, 3), q(Q3, 5)}).to_string(), "5*z + (-2/3)");
}

TEST(KPoly, DivmodComposeResultant) {
    const KPoly f = poly(Q3, {-1, 0, 0, 1});
    const KPoly g = poly(Q3, {-1, 1});
    auto [qt, r] = f.divmod(g);
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(qt, poly(Q3, {1, 1, 1}));
    EXPECT_EQ(f.compose(g), poly(Q3, {-2, 3, -3, 1}));
    EXPECT_EQ(f.substitute_affine(q(Q3, 2), q(Q3, 0)), poly(Q3, {-1, 0, 0, 8}));
    // res(z^2 - 1, z - 2) = 2^2 - 1
    EXPECT_EQ(resultant(poly(Q3, {-1, 0, 1}), poly(Q3, {-2, 1})), q(Q3, 3));
    EXPECT_EQ(resultant(poly(Q3, {-1, 0, 1}), poly(Q3, {-1, 1})), q(Q3, 0));
    EXPECT_EQ(gcd(poly(Q3, {0, -1, 1}), poly(Q3, {-1, 0, 1})), poly(Q3, {-1, 1}));
}

TEST(NormalizeContent, Examples) {
    auto a = normalize_content(poly(Q3, {9, 0, 0, 3}));
    EXPECT_EQ(a.shift, 1);
    EXPECT_EQ(a.poly, poly(Q3, {3, 0, 0, 1}));
    auto b = normalize_content(poly(Q3, {0, 1, 0, 1}));
    EXPECT_EQ(b.shift, 0);
    auto c = normalize_content(KPoly(Q3, {q(Q3, 0), q(Q3, 1, 3), q(Q3, 1, 9)}));
    EXPECT_EQ(c.shift, -2);
    EXPECT_EQ(c.poly, poly(Q3, {0, 3, 1}));
}

TEST(ReducePoly, Examples) {
    EXPECT_EQ(reduce_poly(poly(Q3, {9, 3, 0, 1})), rpoly(3, {0, 0, 0, 1}));
    EXPECT_EQ(reduce_poly(poly(Q3, {0, 0, 0, 5})), rpoly(3, {0, 0, 0, 2}));
    for (long p : {2L, 5L, 7L}) {
        const FieldSpec f = FieldSpec::padic(static_cast<std::uint32_t>(p));
        EXPECT_EQ(reduce_poly(poly(f, {p, -p, 0, 1})), rpoly(static_cast<std::uint32_t>(p), {0, 0, 0, 1}));
    }
    try {
        (void)reduce_poly(KPoly(Q3, {q(Q3, 1, 3)}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NegativeValuation);
    }
}

TEST(ResidueRoots, Examples) {
    auto r = residue_roots(rpoly(3, {0, 0, 0, 1}));
    ASSERT_EQ(r.size(), 1U);
    EXPECT_EQ(r[0].multiplicity, 3);
    auto s = residue_roots(rpoly(3, {0, 1, 1}));
    ASSERT_EQ(s.size(), 2U);
    EXPECT_EQ(s[0].root.code, 0U);
    EXPECT_EQ(s[1].root.code, 2U);
    auto t = cubic_triple_root(rpoly(3, {2, 0, 0, 1}));
    ASSERT_TRUE(t.has_value());
    EXPECT_EQ(t->code, 1U);
    EXPECT_FALSE(cubic_triple_root(rpoly(3, {1, 1, 0, 1})).has_value());
    EXPECT_FALSE(cubic_triple_root(rpoly(5, {1, 3, 2, 1})).has_value());
    auto w = cubic_triple_root(rpoly(5, {3, 2, 1, 1}));  // (z+2)^3 mod 5 = z^3 + z^2 + 2z + 3
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->code, 3U);
}

TEST(ResidueRoots, MatchesBruteForceOnSplitProducts) {
    std::mt19937_64 rng(7);
    for (std::uint32_t p : {2U, 3U, 5U, 7U, 65537U, 1000003U}) {
        auto k = residue_field(p);
        std::uniform_int_distribution<std::uint64_t> d(0, p - 1);
        for (int trial = 0; trial < 20; ++trial) {
            ResPoly f(k, {k->from_int(static_cast<std::int64_t>(1 + d(rng) % (p - 1)))});
            std::map<std::uint64_t, int> want;
            const int deg = 1 + static_cast<int>(rng() % 6);
            for (int i = 0; i < deg; ++i) {
                const std::uint64_t r = d(rng);
                f = f * ResPoly(k, {k->neg(ResidueElem{r}), k->one()});
                ++want[r];
            }
            std::map<std::uint64_t, int> got;
            int total = 0;
            for (const auto& rr : residue_roots(f)) {
                got[rr.root.code] = rr.multiplicity;
                total += rr.multiplicity;
            }
            ASSERT_EQ(got, want);
            ASSERT_EQ(total, deg);
        }
    }
}

TEST(ResidueRoots, ExtensionField) {
    auto k = residue_field(3, 2);
    // z^2 + 1 is irreducible over F_3 but splits over F_9.
    const ResPoly f(k, {k->one(), k->zero(), k->one()});
    EXPECT_EQ(residue_roots(f).size(), 2U);
    EXPECT_TRUE(residue_roots(rpoly(3, {1, 0, 1})).empty());
}

TEST(ReducePoly, MultiplicativeOnIntegral) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> c(-30, 30);
    for (int i = 0; i < 200; ++i) {
        const KPoly f = poly(Q3, {c(rng), c(rng), c(rng), 1});
        const KPoly g = poly(Q3, {c(rng), c(rng), 2});
        ASSERT_EQ(reduce_poly(f * g), reduce_poly(f) * reduce_poly(g));
    }
}

TEST(SquarefreePart, Examples) {
    const KPoly z = KPoly::variable(Q3);
    const KPoly one = KPoly::constant(KElem::one(Q3));
    const KPoly f = (z - one) * (z - one) * z;
    EXPECT_EQ(squarefree_part(f), z * (z - one));
    const KPoly g = poly(Q3, {0, 1, 0, 1});
    EXPECT_EQ(squarefree_part(g), g);
    // phi(phi(z)) - z for phi = z^2 (z - 1)^2 / 9 + z. The fixed points 0
    // and 1 are double roots of phi(z) - z, so they stay double here.
    const KPoly phi = (z * z * (z - one) * (z - one)).scaled(q(Q3, 1, 9)) + z;
    const KPoly h = phi.compose(phi) - z;
    const KPoly s = squarefree_part(h);
    EXPECT_EQ(s.degree(), 14);
    EXPECT_EQ(s, h.exact_div(z * (z - one)).monic());
    EXPECT_EQ(gcd(s, s.derivative()).degree(), 0);
    EXPECT_TRUE(h.divmod(s).second.is_zero());
}

TEST(SquarefreePart, RejectsApproximate) {
    const KPoly f(Q3, {q(Q3, 1).with_precision(10), q(Q3, 1)});
    try {
        (void)squarefree_part(f);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ApproximateInput);
    }
}

TEST(SquarefreePart, CharacteristicP) {
    const KPoly z = KPoly::variable(F3t);
    const KElem t = KElem::uniformizer_power(F3t, 1);
    const KPoly one = KPoly::constant(KElem::one(F3t));
    // z^3 - t^3 = (z - t)^3: inseparable-looking but t is a root.
    const KPoly f = z * z * z - KPoly::constant(t.pow(3));
    EXPECT_EQ(squarefree_part(f), z - KPoly::constant(t));
    // z^3 - t has no root in K and no separable factor.
    EXPECT_EQ(squarefree_part(z * z * z - KPoly::constant(t)).degree(), 0);
    // (z - 1)^2 (z^3 - t^3) (z^3 - t)
    const KPoly g = (z - one) * (z - one) * f * (z * z * z - KPoly::constant(t));
    EXPECT_EQ(squarefree_part(g), ((z - one) * (z - KPoly::constant(t))).monic());
}
