#pragma once

#include <gmpxx.h>

#include <vector>

#include "nadyn/kfield.hpp"
#include "nadyn/respoly.hpp"

namespace nadyn {

struct PolygonSegment {
    mpq_class slope;  // rise over run, left to right
    int length = 0;
};

/// Lower convex hull of {(i, v(c_i)) : c_i != 0}.
struct NewtonPolygon {
    std::vector<std::pair<int, long>> vertices;
    std::vector<PolygonSegment> segments;
    /// Multiplicity of 0 as a root.
    int zero_order = 0;

    /// Valuations of the nonzero roots in C_v (negated slopes), each with
    /// its multiplicity, in increasing slope order.
    std::vector<std::pair<mpq_class, int>> root_valuations() const;
};

/// Coefficient valuations must be certified.
NewtonPolygon newton_polygon(const KPoly& f);

/// Working precision for root finding, in valuation units.
struct PrecisionOptions {
    long precision = 64;
    long max_precision = 1024;
};

/// A root of f in K. Exact roots carry precision kInfinity. Otherwise the
/// true root agrees with value modulo pi^precision and v(f(value)) >= residual.
struct HenselRoot {
    KElem value;
    long precision = kInfinity;
    long residual = kInfinity;

    bool exact() const { return precision == kInfinity; }
};

/// Newton iteration from a0 until v(f(alpha)) >= target. Requires integral
/// coefficients, integral a0 and v(f(a0)) > 2 v(f'(a0)).
HenselRoot hensel_lift(const KPoly& f, const KElem& a0, long target, const PrecisionOptions& opts = {});

/// Every root of f lying in K, each certified to working precision. Roots
/// that are rational numbers (or rational functions of t) are recognised and
/// returned exactly. Sorted by valuation, then by expansion digits.
std::vector<HenselRoot> k_rational_roots(const KPoly& f, const PrecisionOptions& opts = {});
/// Roots of f, with residuals certified against ambient, a multiple of f.
std::vector<HenselRoot> k_rational_roots(const KPoly& f, const KPoly& ambient, const PrecisionOptions& opts = {});

/// Total order used for deterministic root listings.
bool root_order_less(const KElem& a, const KElem& b, long digits = 64);

} // namespace nadyn
