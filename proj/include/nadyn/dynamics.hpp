#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nadyn/kfield.hpp"
#include "nadyn/newton.hpp"
#include "nadyn/respoly.hpp"

namespace nadyn {

/// A polynomial self-map of P^1 over K of degree at least 2.
class PolyMap {
public:
    PolyMap() = default;
    explicit PolyMap(KPoly phi);

    const KPoly& poly() const { return phi_; }
    const FieldSpec& field() const { return phi_.field(); }
    int degree() const { return phi_.degree(); }
    KElem operator()(const KElem& x) const { return phi_.eval(x); }
    KElem derivative_at(const KElem& x) const { return dphi_.eval(x); }
    /// The q-th iterate as a polynomial.
    KPoly iterate(int q) const;
    std::string to_string() const { return phi_.to_string(); }

    bool operator==(const PolyMap& o) const { return phi_ == o.phi_; }

private:
    KPoly phi_;
    KPoly dphi_;
};

/// z -> a z + b.
struct AffineConj {
    KElem a;
    KElem b;

    static AffineConj identity(const FieldSpec& f) { return {KElem::one(f), KElem::zero(f)}; }
    static AffineConj translation(const KElem& b) { return {KElem::one(b.field()), b}; }
    static AffineConj dilation(const KElem& a) { return {a, KElem::zero(a.field())}; }

    KElem operator()(const KElem& z) const { return a * z + b; }
    AffineConj inverse() const;
    /// The map z -> next(this(z)).
    AffineConj then(const AffineConj& next) const;
};

/// f o phi o f^-1, computed exactly.
PolyMap conjugate(const PolyMap& phi, const AffineConj& f);

enum class PointClass { Repelling, NonRepelling };

std::string to_string(PointClass c);

/// One K-rational cycle of exact period q (a fixed point when q = 1).
struct FixedPointReport {
    /// Orbit in iteration order; cycle[0] is the first in root order.
    std::vector<HenselRoot> cycle;
    int period = 1;
    KElem multiplier;
    /// Exact when valuation_exact, otherwise a certified lower bound >= 0.
    long multiplier_valuation = 0;
    bool valuation_exact = true;
    bool certified = true;
    PointClass cls = PointClass::NonRepelling;
    /// Certified lower bound on v(phi^q(x) - x) at cycle[0].
    long residual = kInfinity;

    const HenselRoot& point() const { return cycle.front(); }
    bool repelling() const { return cls == PointClass::Repelling; }
};

/// phi'(rho); precision is tracked when rho is approximate.
KElem multiplier(const PolyMap& phi, const KElem& rho);
/// Chain rule product over a cycle.
KElem cycle_multiplier(const PolyMap& phi, const std::vector<KElem>& cycle);
/// Valuation of a multiplier, or UncertifiedValuation when the tracked
/// precision does not pin it down.
long certified_valuation(const KElem& m);

std::vector<FixedPointReport> fixed_points(const PolyMap& phi, const PrecisionOptions& opts = {});
std::vector<FixedPointReport> periodic_points(const PolyMap& phi, int q, const PrecisionOptions& opts = {});
std::optional<FixedPointReport> find_repelling_periodic(const PolyMap& phi, int q_max,
                                                        const PrecisionOptions& opts = {});

} // namespace nadyn
