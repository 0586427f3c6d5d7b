#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nadyn/kfield.hpp"
#include "nadyn/residue_field.hpp"

namespace nadyn {

/// Degree cap for every root-finding operation on K-polynomials.
inline constexpr int kMaxRootDegree = 20;

/// Univariate polynomial over K, coefficients low degree first, trimmed so
/// the leading coefficient is nonzero.
class KPoly {
public:
    KPoly() = default;
    explicit KPoly(const FieldSpec& f) : field_(f) {}
    KPoly(const FieldSpec& f, std::vector<KElem> coeffs);

    static KPoly constant(const KElem& c);
    static KPoly monomial(const KElem& c, int k);
    /// The identity polynomial z.
    static KPoly variable(const FieldSpec& f);
    /// lead * prod (z - r).
    static KPoly from_roots(const KElem& lead, const std::vector<KElem>& roots);

    const FieldSpec& field() const { return field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    KElem coeff(int i) const;
    const std::vector<KElem>& coeffs() const { return c_; }
    const KElem& lead() const { return c_.back(); }
    bool is_exact() const;
    /// min_i v(c_i); kInfinity for the zero polynomial.
    long min_valuation() const;

    KPoly operator+(const KPoly& o) const;
    KPoly operator-(const KPoly& o) const;
    KPoly operator-() const;
    KPoly operator*(const KPoly& o) const;
    KPoly scaled(const KElem& c) const;
    std::pair<KPoly, KPoly> divmod(const KPoly& d) const;
    /// Quotient of an exact division; throws InternalInconsistency on a remainder.
    KPoly exact_div(const KPoly& d) const;
    KPoly derivative() const;
    KPoly monic() const { return scaled(KElem::one(field_) / lead()); }

    KElem eval(const KElem& x) const;
    /// f(g(z)).
    KPoly compose(const KPoly& g) const;
    /// f(a z + b).
    KPoly substitute_affine(const KElem& a, const KElem& b) const;

    bool operator==(const KPoly& o) const { return field_ == o.field_ && c_ == o.c_; }

    /// Re-parseable text form, highest degree first.
    std::string to_string(char var = 'z') const;

private:
    void trim();

    FieldSpec field_;
    std::vector<KElem> c_;
};

/// Monic gcd over the exact kernel field.
KPoly gcd(KPoly a, KPoly b);
/// Resultant by the Euclidean remainder sequence.
KElem resultant(const KPoly& f, const KPoly& g);

/// Polynomial over a finite field F_{p^m}.
class ResPoly {
public:
    ResPoly() = default;
    explicit ResPoly(ResidueFieldPtr k) : k_(std::move(k)) {}
    ResPoly(ResidueFieldPtr k, std::vector<ResidueElem> coeffs);

    const ResidueFieldPtr& field() const { return k_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    ResidueElem coeff(int i) const { return i >= 0 && i <= degree() ? c_[static_cast<std::size_t>(i)] : ResidueElem{}; }
    const std::vector<ResidueElem>& coeffs() const { return c_; }
    ResidueElem lead() const { return c_.back(); }

    ResPoly operator+(const ResPoly& o) const;
    ResPoly operator-(const ResPoly& o) const;
    ResPoly operator*(const ResPoly& o) const;
    ResPoly scaled(ResidueElem c) const;
    std::pair<ResPoly, ResPoly> divmod(const ResPoly& d) const;
    ResPoly derivative() const;
    ResPoly monic() const;
    ResidueElem eval(ResidueElem x) const;

    bool operator==(const ResPoly& o) const { return c_ == o.c_; }
    std::string to_string(char var = 'z') const;

private:
    void trim();

    ResidueFieldPtr k_;
    std::vector<ResidueElem> c_;
};

ResPoly gcd(ResPoly a, ResPoly b);

struct ContentNormalized {
    KPoly poly;  // pi^(-shift) * f: integral with a unit coefficient
    long shift = 0;
};

ContentNormalized normalize_content(const KPoly& f);

/// Coefficientwise residue into k (F_p when k is null).
ResPoly reduce_poly(const KPoly& f, ResidueFieldPtr k = nullptr);

struct ResidueRoot {
    ResidueElem root;
    int multiplicity = 0;
};

/// All roots of f in its coefficient field with multiplicities, sorted by code.
std::vector<ResidueRoot> residue_roots(const ResPoly& f);

/// For a cubic u (z - a)^3 returns a, via the closed forms (p != 3: -a1/(3u);
/// p = 3: the p-th root of -a3/u); nullopt when f is not a cube.
std::optional<ResidueElem> cubic_triple_root(const ResPoly& f);

/// Product of the distinct irreducible factors of f that are separable over
/// the kernel field. In characteristic 0 this is f / gcd(f, f'). In
/// characteristic p the p-power and inseparable parts are peeled off with
/// p-th roots, so every K-rational root of f survives as a simple root.
KPoly squarefree_part(const KPoly& f);

} // namespace nadyn
