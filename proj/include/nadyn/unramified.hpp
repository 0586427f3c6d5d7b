#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "nadyn/kfield.hpp"
#include "nadyn/respoly.hpp"
#include "nadyn/residue_field.hpp"

namespace nadyn {

/// The unramified extension of Q_p of degree m, generated by a root x of the
/// integer lift of the residue field's defining polynomial.
class UnramifiedField {
public:
    UnramifiedField(std::uint32_t p, unsigned m);

    std::uint32_t p() const { return p_; }
    unsigned degree() const { return m_; }
    const ResidueFieldPtr& residue() const { return k_; }
    /// Monic, low degree first, size m + 1.
    const std::vector<mpz_class>& modulus() const { return modulus_; }
    std::string name() const;

private:
    std::uint32_t p_;
    unsigned m_;
    ResidueFieldPtr k_;
    std::vector<mpz_class> modulus_;
};

using UnramifiedFieldPtr = std::shared_ptr<const UnramifiedField>;

UnramifiedFieldPtr unramified_field(std::uint32_t p, unsigned m);

/// p^v * u with u a unit known modulo p^rel. A zero carries only an
/// absolute precision (infinite for the exact zero).
class UElem {
public:
    UElem() = default;

    static UElem zero(UnramifiedFieldPtr k, long abs_prec = kInfinity);
    static UElem from_rational(UnramifiedFieldPtr k, const mpq_class& q, long rel);
    static UElem from_kelem(UnramifiedFieldPtr k, const KElem& x, long rel);
    static UElem lift(UnramifiedFieldPtr k, ResidueElem r, long rel);
    static UElem uniformizer_power(UnramifiedFieldPtr k, long e, long rel);
    /// p^v * (sum of digits[i] x^i); digits taken modulo p^rel.
    static UElem from_digits(UnramifiedFieldPtr k, const std::vector<mpz_class>& digits, long v, long rel);

    const UnramifiedFieldPtr& field() const { return k_; }
    bool is_zero() const { return v_ == kInfinity; }
    /// The valuation when nonzero, else the absolute precision.
    long val() const { return is_zero() ? abs_ : v_; }
    bool valuation_certified() const { return !is_zero() || abs_ == kInfinity; }
    long abs_precision() const { return abs_; }
    long rel_precision() const { return is_zero() ? 0 : abs_ - v_; }
    const std::vector<mpz_class>& unit_digits() const { return unit_; }

    UElem operator-() const;
    UElem operator+(const UElem& o) const;
    UElem operator-(const UElem& o) const;
    UElem operator*(const UElem& o) const;
    UElem operator/(const UElem& o) const;
    UElem inverse() const;
    UElem pow(unsigned long e) const;
    UElem with_rel_precision(long rel) const;
    /// Treats the known digits as exact up to abs_prec (for self-correcting iterations).
    UElem padded_to(long abs_prec) const;

    /// Requires val() >= 0.
    ResidueElem residue() const;
    std::string to_string() const;

private:
    static UElem normalize(UnramifiedFieldPtr k, std::vector<mpz_class> c, long v, long abs_prec);
    std::vector<mpz_class> scaled_digits(long to_v) const;

    UnramifiedFieldPtr k_;
    long v_ = kInfinity;
    long abs_ = kInfinity;
    std::vector<mpz_class> unit_;
};

/// Coefficients low degree first.
struct UPoly {
    std::vector<UElem> c;

    static UPoly from_kpoly(UnramifiedFieldPtr k, const KPoly& f, long rel);
    UElem operator()(const UElem& x) const;
    UPoly derivative() const;
};

} // namespace nadyn
