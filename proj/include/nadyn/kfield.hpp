#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "nadyn/fp_poly.hpp"
#include "nadyn/residue_field.hpp"

namespace nadyn {

/// Valuations are plain integers; kInfinity stands for v(0).
inline constexpr long kInfinity = std::numeric_limits<long>::max();

inline long val_add(long a, long b) {
    return (a == kInfinity || b == kInfinity) ? kInfinity : a + b;
}

enum class FieldKind { PadicRationals, LaurentSeries };

/// The base field K: Q_p (uniformizer p) or F_p((t)) (uniformizer t).
/// The value group is Z with v(uniformizer) = 1.
struct FieldSpec {
    FieldKind kind = FieldKind::PadicRationals;
    std::uint32_t p = 2;

    static FieldSpec padic(std::uint32_t p);
    static FieldSpec laurent(std::uint32_t p);
    /// "Qp:3" or "Fpt:5".
    static FieldSpec parse(const std::string& text);

    std::string to_string() const;
    std::string uniformizer_symbol() const { return kind == FieldKind::PadicRationals ? "p" : "t"; }
    std::uint32_t residue_char() const { return p; }
    bool operator==(const FieldSpec&) const = default;
};

/// Truncated pi-adic expansion: x = sum digits[i] * pi^(start + i) mod pi^precision.
struct Expansion {
    long start = 0;
    long precision = 0;
    std::vector<std::uint64_t> digits;
};

/// Element of K. The kernel is exact (a rational number for Q_p, a rational
/// function in t for F_p((t))). An element may carry an absolute precision
/// N, meaning only its class modulo pi^N is meaningful; arithmetic tracks
/// that precision and keeps the kernel reduced modulo pi^N.
class KElem {
public:
    KElem() = default;

    static KElem zero(const FieldSpec& f);
    static KElem one(const FieldSpec& f) { return from_int(f, 1); }
    static KElem from_int(const FieldSpec& f, long n);
    static KElem from_mpz(const FieldSpec& f, const mpz_class& n);
    /// For F_p((t)) the rational is mapped into F_p; p must not divide the denominator.
    static KElem from_rational(const FieldSpec& f, const mpq_class& q);
    static KElem from_ratfunc(const FieldSpec& f, RatFunc r);
    static KElem uniformizer_power(const FieldSpec& f, long k);
    /// Teichmuller-free lift of a prime-field residue: the integer (or constant) in [0, p).
    static KElem lift_residue(const FieldSpec& f, std::uint64_t r) { return from_int(f, static_cast<long>(r)); }

    const FieldSpec& field() const { return field_; }
    bool is_zero() const { return kernel_val_ == kInfinity; }
    bool is_exact() const { return prec_ == kInfinity; }
    /// Absolute precision; kInfinity for exact elements.
    long precision() const { return prec_; }
    /// Exact valuation, or for approximate elements min(v(kernel), precision).
    long val() const { return kernel_val_ < prec_ ? kernel_val_ : prec_; }
    /// True when val() is the true valuation of every element in the class.
    bool valuation_certified() const { return kernel_val_ < prec_ || is_exact(); }

    /// Residue in F_p.
    std::uint64_t residue() const;
    ResidueElem residue(const ResidueField& k) const;
    Expansion expand(long n) const;

    /// Same kernel, flagged exact.
    KElem as_exact() const;
    /// Reduce modulo pi^n and flag approximate with precision min(n, precision()).
    KElem with_precision(long n) const;

    KElem operator+(const KElem& o) const;
    KElem operator-(const KElem& o) const;
    KElem operator*(const KElem& o) const;
    KElem operator/(const KElem& o) const;
    KElem operator-() const;
    KElem& operator+=(const KElem& o) { return *this = *this + o; }
    KElem& operator-=(const KElem& o) { return *this = *this - o; }
    KElem& operator*=(const KElem& o) { return *this = *this * o; }
    KElem pow(long e) const;

    /// Kernel and precision equality.
    bool operator==(const KElem& o) const;

    const mpq_class* rational() const { return std::get_if<mpq_class>(&kernel_); }
    const RatFunc* ratfunc() const { return std::get_if<RatFunc>(&kernel_); }
    std::string kernel_string() const;

private:
    using Kernel = std::variant<mpq_class, RatFunc>;
    KElem(FieldSpec f, Kernel k, long prec);
    void require_same_field(const KElem& o) const;
    static long kernel_valuation(const FieldSpec& f, const Kernel& k);
    static Kernel reduce_kernel(const FieldSpec& f, const Kernel& k, long kval, long n);

    FieldSpec field_;
    Kernel kernel_ = mpq_class(0);
    long kernel_val_ = kInfinity;
    long prec_ = kInfinity;
};

/// p-adic valuation of a nonzero integer.
long padic_val(const mpz_class& n, std::uint32_t p);

} // namespace nadyn
