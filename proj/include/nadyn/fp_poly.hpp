#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nadyn {

// Arithmetic in F_p for word-sized primes.
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p);
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p);
bool is_prime(std::uint64_t n);

/// Dense polynomial in t over F_p, coefficients low degree first.
class FpPoly {
public:
    FpPoly() = default;
    explicit FpPoly(std::uint32_t p) : p_(p) {}
    FpPoly(std::uint32_t p, std::vector<std::uint64_t> coeffs);

    static FpPoly constant(std::uint32_t p, std::int64_t c);
    static FpPoly monomial(std::uint32_t p, std::uint64_t c, std::size_t k);

    std::uint32_t prime() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    std::uint64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    std::uint64_t lead() const { return c_.empty() ? 0 : c_.back(); }
    /// t-adic order; meaningless for zero.
    long order() const;

    FpPoly operator+(const FpPoly& o) const;
    FpPoly operator-(const FpPoly& o) const;
    FpPoly operator-() const;
    FpPoly operator*(const FpPoly& o) const;
    FpPoly scaled(std::uint64_t c) const;
    FpPoly shifted(long k) const; // multiply by t^k; k < 0 drops low terms
    FpPoly truncated(std::size_t n) const; // mod t^n
    FpPoly derivative() const;
    FpPoly monic() const;

    /// Euclidean division; divisor must be nonzero.
    std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const;
    bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

    /// Power series inverse modulo t^n; requires nonzero constant term.
    FpPoly series_inverse(std::size_t n) const;

    /// True iff the polynomial lies in F_p[t^p].
    bool is_pth_power() const;
    /// Inverse Frobenius; requires is_pth_power().
    FpPoly pth_root() const;

    std::string to_string(char var = 't') const;

private:
    void trim();

    std::uint32_t p_ = 2;
    std::vector<std::uint64_t> c_;
};

FpPoly gcd(FpPoly a, FpPoly b);

/// Normalized element of F_p(t): gcd(num, den) = 1, den monic.
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(std::uint32_t p) : num_(p), den_(FpPoly::constant(p, 1)) {}
    RatFunc(FpPoly num, FpPoly den);

    std::uint32_t prime() const { return num_.prime(); }
    const FpPoly& num() const { return num_; }
    const FpPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    /// t-adic valuation; requires nonzero.
    long valuation() const { return num_.order() - den_.order(); }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

    /// d/dt applied to the rational function.
    RatFunc derivative() const;
    bool is_pth_power() const { return num_.is_pth_power() && den_.is_pth_power(); }
    RatFunc pth_root() const { return {num_.pth_root(), den_.pth_root()}; }

    std::string to_string() const;

private:
    FpPoly num_;
    FpPoly den_;
};

} // namespace nadyn
