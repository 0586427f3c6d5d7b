#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace nadyn {

/// Element of a finite field F_{p^m}, encoded as the base-p integer of its
/// coefficient vector in the power basis of the defining polynomial.
struct ResidueElem {
    std::uint64_t code = 0;
    auto operator<=>(const ResidueElem&) const = default;
};

/// F_{p^m} with m <= 6. The prime field (m = 1) uses direct modular
/// arithmetic; extensions use exp/log tables over a primitive modulus.
class ResidueField {
public:
    static constexpr unsigned kMaxDegree = 6;
    static constexpr std::uint64_t kMaxTableSize = 1U << 22;

    explicit ResidueField(std::uint32_t p, unsigned m = 1);

    std::uint32_t characteristic() const { return p_; }
    unsigned degree() const { return m_; }
    std::uint64_t size() const { return q_; }
    /// Monic defining polynomial, low degree first (size m + 1). For m = 1
    /// this is x.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    ResidueElem zero() const { return {0}; }
    ResidueElem one() const { return {1}; }
    ResidueElem from_int(std::int64_t a) const;
    ResidueElem from_digits(const std::vector<std::uint64_t>& digits) const;
    std::vector<std::uint64_t> digits(ResidueElem a) const;
    /// The class of x in F_p[x]/(modulus); equals 0 for m = 1.
    ResidueElem generator() const;
    bool in_prime_field(ResidueElem a) const { return a.code < p_; }

    ResidueElem add(ResidueElem a, ResidueElem b) const;
    ResidueElem sub(ResidueElem a, ResidueElem b) const;
    ResidueElem neg(ResidueElem a) const;
    ResidueElem mul(ResidueElem a, ResidueElem b) const;
    ResidueElem inv(ResidueElem a) const;
    ResidueElem div(ResidueElem a, ResidueElem b) const { return mul(a, inv(b)); }
    ResidueElem pow(ResidueElem a, std::uint64_t e) const;
    /// Unique p-th root (Frobenius is bijective on a finite field).
    ResidueElem pth_root(ResidueElem a) const;

    std::string to_string(ResidueElem a) const;

private:
    void build_tables();

    std::uint32_t p_;
    unsigned m_;
    std::uint64_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> exp_; // exp_[i] = code of g^i, i < q - 1
    std::vector<std::uint32_t> log_; // log_[code], code != 0
};

using ResidueFieldPtr = std::shared_ptr<const ResidueField>;

/// Cached F_{p^m} instances (tables are built once per (p, m)).
ResidueFieldPtr residue_field(std::uint32_t p, unsigned m = 1);

} // namespace nadyn
