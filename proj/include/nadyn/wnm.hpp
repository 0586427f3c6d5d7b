#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nadyn/dynamics.hpp"

namespace nadyn {

enum class CaseTag {
    GoodReductionEven,
    Case1,
    Case2,
    /// f~ is an irreducible cubic over the residue field: its only zero is a
    /// closed point of degree 3, which no K-point reduces to.
    ResidueIrreducible,
};

enum class ReductionType { GoodReduction, TwoComponent, OneComponentPunctured, NoWNM };

enum class Tristate { False, True, Unknown };

std::string to_string(CaseTag t);
std::string to_string(ReductionType t);
std::string to_string(Tristate t);

/// phi = pi^-n (u z^3 + a1 z^2 + a2 z + a3); n_i = v(a_i*) for
/// f* = f - pi^n z, and n3 = 3l + r.
struct IrreducibleData {
    KElem u;
    long n = 0;
    long n1 = 0, n2 = 0, n3 = 0;
    long l = 0;
    long r = 0;
    CaseTag tag = CaseTag::GoodReductionEven;
};

/// phi = lambda z + a2 z^2 + a3 z^3 with a K-rational fixed point at 0.
struct ReducibleData {
    KElem lambda;
    /// Exact when lambda's valuation is certified, otherwise a lower bound.
    long lambda_valuation = 0;
    bool repelling_at_zero = false;
    /// Valuations of a2, a3 in the final coordinates; n2 is kInfinity when a2 = 0.
    long n2 = 0, n3 = 0;
    /// v(a3)/2 - v(a2); meaningless when a2 = 0 (nu = -inf).
    mpq_class nu = 0;
    bool nu_is_neg_infinite = false;
    std::optional<KElem> u2, u3;

    bool nu_positive() const { return !nu_is_neg_infinite && nu > 0; }
};

struct NormalForm {
    std::variant<IrreducibleData, ReducibleData> data;
    /// Conjugations applied in order; their composite carries the input map
    /// to normalized.
    std::vector<AffineConj> conj_trace;
    PolyMap normalized;

    bool irreducible() const { return std::holds_alternative<IrreducibleData>(data); }
    const IrreducibleData& irr() const { return std::get<IrreducibleData>(data); }
    const ReducibleData& red() const { return std::get<ReducibleData>(data); }
    AffineConj total_conjugation() const;
};

/// Where the reduction of a component goes.
struct ComponentImage {
    enum class Kind { Component, Point };
    Kind kind = Kind::Component;
    std::string component;
    /// Residue coordinate of the image point on component ("inf" for infinity).
    std::string point;
    /// Reduced map text when the component maps onto a component.
    std::string map;

    bool operator==(const ComponentImage&) const = default;
};

struct ModelComponent {
    std::string id;
    std::string coordinate;
    std::vector<std::string> removed_points;
    ComponentImage image;

    bool operator==(const ModelComponent&) const = default;
};

struct BlowupEvent {
    std::string component;
    std::string center;
    std::string substitution;
    std::string new_component;

    bool operator==(const BlowupEvent&) const = default;
};

struct Intersection {
    std::string first, first_point;
    std::string second, second_point;

    bool operator==(const Intersection&) const = default;
};

struct ModelTrace {
    std::vector<BlowupEvent> blowups;
    std::vector<ModelComponent> components;
    std::vector<Intersection> intersections;

    bool operator==(const ModelTrace&) const = default;
};

struct Verdict {
    bool wnm_exists = false;
    ReductionType reduction_type = ReductionType::NoWNM;
    Tristate potential_good_reduction = Tristate::Unknown;
    std::optional<FixedPointReport> repelling_witness;
    std::optional<ModelTrace> model;
    NormalForm normal_form;
    std::vector<FixedPointReport> fixed_points;
    bool julia_nonempty = true;
};

NormalForm normal_form(const PolyMap& phi, const PrecisionOptions& opts = {});
ModelTrace build_model(const NormalForm& nf);
Verdict decide(const PolyMap& phi, const PrecisionOptions& opts = {});
std::pair<ReductionType, Tristate> reduction_type(const PolyMap& phi, const PrecisionOptions& opts = {});
/// Runs both decision paths and reports whether they agree.
bool cross_check(const PolyMap& phi, const PrecisionOptions& opts = {});

} // namespace nadyn
