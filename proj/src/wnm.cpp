#include "nadyn/wnm.hpp"

#include "nadyn/error.hpp"

#include <algorithm>

namespace nadyn {

std::string to_string(CaseTag t) {
    switch (t) {
    case CaseTag::GoodReductionEven: return "GoodReductionEven";
    case CaseTag::Case1: return "Case1";
    case CaseTag::Case2: return "Case2";
    case CaseTag::ResidueIrreducible: return "ResidueIrreducible";
    }
    return "?";
}

std::string to_string(ReductionType t) {
    switch (t) {
    case ReductionType::GoodReduction: return "GoodReduction";
    case ReductionType::TwoComponent: return "TwoComponent";
    case ReductionType::OneComponentPunctured: return "OneComponentPunctured";
    case ReductionType::NoWNM: return "NoWNM";
    }
    return "?";
}

std::string to_string(Tristate t) {
    switch (t) {
    case Tristate::False: return "false";
    case Tristate::True: return "true";
    case Tristate::Unknown: return "unknown";
    }
    return "?";
}

AffineConj NormalForm::total_conjugation() const {
    AffineConj t = AffineConj::identity(normalized.field());
    for (const auto& c : conj_trace) t = t.then(c);
    return t;
}

namespace {

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

KElem pi_pow(const FieldSpec& f, long k) { return KElem::uniformizer_power(f, k); }

[[noreturn]] void inconsistent(const std::string& what) { throw Error(ErrorKind::InternalInconsistency, what); }

class Normalizer {
public:
    explicit Normalizer(const PolyMap& phi) : fs_(phi.field()) { nf_.normalized = phi; }

    void apply(const AffineConj& c) {
        nf_.conj_trace.push_back(c);
        nf_.normalized = conjugate(nf_.normalized, c);
    }

    NormalForm& result() { return nf_; }

    /// pi^n * phi in the current coordinates.
    KPoly scaled(long n) const { return nf_.normalized.poly().scaled(pi_pow(fs_, n)); }

    const FieldSpec& field() const { return fs_; }

private:
    FieldSpec fs_;
    NormalForm nf_;
};

// Proof obligation: this branch is entered only when the root finder
// reports no K-rational fixed point. A simple residue root of f~ would lift
// to one by Hensel, so seeing one here means the two paths disagree.
NormalForm irreducible_form(const PolyMap& phi) {
    Normalizer st(phi);
    const FieldSpec& fs = st.field();
    const KPoly& P = phi.poly();
    const long v3 = P.coeff(3).val();
    long s = ceil_div(v3, 2);
    for (int i = 0; i < 3; ++i)
        if (!P.coeff(i).is_zero()) s = std::max(s, ceil_div(v3 - P.coeff(i).val(), 3 - i));
    if (s != 0) st.apply(AffineConj::dilation(pi_pow(fs, s)));
    long n = 2 * s - v3;
    {
        const KPoly f = st.scaled(n);
        if (f.min_valuation() < 0 || f.coeff(3).val() != 0) inconsistent("content dilation left a non-integral form");
    }

    CaseTag tag = CaseTag::GoodReductionEven;
    for (;;) {
        if (n == 0) {
            tag = CaseTag::GoodReductionEven;
            break;
        }
        const ResPoly fr = reduce_poly(st.scaled(n));
        const auto roots = residue_roots(fr);
        if (roots.empty()) {
            tag = CaseTag::ResidueIrreducible;
            break;
        }
        for (const auto& rr : roots)
            if (rr.multiplicity == 1) inconsistent("residue cubic has a simple root but no fixed point was found");
        const auto alpha = cubic_triple_root(fr);
        if (!alpha) inconsistent("residue cubic is neither irreducible nor a cube");
        if (alpha->code != 0)
            st.apply(AffineConj::translation(-KElem::from_int(fs, static_cast<long>(alpha->code))));
        const KElem a3 = st.scaled(n).coeff(0);
        if (a3.is_zero()) inconsistent("0 became a fixed point of an irreducible form");
        const long n3 = a3.val();
        const long l = n3 / 3, r = n3 % 3;
        if (3 * n >= 6 * l + 2 * r) {
            if (l > 0) st.apply(AffineConj::dilation(pi_pow(fs, -l)));
            n -= 2 * l;
            if (r > 0) {
                tag = CaseTag::Case1;
                break;
            }
            continue;
        }
        const long k = n / 2;
        if (k > 0) st.apply(AffineConj::dilation(pi_pow(fs, -k)));
        n -= 2 * k;
        tag = n == 0 ? CaseTag::GoodReductionEven : CaseTag::Case2;
        break;
    }

    const KPoly f = st.scaled(n);
    if (f.min_valuation() < 0 || f.coeff(3).val() != 0) inconsistent("normal form is not integral with unit lead");
    IrreducibleData d;
    d.u = f.coeff(3);
    d.n = n;
    d.n1 = f.coeff(2).val();
    d.n2 = (f.coeff(1) - pi_pow(fs, n)).val();
    d.n3 = f.coeff(0).val();
    d.tag = tag;
    if (tag == CaseTag::Case1 || tag == CaseTag::Case2) {
        d.l = d.n3 / 3;
        d.r = d.n3 % 3;
        const bool ineq = 3 * d.n2 >= 6 * d.l + 2 * d.r && 3 * d.n1 >= 3 * d.l + d.r;
        const bool shape = tag == CaseTag::Case1 ? (d.l == 0 && d.r > 0 && 3 * d.n >= 2 * d.r)
                                                 : (d.n == 1 && 3 < 6 * d.l + 2 * d.r);
        if (!ineq || !shape) inconsistent("irreducible normal form violates its valuation inequalities");
    }
    NormalForm out = std::move(st.result());
    out.data = d;
    return out;
}

// nullopt when the fixed point is not known precisely enough.
std::optional<NormalForm> reducible_form(const PolyMap& phi, const HenselRoot& rho) {
    const FieldSpec& fs = phi.field();
    const KPoly& P = phi.poly();
    const KElem lambda = phi.derivative_at(rho.value);
    KElem a2 = P.coeff(2) + KElem::from_int(fs, 3) * P.coeff(3) * rho.value;
    const KElem a3 = P.coeff(3);

    NormalForm nf;
    nf.conj_trace.push_back(AffineConj::translation(-rho.value));
    ReducibleData d;
    d.lambda = lambda;
    d.lambda_valuation = lambda.val();
    if (!lambda.valuation_certified() && lambda.val() < 0) return std::nullopt;
    d.repelling_at_zero = lambda.valuation_certified() && lambda.val() < 0;
    if (!a2.is_exact() && !a2.valuation_certified()) {
        // a2 = 0 exactly forces rho = -c2/(3 c3), a rational root, which the
        // root finder returns exactly; an approximate zero needs refinement.
        return std::nullopt;
    }
    if (d.repelling_at_zero) {
        nf.normalized = PolyMap(KPoly(fs, {KElem::zero(fs), lambda, a2, a3}));
        nf.data = d;
        return nf;
    }
    const long n3 = a3.val();
    AffineConj dil = AffineConj::identity(fs);
    if (a2.is_zero()) {
        d.nu_is_neg_infinite = true;
        dil = AffineConj::dilation(pi_pow(fs, floor_div(n3, 2)));
    } else {
        const long n2 = a2.val();
        d.nu = mpq_class(n3, 2) - n2;
        d.nu.canonicalize();
        dil = d.nu > 0 ? AffineConj::dilation(pi_pow(fs, n2)) : AffineConj::dilation(pi_pow(fs, floor_div(n3, 2)));
    }
    if (!(dil.a == KElem::one(fs))) nf.conj_trace.push_back(dil);
    // a z -> conjugate of lambda z + a2 z^2 + a3 z^3: a2 / a, a3 / a^2.
    a2 = a2 / dil.a;
    const KElem b3 = a3 / (dil.a * dil.a);
    nf.normalized = PolyMap(KPoly(fs, {KElem::zero(fs), lambda, a2, b3}));
    d.n2 = a2.is_zero() ? kInfinity : a2.val();
    d.n3 = b3.val();
    if (d.nu_positive()) {
        d.u2 = a2;
        d.u3 = b3 / pi_pow(fs, d.n3);
        if (d.n2 != 0 || mpq_class(d.n3) != 2 * d.nu) inconsistent("reducible dilation missed n2 = 0");
    } else if (d.n3 != 0 && d.n3 != 1) {
        inconsistent("reducible dilation missed n3 in {0, 1}");
    }
    nf.data = d;
    return nf;
}

bool nf_says_wnm(const NormalForm& nf) {
    if (nf.irreducible()) return true;
    const auto& d = nf.red();
    return !d.repelling_at_zero && !d.nu_positive();
}

ReductionType type_of(const NormalForm& nf) {
    if (nf.irreducible()) {
        switch (nf.irr().tag) {
        case CaseTag::GoodReductionEven: return ReductionType::GoodReduction;
        case CaseTag::ResidueIrreducible: return ReductionType::OneComponentPunctured;
        default: return ReductionType::TwoComponent;
        }
    }
    if (!nf_says_wnm(nf)) return ReductionType::NoWNM;
    return nf.red().n3 == 0 ? ReductionType::GoodReduction : ReductionType::TwoComponent;
}

Tristate potential_good(const NormalForm& nf) {
    const ReductionType t = type_of(nf);
    if (t == ReductionType::GoodReduction) return Tristate::True;
    if (!nf.irreducible() && t != ReductionType::NoWNM) return Tristate::True;
    return Tristate::Unknown;
}

struct Attempt {
    std::vector<FixedPointReport> fixed;
    NormalForm nf;
};

Attempt analyse(const PolyMap& phi, const PrecisionOptions& opts) {
    if (phi.degree() != 3)
        throw Error(ErrorKind::InvalidArgument, "the decision procedure needs a cubic, got degree " +
                                                    std::to_string(phi.degree()));
    for (long n = opts.precision;; n *= 2) {
        if (n > opts.max_precision)
            throw Error(ErrorKind::PrecisionExhausted, "normal form not certified below precision " +
                                                           std::to_string(opts.max_precision));
        PrecisionOptions cur = opts;
        cur.precision = n;
        auto fixed = fixed_points(phi, cur);
        if (fixed.empty()) return {std::move(fixed), irreducible_form(phi)};
        // Base the normal form at a non-repelling fixed point when one exists.
        const auto base = std::find_if(fixed.begin(), fixed.end(), [](const auto& r) { return !r.repelling(); });
        const HenselRoot& rho = (base == fixed.end() ? fixed.front() : *base).point();
        if (auto nf = reducible_form(phi, rho)) return {std::move(fixed), std::move(*nf)};
    }
}

std::string residue_text(const KElem& x) {
    const auto k = residue_field(x.field().p);
    return k->to_string(x.residue(*k));
}

} // namespace

NormalForm normal_form(const PolyMap& phi, const PrecisionOptions& opts) { return analyse(phi, opts).nf; }

ModelTrace build_model(const NormalForm& nf) {
    const FieldSpec& fs = nf.normalized.field();
    const std::string pi = fs.uniformizer_symbol();
    const auto k = residue_field(fs.p);
    ModelTrace m;
    const ReductionType t = type_of(nf);
    if (t == ReductionType::NoWNM)
        throw Error(ErrorKind::InvalidNormalForm, "no model: the normal form has a repelling fixed point");
    if (t == ReductionType::GoodReduction) {
        const ResPoly red = reduce_poly(nf.normalized.poly());
        m.components.push_back({"C0", "z", {}, {ComponentImage::Kind::Component, "C0", "", red.to_string('z')}});
        return m;
    }
    if (nf.irreducible()) {
        const auto& d = nf.irr();
        const KPoly f = nf.normalized.poly().scaled(pi_pow(fs, d.n));
        if (d.tag == CaseTag::ResidueIrreducible) {
            m.components.push_back({"C0", "z", {reduce_poly(f).to_string('z') + " = 0"},
                                    {ComponentImage::Kind::Point, "C0", "inf", ""}});
            return m;
        }
        m.blowups.push_back({"C0", "0", "z = " + pi + "*z1", "C1"});
        m.components.push_back({"C0", "z", {"0"}, {ComponentImage::Kind::Point, "C0", "inf", ""}});
        ComponentImage img;
        if (d.tag == CaseTag::Case1) {
            img.kind = ComponentImage::Kind::Point;
            img.component = "C0";
            img.point = d.n > d.n3 ? "inf" : residue_text(f.coeff(0) / pi_pow(fs, d.n3));
        } else {
            // psi1(z1) = phi(pi z1) / pi with n = 1.
            const KElem p1 = pi_pow(fs, 1);
            const KPoly psi1 = f.substitute_affine(p1, KElem::zero(fs)).scaled(pi_pow(fs, -2));
            img = {ComponentImage::Kind::Component, "C1", "", reduce_poly(psi1).to_string('z')};
        }
        m.components.push_back({"C1", "z1", {"inf"}, img});
        m.intersections.push_back({"C0", "0", "C1", "inf"});
        return m;
    }
    const auto& d = nf.red();
    m.blowups.push_back({"C0", "inf", "z1 = " + pi + "*z", "C1"});
    const ResidueElem lam = d.lambda.residue(*k);
    ComponentImage c0img = lam.code == 0 ? ComponentImage{ComponentImage::Kind::Point, "C0", "0", ""}
                                         : ComponentImage{ComponentImage::Kind::Component, "C0", "",
                                                          ResPoly(k, {k->zero(), lam}).to_string('z')};
    m.components.push_back({"C0", "z", {"inf"}, c0img});
    m.components.push_back({"C1", "z1", {"0"}, {ComponentImage::Kind::Point, "C1", "inf", ""}});
    m.intersections.push_back({"C0", "inf", "C1", "0"});
    return m;
}

Verdict decide(const PolyMap& phi, const PrecisionOptions& opts) {
    Attempt a = analyse(phi, opts);
    Verdict v;
    for (const auto& rep : a.fixed) {
        if (rep.repelling()) {
            v.repelling_witness = rep;
            break;
        }
    }
    const bool root_path = !v.repelling_witness.has_value();
    const bool nf_path = nf_says_wnm(a.nf);
    if (root_path != nf_path)
        inconsistent(std::string("root criterion says ") + (root_path ? "WNM" : "no WNM") +
                     " but the normal form says " + (nf_path ? "WNM" : "no WNM") + " for " + phi.to_string());
    if (!a.nf.irreducible() && a.nf.red().nu_positive() && !a.nf.red().repelling_at_zero) {
        const mpq_class expect = -2 * a.nf.red().nu;
        if (!v.repelling_witness->valuation_exact || mpq_class(v.repelling_witness->multiplier_valuation) != expect)
            inconsistent("repelling witness has multiplier valuation " +
                         std::to_string(v.repelling_witness->multiplier_valuation) + ", expected " + expect.get_str());
    }
    v.wnm_exists = root_path;
    v.julia_nonempty = !root_path;
    v.reduction_type = type_of(a.nf);
    v.potential_good_reduction = potential_good(a.nf);
    if (v.wnm_exists) v.model = build_model(a.nf);
    v.normal_form = std::move(a.nf);
    v.fixed_points = std::move(a.fixed);
    return v;
}

std::pair<ReductionType, Tristate> reduction_type(const PolyMap& phi, const PrecisionOptions& opts) {
    const Verdict v = decide(phi, opts);
    return {v.reduction_type, v.potential_good_reduction};
}

bool cross_check(const PolyMap& phi, const PrecisionOptions& opts) {
    try {
        (void)decide(phi, opts);
        return true;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InternalInconsistency) return false;
        throw;
    }
}

} // namespace nadyn
