#pragma once

#include <string>

#include <json.hpp>

#include "nadyn/counterex.hpp"
#include "nadyn/wnm.hpp"

namespace nadyn {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const KElem& x);
Json to_json(const KPoly& f);
Json to_json(const HenselRoot& r);
Json to_json(const FixedPointReport& r);
Json to_json(const AffineConj& c);
Json to_json(const NormalForm& nf);
Json to_json(const ModelTrace& m);
Json to_json(const Verdict& v);
Json to_json(const UElem& x);
Json to_json(const CounterexampleSpec& s);
Json to_json(const SubshiftWitness& w);
Json to_json(const TwoCycle& c);
Json to_json(const SamplingReport& r);

/// Reads back what to_json(KElem) wrote.
KElem kelem_from_json(const FieldSpec& f, const Json& j);

std::string describe(const FixedPointReport& r);
std::string describe(const NormalForm& nf);
std::string describe(const ModelTrace& m);
std::string describe(const Verdict& v);

} // namespace nadyn
