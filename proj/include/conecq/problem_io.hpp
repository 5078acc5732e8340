#pragma once

// JSON input/output.  The input schema is strict: every object is validated
// against a whitelist of keys and unknown keys are rejected, so a typo can
// never silently change the meaning of a problem file.  Rationals are
// accepted as "p/q" strings, integers, or finite decimals/floats (converted
// exactly from their binary64 value) and are always re-emitted as canonical
// "p/q" strings.  Report emission uses alphabetically ordered keys, so equal
// inputs produce byte-identical output.

#include <string>

#include "json.hpp"

#include "conecq/checkers.hpp"
#include "conecq/numeric.hpp"

namespace conecq {

using Json = nlohmann::json;

enum class InputKind { General, CS, KKT };

struct ParsedInput {
    InputKind kind = InputKind::General;
    std::string name;
    ProblemInstance general;        // always populated (embedded form for cs/kkt)
    std::optional<CSInstance> cs;   // populated for cs and kkt inputs
    std::optional<KKTInstance> kkt; // populated for kkt inputs
    std::vector<CheckKind> checks;  // requested checks, default all five
    CheckConfig check_cfg;
    SamplingConfig sampling;
};

ParsedInput parse_input(const std::string& text); // throws ParseError

// Canonical re-emission of the parsed problem (idempotent: parsing the
// output and dumping again is byte-identical).
std::string dump_normalized(const ParsedInput& in);

Json rat_json(const Rat& r);
Json vec_json(const QVec& v);
Json mat_json(const QMat& m);
Json dvec_json(const std::vector<double>& v);
Json vcone_json(const VCone& c);
Json hcone_json(const HCone& c);
Json union_json(const ConeUnion& u);
Json witness_json(const Witness& w);
Json verdict_json(const Verdict& v);
Json chain_json(const ChainReport& r);
Json modulus_json(const ModulusTable& t);

} // namespace conecq
