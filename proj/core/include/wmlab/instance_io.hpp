#pragma once

#include <json.hpp>
#include <optional>

#include "wmlab/builder.hpp"
#include "wmlab/frobenius.hpp"

namespace wmlab {

inline constexpr const char* kFormatVersion = "wm-lab/1";

// Parsed instance file: kind tag plus the raw payload (kept for fingerprints
// and re-serialization).
struct Document {
    std::string kind;
    nlohmann::json payload;
};

struct GradedDoc {
    GradedModule module;
    std::optional<GradedPairing> pairing;
    int n = 0;
};

struct BigradedDoc {
    BigradedModule module;
    Differential differential;
};

struct StrataDoc {
    StrataCohomology strata;
    TransitionMaps transitions;
};

struct FrobeniusDoc {
    RZInstance instance;
    FrobeniusOperator op;
    std::optional<FactorizationClaim> claim;
};

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const std::string& where);

// Top-level parse; throws SchemaError with a location on malformed documents.
Document parse_document(const std::string& text);
Document parse_document_file(const std::string& path);

// Schema checks plus construction (which runs the domain validations).
GradedDoc load_graded(const Document& doc);
BigradedDoc load_bigraded(const Document& doc);
StrataDoc load_strata(const Document& doc);
RZInstance load_rz(const Document& doc);
FrobeniusDoc load_frobenius(const Document& doc);

nlohmann::json graded_to_json(const GradedModule& m, const GradedPairing* pairing, int n);
nlohmann::json bigraded_to_json(const BigradedModule& m, const Differential& d);
nlohmann::json strata_to_json(const StrataCohomology& s, const TransitionMaps& t);
nlohmann::json rz_to_json(const RZInstance& inst);
nlohmann::json frobenius_to_json(const RZInstance& inst, const FrobeniusOperator& g,
                                 const FactorizationClaim* claim);

nlohmann::json wrap_document(const std::string& kind, nlohmann::json payload);

// Stable serialization (sorted keys, fixed indent) and the content hash of
// the compact canonical form.
std::string dump_document(const nlohmann::json& doc);
std::string fingerprint(const nlohmann::json& doc);

}  // namespace wmlab
