#pragma once

#include <json.hpp>

#include "rokhlin/classify.hpp"
#include "rokhlin/core.hpp"
#include "rokhlin/endspace.hpp"
#include "rokhlin/jepcheck.hpp"
#include "rokhlin/order.hpp"
#include "rokhlin/witness.hpp"

namespace rokhlin::json_io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "rokhlin-report/1";
inline constexpr const char* kEngine = "rokhlin 1.0.0";

Json expr_json(const Expr& e);
Json surface_json(const SurfaceDesc& s);
Json piece_json(const endspace::PiecePath& p);
Json embed_cert_json(const endspace::EmbedCert& c);
Json homeo_json(const endspace::HomeoResult& r);
Json profile_json(const endspace::CBProfile& p);
Json maximal_json(const order::MaximalClass& m);
Json verdict_json(const classify::Verdict& v);
Json dense_schedule_json(const witness::DenseSchedule& s);
Json swap_schedule_json(const witness::SwapSchedule& s);
Json symbolic_map_json(const jepcheck::SymbolicMap& m);
Json jep_cert_json(const jepcheck::JepCertificate& c);

/// Report envelope: schema-versioned, deterministic key order, no
/// timestamps unless timings are requested.
Json report(const std::string& command, Json input, Json body,
            const std::vector<std::string>& axioms, const Json* timings = nullptr);

}  // namespace rokhlin::json_io
