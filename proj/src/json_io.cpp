#include "rokhlin/json_io.hpp"

#include <algorithm>
#include <set>

#include "rokhlin/dsl.hpp"

namespace rokhlin::json_io {

Json expr_json(const Expr& e) { return dsl::render_expr(e); }

Json surface_json(const SurfaceDesc& s) {
  Json j;
  j["genus"] = s.genus.str();
  j["ends"] = dsl::render_expr(s.ends);
  j["text"] = dsl::render_surface(s);
  return j;
}

Json piece_json(const endspace::PiecePath& p) { return endspace::piece_str(p); }

Json embed_cert_json(const endspace::EmbedCert& c) {
  Json j;
  j["source"] = expr_json(c.source);
  j["target"] = expr_json(c.target);
  Json pairs = Json::array();
  for (const endspace::EmbedPair& p : c.pairs) {
    Json pj;
    pj["source"] = piece_json(p.source);
    pj["target"] = piece_json(p.target);
    pj["route"] = p.route;
    pairs.push_back(std::move(pj));
  }
  j["pairs"] = std::move(pairs);
  j["axioms"] = c.axioms;
  return j;
}

Json homeo_json(const endspace::HomeoResult& r) {
  Json j;
  j["verdict"] = r.v == endspace::HomeoV::Equal      ? "equal"
                 : r.v == endspace::HomeoV::NotEqual ? "not-equal"
                                                     : "unknown";
  j["detail"] = r.detail;
  j["axioms"] = r.axioms;
  return j;
}

Json profile_json(const endspace::CBProfile& p) {
  Json j;
  Json levels = Json::array();
  for (const endspace::Level& l : p.levels) {
    Json lj;
    lj["rank"] = l.rank.str();
    lj["planar"] = l.planar.str();
    lj["nonplanar"] = l.nonplanar.str();
    levels.push_back(std::move(lj));
  }
  j["levels"] = std::move(levels);
  j["kernel"] = endspace::kernel_name(p.kernel);
  if (p.kernel == endspace::KernelKind::Mixed) j["kernelExpr"] = expr_json(p.kernelExpr);
  Json census = Json::array();
  for (const endspace::CensusEntry& e : p.census) {
    Json cj;
    cj["type"] = expr_json(e.stable);
    cj["count"] = e.mult.str();
    census.push_back(std::move(cj));
  }
  j["census"] = std::move(census);
  j["countable"] = p.countable;
  if (p.ordinalType) j["ordinalType"] = p.ordinalType->str();
  return j;
}

namespace {

Json locator_json(const order::EndLocator& l) {
  Json j;
  std::string path;
  for (std::size_t i = 0; i < l.path.size(); ++i)
    path += (i ? "." : "") + std::to_string(l.path[i]);
  j["path"] = path;
  j["kind"] = order::loc_kind_name(l.kind);
  return j;
}

}  // namespace

Json maximal_json(const order::MaximalClass& m) {
  Json j;
  j["class"] = order::maximal_kind_name(m.k);
  j["points"] = m.points.str();
  Json reps = Json::array();
  for (const order::EndTypeClass& c : m.reps) {
    Json rj;
    rj["stable"] = expr_json(c.stable);
    rj["flag"] = flag_name(c.flag);
    rj["count"] = c.mult.str();
    Json locs = Json::array();
    for (const order::EndLocator& l : c.reps) locs.push_back(locator_json(l));
    rj["locators"] = std::move(locs);
    reps.push_back(std::move(rj));
  }
  j["types"] = std::move(reps);
  if (m.undecided) j["undecided"] = true;
  if (!m.note.empty()) j["note"] = m.note;
  return j;
}

Json verdict_json(const classify::Verdict& v) {
  Json j;
  j["rokhlin"] = classify::tri_name(v.rokhlin);
  j["comeagerClass"] = v.comeagerClass;
  j["trivialMcg"] = v.trivialMcg;
  j["reason"] = classify::reason_name(v.reason);
  j["maximal"] = v.maximal ? maximal_json(*v.maximal) : Json("not-applicable");
  j["selfSimilar"] = v.selfSimilar == order::Tri::True    ? "true"
                     : v.selfSimilar == order::Tri::False ? "false"
                                                          : "unknown";
  j["evidence"] = v.evidence;
  Json certs = Json::array();
  for (const endspace::EmbedCert& c : v.certificates) certs.push_back(embed_cert_json(c));
  j["certificates"] = std::move(certs);
  return j;
}

Json dense_schedule_json(const witness::DenseSchedule& s) {
  Json j;
  j["surface"] = surface_json(s.surface);
  j["pairing"] = s.pairing;
  j["genusPieces"] = s.genusPieces;
  j["unitChunk"] = s.unitChunk.kind == Kind::Empty ? Json(nullptr) : Json(expr_json(s.unitChunk));
  j["designChoice"] = s.designChoice;
  Json entries = Json::array();
  for (const witness::DenseEntry& e : s.entries) {
    Json ej;
    ej["index"] = e.index;
    ej["genus"] = e.piece.genus;
    ej["chunkUnits"] = e.piece.chunkUnits;
    std::string word;
    for (std::size_t i = 0; i < e.word.size(); ++i)
      word += (i ? " " : "") + std::string("t") + std::to_string(e.word[i] + 1);
    ej["word"] = word;
    ej["region"] = {{"lo", e.regionLo}, {"hi", e.regionHi}, {"chainLevel", e.index}};
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json swap_schedule_json(const witness::SwapSchedule& s) {
  Json j;
  j["surface"] = surface_json(s.surface);
  j["depth"] = s.depth;
  j["vPart"] = s.vPartIndex;
  j["wPart"] = s.wPartIndex;
  j["junkParts"] = s.junkParts;
  j["residual"] = homeo_json(s.residual);
  Json rows = Json::array();
  for (const witness::SwapRow& r : s.rows) {
    Json rj;
    rj["stage"] = r.stage;
    rj["vRound"] = r.vReleased ? Json(r.vRound) : Json(nullptr);
    rj["wRound"] = r.wReleased ? Json(r.wRound) : Json(nullptr);
    auto placements = [](const std::vector<witness::SwapPlacement>& ps) {
      Json a = Json::array();
      for (const witness::SwapPlacement& p : ps) {
        Json pj;
        pj["piece"] = expr_json(p.piece);
        pj["bandLo"] = p.bandLo;
        pj["bandLen"] = p.bandLen;
        pj["cert"] = embed_cert_json(p.cert);
        a.push_back(std::move(pj));
      }
      return a;
    };
    rj["f"] = placements(r.f);
    rj["g"] = placements(r.g);
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  j["vRounds"] = s.vRounds;
  j["wRounds"] = s.wRounds;
  return j;
}

Json symbolic_map_json(const jepcheck::SymbolicMap& m) {
  Json j;
  j["space"] = expr_json(m.space);
  j["supportBound"] = m.supportBound;
  Json pairs = Json::array();
  for (const jepcheck::MapPair& p : m.pairs) {
    Json pj;
    pj["from"] = piece_json(p.from);
    pj["to"] = piece_json(p.to);
    pairs.push_back(std::move(pj));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

Json jep_cert_json(const jepcheck::JepCertificate& c) {
  Json j;
  j["space"] = expr_json(c.space);
  j["tailIndex"] = c.tailIndex;
  j["g"] = embed_cert_json(c.g);
  auto pairs = [](const std::vector<jepcheck::MapPair>& ps) {
    Json a = Json::array();
    for (const jepcheck::MapPair& p : ps)
      a.push_back({{"from", piece_json(p.from)}, {"to", piece_json(p.to)}});
    return a;
  };
  j["h1"] = pairs(c.h1);
  j["conjugate"] = pairs(c.conjugate);
  j["product"] = "h = h1 . (g h2 g^-1), disjoint supports";
  j["axioms"] = c.axioms;
  return j;
}

Json report(const std::string& command, Json input, Json body,
            const std::vector<std::string>& axioms, const Json* timings) {
  Json j;
  j["schema"] = kSchema;
  j["engine"] = kEngine;
  j["command"] = command;
  j["input"] = std::move(input);
  j["result"] = std::move(body);
  std::set<std::string> ax(axioms.begin(), axioms.end());
  j["axioms"] = std::vector<std::string>(ax.begin(), ax.end());
  if (timings) j["timings"] = *timings;
  return j;
}

}  // namespace rokhlin::json_io
