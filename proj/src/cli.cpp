#include "rokhlin/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rokhlin/batch.hpp"
#include "rokhlin/catalog.hpp"
#include "rokhlin/classify.hpp"
#include "rokhlin/dsl.hpp"
#include "rokhlin/json_io.hpp"

namespace rokhlin::cli {

namespace {

using json_io::Json;

struct CliError : std::runtime_error {
  int code;
  CliError(int code_, const std::string& msg) : std::runtime_error(msg), code(code_) {}
};

int default_depth() {
  if (const char* env = std::getenv("ROKHLIN_DEPTH")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 6;
}

// Inputs are catalog:NAME, expr:TEXT, an inline grammar string, or a file
// path holding a surface form.
SurfaceDesc load_surface(const std::string& input) {
  auto from_text = [](const std::string& text) -> SurfaceDesc {
    std::string t = text;
    std::size_t first = t.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && t.compare(first, 7, "surface") == 0)
      return dsl::parse_surface(t);
    Expr e = dsl::parse_ends(t);
    GenusSpec g = contains_nonplanar_atom(e) ? GenusSpec::infinite() : GenusSpec::zero();
    return SurfaceDesc{g, std::move(e)};
  };
  if (input.rfind("catalog:", 0) == 0) {
    auto s = catalog::lookup(input.substr(8));
    if (!s) throw CliError(1, "unknown catalog entry '" + input.substr(8) + "'");
    return *s;
  }
  if (input.rfind("expr:", 0) == 0) return from_text(input.substr(5));
  // free text with grammar punctuation is inline; bare words may be paths
  bool pathLike = input.find_first_of(" \t{}()@*") == std::string::npos;
  if (!pathLike) return from_text(input);
  try {
    return from_text(input);
  } catch (const dsl::SyntaxError&) {
  } catch (const dsl::InvariantError&) {
    throw;
  }
  std::ifstream f(input);
  if (!f) throw CliError(1, "cannot open '" + input + "' (and it does not parse inline)");
  std::stringstream ss;
  ss << f.rdbuf();
  return from_text(ss.str());
}

// unit-copy pieces for map specs: "M.C" or plain "C" (copy C of member 0)
endspace::PiecePath parse_locator(const SurfaceDesc&, const std::string& token) {
  endspace::PiecePath p;
  std::size_t dot = token.find('.');
  int member = 0, copy = 0;
  if (dot == std::string::npos) {
    copy = std::atoi(token.c_str());
  } else {
    member = std::atoi(token.substr(0, dot).c_str());
    copy = std::atoi(token.substr(dot + 1).c_str());
  }
  p.push_back(endspace::sel_omega_copy(member, copy));
  return p;
}

// stable type of the first end sort matching a selector name
std::optional<Expr> named_stable(const SurfaceDesc& s, const std::string& name) {
  Expr n = endspace::normalize(s.ends).expr;
  for (const order::EndType& t : order::end_types(n))
    if (name == order::loc_kind_name(t.loc.kind)) return t.stable;
  return std::nullopt;
}

std::vector<jepcheck::MapPair> parse_mapspec(const SurfaceDesc& s, const std::string& spec) {
  std::vector<jepcheck::MapPair> pairs;
  if (spec == "id" || spec == "identity") return pairs;
  auto parse_units = [&](const std::string& body) {
    std::vector<endspace::PiecePath> units;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) units.push_back(parse_locator(s, tok));
    return units;
  };
  if (spec.rfind("swap:", 0) == 0) {
    auto u = parse_units(spec.substr(5));
    if (u.size() != 2) throw CliError(1, "swap needs two pieces: " + spec);
    pairs.push_back({u[0], u[1]});
    pairs.push_back({u[1], u[0]});
    return pairs;
  }
  if (spec.rfind("cycle:", 0) == 0) {
    auto u = parse_units(spec.substr(6));
    if (u.size() < 2) throw CliError(1, "cycle needs at least two pieces: " + spec);
    for (std::size_t i = 0; i < u.size(); ++i) pairs.push_back({u[i], u[(i + 1) % u.size()]});
    return pairs;
  }
  if (spec == "limit-swap") {
    // deliberately ill-formed: pairs a puncture with the limit piece
    pairs.push_back({{endspace::sel_omega_copy(0, 0)}, {endspace::sel_omega_tail(0)}});
    pairs.push_back({{endspace::sel_omega_tail(0)}, {endspace::sel_omega_copy(0, 0)}});
    return pairs;
  }
  throw CliError(1, "unknown map spec '" + spec + "' (use id, swap:a,b or cycle:a,b,c)");
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void emit(std::ostream& out, bool json, const Json& report, const std::string& text) {
  if (json)
    out << report.dump(2) << "\n";
  else
    out << text << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"decides the Rokhlin property of mapping class groups of borderless "
               "orientable 2-manifolds and emits constructive witnesses"};
  app.name("rokhlin");
  bool json = false;
  bool timings = false;
  int depth = default_depth();
  int jobs = 0;
  app.add_flag("--json", json, "emit JSON reports");
  app.add_flag("--timings", timings, "include per-phase timings in reports");
  app.add_option("--depth", depth, "embedding search depth budget");
  app.add_option("--jobs", jobs, "worker threads for batch inputs");

  auto* cClassify = app.add_subcommand("classify", "decide the Rokhlin and comeager properties");
  std::vector<std::string> classifyInputs;
  cClassify->add_option("inputs", classifyInputs)->required();

  auto* cEq = app.add_subcommand("eq", "test two end spaces for homeomorphism");
  std::string eqA, eqB;
  cEq->add_option("a", eqA)->required();
  cEq->add_option("b", eqB)->required();

  auto* cOrder = app.add_subcommand("order", "compare two end sorts: does Y precede X?");
  std::string orderInput, locX, locY;
  cOrder->add_option("input", orderInput)->required();
  cOrder->add_option("x", locX)->required();
  cOrder->add_option("y", locY)->required();

  auto* cWitness = app.add_subcommand("witness", "emit a dense-element or end-swap schedule");
  std::string witnessInput, witnessKind;
  int witnessN = 5;
  cWitness->add_option("input", witnessInput)->required();
  cWitness->add_option("kind", witnessKind)->required()->check(CLI::IsMember({"dense", "swap"}));
  cWitness->add_option("n", witnessN);

  auto* cJep = app.add_subcommand("jep", "produce and verify a joint-embedding certificate");
  std::string jepInput;
  std::vector<std::string> jepSpecs;
  cJep->add_option("input", jepInput)->required();
  cJep->add_option("maps", jepSpecs);

  auto* cCatalog = app.add_subcommand("catalog", "list the built-in surface catalog");

  app.require_subcommand(1);
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "rokhlin: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*cCatalog) {
      if (json) {
        Json list = Json::array();
        for (const catalog::Entry& e : catalog::entries())
          list.push_back({{"name", e.name}, {"surface", e.text}, {"summary", e.summary}});
        out << json_io::report("catalog", Json(nullptr), std::move(list), {}).dump(2) << "\n";
      } else {
        for (const catalog::Entry& e : catalog::entries())
          out << e.name << "\t" << e.text << "\t" << e.summary << "\n";
      }
      return 0;
    }

    if (*cClassify) {
      std::vector<SurfaceDesc> surfaces;
      for (const std::string& in : classifyInputs) surfaces.push_back(load_surface(in));
      Timer timer;
      batch::Options bopt{jobs, depth};
      std::vector<classify::Verdict> verdicts =
          jobs != 0 ? batch::classify_many(surfaces, bopt)
                    : batch::classify_many_serial(surfaces, depth);
      bool undecided = false;
      for (std::size_t i = 0; i < surfaces.size(); ++i) {
        const classify::Verdict& v = verdicts[i];
        if (v.rokhlin == classify::Tri::Undecidable) undecided = true;
        Json t;
        if (timings) t["totalMs"] = timer.ms();
        Json rep = json_io::report("classify", json_io::surface_json(surfaces[i]),
                                   json_io::verdict_json(v), v.axioms, timings ? &t : nullptr);
        std::ostringstream text;
        text << classifyInputs[i] << ": rokhlin=" << classify::tri_name(v.rokhlin)
             << " reason=" << classify::reason_name(v.reason)
             << " comeager=" << (v.comeagerClass ? "true" : "false");
        emit(out, json, rep, text.str());
      }
      return undecided ? 2 : 0;
    }

    if (*cEq) {
      SurfaceDesc a = load_surface(eqA), b = load_surface(eqB);
      endspace::HomeoResult r = endspace::homeo_eq(a.ends, b.ends);
      Json input;
      input["a"] = json_io::surface_json(a);
      input["b"] = json_io::surface_json(b);
      Json rep = json_io::report("eq", std::move(input), json_io::homeo_json(r), r.axioms);
      std::string verdict = r.v == endspace::HomeoV::Equal      ? "equal"
                            : r.v == endspace::HomeoV::NotEqual ? "not-equal"
                                                                : "unknown";
      emit(out, json, rep, verdict + "  (" + r.detail + ")");
      return r.v == endspace::HomeoV::Unknown ? 2 : 0;
    }

    if (*cOrder) {
      SurfaceDesc s = load_surface(orderInput);
      auto sx = named_stable(s, locX), sy = named_stable(s, locY);
      if (!sx) throw CliError(1, "no end sort named '" + locX + "' in the input");
      if (!sy) throw CliError(1, "no end sort named '" + locY + "' in the input");
      order::LeqResult r = order::leq(*sy, *sx, depth);
      std::string answer = r.v == order::LeqV::True    ? "true"
                           : r.v == order::LeqV::False ? "false"
                                                       : "unknown";
      Json body;
      body["x"] = json_io::expr_json(*sx);
      body["y"] = json_io::expr_json(*sy);
      body["yPrecedesX"] = answer;
      body["detail"] = r.detail;
      if (r.cert) body["cert"] = json_io::embed_cert_json(*r.cert);
      std::vector<std::string> ax = r.cert ? r.cert->axioms : std::vector<std::string>{};
      Json rep = json_io::report("order", json_io::surface_json(s), std::move(body), ax);
      emit(out, json, rep, locY + " precedes " + locX + ": " + answer);
      return r.v == order::LeqV::Unknown ? 2 : 0;
    }

    if (*cWitness) {
      SurfaceDesc s = load_surface(witnessInput);
      if (witnessKind == "dense") {
        witness::DenseSchedule sch = witness::dense_element_schedule(s, witnessN, depth);
        Json rep = json_io::report("witness-dense", json_io::surface_json(s),
                                   json_io::dense_schedule_json(sch), {});
        emit(out, json, rep,
             "dense schedule with " + std::to_string(sch.entries.size()) + " entries");
      } else {
        witness::SwapSchedule sch = witness::end_swap_schedule(s, witnessN, depth);
        bool ok = witness::verify_swap_schedule(sch);
        Json body = json_io::swap_schedule_json(sch);
        body["verified"] = ok;
        Json rep =
            json_io::report("witness-swap", json_io::surface_json(s), std::move(body), {});
        emit(out, json, rep,
             "swap schedule of depth " + std::to_string(sch.depth) +
                 (ok ? " (verified)" : " (VERIFICATION FAILED)"));
        if (!ok) return 2;
      }
      return 0;
    }

    if (*cJep) {
      SurfaceDesc s = load_surface(jepInput);
      Expr space = endspace::normalize(s.ends).expr;
      if (jepSpecs.empty()) jepSpecs = {"id", "id"};
      if (jepSpecs.size() != 2) throw CliError(1, "jep takes exactly two map specs");
      jepcheck::SymbolicMap m1 = jepcheck::make_symbolic_map(space, parse_mapspec(s, jepSpecs[0]));
      jepcheck::SymbolicMap m2 = jepcheck::make_symbolic_map(space, parse_mapspec(s, jepSpecs[1]));
      jepcheck::JepCertificate cert = jepcheck::joint_realize(space, m1, m2, depth);
      bool ok = jepcheck::verify_certificate(cert, space, m1, m2);
      Json body;
      body["m1"] = json_io::symbolic_map_json(m1);
      body["m2"] = json_io::symbolic_map_json(m2);
      body["certificate"] = json_io::jep_cert_json(cert);
      body["verified"] = ok;
      Json rep = json_io::report("jep", json_io::surface_json(s), std::move(body), cert.axioms);
      emit(out, json, rep,
           std::string("jep certificate ") + (ok ? "verified" : "REJECTED") + ", tail index " +
               std::to_string(cert.tailIndex));
      return ok ? 0 : 2;
    }
  } catch (const CliError& e) {
    err << "rokhlin: " << e.what() << "\n";
    return e.code;
  } catch (const dsl::SyntaxError& e) {
    err << "rokhlin: " << e.what() << "\n";
    return 1;
  } catch (const dsl::InvariantError& e) {
    err << "rokhlin: " << e.what() << "\n";
    return 1;
  } catch (const witness::WitnessError& e) {
    err << "rokhlin: " << e.what() << "\n";
    return 1;
  } catch (const jepcheck::JepError& e) {
    err << "rokhlin: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "rokhlin: internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace rokhlin::cli
