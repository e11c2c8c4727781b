#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fourfolds/abelianfield.hpp"
#include "fourfolds/amitsur.hpp"
#include "fourfolds/catalog.hpp"
#include "fourfolds/common.hpp"
#include "fourfolds/endalg.hpp"
#include "fourfolds/finitegroup.hpp"
#include "fourfolds/polyring.hpp"
#include "fourfolds/weil.hpp"

namespace fourfolds::cli {

using std::int64_t;
using json = nlohmann::ordered_json;

// exit codes
constexpr int kPass = 0;
constexpr int kFailed = 1;
constexpr int kMalformed = 2;
constexpr int kOutOfScope = 3;

struct CliResult {
  int code = 0;
  std::string output;
};

namespace detail {

/// "c0,c1,...,cn" ascending degree, exact integers.
inline polyring::IntPoly parse_poly(const std::string& text) {
  std::vector<Int> coeffs;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) throw std::invalid_argument("empty coefficient in polynomial");
    size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (i == tok.size()) throw std::invalid_argument("bad coefficient '" + tok + "'");
    for (; i < tok.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(tok[i])))
        throw std::invalid_argument("bad coefficient '" + tok + "'");
    coeffs.emplace_back(tok);
  }
  if (coeffs.empty()) throw std::invalid_argument("empty polynomial");
  return polyring::IntPoly(std::move(coeffs));
}

inline std::string poly_text(const polyring::IntPoly& h) {
  std::ostringstream os;
  for (int i = 0; i <= h.degree(); ++i) {
    if (i) os << ",";
    os << h.coeff(i).str();
  }
  return os.str();
}

inline int64_t to_int64(const Int& x) {
  if (x > Int(std::numeric_limits<int64_t>::max()) || x < Int(std::numeric_limits<int64_t>::min()))
    throw std::invalid_argument("integer out of 64-bit range");
  return static_cast<int64_t>(x);
}

inline json rat_json(const Rat& r) {
  return json{{"num", to_int64(r.numerator())}, {"den", to_int64(r.denominator())}};
}

inline json poly_json(const polyring::IntPoly& h) {
  json arr = json::array();
  for (int i = 0; i <= h.degree(); ++i) arr.push_back(to_int64(h.coeff(i)));
  return arr;
}

inline json invariants_json(const std::vector<endalg::PlaceInvariant>& invs) {
  json arr = json::array();
  for (const endalg::PlaceInvariant& pi : invs) {
    json e;
    switch (pi.kind) {
      case endalg::PlaceInvariant::Kind::Finite:
        e["place"] = "finite";
        e["p"] = pi.p;
        e["index"] = pi.index;
        break;
      case endalg::PlaceInvariant::Kind::Real:
        e["place"] = "real";
        e["index"] = pi.index;
        break;
      case endalg::PlaceInvariant::Kind::OtherPlaces:
        e["place"] = "other";
        break;
    }
    e["inv"] = rat_json(pi.value);
    arr.push_back(e);
  }
  return arr;
}

inline std::string rat_text(const Rat& r) {
  if (r.denominator() == 1) return r.numerator().str();
  return r.numerator().str() + "/" + r.denominator().str();
}

inline json report_json(const catalog::VerificationReport& rep) {
  json stages = json::array();
  for (const catalog::Stage& s : rep.stages)
    stages.push_back(json{{"stage", s.name},
                          {"pass", s.pass},
                          {"paper_asserted", s.paper_asserted},
                          {"detail", s.detail}});
  return json{{"id", rep.id},
              {"group", rep.group},
              {"pass", rep.pass()},
              {"paper_asserted_stages", rep.paper_asserted_count()},
              {"stages", stages}};
}

inline void render_report(std::ostream& os, const catalog::VerificationReport& rep) {
  os << "witness " << rep.id << " (" << rep.group << "): "
     << (rep.pass() ? "PASS" : "FAIL") << "\n";
  for (const catalog::Stage& s : rep.stages) {
    os << "  " << (s.pass ? "ok  " : "FAIL") << " " << s.name;
    if (s.paper_asserted) os << " [paper-asserted]";
    os << ": " << s.detail << "\n";
  }
}

}  // namespace detail

/// Dispatch a full argv (without the program name) and return exit code plus
/// rendered output.
inline CliResult run(const std::vector<std::string>& args) {
  CLI::App app{"exact verification of automorphism-group computations for simple abelian "
               "fourfolds over finite fields"};
  app.require_subcommand(1);

  // weil check
  std::string opt_poly, opt_model, opt_tag, opt_cond;
  int64_t opt_q = 0, opt_p = 0, opt_m = 0, opt_r = 0, opt_n = 0;
  int opt_id = 0;
  bool opt_all = false, opt_json = false;

  auto* weil_cmd = app.add_subcommand("weil", "Weil number checks");
  auto* weil_check = weil_cmd->add_subcommand("check", "verify a q-Weil minimal polynomial");
  weil_check->add_option("--q", opt_q, "prime power q")->required();
  weil_check->add_option("--poly", opt_poly, "coefficients c0,c1,... ascending")->required();
  weil_check->add_flag("--json", opt_json);

  auto* endalg_cmd = app.add_subcommand("endalg", "endomorphism algebra");
  auto* endalg_shape = endalg_cmd->add_subcommand("shape", "local invariants and classification");
  endalg_shape->add_option("--q", opt_q)->required();
  endalg_shape->add_option("--poly", opt_poly)->required();
  endalg_shape->add_option("--model", opt_model, "declared center model N:g1,g2");
  endalg_shape->add_flag("--json", opt_json);

  auto* field_cmd = app.add_subcommand("field", "abelian number fields");
  auto* field_split = field_cmd->add_subcommand("split", "splitting of a prime");
  field_split->add_option("--model", opt_model)->required();
  field_split->add_option("--p", opt_p)->required();
  field_split->add_flag("--json", opt_json);

  auto* amitsur_cmd = app.add_subcommand("amitsur", "metacyclic embeddability");
  auto* amitsur_check = amitsur_cmd->add_subcommand("check", "Amitsur criterion for G_{m,r}");
  amitsur_check->add_option("--m", opt_m)->required();
  amitsur_check->add_option("--r", opt_r)->required();
  amitsur_check->add_flag("--json", opt_json);
  auto* amitsur_enum = amitsur_cmd->add_subcommand("enumerate", "scan phi(m) | 8");
  amitsur_enum->add_option("--n", opt_n)->required();
  amitsur_enum->add_option("--cond", opt_cond, "c1 or c2")->required();
  amitsur_enum->add_flag("--json", opt_json);

  auto* group_cmd = app.add_subcommand("group", "finite group computations");
  auto* group_jordan = group_cmd->add_subcommand("jordan", "Jordan constant of G_{m,r}");
  group_jordan->add_option("--m", opt_m)->required();
  group_jordan->add_option("--r", opt_r)->required();
  group_jordan->add_flag("--json", opt_json);

  auto* catalog_cmd = app.add_subcommand("catalog", "witness catalog");
  auto* catalog_verify = catalog_cmd->add_subcommand("verify", "verify witnesses");
  catalog_verify->add_option("--id", opt_id, "witness id 1..13");
  catalog_verify->add_flag("--all", opt_all);
  catalog_verify->add_flag("--json", opt_json);
  auto* catalog_lemma = catalog_cmd->add_subcommand("lemma", "reproduce an enumeration");
  catalog_lemma->add_option("--tag", opt_tag, "L3.5, L3.6 or L3.7")->required();
  catalog_lemma->add_flag("--json", opt_json);
  auto* catalog_jrange = catalog_cmd->add_subcommand("jordan-range", "Jordan constants of the 13");
  catalog_jrange->add_flag("--json", opt_json);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return {kPass, app.help()};
  } catch (const CLI::ParseError& e) {
    return {kMalformed, std::string("error: ") + e.what() + "\n"};
  }

  std::ostringstream os;
  try {
    if (weil_check->parsed()) {
      polyring::IntPoly h = detail::parse_poly(opt_poly);
      weil::prime_power(opt_q);
      bool ok = weil::is_weil_poly(h, opt_q);
      bool real_case = !ok && weil::is_real_weil_poly(h, opt_q);
      if (opt_json) {
        os << json{{"command", "weil check"},
                   {"q", opt_q},
                   {"poly", detail::poly_json(h)},
                   {"weil", ok || real_case},
                   {"real_weil_out_of_fourfold_scope", real_case},
                   {"verdict", ok || real_case ? "PASS" : "FAILED"}}
                  .dump(2)
           << "\n";
      } else {
        os << "h = " << h.str() << ", q = " << opt_q << ": "
           << (ok ? "PASS (q-Weil polynomial)"
                  : real_case ? "PASS (real Weil number, out of fourfold scope)" : "FAILED")
           << "\n";
      }
      return {ok || real_case ? kPass : kFailed, os.str()};
    }

    if (endalg_shape->parsed()) {
      polyring::IntPoly h = detail::parse_poly(opt_poly);
      std::optional<abelianfield::AbelianFieldModel> model;
      if (!opt_model.empty()) model = abelianfield::parse_model(opt_model);
      weil::WeilCandidate w = weil::make_candidate(opt_q, h, model);
      if (model) {
        // recognize pi = c * zeta_n against the declared model, so the p-adic
        // fallback for Ore-irregular inputs has a scaling to work from
        int64_t c = weil::detail::isqrt64(opt_q);
        if (c * c == opt_q)
          for (int64_t n = 1; n <= 4 * model->conductor; ++n)
            if (abelianfield::cyclotomic_field(n) == *model &&
                polyring::scaled_root_min_poly(c, n) == h) {
              w.scaling = {{c, n}};
              break;
            }
      }
      if (!weil::is_weil_poly(w.h, w.q)) {
        os << "not a q-Weil polynomial; no endomorphism algebra to classify\n";
        return {kFailed, os.str()};
      }
      endalg::EndAlgebraShape shape;
      try {
        shape = endalg::classify_fourfold(w);
      } catch (const NotAFourfold& e) {
        os << "rejected: " << e.what()
           << " (the fourfold trichotomy admits only (e,d) = (8,1), (4,2), (2,4))\n";
        return {kFailed, os.str()};
      }
      if (opt_json) {
        os << json{{"command", "endalg shape"},
                   {"q", w.q},
                   {"poly", detail::poly_json(w.h)},
                   {"e", shape.e},
                   {"d", shape.d},
                   {"g", shape.g},
                   {"kind", endalg::kind_name(shape.kind)},
                   {"invariants", detail::invariants_json(shape.invariants)}}
                  .dump(2)
           << "\n";
      } else {
        os << "e = " << shape.e << ", d = " << shape.d << ", g = " << shape.g
           << ", kind = " << endalg::kind_name(shape.kind) << "\n";
        for (const endalg::PlaceInvariant& pi : shape.invariants) {
          if (pi.kind == endalg::PlaceInvariant::Kind::Finite)
            os << "  inv at place " << pi.index << " over " << pi.p << " = "
               << detail::rat_text(pi.value) << "\n";
          else if (pi.kind == endalg::PlaceInvariant::Kind::Real)
            os << "  inv at real place " << pi.index << " = " << detail::rat_text(pi.value)
               << "\n";
          else
            os << "  inv at all other places = 0\n";
        }
      }
      return {shape.kind == endalg::FourfoldKind::OTHER ? kFailed : kPass, os.str()};
    }

    if (field_split->parsed()) {
      abelianfield::AbelianFieldModel F = abelianfield::parse_model(opt_model);
      abelianfield::SplittingData s = abelianfield::splitting_efg(F, opt_p);
      if (opt_json) {
        os << json{{"command", "field split"},
                   {"model", abelianfield::format_model(F)},
                   {"degree", F.degree()},
                   {"p", opt_p},
                   {"e", s.e},
                   {"f", s.f},
                   {"g", s.g}}
                  .dump(2)
           << "\n";
      } else {
        os << "p = " << opt_p << " in " << abelianfield::format_model(F) << " (degree "
           << F.degree() << "): e = " << s.e << ", f = " << s.f << ", g = " << s.g << "\n";
      }
      return {kPass, os.str()};
    }

    if (amitsur_check->parsed()) {
      amitsur::GmrParams g = amitsur::gmr_params(opt_m, opt_r);
      amitsur::Condition cond = amitsur::check_conditions(g);
      amitsur::EmbeddabilityVerdict v = amitsur::gmr_embeddable(g);
      std::string cond_name = cond == amitsur::Condition::C1   ? "C1"
                              : cond == amitsur::Condition::C2 ? "C2"
                                                               : "NONE";
      std::string branch_name = v.branch == amitsur::Branch::COND1    ? "COND1"
                                : v.branch == amitsur::Branch::COND2A ? "COND2A"
                                : v.branch == amitsur::Branch::COND2B ? "COND2B"
                                                                      : "NONE";
      if (opt_json) {
        json wit = json::array();
        for (const auto& [q, p] : v.witnesses) wit.push_back(json{{"q", q}, {"p", p}});
        os << json{{"command", "amitsur check"},
                   {"m", g.m},
                   {"r", g.r},
                   {"n", g.n},
                   {"s", g.s},
                   {"t", g.t},
                   {"condition", cond_name},
                   {"embeddable", v.embeddable},
                   {"branch", branch_name},
                   {"witnesses", wit},
                   {"verdict", v.embeddable ? "PASS" : "FAILED"}}
                  .dump(2)
           << "\n";
      } else {
        os << "G_{" << g.m << "," << g.r << "}: n = " << g.n << ", s = " << g.s
           << ", t = " << g.t << ", condition " << cond_name << "\n"
           << (v.embeddable ? "PASS" : "FAILED") << ", branch " << branch_name << " ("
           << v.reason << ")\n";
      }
      return {v.embeddable ? kPass : kFailed, os.str()};
    }

    if (amitsur_enum->parsed()) {
      amitsur::Condition cond;
      if (opt_cond == "c1" || opt_cond == "C1")
        cond = amitsur::Condition::C1;
      else if (opt_cond == "c2" || opt_cond == "C2")
        cond = amitsur::Condition::C2;
      else
        return {kMalformed, "error: --cond must be c1 or c2\n"};
      if (opt_n != 1 && opt_n != 2 && opt_n != 4)
        return {kMalformed, "error: --n must be 1, 2 or 4\n"};
      auto groups = amitsur::enumerate_gmr(opt_n, 8, cond);
      if (opt_json) {
        json arr = json::array();
        for (const auto& g : groups) {
          json rs = json::array();
          for (int64_t r : g.residues) rs.push_back(r);
          arr.push_back(json{{"m", g.m}, {"r", rs}, {"group", g.name}});
        }
        os << json{{"command", "amitsur enumerate"}, {"n", opt_n}, {"condition", opt_cond},
                   {"groups", arr}}
                  .dump(2)
           << "\n";
      } else {
        for (const auto& g : groups) {
          os << g.name << ": m = " << g.m << ", r in {";
          for (size_t i = 0; i < g.residues.size(); ++i)
            os << (i ? ", " : "") << g.residues[i];
          os << "}\n";
        }
      }
      return {kPass, os.str()};
    }

    if (group_jordan->parsed()) {
      finitegroup::FiniteGroupTable G = finitegroup::build_gmr(opt_m, opt_r);
      finitegroup::JordanReport jr = finitegroup::jordan_constant(G);
      std::string name = finitegroup::identify(G);
      if (opt_json) {
        os << json{{"command", "group jordan"},
                   {"m", opt_m},
                   {"r", opt_r},
                   {"group", name},
                   {"order", G.order},
                   {"jordan", jr.J},
                   {"witness_subgroup_order", static_cast<int64_t>(jr.witness_subgroup.size())},
                   {"witness_normal_abelian_order",
                    static_cast<int64_t>(jr.witness_normal_abelian.size())}}
                  .dump(2)
           << "\n";
      } else {
        os << name << " (order " << G.order << "): J = " << jr.J << " via a subgroup of order "
           << jr.witness_subgroup.size() << " with normal abelian subgroup of order "
           << jr.witness_normal_abelian.size() << "\n";
      }
      return {kPass, os.str()};
    }

    if (catalog_verify->parsed()) {
      if (opt_all == (opt_id != 0))
        return {kMalformed, "error: give exactly one of --id or --all\n"};
      std::vector<catalog::VerificationReport> reports;
      if (opt_all)
        for (int i = 1; i <= 13; ++i) reports.push_back(catalog::verify_witness(i));
      else
        reports.push_back(catalog::verify_witness(opt_id));
      bool all_pass = true;
      for (const auto& r : reports) all_pass = all_pass && r.pass();
      if (opt_json) {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(detail::report_json(r));
        os << json{{"command", "catalog verify"}, {"pass", all_pass}, {"reports", arr}}.dump(2)
           << "\n";
      } else {
        for (const auto& r : reports) detail::render_report(os, r);
        os << (all_pass ? "all witnesses PASS" : "FAILURES present") << "\n";
      }
      return {all_pass ? kPass : kFailed, os.str()};
    }

    if (catalog_lemma->parsed()) {
      std::vector<std::string> names = catalog::reproduce_lemma(opt_tag);
      if (opt_json) {
        json arr = json::array();
        for (const std::string& n : names) arr.push_back(n);
        os << json{{"command", "catalog lemma"}, {"tag", opt_tag}, {"groups", arr}}.dump(2)
           << "\n";
      } else {
        os << opt_tag << ":";
        for (const std::string& n : names) os << " " << n;
        os << "\n";
      }
      return {kPass, os.str()};
    }

    if (catalog_jrange->parsed()) {
      std::set<int64_t> range = catalog::jordan_range();
      if (opt_json) {
        json arr = json::array();
        for (int64_t j : range) arr.push_back(j);
        os << json{{"command", "catalog jordan-range"}, {"values", arr}}.dump(2) << "\n";
      } else {
        os << "jordan constants of the realizable groups: {";
        bool first = true;
        for (int64_t j : range) {
          os << (first ? "" : ", ") << j;
          first = false;
        }
        os << "}\n";
      }
      return {kPass, os.str()};
    }
  } catch (const OreIrregular& e) {
    return {kOutOfScope, std::string("out of scope: ") + e.what() + "\n"};
  } catch (const OrderBoundExceeded& e) {
    return {kOutOfScope, std::string("out of scope: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    return {kMalformed, std::string("error: ") + e.what() + "\n"};
  }
  return {kMalformed, "error: no subcommand handled\n"};
}

}  // namespace fourfolds::cli
