// dlex: batch front end for the DL expressivity toolkit.
//
// Exit codes: 0 positive (sat / rewritable / invariant / related),
// 1 negative, 2 unknown (bounded procedures), 3 usage or parse error,
// 4 resource cap exceeded.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dlex/dialect.hpp"
#include "dlex/interp.hpp"
#include "dlex/model_search.hpp"
#include "dlex/parser.hpp"
#include "dlex/reasoner.hpp"
#include "dlex/render.hpp"
#include "dlex/rewrite.hpp"
#include "dlex/sim.hpp"

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dlex::Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw dlex::Error("cannot write '" + path + "'");
  out << text;
}

void emit(bool as_json, const json& j, const std::string& text) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

dlex::Dialect need_dialect(const std::string& name) {
  auto d = dlex::dialect_from_name(name);
  if (!d) throw dlex::Error("unknown dialect '" + name + "'");
  return *d;
}

int from_tri(dlex::Tri t) {
  switch (t) {
    case dlex::Tri::True: return 0;
    case dlex::Tri::False: return 1;
    case dlex::Tri::Unknown: return 2;
  }
  return 2;
}

int from_outcome(dlex::Outcome o) {
  switch (o) {
    case dlex::Outcome::Rewritable: return 0;
    case dlex::Outcome::NotRewritable: return 1;
    case dlex::Outcome::Unknown: return 2;
  }
  return 2;
}

void write_witnesses(const std::string& dir,
                     const std::vector<std::pair<std::string, dlex::Interpretation>>& ws,
                     json& out) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  json files = json::array();
  for (const auto& [name, interp] : ws) {
    std::string path = dir + "/" + name + ".json";
    write_file(path, dlex::to_text(interp));
    files.push_back(path);
  }
  out["witness_files"] = files;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dlex: DL expressivity toolkit (parsing, model checking, simulations, "
               "TBox rewritability)"};
  app.require_subcommand(1);

  bool as_json = false;
  unsigned seed = 0;
  app.add_flag("--json", as_json, "structured JSON output");
  app.add_option("--seed", seed, "seed echoed into structured output (for harnesses)");

  dlex::Limits lim = dlex::Limits::from_env();
  app.add_option("--max-model-size", lim.max_model_size,
                 "bounded model search ceiling (default 6)");
  app.add_option("--tree-depth", lim.tree_depth,
                 "product search tree depth (default: role depth of the input)");
  app.add_option("--out-degree", lim.out_degree,
                 "product search out-degree per role (default 2)");

  // parse ----------------------------------------------------------------
  auto* p_parse = app.add_subcommand("parse", "parse and re-render an input");
  std::string parse_kind = "tbox", parse_file, parse_style = "ascii";
  p_parse->add_option("--kind", parse_kind, "concept|tbox|btbox")->default_str("tbox");
  p_parse->add_option("--render", parse_style, "ascii|unicode|fo")->default_str("ascii");
  p_parse->add_option("file", parse_file, "input file")->required();

  // check-sat --------------------------------------------------------------
  auto* p_sat = app.add_subcommand("check-sat", "TBox / Boolean TBox satisfiability");
  std::string sat_dialect = "alci", sat_kind = "tbox", sat_file;
  p_sat->add_option("--dialect", sat_dialect, "reasoning dialect (alc, alci exact; others bounded)");
  p_sat->add_option("--kind", sat_kind, "tbox|btbox");
  p_sat->add_option("file", sat_file)->required();

  // entails ----------------------------------------------------------------
  auto* p_ent = app.add_subcommand("entails", "TBox entailment of one inclusion");
  std::string ent_file, ent_ci, ent_dialect = "alci";
  p_ent->add_option("tbox", ent_file)->required();
  p_ent->add_option("--ci", ent_ci, "inclusion, e.g. \"A [= B\"")->required();
  p_ent->add_option("--dialect", ent_dialect);

  // model-check --------------------------------------------------------------
  auto* p_mc = app.add_subcommand("model-check", "does an interpretation satisfy a TBox");
  std::string mc_interp, mc_tbox, mc_kind = "tbox";
  p_mc->add_option("interp", mc_interp)->required();
  p_mc->add_option("tbox", mc_tbox)->required();
  p_mc->add_option("--kind", mc_kind, "tbox|btbox");

  // sim ----------------------------------------------------------------------
  auto* p_sim = app.add_subcommand("sim", "maximal (bi)simulations and global relatedness");
  std::string sim_notion = "bisim", sim_i1, sim_i2;
  bool sim_global = false, sim_inverse = false, sim_nominals = false;
  p_sim->add_option("--notion", sim_notion, "bisim|qbisim|el|dllite");
  p_sim->add_flag("--global", sim_global, "decide global relatedness");
  p_sim->add_flag("--inverse", sim_inverse, "conditions range over inverse roles");
  p_sim->add_flag("--nominals", sim_nominals, "[Atom] also for nominals");
  p_sim->add_option("i1", sim_i1)->required();
  p_sim->add_option("i2", sim_i2)->required();

  // combine --------------------------------------------------------------------
  auto* p_comb = app.add_subcommand("combine", "product / unions of interpretations");
  std::string comb_op = "product", comb_out;
  std::vector<std::string> comb_files;
  p_comb->add_option("--op", comb_op, "product|disjoint-union|union|nominal-du");
  p_comb->add_option("-o,--out", comb_out, "output file (default stdout)");
  p_comb->add_option("inputs", comb_files)->required()->expected(-1);

  // invariance -------------------------------------------------------------------
  auto* p_inv = app.add_subcommand("invariance", "semantic invariance checks");
  std::string inv_prop, inv_file, inv_dialect, inv_witness_dir;
  p_inv->add_option("--property", inv_prop, "disjoint-union|nominal-du|el-global|products")
      ->required();
  p_inv->add_option("--dialect", inv_dialect, "dialect of the input");
  p_inv->add_option("--emit-witness", inv_witness_dir, "directory for witness files");
  p_inv->add_option("input", inv_file)->required();

  // rewrite -------------------------------------------------------------------
  auto* p_rw = app.add_subcommand("rewrite", "TBox rewritability between dialects");
  std::string rw_from = "alci", rw_to, rw_file, rw_witness_dir, rw_rewriting_file;
  p_rw->add_option("--from", rw_from, "source dialect");
  p_rw->add_option("--to", rw_to, "alc|el|dllite-horn|dllite-core|dllite-cored")->required();
  p_rw->add_option("--emit-witness", rw_witness_dir, "directory for witness files");
  p_rw->add_option("--emit-rewriting", rw_rewriting_file, "file for the rewritten TBox");
  p_rw->add_option("tbox", rw_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    json out;
    out["seed"] = seed;

    if (*p_parse) {
      std::string text = slurp(parse_file);
      dlex::RenderStyle style = parse_style == "unicode" ? dlex::RenderStyle::Unicode
                                : parse_style == "fo"    ? dlex::RenderStyle::Fo
                                                         : dlex::RenderStyle::Ascii;
      std::string rendered;
      if (parse_kind == "concept")
        rendered = dlex::render(dlex::parse_concept(text), style);
      else if (parse_kind == "btbox")
        rendered = dlex::render(dlex::parse_boolean_tbox(text), style);
      else
        rendered = dlex::render(dlex::parse_tbox(text), style);
      out["kind"] = parse_kind;
      out["rendered"] = rendered;
      emit(as_json, out, rendered + "\n");
      return 0;
    }

    if (*p_sat) {
      dlex::Dialect d = need_dialect(sat_dialect);
      std::string text = slurp(sat_file);
      dlex::BooleanTBox phi = sat_kind == "btbox"
                                  ? dlex::parse_boolean_tbox(text)
                                  : dlex::BooleanTBox::from_tbox(dlex::parse_tbox(text));
      int code;
      std::string verdict;
      if (d == dlex::Dialect::ALC || d == dlex::Dialect::ALCI) {
        bool sat = dlex::boolean_satisfiable(phi, d, lim);
        code = sat ? 0 : 1;
        verdict = sat ? "satisfiable" : "unsatisfiable";
      } else {
        dlex::require_dialect(phi, d, "check-sat");
        auto m = dlex::bounded_model_search(phi, lim.max_model_size);
        code = m ? 0 : 2;
        verdict = m ? "satisfiable" : "unknown";
        out["bound"] = lim.max_model_size;
      }
      out["verdict"] = verdict;
      emit(as_json, out, verdict + "\n");
      return code;
    }

    if (*p_ent) {
      dlex::Dialect d = need_dialect(ent_dialect);
      dlex::TBox t = dlex::parse_tbox(slurp(ent_file));
      dlex::ConceptInclusion ci = dlex::parse_inclusion(ent_ci);
      bool yes = dlex::entails(t, ci, d, lim);
      out["verdict"] = yes ? "entailed" : "not-entailed";
      emit(as_json, out, std::string(yes ? "entailed" : "not-entailed") + "\n");
      return yes ? 0 : 1;
    }

    if (*p_mc) {
      dlex::Interpretation i = dlex::parse_interpretation(slurp(mc_interp));
      std::string text = slurp(mc_tbox);
      bool yes = mc_kind == "btbox" ? dlex::satisfies(i, dlex::parse_boolean_tbox(text))
                                    : dlex::satisfies(i, dlex::parse_tbox(text));
      out["verdict"] = yes ? "satisfies" : "violates";
      emit(as_json, out, std::string(yes ? "satisfies" : "violates") + "\n");
      return yes ? 0 : 1;
    }

    if (*p_sim) {
      dlex::RelationNotion notion;
      if (sim_notion == "bisim") notion = dlex::RelationNotion::bisim(sim_inverse, sim_nominals);
      else if (sim_notion == "qbisim") notion = dlex::RelationNotion::counting(sim_inverse, sim_nominals);
      else if (sim_notion == "el") notion = dlex::RelationNotion::el();
      else if (sim_notion == "dllite") notion = dlex::RelationNotion::dllite();
      else throw dlex::Error("unknown notion '" + sim_notion + "'");
      dlex::Interpretation i1 = dlex::parse_interpretation(slurp(sim_i1));
      dlex::Interpretation i2 = dlex::parse_interpretation(slurp(sim_i2));
      out["notion"] = sim_notion;
      if (sim_global) {
        bool rel = dlex::globally_related(i1, i2, notion);
        out["verdict"] = rel ? "globally-related" : "not-globally-related";
        emit(as_json, out, std::string(rel ? "globally-related" : "not-globally-related") + "\n");
        return rel ? 0 : 1;
      }
      dlex::Relation r = dlex::max_relation(i1, i2, notion);
      json pairs = json::array();
      std::string text;
      for (const auto& [a, b] : r.pairs) {
        pairs.push_back(json::array({a, b}));
        text += a + " ~ " + b + "\n";
      }
      out["pairs"] = pairs;
      emit(as_json, out, text);
      return 0;
    }

    if (*p_comb) {
      std::vector<dlex::Interpretation> is;
      for (const auto& f : comb_files) is.push_back(dlex::parse_interpretation(slurp(f)));
      dlex::Interpretation result;
      if (comb_op == "product") result = dlex::product(is);
      else if (comb_op == "disjoint-union") result = dlex::disjoint_union(is);
      else if (comb_op == "union") result = dlex::union_of(is);
      else if (comb_op == "nominal-du") {
        std::vector<dlex::ComponentInterpretation> js;
        for (auto& i : is) {
          dlex::ComponentInterpretation j;
          j.base = i;
          for (const auto& [a, _] : i.individuals()) j.nom.push_back(a);
          js.push_back(std::move(j));
        }
        result = dlex::nominal_disjoint_union(js);
      } else {
        throw dlex::Error("unknown combine op '" + comb_op + "'");
      }
      std::string text = dlex::to_text(result);
      if (comb_out.empty())
        std::cout << text;
      else
        write_file(comb_out, text);
      return 0;
    }

    if (*p_inv) {
      dlex::Tri value;
      std::string detail;
      std::vector<std::pair<std::string, dlex::Interpretation>> witnesses;
      if (inv_prop == "disjoint-union") {
        dlex::Dialect d = need_dialect(inv_dialect.empty() ? "alc" : inv_dialect);
        auto r = dlex::invariant_under_disjoint_unions(
            dlex::parse_boolean_tbox(slurp(inv_file)), d, lim);
        value = r.value;
        detail = r.detail;
        witnesses = std::move(r.witnesses);
      } else if (inv_prop == "nominal-du") {
        dlex::Dialect d = need_dialect(inv_dialect.empty() ? "alcio" : inv_dialect);
        auto r = dlex::invariant_under_nominal_du(
            dlex::parse_boolean_tbox(slurp(inv_file)), d, lim);
        value = r.value;
        detail = r.detail;
        witnesses = std::move(r.witnesses);
      } else if (inv_prop == "el-global") {
        value = dlex::el_global_invariance(dlex::parse_tbox(slurp(inv_file)), lim)
                    ? dlex::Tri::True
                    : dlex::Tri::False;
        detail = "exact (tuple elimination)";
      } else if (inv_prop == "products") {
        auto r = dlex::product_preservation(dlex::parse_tbox(slurp(inv_file)), lim);
        value = r.value;
        detail = r.detail;
        witnesses = std::move(r.witnesses);
      } else {
        throw dlex::Error("unknown property '" + inv_prop + "'");
      }
      out["verdict"] = dlex::tri_name(value);
      out["detail"] = detail;
      write_witnesses(inv_witness_dir, witnesses, out);
      emit(as_json, out, std::string(dlex::tri_name(value)) + " (" + detail + ")\n");
      return from_tri(value);
    }

    if (*p_rw) {
      dlex::Dialect from = need_dialect(rw_from);
      dlex::TBox t = dlex::parse_tbox(slurp(rw_file));
      dlex::require_dialect(t, from, "rewrite");
      dlex::Verdict v;
      if (rw_to == "alc") v = dlex::rewrite_alci_to_alc(t, lim);
      else if (rw_to == "el") v = dlex::rewrite_alc_to_el(t, lim);
      else if (rw_to == "dllite-horn") v = dlex::rewrite_to_dllite_horn(t, lim);
      else if (rw_to == "dllite-core") v = dlex::rewrite_to_dllite_core(t, false, lim);
      else if (rw_to == "dllite-cored") v = dlex::rewrite_to_dllite_core(t, true, lim);
      else throw dlex::Error("unknown target dialect '" + rw_to + "'");

      out["from"] = rw_from;
      out["to"] = rw_to;
      out["outcome"] = dlex::outcome_name(v.outcome);
      out["detail"] = v.detail;
      if (v.rewriting) out["rewriting"] = dlex::render(*v.rewriting);
      write_witnesses(rw_witness_dir, v.witnesses, out);
      if (!rw_rewriting_file.empty() && v.rewriting)
        write_file(rw_rewriting_file, dlex::render(*v.rewriting));
      std::string text = std::string(dlex::outcome_name(v.outcome)) + " (" + v.detail + ")\n";
      if (v.rewriting) text += dlex::render(*v.rewriting);
      emit(as_json, out, text);
      return from_outcome(v.outcome);
    }
  } catch (const dlex::ResourceLimitError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 4;
  } catch (const dlex::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
