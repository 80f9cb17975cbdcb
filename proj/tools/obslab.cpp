#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "obslab/artin.hpp"
#include "obslab/cech.hpp"
#include "obslab/error.hpp"
#include "obslab/groebner.hpp"
#include "obslab/hochschild.hpp"
#include "obslab/koszul.hpp"
#include "obslab/local_cohomology.hpp"
#include "obslab/problem.hpp"

using nlohmann::json;
using namespace obslab;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Flags {
  int degree_bound = 8;
  int truncation = 5;
  std::string order;
  std::string report;
  bool verbose = false;
  std::string file;
  std::string ideal, algebra, algebra2, extension, deformation, sequence, klass;
  int max_degree = 3;
  std::string g;
};

struct Outcome {
  json results;
  int code = 0;
};

Index max_dim() {
  const char* env = std::getenv("OBSLAB_MAX_DIM");
  if (!env) return 16;
  try {
    return std::stol(env);
  } catch (...) {
    throw Error(ErrorKind::InvalidInput, "OBSLAB_MAX_DIM is not an integer");
  }
}

Problem load(const Flags& f) {
  if (f.file.empty()) throw Error(ErrorKind::InvalidInput, "a problem file is required");
  LoadOptions o;
  if (!f.order.empty()) o.order = f.order == "lex" ? MonomialOrder::Lex : MonomialOrder::DegRevLex;
  o.degree_bound = f.degree_bound;
  o.truncation = f.truncation;
  o.max_algebra_dim = max_dim();
  return load_problem(f.file, o);
}

std::string require(const std::string& v, const std::string& flag) {
  if (v.empty()) throw Error(ErrorKind::InvalidInput, flag + " is required");
  return v;
}

json poly_list(const Ring& r, const std::vector<Poly>& v) {
  json out = json::array();
  for (const auto& p : v) out.push_back(r.str(p));
  return out;
}

json to_json(const Problem& p, const NormalCochain& nu) {
  json out = json::object();
  for (const auto& [simplex, v] : nu.values) out[p.label(simplex)] = poly_list(site(*p.cover, simplex).ring, v);
  return out;
}

json to_json(const Problem& p, const ClassCochain& c) {
  json out = json::object();
  for (const auto& [simplex, v] : c.values) out[p.label(simplex)] = str(v);
  return out;
}

json to_json(const Problem& p, const H1Verdict& v) {
  json out{{"status", to_string(v.status)},
           {"degree_bound", v.degree_bound},
           {"unknowns", v.unknowns},
           {"equations", v.equations},
           {"witness_verified", v.witness_verified}};
  if (v.exponent > 0) out["exponent"] = v.exponent;
  if (v.normal_witness) out["witness"] = to_json(p, *v.normal_witness);
  if (v.class_witness) out["witness"] = to_json(p, *v.class_witness);
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

int verdict_code(const H1Verdict& v) { return v.status == H1Status::Inconclusive ? 3 : 0; }

Outcome run_groebner(const Flags& f) {
  Problem p = load(f);
  const IdealSpec& spec = p.ideals.at(require(f.ideal, "--ideal"));
  const Ring& r = p.ring(spec.ring);
  GroebnerBasis gb = r.ideal_with(spec.generators);
  Outcome o;
  o.results["basis"] = poly_list(r, gb.gens);
  o.results["unit"] = gb.is_unit();
  QuotientBasis qb = quotient_basis(gb, 10000);
  o.results["finite"] = qb.finite;
  if (qb.finite) {
    json mons = json::array();
    for (const auto& e : qb.monomials) mons.push_back(r.str(Poly::monomial(e)));
    o.results["standard_monomials"] = mons;
    o.results["quotient_dim"] = qb.monomials.size();
  }
  return o;
}

json algebra_json(const ArtinAlgebra& a, int truncation) {
  json basis = json::array();
  for (Index i = 0; i < a.dim(); ++i) basis.push_back(a.str(a.basis_element(i)));
  json kaehler = json::array();
  for (int q = 0; q <= std::min(truncation, a.nvars() + 1); ++q) kaehler.push_back(KaehlerModule(a, q).dim());
  return json{{"variables", a.names()}, {"dim", a.dim()}, {"basis", basis},
              {"nilpotency", a.nilpotency()}, {"omega_dims", kaehler}};
}

Outcome run_artin(const Flags& f) {
  Problem p = load(f);
  Outcome o;
  if (!f.extension.empty()) {
    const SmallExtension& e = p.extension(f.extension);
    o.results["source"] = algebra_json(e.B, p.truncation);
    o.results["target"] = algebra_json(e.A, p.truncation);
    json ker = json::array();
    for (const auto& k : e.kernel) ker.push_back(e.B.str(k));
    o.results["kernel"] = ker;
    o.results["principal"] = e.principal;
    if (e.principal) {
      o.results["eta"] = e.B.str(e.eta);
      o.results["deta_injective"] = differential_injectivity(e);
    }
    return o;
  }
  o.results = algebra_json(p.algebra(require(f.algebra, "--algebra or --extension")), p.truncation);
  return o;
}

Outcome run_hochschild(const Flags& f) {
  Problem p = load(f);
  const ArtinAlgebra& a = p.algebra(require(f.algebra, "--algebra"));
  if (f.max_degree > p.truncation)
    throw Error(ErrorKind::TruncationExceeded, "--max-degree exceeds the truncation");
  BarComplex bar(a, f.max_degree + 1);
  Outcome o;
  json dims = json::array(), weights = json::array(), hkr = json::array();
  for (int n = 0; n <= f.max_degree; ++n) {
    dims.push_back(hh_dim(bar, n));
    json w = json::array();
    if (n + 1 <= 6) {
      for (const auto& piece : weight_split(bar, n)) w.push_back(piece.dim);
    }
    weights.push_back(w);
  }
  for (int l = 1; l <= std::min(f.max_degree, 3); ++l) {
    HkrReport r = hkr_map(bar, l);
    hkr.push_back(json{{"degree", l},
                       {"omega_dim", r.omega_dim},
                       {"weight_dim", r.weight_dim},
                       {"image_rank", r.image_rank},
                       {"injective", r.injective},
                       {"onto_weight", r.onto_weight}});
    if (!r.injective || !r.onto_weight) o.code = 1;
  }
  o.results["hh_dims"] = dims;
  o.results["weights"] = weights;
  o.results["hkr"] = hkr;
  return o;
}

Outcome run_kunneth(const Flags& f) {
  Problem p = load(f);
  const ArtinAlgebra& a = p.algebra(require(f.algebra, "--algebra"));
  const ArtinAlgebra& b = p.algebra(f.algebra2.empty() ? f.algebra : f.algebra2);
  KunnethReport r = kunneth_check(a, b, f.max_degree);
  Outcome o;
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back(json{{"degree", row.degree}, {"lhs", row.lhs}, {"rhs", row.rhs},
                        {"lhs_weights", row.lhs_weights}, {"rhs_weights", row.rhs_weights}, {"equal", row.equal}});
  o.results["rows"] = rows;
  o.results["equal"] = r.equal;
  o.code = r.equal ? 0 : 1;
  return o;
}

Outcome run_koszul(const Flags& f) {
  Problem p = load(f);
  const SequenceSpec& s = p.sequences.at(require(f.sequence, "--sequence"));
  KoszulData k = koszul(s.space, s.elements);
  Outcome o;
  const Ring& r = k.ring();
  json maps = json::array();
  for (int l = 1; l <= k.complex.length(); ++l) {
    json m = json::array();
    const PolyMatrix& M = k.complex.M(l);
    for (Index i = 0; i < M.rows(); ++i) {
      json row = json::array();
      for (Index j = 0; j < M.cols(); ++j) row.push_back(r.str(M(i, j)));
      m.push_back(row);
    }
    maps.push_back(m);
  }
  RegularityVerdict v = regularity_check(k);
  o.results["ranks"] = k.complex.ranks;
  o.results["maps"] = maps;
  o.results["is_complex"] = k.complex.is_complex();
  o.results["regularity"] = json{{"status", to_string(v.status)}, {"method", v.method}};
  if (v.status == Regularity::Refuted) {
    o.results["regularity"]["position"] = v.position;
    o.results["regularity"]["witness"] = r.str(*v.witness);
  }
  json cocycles = json::array();
  for (int q = 1; q <= std::min(k.length(), 2); ++q) {
    FundamentalClass fc = fundamental_class(k.complex, q);
    cocycles.push_back(json{{"degree", q}, {"cocycle", fc.cocycle}});
    if (!fc.cocycle) o.code = 1;
  }
  o.results["fundamental_class"] = cocycles;
  if (v.status == Regularity::Inconclusive) o.code = 3;
  return o;
}

Outcome run_newton(const Flags& f) {
  Problem p = load(f);
  const SequenceSpec& s = p.sequences.at(require(f.sequence, "--sequence"));
  KoszulData k = koszul(s.space, s.elements);
  LocalCohClass c = newton_class(k);
  Outcome o;
  o.results["class"] = str(c);
  o.results["is_zero"] = is_zero(c);
  if (k.ring().has_artin()) o.results["relative"] = str(ext_to_loc(reduce_relative(chern_koszul(k))));
  return o;
}

Outcome run_localcoh(const Flags& f) {
  Problem p = load(f);
  const ClassSpec& cs = p.classes.at(require(f.klass, "--class"));
  const SequenceSpec& s = p.sequences.at(cs.sequence);
  LocalCohModulePtr m = LocalCohModule::make(s.space, s.elements);
  LocalCohClass c = make_class(m, cs.numerator, cs.exponent);
  Outcome o;
  o.results["canonical"] = str(c);
  o.results["exponent"] = c.exponent;
  o.results["is_zero"] = is_zero(c);
  return o;
}

Outcome run_obstruct(const Flags& f) {
  Problem p = load(f);
  const Cover& c = p.require_cover();
  const std::string en = require(f.extension, "--extension");
  const SmallExtension& e = p.extension(en);
  const DeformationSpec& y = p.deformation(require(f.deformation, "--deformation"));
  ObstructionData ob = lift_and_obstruct(c, e, y.deformation);
  Outcome o;
  json lifts = json::object();
  for (size_t i = 0; i < c.patches.size(); ++i)
    lifts[c.patches[i].name] = poly_list(FormSpace::over(c.patches[i].ring, e.B).ring(), ob.lifts[i]);
  o.results["lifts"] = lifts;
  o.results["mu"] = to_json(p, ob.mu);
  o.results["cocycle"] = ob.cocycle;
  if (!ob.cocycle) {
    o.code = 1;
    return o;
  }
  H1Verdict v = cech_h1_test(c, ob.mu, p.degree_bound);
  o.results["verdict"] = to_json(p, v);
  o.code = verdict_code(v);
  return o;
}

Outcome run_semireg(const Flags& f) {
  Problem p = load(f);
  const Cover& c = p.require_cover();
  const std::string en = require(f.extension, "--extension");
  const SmallExtension& e = p.extension(en);
  const DeformationSpec& y = p.deformation(require(f.deformation, "--deformation"));
  Rat g = f.g.empty() ? p.functionals.at(en) : Rat::parse(f.g);
  SemiregReport r = semireg_verify(c, e, y.deformation, g, p.degree_bound);
  Outcome o;
  o.results["g_eta"] = g.str();
  o.results["mu"] = to_json(p, r.obstruction.mu);
  o.results["cocycle"] = r.obstruction.cocycle;
  o.results["left"] = to_json(p, r.left);
  o.results["right"] = to_json(p, r.right);
  o.results["cochain_equal"] = r.cochain_equal;
  o.results["cochain_cocycle"] = r.cochain_cocycle;
  o.results["delta_global"] = to_json(p, r.delta_global);
  o.results["delta_global_zero"] = r.delta_global_zero;
  o.results["verdict"] = to_json(p, r.verdict);
  if (!r.cochain_cocycle) {
    o.code = 1;
  } else if (r.verdict.status == H1Status::Inconclusive) {
    o.code = 3;
  } else if (!r.cochain_equal || !r.delta_global_zero || r.verdict.status != H1Status::Coboundary ||
             !r.verdict.witness_verified || !r.obstruction.cocycle) {
    o.code = 1;
  }
  return o;
}

Outcome run_appendix(const Flags&) {
  ArtinAlgebra eps = ArtinAlgebra::truncated("e", 2);
  AlgebraMorphism aug = AlgebraMorphism::augmentation(eps);
  FiberedProduct fp = fibered_product(aug, aug);
  SMapReport s = s_map_forms(aug, aug, 1);
  Outcome o;
  o.results["fibered_product_dim"] = fp.algebra.dim();
  o.results["omega1_source_dim"] = s.dim_source;
  o.results["omega1_target_dim"] = s.dim_target;
  o.results["rank"] = s.rank;
  o.results["injective"] = s.injective;
  o.results["surjective"] = s.surjective;
  o.results["bijective"] = s.bijective;
  return o;
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::TruncationExceeded: return 3;
    default: return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"obslab: Hochschild and local-cohomology obstruction calculus"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--degree-bound", f.degree_bound, "degree bound D for Cech witness searches")->capture_default_str();
  app.add_option("--truncation", f.truncation, "bar complex truncation N")->capture_default_str();
  app.add_option("--order", f.order, "monomial order")->check(CLI::IsMember({"lex", "degrevlex"}));
  app.add_option("--report", f.report, "write the JSON report to this path");
  app.add_flag("--verbose", f.verbose, "include timing in the report");
  app.set_version_flag("--version", kVersion);

  std::map<std::string, Outcome (*)(const Flags&)> handlers;
  auto sub = [&](const std::string& name, const std::string& help, Outcome (*fn)(const Flags&), bool file = true) {
    CLI::App* s = app.add_subcommand(name, help);
    if (file) s->add_option("file", f.file, "problem file")->required();
    handlers[name] = fn;
    return s;
  };
  sub("groebner", "reduced Groebner basis of an ideal", run_groebner)->add_option("--ideal", f.ideal)->required();
  CLI::App* art = sub("artin", "Artin algebra or small extension data", run_artin);
  art->add_option("--algebra", f.algebra);
  art->add_option("--extension", f.extension);
  CLI::App* hoch = sub("hochschild", "Hochschild homology with weights and HKR", run_hochschild);
  hoch->add_option("--algebra", f.algebra)->required();
  hoch->add_option("--max-degree", f.max_degree)->capture_default_str();
  CLI::App* kun = sub("kunneth", "Kunneth comparison for A (x) B", run_kunneth);
  kun->add_option("--algebra", f.algebra)->required();
  kun->add_option("--algebra2", f.algebra2);
  kun->add_option("--max-degree", f.max_degree)->capture_default_str();
  sub("koszul", "Koszul complex, regularity and fundamental class", run_koszul)->add_option("--sequence", f.sequence)->required();
  sub("newton", "Newton class of a Koszul complex", run_newton)->add_option("--sequence", f.sequence)->required();
  sub("localcoh", "canonical form and zero test of a class", run_localcoh)->add_option("--class", f.klass)->required();
  CLI::App* ob = sub("obstruct", "obstruction cocycle of a deformation", run_obstruct);
  ob->add_option("--extension", f.extension)->required();
  ob->add_option("--deformation", f.deformation)->required();
  CLI::App* sr = sub("semireg", "semi-regularity verification on the cover", run_semireg);
  sr->add_option("--extension", f.extension)->required();
  sr->add_option("--deformation", f.deformation)->required();
  sr->add_option("--g", f.g, "value g(eta) of the functional");
  sub("appendix-check", "fibered product and S-map on k[eps] x_k k[eps]", run_appendix, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  std::string command;
  for (const auto* s : app.get_subcommands()) command = s->get_name();

  json report;
  report["command"] = command;
  json inputs{{"degree_bound", f.degree_bound}, {"truncation", f.truncation}};
  if (!f.file.empty()) inputs["file"] = f.file;
  for (const auto& [k, v] : std::map<std::string, std::string>{{"ideal", f.ideal}, {"algebra", f.algebra},
                                                                {"algebra2", f.algebra2}, {"extension", f.extension},
                                                                {"deformation", f.deformation}, {"sequence", f.sequence},
                                                                {"class", f.klass}, {"order", f.order}, {"g", f.g}})
    if (!v.empty()) inputs[k] = v;
  if (command == "hochschild" || command == "kunneth") inputs["max_degree"] = f.max_degree;
  report["inputs"] = inputs;
  report["tool"] = json{{"name", "obslab"}, {"version", kVersion}};

  int code = 0;
  auto start = std::chrono::steady_clock::now();
  try {
    Outcome o = handlers.at(command)(f);
    report["results"] = o.results;
    code = o.code;
  } catch (const Error& e) {
    report["error"] = json{{"kind", to_string(e.kind())}, {"message", e.what()}};
    code = exit_code_for(e.kind());
    std::cerr << "obslab: " << e.what() << "\n";
  } catch (const std::exception& e) {
    report["error"] = json{{"kind", "Internal"}, {"message", e.what()}};
    code = 2;
    std::cerr << "obslab: " << e.what() << "\n";
  }
  if (f.verbose) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    report["timing"] = json{{"elapsed_ms", ms.count()}};
  }
  report["exit_code"] = code;
  std::string text = report.dump(2) + "\n";
  if (!f.report.empty()) {
    std::ofstream out(f.report);
    if (!out) {
      std::cerr << "obslab: cannot write " << f.report << "\n";
      return 2;
    }
    out << text;
  } else {
    std::cout << text;
  }
  return code;
}
