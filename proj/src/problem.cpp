#include "obslab/problem.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "obslab/error.hpp"

namespace obslab {

using nlohmann::json;

namespace {

const std::set<std::string> kTopLevel = {"format",   "field",     "options", "rings",  "algebras", "morphisms",
                                         "extensions", "ideals", "sequences", "classes", "cover", "deformations"};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, "at " + where + ": " + what);
}

/// Runs `body`, prefixing any library error with the JSON path.
template <class F>
void at(const std::string& where, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    std::string msg = e.what();
    if (msg.rfind("ParseError: at ", 0) == 0) throw;
    throw Error(e.kind(), "at " + where + ": " + msg.substr(msg.find(": ") + 2));
  } catch (const json::exception& e) {
    fail(where, e.what());
  }
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing key \"" + key + "\"");
  return *it;
}

std::vector<std::string> strings(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) fail(where, "expected an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::string text(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  fail(where, "expected a string");
}

std::vector<Poly> polys(const Ring& ring, const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of polynomials");
  std::vector<Poly> out;
  for (const auto& x : v) out.push_back(ring.reduce(ring.parse(text(x, where))));
  return out;
}

MonomialOrder parse_order(const std::string& s, const std::string& where) {
  if (s == "degrevlex") return MonomialOrder::DegRevLex;
  if (s == "lex") return MonomialOrder::Lex;
  fail(where, "unknown monomial order \"" + s + "\"");
}

std::pair<size_t, size_t> line_col(const std::string& text, size_t byte) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

int patch_index(const Problem& p, const std::string& name, const std::string& where) {
  for (size_t i = 0; i < p.patch_names.size(); ++i)
    if (p.patch_names[i] == name) return static_cast<int>(i);
  fail(where, "unknown patch \"" + name + "\"");
}

void check_disjoint(const Ring& r, const ArtinAlgebra& a, const std::string& where) {
  for (const auto& n : a.names())
    if (r.index_of(n) >= 0) fail(where, "algebra variable \"" + n + "\" clashes with a ring variable");
}

}  // namespace

const Ring& Problem::ring(const std::string& name) const {
  auto it = rings.find(name);
  if (it == rings.end()) throw Error(ErrorKind::InvalidInput, "unknown ring \"" + name + "\"");
  return it->second;
}

const ArtinAlgebra& Problem::algebra(const std::string& name) const {
  auto it = algebras.find(name);
  if (it == algebras.end()) throw Error(ErrorKind::InvalidInput, "unknown algebra \"" + name + "\"");
  return it->second;
}

const SmallExtension& Problem::extension(const std::string& name) const {
  auto it = extensions.find(name);
  if (it == extensions.end()) throw Error(ErrorKind::InvalidInput, "unknown extension \"" + name + "\"");
  return it->second;
}

const DeformationSpec& Problem::deformation(const std::string& name) const {
  auto it = deformations.find(name);
  if (it == deformations.end()) throw Error(ErrorKind::InvalidInput, "unknown deformation \"" + name + "\"");
  return it->second;
}

const Cover& Problem::require_cover() const {
  if (!cover) throw Error(ErrorKind::InvalidInput, "problem has no cover");
  return *cover;
}

std::string Problem::label(const std::vector<int>& simplex) const {
  std::string out;
  for (int i : simplex) {
    if (!out.empty()) out += ",";
    out += patch_names.at(static_cast<size_t>(i));
  }
  return out;
}

PForm parse_form(const Ring& ring, const json& terms) {
  if (!terms.is_array()) throw Error(ErrorKind::ParseError, "a form is an array of terms");
  std::optional<PForm> out;
  for (const auto& t : terms) {
    if (!t.is_object()) throw Error(ErrorKind::ParseError, "a form term is an object");
    Poly c = ring.parse(t.contains("coef") ? text(t.at("coef"), "coef") : std::string("1"));
    PForm w(c);
    if (t.contains("d"))
      for (const auto& name : strings(t.at("d"), "d")) {
        int v = ring.index_of(name);
        if (v < 0) throw Error(ErrorKind::ParseError, "unknown variable \"" + name + "\" in a differential");
        w = w * dvar(ring, v);
      }
    if (out && out->degree() != w.degree() && !w.is_zero() && !out->is_zero())
      throw Error(ErrorKind::ParseError, "form terms of different degree");
    out = out ? *out + w : w;
  }
  if (!out) return PForm::zero(0);
  return reduce(ring, *out);
}

Problem load_problem(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str(), opts, path);
}

Problem parse_problem(const std::string& src, const LoadOptions& opts, const std::string& source) {
  json doc;
  try {
    doc = json::parse(src);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(src, e.byte);
    throw Error(ErrorKind::ParseError, source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                           ": " + e.what());
  }
  Problem p;
  p.source = source;
  try {
    if (!doc.is_object()) fail("/", "a problem file is a JSON object");
    for (const auto& [k, v] : doc.items())
      if (!kTopLevel.count(k)) fail("/", "unknown key \"" + k + "\"");
    if (doc.contains("format") && doc["format"] != "obslab-problem/1")
      fail("/format", "expected \"obslab-problem/1\"");
    if (doc.contains("field") && doc["field"] != "QQ") fail("/field", "only QQ is supported");
    if (doc.contains("options")) {
      const json& o = doc["options"];
      at("/options", [&] {
        if (o.contains("order")) p.order = parse_order(o["order"].get<std::string>(), "/options/order");
        if (o.contains("degree_bound")) p.degree_bound = o["degree_bound"].get<int>();
        if (o.contains("truncation")) p.truncation = o["truncation"].get<int>();
      });
    }
    if (opts.order) p.order = *opts.order;
    if (opts.degree_bound) p.degree_bound = *opts.degree_bound;
    if (opts.truncation) p.truncation = *opts.truncation;

    if (doc.contains("rings"))
      for (const auto& [name, spec] : doc["rings"].items()) {
        std::string where = "/rings/" + name;
        at(where, [&] {
          Ring r = Ring::polynomial(strings(field(spec, "vars", where), where + "/vars"), p.order);
          if (spec.contains("invert"))
            for (const auto& inv : spec["invert"]) {
              std::string u = field(inv, "name", where + "/invert").get<std::string>();
              Poly g = r.parse(text(field(inv, "element", where + "/invert"), where + "/invert"));
              r = r.localized(g, u);
            }
          p.rings.emplace(name, r);
        });
      }

    auto add_algebra = [&](const std::string& name, const ArtinAlgebra& a, const std::string& where) {
      if (a.dim() > opts.max_algebra_dim)
        throw Error(ErrorKind::FeasibilityExceeded, "algebra dimension " +
                                                        std::to_string(a.dim()) + " exceeds the cap " +
                                                        std::to_string(opts.max_algebra_dim));
      if (!p.algebras.emplace(name, a).second) fail(where, "algebra \"" + name + "\" defined twice");
    };
    if (doc.contains("algebras"))
      for (const auto& [name, spec] : doc["algebras"].items()) {
        std::string where = "/algebras/" + name;
        at(where, [&] {
          std::vector<std::string> rels = spec.contains("relations")
                                              ? strings(spec["relations"], where + "/relations")
                                              : std::vector<std::string>{};
          add_algebra(name, ArtinAlgebra::make(strings(field(spec, "vars", where), where + "/vars"), rels, p.order),
                      where);
        });
      }
    if (doc.contains("extensions"))
      for (const auto& [name, spec] : doc["extensions"].items()) {
        if (spec.contains("morphism")) continue;
        std::string where = "/extensions/" + name;
        at(where, [&] {
          SmallExtension e;
          if (spec.contains("morphism")) {
            auto it = p.morphisms.find(spec["morphism"].get<std::string>());
            if (it == p.morphisms.end()) fail(where, "unknown morphism");
            e = small_extension(it->second);
          } else {
            const ArtinAlgebra& b = p.algebra(field(spec, "source", where).get<std::string>());
            e = small_extension(b, b.parse(text(field(spec, "eta", where), where + "/eta")));
            if (spec.contains("target")) add_algebra(spec["target"].get<std::string>(), e.A, where + "/target");
          }
          p.functionals[name] = spec.contains("g") ? Rat::parse(text(spec["g"], where + "/g")) : Rat(1);
          p.extensions.emplace(name, std::move(e));
        });
      }
    if (doc.contains("morphisms"))
      for (const auto& [name, spec] : doc["morphisms"].items()) {
        std::string where = "/morphisms/" + name;
        at(where, [&] {
          const ArtinAlgebra& s = p.algebra(field(spec, "source", where).get<std::string>());
          const ArtinAlgebra& t = p.algebra(field(spec, "target", where).get<std::string>());
          std::vector<Poly> images = polys(t.ring(), field(spec, "images", where), where + "/images");
          p.morphisms.emplace(name, AlgebraMorphism::make(s, t, images));
        });
      }
    if (doc.contains("extensions"))
      for (const auto& [name, spec] : doc["extensions"].items()) {
        if (!spec.contains("morphism")) continue;
        std::string where = "/extensions/" + name;
        at(where, [&] {
          SmallExtension e;
          if (spec.contains("morphism")) {
            auto it = p.morphisms.find(spec["morphism"].get<std::string>());
            if (it == p.morphisms.end()) fail(where, "unknown morphism");
            e = small_extension(it->second);
          } else {
            const ArtinAlgebra& b = p.algebra(field(spec, "source", where).get<std::string>());
            e = small_extension(b, b.parse(text(field(spec, "eta", where), where + "/eta")));
            if (spec.contains("target")) add_algebra(spec["target"].get<std::string>(), e.A, where + "/target");
          }
          p.functionals[name] = spec.contains("g") ? Rat::parse(text(spec["g"], where + "/g")) : Rat(1);
          p.extensions.emplace(name, std::move(e));
        });
      }
    if (doc.contains("ideals"))
      for (const auto& [name, spec] : doc["ideals"].items()) {
        std::string where = "/ideals/" + name;
        at(where, [&] {
          IdealSpec s;
          s.ring = field(spec, "ring", where).get<std::string>();
          s.generators = polys(p.ring(s.ring), field(spec, "generators", where), where + "/generators");
          p.ideals.emplace(name, std::move(s));
        });
      }
    if (doc.contains("sequences"))
      for (const auto& [name, spec] : doc["sequences"].items()) {
        std::string where = "/sequences/" + name;
        at(where, [&] {
          SequenceSpec s;
          s.ring = field(spec, "ring", where).get<std::string>();
          const Ring& r = p.ring(s.ring);
          if (spec.contains("algebra")) {
            s.algebra = spec["algebra"].get<std::string>();
            check_disjoint(r, p.algebra(s.algebra), where);
            s.space = FormSpace::over(r, p.algebra(s.algebra));
          } else {
            s.space = FormSpace(r, ArtinAlgebra::field());
          }
          s.elements = polys(s.space.ring(), field(spec, "elements", where), where + "/elements");
          p.sequences.emplace(name, std::move(s));
        });
      }
    if (doc.contains("classes"))
      for (const auto& [name, spec] : doc["classes"].items()) {
        std::string where = "/classes/" + name;
        at(where, [&] {
          ClassSpec c;
          c.sequence = field(spec, "sequence", where).get<std::string>();
          auto it = p.sequences.find(c.sequence);
          if (it == p.sequences.end()) fail(where, "unknown sequence \"" + c.sequence + "\"");
          c.numerator = parse_form(it->second.space.ring(), field(spec, "numerator", where));
          c.exponent = spec.contains("exponent") ? spec["exponent"].get<int>() : 1;
          if (c.exponent < 1) fail(where, "exponent must be positive");
          p.classes.emplace(name, std::move(c));
        });
      }
    if (doc.contains("cover")) {
      const json& cv = doc["cover"];
      at("/cover", [&] {
        std::vector<Patch> patches;
        for (const auto& pt : field(cv, "patches", "/cover")) {
          Patch x;
          x.name = field(pt, "name", "/cover/patches").get<std::string>();
          x.ring = p.ring(field(pt, "ring", "/cover/patches").get<std::string>());
          x.f = polys(x.ring, field(pt, "sequence", "/cover/patches"), "/cover/patches/" + x.name);
          for (const auto& n : p.patch_names)
            if (n == x.name) fail("/cover/patches", "patch \"" + x.name + "\" listed twice");
          p.patch_names.push_back(x.name);
          patches.push_back(std::move(x));
        }
        std::vector<Overlap> overlaps;
        if (cv.contains("overlaps"))
          for (const auto& ov : cv["overlaps"]) {
            std::vector<std::string> names = strings(field(ov, "patches", "/cover/overlaps"), "/cover/overlaps");
            if (names.size() != 2) fail("/cover/overlaps", "an overlap joins two patches");
            std::string where = "/cover/overlaps/" + names[0] + "," + names[1];
            int a = patch_index(p, names[0], where), b = patch_index(p, names[1], where);
            if (a > b) std::swap(a, b);
            Overlap o;
            o.i = a;
            o.j = b;
            o.ring = p.ring(field(ov, "ring", where).get<std::string>());
            const json& maps = field(ov, "maps", where);
            auto make = [&](int k) {
              const std::string& pn = p.patch_names[static_cast<size_t>(k)];
              return RingMap::make(patches[static_cast<size_t>(k)].ring, o.ring,
                                   polys(o.ring, field(maps, pn, where + "/maps"), where + "/maps/" + pn));
            };
            o.from_i = make(a);
            o.from_j = make(b);
            overlaps.push_back(std::move(o));
          }
        std::vector<Triple> triples;
        std::vector<std::tuple<std::vector<int>, std::string, json>> raw;
        if (cv.contains("triples"))
          for (const auto& tr : cv["triples"]) {
            std::vector<std::string> names = strings(field(tr, "patches", "/cover/triples"), "/cover/triples");
            if (names.size() != 3) fail("/cover/triples", "a triple joins three patches");
            std::vector<int> idx;
            for (const auto& n : names) idx.push_back(patch_index(p, n, "/cover/triples"));
            std::sort(idx.begin(), idx.end());
            raw.emplace_back(idx, field(tr, "ring", "/cover/triples").get<std::string>(), field(tr, "maps", "/cover/triples"));
          }
        Cover pre = make_cover(patches, overlaps);
        for (const auto& [idx, rname, maps] : raw) {
          std::string where = "/cover/triples/" + p.label(idx);
          Triple t;
          t.i = idx[0];
          t.j = idx[1];
          t.k = idx[2];
          t.ring = p.ring(rname);
          auto make = [&](int a, int b) {
            std::string key = p.label({a, b});
            return RingMap::make(pre.overlap(a, b).ring, t.ring,
                                 polys(t.ring, field(maps, key, where + "/maps"), where + "/maps/" + key));
          };
          t.from_ij = make(t.i, t.j);
          t.from_ik = make(t.i, t.k);
          t.from_jk = make(t.j, t.k);
          triples.push_back(std::move(t));
        }
        p.cover = make_cover(std::move(patches), std::move(overlaps), std::move(triples));
      });
    }
    if (doc.contains("deformations"))
      for (const auto& [name, spec] : doc["deformations"].items()) {
        std::string where = "/deformations/" + name;
        at(where, [&] {
          const Cover& c = p.require_cover();
          DeformationSpec d;
          if (spec.contains("base_change")) {
            const json& bc = spec["base_change"];
            const DeformationSpec& src = p.deformation(field(bc, "deformation", where).get<std::string>());
            auto it = p.morphisms.find(field(bc, "morphism", where).get<std::string>());
            if (it == p.morphisms.end()) fail(where, "unknown morphism");
            d.deformation = base_change(c, src.deformation, it->second);
            d.algebra.clear();
            for (const auto& [an, a] : p.algebras)
              if (a.names() == it->second.target().names() && a.dim() == it->second.target().dim()) d.algebra = an;
          } else {
            d.algebra = field(spec, "algebra", where).get<std::string>();
            const ArtinAlgebra& a = p.algebra(d.algebra);
            d.deformation.algebra = a;
            const json& seqs = field(spec, "sequences", where);
            for (size_t i = 0; i < c.patches.size(); ++i) {
              const Patch& pt = c.patches[i];
              check_disjoint(pt.ring, a, where);
              FormSpace s = FormSpace::over(pt.ring, a);
              d.deformation.f.push_back(polys(s.ring(), field(seqs, pt.name, where + "/sequences"),
                                              where + "/sequences/" + pt.name));
            }
            validate_deformation(c, d.deformation);
          }
          p.deformations.emplace(name, std::move(d));
        });
      }
  } catch (const Error& e) {
    std::string msg = e.what();
    throw Error(e.kind(), source + ": " + msg.substr(msg.find(": ") + 2));
  }
  return p;
}

}  // namespace obslab
