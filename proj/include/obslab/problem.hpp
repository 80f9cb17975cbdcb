#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "obslab/artin.hpp"
#include "obslab/cech.hpp"
#include "obslab/local_cohomology.hpp"
#include "obslab/ring.hpp"

namespace obslab {

struct IdealSpec {
  std::string ring;
  std::vector<Poly> generators;
};

/// Sequence over R, or over R (x) A when `algebra` is set.
struct SequenceSpec {
  std::string ring;
  std::string algebra;
  FormSpace space;
  std::vector<Poly> elements;
};

struct ClassSpec {
  std::string sequence;
  PForm numerator;
  int exponent = 1;
};

struct DeformationSpec {
  std::string algebra;
  EmbeddedDeformation deformation;
};

/// A parsed problem file. Tables are keyed by the names used in the file.
struct Problem {
  std::string source;  // path or "<string>"
  MonomialOrder order = MonomialOrder::DegRevLex;
  int degree_bound = 8;
  int truncation = 5;
  std::map<std::string, Ring> rings;
  std::map<std::string, ArtinAlgebra> algebras;
  std::map<std::string, AlgebraMorphism> morphisms;
  std::map<std::string, SmallExtension> extensions;
  std::map<std::string, IdealSpec> ideals;
  std::map<std::string, SequenceSpec> sequences;
  std::map<std::string, ClassSpec> classes;
  std::optional<Cover> cover;
  std::vector<std::string> patch_names;
  std::map<std::string, DeformationSpec> deformations;
  std::map<std::string, Rat> functionals;  // g(eta) per extension, default 1

  const Ring& ring(const std::string& name) const;
  const ArtinAlgebra& algebra(const std::string& name) const;
  const SmallExtension& extension(const std::string& name) const;
  const DeformationSpec& deformation(const std::string& name) const;
  const Cover& require_cover() const;
  /// Simplex label "U0,U1".
  std::string label(const std::vector<int>& simplex) const;
};

struct LoadOptions {
  std::optional<MonomialOrder> order;
  std::optional<int> degree_bound;
  std::optional<int> truncation;
  Index max_algebra_dim = 16;
};

/// ParseError carries "source:line:col" for syntax errors and the JSON path
/// of the offending entry otherwise.
Problem load_problem(const std::string& path, const LoadOptions& opts = {});
Problem parse_problem(const std::string& text, const LoadOptions& opts = {},
                      const std::string& source = "<string>");

/// Form from a list of {"coef": poly, "d": [variable names]} terms.
PForm parse_form(const Ring& ring, const nlohmann::json& terms);

}  // namespace obslab
