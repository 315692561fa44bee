#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "hpsg/feature_structure.hpp"

namespace hpsg {

// Parses one AVM literal over the given hierarchy, e.g.
//
//   [sign PHON < "zag" > HEAD [MAJOR v VFORM fin] SUBJ < #1=[] > COMPS #1]
//
// Bracketed nodes may start with a lowercase type name (omitted means `top`);
// ALL-CAPS identifiers are arc labels. Values are nested literals, bare type
// names, quoted word forms, tags (`#1`, `#L`), tag bindings (`#1=...`), or
// lists (`<>`, `< a, b >`, `< a | #tail >`). Repeated bindings of one tag
// unify; unknown labels are accepted, unknown types are not.
//
// Throws SyntaxError (with position) on malformed input, clashing tag
// bindings, or cyclic structure.
auto read_avm(std::string_view text, std::shared_ptr<const TypeHierarchy> hier)
    -> FeatureStructure;

// Canonical print of a structure; re-reading yields an isomorphic structure.
// Arcs print in the order PHON, HEAD, SUBJ, COMPS, GOV, CONTENT, LEX, then
// alphabetically; shared nodes get `#n=` at first mention, `#n` after, with
// numbers assigned in traversal order. The output is identical for
// isomorphic structures, which is what makes it usable as a chart signature.
auto print_avm(NodeRef root) -> std::string;
auto print_avm(const FeatureStructure& fs) -> std::string;

}  // namespace hpsg
