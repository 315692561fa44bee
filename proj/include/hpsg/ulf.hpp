#pragma once

#include <string>
#include <vector>

#include "hpsg/feature_structure.hpp"

namespace hpsg {

enum class UlfQuant {
  exists_event,  // existentially quantified event predication
  nominal,       // one-place (plus roles) predication over an individual
};

struct UlfTerm {
  UlfQuant quant = UlfQuant::nominal;
  std::string param;              // e1, e2, ... or x1, x2, ...
  std::string reln;               // relation type name
  std::vector<std::string> args;  // role fillers after the parameter, in role order
};

// A flat logical form: event terms in introduction order, then nominal terms
// in introduction order. `root` is the parameter of the outermost content.
struct UlfForm {
  std::vector<UlfTerm> terms;
  std::string root;
};

// Reads the logical form off a sign's CONTENT. Event contents introduce an
// `e` parameter and recurse through their roles; nominal contents introduce
// an `x` parameter once per shared node; role fillers with no content of
// their own get fresh `x` parameters without a predication. Parameters are
// numbered in traversal order. Throws UlfError when CONTENT is absent or a
// content lacks PARA, RESTR, or RESTR.RELN, naming the offending path.
auto extract_ulf(const FeatureStructure& sign) -> UlfForm;

// Renders e.g. "exists e1: zien(e1, x1, e2) ∧ exists e2: feed(e2, x2, x3)
// ∧ speaker(x1) ∧ ...". `ascii` swaps the connective for " & ".
auto print_ulf(const UlfForm& form, bool ascii = false) -> std::string;

}  // namespace hpsg
