#include "hpsg/ulf.hpp"

#include <unordered_map>
#include <utility>

#include "hpsg/errors.hpp"

namespace hpsg {

namespace {

constexpr std::string_view kRoleLabels[] = {"ARG1", "ARG2"};

struct Extractor {
  const TypeHierarchy& hier;
  TypeId event;
  TypeId nominal_det;

  std::unordered_map<NodeIdx, std::string> param_of;  // content node -> parameter
  std::vector<UlfTerm> events;
  std::vector<UlfTerm> nominals;
  int next_e = 1;
  int next_x = 1;

  explicit Extractor(const TypeHierarchy& h)
      : hier(h), event(h.require("event")), nominal_det(h.require("nominal_det")) {}

  enum class Kind { event, nominal, opaque };

  [[nodiscard]] auto classify(NodeRef content) const -> Kind {
    auto det = content.get("DET");
    if (!det) return Kind::opaque;
    if (hier.subtype_of(det->type(), event)) return Kind::event;
    if (hier.subtype_of(det->type(), nominal_det)) return Kind::nominal;
    return Kind::opaque;
  }

  auto restriction(NodeRef content, const std::string& path) -> std::pair<NodeRef, std::string> {
    if (!content.get("PARA")) throw UlfError("content at " + path + " has no PARA");
    auto restr = content.get("RESTR");
    if (!restr) throw UlfError("content at " + path + " has no RESTR");
    auto reln = restr->get("RELN");
    if (!reln) throw UlfError("content at " + path + " has no RESTR.RELN");
    return {*restr, std::string(hier.name(reln->type()))};
  }

  auto visit_event(NodeRef content, const std::string& path) -> std::string {
    if (auto it = param_of.find(content.index()); it != param_of.end()) return it->second;
    auto [restr, reln] = restriction(content, path);
    std::string param = "e" + std::to_string(next_e++);
    param_of.emplace(content.index(), param);
    std::size_t slot = events.size();
    events.push_back(UlfTerm{UlfQuant::exists_event, param, std::move(reln), {}});
    std::vector<std::string> args;
    for (std::string_view role : kRoleLabels) {
      if (auto value = restr.get(role)) {
        args.push_back(visit_role(*value, path + ".RESTR." + std::string(role)));
      }
    }
    events[slot].args = std::move(args);  // recursion may have grown `events`
    return param;
  }

  auto visit_nominal(NodeRef content, const std::string& path) -> std::string {
    if (auto it = param_of.find(content.index()); it != param_of.end()) return it->second;
    auto [restr, reln] = restriction(content, path);
    std::string param = "x" + std::to_string(next_x++);
    param_of.emplace(content.index(), param);
    std::size_t slot = nominals.size();
    nominals.push_back(UlfTerm{UlfQuant::nominal, param, std::move(reln), {}});
    std::vector<std::string> args;
    for (std::string_view role : kRoleLabels) {
      if (auto value = restr.get(role)) {
        args.push_back(visit_role(*value, path + ".RESTR." + std::string(role)));
      }
    }
    nominals[slot].args = std::move(args);
    return param;
  }

  // A role filler: event content recurses, nominal content introduces its
  // term once, anything else (an unfilled argument slot) gets a bare fresh
  // parameter with no predication.
  auto visit_role(NodeRef value, const std::string& path) -> std::string {
    switch (classify(value)) {
      case Kind::event:
        return visit_event(value, path);
      case Kind::nominal:
        return visit_nominal(value, path);
      case Kind::opaque:
        break;
    }
    if (auto it = param_of.find(value.index()); it != param_of.end()) return it->second;
    std::string param = "x" + std::to_string(next_x++);
    param_of.emplace(value.index(), param);
    return param;
  }
};

}  // namespace

auto extract_ulf(const FeatureStructure& sign) -> UlfForm {
  auto content = sign.root().get("CONTENT");
  if (!content) throw UlfError("sign has no CONTENT");
  Extractor ex(sign.hierarchy());

  UlfForm form;
  switch (ex.classify(*content)) {
    case Extractor::Kind::event:
      form.root = ex.visit_event(*content, "CONTENT");
      break;
    case Extractor::Kind::nominal:
      form.root = ex.visit_nominal(*content, "CONTENT");
      break;
    case Extractor::Kind::opaque:
      throw UlfError("content at CONTENT has no event or nominal DET");
  }
  form.terms = std::move(ex.events);
  form.terms.insert(form.terms.end(), std::make_move_iterator(ex.nominals.begin()),
                    std::make_move_iterator(ex.nominals.end()));
  return form;
}

auto print_ulf(const UlfForm& form, bool ascii) -> std::string {
  std::string out;
  const char* joiner = ascii ? " & " : " ∧ ";
  for (const UlfTerm& term : form.terms) {
    if (!out.empty()) out += joiner;
    if (term.quant == UlfQuant::exists_event) {
      out += "exists ";
      out += term.param;
      out += ": ";
    }
    out += term.reln;
    out += '(';
    out += term.param;
    for (const std::string& arg : term.args) {
      out += ", ";
      out += arg;
    }
    out += ')';
  }
  return out;
}

}  // namespace hpsg
