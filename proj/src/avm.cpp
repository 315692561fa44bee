#include "hpsg/avm.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <vector>

#include "avm_internal.hpp"

namespace hpsg::detail {

void Scanner::advance() {
  // skip whitespace and comments
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (c == '\n') {
      ++line_;
      col_ = 1;
      ++pos_;
    } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++col_;
      ++pos_;
    } else if (c == '#' && (pos_ + 1 >= text_.size() ||
                            std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])) == 0)) {
      while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    } else {
      break;
    }
  }

  cur_ = Token{};
  cur_.line = line_;
  cur_.col = col_;
  if (pos_ >= text_.size()) {
    cur_.kind = Tok::End;
    return;
  }

  char c = text_[pos_];
  auto one = [&](Tok k) {
    cur_.kind = k;
    ++pos_;
    ++col_;
  };
  switch (c) {
    case '[': one(Tok::LBracket); return;
    case ']': one(Tok::RBracket); return;
    case '<': one(Tok::LAngle); return;
    case '>': one(Tok::RAngle); return;
    case ',': one(Tok::Comma); return;
    case '|': one(Tok::Pipe); return;
    case '=': one(Tok::Equals); return;
    case ';': one(Tok::Semi); return;
    default: break;
  }

  if (c == '#') {
    ++pos_;
    ++col_;
    std::string name;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_')) {
      name += text_[pos_++];
      ++col_;
    }
    cur_.kind = Tok::Tag;
    cur_.text = std::move(name);
    return;
  }

  if (c == '"') {
    ++pos_;
    ++col_;
    std::string out;
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') {
        throw SyntaxError("unterminated string", cur_.line, cur_.col);
      }
      char d = text_[pos_++];
      ++col_;
      if (d == '"') break;
      if (d == '\\') {
        if (pos_ >= text_.size()) throw SyntaxError("unterminated string", cur_.line, cur_.col);
        out += text_[pos_++];
        ++col_;
      } else {
        out += d;
      }
    }
    cur_.kind = Tok::String;
    cur_.text = std::move(out);
    return;
  }

  if (std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' ||
      static_cast<unsigned char>(c) >= 0x80) {
    std::string out;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(d)) != 0 || d == '_' ||
          static_cast<unsigned char>(d) >= 0x80) {
        out += d;
        ++pos_;
        ++col_;
      } else {
        break;
      }
    }
    cur_.kind = Tok::Ident;
    cur_.text = std::move(out);
    return;
  }

  throw SyntaxError(std::string("unexpected character '") + c + "'", line_, col_);
}

auto is_label_ident(std::string_view text) -> bool {
  if (text.empty() || std::isupper(static_cast<unsigned char>(text[0])) == 0) return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    return std::isupper(static_cast<unsigned char>(c)) != 0 ||
           std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '_';
  });
}

auto AvmParser::tag_node(const std::string& name) -> NodeIdx {
  auto it = tags_.find(name);
  if (it != tags_.end()) return it->second;
  NodeIdx n = gb_.add(gb_.hierarchy()->top());
  tags_.emplace(name, n);
  return n;
}

auto AvmParser::parse_value() -> NodeIdx {
  const Token& t = sc_.peek();
  switch (t.kind) {
    case Tok::Tag: {
      Token tag = sc_.next();
      NodeIdx node = tag_node(tag.text);
      if (sc_.peek().kind == Tok::Equals) {
        sc_.next();
        NodeIdx val = parse_value();
        UnifyFailure why;
        if (!gb_.unify(node, val, &why)) {
          throw SyntaxError("tag #" + tag.text + " clashes: " + why.to_string(), tag.line, tag.col);
        }
      }
      return gb_.resolve(node);
    }
    case Tok::Ident: {
      Token id = sc_.next();
      if (is_label_ident(id.text)) {
        throw SyntaxError("expected a value, got label " + id.text, id.line, id.col);
      }
      TypeId type = gb_.hierarchy()->by_name(id.text);
      if (!type.valid()) {
        throw SyntaxError("unknown type \"" + id.text + "\"", id.line, id.col);
      }
      return gb_.add(type);
    }
    case Tok::String: {
      Token s = sc_.next();
      return gb_.add_word(Symbol::intern(s.text));
    }
    case Tok::LBracket:
      sc_.next();
      return parse_avm_body();
    case Tok::LAngle:
      sc_.next();
      return parse_list();
    default:
      sc_.fail("expected a value");
  }
}

auto AvmParser::parse_avm_body() -> NodeIdx {
  TypeId type = gb_.hierarchy()->top();
  if (sc_.peek().kind == Tok::Ident && !is_label_ident(sc_.peek().text)) {
    Token id = sc_.next();
    type = gb_.hierarchy()->by_name(id.text);
    if (!type.valid()) {
      throw SyntaxError("unknown type \"" + id.text + "\"", id.line, id.col);
    }
  }
  NodeIdx node = gb_.add(type);
  while (sc_.peek().kind == Tok::Ident) {
    Token label = sc_.next();
    if (!is_label_ident(label.text)) {
      throw SyntaxError("expected an ALL-CAPS label, got \"" + label.text + "\"", label.line,
                        label.col);
    }
    Symbol sym = Symbol::intern(label.text);
    if (gb_.get(node, sym)) {
      throw SyntaxError("duplicate label " + label.text, label.line, label.col);
    }
    NodeIdx val = parse_value();
    gb_.set_arc(node, sym, val);
  }
  sc_.expect(Tok::RBracket, "']'");
  return node;
}

auto AvmParser::parse_list() -> NodeIdx {
  if (sc_.peek().kind == Tok::RAngle) {
    sc_.next();
    return gb_.add(gb_.hierarchy()->elist_type());
  }
  std::vector<NodeIdx> elems;
  while (true) {
    elems.push_back(parse_value());
    if (sc_.peek().kind == Tok::Comma) {
      sc_.next();
      continue;
    }
    break;
  }
  NodeIdx tail = kNoNode;
  if (sc_.peek().kind == Tok::Pipe) {
    Token pipe = sc_.next();
    tail = parse_value();
    // The tail must end up a list; constrain it now so forward tag
    // references still get checked once bound.
    NodeIdx want = gb_.add(gb_.hierarchy()->list_type());
    UnifyFailure why;
    if (!gb_.unify(tail, want, &why)) {
      throw SyntaxError("list tail is not a list: " + why.to_string(), pipe.line, pipe.col);
    }
  }
  sc_.expect(Tok::RAngle, "'>'");
  if (tail == kNoNode) return gb_.add_list(elems);
  return gb_.add_list(elems, tail);
}

}  // namespace hpsg::detail

namespace hpsg {

auto read_avm(std::string_view text, std::shared_ptr<const TypeHierarchy> hier)
    -> FeatureStructure {
  detail::Scanner sc(text);
  GraphBuilder gb(std::move(hier));
  std::unordered_map<std::string, NodeIdx> tags;
  detail::AvmParser parser(gb, sc, tags);
  NodeIdx root = parser.parse_value();
  if (sc.peek().kind != detail::Tok::End) sc.fail("trailing input after value");
  UnifyFailure why;
  NodeIdx roots[] = {root};
  auto fz = gb.freeze(roots, &why);
  if (!fz) {
    throw SyntaxError("structure is cyclic (" + why.to_string() + ")", 1, 1);
  }
  return FeatureStructure(fz->graph, fz->roots[0]);
}

namespace {

auto label_rank(std::string_view name) -> int {
  static const std::map<std::string_view, int> ranks = {
      {"PHON", 0}, {"HEAD", 1}, {"SUBJ", 2},    {"COMPS", 3},
      {"GOV", 4},  {"CONTENT", 5}, {"LEX", 6},
  };
  auto it = ranks.find(name);
  return it == ranks.end() ? 100 : it->second;
}

struct Printer {
  const Graph& g;
  const TypeHierarchy& h;
  std::vector<bool> needs_tag;
  std::vector<int> tag_of;
  int next_tag = 1;
  std::string out;

  explicit Printer(const Graph& graph)
      : g(graph), h(*graph.hierarchy()), needs_tag(graph.size(), false), tag_of(graph.size(), 0) {}

  auto sorted_arcs(NodeIdx n) -> std::vector<Arc> {
    std::vector<Arc> arcs(g.node(n).arcs.begin(), g.node(n).arcs.end());
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
      int ra = label_rank(a.label.str());
      int rb = label_rank(b.label.str());
      if (ra != rb) return ra < rb;
      return a.label.str() < b.label.str();
    });
    return arcs;
  }

  void mark_shared(NodeIdx root) {
    std::vector<int> indeg(g.size(), 0);
    std::vector<bool> seen(g.size(), false);
    std::vector<NodeIdx> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
      NodeIdx n = stack.back();
      stack.pop_back();
      for (const Arc& a : g.node(n).arcs) {
        ++indeg[a.target];
        if (!seen[a.target]) {
          seen[a.target] = true;
          stack.push_back(a.target);
        }
      }
    }
    for (std::size_t i = 0; i < g.size(); ++i) needs_tag[i] = indeg[i] >= 2;
  }

  auto is_proper_cell(NodeIdx n) -> bool {
    const GraphNode& node = g.node(n);
    return node.type == h.nelist_type() && node.find(Symbol::intern("FIRST")) != nullptr &&
           node.find(Symbol::intern("REST")) != nullptr;
  }

  void value(NodeIdx n) {
    if (needs_tag[n]) {
      if (tag_of[n] != 0) {
        out += '#';
        out += std::to_string(tag_of[n]);
        return;
      }
      tag_of[n] = next_tag++;
      out += '#';
      out += std::to_string(tag_of[n]);
      out += '=';
      body(n);
      return;
    }
    const GraphNode& node = g.node(n);
    if (!node.word.valid() && node.arcs.empty() && node.type != h.top() &&
        node.type != h.elist_type()) {
      out += h.name(node.type);  // bare atomic value
      return;
    }
    body(n);
  }

  void body(NodeIdx n) {
    const GraphNode& node = g.node(n);
    if (node.word.valid()) {
      out += '"';
      for (char c : node.word.str()) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += '"';
      return;
    }
    if (node.type == h.elist_type()) {
      out += "<>";
      return;
    }
    if (is_proper_cell(n)) {
      list_form(n);
      return;
    }
    out += '[';
    bool space = false;
    if (node.type != h.top()) {
      out += h.name(node.type);
      space = true;
    }
    for (const Arc& a : sorted_arcs(n)) {
      if (space) out += ' ';
      out += a.label.str();
      out += ' ';
      value(a.target);
      space = true;
    }
    out += ']';
  }

  void list_form(NodeIdx n) {
    const Symbol first = Symbol::intern("FIRST");
    const Symbol rest = Symbol::intern("REST");
    out += "< ";
    NodeIdx cur = n;
    while (true) {
      value(g.node(cur).find(first)->target);
      NodeIdx r = g.node(cur).find(rest)->target;
      if (!needs_tag[r] && is_proper_cell(r)) {
        out += ", ";
        cur = r;
        continue;
      }
      if (!needs_tag[r] && g.node(r).type == h.elist_type()) {
        out += " >";
        return;
      }
      out += " | ";
      value(r);
      out += " >";
      return;
    }
  }
};

}  // namespace

auto print_avm(NodeRef root) -> std::string {
  Printer p(*root.graph());
  p.mark_shared(root.index());
  p.value(root.index());
  return std::move(p.out);
}

auto print_avm(const FeatureStructure& fs) -> std::string { return print_avm(fs.root()); }

}  // namespace hpsg
