//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltext/molgraph/smiles.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace moltext::molgraph {

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::optional<Element> lookup_element(std::string_view symbol) {
  for (int i = 0; i < kElementCount; ++i) {
    const auto e = static_cast<Element>(i);
    if (symbol == element_symbol(e)) return e;
  }
  return std::nullopt;
}

std::optional<Element> lookup_aromatic(char c) {
  switch (c) {
    case 'b': return Element::B;
    case 'c': return Element::C;
    case 'n': return Element::N;
    case 'o': return Element::O;
    case 'p': return Element::P;
    case 's': return Element::S;
    default: return std::nullopt;
  }
}

/// Smallest permitted valence >= bonded total, or nullopt when the atom is
/// already over every permitted valence.
std::optional<int> fill_target(Element e, double bonded) {
  for (int v : default_valences(e)) {
    if (static_cast<double>(v) >= bonded) return v;
  }
  return std::nullopt;
}

struct PendingBond {
  BondOrder order = BondOrder::Single;
  std::size_t position = 0;
};

struct RingOpening {
  std::uint32_t atom = 0;
  std::optional<BondOrder> order;
  std::size_t position = 0;
};

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  MolecularGraph run() {
    if (text_.empty()) throw SmilesError("empty SMILES", 0);
    while (pos_ < text_.size()) {
      step();
    }
    finish();
    return std::move(graph_);
  }

private:
  [[noreturn]] void fail(const std::string& message) const { throw SmilesError(message, pos_); }

  char peek() const { return text_[pos_]; }
  bool done() const { return pos_ >= text_.size(); }

  void step() {
    const char c = peek();
    if (is_upper(c)) {
      parse_bare_atom();
    } else if (lookup_aromatic(c)) {
      add_atom(*lookup_aromatic(c), true, 0, -1, pos_);
      ++pos_;
    } else if (c == '[') {
      parse_bracket_atom();
    } else if (c == '-' || c == '=' || c == '#' || c == ':') {
      if (pending_) fail("two bond symbols in a row");
      pending_ = PendingBond{bond_from_symbol(c), pos_};
      ++pos_;
    } else if (c == '(') {
      if (prev_ < 0) fail("branch with no preceding atom");
      if (pending_) fail("bond symbol before branch open");
      stack_.push_back(prev_);
      ++pos_;
    } else if (c == ')') {
      if (stack_.empty()) fail("unmatched ')'");
      if (pending_) fail("dangling bond symbol before ')'");
      prev_ = stack_.back();
      stack_.pop_back();
      ++pos_;
    } else if (is_digit(c) || c == '%') {
      parse_ring_closure();
    } else if (c == '.') {
      if (pending_) fail("bond symbol before '.'");
      if (prev_ < 0) fail("'.' with no preceding atom");
      prev_ = -1;
      ++pos_;
    } else if (c == '@' || c == '/' || c == '\\') {
      fail("unsupported feature: stereochemistry marker");
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
  }

  static BondOrder bond_from_symbol(char c) {
    switch (c) {
      case '=': return BondOrder::Double;
      case '#': return BondOrder::Triple;
      case ':': return BondOrder::Aromatic;
      default: return BondOrder::Single;
    }
  }

  void parse_bare_atom() {
    const std::size_t start = pos_;
    std::string symbol(1, text_[pos_]);
    if (pos_ + 1 < text_.size() && (text_[pos_ + 1] == 'l' || text_[pos_ + 1] == 'r')) {
      const std::string two = symbol + text_[pos_ + 1];
      if (two == "Cl" || two == "Br") symbol = two;
    }
    const auto element = lookup_element(symbol);
    if (!element) fail("unsupported element '" + symbol + "'");
    if (*element == Element::H) fail("bare H is not part of the organic subset; write [H]");
    pos_ += symbol.size();
    add_atom(*element, false, 0, -1, start);
  }

  void parse_bracket_atom() {
    const std::size_t start = pos_;
    ++pos_;  // '['
    if (done()) fail("unterminated bracket atom");
    if (is_digit(peek())) fail("unsupported feature: isotope");
    if (peek() == '@') fail("unsupported feature: stereochemistry marker");

    Element element;
    bool aromatic = false;
    if (is_lower(peek())) {
      std::string symbol(1, peek());
      if (pos_ + 1 < text_.size() && is_lower(text_[pos_ + 1])) symbol += text_[pos_ + 1];
      const auto aromatic_element = symbol.size() == 1 ? lookup_aromatic(symbol[0]) : std::nullopt;
      if (!aromatic_element) fail("unsupported element '" + symbol + "'");
      element = *aromatic_element;
      aromatic = true;
      ++pos_;
    } else if (is_upper(peek())) {
      std::string symbol(1, peek());
      // Any lowercase letter after an uppercase one inside brackets belongs
      // to the element symbol ([Na], [Sc], ...).
      if (pos_ + 1 < text_.size() && is_lower(text_[pos_ + 1])) symbol += text_[pos_ + 1];
      const auto looked_up = lookup_element(symbol);
      if (!looked_up) fail("unsupported element '" + symbol + "'");
      element = *looked_up;
      pos_ += symbol.size();
    } else {
      fail("expected element symbol in bracket atom");
    }

    int explicit_h = 0;
    if (!done() && peek() == 'H') {
      ++pos_;
      explicit_h = 1;
      if (!done() && is_digit(peek())) {
        explicit_h = parse_number();
      }
    }

    int charge = 0;
    if (!done() && (peek() == '+' || peek() == '-')) {
      const char sign_char = peek();
      const int sign = sign_char == '+' ? 1 : -1;
      ++pos_;
      if (!done() && is_digit(peek())) {
        charge = sign * parse_number();
      } else {
        charge = sign;
        while (!done() && peek() == sign_char) {
          charge += sign;
          ++pos_;
        }
      }
    }

    if (done() || peek() != ']') {
      if (!done() && peek() == '@') fail("unsupported feature: stereochemistry marker");
      fail("expected ']' in bracket atom");
    }
    ++pos_;
    add_atom(element, aromatic, charge, explicit_h, start);
  }

  int parse_number() {
    int value = 0;
    while (!done() && is_digit(peek())) {
      value = value * 10 + (peek() - '0');
      ++pos_;
    }
    return value;
  }

  void parse_ring_closure() {
    const std::size_t start = pos_;
    if (prev_ < 0) fail("ring closure with no preceding atom");
    int digit;
    if (peek() == '%') {
      if (pos_ + 2 >= text_.size() || !is_digit(text_[pos_ + 1]) || !is_digit(text_[pos_ + 2])) {
        fail("'%' ring closure needs two digits");
      }
      digit = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      digit = peek() - '0';
      ++pos_;
    }

    std::optional<BondOrder> order;
    if (pending_) {
      order = pending_->order;
      pending_.reset();
    }

    const auto current = static_cast<std::uint32_t>(prev_);
    auto open = open_rings_.find(digit);
    if (open == open_rings_.end()) {
      open_rings_[digit] = RingOpening{current, order, start};
      return;
    }

    const RingOpening opening = open->second;
    open_rings_.erase(open);
    if (opening.atom == current) fail("ring closure bonds an atom to itself");
    if (opening.order && order && *opening.order != *order) {
      fail("conflicting bond symbols on ring closure");
    }
    const auto resolved = opening.order ? opening.order : order;
    add_bond(opening.atom, current, resolved, start);
  }

  void add_atom(Element element, bool aromatic, int charge, int explicit_h, std::size_t position) {
    Atom atom;
    atom.element = element;
    atom.aromatic = aromatic;
    atom.formal_charge = charge;
    atom.implicit_h = explicit_h >= 0 ? explicit_h : 0;
    const auto index = static_cast<std::uint32_t>(graph_.atoms.size());
    graph_.atoms.push_back(atom);
    atom_positions_.push_back(position);
    needs_fill_.push_back(explicit_h < 0);

    if (prev_ >= 0) {
      std::optional<BondOrder> order;
      if (pending_) {
        order = pending_->order;
        pending_.reset();
      }
      add_bond(static_cast<std::uint32_t>(prev_), index, order, position);
    }
    prev_ = static_cast<std::int64_t>(index);
  }

  void add_bond(std::uint32_t u, std::uint32_t v, std::optional<BondOrder> order,
                std::size_t position) {
    if (graph_.find_bond(u, v)) {
      throw SmilesError("duplicate bond between atoms", position);
    }
    BondOrder resolved;
    if (order) {
      resolved = *order;
    } else {
      const bool both_aromatic = graph_.atoms[u].aromatic && graph_.atoms[v].aromatic;
      resolved = both_aromatic ? BondOrder::Aromatic : BondOrder::Single;
    }
    graph_.bonds.push_back(Bond{std::min(u, v), std::max(u, v), resolved});
  }

  void finish() {
    if (pending_) throw SmilesError("dangling bond symbol at end of input", pending_->position);
    if (!stack_.empty()) throw SmilesError("unmatched '('", text_.size());
    if (!open_rings_.empty()) {
      throw SmilesError("unmatched ring closure " + std::to_string(open_rings_.begin()->first),
                        open_rings_.begin()->second.position);
    }

    for (std::size_t i = 0; i < graph_.atoms.size(); ++i) {
      if (!needs_fill_[i]) continue;
      const double bonded = graph_.bonded_valence(i);
      const auto target = fill_target(graph_.atoms[i].element, bonded);
      graph_.atoms[i].implicit_h =
          target ? static_cast<int>(*target - bonded) : 0;
    }

    const ValidationReport report = validate(graph_);
    if (!report.ok()) {
      const auto& first = report.violations.front();
      std::ostringstream message;
      message << "valence violation: " << report.to_string();
      throw SmilesError(message.str(), atom_positions_[first.atom_index]);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  MolecularGraph graph_;
  std::vector<std::size_t> atom_positions_;
  std::vector<bool> needs_fill_;
  std::int64_t prev_ = -1;
  std::vector<std::int64_t> stack_;
  std::optional<PendingBond> pending_;
  std::map<int, RingOpening> open_rings_;
};

}  // namespace

MolecularGraph parse_smiles(std::string_view text) {
  return Parser(text).run();
}

namespace {

class Writer {
public:
  explicit Writer(const MolecularGraph& graph) : graph_(graph) {
    adjacency_.resize(graph.atom_count());
    for (std::size_t i = 0; i < graph.bonds.size(); ++i) {
      const Bond& bond = graph.bonds[i];
      adjacency_[bond.a].push_back({bond.b, i});
      adjacency_[bond.b].push_back({bond.a, i});
    }
    for (auto& list : adjacency_) {
      std::sort(list.begin(), list.end());
    }
  }

  std::string run() {
    visited_.assign(graph_.atom_count(), false);
    bond_is_ring_.assign(graph_.bond_count(), false);
    bond_on_tree_.assign(graph_.bond_count(), false);
    classify_edges();

    visited_.assign(graph_.atom_count(), false);
    bool first_component = true;
    for (std::size_t i = 0; i < graph_.atom_count(); ++i) {
      if (visited_[i]) continue;
      if (!first_component) out_ << '.';
      first_component = false;
      emit_atom_tree(static_cast<std::uint32_t>(i), graph_.bond_count());
    }
    return out_.str();
  }

private:
  void classify_edges() {
    // Non-tree edges of a DFS forest become ring closures.
    std::vector<std::uint32_t> stack;
    for (std::size_t root = 0; root < graph_.atom_count(); ++root) {
      if (visited_[root]) continue;
      visited_[root] = true;
      stack.push_back(static_cast<std::uint32_t>(root));
      while (!stack.empty()) {
        const std::uint32_t v = stack.back();
        stack.pop_back();
        for (const auto& [u, bond_index] : adjacency_[v]) {
          if (bond_on_tree_[bond_index] || bond_is_ring_[bond_index]) continue;
          if (visited_[u]) {
            bond_is_ring_[bond_index] = true;
          } else {
            bond_on_tree_[bond_index] = true;
            visited_[u] = true;
            stack.push_back(u);
          }
        }
      }
    }
  }

  int allocate_ring_digit(std::size_t bond_index) {
    for (int d = 1; d < 100; ++d) {
      if (!digit_in_use_[d]) {
        digit_in_use_[d] = true;
        ring_digit_[bond_index] = d;
        return d;
      }
    }
    throw DataError("write_smiles: more than 99 simultaneously open ring closures");
  }

  void emit_ring_token(std::uint32_t atom, std::size_t bond_index) {
    const Bond& bond = graph_.bonds[bond_index];
    auto it = ring_digit_.find(bond_index);
    int digit;
    if (it == ring_digit_.end()) {
      emit_bond_symbol(bond);  // symbol carried by the opening side only
      digit = allocate_ring_digit(bond_index);
    } else {
      digit = it->second;
      digit_in_use_[digit] = false;
      ring_digit_.erase(it);
    }
    (void)atom;
    if (digit >= 10) {
      out_ << '%' << digit;
    } else {
      out_ << digit;
    }
  }

  void emit_bond_symbol(const Bond& bond) {
    const bool both_aromatic = graph_.atoms[bond.a].aromatic && graph_.atoms[bond.b].aromatic;
    switch (bond.order) {
      case BondOrder::Single:
        if (both_aromatic) out_ << '-';
        break;
      case BondOrder::Double: out_ << '='; break;
      case BondOrder::Triple: out_ << '#'; break;
      case BondOrder::Aromatic:
        if (!both_aromatic) out_ << ':';
        break;
    }
  }

  void emit_atom_token(std::uint32_t index) {
    const Atom& atom = graph_.atoms[index];
    if (atom.aromatic && !can_be_aromatic(atom.element)) {
      throw DataError(std::string("write_smiles: aromatic ") + element_symbol(atom.element) +
                      " has no SMILES form");
    }

    std::string symbol = element_symbol(atom.element);
    if (atom.aromatic) {
      for (char& c : symbol) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }

    bool bare_ok = atom.formal_charge == 0 && atom.element != Element::H;
    if (bare_ok) {
      const double bonded = graph_.bonded_valence(index);
      const auto target = fill_target(atom.element, bonded);
      const int inferred = target ? static_cast<int>(*target - bonded) : 0;
      bare_ok = inferred == atom.implicit_h;
    }
    if (bare_ok) {
      out_ << symbol;
      return;
    }

    out_ << '[' << symbol;
    if (atom.implicit_h == 1) {
      out_ << 'H';
    } else if (atom.implicit_h > 1) {
      out_ << 'H' << atom.implicit_h;
    }
    if (atom.formal_charge != 0) {
      out_ << (atom.formal_charge > 0 ? '+' : '-');
      const int magnitude = std::abs(atom.formal_charge);
      if (magnitude > 1) out_ << magnitude;
    }
    out_ << ']';
  }

  /// Emits the subtree rooted at `v`, entered via `entry_bond` (or
  /// graph_.bond_count() for roots).
  void emit_atom_tree(std::uint32_t v, std::size_t entry_bond) {
    visited_[v] = true;
    emit_atom_token(v);

    // Ring closure digits attached to this atom.
    for (const auto& [u, bond_index] : adjacency_[v]) {
      (void)u;
      if (bond_is_ring_[bond_index]) emit_ring_token(v, bond_index);
    }

    // Children along tree edges.
    std::vector<std::pair<std::uint32_t, std::size_t>> children;
    for (const auto& [u, bond_index] : adjacency_[v]) {
      if (bond_index == entry_bond || !bond_on_tree_[bond_index] || visited_[u]) continue;
      children.emplace_back(u, bond_index);
    }
    for (std::size_t i = 0; i < children.size(); ++i) {
      const auto& [u, bond_index] = children[i];
      const bool last = i + 1 == children.size();
      if (!last) out_ << '(';
      emit_bond_symbol(graph_.bonds[bond_index]);
      emit_atom_tree(u, bond_index);
      if (!last) out_ << ')';
    }
  }

  const MolecularGraph& graph_;
  std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> adjacency_;
  std::vector<bool> visited_;
  std::vector<bool> bond_is_ring_;
  std::vector<bool> bond_on_tree_;
  std::map<std::size_t, int> ring_digit_;
  bool digit_in_use_[100] = {};
  std::ostringstream out_;
};

}  // namespace

std::string write_smiles(const MolecularGraph& graph) {
  if (graph.atoms.empty()) throw DataError("write_smiles: empty graph");
  return Writer(graph).run();
}

std::vector<SmilesFileRecord> read_smiles_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open SMILES file: " + path);
  std::vector<SmilesFileRecord> records;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    SmilesFileRecord record;
    record.line_number = line_number;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      record.smiles = line;
    } else {
      record.smiles = line.substr(0, tab);
      record.name = line.substr(tab + 1);
    }
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace moltext::molgraph
