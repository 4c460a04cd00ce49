#include "livsic/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>

#include "livsic/error.hpp"

namespace livsic {

std::vector<int> parse_cycles(std::string_view text, int points) {
  std::vector<int> image(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) image[static_cast<std::size_t>(i)] = i + 1;
  std::vector<bool> used(static_cast<std::size_t>(points) + 1, false);
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::ParseError, "bad cycle notation '" + std::string(text) + "': " + why);
  };
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(') fail("expected '('");
    ++pos;
    std::vector<int> cycle;
    for (;;) {
      skip_space();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) fail("expected a point");
      int value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + (text[pos++] - '0');
        if (value > points) fail("point out of range");
      }
      if (value < 1) fail("point out of range");
      if (used[static_cast<std::size_t>(value)]) fail("point repeated");
      used[static_cast<std::size_t>(value)] = true;
      cycle.push_back(value);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
      image[static_cast<std::size_t>(cycle[i] - 1)] = cycle[(i + 1) % cycle.size()];
    skip_space();
  }
  return image;
}

namespace {

std::string cycle_name(const std::vector<int>& perm) {
  std::string out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start] || perm[start] == static_cast<int>(start) + 1) continue;
    out += "(";
    std::size_t x = start;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out += " ";
      out += std::to_string(x + 1);
      first = false;
      x = static_cast<std::size_t>(perm[x] - 1);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
  // (a b)(x) = a(b(x)): b acts first.
  std::vector<int> out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) out[x] = a[static_cast<std::size_t>(b[x] - 1)];
  return out;
}

std::string lattice_name(const std::vector<std::int64_t>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

}  // namespace

Group Group::build(const GroupSpec& spec, const Limits& limits) {
  Group g;
  if (const auto* c = std::get_if<CyclicSpec>(&spec)) {
    if (c->order < 1) throw Error(ErrorCode::NotAGroup, "cyclic order must be positive", {{"order", c->order}});
    const auto n = static_cast<std::size_t>(c->order);
    if (n > limits.max_group_order)
      throw Error(ErrorCode::ClosureTooLarge, "group order exceeds the configured cap", {{"order", n}});
    g.kind_ = GroupKind::Cyclic;
    g.names_.push_back("e");
    for (std::size_t i = 1; i < n; ++i) g.names_.push_back(i == 1 ? "g" : "g^" + std::to_string(i));
    g.table_.resize(n * n);
    g.inverse_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      g.inverse_[i] = (n - i) % n;
      for (std::size_t j = 0; j < n; ++j) g.table_[i * n + j] = (i + j) % n;
    }
    return g;
  }
  if (const auto* f = std::get_if<FreeAbelianSpec>(&spec)) {
    if (f->rank < 1) throw Error(ErrorCode::NotAGroup, "free abelian rank must be positive", {{"rank", f->rank}});
    g.kind_ = GroupKind::FreeAbelian;
    g.rank_ = f->rank;
    return g;
  }
  if (const auto* p = std::get_if<PermutationSpec>(&spec)) {
    if (p->points < 1) throw Error(ErrorCode::NotAGroup, "permutation degree must be positive");
    const auto m = static_cast<std::size_t>(p->points);
    for (std::size_t s = 0; s < p->generators.size(); ++s) {
      const auto& gen = p->generators[s];
      std::vector<int> sorted(gen);
      std::sort(sorted.begin(), sorted.end());
      bool ok = gen.size() == m;
      for (std::size_t i = 0; ok && i < m; ++i) ok = sorted[i] == static_cast<int>(i) + 1;
      if (!ok) throw Error(ErrorCode::NotAGroup, "generator is not a permutation of 1..points", {{"generator", s}});
    }
    std::vector<int> id(m);
    for (std::size_t i = 0; i < m; ++i) id[i] = static_cast<int>(i) + 1;
    std::vector<std::vector<int>> perms{id};
    std::map<std::vector<int>, std::size_t> index{{id, 0}};
    for (std::size_t head = 0; head < perms.size(); ++head) {
      for (const auto& gen : p->generators) {
        auto next = compose(perms[head], gen);
        if (index.contains(next)) continue;
        if (perms.size() >= limits.max_group_order)
          throw Error(ErrorCode::ClosureTooLarge, "permutation closure exceeds the configured cap",
                      {{"cap", limits.max_group_order}});
        index.emplace(next, perms.size());
        perms.push_back(std::move(next));
      }
    }
    const std::size_t n = perms.size();
    g.kind_ = GroupKind::Permutation;
    g.table_.resize(n * n);
    g.inverse_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      g.names_.push_back(cycle_name(perms[i]));
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = index.at(compose(perms[i], perms[j]));
        g.table_[i * n + j] = k;
        if (k == 0) g.inverse_[i] = j;
      }
    }
    return g;
  }

  const auto& t = std::get<TableSpec>(spec);
  const std::size_t n = t.elements.size();
  if (n == 0) throw Error(ErrorCode::NotAGroup, "empty element list");
  if (n > limits.max_group_order)
    throw Error(ErrorCode::ClosureTooLarge, "group order exceeds the configured cap", {{"order", n}});
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i)
    if (!index.emplace(t.elements[i], i).second)
      throw Error(ErrorCode::NotAGroup, "duplicate element name", {{"element", t.elements[i]}});
  if (t.table.size() != n) throw Error(ErrorCode::NotAGroup, "table must have one row per element");
  g.kind_ = GroupKind::FiniteTable;
  g.names_ = t.elements;
  g.table_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (t.table[i].size() != n) throw Error(ErrorCode::NotAGroup, "table must be square", {{"row", t.elements[i]}});
    for (std::size_t j = 0; j < n; ++j) {
      auto it = index.find(t.table[i][j]);
      if (it == index.end())
        throw Error(ErrorCode::NotAGroup, "table entry is not an element", {{"entry", t.table[i][j]}});
      g.table_[i * n + j] = it->second;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> row(n, false), column(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      row[g.table_[i * n + j]] = true;
      column[g.table_[j * n + i]] = true;
    }
    for (std::size_t j = 0; j < n; ++j)
      if (!row[j] || !column[j])
        throw Error(ErrorCode::NotAGroup, "table is not a Latin square", {{"element", t.elements[i]}});
  }
  std::optional<std::size_t> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = g.table_[e * n + a] == a && g.table_[a * n + e] == a;
    if (ok) identity = e;
  }
  if (!identity) throw Error(ErrorCode::NotAGroup, "no identity element");
  g.identity_ = *identity;
  g.inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (g.table_[a * n + b] == g.identity_ && g.table_[b * n + a] == g.identity_) g.inverse_[a] = b;
  for (std::size_t a = 0; a < n; ++a)
    if (g.inverse_[a] == n) throw Error(ErrorCode::NotAGroup, "element has no inverse", {{"element", t.elements[a]}});
  if (n <= limits.associativity_cap) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          const auto left = g.table_[g.table_[a * n + b] * n + c];
          const auto right = g.table_[a * n + g.table_[b * n + c]];
          if (left != right)
            throw Error(ErrorCode::NotAGroup, "multiplication is not associative",
                        {{"triple", {t.elements[a], t.elements[b], t.elements[c]}}});
        }
  } else {
    g.trusted_ = true;
  }
  return g;
}

std::size_t Group::order() const {
  if (!is_finite()) throw Error(ErrorCode::InfiniteGroup, "free abelian groups are infinite");
  return names_.size();
}

void Group::check(const GroupElement& a) const {
  if (is_finite()) {
    if (!a.is_finite() || a.index() >= names_.size())
      throw Error(ErrorCode::ForeignElement, "element does not belong to this group");
  } else if (a.is_finite() || a.coords().size() != static_cast<std::size_t>(rank_)) {
    throw Error(ErrorCode::ForeignElement, "element does not belong to this group");
  }
}

GroupElement Group::identity() const {
  if (is_finite()) return GroupElement::finite(identity_);
  return GroupElement::lattice(std::vector<std::int64_t>(static_cast<std::size_t>(rank_), 0));
}

GroupElement Group::multiply(const GroupElement& a, const GroupElement& b) const {
  check(a);
  check(b);
  if (is_finite()) return GroupElement::finite(table_[a.index() * names_.size() + b.index()]);
  auto out = a.coords();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.coords()[i];
  return GroupElement::lattice(std::move(out));
}

GroupElement Group::inverse(const GroupElement& a) const {
  check(a);
  if (is_finite()) return GroupElement::finite(inverse_[a.index()]);
  auto out = a.coords();
  for (auto& x : out) x = -x;
  return GroupElement::lattice(std::move(out));
}

GroupElement Group::power(const GroupElement& a, std::int64_t n) const {
  GroupElement base = n < 0 ? inverse(a) : a;
  GroupElement acc = identity();
  for (std::int64_t i = 0; i < (n < 0 ? -n : n); ++i) acc = multiply(base, acc);
  return acc;
}

bool Group::is_identity(const GroupElement& a) const {
  check(a);
  if (is_finite()) return a.index() == identity_;
  return std::all_of(a.coords().begin(), a.coords().end(), [](std::int64_t x) { return x == 0; });
}

std::size_t Group::element_order(const GroupElement& a) const {
  if (!is_finite()) return is_identity(a) ? 1 : 0;
  std::size_t m = 1;
  for (GroupElement x = a; !is_identity(x); x = multiply(a, x)) ++m;
  return m;
}

GroupElement Group::element(std::size_t index) const {
  if (!is_finite()) throw Error(ErrorCode::InfiniteGroup, "free abelian groups have no element list");
  if (index >= names_.size()) throw Error(ErrorCode::ForeignElement, "element index out of range");
  return GroupElement::finite(index);
}

std::vector<GroupElement> Group::elements() const {
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < order(); ++i) out.push_back(GroupElement::finite(i));
  return out;
}

std::string Group::name(const GroupElement& a) const {
  check(a);
  if (is_finite()) return names_[a.index()];
  return lattice_name(a.coords());
}

GroupElement Group::parse(std::string_view text) const {
  if (is_finite()) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == text) return GroupElement::finite(i);
    throw Error(ErrorCode::ParseError, "unknown group element '" + std::string(text) + "'");
  }
  std::string_view body = text;
  const bool tuple = body.size() >= 2 && body.front() == '(' && body.back() == ')';
  if (tuple) body = body.substr(1, body.size() - 2);
  else if (rank_ != 1) throw Error(ErrorCode::ParseError, "expected tuple syntax '(a,b,...)' for '" + std::string(text) + "'");
  std::vector<std::int64_t> coords;
  std::size_t start = 0;
  for (;;) {
    const auto comma = body.find(',', start);
    std::string piece(body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    piece.erase(std::remove_if(piece.begin(), piece.end(), [](unsigned char c) { return std::isspace(c); }), piece.end());
    std::size_t i = (!piece.empty() && (piece[0] == '+' || piece[0] == '-')) ? 1 : 0;
    if (i == piece.size()) throw Error(ErrorCode::ParseError, "bad lattice element '" + std::string(text) + "'");
    for (std::size_t j = i; j < piece.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(piece[j])))
        throw Error(ErrorCode::ParseError, "bad lattice element '" + std::string(text) + "'");
    coords.push_back(std::stoll(piece[0] == '+' ? piece.substr(1) : piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (coords.size() != static_cast<std::size_t>(rank_))
    throw Error(ErrorCode::DimensionMismatch, "lattice element has the wrong length",
                {{"element", std::string(text)}, {"rank", rank_}});
  return GroupElement::lattice(std::move(coords));
}

ConjugacyClass conjugacy_class_of(const Group& group, const GroupElement& a) {
  if (!group.is_finite()) throw Error(ErrorCode::InfiniteGroup, "conjugacy classes need a finite group");
  std::set<GroupElement> members;
  for (const auto& g : group.elements()) members.insert(group.multiply(group.multiply(g, a), group.inverse(g)));
  ConjugacyClass cls{*members.begin(), std::vector<GroupElement>(members.begin(), members.end())};
  return cls;
}

std::vector<ConjugacyClass> conjugacy_classes(const Group& group) {
  if (!group.is_finite()) throw Error(ErrorCode::InfiniteGroup, "conjugacy classes need a finite group");
  std::vector<ConjugacyClass> classes;
  std::vector<bool> assigned(group.order(), false);
  for (const auto& a : group.elements()) {
    if (assigned[a.index()]) continue;
    auto cls = conjugacy_class_of(group, a);
    for (const auto& m : cls.members) assigned[m.index()] = true;
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<GroupElement> center(const Group& group) {
  if (!group.is_finite()) throw Error(ErrorCode::InfiniteGroup, "center is computed for finite groups only");
  std::vector<GroupElement> out;
  const auto all = group.elements();
  for (const auto& z : all) {
    const bool central = std::all_of(all.begin(), all.end(), [&](const GroupElement& h) {
      return group.multiply(z, h) == group.multiply(h, z);
    });
    if (central) out.push_back(z);
  }
  return out;
}

}  // namespace livsic
