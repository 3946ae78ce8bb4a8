#include <htact/group.hpp>

#include <charconv>
#include <cstdlib>
#include <set>
#include <sstream>

namespace htact {

std::string_view to_string(GroupKind k) {
  switch (k) {
    case GroupKind::Finite: return "finite";
    case GroupKind::FreeAbelian: return "free_abelian";
    case GroupKind::Free: return "free";
    case GroupKind::Semidirect: return "semidirect";
    case GroupKind::Amalgam: return "amalgam";
    case GroupKind::HNN: return "hnn";
  }
  return "?";
}

Code Group::power(Code const& a, std::int64_t k) const {
  Code base = k < 0 ? inverse(a) : a;
  std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  Code acc;
  while (n > 0) {
    if (n & 1u) acc = multiply(acc, base);
    n >>= 1u;
    if (n > 0) base = multiply(base, base);
  }
  return acc;
}

Code Group::evaluate(Word const& w) const {
  Code acc;
  for (auto const& l : w) {
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= num_generators())
      throw Error("generator index out of range in group " + name_);
    acc = multiply(acc, power(generator(static_cast<std::size_t>(l.gen)), l.exp));
  }
  return acc;
}

void Group::set_labels(std::vector<std::string> labels) {
  if (labels.size() != num_generators())
    throw Error("group " + name_ + ": expected " + std::to_string(num_generators()) +
                " generator labels, got " + std::to_string(labels.size()));
  std::set<std::string> seen;
  for (auto const& l : labels)
    if (l.empty() || !seen.insert(l).second) throw Error("group " + name_ + ": bad or duplicate label '" + l + "'");
  labels_ = std::move(labels);
}

std::string Group::format_word(Word const& w) const {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (auto const& l : w) {
    if (!first) os << ' ';
    first = false;
    auto idx = static_cast<std::size_t>(l.gen);
    os << (idx < labels_.size() ? labels_[idx] : "g" + std::to_string(l.gen));
    if (l.exp != 1) os << '^' << l.exp;
  }
  return os.str();
}

std::string Group::format(Code const& a) const { return format_word(word(a)); }

Word Group::parse_word(std::string_view text) const {
  Word w;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) {
    std::string label = tok;
    std::int64_t exp = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      label = tok.substr(0, caret);
      auto rest = tok.substr(caret + 1);
      auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exp);
      if (ec != std::errc{} || p != rest.data() + rest.size())
        throw Error("bad exponent in token '" + tok + "'");
    }
    if (label == "1") continue;
    std::size_t idx = 0;
    for (; idx < labels_.size(); ++idx)
      if (labels_[idx] == label) break;
    if (idx == labels_.size()) throw Error("unknown generator '" + label + "' in group " + name_);
    if (exp != 0) w.push_back({static_cast<int>(idx), exp});
  }
  return w;
}

Code Group::parse(std::string_view text) const { return evaluate(parse_word(text)); }

std::size_t Group::word_length(Code const& a) const {
  std::size_t n = 0;
  for (auto const& l : word(a)) n += static_cast<std::size_t>(std::llabs(l.exp));
  return n;
}

std::vector<int> shortlex_key(Group const& g, Code const& a) {
  std::vector<int> key;
  for (auto const& l : g.word(a)) {
    int idx = alphabet_index(l.gen, l.exp < 0);
    for (std::int64_t i = 0; i < std::llabs(l.exp); ++i) key.push_back(idx);
  }
  return key;
}

bool shortlex_less(Group const& g, Code const& a, Code const& b) {
  auto ka = shortlex_key(g, a);
  auto kb = shortlex_key(g, b);
  if (ka.size() != kb.size()) return ka.size() < kb.size();
  return ka < kb;
}

namespace {
void check_owner(Element const& a, Element const& b) {
  if (!a.owner() || a.owner() != b.owner()) throw Error("owner mismatch between group elements");
}
}  // namespace

Element compose(Element const& a, Element const& b) {
  check_owner(a, b);
  return {a.owner(), a.owner()->multiply(a.code(), b.code())};
}

Element invert(Element const& a) {
  if (!a.owner()) throw Error("element without owner");
  return {a.owner(), a.owner()->inverse(a.code())};
}

bool equal(Element const& a, Element const& b) {
  check_owner(a, b);
  return a.code() == b.code();
}

}  // namespace htact
