#include <htact/normal_form.hpp>

#include <set>

namespace htact {

namespace {

void put_block(Code& out, Code const& block) {
  out.push_back(static_cast<std::int64_t>(block.size()));
  out.insert(out.end(), block.begin(), block.end());
}

Code take_block(Code const& in, std::size_t& pos) {
  if (pos >= in.size()) throw Error("truncated composite code");
  auto n = in[pos++];
  if (n < 0 || pos + static_cast<std::size_t>(n) > in.size()) throw Error("malformed composite code");
  Code block(in.begin() + static_cast<std::ptrdiff_t>(pos), in.begin() + static_cast<std::ptrdiff_t>(pos + n));
  pos += static_cast<std::size_t>(n);
  return block;
}

std::vector<std::string> combined_labels(std::vector<GroupPtr> const& parts, std::string const& extra) {
  std::vector<std::string> out;
  std::set<std::string> used;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    auto const& g = *parts[p];
    for (std::size_t i = 0; i < g.num_generators(); ++i) {
      std::string l = i < g.labels().size() ? g.labels()[i] : "g" + std::to_string(out.size());
      while (used.count(l)) l += "_" + std::to_string(p + 1);
      used.insert(l);
      out.push_back(l);
    }
  }
  if (!extra.empty()) {
    std::string l = extra;
    while (used.count(l)) l += "'";
    out.push_back(l);
  }
  return out;
}

Word offset_word(Word w, int offset) {
  for (auto& l : w) l.gen += offset;
  return w;
}

void append_word(Word& out, Word const& w) {
  for (auto const& l : w) {
    if (!out.empty() && out.back().gen == l.gen && (out.back().exp > 0) == (l.exp > 0))
      out.back().exp += l.exp;
    else
      out.push_back(l);
  }
}

}  // namespace

// ---------------------------------------------------------------- amalgam

AmalgamGroup::AmalgamGroup(EmbeddingPtr left, EmbeddingPtr right) : sides_{std::move(left), std::move(right)} {
  if (!sides_[0] || !sides_[1]) throw Error("amalgam: missing edge embedding");
  if (sides_[0]->source() != sides_[1]->source())
    throw Error("amalgam: the two edge embeddings must share their source group");
  Group::set_labels(combined_labels({sides_[0]->target(), sides_[1]->target()}, ""));
}

std::size_t AmalgamGroup::num_generators() const {
  return factor(0)->num_generators() + factor(1)->num_generators();
}

Code AmalgamGroup::generator(std::size_t i) const {
  auto n0 = factor(0)->num_generators();
  if (i < n0) return include(0, factor(0)->generator(i));
  return include(1, factor(1)->generator(i - n0));
}

AmalgamGroup::Form AmalgamGroup::decode(Code const& a) const {
  Form f;
  if (a.empty()) return f;
  std::size_t pos = 0;
  f.sigma = take_block(a, pos);
  while (pos < a.size()) {
    int side = static_cast<int>(a[pos++]);
    if (side != 0 && side != 1) throw Error("malformed amalgam code");
    f.syllables.push_back({side, take_block(a, pos)});
  }
  return f;
}

Code AmalgamGroup::encode(Form const& f) const {
  if (f.sigma.empty() && f.syllables.empty()) return {};
  Code out;
  put_block(out, f.sigma);
  for (auto const& s : f.syllables) {
    out.push_back(s.factor);
    put_block(out, s.rep);
  }
  return out;
}

// The normal form of (item · current word) is built right to left: `rev`
// holds the syllables in reverse order and form.sigma the pending edge part.
void AmalgamGroup::prepend(Form& form, std::vector<Syllable>& rev, Item const& item) const {
  auto const& E = *edge_group();
  if (item.factor < 0) {
    form.sigma = E.multiply(item.x, form.sigma);
    return;
  }
  int const f = item.factor;
  auto const& F = *factor(f);
  Code x = F.multiply(item.x, sides_[f]->apply(form.sigma));
  if (!rev.empty() && rev.back().factor == f) {
    x = F.multiply(x, rev.back().rep);
    rev.pop_back();
  }
  auto split = sides_[f]->decompose(x);
  form.sigma = std::move(split.source);
  if (!split.rep.empty()) rev.push_back({f, std::move(split.rep)});
}

Code AmalgamGroup::reduce(std::vector<Item> const& raw) const {
  Form form;
  std::vector<Syllable> rev;
  for (auto it = raw.rbegin(); it != raw.rend(); ++it) prepend(form, rev, *it);
  form.syllables.assign(rev.rbegin(), rev.rend());
  return encode(form);
}

Code AmalgamGroup::multiply(Code const& a, Code const& b) const {
  if (a.empty()) return b;
  if (b.empty()) return a;
  Form form = decode(b);
  std::vector<Syllable> rev(form.syllables.rbegin(), form.syllables.rend());
  Form fa = decode(a);
  for (auto it = fa.syllables.rbegin(); it != fa.syllables.rend(); ++it) prepend(form, rev, {it->factor, it->rep});
  prepend(form, rev, {-1, fa.sigma});
  form.syllables.assign(rev.rbegin(), rev.rend());
  return encode(form);
}

Code AmalgamGroup::inverse(Code const& a) const {
  if (a.empty()) return a;
  Form fa = decode(a);
  std::vector<Item> raw;
  for (auto it = fa.syllables.rbegin(); it != fa.syllables.rend(); ++it)
    raw.push_back({it->factor, factor(it->factor)->inverse(it->rep)});
  raw.push_back({-1, edge_group()->inverse(fa.sigma)});
  return reduce(raw);
}

Code AmalgamGroup::include(int f, Code const& x) const { return reduce({{f, x}}); }

Word AmalgamGroup::word(Code const& a) const {
  Form fa = decode(a);
  Word w;
  int const n0 = static_cast<int>(factor(0)->num_generators());
  if (!fa.sigma.empty()) append_word(w, factor(0)->word(sides_[0]->apply(fa.sigma)));
  for (auto const& s : fa.syllables) append_word(w, offset_word(factor(s.factor)->word(s.rep), s.factor == 0 ? 0 : n0));
  return w;
}

bool AmalgamGroup::is_normal(Code const& a) const {
  Form fa;
  try {
    fa = decode(a);
  } catch (Error const&) {
    return false;
  }
  if (encode(fa) != a) return false;
  if (!edge_group()->is_normal(fa.sigma)) return false;
  for (std::size_t i = 0; i < fa.syllables.size(); ++i) {
    auto const& s = fa.syllables[i];
    if (s.rep.empty() || !factor(s.factor)->is_normal(s.rep)) return false;
    if (i > 0 && fa.syllables[i - 1].factor == s.factor) return false;
    auto split = sides_[s.factor]->decompose(s.rep);
    if (!split.source.empty() || split.rep != s.rep) return false;
  }
  return true;
}

bool AmalgamGroup::is_infinite() const { return factor(0)->is_infinite() || factor(1)->is_infinite(); }

CompositeGroup::HeadSplit AmalgamGroup::split_head(int f, Code const& g) const {
  Form fa = decode(g);
  HeadSplit out;
  out.head = sides_[f]->apply(fa.sigma);
  std::size_t first = 0;
  if (!fa.syllables.empty() && fa.syllables[0].factor == f) {
    out.head = factor(f)->multiply(out.head, fa.syllables[0].rep);
    first = 1;
  }
  Form tail;
  tail.syllables.assign(fa.syllables.begin() + static_cast<std::ptrdiff_t>(first), fa.syllables.end());
  out.tail = encode(tail);
  return out;
}

std::size_t AmalgamGroup::syllable_length(Code const& g) const {
  Form fa = decode(g);
  if (!fa.syllables.empty()) return fa.syllables.size();
  return fa.sigma.empty() ? 0 : 1;
}

// -------------------------------------------------------------------- HNN

HnnGroup::HnnGroup(EmbeddingPtr sigma, EmbeddingPtr theta, std::string stable_label)
    : sides_{std::move(sigma), std::move(theta)} {
  if (!sides_[0] || !sides_[1]) throw Error("hnn: missing edge embedding");
  if (sides_[0]->source() != sides_[1]->source())
    throw Error("hnn: the two edge embeddings must share their source group");
  if (sides_[0]->target() != sides_[1]->target())
    throw Error("hnn: the two edge embeddings must share their target group");
  Group::set_labels(combined_labels({base()}, stable_label.empty() ? "t" : stable_label));
}

std::size_t HnnGroup::num_generators() const { return base()->num_generators() + 1; }

Code HnnGroup::stable_letter() const { return encode({{}, {{1, {}}}}); }

Code HnnGroup::generator(std::size_t i) const {
  if (i < base()->num_generators()) return include(0, base()->generator(i));
  return stable_letter();
}

HnnGroup::Form HnnGroup::decode(Code const& a) const {
  Form f;
  if (a.empty()) return f;
  std::size_t pos = 0;
  f.head = take_block(a, pos);
  while (pos < a.size()) {
    int eps = static_cast<int>(a[pos++]);
    if (eps != 1 && eps != -1) throw Error("malformed hnn code");
    f.syllables.push_back({eps, take_block(a, pos)});
  }
  return f;
}

Code HnnGroup::encode(Form const& f) const {
  if (f.head.empty() && f.syllables.empty()) return {};
  Code out;
  put_block(out, f.head);
  for (auto const& s : f.syllables) {
    out.push_back(s.eps);
    put_block(out, s.rep);
  }
  return out;
}

// t alpha(e) = beta(e) t and t^-1 beta(e) = alpha(e) t^-1; a pinch
// t^e u t^-e with u in the side-e subgroup collapses into the base.
void HnnGroup::prepend(Form& form, std::vector<Syllable>& rev, Item const& item) const {
  auto const& H = *base();
  if (item.eps == 0) {
    form.head = H.multiply(item.x, form.head);
    return;
  }
  auto const& into = item.eps > 0 ? sides_[0] : sides_[1];
  auto const& across = item.eps > 0 ? sides_[1] : sides_[0];
  auto split = into->decompose(form.head);
  if (split.rep.empty() && !rev.empty() && rev.back().eps == -item.eps) {
    form.head = H.multiply(across->apply(split.source), rev.back().rep);
    rev.pop_back();
    return;
  }
  rev.push_back({item.eps, std::move(split.rep)});
  form.head = across->apply(split.source);
}

Code HnnGroup::reduce(std::vector<Item> const& raw) const {
  Form form;
  std::vector<Syllable> rev;
  for (auto it = raw.rbegin(); it != raw.rend(); ++it) {
    if (it->eps == 0 || it->eps == 1 || it->eps == -1) {
      prepend(form, rev, *it);
    } else {
      int step = it->eps > 0 ? 1 : -1;
      for (int k = 0; k != it->eps; k += step) prepend(form, rev, {step, {}});
    }
  }
  form.syllables.assign(rev.rbegin(), rev.rend());
  return encode(form);
}

Code HnnGroup::multiply(Code const& a, Code const& b) const {
  if (a.empty()) return b;
  if (b.empty()) return a;
  Form form = decode(b);
  std::vector<Syllable> rev(form.syllables.rbegin(), form.syllables.rend());
  Form fa = decode(a);
  for (auto it = fa.syllables.rbegin(); it != fa.syllables.rend(); ++it) {
    prepend(form, rev, {0, it->rep});
    prepend(form, rev, {it->eps, {}});
  }
  prepend(form, rev, {0, fa.head});
  form.syllables.assign(rev.rbegin(), rev.rend());
  return encode(form);
}

Code HnnGroup::inverse(Code const& a) const {
  if (a.empty()) return a;
  Form fa = decode(a);
  auto const& H = *base();
  std::vector<Item> raw;
  for (auto it = fa.syllables.rbegin(); it != fa.syllables.rend(); ++it) {
    raw.push_back({0, H.inverse(it->rep)});
    raw.push_back({-it->eps, {}});
  }
  raw.push_back({0, H.inverse(fa.head)});
  return reduce(raw);
}

Code HnnGroup::include(int, Code const& x) const { return x.empty() ? Code{} : encode({x, {}}); }

Word HnnGroup::word(Code const& a) const {
  Form fa = decode(a);
  Word w;
  int const t = static_cast<int>(base()->num_generators());
  append_word(w, base()->word(fa.head));
  for (auto const& s : fa.syllables) {
    append_word(w, {{t, s.eps}});
    append_word(w, base()->word(s.rep));
  }
  return w;
}

bool HnnGroup::is_normal(Code const& a) const {
  Form fa;
  try {
    fa = decode(a);
  } catch (Error const&) {
    return false;
  }
  if (encode(fa) != a) return false;
  if (!base()->is_normal(fa.head)) return false;
  for (std::size_t i = 0; i < fa.syllables.size(); ++i) {
    auto const& s = fa.syllables[i];
    if (!base()->is_normal(s.rep)) return false;
    auto split = sides_[s.eps > 0 ? 0 : 1]->decompose(s.rep);
    if (!split.source.empty() || split.rep != s.rep) return false;
    if (i + 1 < fa.syllables.size() && s.rep.empty() && fa.syllables[i + 1].eps == -s.eps) return false;
  }
  return true;
}

CompositeGroup::HeadSplit HnnGroup::split_head(int, Code const& g) const {
  Form fa = decode(g);
  HeadSplit out;
  out.head = fa.head;
  fa.head.clear();
  out.tail = encode(fa);
  return out;
}

std::size_t HnnGroup::syllable_length(Code const& g) const {
  Form fa = decode(g);
  std::size_t n = fa.head.empty() ? 0 : 1;
  for (auto const& s : fa.syllables) n += s.rep.empty() ? 1 : 2;
  return n;
}

// ------------------------------------------------------------- free functions

Element britton_reduce(std::shared_ptr<HnnGroup const> const& g, std::vector<HnnGroup::Item> const& raw) {
  return {g, g->reduce(raw)};
}

Element amalgam_reduce(std::shared_ptr<AmalgamGroup const> const& g, std::vector<AmalgamGroup::Item> const& raw) {
  return {g, g->reduce(raw)};
}

std::size_t syllable_length(Element const& g) {
  auto const* c = dynamic_cast<CompositeGroup const*>(g.owner().get());
  if (!c) throw Error("syllable_length needs an amalgam or HNN element");
  return c->syllable_length(g.code());
}

}  // namespace htact
