#include <htact/embedding.hpp>

#include <htact/enumerate.hpp>
#include <htact/groups.hpp>
#include <htact/normal_form.hpp>

#include <cstdlib>
#include <numeric>

namespace htact {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Exponent sums per generator; the coordinates of a free abelian element.
std::vector<std::int64_t> abelianize(Group const& g, Code const& c) {
  std::vector<std::int64_t> v(g.num_generators(), 0);
  for (auto const& l : g.word(c)) v[static_cast<std::size_t>(l.gen)] += l.exp;
  return v;
}

Code from_exponents(Group const& g, std::vector<std::int64_t> const& v) {
  Word w;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) w.push_back({static_cast<int>(i), v[i]});
  return g.evaluate(w);
}

bool rank_one(Group const& g) {
  return g.num_generators() == 1 && (g.kind() == GroupKind::Free || g.kind() == GroupKind::FreeAbelian);
}

}  // namespace

Embedding::Embedding(std::string name, GroupPtr source, GroupPtr target, std::vector<Code> images,
                     int injectivity_bound, int search_bound)
    : name_(std::move(name)),
      source_(std::move(source)),
      target_(std::move(target)),
      images_(std::move(images)),
      search_bound_(search_bound) {
  if (!source_ || !target_) throw Error("embedding " + name_ + ": missing source or target");
  if (images_.size() != source_->num_generators())
    throw Error("embedding " + name_ + ": expected " + std::to_string(source_->num_generators()) +
                " generator images, got " + std::to_string(images_.size()));
  for (auto const& im : images_)
    if (!target_->is_normal(im)) throw Error("embedding " + name_ + ": image is not a target element");
  check_homomorphism();
  if (injectivity_bound > 0) check_injective(injectivity_bound);
  choose_strategy();
}

std::string_view Embedding::strategy_name() const {
  switch (strategy_) {
    case Strategy::FactorHead: return "factor-head";
    case Strategy::FiniteSource: return "finite";
    case Strategy::Lattice: return "lattice";
    case Strategy::FreeCyclic: return "free-cyclic";
    case Strategy::Bounded: return "bounded";
  }
  return "?";
}

Code Embedding::apply(Code const& s) const {
  if (strategy_ == Strategy::FiniteSource) {
    for (auto const& [src, img] : finite_pairs_)
      if (src == s) return img;
  }
  Code acc;
  for (auto const& l : source_->word(s))
    acc = target_->multiply(acc, target_->power(images_[static_cast<std::size_t>(l.gen)], l.exp));
  return acc;
}

void Embedding::check_homomorphism() const {
  if (source_->kind() == GroupKind::Free) return;
  ShortlexEnumerator en(source_);
  auto ball = source_->is_finite() ? en.ball(1 << 20) : en.ball(2);
  std::vector<Code> elems(ball.begin(), ball.end());
  std::vector<Code> imgs;
  imgs.reserve(elems.size());
  for (auto const& e : elems) imgs.push_back(apply(e));
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) {
      auto lhs = apply(source_->multiply(elems[i], elems[j]));
      if (lhs != target_->multiply(imgs[i], imgs[j]))
        throw Error("embedding " + name_ + ": generator images do not define a homomorphism");
    }
}

void Embedding::check_injective(int bound) const {
  ShortlexEnumerator en(source_);
  std::unordered_map<Code, Code, CodeHash> seen;
  for (auto const& s : en.ball(bound)) {
    auto [it, fresh] = seen.emplace(apply(s), s);
    if (!fresh)
      throw Error("embedding " + name_ + ": not injective (" + source_->format(s) + " and " +
                  source_->format(it->second) + " have the same image)");
  }
}

void Embedding::choose_strategy() {
  if (auto const* comp = dynamic_cast<CompositeGroup const*>(target_.get())) {
    for (int f = 0; f < comp->num_factors(); ++f) {
      std::vector<Code> heads;
      bool inside = true;
      for (auto const& im : images_) {
        auto h = comp->in_factor(f, im);
        if (!h) {
          inside = false;
          break;
        }
        heads.push_back(*h);
      }
      if (inside) {
        factor_ = f;
        inner_ = std::make_shared<Embedding>(name_ + "@" + std::to_string(f), source_, comp->factor(f),
                                             std::move(heads), 0, search_bound_);
        strategy_ = Strategy::FactorHead;
        return;
      }
    }
  }
  if (source_->is_finite()) {
    ShortlexEnumerator en(source_);
    for (auto const& s : en.ball(1 << 20)) {
      auto img = apply(s);
      finite_pairs_.emplace_back(s, img);
      finite_preimage_.emplace(img, s);
    }
    strategy_ = Strategy::FiniteSource;
    return;
  }
  bool const abelian_source =
      source_->kind() == GroupKind::FreeAbelian || (source_->kind() == GroupKind::Free && source_->num_generators() == 1);
  if (abelian_source && target_->kind() == GroupKind::FreeAbelian) {
    auto const r = target_->num_generators();
    auto const m = images_.size();
    echelon_.clear();
    transform_.assign(m, std::vector<std::int64_t>(m, 0));
    for (std::size_t j = 0; j < m; ++j) {
      echelon_.push_back(abelianize(*target_, images_[j]));
      transform_[j][j] = 1;
    }
    std::size_t col = 0;
    for (std::size_t row = 0; row < r && col < m; ++row) {
      while (true) {
        std::size_t best = m;
        for (std::size_t j = col; j < m; ++j)
          if (echelon_[j][row] != 0 && (best == m || std::llabs(echelon_[j][row]) < std::llabs(echelon_[best][row])))
            best = j;
        if (best == m) break;
        std::swap(echelon_[col], echelon_[best]);
        std::swap(transform_[col], transform_[best]);
        bool clean = true;
        for (std::size_t j = col + 1; j < m; ++j) {
          if (echelon_[j][row] == 0) continue;
          auto q = echelon_[j][row] / echelon_[col][row];
          for (std::size_t i = 0; i < r; ++i) echelon_[j][i] -= q * echelon_[col][i];
          for (std::size_t i = 0; i < m; ++i) transform_[j][i] -= q * transform_[col][i];
          if (echelon_[j][row] != 0) clean = false;
        }
        if (clean) break;
      }
      if (echelon_[col][row] == 0) continue;
      if (echelon_[col][row] < 0) {
        for (auto& x : echelon_[col]) x = -x;
        for (auto& x : transform_[col]) x = -x;
      }
      pivots_.push_back(static_cast<int>(row));
      ++col;
    }
    if (col != m) throw Error("embedding " + name_ + ": images are linearly dependent (not injective)");
    strategy_ = Strategy::Lattice;
    return;
  }
  if (rank_one(*source_) && target_->kind() == GroupKind::Free) {
    Code c = images_[0];
    std::size_t strip = 0;
    while (2 * strip + 1 < c.size() && c[strip] == -c[c.size() - 1 - strip]) ++strip;
    conj_.assign(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(strip));
    core_.assign(c.begin() + static_cast<std::ptrdiff_t>(strip), c.end() - static_cast<std::ptrdiff_t>(strip));
    strategy_ = Strategy::FreeCyclic;
    return;
  }
  strategy_ = Strategy::Bounded;
}

// ---------------------------------------------------------------- lattice

Membership Embedding::contains_lattice(Code const& g) const {
  auto residual = abelianize(*target_, g);
  std::vector<std::int64_t> y(pivots_.size(), 0);
  for (std::size_t j = 0; j < pivots_.size(); ++j) {
    auto p = static_cast<std::size_t>(pivots_[j]);
    auto d = echelon_[j][p];
    if (residual[p] % d != 0) return {};
    y[j] = residual[p] / d;
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= y[j] * echelon_[j][i];
  }
  for (auto x : residual)
    if (x != 0) return {};
  std::vector<std::int64_t> coeff(images_.size(), 0);
  for (std::size_t j = 0; j < y.size(); ++j)
    for (std::size_t i = 0; i < coeff.size(); ++i) coeff[i] += y[j] * transform_[j][i];
  return {Membership::Status::Member, from_exponents(*source_, coeff), 0};
}

CosetSplit Embedding::decompose_lattice(Code const& g) const {
  auto v = abelianize(*target_, g);
  auto const r = v.size();
  if (r == 1) {
    auto d = echelon_[0][0];
    auto rho = ((v[0] % d) + d) % d;
    // Residues rho and rho - d; shorter wins, ties go to the positive one.
    auto rep = (rho != 0 && d - rho < rho) ? rho - d : rho;
    Code repc = from_exponents(*target_, {rep});
    auto m = contains_lattice(target_->multiply(g, target_->inverse(repc)));
    return {m.preimage, repc};
  }
  auto reduced = v;
  for (std::size_t j = 0; j < pivots_.size(); ++j) {
    auto p = static_cast<std::size_t>(pivots_[j]);
    auto q = floor_div(reduced[p], echelon_[j][p]);
    for (std::size_t i = 0; i < r; ++i) reduced[i] -= q * echelon_[j][i];
  }
  std::int64_t radius = 0;
  for (auto x : reduced) radius += std::llabs(x);
  ShortlexEnumerator en(target_);
  for (auto const& w : en.ball(static_cast<int>(radius))) {
    auto m = contains_lattice(target_->multiply(g, target_->inverse(w)));
    if (m.member()) return {m.preimage, w};
  }
  throw Error("embedding " + name_ + ": lattice coset search failed");
}

// ------------------------------------------------------------ free cyclic

Membership Embedding::contains_free_cyclic(Code const& g) const {
  auto const& F = *target_;
  Code h = F.multiply(F.multiply(F.inverse(conj_), g), conj_);
  auto const L = core_.size();
  if (h.size() % L != 0) return {};
  auto k = static_cast<std::int64_t>(h.size() / L);
  if (h == F.power(core_, k)) return {Membership::Status::Member, source_->power(source_->generator(0), k), 0};
  if (h == F.power(core_, -k)) return {Membership::Status::Member, source_->power(source_->generator(0), -k), 0};
  return {};
}

CosetSplit Embedding::decompose_free_cyclic(Code const& g) const {
  auto const& F = *target_;
  auto const K = static_cast<std::int64_t>(2 * g.size() / core_.size() + 1);
  Code best = g;
  std::int64_t best_k = 0;
  for (std::int64_t k = -K; k <= K; ++k) {
    if (k == 0) continue;
    Code cand = F.multiply(F.power(images_[0], k), g);
    if (shortlex_less(F, cand, best)) {
      best = std::move(cand);
      best_k = k;
    }
  }
  return {source_->power(source_->generator(0), -best_k), best};
}

// ---------------------------------------------------------------- dispatch

Membership Embedding::contains(Code const& g) const {
  switch (strategy_) {
    case Strategy::FactorHead: {
      auto const& comp = static_cast<CompositeGroup const&>(*target_);
      auto split = comp.split_head(factor_, g);
      if (!split.tail.empty()) return {};
      return inner_->contains(split.head);
    }
    case Strategy::FiniteSource: {
      auto it = finite_preimage_.find(g);
      if (it == finite_preimage_.end()) return {};
      return {Membership::Status::Member, it->second, 0};
    }
    case Strategy::Lattice:
      return contains_lattice(g);
    case Strategy::FreeCyclic:
      return contains_free_cyclic(g);
    case Strategy::Bounded: {
      if (g.empty()) return {Membership::Status::Member, {}, 0};
      ShortlexEnumerator en(source_);
      for (auto const& s : en.ball(search_bound_))
        if (apply(s) == g) return {Membership::Status::Member, s, 0};
      if (en.exhausted()) return {};
      return {Membership::Status::Undecided, {}, search_bound_};
    }
  }
  return {};
}

CosetSplit Embedding::decompose(Code const& g) const {
  switch (strategy_) {
    case Strategy::FactorHead: {
      auto const& comp = static_cast<CompositeGroup const&>(*target_);
      auto split = comp.split_head(factor_, g);
      auto inner = inner_->decompose(split.head);
      return {inner.source, comp.multiply(comp.include(factor_, inner.rep), split.tail)};
    }
    case Strategy::FiniteSource: {
      Code best;
      Code best_sigma;
      bool first = true;
      for (auto const& [s, img] : finite_pairs_) {
        Code cand = target_->multiply(img, g);
        if (first || shortlex_less(*target_, cand, best)) {
          best = std::move(cand);
          best_sigma = s;
          first = false;
        }
      }
      return {source_->inverse(best_sigma), best};
    }
    case Strategy::Lattice:
      return decompose_lattice(g);
    case Strategy::FreeCyclic:
      return decompose_free_cyclic(g);
    case Strategy::Bounded: {
      auto m = contains(g);
      if (m.member()) return {m.preimage, {}};
      throw Undecided("embedding " + name_ + ": coset decomposition needs a decidable membership test",
                      search_bound_);
    }
  }
  throw Error("unreachable");
}

Code Embedding::preimage(Code const& g) const {
  auto m = contains(g);
  if (m.undecided()) throw Undecided("embedding " + name_ + ": membership undecided", m.bound);
  if (!m.member()) throw Error("element " + target_->format(g) + " is not in the image of " + name_);
  return m.preimage;
}

}  // namespace htact
