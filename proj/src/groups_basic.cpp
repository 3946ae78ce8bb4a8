#include <htact/groups.hpp>

#include <deque>
#include <numeric>

namespace htact {

namespace {

Word merge_letters(std::vector<std::pair<int, int>> const& letters) {
  Word w;
  for (auto [gen, sign] : letters) {
    if (!w.empty() && w.back().gen == gen && (w.back().exp > 0) == (sign > 0))
      w.back().exp += sign;
    else
      w.push_back({gen, sign});
  }
  return w;
}

}  // namespace

// ---------------------------------------------------------------- finite

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::vector<int> generators)
    : table_(std::move(table)), gens_(std::move(generators)) {
  int const n = static_cast<int>(table_.size());
  if (n == 0) throw Error("finite group: empty table");
  for (auto const& row : table_) {
    if (static_cast<int>(row.size()) != n) throw Error("finite group: table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw Error("finite group: table entry out of range");
  }
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw Error("finite group: no identity element");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw Error("finite group: table is not associative");
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
  for (int a = 0; a < n; ++a)
    if (inverse_[a] < 0) throw Error("finite group: element without inverse");
  for (int g : gens_)
    if (g < 0 || g >= n) throw Error("finite group: generator out of range");

  // Shortlex-least words by breadth-first search over g0 < g0^-1 < g1 < ...
  std::vector<std::vector<std::pair<int, int>>> raw(n);
  std::vector<bool> seen(n, false);
  seen[identity_] = true;
  std::deque<int> queue{identity_};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
      for (int sign : {1, -1}) {
        int s = sign > 0 ? gens_[gi] : inverse_[gens_[gi]];
        int y = table_[x][s];
        if (seen[y]) continue;
        seen[y] = true;
        raw[y] = raw[x];
        raw[y].emplace_back(static_cast<int>(gi), sign);
        queue.push_back(y);
      }
    }
  }
  for (int a = 0; a < n; ++a)
    if (!seen[a]) throw Error("finite group: generators do not generate the table");
  words_.resize(n);
  for (int a = 0; a < n; ++a) words_[a] = merge_letters(raw[a]);
}

Code FiniteGroup::multiply(Code const& a, Code const& b) const {
  return encode(table_[index_of(a)][index_of(b)]);
}

Code FiniteGroup::inverse(Code const& a) const { return encode(inverse_[index_of(a)]); }

Word FiniteGroup::word(Code const& a) const { return words_[index_of(a)]; }

bool FiniteGroup::is_normal(Code const& a) const {
  if (a.empty()) return true;
  return a.size() == 1 && a[0] >= 0 && a[0] < static_cast<std::int64_t>(table_.size()) && a[0] != identity_;
}

std::vector<Code> FiniteGroup::elements() const {
  std::vector<Code> out;
  out.push_back({});
  for (int i = 0; i < static_cast<int>(table_.size()); ++i)
    if (i != identity_) out.push_back({i});
  return out;
}

std::shared_ptr<FiniteGroup> make_cyclic(int order) {
  if (order < 1) throw Error("cyclic group order must be positive");
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) t[i][j] = (i + j) % order;
  std::vector<int> gens;
  if (order > 1) gens.push_back(1);
  return std::make_shared<FiniteGroup>(std::move(t), std::move(gens));
}

std::shared_ptr<FiniteGroup> make_trivial() { return make_cyclic(1); }

// ---------------------------------------------------------- free abelian

FreeAbelianGroup::FreeAbelianGroup(int rank) : rank_(rank) {
  if (rank < 1) throw Error("free abelian group rank must be positive");
}

Code FreeAbelianGroup::generator(std::size_t i) const {
  Code c(static_cast<std::size_t>(rank_), 0);
  c.at(i) = 1;
  return c;
}

std::vector<std::int64_t> FreeAbelianGroup::coords(Code const& a) const {
  if (a.empty()) return std::vector<std::int64_t>(static_cast<std::size_t>(rank_), 0);
  return a;
}

Code FreeAbelianGroup::from_coords(std::vector<std::int64_t> const& v) const {
  for (auto x : v)
    if (x != 0) return v;
  return {};
}

Code FreeAbelianGroup::multiply(Code const& a, Code const& b) const {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<std::int64_t> v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i] + b[i];
  return from_coords(v);
}

Code FreeAbelianGroup::inverse(Code const& a) const {
  Code v = a;
  for (auto& x : v) x = -x;
  return v;
}

Word FreeAbelianGroup::word(Code const& a) const {
  Word w;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) w.push_back({static_cast<int>(i), a[i]});
  return w;
}

bool FreeAbelianGroup::is_normal(Code const& a) const {
  if (a.empty()) return true;
  return static_cast<int>(a.size()) == rank_ && from_coords(a) == a;
}

// ------------------------------------------------------------------ free

FreeGroup::FreeGroup(int rank) : rank_(rank) {
  if (rank < 1) throw Error("free group rank must be positive");
}

Code FreeGroup::multiply(Code const& a, Code const& b) const {
  std::size_t cancel = 0;
  while (cancel < a.size() && cancel < b.size() && a[a.size() - 1 - cancel] == -b[cancel]) ++cancel;
  Code out(a.begin(), a.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(cancel), b.end());
  return out;
}

Code FreeGroup::inverse(Code const& a) const {
  Code out(a.rbegin(), a.rend());
  for (auto& x : out) x = -x;
  return out;
}

Word FreeGroup::word(Code const& a) const {
  std::vector<std::pair<int, int>> letters;
  letters.reserve(a.size());
  for (auto x : a) letters.emplace_back(static_cast<int>(std::llabs(x)) - 1, x > 0 ? 1 : -1);
  return merge_letters(letters);
}

bool FreeGroup::is_normal(Code const& a) const {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0 || std::llabs(a[i]) > rank_) return false;
    if (i > 0 && a[i] == -a[i - 1]) return false;
  }
  return true;
}

// ------------------------------------------------------------ semidirect

IntMatrix matmul(IntMatrix const& a, IntMatrix const& b) {
  std::size_t n = a.size();
  IntMatrix c(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

std::vector<std::int64_t> matvec(IntMatrix const& a, std::vector<std::int64_t> const& v) {
  std::vector<std::int64_t> out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

namespace {
IntMatrix identity_matrix(int r) {
  IntMatrix m(static_cast<std::size_t>(r), std::vector<std::int64_t>(static_cast<std::size_t>(r), 0));
  for (int i = 0; i < r; ++i) m[i][i] = 1;
  return m;
}
}  // namespace

SemidirectGroup::SemidirectGroup(std::shared_ptr<FiniteGroup const> quotient, int rank,
                                 std::vector<IntMatrix> generator_action)
    : quotient_(std::move(quotient)), rank_(rank), generator_action_(std::move(generator_action)) {
  if (!quotient_) throw Error("semidirect product: missing quotient group");
  if (rank_ < 0) throw Error("semidirect product: negative rank");
  if (generator_action_.size() != quotient_->num_generators())
    throw Error("semidirect product: need one action matrix per quotient generator");
  for (auto const& m : generator_action_) {
    if (static_cast<int>(m.size()) != rank_) throw Error("semidirect product: action matrix has wrong size");
    for (auto const& row : m)
      if (static_cast<int>(row.size()) != rank_) throw Error("semidirect product: action matrix has wrong size");
  }
  auto const n = quotient_->order();
  actions_.assign(n, {});
  std::vector<bool> done(n, false);
  int const e = quotient_->index_of({});
  actions_[e] = identity_matrix(rank_);
  done[e] = true;
  std::deque<int> queue{e};
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (std::size_t gi = 0; gi < quotient_->num_generators(); ++gi) {
      int y = quotient_->index_of(quotient_->multiply(quotient_->encode(q), quotient_->generator(gi)));
      if (done[y]) continue;
      done[y] = true;
      actions_[y] = matmul(actions_[q], generator_action_[gi]);
      queue.push_back(y);
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      int ab = quotient_->index_of(quotient_->multiply(quotient_->encode(static_cast<int>(a)),
                                                       quotient_->encode(static_cast<int>(b))));
      if (matmul(actions_[a], actions_[b]) != actions_[ab])
        throw Error("semidirect product: action matrices do not respect the quotient multiplication");
    }
  // Homomorphism plus A(1) = I forces every A(q) to be unimodular.
}

std::size_t SemidirectGroup::num_generators() const {
  return quotient_->num_generators() + static_cast<std::size_t>(rank_);
}

SemidirectGroup::Parts SemidirectGroup::split(Code const& a) const {
  if (a.empty()) return {quotient_->index_of({}), std::vector<std::int64_t>(static_cast<std::size_t>(rank_), 0)};
  return {static_cast<int>(a[0]), std::vector<std::int64_t>(a.begin() + 1, a.end())};
}

Code SemidirectGroup::join(Parts const& p) const {
  bool trivial = p.q == quotient_->index_of({});
  for (auto x : p.v) trivial = trivial && x == 0;
  if (trivial) return {};
  Code c{p.q};
  c.insert(c.end(), p.v.begin(), p.v.end());
  return c;
}

Code SemidirectGroup::generator(std::size_t i) const {
  auto nq = quotient_->num_generators();
  Parts p{quotient_->index_of({}), std::vector<std::int64_t>(static_cast<std::size_t>(rank_), 0)};
  if (i < nq)
    p.q = quotient_->index_of(quotient_->generator(i));
  else
    p.v.at(i - nq) = 1;
  return join(p);
}

Code SemidirectGroup::multiply(Code const& a, Code const& b) const {
  if (a.empty()) return b;
  if (b.empty()) return a;
  auto pa = split(a);
  auto pb = split(b);
  auto av = matvec(actions_[pa.q], pb.v);
  for (std::size_t i = 0; i < av.size(); ++i) av[i] += pa.v[i];
  int q = quotient_->index_of(quotient_->multiply(quotient_->encode(pa.q), quotient_->encode(pb.q)));
  return join({q, av});
}

Code SemidirectGroup::inverse(Code const& a) const {
  if (a.empty()) return a;
  auto p = split(a);
  int qi = quotient_->index_of(quotient_->inverse(quotient_->encode(p.q)));
  auto v = matvec(actions_[qi], p.v);
  for (auto& x : v) x = -x;
  return join({qi, v});
}

Word SemidirectGroup::word(Code const& a) const {
  auto p = split(a);
  Word w;
  auto nq = static_cast<int>(quotient_->num_generators());
  for (int i = 0; i < rank_; ++i)
    if (p.v[i] != 0) w.push_back({nq + i, p.v[i]});
  for (auto const& l : quotient_->word(quotient_->encode(p.q))) w.push_back(l);
  return w;
}

bool SemidirectGroup::is_normal(Code const& a) const {
  if (a.empty()) return true;
  if (static_cast<int>(a.size()) != rank_ + 1) return false;
  if (a[0] < 0 || a[0] >= static_cast<std::int64_t>(quotient_->order())) return false;
  return join(split(a)) == a;
}

}  // namespace htact
