#include "fairmanna/reductions.hpp"

#include <algorithm>
#include <set>

namespace fairmanna::reductions {

X3CInstance::X3CInstance(int q_, std::vector<std::string> ground,
                         std::vector<std::array<int, 3>> sets)
    : q(q_), ground_set(std::move(ground)), collection(std::move(sets)) {
  if (q < 2) raise(Errc::bad_parameters, "X3C needs q >= 2");
  if (static_cast<int>(ground_set.size()) != 3 * q)
    raise(Errc::bad_parameters, "ground set must have exactly 3q elements");
  std::set<std::string> unique(ground_set.begin(), ground_set.end());
  if (unique.size() != ground_set.size())
    raise(Errc::bad_parameters, "ground-set labels must be unique");
  for (auto& triple : collection) {
    std::sort(triple.begin(), triple.end());
    if (triple[0] == triple[1] || triple[1] == triple[2])
      raise(Errc::bad_parameters, "collection members must have 3 distinct elements");
    for (int e : triple)
      if (e < 0 || e >= 3 * q) raise(Errc::bad_parameters, "collection element out of range");
  }
}

std::optional<Cover> x3c_solve_bruteforce(const X3CInstance& x3c, std::uint64_t cap) {
  const int Q = x3c.Q();
  const int q = x3c.q;
  if (Q < q) return std::nullopt;

  std::uint64_t combos = 1;
  for (int i = 0; i < q; ++i) {
    combos = combos * (Q - i) / (i + 1);
    if (combos > cap)
      raise(Errc::too_large, "C(Q, q) exceeds the subset-enumeration cap " + std::to_string(cap));
  }

  std::vector<Mask> set_masks(Q, 0);
  for (int c = 0; c < Q; ++c)
    for (int e : x3c.collection[c]) set_masks[c] |= Mask{1} << e;
  const Mask want = (Mask{1} << (3 * x3c.q)) - 1;

  // Lexicographically first q-combination wins.
  std::vector<int> pick(q);
  for (int i = 0; i < q; ++i) pick[i] = i;
  while (true) {
    Mask covered = 0;
    bool disjoint = true;
    for (int c : pick) {
      if (covered & set_masks[c]) {
        disjoint = false;
        break;
      }
      covered |= set_masks[c];
    }
    if (disjoint && covered == want) return pick;

    int i = q - 1;
    while (i >= 0 && pick[i] == Q - q + i) --i;
    if (i < 0) return std::nullopt;
    ++pick[i];
    for (int j = i + 1; j < q; ++j) pick[j] = pick[j - 1] + 1;
  }
}

namespace {

void require_reducible(const X3CInstance& x3c) {
  if (x3c.q < 2) raise(Errc::bad_parameters, "reduction needs q >= 2");
  if (x3c.Q() <= 3 * x3c.q)
    raise(Errc::bad_parameters, "reduction needs Q > 3q, got Q = " + std::to_string(x3c.Q()) +
                                    ", q = " + std::to_string(x3c.q));
}

std::vector<std::string> item_labels(int q, int y_triples, bool with_z) {
  std::vector<std::string> labels;
  for (int i = 1; i <= 3 * q; ++i) labels.push_back("x" + std::to_string(i));
  for (int k = 1; k <= y_triples; ++k)
    for (int j = 1; j <= 3; ++j)
      labels.push_back("y" + std::to_string(j) + "_" + std::to_string(k));
  if (with_z) labels.push_back("z");
  return labels;
}

}  // namespace

ReducedInstance reduce_x3c_jf1(const X3CInstance& x3c, std::optional<Rational> M_opt) {
  require_reducible(x3c);
  const int q = x3c.q;
  const int Q = x3c.Q();
  const Rational M = M_opt.value_or(Rational(3 * Q - 3 * q + 7));
  if (M.sign() <= 0) raise(Errc::bad_parameters, "penalty M must be positive");

  const int y_triples = Q - q + 1;
  const int items = 3 * q + 3 * y_triples + 1;
  std::vector<std::vector<Rational>> matrix(Q + 1, std::vector<Rational>(items));

  for (int a = 0; a < Q; ++a) {
    Mask members = 0;
    for (int e : x3c.collection[a]) members |= Mask{1} << e;
    for (int i = 0; i < 3 * q; ++i)
      matrix[a][i] = (members >> i) & 1 ? Rational(1) : -M;
    for (int t = 3 * q; t < items - 1; ++t) matrix[a][t] = 1;
    matrix[a][items - 1] = 0;
  }
  for (int i = 0; i < 3 * q; ++i) matrix[Q][i] = 0;
  for (int t = 3 * q; t < items - 1; ++t) matrix[Q][t] = 1;
  matrix[Q][items - 1] = Rational(-(3 * q - 3)) * M + 3;

  std::vector<char> roles(items, 'y');
  for (int i = 0; i < 3 * q; ++i) roles[i] = 'x';
  roles[items - 1] = 'z';

  return ReducedInstance{ReductionVariant::jf1_hardness,
                         q,
                         Q,
                         M,
                         Instance(Q + 1, item_labels(q, y_triples, true), AdditiveModel{matrix}),
                         std::move(roles),
                         x3c.collection};
}

ReducedInstance reduce_x3c_jf1po_binary(const X3CInstance& x3c) {
  require_reducible(x3c);
  const int q = x3c.q;
  const int Q = x3c.Q();

  const int y_triples = Q - q;
  const int items = 3 * q + 3 * y_triples;  // = 3Q
  std::vector<std::vector<Rational>> matrix(Q, std::vector<Rational>(items));
  for (int a = 0; a < Q; ++a) {
    Mask members = 0;
    for (int e : x3c.collection[a]) members |= Mask{1} << e;
    for (int i = 0; i < 3 * q; ++i)
      matrix[a][i] = (members >> i) & 1 ? Rational(1) : Rational(0);
    for (int t = 3 * q; t < items; ++t) matrix[a][t] = 1;
  }

  std::vector<char> roles(items, 'y');
  for (int i = 0; i < 3 * q; ++i) roles[i] = 'x';

  return ReducedInstance{ReductionVariant::jf1_po_binary,
                         q,
                         Q,
                         Rational(0),
                         Instance(Q, item_labels(q, y_triples, false), AdditiveModel{matrix}),
                         std::move(roles),
                         x3c.collection};
}

Allocation cover_to_allocation(const ReducedInstance& red, const Cover& cover) {
  const int q = red.q;
  const int Q = red.Q;
  if (static_cast<int>(cover.size()) != q)
    raise(Errc::invalid_cover, "a cover must have exactly q = " + std::to_string(q) + " sets");

  Mask covered = 0;
  for (int c : cover) {
    if (c < 0 || c >= Q) raise(Errc::invalid_cover, "cover index out of range");
    Mask members = 0;
    for (int e : red.collection[c]) members |= Mask{1} << e;
    if (covered & members) raise(Errc::invalid_cover, "cover sets overlap");
    covered |= members;
  }
  if (covered != (Mask{1} << (3 * q)) - 1)
    raise(Errc::invalid_cover, "cover does not span the ground set");

  const Instance& inst = red.instance;
  std::vector<int> owner(inst.m(), -1);
  std::vector<bool> in_cover(inst.n(), false);
  for (int c : cover) {
    in_cover[c] = true;
    for (int e : red.collection[c]) owner[e] = c;
  }

  int next_triple = 0;
  for (int a = 0; a < inst.n(); ++a) {
    if (in_cover[a]) continue;
    const int base = 3 * q + 3 * next_triple++;
    owner[base] = owner[base + 1] = owner[base + 2] = a;
  }
  if (red.variant == ReductionVariant::jf1_hardness)
    owner[inst.m() - 1] = *std::min_element(cover.begin(), cover.end());

  return Allocation(inst.n(), std::move(owner));
}

std::optional<Cover> allocation_to_cover(const ReducedInstance& red, const Allocation& alloc) {
  const Instance& inst = red.instance;
  require_valid(inst, alloc);

  for (int a = 0; a < inst.n(); ++a)
    if (inst.value(a, alloc.bundle_mask(a)) != Rational(3)) return std::nullopt;

  Cover cover;
  for (int a = 0; a < red.Q; ++a) {
    Mask held_x = alloc.bundle_mask(a) & ((Mask{1} << (3 * red.q)) - 1);
    if (held_x == 0) continue;
    Mask members = 0;
    for (int e : red.collection[a]) members |= Mask{1} << e;
    if (held_x != members) return std::nullopt;
    cover.push_back(a);
  }
  if (static_cast<int>(cover.size()) != red.q) return std::nullopt;
  return cover;
}

}  // namespace fairmanna::reductions
