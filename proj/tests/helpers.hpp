#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "fairmanna/model.hpp"
#include "fairmanna/paperlab.hpp"

namespace testutil {

using namespace fairmanna;

inline Instance make_additive(std::vector<std::string> items,
                              std::vector<std::vector<Rational>> matrix) {
  const int agents = static_cast<int>(matrix.size());
  return Instance(agents, std::move(items), AdditiveModel{std::move(matrix)});
}

inline Allocation named_alloc(const Instance& inst,
                              const std::vector<std::vector<std::string>>& bundles) {
  std::vector<std::vector<int>> indexed(bundles.size());
  for (std::size_t a = 0; a < bundles.size(); ++a)
    for (const auto& label : bundles[a]) indexed[a].push_back(*inst.item_index(label));
  return Allocation::from_bundles(inst.n(), inst.m(), indexed);
}

inline Mask named_mask(const Instance& inst, std::initializer_list<const char*> labels) {
  Mask mask = 0;
  for (const char* l : labels) mask |= Mask{1} << *inst.item_index(l);
  return mask;
}

}  // namespace testutil
