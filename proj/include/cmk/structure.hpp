#pragma once

#include "cmk/abelian.hpp"

#include <functional>

namespace cmk {

// Structure of a finite abelian group given by a multiplication table oracle
// on element ids 0..n-1. Generators are chosen greedily in id order, so the
// result is deterministic.
struct StructureResult {
  FgAbGroup group;
  std::vector<GroupElem> coords;  // per element id, in `group` coordinates
  std::vector<int> generator_ids;
  GroupHom projection;  // from Z^#gens onto `group`
  GroupHom section;     // right inverse into the free cover
};

StructureResult abelian_structure(int n_elements, int identity_id,
                                  const std::function<int(int, int)>& mul);

}  // namespace cmk
