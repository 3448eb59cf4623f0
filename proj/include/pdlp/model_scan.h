// Minimal-model scan over a small propositional positive program encoded
// as bitmasks. Two implementations: a serial reference that collects every
// model and filters pairwise, and an OpenMP kernel that tests modelhood for
// all subsets in parallel and derives minimality from a subset-closure
// transform. Both return the minimal models in increasing mask order.

#ifndef PDLP_MODEL_SCAN_H_
#define PDLP_MODEL_SCAN_H_

#include <cstdint>
#include <vector>

namespace pdlp::scan {

using Mask = std::uint64_t;

// Atom i of the local program is bit i. A clause is satisfied by S unless
// body is a subset of S and head is disjoint from S.
struct MaskClause {
  Mask body = 0;
  Mask head = 0;
};

struct LocalProgram {
  int num_atoms = 0;
  std::vector<MaskClause> clauses;
};

// The parallel kernel allocates two bytes per subset.
inline constexpr int kMaxAtoms = 28;

bool IsModel(const LocalProgram& p, Mask s);

std::vector<Mask> MinimalModelsSerial(const LocalProgram& p);
std::vector<Mask> MinimalModelsParallel(const LocalProgram& p);

}  // namespace pdlp::scan

#endif  // PDLP_MODEL_SCAN_H_
