#include "pdlp/model_scan.h"

#include <omp.h>

#include <cstddef>
#include <stdexcept>

namespace pdlp::scan {

namespace {

void CheckSize(const LocalProgram& p) {
  if (p.num_atoms < 0 || p.num_atoms > kMaxAtoms)
    throw std::length_error("model scan supports at most " + std::to_string(kMaxAtoms) +
                            " atoms, got " + std::to_string(p.num_atoms));
}

bool IsSubset(Mask a, Mask b) { return (a & ~b) == 0; }

}  // namespace

bool IsModel(const LocalProgram& p, Mask s) {
  for (const auto& c : p.clauses)
    if (IsSubset(c.body, s) && (c.head & s) == 0) return false;
  return true;
}

std::vector<Mask> MinimalModelsSerial(const LocalProgram& p) {
  CheckSize(p);
  const Mask n = Mask{1} << p.num_atoms;
  std::vector<Mask> models;
  for (Mask s = 0; s < n; ++s)
    if (IsModel(p, s)) models.push_back(s);

  std::vector<Mask> minimal;
  for (Mask m : models) {
    bool has_submodel = false;
    for (Mask o : models) {
      if (o != m && IsSubset(o, m)) {
        has_submodel = true;
        break;
      }
    }
    if (!has_submodel) minimal.push_back(m);
  }
  return minimal;
}

std::vector<Mask> MinimalModelsParallel(const LocalProgram& p) {
  CheckSize(p);
  const std::int64_t n = std::int64_t{1} << p.num_atoms;
  std::vector<unsigned char> model(static_cast<std::size_t>(n));
  const LocalProgram* prog = &p;

#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < n; ++s) model[s] = IsModel(*prog, static_cast<Mask>(s)) ? 1 : 0;

  // below[s] = 1 iff some subset of s (s included) is a model.
  std::vector<unsigned char> below(model);
  for (int bit = 0; bit < p.num_atoms; ++bit) {
    const std::int64_t b = std::int64_t{1} << bit;
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < n; ++s)
      if ((s & b) && below[s ^ b]) below[s] = 1;
  }

  // A model is minimal iff no set obtained by dropping one atom lies above
  // a model.
  std::vector<unsigned char> minimal(static_cast<std::size_t>(n), 0);
  const int atoms = p.num_atoms;
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < n; ++s) {
    if (!model[s]) continue;
    bool ok = true;
    for (int bit = 0; bit < atoms && ok; ++bit) {
      const std::int64_t b = std::int64_t{1} << bit;
      if ((s & b) && below[s ^ b]) ok = false;
    }
    minimal[s] = ok ? 1 : 0;
  }

  std::vector<Mask> out;
  for (std::int64_t s = 0; s < n; ++s)
    if (minimal[s]) out.push_back(static_cast<Mask>(s));
  return out;
}

}  // namespace pdlp::scan
