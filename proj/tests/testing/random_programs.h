// Test-only helpers: a random generator of small propositional programs and
// ground formulas, and a naive minimal-model oracle that shares no code
// with the library's scan.

#ifndef PDLP_TESTS_RANDOM_PROGRAMS_H_
#define PDLP_TESTS_RANDOM_PROGRAMS_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pdlp/grounder.h"
#include "pdlp/worlds.h"

namespace pdlp::testing {

struct RandomProgramShape {
  int max_statements = 3;  // each with 2..3 hypotheses
  int max_clauses = 6;
  int max_regular_atoms = 6;
};

// Program text in the input syntax.
std::string RandomProgramText(std::mt19937& rng, const RandomProgramShape& shape = {});

// A ground formula over the regular atoms of gp (or constants if none).
Formula RandomFormula(std::mt19937& rng, const GroundProgram& gp, int depth = 3);

// Subset scan over every atom of gp, hypotheses included, checking each
// clause and integrity constraint literally. Feasible for ~20 atoms.
std::vector<Interpretation> NaiveMinimalModels(const GroundProgram& gp, const HypothesisSet& h);

// Sum over hypothesis bases of Pr(base) times the satisfying fraction of
// NaiveMinimalModels.
double NaiveProbability(const GroundProgram& gp, const Formula& f);

std::string FixturePath(const std::string& name);
std::string ReadFixture(const std::string& name);
std::string ReadGolden(const std::string& name);

}  // namespace pdlp::testing

#endif  // PDLP_TESTS_RANDOM_PROGRAMS_H_
