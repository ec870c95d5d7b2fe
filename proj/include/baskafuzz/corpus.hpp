#pragma once

#include <optional>
#include <string>
#include <vector>

#include "baskafuzz/fuzzy_number.hpp"
#include "baskafuzz/operator_kernel.hpp"

namespace baskafuzz {

/// Rate class used by convergence studies. Concave nondecreasing functions
/// converge at the omega_1(f; 1/n) rate; everything else is generic.
enum class RateClass { ConcaveNondecreasing, Generic, Excluded };

/// Nonnegative test function on [lo, hi] with a closed-form modulus and
/// known shape facts.
struct CorpusEntry {
  SampledFunction f;
  double lo = 0.0;
  double hi = 1.0;
  bool concave = false;
  bool nondecreasing = false;
  bool lipschitz = false;
  std::optional<double> peak;  // set for unimodal members
  RateClass rate_class = RateClass::Excluded;
};

/// Function corpus shared by the tests, the acceptance suite, the bench and
/// the CLI's `{"type":"corpus"}` functions.
const std::vector<CorpusEntry>& function_corpus();

/// Throws Error(InvalidArgument) for an unknown name.
const CorpusEntry& corpus_function(const std::string& name);

struct FuzzyCorpusEntry {
  std::string name;
  FuzzyNumber u;
};

/// Continuous trapezoidal and piecewise-linear fuzzy numbers with c < d.
const std::vector<FuzzyCorpusEntry>& fuzzy_corpus();

}  // namespace baskafuzz
