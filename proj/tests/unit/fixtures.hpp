#pragma once

#include <functional>
#include <string>
#include <vector>

#include "depseq/core.hpp"
#include "depseq/error.hpp"
#include "doctest.h"

namespace fixtures {

inline depseq::Sentence haag() { return depseq::Sentence({"Ms.", "Haag", "plays", "Elianti", "."}); }

inline depseq::DependencyGraph haag_tree() {
  return depseq::DependencyGraph(5, {{1, 2, "nn"}, {2, 3, "nsubj"}, {3, 3, "root"}, {4, 3, "dobj"}, {5, 3, "punct"}});
}

inline depseq::Schema stanford() { return depseq::Schema::tree("ptb", {"nn", "nsubj", "dobj", "punct", "root"}); }

// Runs fn and returns the code of the Error it throws; fails the test when
// nothing is thrown.
inline depseq::ErrorCode code_of(const std::function<void()>& fn, std::string* message = nullptr) {
  try {
    fn();
  } catch (const depseq::Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  FAIL("no error thrown");
  return depseq::ErrorCode::kMalformed;
}

}  // namespace fixtures
