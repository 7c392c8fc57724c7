#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "graphknot/knot_expr.hpp"
#include "graphknot/predict.hpp"

namespace graphknot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCheckFailed = 2;

struct Hooks {
  // Forwarded to the predictor pipeline; tests use it to corrupt predictions.
  std::function<void(const KnotExpr&, DeltaPrediction&)> tamper;
};

// Runs one command; args excludes the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks = {});

}  // namespace graphknot::cli
