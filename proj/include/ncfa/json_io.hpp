#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ncfa/harness.hpp"

namespace ncfa {

// Matrix input format shared across modules:
// {"blocks": [{"dim": n, "weight": w, "entries": [[[re,im],...],...]}, ...]}
// entries row-major, exact field names.
std::string element_to_json(const AlgElement& x);
std::pair<TracialAlgebra, AlgElement> element_from_json(const std::string& text);

// StepFunction serialization: [{"v": value, "len": length}, ...] decreasing.
std::string step_to_json(const StepFunction& mu);
StepFunction step_from_json(const std::string& text);

// Report JSON: array of objects with theorem_id, spec, variant, ensemble
// {kind,K,n,seed,mean_zero}, trials, excluded, surrogate_flags, exploratory,
// lhs[], rhs[], ratio_min, ratio_max, ratio_geomean. Key order is fixed and
// doubles print via the shortest round-trip form, so identical inputs yield
// byte-identical output.
std::string reports_to_json(const std::vector<RatioReport>& reports);

// CSV: one row per trial with header
// theorem_id,spec,kind,K,n,seed,trial,lhs,rhs,ratio
std::string reports_to_csv(const std::vector<RatioReport>& reports);

}  // namespace ncfa
