#pragma once

#include "vanamo/lamb.hpp"

namespace vanamo {

enum class PlannerKind { VaStarOnly, FoNamo, ConstrainedNamo, Vamp, Lamb };

std::string planner_name(PlannerKind k);
std::optional<PlannerKind> parse_planner(const std::string& name);

// FO-NAMO treats unviewed space as free; every other planner only commits to
// motion through viewed cells and is revalidated against visibility.
bool planner_respects_visibility(PlannerKind k);

// Uniform entry point; every planner consumes the same request shape.
LambOutcome plan_with(PlannerKind kind, const PlanRequest& req, const PlannerConfig& cfg);

LambOutcome plan_va_star_only(const PlanRequest& req, const PlannerConfig& cfg);
LambOutcome plan_constrained_namo(const PlanRequest& req, const PlannerConfig& cfg);
LambOutcome plan_fo_namo(const PlanRequest& req, const PlannerConfig& cfg);
LambOutcome plan_vamp(const PlanRequest& req, const PlannerConfig& cfg);

}  // namespace vanamo
