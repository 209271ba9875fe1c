#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dustsqp/nlp.hpp"

namespace dustsqp {

/// Hock-Schittkowski problems shipped with the library, in suite order.
const std::vector<std::string>& feasible_problem_names();

/// The same problems with the contradictory x_1 bounds appended ("_inf").
std::vector<std::string> infeasible_problem_names();

/// Every name accepted by get_problem.
std::vector<std::string> problem_names();

/**
 * Looks up a problem by name. Accepts the HS names ("hs28"), their
 * infeasible variants ("hs28_inf") and the synthetic medium-scale problem
 * "synth500". Throws UnknownProblemError listing the valid names otherwise.
 */
NlpProblem get_problem(std::string_view name);

/**
 * Deterministic convex test problem: a separable quadratic-plus-quartic
 * objective under m_eq linear equalities and m - m_eq linear inequalities,
 * all consistent at a hidden reference point. The starting point is 0.
 */
NlpProblem make_random_convex_problem(int n, int m, int m_eq,
                                      std::uint64_t seed);

}  // namespace dustsqp
