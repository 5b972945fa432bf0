#pragma once

#include "permbal/arith.hpp"

#include <optional>
#include <vector>

namespace permbal {

// Exact feasibility of { z : A z <= b } with every z_j free, by the simplex
// method over rationals (largest-coefficient pivoting with a Bland fallback,
// so it always terminates). Returns a
// feasible point, or nullopt when the system is infeasible.
std::optional<std::vector<Rational>> find_feasible_point(const std::vector<std::vector<Rational>>& a,
                                                         const std::vector<Rational>& b);

// Same system solved by adding violated rows to a working subset until the
// subset's solution satisfies every row. Cheaper when few rows bind.
// `seed_rows` are the rows the working subset starts from.
std::optional<std::vector<Rational>> find_feasible_point_lazy(const std::vector<std::vector<Rational>>& a,
                                                              const std::vector<Rational>& b,
                                                              const std::vector<std::size_t>& seed_rows);

}  // namespace permbal
