#pragma once

#include "llg1d/det_solver.hpp"

#include <ostream>
#include <string>

namespace llg1d {

// Shortest round-trip decimal formatting, '.' separator, locale-independent.
std::string format_double(double x);

inline constexpr const char* kCsvHeader =
    "path_id,t,l2,h1,linf,energy,sphere_residual,dist_h1_plus,dist_h1_minus";

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& rec, std::uint64_t path_id,
                          bool header = true);

// Optional full-state rows: path_id,t,node,x,m1,m2,m3.
void write_states_csv(std::ostream& os, const TrajectoryRecord& rec, const Grid1D& g,
                      std::uint64_t path_id);

} // namespace llg1d
