#include "llg1d/output.hpp"

#include <charconv>

namespace llg1d {

std::string format_double(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& rec, std::uint64_t path_id,
                          bool header) {
    if (header)
        os << kCsvHeader << '\n';
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        const Diagnostics& d = rec.diags[i];
        os << path_id << ',' << format_double(rec.times[i]) << ',' << format_double(d.l2) << ','
           << format_double(d.h1) << ',' << format_double(d.linf) << ','
           << format_double(d.energy) << ',' << format_double(d.sphere_residual) << ','
           << format_double(d.dist_h1_plus) << ',' << format_double(d.dist_h1_minus) << '\n';
    }
}

void write_states_csv(std::ostream& os, const TrajectoryRecord& rec, const Grid1D& g,
                      std::uint64_t path_id) {
    os << "path_id,t,node,x,m1,m2,m3\n";
    for (std::size_t i = 0; i < rec.times.size(); ++i)
        for (int n = 0; n < g.n_points; ++n) {
            const Vec3& m = rec.states[i][n];
            os << path_id << ',' << format_double(rec.times[i]) << ',' << n << ','
               << format_double(n * g.spacing) << ',' << format_double(m.x) << ','
               << format_double(m.y) << ',' << format_double(m.z) << '\n';
        }
}

} // namespace llg1d
