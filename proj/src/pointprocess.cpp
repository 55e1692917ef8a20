#include "hetnet/pointprocess.hpp"

#include <stdexcept>

namespace hetnet {

namespace {
constexpr double kMaxExpectedPoints = 5.0e7;
}

PointSet sample_ppp(double intensity, const Window& w, Role role, RandomStream& rs) {
    if (intensity < 0.0) throw std::invalid_argument("sample_ppp: negative intensity");
    const double mean = intensity * w.area();
    if (mean > kMaxExpectedPoints)
        throw std::invalid_argument("sample_ppp: expected count exceeds guard");
    PointSet out;
    out.role = role;
    const std::uint64_t n = rs.poisson(mean);
    out.pts.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        out.pts.push_back({rs.uniform(-w.half_extent, w.half_extent),
                           rs.uniform(-w.half_extent, w.half_extent)});
    }
    return out;
}

PointSet sample_php(double candidate_intensity, const PointSet& holes, double R_c,
                    const Window& w, Role role, RandomStream& rs) {
    PointSet cand = sample_ppp(candidate_intensity, w, role, rs);
    if (holes.empty() || R_c <= 0.0) return cand;
    const NeighborGrid grid(holes, w);
    PointSet out;
    out.role = role;
    out.pts.reserve(cand.pts.size());
    const double r2 = R_c * R_c;
    for (const Point& p : cand.pts) {
        const NearestHit hit = grid.nearest(p);
        if (hit.distance * hit.distance >= r2) out.pts.push_back(p);
    }
    return out;
}

PointSet sample_daughters(const PointSet& parents, double c_bar, double R_c,
                          const Window& w, Role role, RandomStream& rs) {
    if (c_bar < 0.0) throw std::invalid_argument("sample_daughters: negative c_bar");
    PointSet out;
    out.role = role;
    for (std::size_t pi = 0; pi < parents.pts.size(); ++pi) {
        const std::uint64_t n = rs.poisson(c_bar);
        for (std::uint64_t j = 0; j < n; ++j) {
            // Uniform in the disk via sqrt-radius.
            const double rho = R_c * std::sqrt(rs.uniform());
            const double phi = rs.uniform(0.0, 2.0 * M_PI);
            Point p{parents.pts[pi].x + rho * std::cos(phi),
                    parents.pts[pi].y + rho * std::sin(phi)};
            if (w.toroidal) {
                p = w.wrap(p);
            } else if (!w.contains(p)) {
                continue;
            }
            out.pts.push_back(p);
            out.parent_index.push_back(static_cast<std::int32_t>(pi));
        }
    }
    return out;
}

ClusterProcess sample_mcp(double parent_intensity, double c_bar, double R_c,
                          const Window& w, Role role, RandomStream& rs) {
    ClusterProcess cp;
    cp.parents = sample_ppp(parent_intensity, w, role, rs);
    cp.daughters = sample_daughters(cp.parents, c_bar, R_c, w, role, rs);
    return cp;
}

}  // namespace hetnet
