#pragma once

#include "hetnet/geometry.hpp"
#include "hetnet/rng.hpp"

namespace hetnet {

// Homogeneous PPP of the given intensity on the window.
PointSet sample_ppp(double intensity, const Window& w, Role role, RandomStream& rs);

// Hole process: candidate PPP thinned by exclusion balls of radius R_c
// around the hole centers. Points at distance exactly R_c are retained.
PointSet sample_php(double candidate_intensity, const PointSet& holes, double R_c,
                    const Window& w, Role role, RandomStream& rs);

// Cluster process: Poisson(c_bar) daughters per parent, uniform in the
// R_c-ball around the parent. In a toroidal window daughters wrap, so the
// retained intensity is exactly parent_intensity * c_bar; otherwise daughters
// falling outside the window are dropped.
PointSet sample_daughters(const PointSet& parents, double c_bar, double R_c,
                          const Window& w, Role role, RandomStream& rs);

// Parent PPP plus daughters in one call.
struct ClusterProcess {
    PointSet parents;
    PointSet daughters;
};
ClusterProcess sample_mcp(double parent_intensity, double c_bar, double R_c,
                          const Window& w, Role role, RandomStream& rs);

}  // namespace hetnet
