#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hetnet/params.hpp"

namespace hetnet {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Square observation window [-half_extent, half_extent]^2. Toroidal mode
// wraps coordinates and measures distances on the torus, which removes
// window edge effects from interference and association.
struct Window {
    double half_extent = 0.0;
    bool toroidal = true;

    double side() const { return 2.0 * half_extent; }
    double area() const { return side() * side(); }

    bool contains(Point p) const {
        return p.x >= -half_extent && p.x <= half_extent &&
               p.y >= -half_extent && p.y <= half_extent;
    }

    double wrap1(double v) const {
        const double s = side();
        v = std::remainder(v, s);
        if (v < -half_extent) v += s;
        if (v > half_extent) v -= s;
        return v;
    }

    Point wrap(Point p) const {
        if (!toroidal) return p;
        return {wrap1(p.x), wrap1(p.y)};
    }

    double dx(double a, double b) const {
        double d = a - b;
        if (!toroidal) return d;
        const double s = side();
        if (d > half_extent) d -= s;
        else if (d < -half_extent) d += s;
        return d;
    }

    double dist2(Point a, Point b) const {
        const double ddx = dx(a.x, b.x);
        const double ddy = dx(a.y, b.y);
        return ddx * ddx + ddy * ddy;
    }

    double dist(Point a, Point b) const { return std::sqrt(dist2(a, b)); }

    // Smallest half-extent the edge-effect guard allows for a run whose
    // sparsest sampled process has density min_density.
    static double minimal_half_extent(double R_c, double min_density);

    // Validated construction for simulation use; throws std::invalid_argument
    // when the requested extent violates the edge-effect guard.
    static Window for_simulation(double half_extent, bool toroidal, double R_c,
                                 double min_density);
};

enum class Role : std::uint8_t { CoreRouter, MBS, SBS, MU, SU };

const char* to_string(Role r);

struct PointSet {
    Role role = Role::MBS;
    std::vector<Point> pts;
    // Cluster parent index per point; empty for non-clustered processes.
    std::vector<std::int32_t> parent_index;

    std::size_t size() const { return pts.size(); }
    bool empty() const { return pts.empty(); }
};

struct NearestHit {
    std::int64_t index = -1;  // -1 when the set is empty
    double distance = 0.0;
};

// Exhaustive nearest neighbor; ties resolve to the lowest index.
NearestHit nearest(Point q, const PointSet& s, const Window& w);

// Uniform-grid accelerator with the same result contract as nearest(),
// including tie resolution, used on simulation hot paths.
class NeighborGrid {
  public:
    NeighborGrid(const PointSet& s, const Window& w);

    NearestHit nearest(Point q) const;

  private:
    const PointSet& set_;
    Window win_;
    int n_cells_ = 1;
    double cell_size_ = 0.0;
    std::vector<std::vector<std::int32_t>> cells_;

    int cell_of(double v) const;
    void scan_cell(int cx, int cy, Point q, NearestHit& best) const;
};

// "role,x,y,parent_index" CSV rows (parent_index -1 when not clustered).
std::string to_csv(const PointSet& s);

}  // namespace hetnet
