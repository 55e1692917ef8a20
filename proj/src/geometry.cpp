#include "hetnet/geometry.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hetnet {

const char* to_string(Role r) {
    switch (r) {
        case Role::CoreRouter: return "cr";
        case Role::MBS: return "mbs";
        case Role::SBS: return "sbs";
        case Role::MU: return "mu";
        case Role::SU: return "su";
    }
    return "?";
}

double Window::minimal_half_extent(double R_c, double min_density) {
    const double nn_scale = 1.0 / std::sqrt(M_PI * min_density);
    return 10.0 * std::max(R_c, nn_scale);
}

Window Window::for_simulation(double half_extent, bool toroidal, double R_c,
                              double min_density) {
    const double floor_extent = minimal_half_extent(R_c, min_density);
    if (half_extent <= 0.0) return Window{floor_extent, toroidal};
    if (half_extent < floor_extent)
        throw std::invalid_argument(
            "window half_extent " + std::to_string(half_extent) +
            " below edge-effect floor " + std::to_string(floor_extent));
    return Window{half_extent, toroidal};
}

NearestHit nearest(Point q, const PointSet& s, const Window& w) {
    NearestHit best;
    double best_d2 = 0.0;
    for (std::size_t i = 0; i < s.pts.size(); ++i) {
        const double d2 = w.dist2(q, s.pts[i]);
        if (best.index < 0 || d2 < best_d2) {
            best.index = static_cast<std::int64_t>(i);
            best_d2 = d2;
        }
    }
    if (best.index >= 0) best.distance = std::sqrt(best_d2);
    return best;
}

NeighborGrid::NeighborGrid(const PointSet& s, const Window& w) : set_(s), win_(w) {
    const std::size_t n = s.pts.size();
    // Aim for ~1 point per cell, bounded to keep empty sets and small windows sane.
    n_cells_ = std::clamp(static_cast<int>(std::sqrt(static_cast<double>(n) + 1.0)), 1, 512);
    cell_size_ = w.side() / n_cells_;
    cells_.assign(static_cast<std::size_t>(n_cells_) * n_cells_, {});
    for (std::size_t i = 0; i < n; ++i) {
        const int cx = cell_of(s.pts[i].x);
        const int cy = cell_of(s.pts[i].y);
        cells_[static_cast<std::size_t>(cy) * n_cells_ + cx].push_back(
            static_cast<std::int32_t>(i));
    }
}

int NeighborGrid::cell_of(double v) const {
    int c = static_cast<int>((v + win_.half_extent) / cell_size_);
    return std::clamp(c, 0, n_cells_ - 1);
}

void NeighborGrid::scan_cell(int cx, int cy, Point q, NearestHit& best) const {
    if (win_.toroidal) {
        cx = (cx % n_cells_ + n_cells_) % n_cells_;
        cy = (cy % n_cells_ + n_cells_) % n_cells_;
    } else if (cx < 0 || cy < 0 || cx >= n_cells_ || cy >= n_cells_) {
        return;
    }
    for (std::int32_t i : cells_[static_cast<std::size_t>(cy) * n_cells_ + cx]) {
        const double d2 = win_.dist2(q, set_.pts[static_cast<std::size_t>(i)]);
        if (best.index < 0 || d2 < best.distance ||
            (d2 == best.distance && i < best.index)) {
            best.index = i;
            best.distance = d2;  // holds squared distance during the search
        }
    }
}

NearestHit NeighborGrid::nearest(Point q) const {
    NearestHit best;
    if (set_.pts.empty()) return best;
    const int qx = cell_of(q.x);
    const int qy = cell_of(q.y);
    const int max_ring = win_.toroidal ? (n_cells_ + 1) / 2 : n_cells_;
    for (int ring = 0; ring <= max_ring; ++ring) {
        if (best.index >= 0) {
            // Cells in this ring are at least (ring-1) full cells away.
            const double lower = (ring - 1) * cell_size_;
            if (lower > 0.0 && lower * lower > best.distance) break;
        }
        if (ring == 0) {
            scan_cell(qx, qy, q, best);
            continue;
        }
        for (int dx = -ring; dx <= ring; ++dx) {
            scan_cell(qx + dx, qy - ring, q, best);
            scan_cell(qx + dx, qy + ring, q, best);
        }
        for (int dy = -ring + 1; dy <= ring - 1; ++dy) {
            scan_cell(qx - ring, qy + dy, q, best);
            scan_cell(qx + ring, qy + dy, q, best);
        }
    }
    best.distance = std::sqrt(best.distance);
    return best;
}

std::string to_csv(const PointSet& s) {
    std::ostringstream out;
    out << "role,x,y,parent_index\n";
    out.precision(17);
    for (std::size_t i = 0; i < s.pts.size(); ++i) {
        const std::int32_t parent =
            s.parent_index.empty() ? -1 : s.parent_index[i];
        out << to_string(s.role) << ',' << s.pts[i].x << ',' << s.pts[i].y << ','
            << parent << '\n';
    }
    return out.str();
}

}  // namespace hetnet
