#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstddef>

#include "hetnet/geometry.hpp"
#include "hetnet/pointprocess.hpp"
#include "hetnet/rng.hpp"

using namespace hetnet;

namespace {

// 99.99% two-sided normal band for a Poisson total with the given mean.
bool within_poisson_band(double count, double mean) {
    return std::abs(count - mean) <= 3.9 * std::sqrt(mean);
}

}  // namespace

TEST_CASE("homogeneous sampling hits the target intensity") {
    Window w{2000.0, true};
    RandomStream rs(5, 0);
    const double intensity = 4.0e-5;
    double total = 0.0;
    const int reps = 40;
    for (int i = 0; i < reps; ++i) {
        RandomStream s(5, static_cast<std::uint64_t>(i));
        const PointSet p = sample_ppp(intensity, w, Role::MBS, s);
        CHECK(p.role == Role::MBS);
        CHECK(p.parent_index.empty());
        for (const Point& pt : p.pts) CHECK(w.contains(pt));
        total += static_cast<double>(p.size());
    }
    CHECK(within_poisson_band(total, intensity * w.area() * reps));
    (void)rs;
}

TEST_CASE("hole thinning matches the survival factor") {
    Window w{2500.0, true};
    const double lambda_holes = 1.5e-5;
    const double lambda_cand = 5.5e-5;
    const double R_c = 80.0;
    const double survival = std::exp(-lambda_holes * M_PI * R_c * R_c);

    double retained = 0.0;
    const int reps = 60;
    for (int i = 0; i < reps; ++i) {
        RandomStream s(21, static_cast<std::uint64_t>(i));
        const PointSet holes = sample_ppp(lambda_holes, w, Role::MBS, s);
        const PointSet kept = sample_php(lambda_cand, holes, R_c, w, Role::SBS, s);
        // no survivor may sit strictly inside an exclusion ball
        for (const Point& pt : kept.pts) {
            const auto h = nearest(pt, holes, w);
            if (h.index >= 0) CHECK(h.distance >= R_c);
        }
        retained += static_cast<double>(kept.size());
    }
    const double expect = lambda_cand * survival * w.area() * reps;
    // thinning adds variance beyond Poisson; keep a wider band
    CHECK(std::abs(retained - expect) <= 5.0 * std::sqrt(expect));
}

TEST_CASE("no holes means no thinning") {
    Window w{1500.0, true};
    RandomStream s(3, 9);
    const PointSet none;
    const PointSet kept = sample_php(5.0e-5, none, 80.0, w, Role::SBS, s);
    RandomStream s2(3, 9);
    const PointSet plain = sample_ppp(5.0e-5, w, Role::SBS, s2);
    REQUIRE(kept.size() == plain.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        CHECK(kept.pts[i].x == plain.pts[i].x);
        CHECK(kept.pts[i].y == plain.pts[i].y);
    }
}

TEST_CASE("cluster daughters stay near their parent") {
    Window w{2000.0, true};
    RandomStream s(11, 0);
    PointSet parents = sample_ppp(2.0e-5, w, Role::SBS, s);
    REQUIRE(parents.size() > 0);
    const double R_c = 80.0;
    const PointSet d = sample_daughters(parents, 3.0, R_c, w, Role::SU, s);
    REQUIRE(d.parent_index.size() == d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto pi = d.parent_index[i];
        REQUIRE(pi >= 0);
        REQUIRE(static_cast<std::size_t>(pi) < parents.size());
        CHECK(w.dist(d.pts[i], parents.pts[static_cast<std::size_t>(pi)]) <=
              R_c + 1e-9);
        CHECK(w.contains(d.pts[i]));
    }
}

TEST_CASE("cluster process intensity is parents times mean brood") {
    Window w{2000.0, true};
    const double lambda_p = 1.5e-5;
    const double c_bar = 3.0;
    double parents_total = 0.0;
    double daughters_total = 0.0;
    const int reps = 50;
    for (int i = 0; i < reps; ++i) {
        RandomStream s(31, static_cast<std::uint64_t>(i));
        const ClusterProcess cp = sample_mcp(lambda_p, c_bar, 80.0, w, Role::SBS, s);
        parents_total += static_cast<double>(cp.parents.size());
        daughters_total += static_cast<double>(cp.daughters.size());
    }
    const double mean_parents = lambda_p * w.area() * reps;
    CHECK(within_poisson_band(parents_total, mean_parents));
    // daughter total is Poisson with mean c_bar per parent
    CHECK(within_poisson_band(daughters_total, mean_parents * c_bar));
}

TEST_CASE("daughter offsets fill the ball uniformly") {
    Window w{500.0, true};
    PointSet one_parent;
    one_parent.role = Role::SBS;
    one_parent.pts = {{0.0, 0.0}};
    RandomStream s(17, 4);
    const double R_c = 80.0;
    double inside_half = 0.0;
    double n = 0.0;
    for (int i = 0; i < 400; ++i) {
        const PointSet d = sample_daughters(one_parent, 5.0, R_c, w, Role::SU, s);
        for (const Point& pt : d.pts) {
            n += 1.0;
            if (w.dist(pt, {0.0, 0.0}) <= R_c * 0.5) inside_half += 1.0;
        }
    }
    REQUIRE(n > 1000.0);
    // uniform in the ball puts 1/4 of the mass inside half the radius
    const double frac = inside_half / n;
    CHECK(std::abs(frac - 0.25) <= 3.9 * std::sqrt(0.25 * 0.75 / n));
}

TEST_CASE("streams are deterministic and independent") {
    Window w{1000.0, true};

    RandomStream a(42, 7);
    RandomStream b(42, 7);
    const PointSet pa = sample_ppp(5.0e-5, w, Role::CoreRouter, a);
    const PointSet pb = sample_ppp(5.0e-5, w, Role::CoreRouter, b);
    REQUIRE(pa.size() == pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) {
        CHECK(pa.pts[i].x == pb.pts[i].x);
        CHECK(pa.pts[i].y == pb.pts[i].y);
    }

    RandomStream c(42, 8);
    const PointSet pc = sample_ppp(5.0e-5, w, Role::CoreRouter, c);
    bool identical = pc.size() == pa.size();
    if (identical) {
        for (std::size_t i = 0; i < pa.size(); ++i)
            if (pa.pts[i].x != pc.pts[i].x || pa.pts[i].y != pc.pts[i].y)
                identical = false;
    }
    CHECK_FALSE(identical);
}

TEST_CASE("raw stream statistics") {
    RandomStream s(123, 0);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) sum += s.uniform();
    CHECK(sum / n == doctest::Approx(0.5).epsilon(2e-3));

    double esum = 0.0;
    for (int i = 0; i < n; ++i) esum += s.exponential(30.0);
    CHECK(esum / n == doctest::Approx(30.0).epsilon(1e-2));

    double psum = 0.0;
    for (int i = 0; i < 20000; ++i)
        psum += static_cast<double>(s.poisson(3.0));
    CHECK(psum / 20000.0 == doctest::Approx(3.0).epsilon(2e-2));

    // large-mean branch of the Poisson sampler
    double big = 0.0;
    for (int i = 0; i < 4000; ++i)
        big += static_cast<double>(s.poisson(400.0));
    CHECK(big / 4000.0 == doctest::Approx(400.0).epsilon(5e-3));

    for (int i = 0; i < 1000; ++i) {
        const auto idx = s.uniform_index(7);
        CHECK(idx < 7);
    }
}
