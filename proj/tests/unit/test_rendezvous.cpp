#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "visrdv/rendezvous/pma.hpp"

using namespace visrdv;
using namespace testing;

TEST_CASE("saturated step") {
    Point s = saturated_step({0, 0}, {3, 4}, 0.5);
    CHECK(s.x == doctest::Approx(0.3));
    CHECK(s.y == doctest::Approx(0.4));
    CHECK(saturated_step({0, 0}, {0.1, 0}, 0.5) == Point{0.1, 0});
    CHECK(saturated_step({1, 1}, {1, 1}, 0.5) == Point{0, 0});
}

TEST_CASE("coincident robots do not move") {
    ContractedRegion reg(load_env("floorplan"), 1.0);
    std::vector<Point> pts(5, Point{10, 10});
    StepResult res = pma_step(pts, PmaParams{}, reg);
    for (const Point& p : res.positions) CHECK(p == Point{10, 10});
    CHECK(res.report.ok());
}

TEST_CASE("two robots in a convex room close in on their midpoint") {
    ContractedRegion reg(square_env(), 1.0);
    std::vector<Point> pts{{2, 3}, {8, 6}};
    PmaParams params;
    params.r = 30;
    double d0 = dist(pts[0], pts[1]);
    Point mid = (pts[0] + pts[1]) * 0.5;
    MotionPlan plan = plan_motion(0, pts, {1}, reg, params);
    // the motion set is the segment between the two; its circumcenter is the midpoint
    CHECK(dist(plan.target, mid) < 1e-9);
    StepResult res = pma_step(pts, params, reg);
    CHECK(dist(res.positions[0], pts[0]) == doctest::Approx(0.5));
    CHECK(dist(res.positions[0], res.positions[1]) == doctest::Approx(d0 - 1.0));
    std::vector<Point> cur = pts;
    for (int k = 0; k < 20; ++k) cur = pma_step(cur, params, reg).positions;
    CHECK(dist(cur[0], cur[1]) < 1e-9);
    CHECK(dist(cur[0], mid) < 1e-9);
}

TEST_CASE("one step keeps every invariant on random floor-plan swarms") {
    Environment env = load_env("floorplan");
    std::mt19937_64 gen(51);
    PmaParams params;
    for (int k = 0; k < 10; ++k) {
        ContractedRegion reg(env, 1.5);
        std::vector<Point> pts(12);
        for (auto& p : pts) p = sample_in(reg, gen);
        StepChecks checks;
        checks.motion_sets = true;
        StepResult res = pma_step(pts, params, reg, checks);
        CHECK(res.report.ok());
        CHECK(res.report.components_after <= res.report.components_before);
        CHECK(res.report.edges_kept == res.report.constraint_edges);
        CHECK(res.report.v_after <= res.report.v_before + 1e-6 * reg.scale());
        for (size_t i = 0; i < pts.size(); ++i) {
            CHECK(dist(res.positions[i], pts[i]) <= params.s_max + 1e-12);
            CHECK(reg.contains_approx(res.positions[i]));
            CHECK(res.plans[i].motion_set.contains(res.positions[i], 1e-9 * reg.scale()));
        }
    }
}

TEST_CASE("locally cliqueless constraints keep the component count") {
    Environment env = load_env("floorplan");
    std::mt19937_64 gen(52);
    PmaParams params;
    params.constraint_graph = ConstraintGraph::locally_cliqueless;
    ContractedRegion reg(env, 1.0);
    std::vector<Point> pts(10);
    for (auto& p : pts) p = sample_in(reg, gen);
    for (int k = 0; k < 10; ++k) {
        StepResult res = pma_step(pts, params, reg);
        CHECK(res.report.components_after <= res.report.components_before);
        pts = res.positions;
    }
}

TEST_CASE("perimeter Lyapunov value") {
    ContractedRegion reg(square_env(), 1.0);
    CHECK(perimeter_lyapunov({{2, 2}, {2, 5}}, reg) == doctest::Approx(6.0));
    // separate components add up
    ContractedRegion l(lshape_env(), 1.0);
    CHECK(perimeter_lyapunov({{3, 17}, {3, 15}, {17, 3}, {15, 3}}, l) > 0.0);
}

TEST_CASE("stepping commutes with rotating and shifting the scene") {
    Environment env = load_env("floorplan");
    std::mt19937_64 gen(53);
    std::uniform_real_distribution<double> ang(-kPi, kPi), sh(-50, 50);
    PmaParams params;
    ContractedRegion reg(env, 1.0);
    for (int k = 0; k < 5; ++k) {
        std::vector<Point> pts(8);
        for (auto& p : pts) p = sample_in(reg, gen);
        double err = frame_transform_check(pts, params, env, 1.0, ang(gen), {sh(gen), sh(gen)});
        CHECK(err <= 1e-6 * env.scale());
    }
}

TEST_CASE("step report serialises as one JSON line") {
    StepReport r;
    r.index = 3;
    r.violations = {"x"};
    std::string s = to_jsonl(r);
    CHECK(s.find('\n') == std::string::npos);
    CHECK(s.find("\"step\":3") != std::string::npos);
}
