#include "vvs/closure.hpp"
#include "vvs/norms.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

using namespace vvs;

TEST_CASE("boundary loop walks the rectangle once") {
    Grid g(7, 6, 0.0, 1.2, -1.0, 0.5, false);
    std::vector<BoundaryNode> loop = boundary_loop(g);
    REQUIRE(loop.size() == 2 * (7 + 6) - 4);

    CHECK(loop.front().i == 0);
    CHECK(loop.front().j == 0);
    CHECK(loop.front().sigma == 0.0);
    CHECK(loop.front().edge == 0);
    CHECK(loop.front().normal[0] == -1.0);
    CHECK(loop.front().tangent[1] == 1.0);

    CHECK(loop[1].i == 0);
    CHECK(loop[1].j == 1);
    CHECK(loop[1].sigma == doctest::Approx(g.h2()));

    std::set<std::pair<int, int>> seen;
    for (const BoundaryNode& b : loop) {
        CHECK(g.on_boundary(b.i, b.j));
        seen.insert({b.i, b.j});
    }
    CHECK(seen.size() == loop.size());

    double perimeter = 2.0 * (1.2 + 1.5);
    CHECK(loop.back().sigma == doctest::Approx(perimeter - g.h1()));
    CHECK(loop.back().edge == 3);
    CHECK(loop.back().i == 1);
    CHECK(loop.back().j == 0);
}

TEST_CASE("periodic strips wrap the first direction") {
    Grid g(8, 5, 0.0, 2.0, 0.0, 1.0, true);
    CHECK(g.unique_nx() == 7);
    CHECK(g.wrap(-1) == 6);
    CHECK(g.wrap(7) == 0);
    CHECK(g.wrap(9) == 2);
    CHECK(g.h1() == doctest::Approx(2.0 / 7.0));
    CHECK(g.on_boundary(3, 0));
    CHECK(g.on_boundary(3, 4));
    CHECK(!g.on_boundary(0, 2));
}

TEST_CASE("grid rejects degenerate input") {
    CHECK_THROWS_AS(Grid(4, 6, 0.0, 1.0, 0.0, 1.0, false), std::invalid_argument);
    CHECK_THROWS_AS(Grid(6, 6, 1.0, 0.0, 0.0, 1.0, false), std::invalid_argument);
    CHECK_THROWS_AS(Grid(6, 6, 0.0, 1.0, 2.0, 2.0, false), std::invalid_argument);
}

TEST_CASE("closure tables interpolate, clamp, and invert") {
    ClosureTable t({0.0, 1.0, 3.0}, {2.0, 4.0, 5.0});
    CHECK(t.eval(0.5) == doctest::Approx(3.0));
    CHECK(t.eval(2.0) == doctest::Approx(4.5));
    CHECK(t.eval(-7.0) == 2.0);
    CHECK(t.eval(9.0) == 5.0);
    CHECK(t.min_value() == 2.0);
    CHECK(t.max_value() == 5.0);
    CHECK(t.lipschitz() == doctest::Approx(2.0));
    CHECK(t.inverse(4.5) == doctest::Approx(2.0));
    CHECK(t.inverse(2.0) == doctest::Approx(0.0));

    ClosureTable s = t.shifted(1.5);
    CHECK(s.eval(2.0) == doctest::Approx(t.eval(0.5)));

    ClosureTable c = ClosureTable::constant(3.25);
    CHECK(c.eval(-100.0) == 3.25);
    CHECK(c.eval(100.0) == 3.25);

    ClosureTable step = ClosureTable::step(1.0, 2.0, 0.0, 0.5);
    CHECK(step.eval(-1.0) == 1.0);
    CHECK(step.eval(1.0) == 2.0);
    CHECK(step.eval(0.0) == doctest::Approx(1.5));

    CHECK_THROWS_AS(ClosureTable({1.0, 1.0}, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ClosureTable({0.0, 1.0}, {0.0}), std::invalid_argument);
}

TEST_CASE("node weights tile the domain") {
    for (bool periodic : {false, true}) {
        Grid g(9, 7, 0.0, 1.8, -0.5, 0.5, periodic);
        double total = 0.0;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) total += node_weight(g, i, j);
        CHECK(total == doctest::Approx(1.8 * 1.0));
    }
}

TEST_CASE("discrete norms on simple fields") {
    Grid g(17, 13, 0.0, 2.0, 0.0, 1.0, false);
    ScalarField one(g, 1.0);
    CHECK(l2_norm(one) == doctest::Approx(std::sqrt(2.0)));

    ScalarField lin(g);
    lin.fill_from([](double x, double) { return x; });
    Norms n = discrete_norms(lin);
    CHECK(n.h1_semi == doctest::Approx(std::sqrt(2.0)));
    CHECK(n.h2_semi == doctest::Approx(0.0).epsilon(1e-12));
}
