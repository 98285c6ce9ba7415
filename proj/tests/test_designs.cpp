#include <pteq/designs.hpp>
#include <pteq/quadform.hpp>
#include <pteq/sampling.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace pteq;

namespace {

QuadraticForm hex_form() {
    return QuadraticForm(Matrix{{Rational(1), Rational(1, 2)},
                                {Rational(1, 2), Rational(1)}});
}

std::vector<Point> hex_points() {
    return {{Rational(1), Rational(0)},  {Rational(0), Rational(1)},
            {Rational(-1), Rational(0)}, {Rational(0), Rational(-1)},
            {Rational(1), Rational(-1)}, {Rational(-1), Rational(1)}};
}

std::vector<Point> square_points() {
    return {{Rational(1), Rational(0)},
            {Rational(0), Rational(1)},
            {Rational(-1), Rational(0)},
            {Rational(0), Rational(-1)}};
}

} // namespace

TEST_CASE("instance validation") {
    QuadraticForm q(Matrix::identity(2));
    REQUIRE_THROWS_AS(DesignInstance(q, Rational(1), {}, 1), InstanceError);
    REQUIRE_THROWS_AS(DesignInstance(q, Rational(0), {{Rational(1), Rational(0)}}, 1),
                      InstanceError);
    REQUIRE_THROWS_AS(DesignInstance(q, Rational(1), {{Rational(1), Rational(1)}}, 1),
                      InstanceError); // off the quadric
    REQUIRE_THROWS_AS(DesignInstance(q, Rational(1), {{Rational(1), Rational(0)}}, -1),
                      InstanceError);
    REQUIRE_NOTHROW(DesignInstance(q, Rational(1), {{Rational(1), Rational(0)}}, 0));
}

TEST_CASE("independent Chebyshev pair-sum oracle for the bundled designs") {
    // Computes sum_{x,y} T_k(cos_ij) straight from the value recurrence
    // c_{k+1} = 2 c c_k - c_{k-1}, never touching the polynomial table.
    auto pair_sums = [](const QuadraticForm& q, const std::vector<Point>& pts, int tmax) {
        std::vector<Rational> sums(static_cast<size_t>(tmax) + 1, Rational(0));
        for (const Point& x : pts)
            for (const Point& y : pts) {
                const Rational c = q.pair(x, y);
                Rational prev(1), cur = c;
                sums[0] += prev;
                if (tmax >= 1) sums[1] += cur;
                for (int k = 2; k <= tmax; ++k) {
                    Rational next = Rational(2) * c * cur - prev;
                    prev = cur;
                    cur = next;
                    sums[static_cast<size_t>(k)] += cur;
                }
            }
        return sums;
    };

    std::vector<Rational> hex_sums = pair_sums(hex_form(), hex_points(), 6);
    for (int k = 1; k <= 5; ++k) REQUIRE(hex_sums[static_cast<size_t>(k)] == Rational(0));
    REQUIRE(hex_sums[6] == Rational(36));

    QuadraticForm circle(Matrix::identity(2));
    std::vector<Rational> sq_sums = pair_sums(circle, square_points(), 4);
    for (int k = 1; k <= 3; ++k) REQUIRE(sq_sums[static_cast<size_t>(k)] == Rational(0));
    REQUIRE(sq_sums[4] == Rational(16));
}

TEST_CASE("hexagon is a tight 5-design and not a 6-design") {
    DesignCheck five = verify_design(DesignInstance(hex_form(), Rational(1), hex_points(), 5));
    REQUIRE(five.ok);

    DesignCheck six = verify_design(DesignInstance(hex_form(), Rational(1), hex_points(), 6));
    REQUIRE_FALSE(six.ok);
    REQUIRE(six.failing_degree == 6);
    // Oracle: pairwise image angles are multiples of 60 degrees, so the
    // degree-6 Chebyshev sum counts all 36 ordered pairs at value 1.
    REQUIRE(six.failing_sum == Rational(36));

    REQUIRE(tight_size(2, 5) == 6);
}

TEST_CASE("square on the circle is a 3-design, not a 4-design") {
    QuadraticForm q(Matrix::identity(2));
    REQUIRE(verify_design(DesignInstance(q, Rational(1), square_points(), 3)).ok);
    DesignCheck four = verify_design(DesignInstance(q, Rational(1), square_points(), 4));
    REQUIRE_FALSE(four.ok);
    REQUIRE(four.failing_degree == 4);
    REQUIRE(four.failing_sum == Rational(16));
    REQUIRE(tight_size(2, 3) == 4);
}

TEST_CASE("two antipodal points on the unit circle form a 1-design") {
    QuadraticForm q(Matrix::identity(2));
    DesignInstance inst(q, Rational(1),
                        {{Rational(1), Rational(0)}, {Rational(-1), Rational(0)}}, 1);
    REQUIRE(verify_design(inst).ok);
}

TEST_CASE("any antipodal pair is a 1-design on its quadric") {
    std::mt19937_64 rng(811);
    for (int trial = 0; trial < 10; ++trial) {
        const int dim = 2 + static_cast<int>(rng() % 3);
        Matrix a = random_matrix(rng, dim, dim, 2, 2);
        QuadraticForm q(a.transpose() * a + Matrix::identity(dim));
        Point x;
        for (int i = 0; i < dim; ++i) x.push_back(random_small_rational(rng, 3, 2));
        if (std::all_of(x.begin(), x.end(), [](const Rational& v) { return v.is_zero(); }))
            x[0] = Rational(1);
        Point minus_x;
        for (const Rational& v : x) minus_x.push_back(-v);
        const Rational r = q.evaluate(x);
        DesignInstance inst(q, r, {x, minus_x}, 1);
        REQUIRE(verify_design(inst).ok);
    }
}

TEST_CASE("strength zero is vacuous and single points are legal") {
    QuadraticForm q(Matrix::identity(2));
    DesignInstance inst(q, Rational(1), {{Rational(1), Rational(0)}}, 0);
    REQUIRE(verify_design(inst).ok);
}

TEST_CASE("verification is invariant under point permutations") {
    std::mt19937_64 rng(812);
    std::vector<Point> pts = hex_points();
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(pts.begin(), pts.end(), rng);
        REQUIRE(verify_design(DesignInstance(hex_form(), Rational(1), pts, 5)).ok);
        DesignCheck six = verify_design(DesignInstance(hex_form(), Rational(1), pts, 6));
        REQUIRE(six.failing_degree == 6);
        REQUIRE(six.failing_sum == Rational(36));
    }
}

TEST_CASE("verification is invariant under exact orthogonal maps") {
    QuadraticForm q = hex_form();
    Matrix k{{Rational(0), Rational(1)}, {Rational(-1), Rational(0)}};
    Matrix g = cayley_orthogonal(k, q);

    std::vector<Point> moved;
    for (const Point& p : hex_points()) {
        Matrix image = g * Matrix::column(p);
        moved.push_back(image.col_vector(0));
    }
    REQUIRE(verify_design(DesignInstance(q, Rational(1), moved, 5)).ok);
    DesignCheck six = verify_design(DesignInstance(q, Rational(1), moved, 6));
    REQUIRE_FALSE(six.ok);
    REQUIRE(six.failing_degree == 6);
    REQUIRE(six.failing_sum == Rational(36));
}

TEST_CASE("union of two rotated hexagons is again a 5-design") {
    QuadraticForm q = hex_form();
    Matrix k{{Rational(0), Rational(1)}, {Rational(-1), Rational(0)}};
    Matrix g = cayley_orthogonal(k, q);

    std::vector<Point> pts = hex_points();
    std::vector<Point> moved;
    for (const Point& p : pts) {
        Matrix image = g * Matrix::column(p);
        moved.push_back(image.col_vector(0));
    }
    // Blocks must be disjoint for the union to have 12 distinct points.
    for (const Point& p : pts)
        REQUIRE(std::find(moved.begin(), moved.end(), p) == moved.end());
    std::vector<Point> both = pts;
    both.insert(both.end(), moved.begin(), moved.end());
    REQUIRE(verify_design(DesignInstance(q, Rational(1), both, 5)).ok);
}

TEST_CASE("tight sizes") {
    REQUIRE(tight_size(2, 5) == 6);
    REQUIRE(tight_size(2, 2) == 3);
    REQUIRE(tight_size(4, 4) == 14);
    REQUIRE(tight_size(2, 3) == 4);
    REQUIRE(tight_size(4, 2) == 5);
    REQUIRE(tight_size(3, 0) == 1);
    REQUIRE(tight_size(1, 1) == 2);
    REQUIRE_THROWS_AS(tight_size(0, 1), PreconditionError);
    REQUIRE_THROWS_AS(tight_size(2, -1), PreconditionError);
}

TEST_CASE("point heights") {
    REQUIRE(point_height({Rational(1, 2), Rational(-3, 4)}) == 4);
    REQUIRE(point_height({Rational(7), Rational(0)}) == 7);
}

TEST_CASE("chord construction on x^2 + 3y^2 = 1") {
    QuadraticForm q(Matrix::diagonal({Rational(1), Rational(3)}));
    Point base = {Rational(1), Rational(0)};

    // Parameter t = 1, direction (1, 1); membership is the hard assertion.
    auto p = chord_point(q, Rational(1), base, {Rational(1), Rational(1)});
    REQUIRE(p.has_value());
    REQUIRE(q.evaluate(*p) == Rational(1));
    REQUIRE(*p == Point{Rational(1, 2), Rational(-1, 2)});

    // The axis direction reaches the antipode.
    auto anti = chord_point(q, Rational(1), base, {Rational(1), Rational(0)});
    REQUIRE(*anti == Point{Rational(-1), Rational(0)});

    // Tangent-like direction: only the base intersection.
    REQUIRE_FALSE(chord_point(q, Rational(1), base, {Rational(0), Rational(1)}).has_value());

    REQUIRE_THROWS_AS(chord_point(q, Rational(1), {Rational(2), Rational(0)},
                                  {Rational(1), Rational(1)}),
                      PreconditionError);
    REQUIRE_THROWS_AS(chord_point(q, Rational(1), base, {Rational(0), Rational(0)}),
                      PreconditionError);
}

TEST_CASE("enumeration on the unit circle recovers the classic points") {
    QuadraticForm q(Matrix::identity(2));
    Point base = {Rational(1), Rational(0)};
    std::vector<Point> pts = enumerate_rational_points(q, Rational(1), base, 3);

    auto contains = [&](const Point& p) {
        return std::find(pts.begin(), pts.end(), p) != pts.end();
    };
    REQUIRE(contains({Rational(0), Rational(1)}));
    REQUIRE(contains({Rational(0), Rational(-1)}));
    REQUIRE(contains({Rational(-1), Rational(0)}));
    REQUIRE(contains({Rational(3, 5), Rational(4, 5)}));
    REQUIRE(contains({Rational(3, 5), Rational(-4, 5)}));
    REQUIRE_FALSE(contains(base));

    for (const Point& p : pts)
        REQUIRE(q.evaluate(p) == Rational(1)); // postcondition, every output

    REQUIRE(std::is_sorted(pts.begin(), pts.end()));
    REQUIRE(std::adjacent_find(pts.begin(), pts.end()) == pts.end()); // deduplicated
}

TEST_CASE("base discovery by bounded scan") {
    QuadraticForm q(Matrix::diagonal({Rational(1), Rational(3)}));
    auto base = find_point_by_scan(q, Rational(1), 2);
    REQUIRE(base.has_value());
    REQUIRE(q.evaluate(*base) == Rational(1));

    // x^2 + y^2 = 3 has no rational points at all.
    QuadraticForm circle(Matrix::identity(2));
    REQUIRE_FALSE(find_point_by_scan(circle, Rational(3), 4).has_value());
}

TEST_CASE("instance files round trip") {
    DesignInstance inst(hex_form(), Rational(1), hex_points(), 5);
    Json j = to_json(inst);
    DesignInstance back = instance_from_json(j);
    REQUIRE(back.points == inst.points);
    REQUIRE(back.strength_target == 5);
    REQUIRE(back.form.gram() == inst.form.gram());

    Json bad = j;
    bad["points"][0][0] = "2"; // now off the quadric
    REQUIRE_THROWS_AS(instance_from_json(bad), InstanceError);
    Json missing = j;
    missing.erase("t");
    REQUIRE_THROWS_AS(instance_from_json(missing), ParseError);
}
