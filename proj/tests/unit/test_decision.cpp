#include <doctest.h>

#include <cantor/construction.hpp>
#include <cantor/random.hpp>

#include "oracles/oracles.hpp"
#include "support/expect.hpp"

using namespace cantor;

namespace {

Point P(const char* s) { return Point::parse(s); }
BitWord W(const char* s) { return BitWord::parse(s); }

std::vector<Point> terminating_points(std::size_t max_resolution) {
    std::set<Point> out;
    for (std::size_t len = 0; len < max_resolution; ++len) {
        for (std::size_t i = 0; i < (std::size_t{1} << len); ++i) out.insert(Point::extend(oracle::index_word(i, len), 0));
    }
    return {out.begin(), out.end()};
}

// A nowhere dense complex: the remainder of a dense run.
CylinderComplex thin_complex(Rng& rng, std::size_t depth) {
    const auto full = CylinderComplex::full();
    return run_construction(full, random_dense_schedule(rng, full, depth, 1)).current;
}

}  // namespace

TEST_CASE("bct_witness examples") {
    const auto full = CylinderComplex::full();
    CHECK(bct_witness(full, {}, 2).point == P(":0"));

    Rng rng(51);
    const std::vector<CylinderComplex> nd{thin_complex(rng, 2)};
    REQUIRE(nowhere_dense_at_depth(nd[0], 2));
    const auto w = bct_witness(full, nd, 2);
    CHECK_FALSE(nd[0].contains(w.point));
    CHECK(oracle::bitmap_contains(oracle::bitmap_complement(oracle::bitmap_of_complex(nd[0], 6)), w.point));

    const std::vector<CylinderComplex> with_full{nd[0], full};
    try {
        bct_witness(full, with_full, 2);
        FAIL("expected a precondition error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::precondition);
        CHECK(std::string(e.what()).find("nd_sets[1]") != std::string::npos);
    }
    CHECK(error_kind([] { bct_witness(CylinderComplex::empty(), {}, 2); }) == ErrorKind::precondition);
}

TEST_CASE("bct_witness backtracks out of dead ends") {
    // [00] is thin at depth 1 yet swallows the leftmost leaf of the space.
    const auto space = CylinderComplex::from_cylinders(std::vector<CylinderWord>{W("00"), W("1")});
    const std::vector<CylinderComplex> nd{CylinderComplex::cylinder(W("00"))};
    REQUIRE(nowhere_dense_at_depth(nd[0], 1));
    const auto w = bct_witness(space, nd, 1);
    CHECK(w.point == P("1:0"));
    CHECK(w.chain == std::vector<CylinderWord>{W("1"), W("1")});
}

TEST_CASE("property: Baire witnesses avoid every thin set") {
    Rng rng(52);
    for (int i = 0; i < 30; ++i) {
        std::vector<CylinderComplex> nd;
        // Four sets of measure <= 3/64 cannot cover a space of measure >= 1/4.
        for (int k = 0; k < 4; ++k) nd.push_back(random_thin_complex(rng, 3, 3));
        const auto space = rng.coin() ? CylinderComplex::full() : random_complex(rng, 2);
        if (space.is_empty()) continue;
        const auto w = bct_witness(space, nd, 3);
        CHECK(space.contains(w.point));
        for (const auto& c : nd) {
            CHECK_FALSE(c.contains(w.point));
            CHECK_FALSE(oracle::bitmap_contains(oracle::bitmap_of_complex(c, c.height()), w.point));
        }
        for (std::size_t k = 0; k + 1 < w.chain.size(); ++k) CHECK(w.chain[k].is_prefix_of(w.chain[k + 1]));
    }
}

TEST_CASE("bct_witness reports thin sets that cover the space at finite resolution") {
    // Each set is nowhere dense at depth 1, but together they cover [0].
    const std::vector<CylinderComplex> nd{
        CylinderComplex::from_cylinders(std::vector<CylinderWord>{W("000"), W("010")}),
        CylinderComplex::from_cylinders(std::vector<CylinderWord>{W("001"), W("011")}),
    };
    REQUIRE(nowhere_dense_at_depth(nd[0], 1));
    REQUIRE(nowhere_dense_at_depth(nd[1], 1));
    CHECK(error_kind([&] { bct_witness(CylinderComplex::cylinder(W("0")), nd, 1); }) == ErrorKind::precondition);
    CHECK_FALSE(nd[1].contains(bct_witness(CylinderComplex::full(), nd, 1).point));
}

TEST_CASE("bisection examples") {
    const PointedSet full(CylinderComplex::full());
    const auto r = bisection_locate(full, P("1:0"), 10);
    CHECK(r.member);
    CHECK(r.steps == 1);
    REQUIRE(r.trace.size() == 1);
    CHECK(r.trace[0].mid == P("1:0"));
    CHECK(r.trace[0].branch == Branch::hit);

    const PointedSet right(CylinderComplex::cylinder(W("1")));
    const auto s = bisection_locate(right, P("01:0"), 10);
    CHECK_FALSE(s.member);
    CHECK(s.steps == 2);
    CHECK(s.trace[0].branch == Branch::left);
    CHECK(s.trace[1].mid == P("01:0"));
    CHECK(to_string(s.trace[0].branch) == "L");
}

TEST_CASE("bisection at the endpoints and off the dyadic grid") {
    const PointedSet full(CylinderComplex::full());
    CHECK(bisection_locate(full, P(":0"), 3).steps == 1);
    CHECK(bisection_locate(full, P(":1"), 3).steps == 1);
    try {
        bisection_locate(full, P(":01"), 12);
        FAIL("expected the budget to run out");
    } catch (const BisectionBudgetExceeded& e) {
        CHECK(e.kind() == ErrorKind::budget_exceeded);
        CHECK(e.trace().size() == 12);
    }
    // 0111… and 1000… share a value but only the latter is on the grid.
    CHECK(error_kind([&] { bisection_locate(full, P("0:1"), 20); }) == ErrorKind::budget_exceeded);
    CHECK(error_kind([&] { bisection_locate(full, P("0:1"), 0); }) == ErrorKind::precondition);
}

TEST_CASE("bisection decides membership through extras and holes") {
    const PointedSet s(CylinderComplex::cylinder(W("0")), {P("11:0")}, {P("01:0")});
    CHECK(bisection_locate(s, P("11:0"), 8).member);
    CHECK_FALSE(bisection_locate(s, P("01:0"), 8).member);
    CHECK(bisection_locate(s, P("001:0"), 8).member);
    CHECK_FALSE(bisection_locate(s, P("101:0"), 8).member);
}

TEST_CASE("property: every terminating point of resolution <= 6 is located in time") {
    const PointedSet full(CylinderComplex::full());
    Rng rng(53);
    const auto space = random_pointed_set(rng, 3, 2);
    for (const auto& x : terminating_points(6)) {
        const std::size_t res = x.preperiod().size() + x.period().size();
        const auto r = bisection_locate(full, x, 64);
        CHECK(r.member);
        CHECK(r.steps <= res + 1);
        CHECK(r.steps == oracle::expected_bisection_steps(x));
        CHECK(bisection_locate(space, x, 64).member == space.contains(x));
        for (std::size_t k = 0; k + 1 < r.trace.size(); ++k) {
            const auto& t = r.trace[k];
            CHECK(t.a < t.mid);
            CHECK(t.mid < t.b);
            CHECK(t.a <= x);
            CHECK(x <= t.b);
        }
    }
}

TEST_CASE("verify_P_definition examples") {
    const auto full = CylinderComplex::full();
    const auto r = verify_P_definition(full, 2, 1024);
    CHECK(r.exhaustive_empty);
    CHECK(r.max_k_nonempty == 3);
    CHECK(r.candidates == 4);
    CHECK(r.exhaustive_search);
    const auto st = run_construction(full, r.witness_schedule);
    CHECK_FALSE(st.current.is_empty());
    CHECK(st.deleted.size() == 3);

    const auto census = oracle::enumerate_schedules(oracle::Bitmap(2, true));
    CHECK(census.max_nonempty == 3);
    CHECK(census.full_length_empties);
    CHECK(census.schedules == 65);

    const auto e = verify_P_definition(CylinderComplex::empty(), 2, 1024);
    CHECK(e.max_k_nonempty == 0);
    CHECK(e.exhaustive_empty);

    const auto half = verify_P_definition(CylinderComplex::cylinder(W("0")), 1, 1024);
    CHECK(half.max_k_nonempty == 0);
    CHECK(half.exhaustive_empty);

    CHECK(error_kind([&] { verify_P_definition(full, 5, 16); }) == ErrorKind::budget_exceeded);
}

TEST_CASE("property: guided search agrees with enumeration") {
    Rng rng(54);
    for (int i = 0; i < 60; ++i) {
        const std::size_t depth = rng.below(5);
        const auto space = random_complex(rng, depth);
        const auto ex = verify_P_definition(space, depth, 1 << 10, PSearch::exhaustive);
        const auto gd = verify_P_definition(space, depth, 1 << 10, PSearch::guided);
        CHECK(ex.max_k_nonempty == gd.max_k_nonempty);
        CHECK(ex.exhaustive_empty);
        for (const auto* rep : {&ex, &gd}) {
            const auto st = run_construction(space, rep->witness_schedule);
            CHECK(st.deleted.size() == rep->max_k_nonempty);
            if (rep->max_k_nonempty > 0) CHECK_FALSE(st.current.is_empty());
        }
        if (depth <= 3) {
            const auto census = oracle::enumerate_schedules(oracle::bitmap_of_complex(space, depth));
            CHECK(census.max_nonempty == ex.max_k_nonempty);
            CHECK(census.full_length_empties);
        }
    }
}

TEST_CASE("classify_cardinality examples") {
    CHECK(classify_cardinality(PointedSet(CylinderComplex::full()), 4).str() == "ContinuumScale");
    const PointedSet two(CylinderComplex::empty(), {P(":0"), P(":1")});
    CHECK(classify_cardinality(two, 4) == CardinalityClass{CardinalityClass::Kind::finite, 2});
    CHECK(classify_cardinality(two, 4).str() == "Finite(2)");
    CHECK(classify_cardinality(PointedSet(), 4).str() == "Empty");
    const PointedSet mixed(CylinderComplex::cylinder(W("0")), {P(":1")});
    CHECK(classify_cardinality(mixed, 4).kind == CardinalityClass::Kind::continuum_scale);
}

TEST_CASE("naturals_demo examples") {
    const std::vector<std::size_t> some{3, 5};
    const auto a = naturals_demo(10, some);
    CHECK(a.remainder_size == 5);
    CHECK_FALSE(a.empties_in_limit);
    CHECK(a.rerun_remainder == 15);

    std::vector<std::size_t> all;
    for (std::size_t n = 0; n <= 10; ++n) all.push_back(n);
    const auto b = naturals_demo(10, all);
    CHECK(b.remainder_size == 0);
    CHECK(b.empties_in_limit);

    const auto c = naturals_demo(10, {});
    CHECK(c.remainder_size == 10);
    CHECK_FALSE(c.empties_in_limit);

    const std::vector<std::size_t> out{11};
    CHECK(error_kind([&] { naturals_demo(10, out); }) == ErrorKind::malformed_input);
}

TEST_CASE("property: naturals remainders match explicit sets") {
    Rng rng(55);
    for (int i = 0; i < 200; ++i) {
        const std::size_t bound = 1 + rng.below(40);
        std::vector<std::size_t> del;
        for (std::size_t j = 0; j < rng.below(5); ++j) del.push_back(rng.below(bound + 1));
        const auto r = naturals_demo(bound, del);
        CHECK(r.remainder_size == oracle::naturals_remainder(bound, del));
        const bool cofinal = std::find(del.begin(), del.end(), bound) != del.end();
        CHECK(r.empties_in_limit == cofinal);
        if (!cofinal) CHECK(r.rerun_remainder > r.remainder_size);
    }
}
