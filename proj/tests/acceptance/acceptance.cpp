// Acceptance run: one PASS/FAIL line per criterion, each timed against its limit.

#include <cantor/construction.hpp>
#include <cantor/json_io.hpp>
#include <cantor/random.hpp>
#include <cantor/umetric.hpp>

#include "oracles/oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace cantor;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream note;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) note << "first failure: " << what;
        ok = ok && cond;
    }
};

Point P(const char* s) { return Point::parse(s); }

std::optional<ErrorKind> kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

Point near(Rng& rng, const Point& anchor, std::size_t res) {
    return random_point_extending(rng, anchor.prefix(rng.below(res + 1)), std::max<std::size_t>(res / 2, 1));
}

// 1. Ultrametric axioms with exact rationals.
void ultrametric(Outcome& o) {
    Rng rng(1001);
    std::size_t triples = 0;
    for (; triples < 1000; ++triples) {
        const Point x = random_point(rng, 10);
        const Point y = near(rng, x, 10);
        const Point z = near(rng, rng.coin() ? x : y, 10);
        const std::string at = x.str() + " " + y.str() + " " + z.str();
        const Rational dxy = distance(x, y), dyz = distance(y, z), dxz = distance(x, z);
        o.expect(distance(x, x) == 0, "d(x,x) at " + at);
        o.expect((dxy == 0) == (x == y), "identity at " + at);
        o.expect(dxy == distance(y, x), "symmetry at " + at);
        o.expect(dxz <= dxy + dyz, "triangle at " + at);
        o.expect(std::max(dxy, dyz) >= dxz, "strong triangle at " + at);
        o.expect(dxy <= Rational(1, 2), "bound at " + at);
        const auto fd = oracle::scan_disagreement(x, y, 64);
        o.expect(dxy == (fd ? pow2_inv(*fd + 1) : Rational(0)), "value against bit scan at " + at);
    }
    o.note << triples << " triples";
}

// 2. Formal distance carries and the four triangle cases.
void formal_algebra(Outcome& o) {
    std::size_t carries = 0;
    for (std::uint32_t q = 0; q <= 2; ++q) {
        for (std::uint32_t n = 1; n <= 16; ++n, ++carries) {
            const auto u = FormalDistance::unit({q, n});
            o.expect(oplus(u, u) == FormalDistance::unit({q, n - 1}), "carry at " + OrdinalIndex{q, n}.str());
        }
        const auto limit = FormalDistance::unit({q, 0});
        o.expect(kind_of([&] { oplus(limit, limit); }) == ErrorKind::limit_carry_undefined,
                 "limit carry at " + OrdinalIndex{q, 0}.str());
    }

    Rng rng(1002);
    auto tight = [&](std::size_t blocks) {
        std::vector<Point> out;
        for (std::size_t q = 0; q < blocks; ++q) {
            out.push_back(Point(random_word(rng, rng.below(4)), random_word(rng, 1 + rng.below(2))));
        }
        return TransfinitePoint(std::move(out));
    };
    std::set<TriangleCase> seen;
    std::size_t triples = 0;
    for (; triples < 400; ++triples) {
        const std::size_t blocks = 1 + rng.below(3);
        const auto x = tight(blocks);
        const auto y = rng.below(4) == 0 ? x : tight(blocks);
        const auto z = rng.below(4) == 0 ? y : tight(blocks);
        try {
            seen.insert(triangle_case(x, y, z));
        } catch (const Error& e) {
            o.expect(false, x.str() + " " + y.str() + " " + z.str() + ": " + e.what());
        }
    }
    o.expect(seen.size() == 4, "not every case was exercised");
    o.note << carries << " carries, " << triples << " triples, " << seen.size() << " cases";
}

// 3. Every complex over depth <= 3 against the 8-cell bitmap.
void trie_oracle(Outcome& o) {
    std::vector<CylinderComplex> all;
    std::vector<oracle::Bitmap> maps;
    for (std::size_t mask = 0; mask < 256; ++mask) {
        oracle::Bitmap b(3);
        std::vector<BitWord> words;
        for (std::size_t i = 0; i < 8; ++i) {
            b.cells[i] = (mask >> i & 1U) != 0;
            if (b.cells[i]) words.push_back(oracle::index_word(i, 3));
        }
        all.push_back(CylinderComplex::from_cylinders(words));
        maps.push_back(b);
        o.expect(oracle::bitmap_of_complex(all.back(), 3) == b, "build " + std::to_string(mask));
    }
    std::set<std::string> distinct;
    for (const auto& c : all) distinct.insert(complex_to_json(c).dump());
    o.expect(distinct.size() == 256, "denotations are not distinct");

    std::vector<Point> probes;
    for (std::size_t i = 0; i < 8; ++i) {
        const BitWord w = oracle::index_word(i, 3);
        probes.push_back(Point::extend(w, 0));
        probes.push_back(Point::extend(w, 1));
        probes.push_back(Point(w, BitWord::parse("01")));
    }
    for (std::size_t i = 0; i < 256; ++i) {
        o.expect(oracle::bitmap_of_complex(complement(all[i]), 3) == oracle::bitmap_complement(maps[i]),
                 "complement " + std::to_string(i));
        o.expect(all[i].measure() == maps[i].measure(), "measure " + std::to_string(i));
        for (const auto& p : probes) {
            o.expect(all[i].contains(p) == oracle::bitmap_contains(maps[i], p), "contains " + std::to_string(i));
        }
        for (std::size_t j = 0; j < 256; ++j) {
            if (oracle::bitmap_of_complex(unite(all[i], all[j]), 3) != oracle::bitmap_union(maps[i], maps[j]) ||
                oracle::bitmap_of_complex(intersect(all[i], all[j]), 3) != oracle::bitmap_intersect(maps[i], maps[j])) {
                o.expect(false, "pair " + std::to_string(i) + "," + std::to_string(j));
            }
        }
    }
    o.note << "256 complexes, 65536 pairs";
}

// 4. Dense schedules over FULL leave nonempty nowhere dense remainders.
void dense_schedules(Outcome& o) {
    Rng rng(1004);
    const auto full = CylinderComplex::full();
    for (int i = 0; i < 50; ++i) {
        const auto sched = random_dense_schedule(rng, full, 3, 2);
        o.expect(schedule_dense_at_depth(full, sched, 3), "schedule not dense");
        const auto st = run_construction(full, sched);
        check_invariants(st);
        o.expect(!st.current.is_empty(), "empty remainder");
        o.expect(nowhere_dense_at_depth(st.current, 3), "remainder not nowhere dense");

        const std::size_t depth = std::max<std::size_t>(9, st.current.height());
        oracle::Bitmap bm(depth, true);
        std::vector<Point> priors;
        for (const auto& e : sched.entries()) {
            bm = oracle::bitmap_cntr(bm, e.target, e.offset, priors).next;
            priors.push_back(e.target);
        }
        o.expect(oracle::bitmap_of_complex(st.current, depth) == bm, "remainder differs from the bitmap replay");
        o.expect(oracle::bitmap_nowhere_dense(bm, 3, 6), "bitmap remainder not nowhere dense");
    }
    o.note << "50 schedules";
}

// 5. Deletion-cardinality search on the depth-2 cylinders.
void p_definition(Outcome& o) {
    const auto r = verify_P_definition(CylinderComplex::full(), 2, 1 << 10);
    const auto census = oracle::enumerate_schedules(oracle::Bitmap(2, true));
    o.expect(r.exhaustive_empty, "exhaustive deletion left points");
    o.expect(r.max_k_nonempty == 3, "max_k is " + std::to_string(r.max_k_nonempty));
    o.expect(census.full_length_empties && census.max_nonempty == 3, "enumeration disagrees");
    o.expect(!run_construction(CylinderComplex::full(), r.witness_schedule).current.is_empty(),
             "witness schedule empties the space");
    o.note << census.dense_schedules << " dense of " << census.schedules << " enumerated schedules";
}

// 6. Witness preservation through finite and limit stages.
void preservation(Outcome& o) {
    const auto full = CylinderComplex::full();
    const Limits limits{8};
    const std::vector<std::pair<std::vector<Point>, Point>> cases{
        {{P(":0"), P("01:0"), P("1:0")}, P(":1")},
        {{P(":0"), P(":1"), P(":01")}, P("0:1")},
        {{P("1:0"), P(":10"), P("001:0")}, P("01:1")},
    };
    for (const auto& [avoid, seed] : cases) {
        const auto r = preserve_run(full, avoid, seed, avoid.size(), limits);
        check_invariants(r.state);
        o.expect(r.witnesses.size() >= 3, "fewer than 3 witnesses");
        for (const auto& w : r.witnesses) o.expect(r.state.current.contains(w), "witness " + w.str() + " lost");
        for (const auto& x : avoid) o.expect(!r.state.current.contains(x), "target " + x.str() + " kept");
        o.expect(r.state.current.contains(seed), "seed lost");

        const std::vector<std::vector<Point>> segments{{avoid[0], avoid[1]}, {avoid[2]}};
        const auto t = run_transfinite(full, segments, seed, 2, 2, limits);
        o.expect(t.limits.size() == 2, "limit stages missing");
        for (const auto& l : t.limits) {
            const auto at = std::find(t.stage_indices.begin(), t.stage_indices.end(), l.stage);
            o.expect(at != t.stage_indices.end() &&
                         t.stages[static_cast<std::size_t>(at - t.stage_indices.begin())].contains(seed),
                     "seed missing at " + l.stage.str());
            o.expect(l.witness == seed, "limit witness is not the seed");
        }
    }
    o.note << cases.size() << " runs at depth budget 8, K = 2";
}

// 7. Baire witnesses over FULL.
void baire(Outcome& o) {
    Rng rng(1007);
    const auto full = CylinderComplex::full();
    for (int i = 0; i < 20; ++i) {
        std::vector<CylinderComplex> nd;
        for (int k = 0; k < 4; ++k) {
            nd.push_back(random_thin_complex(rng, 3, 3));
            o.expect(oracle::bitmap_nowhere_dense(oracle::bitmap_of_complex(nd.back(), 9), 3, 6), "set not thin");
        }
        const auto w = bct_witness(full, nd, 3);
        for (const auto& c : nd) {
            o.expect(!c.contains(w.point), "witness inside a set");
            o.expect(!oracle::bitmap_contains(oracle::bitmap_of_complex(c, 9), w.point), "bitmap disagrees");
        }
    }
    o.note << "20 instances of 4 sets";
}

// 8. Bisection of terminating points.
void bisection(Outcome& o) {
    const PointedSet full(CylinderComplex::full());
    std::set<Point> points;
    for (std::size_t pre = 0; pre <= 5; ++pre) {
        for (std::size_t i = 0; i < (std::size_t{1} << pre); ++i) {
            for (Bit tail : {Bit{0}, Bit{1}}) {
                const Point p = Point::extend(oracle::index_word(i, pre), tail);
                if (p.resolution() <= 6 && p.is_terminating()) points.insert(p);
            }
        }
    }
    for (const auto& x : points) {
        try {
            const auto r = bisection_locate(full, x, x.resolution() + 1);
            o.expect(r.steps <= x.resolution() + 1, x.str() + " took too long");
            o.expect(r.member, x.str() + " not a member");
            o.expect(r.steps <= oracle::expected_bisection_steps(x) + 1, x.str() + " against the expansion length");
        } catch (const Error& e) {
            o.expect(false, x.str() + ": " + e.what());
        }
    }
    const auto first = bisection_locate(full, P("1:0"), 1);
    o.expect(first.steps == 1 && first.trace[0].mid == P("1:0") && first.trace[0].branch == Branch::hit,
             "1000... is not the first midpoint");

    Rng rng(1008);
    for (int i = 0; i < 100; ++i) {
        const auto s = random_pointed_set(rng, 4, 4);
        const Point x = *std::next(points.begin(), static_cast<std::ptrdiff_t>(rng.below(points.size())));
        o.expect(bisection_locate(s, x, 8).member == s.contains(x), "membership of " + x.str());
    }
    o.note << points.size() << " points";
}

// 9. Cantor-Bendixson kernels against definition chasing.
void kernels(Outcome& o) {
    Rng rng(1009);
    for (int i = 0; i < 100; ++i) {
        const auto s = random_pointed_set(rng, 4, 4);
        const auto k = cb_kernel(s, 4);
        o.expect(k.extras() == oracle::kernel_extras(oracle::bitmap_of_complex(s.body(), 4), s.extras(), 4),
                 "kernel differs");
        o.expect(isolated_points(k, 4).empty(), "kernel has isolated points");
    }
    o.note << "100 pointed sets";
}

// 10. Finite and cofinal deletions from the naturals.
void naturals(Outcome& o) {
    for (std::size_t bound : {10, 20, 40}) {
        const std::vector<std::size_t> finite{1, bound / 2, bound - 1};
        const auto f = naturals_demo(bound, finite);
        o.expect(f.remainder_size == oracle::naturals_remainder(bound, finite) && f.remainder_size == 1,
                 "finite remainder at " + std::to_string(bound));
        o.expect(!f.empties_in_limit, "finite family empties at " + std::to_string(bound));

        const std::vector<std::size_t> cofinal{1, bound / 2, bound};
        const auto c = naturals_demo(bound, cofinal);
        o.expect(c.remainder_size == oracle::naturals_remainder(bound, cofinal) && c.remainder_size == 0,
                 "cofinal remainder at " + std::to_string(bound));
        o.expect(c.empties_in_limit && c.rerun_remainder == 0, "cofinal family survives at " + std::to_string(bound));
        o.expect(f.rerun_remainder == 2 * bound - (bound - 1), "finite rerun at " + std::to_string(bound));
    }
    o.note << "bounds 10/20/40";
}

struct Criterion {
    int id;
    const char* title;
    double limit_seconds;
    void (*run)(Outcome&);
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "ultrametric axioms", 5, ultrametric},
        {2, "formal distance algebra", 5, formal_algebra},
        {3, "trie vs bitmap on every depth-3 complex", 10, trie_oracle},
        {4, "dense schedules leave thin remainders", 10, dense_schedules},
        {5, "deletion cardinality at depth 2", 5, p_definition},
        {6, "witness preservation and limit stages", 5, preservation},
        {7, "Baire witnesses", 5, baire},
        {8, "bisection of terminating points", 5, bisection},
        {9, "Cantor-Bendixson kernels", 10, kernels},
        {10, "naturals demo", 1, naturals},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.limit_seconds;
        const bool pass = o.ok && in_time;
        failures += !pass;
        std::printf("%s criterion %2d: %-42s %8.3fs (limit %gs)%s  %s\n", pass ? "PASS" : "FAIL", c.id, c.title, secs,
                    c.limit_seconds, in_time ? "" : " TOO SLOW", o.note.str().c_str());
    }
    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
