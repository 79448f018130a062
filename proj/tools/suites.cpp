#include "suites.hpp"

#include <cantor/construction.hpp>
#include <cantor/random.hpp>
#include <cantor/umetric.hpp>

#include <algorithm>
#include <map>

namespace cantor::cli {

namespace {

class Tally {
public:
    void check(const std::string& property, bool ok, const std::string& detail = {}) {
        auto& c = counts_[index_of(property)];
        if (ok) {
            ++c.passed;
        } else {
            ++c.failed;
            if (c.first_failure.empty()) c.first_failure = detail.empty() ? "failed" : detail;
        }
    }

    bool ok() const {
        return std::all_of(counts_.begin(), counts_.end(), [](const Count& c) { return c.failed == 0; });
    }

    Json to_json() const {
        Json out = Json::array();
        for (const auto& c : counts_) {
            Json p{{"name", c.name}, {"passed", c.passed}, {"failed", c.failed}};
            if (c.failed) p["first_failure"] = c.first_failure;
            out.push_back(std::move(p));
        }
        return out;
    }

private:
    struct Count {
        std::string name;
        std::size_t passed = 0;
        std::size_t failed = 0;
        std::string first_failure;
    };

    std::size_t index_of(const std::string& name) {
        for (std::size_t i = 0; i < counts_.size(); ++i) {
            if (counts_[i].name == name) return i;
        }
        counts_.push_back(Count{name, 0, 0, {}});
        return counts_.size() - 1;
    }

    std::vector<Count> counts_;
};

SuiteResult finish(const std::string& name, const Tally& t, Json extra = Json::object()) {
    Json report{{"suite", name}, {"properties", t.to_json()}};
    for (auto& [k, v] : extra.items()) report[k] = v;
    report["ok"] = t.ok();
    return {std::move(report), t.ok()};
}

// Points that often share long prefixes, so split heights collide.
Point near_point(Rng& rng, const Point& anchor, std::size_t resolution) {
    const std::size_t keep = rng.below(resolution + 1);
    return random_point_extending(rng, anchor.prefix(keep), std::max<std::size_t>(resolution / 2, 1));
}

std::string triple_text(const auto& x, const auto& y, const auto& z) {
    return x.str() + " " + y.str() + " " + z.str();
}

SuiteResult metric_suite(const SuiteConfig& cfg) {
    Rng rng(cfg.seed);
    Tally t;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        const Point x = random_point(rng, cfg.resolution);
        const Point y = near_point(rng, x, cfg.resolution);
        const Point z = near_point(rng, rng.coin() ? x : y, cfg.resolution);
        const std::string at = triple_text(x, y, z);
        const Rational dxy = distance(x, y), dyz = distance(y, z), dxz = distance(x, z);
        t.check("d(x,x) = 0", distance(x, x) == 0, at);
        t.check("d(x,y) = 0 iff x = y", (dxy == 0) == (x == y), at);
        t.check("symmetry", dxy == distance(y, x), at);
        t.check("triangle", dxz <= dxy + dyz, at);
        t.check("strong triangle", dxz <= std::max(dxy, dyz), at);
        t.check("d <= 1/2", dxy <= Rational(1, 2), at);
    }

    for (std::uint32_t q = 0; q <= 2; ++q) {
        for (std::uint32_t n = 1; n <= 16; ++n) {
            const auto u = FormalDistance::unit({q, n});
            t.check("carry 1_a + 1_a = 1_(a-1)", oplus(u, u) == FormalDistance::unit({q, n - 1}),
                    OrdinalIndex{q, n}.str());
        }
        bool raised = false;
        try {
            const auto u = FormalDistance::unit({q, 0});
            oplus(u, u);
        } catch (const Error& e) {
            raised = e.kind() == ErrorKind::limit_carry_undefined;
        }
        t.check("limit carry is rejected", raised, OrdinalIndex{q, 0}.str());
    }

    std::map<std::string, std::size_t> cases;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        const std::size_t blocks = 1 + rng.below(3);
        const auto x = random_transfinite(rng, blocks, 3);
        const auto y = rng.coin() ? x : random_transfinite(rng, blocks, 3);
        const auto z = random_transfinite(rng, blocks, 3);
        try {
            ++cases[std::string(to_string(triangle_case(x, y, z)))];
            t.check("triangle case identities", true);
        } catch (const Error& e) {
            t.check("triangle case identities", false, triple_text(x, y, z) + ": " + e.what());
        }
    }
    Json case_counts = Json::object();
    for (const auto& [name, n] : cases) case_counts[name] = n;
    return finish("metric", t, Json{{"triangle_cases", case_counts}});
}

SuiteResult trie_suite(const SuiteConfig& cfg) {
    Rng rng(cfg.seed);
    Tally t;
    const std::size_t depth = std::min<std::size_t>(cfg.depth, 8);
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        const auto a = random_complex(rng, rng.below(depth + 1));
        const auto b = random_complex(rng, rng.below(depth + 1));
        const auto c = random_complex(rng, rng.below(depth + 1));
        const std::string at = complex_to_json(a).dump() + " " + complex_to_json(b).dump();
        t.check("double complement", complement(complement(a)) == a, at);
        t.check("de Morgan", complement(unite(a, b)) == intersect(complement(a), complement(b)), at);
        t.check("distributivity", intersect(a, unite(b, c)) == unite(intersect(a, b), intersect(a, c)), at);
        t.check("difference", difference(a, b) == intersect(a, complement(b)), at);
        t.check("measure additivity",
                unite(a, b).measure() + intersect(a, b).measure() == a.measure() + b.measure(), at);
        t.check("complement measure", a.measure() + complement(a).measure() == 1, at);
        t.check("equality is extensional", (a == b) == (difference(a, b).is_empty() && difference(b, a).is_empty()),
                at);
        t.check("json round trip", complex_from_json(complex_to_json(a)) == a, at);
        for (int k = 0; k < 4; ++k) {
            const Point p = random_point(rng, depth + 2);
            t.check("membership through union", unite(a, b).contains(p) == (a.contains(p) || b.contains(p)), at);
            t.check("membership through intersection",
                    intersect(a, b).contains(p) == (a.contains(p) && b.contains(p)), at);
            t.check("membership through complement", complement(a).contains(p) != a.contains(p), at);
        }
    }
    return finish("trie", t);
}

SuiteResult baire_suite(const SuiteConfig& cfg) {
    if (cfg.lookahead < 2) fail(ErrorKind::precondition, "the baire suite needs a lookahead of at least 2");
    Rng rng(cfg.seed);
    Tally t;
    const auto full = CylinderComplex::full();
    const auto report = verify_P_definition(full, cfg.depth, cfg.budget);
    const auto run = run_construction(full, report.witness_schedule);
    t.check("witness schedule leaves a nonempty remainder", !run.current.is_empty());
    t.check("witness schedule has max_k entries", report.witness_schedule.size() == report.max_k_nonempty);
    t.check("deleting every candidate empties the space", report.exhaustive_empty);

    for (std::size_t i = 0; i < cfg.samples; ++i) {
        std::vector<CylinderComplex> nd;
        for (int k = 0; k < 4; ++k) nd.push_back(random_thin_complex(rng, cfg.depth, 3));
        const auto w = bct_witness(full, nd, cfg.depth, cfg.lookahead);
        const bool clear = std::none_of(nd.begin(), nd.end(), [&](const auto& c) { return c.contains(w.point); });
        t.check("Baire witness avoids every thin set", clear, w.point.str());
        bool nested = true;
        for (std::size_t k = 0; k + 1 < w.chain.size(); ++k) nested = nested && w.chain[k].is_prefix_of(w.chain[k + 1]);
        t.check("witness chain is nested", nested, w.point.str());
    }
    return finish("baire", t,
                  Json{{"depth", cfg.depth},
                       {"exhaustive_empty", report.exhaustive_empty},
                       {"max_k", report.max_k_nonempty},
                       {"exhaustive_search", report.exhaustive_search},
                       {"witness_schedule", schedule_to_json(report.witness_schedule)}});
}

SuiteResult cardinality_suite(const SuiteConfig& cfg) {
    Rng rng(cfg.seed);
    Tally t;
    const std::size_t depth = std::min<std::size_t>(cfg.depth, 6);
    std::map<std::string, std::size_t> classes;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        const auto s = random_pointed_set(rng, depth, 4);
        const std::string at = pointed_set_to_json(s).dump();
        const auto kernel = cb_kernel(s, depth);
        t.check("kernel has no isolated points", isolated_points(kernel, depth).empty(), at);
        t.check("kernel keeps the body", kernel.body() == s.body(), at);
        t.check("kernel extras are a subset",
                std::includes(s.extras().begin(), s.extras().end(), kernel.extras().begin(), kernel.extras().end()),
                at);
        t.check("kernel is idempotent", cb_kernel(kernel, depth).extras() == kernel.extras(), at);
        const auto cls = classify_cardinality(s, depth);
        ++classes[cls.kind == CardinalityClass::Kind::finite ? "Finite" : cls.str()];
        const bool consistent = s.is_empty()                ? cls.kind == CardinalityClass::Kind::empty
                                : s.body().is_empty()       ? cls == CardinalityClass{CardinalityClass::Kind::finite,
                                                                                      s.extras().size()}
                                                            : cls.kind == CardinalityClass::Kind::continuum_scale;
        t.check("classification matches the set", consistent, at);
    }
    Json counts = Json::object();
    for (const auto& [name, n] : classes) counts[name] = n;
    return finish("cardinality", t, Json{{"classes", counts}});
}

SuiteResult bisection_suite(const SuiteConfig& cfg) {
    Rng rng(cfg.seed);
    Tally t;
    const PointedSet full(CylinderComplex::full());
    const std::size_t max_res = std::min<std::size_t>(cfg.depth, 16);
    std::size_t points = 0;
    // Terminating points w·000… with |w| + 1 <= max_res.
    for (std::size_t len = 0; len < max_res; ++len) {
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << len); ++i) {
            std::vector<Bit> bits(len);
            for (std::size_t j = 0; j < len; ++j) bits[j] = static_cast<Bit>((i >> (len - 1 - j)) & 1);
            const Point x = Point::extend(BitWord(std::move(bits)), 0);
            ++points;
            try {
                const auto r = bisection_locate(full, x, x.resolution() + 1);
                t.check("located within resolution + 1 steps", r.steps <= x.resolution() + 1, x.str());
                t.check("membership in FULL", r.member, x.str());
            } catch (const Error& e) {
                t.check("located within resolution + 1 steps", false, x.str() + ": " + e.what());
            }
        }
    }
    const auto first = bisection_locate(full, Point::parse("1:0"), 1);
    t.check("1000… is the first midpoint", first.steps == 1 && first.trace[0].branch == Branch::hit);

    for (std::size_t i = 0; i < cfg.samples; ++i) {
        const auto s = random_pointed_set(rng, std::min<std::size_t>(cfg.depth, 6), 3);
        const Point x = Point::extend(random_word(rng, rng.below(max_res)), 0);
        const auto r = bisection_locate(s, x, cfg.budget);
        t.check("membership matches the set", r.member == s.contains(x), x.str());
    }
    return finish("bisection", t, Json{{"terminating_points", points}});
}

SuiteResult naturals_suite(const SuiteConfig& cfg) {
    Rng rng(cfg.seed);
    Tally t;
    Json rows = Json::array();
    for (std::size_t bound : {10, 20, 40}) {
        for (std::size_t i = 0; i < std::max<std::size_t>(cfg.samples / 10, 1); ++i) {
            std::vector<std::size_t> family;
            const std::size_t n = 1 + rng.below(bound);
            for (std::size_t k = 0; k < n; ++k) family.push_back(rng.below(bound));
            const bool cofinal = rng.coin();
            if (cofinal) family.push_back(bound);

            std::size_t explicit_count = 0;
            for (std::size_t m = 0; m < bound; ++m) {
                explicit_count += std::none_of(family.begin(), family.end(), [&](std::size_t d) { return m < d; });
            }
            const auto r = naturals_demo(bound, family);
            t.check("remainder counts", r.remainder_size == explicit_count);
            if (cofinal) {
                t.check("cofinal families empty in the limit", r.empties_in_limit && r.rerun_remainder == 0);
            } else {
                t.check("finite families leave a nonempty remainder", r.remainder_size > 0 && !r.empties_in_limit);
            }
        }
        const std::vector<std::size_t> finite{1, 2, 3};
        const std::vector<std::size_t> cofinal{1, bound};
        const auto f = naturals_demo(bound, finite);
        const auto c = naturals_demo(bound, cofinal);
        rows.push_back(Json{{"bound", bound},
                            {"finite_remainder", f.remainder_size},
                            {"cofinal_remainder", c.remainder_size},
                            {"cofinal_rerun_remainder", c.rerun_remainder},
                            {"cofinal_empties_in_limit", c.empties_in_limit}});
    }
    return finish("naturals", t, Json{{"bounds", rows}});
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"metric", "trie", "baire", "cardinality", "bisection", "naturals"};
    return names;
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& config) {
    if (name == "metric") return metric_suite(config);
    if (name == "trie") return trie_suite(config);
    if (name == "baire") return baire_suite(config);
    if (name == "cardinality") return cardinality_suite(config);
    if (name == "bisection") return bisection_suite(config);
    if (name == "naturals") return naturals_suite(config);
    fail(ErrorKind::precondition, "unknown suite \"" + name + "\"");
}

}  // namespace cantor::cli
