#include <cantor/construction.hpp>

#include <algorithm>
#include <bit>
#include <functional>

namespace cantor {

// ---------------------------------------------------------------------------
// Baire category witness

BaireWitness bct_witness(const CylinderComplex& space, std::span<const CylinderComplex> nd_sets, std::size_t depth,
                         std::optional<std::size_t> lookahead) {
    if (space.is_empty()) fail(ErrorKind::precondition, "space is empty");
    for (std::size_t i = 0; i < nd_sets.size(); ++i) {
        if (!nowhere_dense_at_depth(nd_sets[i], depth, lookahead)) {
            fail(ErrorKind::precondition,
                 "nd_sets[" + std::to_string(i) + "] is not nowhere dense at depth " + std::to_string(depth));
        }
    }

    std::vector<CylinderWord> chain;
    // Depth first: a cylinder may sit inside a set that is only thin above it.
    std::function<bool(const CylinderComplex&)> descend = [&](const CylinderComplex& room) {
        const std::size_t k = chain.size();
        for (const auto& stem : room.full_leaves()) {
            chain.push_back(stem);
            if (k == nd_sets.size()) return true;
            if (descend(difference(CylinderComplex::cylinder(stem), nd_sets[k]))) return true;
            chain.pop_back();
        }
        return false;
    };
    if (!descend(space)) fail(ErrorKind::precondition, "the sets cover the space at this resolution");
    return BaireWitness{Point::extend(chain.back(), 0), chain};
}

// ---------------------------------------------------------------------------
// Bisection

std::string_view to_string(Branch b) noexcept {
    switch (b) {
        case Branch::left: return "L";
        case Branch::right: return "R";
        case Branch::hit: return "HIT";
    }
    return "HIT";
}

BisectionResult bisection_locate(const PointedSet& space, const Point& x, std::size_t max_steps) {
    if (max_steps < 1) fail(ErrorKind::precondition, "max_steps must be at least 1");
    Point a = Point::constant(0);
    Point b = Point::constant(1);
    std::vector<BisectionStep> trace;
    auto done = [&] { return BisectionResult{space.contains(x), trace.size(), trace}; };

    while (trace.size() < max_steps) {
        if (x == a || x == b) {
            trace.push_back({x, x, x, Branch::hit});
            return done();
        }
        Point mid = midpoint(a, b);
        if (x == mid) {
            trace.push_back({a, b, mid, Branch::hit});
            return done();
        }
        if (x < mid) {
            trace.push_back({a, b, mid, Branch::left});
            b = std::move(mid);
        } else {
            trace.push_back({a, b, mid, Branch::right});
            a = std::move(mid);
        }
    }
    throw BisectionBudgetExceeded(
        x.str() + " not located within " + std::to_string(max_steps) + " bisection steps", std::move(trace));
}

// ---------------------------------------------------------------------------
// Deletion-cardinality search

namespace {

struct Universe {
    std::vector<CylinderWord> cells;
    // cells[i] lies below parents[parent_of[i]].
    std::vector<std::size_t> parent_of;
    std::size_t parent_count = 0;

    bool dense(std::uint32_t mask) const {
        std::vector<bool> hit(parent_count, false);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (mask >> i & 1U) hit[parent_of[i]] = true;
        }
        return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
    }

    CylinderComplex removed(std::uint32_t mask) const {
        std::vector<CylinderWord> picked;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (mask >> i & 1U) picked.push_back(cells[i]);
        }
        return CylinderComplex::from_cylinders(picked);
    }
};

Universe make_universe(const CylinderComplex& space, std::size_t depth) {
    Universe u;
    u.cells = cylinders_meeting(space, depth);
    const std::size_t parent_depth = depth == 0 ? 0 : depth - 1;
    std::vector<CylinderWord> parents;
    for (const auto& w : u.cells) {
        const CylinderWord p = w.prefix(parent_depth);
        if (parents.empty() || parents.back() != p) parents.push_back(p);
        u.parent_of.push_back(parents.size() - 1);
    }
    u.parent_count = parents.size();
    return u;
}

DeletionSchedule schedule_of(const std::vector<CylinderWord>& stems) {
    std::vector<DeletionEntry> entries;
    for (const auto& w : stems) entries.push_back({Point::extend(w, 0), 1, w});
    return DeletionSchedule(std::move(entries));
}

}  // namespace

PDefinitionReport verify_P_definition(const CylinderComplex& space, std::size_t depth, std::size_t budget,
                                      PSearch search) {
    if (depth >= 63 || (std::uint64_t{1} << depth) > budget) {
        fail(ErrorKind::budget_exceeded,
             "2^" + std::to_string(depth) + " cylinders exceed the budget of " + std::to_string(budget));
    }
    const Universe u = make_universe(space, depth);
    PDefinitionReport report;
    report.candidates = u.cells.size();
    report.exhaustive_empty = difference(space, CylinderComplex::from_cylinders(u.cells)).is_empty();

    const bool exhaustive = search == PSearch::exhaustive ||
                            (search == PSearch::automatic && u.cells.size() <= kExhaustiveCandidateLimit);
    report.exhaustive_search = exhaustive;
    std::vector<CylinderWord> best;

    if (exhaustive) {
        if (u.cells.size() > 24) fail(ErrorKind::budget_exceeded, "too many cylinders for subset enumeration");
        const std::uint32_t all = static_cast<std::uint32_t>((std::uint64_t{1} << u.cells.size()) - 1);
        std::size_t best_k = 0;
        std::optional<std::uint32_t> best_mask;
        for (std::uint32_t mask = 0;; ++mask) {
            const auto k = static_cast<std::size_t>(std::popcount(mask));
            if ((!best_mask || k > best_k) && u.dense(mask) && !difference(space, u.removed(mask)).is_empty()) {
                best_k = k;
                best_mask = mask;
            }
            if (mask == all) break;
        }
        if (best_mask) {
            for (std::size_t i = 0; i < u.cells.size(); ++i) {
                if (*best_mask >> i & 1U) best.push_back(u.cells[i]);
            }
        }
    } else {
        // The cells are disjoint and each meets the space, so the remainder is
        // nonempty iff some cell is kept; keeping exactly one is optimal when
        // its parent still has another cell.
        std::vector<std::size_t> per_parent(u.parent_count, 0);
        for (std::size_t p : u.parent_of) ++per_parent[p];
        for (std::size_t i = 0; i < u.cells.size(); ++i) {
            if (per_parent[u.parent_of[i]] < 2) continue;
            for (std::size_t j = 0; j < u.cells.size(); ++j) {
                if (j != i) best.push_back(u.cells[j]);
            }
            break;
        }
    }
    report.max_k_nonempty = best.size();
    report.witness_schedule = schedule_of(best);
    return report;
}

// ---------------------------------------------------------------------------
// Cardinality classes

std::string CardinalityClass::str() const {
    switch (kind) {
        case Kind::empty: return "Empty";
        case Kind::finite: return "Finite(" + std::to_string(count) + ")";
        case Kind::continuum_scale: return "ContinuumScale";
    }
    return "Empty";
}

CardinalityClass classify_cardinality(const PointedSet& s, std::size_t horizon) {
    if (s.is_empty()) return {CardinalityClass::Kind::empty, 0};
    const PointedSet kernel = cb_kernel(s, horizon);
    if (kernel.body().is_empty()) return {CardinalityClass::Kind::finite, s.extras().size()};
    return {CardinalityClass::Kind::continuum_scale, 0};
}

// ---------------------------------------------------------------------------
// Terminal segments of the naturals

NaturalsResult naturals_demo(std::size_t bound, std::span<const std::size_t> deleted_indices) {
    std::size_t reach = 0;
    std::size_t rerun_reach = 0;
    for (std::size_t n : deleted_indices) {
        if (n > bound) {
            fail(ErrorKind::malformed_input,
                 "index " + std::to_string(n) + " is outside 0.." + std::to_string(bound));
        }
        reach = std::max(reach, n);
        rerun_reach = std::max(rerun_reach, n == bound ? 2 * bound : n);
    }
    NaturalsResult r;
    r.remainder_size = bound - reach;
    r.rerun_remainder = 2 * bound - rerun_reach;
    r.empties_in_limit = r.rerun_remainder == 0;
    return r;
}

}  // namespace cantor
