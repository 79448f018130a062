#include <cantor/construction.hpp>

#include <algorithm>
#include <functional>
#include <set>

namespace cantor {

namespace {

/// Splitting depths along `target` from `from` until `count + 1` are found or
/// the deletion height would pass the budget.
std::vector<std::size_t> collect_splits(const CylinderComplex& current, const Point& target, std::size_t from,
                                        std::size_t count, std::size_t budget) {
    std::vector<std::size_t> out;
    CylinderComplex c = current.subtree(target.prefix(from));
    for (std::size_t j = from; j < budget && out.size() <= count; ++j) {
        const bool splits = c.is_full() || (!c.is_leaf() && !c.child(0).is_empty() && !c.child(1).is_empty());
        if (splits) out.push_back(j);
        c = c.child(target.bit_at(j));
    }
    return out;
}

std::size_t highest_split(const Point& target, std::span<const Point> priors) {
    std::size_t n = 0;
    for (const auto& p : priors) {
        if (auto at = first_disagreement(target, p)) n = std::max(n, *at);
    }
    return n;
}

bool in_cylinder(const Point& p, const CylinderWord& stem) { return p.prefix(stem.size()) == stem; }

std::string stem_text(const CylinderWord& w) { return "[" + w.str() + "]"; }

template <class Stages>
void check_stage_invariants(const CylinderComplex& initial, const CylinderComplex& current,
                            const std::vector<CylinderWord>& deleted, const std::vector<Point>& witnesses,
                            const Stages& stages) {
    if (stages.empty() || !(stages.front() == initial) || !(stages.back() == current)) {
        fail(ErrorKind::invariant_violation, "stage list does not run from the initial set to the current one");
    }
    if (!(difference(initial, CylinderComplex::from_cylinders(deleted)) == current)) {
        fail(ErrorKind::invariant_violation, "current set differs from initial minus the deleted cylinders");
    }
    for (std::size_t k = 0; k + 1 < stages.size(); ++k) {
        if (!(intersect(stages[k + 1], stages[k]) == stages[k + 1])) {
            fail(ErrorKind::invariant_violation, "stage " + std::to_string(k + 1) + " grew");
        }
    }
    for (const auto& w : witnesses) {
        if (!current.contains(w)) fail(ErrorKind::invariant_violation, "witness " + w.str() + " was deleted");
    }
}

// One deletion that keeps every witness, shared by the preserving runs.
struct PreservingDeleter {
    CylinderComplex current;
    std::vector<Point> witnesses;
    std::vector<CylinderWord> deleted;
    std::vector<Point> processed;
    std::vector<Point> exclude;
    Limits limits;

    bool is_excluded(const Point& p) const {
        return std::find(exclude.begin(), exclude.end(), p) != exclude.end() ||
               std::find(witnesses.begin(), witnesses.end(), p) != witnesses.end();
    }

    // Leftmost FULL leaf of `current` inside [stem], then the first short tail
    // giving a point that is not excluded.
    Point fresh_point(const CylinderWord& stem) const {
        CylinderComplex c = current.subtree(stem);
        BitWord s = stem;
        while (!c.is_full()) {
            if (c.is_empty()) fail(ErrorKind::invariant_violation, "piece " + stem_text(stem) + " is empty");
            const Bit b = c.child(0).is_empty() ? 1 : 0;
            s.push_back(b);
            c = c.child(b);
        }
        for (std::size_t len = 1; len <= 10; ++len) {
            for (std::size_t word = 0; word < (std::size_t{1} << len); ++word) {
                std::vector<Bit> bits(len);
                for (std::size_t i = 0; i < len; ++i) bits[i] = static_cast<Bit>((word >> (len - 1 - i)) & 1);
                Point p(s, BitWord(std::move(bits)));
                if (!is_excluded(p)) return p;
            }
        }
        fail(ErrorKind::budget_exceeded, "no fresh witness in " + stem_text(stem));
    }

    // Returns the record and the side pieces split off along the target.
    std::pair<StepRecord, std::vector<CylinderWord>> step(const Point& x) {
        StepRecord rec{x, 0, 0, std::nullopt};
        const std::vector<Point> priors = processed;
        processed.push_back(x);
        if (!current.contains(x)) return {rec, {}};

        const std::size_t n = highest_split(x, priors);
        std::size_t need = 0;
        for (const auto& w : witnesses) {
            if (auto at = first_disagreement(x, w)) need = std::max(need, *at);
        }
        const auto splits = collect_splits(current, x, n, limits.depth_budget, limits.depth_budget);
        std::size_t r = 1;
        while (r < splits.size() && splits[r] <= need) ++r;
        if (r >= splits.size()) {
            fail(ErrorKind::budget_exceeded,
                 "deleting around " + x.str() + " while keeping the witnesses needs more than " +
                     std::to_string(limits.depth_budget) + " levels");
        }
        const CylinderWord stem = x.prefix(splits[r] + 1);
        current = difference(current, CylinderComplex::cylinder(stem));
        deleted.push_back(stem);
        rec.offset = r;
        rec.split_node = n;
        rec.deleted = stem;

        std::vector<CylinderWord> pieces;
        for (std::size_t j = 0; j <= r; ++j) {
            CylinderWord side = x.prefix(splits[j]);
            side.push_back(static_cast<Bit>(1 - x.bit_at(splits[j])));
            pieces.push_back(side);
            const bool held = std::any_of(witnesses.begin(), witnesses.end(),
                                          [&](const Point& w) { return in_cylinder(w, side); });
            if (!held) witnesses.push_back(fresh_point(side));
        }
        return {rec, pieces};
    }
};

}  // namespace

DeletionSchedule::DeletionSchedule(std::vector<DeletionEntry> entries) : entries_(std::move(entries)) {
    for (const auto& e : entries_) {
        if (e.offset < 1) fail(ErrorKind::precondition, "offset must be at least 1 for " + e.target.str());
        if (e.stem && !in_cylinder(e.target, *e.stem)) {
            fail(ErrorKind::malformed_input,
                 "target " + e.target.str() + " does not extend its stem " + stem_text(*e.stem));
        }
    }
    std::set<Point> targets;
    std::set<CylinderWord> stems;
    for (const auto& e : entries_) {
        if (!targets.insert(e.target).second) {
            fail(ErrorKind::non_repeating_violation, "target " + e.target.str() + " is scheduled twice");
        }
        if (e.stem && !stems.insert(*e.stem).second) {
            fail(ErrorKind::non_repeating_violation, "stem " + stem_text(*e.stem) + " is scheduled twice");
        }
    }
}

std::vector<Point> DeletionSchedule::targets() const {
    std::vector<Point> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.target);
    return out;
}

std::vector<CylinderWord> cylinders_meeting(const CylinderComplex& c, std::size_t depth) {
    std::vector<CylinderWord> out;
    BitWord stem;
    std::function<void(const CylinderComplex&)> walk = [&](const CylinderComplex& node) {
        if (node.is_empty()) return;
        if (stem.size() == depth) {
            out.push_back(stem);
            return;
        }
        for (Bit b : {Bit{0}, Bit{1}}) {
            stem.push_back(b);
            walk(node.child(b));
            stem.pop_back();
        }
    };
    walk(c);
    return out;
}

bool schedule_dense_at_depth(const CylinderComplex& initial, const DeletionSchedule& schedule, std::size_t depth) {
    std::set<CylinderWord> hit;
    for (const auto& e : schedule.entries()) hit.insert(e.target.prefix(depth));
    const auto cells = cylinders_meeting(initial, depth);
    return std::all_of(cells.begin(), cells.end(), [&](const CylinderWord& w) { return hit.contains(w); });
}

std::vector<std::size_t> splitting_depths(const CylinderComplex& current, const Point& target, std::size_t from,
                                          std::size_t count, const Limits& limits) {
    auto out = collect_splits(current, target, from, count, limits.depth_budget);
    if (out.size() <= count) {
        fail(ErrorKind::budget_exceeded, "fewer than " + std::to_string(count + 1) + " splitting nodes along " +
                                             target.str() + " within depth " +
                                             std::to_string(limits.depth_budget));
    }
    return out;
}

StepResult cntr_step(const CylinderComplex& current, const Point& target, std::size_t offset,
                     std::span<const Point> prior_targets, const Limits& limits) {
    if (offset < 1) fail(ErrorKind::precondition, "offset must be at least 1");
    const std::size_t n = highest_split(target, prior_targets);
    if (!current.contains(target)) return StepResult{current, std::nullopt, n, offset};
    const auto splits = splitting_depths(current, target, n, offset, limits);
    const CylinderWord stem = target.prefix(splits[offset] + 1);
    return StepResult{difference(current, CylinderComplex::cylinder(stem)), stem, n, offset};
}

void check_invariants(const ConstructionState& state) {
    check_stage_invariants(state.initial, state.current, state.deleted, state.witnesses, state.stages);
}

ConstructionState run_construction(const CylinderComplex& initial, const DeletionSchedule& schedule,
                                   const Limits& limits) {
    ConstructionState state;
    state.initial = initial;
    state.current = initial;
    state.stages.push_back(initial);
    const auto targets = schedule.targets();
    std::set<CylinderWord> seen;

    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const auto& e = schedule.entries()[i];
        const std::span<const Point> priors(targets.data(), i);
        StepRecord rec{e.target, e.offset, 0, std::nullopt};
        if (e.stem) {
            if (e.stem->size() > limits.depth_budget) {
                fail(ErrorKind::budget_exceeded, "stem " + stem_text(*e.stem) + " is deeper than the budget");
            }
            rec.split_node = highest_split(e.target, priors);
            if (state.current.contains(e.target)) {
                rec.deleted = *e.stem;
                state.current = difference(state.current, CylinderComplex::cylinder(*e.stem));
            }
        } else {
            StepResult r = cntr_step(state.current, e.target, e.offset, priors, limits);
            rec.split_node = r.split_node;
            rec.deleted = r.deleted;
            state.current = std::move(r.next);
        }
        if (rec.deleted) {
            if (!seen.insert(*rec.deleted).second) {
                fail(ErrorKind::non_repeating_violation, "stem " + stem_text(*rec.deleted) + " derived twice");
            }
            state.deleted.push_back(*rec.deleted);
        }
        state.steps.push_back(std::move(rec));
        state.stages.push_back(state.current);
        ++state.stage;
    }
    check_invariants(state);
    return state;
}

PreserveResult preserve_run(const CylinderComplex& initial, std::span<const Point> avoid, const Point& keep_seed,
                            std::size_t steps, const Limits& limits) {
    if (!initial.contains(keep_seed)) {
        fail(ErrorKind::precondition, "seed " + keep_seed.str() + " is not in the initial set");
    }
    if (std::find(avoid.begin(), avoid.end(), keep_seed) != avoid.end()) {
        fail(ErrorKind::precondition, "seed " + keep_seed.str() + " is one of the avoid targets");
    }

    PreservingDeleter del{initial, {keep_seed}, {}, {}, std::vector<Point>(avoid.begin(), avoid.end()), limits};
    PreserveResult out;
    out.state.initial = initial;
    out.state.stages.push_back(initial);
    CylinderWord interval;
    out.intervals.push_back(interval);

    for (std::size_t alpha = 0; alpha < steps && !avoid.empty(); ++alpha) {
        const Point& x = avoid[alpha % avoid.size()];
        auto [rec, pieces] = del.step(x);
        if (rec.deleted && in_cylinder(x, interval)) {
            for (const auto& piece : pieces) {
                if (in_cylinder(keep_seed, piece)) interval = piece;
            }
        }
        out.intervals.push_back(interval);
        out.state.steps.push_back(std::move(rec));
        out.state.stages.push_back(del.current);
        ++out.state.stage;
    }
    out.state.current = del.current;
    out.state.deleted = del.deleted;
    out.state.witnesses = del.witnesses;
    out.witnesses = del.witnesses;
    check_invariants(out.state);
    return out;
}

TransfiniteConstructionState run_transfinite(const CylinderComplex& initial,
                                             const std::vector<std::vector<Point>>& segments,
                                             const Point& keep_seed, std::size_t k, std::size_t k_bound,
                                             const Limits& limits) {
    if (k < 1 || k > k_bound) {
        fail(ErrorKind::precondition,
             "ordinal bound K=" + std::to_string(k) + " outside 1.." + std::to_string(k_bound));
    }
    if (segments.size() != k) {
        fail(ErrorKind::precondition, "expected " + std::to_string(k) + " segments, got " +
                                          std::to_string(segments.size()));
    }
    if (!initial.contains(keep_seed)) {
        fail(ErrorKind::precondition, "seed " + keep_seed.str() + " is not in the initial set");
    }
    std::vector<Point> exclude;
    for (const auto& seg : segments) exclude.insert(exclude.end(), seg.begin(), seg.end());
    if (std::find(exclude.begin(), exclude.end(), keep_seed) != exclude.end()) {
        fail(ErrorKind::precondition, "seed " + keep_seed.str() + " is one of the avoid targets");
    }

    PreservingDeleter del{initial, {keep_seed}, {}, {}, exclude, limits};
    TransfiniteConstructionState st;
    st.initial = initial;
    st.stages.push_back(initial);
    st.stage_indices.push_back({0, 0});

    for (std::uint32_t q = 0; q < k; ++q) {
        const std::size_t segment_start = st.stages.size() - 1;
        for (std::size_t i = 0; i < segments[q].size(); ++i) {
            auto [rec, pieces] = del.step(segments[q][i]);
            st.steps.push_back(std::move(rec));
            st.stages.push_back(del.current);
            st.stage_indices.push_back({q, static_cast<std::uint32_t>(i + 1)});
        }

        // Limit stage: the intersection of every stage in the segment.
        CylinderComplex meet = st.stages[segment_start];
        for (std::size_t s = segment_start + 1; s < st.stages.size(); ++s) meet = intersect(meet, st.stages[s]);
        const OrdinalIndex limit{q + 1, 0};
        if (meet.is_empty()) fail(ErrorKind::invariant_violation, "empty intersection at stage " + limit.str());
        if (!meet.contains(keep_seed)) {
            fail(ErrorKind::invariant_violation, "seed lost at limit stage " + limit.str());
        }
        std::size_t h = 0;
        for (const auto& s : del.deleted) {
            std::size_t j = 0;
            while (j < s.size() && s[j] == keep_seed.bit_at(j)) ++j;
            h = std::max(h, j + 1);
        }
        const CylinderWord preserved = keep_seed.prefix(h);
        if (!intersect(CylinderComplex::cylinder(preserved), initial).is_subset_of(meet)) {
            fail(ErrorKind::invariant_violation, "preserved interval " + stem_text(preserved) +
                                                     " was cut before stage " + limit.str());
        }
        del.current = meet;
        st.stages.push_back(meet);
        st.stage_indices.push_back(limit);
        st.limits.push_back({limit, keep_seed, preserved});
    }

    st.stage = st.stage_indices.back();
    st.current = del.current;
    st.deleted = del.deleted;
    st.witnesses = del.witnesses;
    check_stage_invariants(st.initial, st.current, st.deleted, st.witnesses, st.stages);
    return st;
}

}  // namespace cantor
