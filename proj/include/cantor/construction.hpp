#pragma once

#include <cantor/cantortrie.hpp>
#include <cantor/error.hpp>
#include <cantor/seqcore.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cantor {

/// Resolution bounds shared by the deletion engines.
struct Limits {
    /// Longest stem a deletion may use.
    std::size_t depth_budget = 32;
};

/// One scheduled deletion: a target branch and an offset r >= 1 counted in
/// splitting nodes. An explicit `stem` (which the target must extend) deletes
/// that clopen interval directly instead of deriving one from the offset.
struct DeletionEntry {
    Point target;
    std::size_t offset = 1;
    std::optional<CylinderWord> stem;

    friend bool operator==(const DeletionEntry&, const DeletionEntry&) = default;
};

class DeletionSchedule {
public:
    DeletionSchedule() = default;
    explicit DeletionSchedule(std::vector<DeletionEntry> entries);

    const std::vector<DeletionEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    std::vector<Point> targets() const;

    friend bool operator==(const DeletionSchedule&, const DeletionSchedule&) = default;

private:
    std::vector<DeletionEntry> entries_;
};

/// Every depth-`depth` cylinder meeting `initial` contains a scheduled target.
bool schedule_dense_at_depth(const CylinderComplex& initial, const DeletionSchedule& schedule, std::size_t depth);

/// Words of length `depth` whose cylinders meet `c`, left to right.
std::vector<CylinderWord> cylinders_meeting(const CylinderComplex& c, std::size_t depth);

/// Depths j >= from at which the node target|j is a splitting node of
/// `current` (both children meet it), up to and including the count-th one.
/// Throws budget_exceeded when they run past the budget.
std::vector<std::size_t> splitting_depths(const CylinderComplex& current, const Point& target, std::size_t from,
                                          std::size_t count, const Limits& limits);

struct StepResult {
    CylinderComplex next;
    /// Absent when the target was already deleted (the step does nothing).
    std::optional<CylinderWord> deleted;
    /// Highest node at which a prior target splits from this one.
    std::size_t split_node = 0;
    std::size_t offset = 0;
};

/// One branch-deletion step: skip to the first splitting node at or above the
/// split from the prior targets, walk `offset` further splitting nodes along
/// the target, and delete the cylinder of everything continuing the target
/// past that node.
StepResult cntr_step(const CylinderComplex& current, const Point& target, std::size_t offset,
                     std::span<const Point> prior_targets, const Limits& limits = {});

struct StepRecord {
    Point target;
    std::size_t offset = 0;
    std::size_t split_node = 0;
    std::optional<CylinderWord> deleted;
};

struct ConstructionState {
    std::size_t stage = 0;
    CylinderComplex initial;
    CylinderComplex current;
    std::vector<CylinderWord> deleted;
    std::vector<Point> witnesses;
    std::vector<StepRecord> steps;
    /// stages[k] is the remainder after k steps; stages.front() == initial.
    std::vector<CylinderComplex> stages;
};

/// Checks reconstruction (current = initial minus the deleted cylinders),
/// stage monotonicity and witness membership. Throws invariant_violation.
void check_invariants(const ConstructionState& state);

/// Folds cntr_step over the schedule. Repeated targets or repeated derived
/// stems throw non_repeating_violation.
ConstructionState run_construction(const CylinderComplex& initial, const DeletionSchedule& schedule,
                                   const Limits& limits = {});

struct PreserveResult {
    ConstructionState state;
    std::vector<Point> witnesses;
    /// Stem of the tracked clopen interval U after each step (the root first).
    std::vector<CylinderWord> intervals;
};

/// Deletes around each avoid target in turn (cycling through the list for
/// `steps` steps) while protecting every witness: the offset grows until the
/// deleted cylinder misses all witnesses, and each clopen piece split off
/// along the target without a witness gets a fresh one.
PreserveResult preserve_run(const CylinderComplex& initial, std::span<const Point> avoid, const Point& keep_seed,
                            std::size_t steps, const Limits& limits = {});

struct LimitRecord {
    OrdinalIndex stage;
    Point witness;
    /// The cylinder around the witness above which nothing has been deleted.
    CylinderWord preserved;
};

struct TransfiniteConstructionState {
    OrdinalIndex stage;
    CylinderComplex initial;
    CylinderComplex current;
    std::vector<CylinderWord> deleted;
    std::vector<Point> witnesses;
    std::vector<StepRecord> steps;
    std::vector<OrdinalIndex> stage_indices;
    std::vector<CylinderComplex> stages;
    std::vector<LimitRecord> limits;
};

/// Runs one omega-segment of preserving deletions per block, taking the
/// intersection of each segment's stages at the following limit stage and
/// checking that the seed witness survives there.
TransfiniteConstructionState run_transfinite(const CylinderComplex& initial,
                                             const std::vector<std::vector<Point>>& segments,
                                             const Point& keep_seed, std::size_t k, std::size_t k_bound,
                                             const Limits& limits = {});

struct BaireWitness {
    Point point;
    /// Descending cylinders D_0 ⊇ D_1 ⊇ … with D_{k+1} clear of nd_sets[k].
    std::vector<CylinderWord> chain;
};

/// Builds a descending chain of cylinders inside `space`, each clear of the
/// next nowhere dense set, and returns the chain's last stem extended by 0s.
BaireWitness bct_witness(const CylinderComplex& space, std::span<const CylinderComplex> nd_sets, std::size_t depth,
                         std::optional<std::size_t> lookahead = std::nullopt);

enum class Branch { left, right, hit };

std::string_view to_string(Branch b) noexcept;

struct BisectionStep {
    Point a;
    Point b;
    Point mid;
    Branch branch;
};

struct BisectionResult {
    bool member = false;
    std::size_t steps = 0;
    std::vector<BisectionStep> trace;
};

class BisectionBudgetExceeded : public Error {
public:
    BisectionBudgetExceeded(const std::string& message, std::vector<BisectionStep> trace)
        : Error(ErrorKind::budget_exceeded, message), trace_(std::move(trace)) {}
    const std::vector<BisectionStep>& trace() const noexcept { return trace_; }

private:
    std::vector<BisectionStep> trace_;
};

/// Locates x in [000…, 111…] by repeated midpoint division, then decides
/// membership. A point sitting on an endpoint of the current interval is
/// located at once (the nested intervals close down on it).
BisectionResult bisection_locate(const PointedSet& space, const Point& x, std::size_t max_steps);

struct PDefinitionReport {
    std::size_t max_k_nonempty = 0;
    DeletionSchedule witness_schedule;
    bool exhaustive_empty = false;
    /// Number of depth-d cylinders meeting the space.
    std::size_t candidates = 0;
    /// Whether every subset was enumerated (otherwise guided search ran).
    bool exhaustive_search = false;
};

/// Searches deletion schedules over the depth-`depth` cylinders meeting the
/// space. A schedule is dense when its cylinders meet every depth-(depth-1)
/// cylinder that meets the space. Reports the longest dense schedule that
/// leaves a nonempty remainder and whether deleting every cylinder empties
/// the space. Throws budget_exceeded when 2^depth > budget.
/// Brute force over every subset is used up to this many candidate cylinders.
inline constexpr std::size_t kExhaustiveCandidateLimit = 16;

/// `automatic` enumerates subsets up to kExhaustiveCandidateLimit candidates
/// and runs the guided search above that.
enum class PSearch { automatic, exhaustive, guided };

PDefinitionReport verify_P_definition(const CylinderComplex& space, std::size_t depth, std::size_t budget,
                                      PSearch search = PSearch::automatic);

struct CardinalityClass {
    enum class Kind { empty, finite, continuum_scale };
    Kind kind = Kind::empty;
    std::size_t count = 0;

    std::string str() const;
    friend bool operator==(const CardinalityClass&, const CardinalityClass&) = default;
};

CardinalityClass classify_cardinality(const PointedSet& s, std::size_t horizon);

struct NaturalsResult {
    std::size_t remainder_size = 0;
    bool empties_in_limit = false;
    /// Remainder after re-running the family against twice the bound.
    std::size_t rerun_remainder = 0;
};

/// Removes the open sets d_n = {m < n} from {0, …, bound-1}. A family that
/// reaches the bound (contains d_bound) is cofinal: on the re-run at twice
/// the bound that member tracks the new bound; every other member stays put.
NaturalsResult naturals_demo(std::size_t bound, std::span<const std::size_t> deleted_indices);

}  // namespace cantor
