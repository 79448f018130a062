#pragma once

#include <cantor/rational.hpp>
#include <cantor/seqcore.hpp>

#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <variant>
#include <vector>

namespace cantor {

/// The cylinder [stem]: every sequence extending `stem`.
using CylinderWord = BitWord;

/// A clopen subset of 2^omega held as a canonical binary trie whose leaves
/// are FULL or EMPTY. No split node has two leaf children with the same tag,
/// so two complexes denote the same set iff they are structurally equal.
///
/// Nodes are immutable and shared between derived complexes.
class CylinderComplex {
public:
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    /// The empty set.
    CylinderComplex();

    static CylinderComplex full();
    static CylinderComplex empty();
    static CylinderComplex cylinder(const CylinderWord& stem);
    static CylinderComplex from_cylinders(std::span<const CylinderWord> words);

    bool is_full() const noexcept;
    bool is_empty() const noexcept;
    bool is_leaf() const noexcept;

    /// Children of a split node; a FULL or EMPTY leaf is its own child.
    CylinderComplex child(Bit b) const;

    /// The quotient {s : stem·s in this set}, as a complex.
    CylinderComplex subtree(const BitWord& stem) const;

    bool contains(const Point& p) const;
    bool intersects(const CylinderWord& stem) const { return !subtree(stem).is_empty(); }
    bool includes(const CylinderWord& stem) const { return subtree(stem).is_full(); }
    bool is_subset_of(const CylinderComplex& other) const;

    /// Sum of 2^-depth over FULL leaves.
    Rational measure() const;

    /// Length of the longest root-to-leaf path.
    std::size_t height() const noexcept;

    /// Depth of the shallowest EMPTY leaf, or nullopt when there is none.
    std::optional<std::size_t> min_empty_depth() const noexcept;

    /// Stems of FULL leaves in left-to-right order.
    std::vector<CylinderWord> full_leaves() const;

    const NodePtr& root() const noexcept { return root_; }

    friend bool operator==(const CylinderComplex& a, const CylinderComplex& b);

private:
    explicit CylinderComplex(NodePtr root) : root_(std::move(root)) {}
    friend CylinderComplex make_split(const CylinderComplex& zero, const CylinderComplex& one);

    NodePtr root_;
};

/// Joins two children under a new root, merging equal leaves.
CylinderComplex make_split(const CylinderComplex& zero, const CylinderComplex& one);

CylinderComplex complement(const CylinderComplex& a);
CylinderComplex unite(const CylinderComplex& a, const CylinderComplex& b);
CylinderComplex intersect(const CylinderComplex& a, const CylinderComplex& b);
CylinderComplex difference(const CylinderComplex& a, const CylinderComplex& b);

inline bool contains_point(const CylinderComplex& c, const Point& p) { return c.contains(p); }
inline Rational measure(const CylinderComplex& c) { return c.measure(); }

/// Every cylinder of length `depth` meets `c`.
bool is_dense_at_depth(const CylinderComplex& c, std::size_t depth);

/// Every cylinder [w] with |w| <= depth that meets `c` contains a cylinder of
/// length at most depth + lookahead that misses `c`. The lookahead defaults
/// to 2*depth.
bool nowhere_dense_at_depth(const CylinderComplex& c, std::size_t depth,
                            std::optional<std::size_t> lookahead = std::nullopt);

/// A clopen body together with finitely many added points (outside the body)
/// and finitely many punctures (inside it). Denotes body ∪ extras − holes.
class PointedSet {
public:
    PointedSet() = default;
    /// Throws precondition when an extra lies in the body or a hole does not.
    PointedSet(CylinderComplex body, std::set<Point> extras = {}, std::set<Point> holes = {});

    const CylinderComplex& body() const noexcept { return body_; }
    const std::set<Point>& extras() const noexcept { return extras_; }
    const std::set<Point>& holes() const noexcept { return holes_; }

    bool contains(const Point& p) const;
    /// A nonempty clopen body is uncountable, so finitely many holes never empty it.
    bool is_empty() const noexcept { return body_.is_empty() && extras_.empty(); }

    /// Whether some member other than `except` lies in [stem].
    bool has_member_in(const CylinderWord& stem, const Point* except = nullptr) const;

    friend bool operator==(const PointedSet&, const PointedSet&) = default;

private:
    CylinderComplex body_;
    std::set<Point> extras_;
    std::set<Point> holes_;
};

/// Extras p for which some [p|k], k <= horizon, holds no other member of the
/// set. Body points are never isolated since every FULL leaf is a continuum.
std::vector<Point> isolated_points(const PointedSet& s, std::size_t horizon);

/// Removes isolated points until none remain at the horizon. The body is never
/// eroded, so at most |extras| + 1 rounds run.
PointedSet cb_kernel(const PointedSet& s, std::size_t horizon);

struct Covered {
    std::vector<CylinderWord> subcover;
};

struct Uncovered {
    CylinderWord witness;
};

using CoverResult = std::variant<Covered, Uncovered>;

/// Decides whether `cover` covers `space`. A covering answer carries an
/// inclusion-minimal subcover (kept in input order); otherwise the shortest,
/// then leftmost, stem that meets `space` and misses every cover element.
CoverResult cover_check(const CylinderComplex& space, std::span<const CylinderWord> cover);

}  // namespace cantor
