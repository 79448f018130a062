#include <cantor/cantortrie.hpp>

#include <cantor/error.hpp>

#include <algorithm>
#include <deque>

namespace cantor {

namespace {
constexpr std::size_t kNoEmptyLeaf = std::numeric_limits<std::size_t>::max();
}

struct CylinderComplex::Node {
    enum class Kind : std::uint8_t { empty, full, split };

    Kind kind = Kind::empty;
    NodePtr zero;
    NodePtr one;
    std::size_t height = 0;
    std::size_t min_empty = 0;
};

namespace {

using Node = CylinderComplex::Node;
using NodePtr = CylinderComplex::NodePtr;

const NodePtr& empty_leaf() {
    static const NodePtr leaf = std::make_shared<const Node>(Node{Node::Kind::empty, nullptr, nullptr, 0, 0});
    return leaf;
}

const NodePtr& full_leaf() {
    static const NodePtr leaf =
        std::make_shared<const Node>(Node{Node::Kind::full, nullptr, nullptr, 0, kNoEmptyLeaf});
    return leaf;
}

bool same_set(const Node& a, const Node& b) {
    if (&a == &b) return true;
    if (a.kind != b.kind || a.height != b.height) return false;
    if (a.kind != Node::Kind::split) return true;
    return same_set(*a.zero, *b.zero) && same_set(*a.one, *b.one);
}

Rational node_measure(const Node& n) {
    switch (n.kind) {
        case Node::Kind::empty: return Rational(0);
        case Node::Kind::full: return Rational(1);
        case Node::Kind::split: break;
    }
    return (node_measure(*n.zero) + node_measure(*n.one)) / 2;
}

void collect_full(const Node& n, BitWord& stem, std::vector<CylinderWord>& out) {
    if (n.kind == Node::Kind::full) {
        out.push_back(stem);
        return;
    }
    if (n.kind == Node::Kind::empty) return;
    stem.push_back(0);
    collect_full(*n.zero, stem, out);
    stem.pop_back();
    stem.push_back(1);
    collect_full(*n.one, stem, out);
    stem.pop_back();
}

}  // namespace

CylinderComplex::CylinderComplex() : root_(empty_leaf()) {}

CylinderComplex CylinderComplex::full() { return CylinderComplex(full_leaf()); }
CylinderComplex CylinderComplex::empty() { return CylinderComplex(empty_leaf()); }

CylinderComplex make_split(const CylinderComplex& zero, const CylinderComplex& one) {
    const Node& z = *zero.root_;
    const Node& o = *one.root_;
    if (z.kind != Node::Kind::split && z.kind == o.kind) return zero;
    return CylinderComplex(std::make_shared<const Node>(
        Node{Node::Kind::split, zero.root_, one.root_, 1 + std::max(z.height, o.height),
             std::min(z.min_empty, o.min_empty) == kNoEmptyLeaf ? kNoEmptyLeaf
                                                                 : 1 + std::min(z.min_empty, o.min_empty)}));
}

CylinderComplex CylinderComplex::cylinder(const CylinderWord& stem) {
    CylinderComplex c = full();
    for (std::size_t i = stem.size(); i-- > 0;) {
        c = stem[i] == 0 ? make_split(c, empty()) : make_split(empty(), c);
    }
    return c;
}

CylinderComplex CylinderComplex::from_cylinders(std::span<const CylinderWord> words) {
    CylinderComplex c;
    for (const auto& w : words) c = unite(c, cylinder(w));
    return c;
}

bool CylinderComplex::is_full() const noexcept { return root_->kind == Node::Kind::full; }
bool CylinderComplex::is_empty() const noexcept { return root_->kind == Node::Kind::empty; }
bool CylinderComplex::is_leaf() const noexcept { return root_->kind != Node::Kind::split; }

CylinderComplex CylinderComplex::child(Bit b) const {
    if (is_leaf()) return *this;
    return CylinderComplex(b == 0 ? root_->zero : root_->one);
}

CylinderComplex CylinderComplex::subtree(const BitWord& stem) const {
    CylinderComplex c = *this;
    for (std::size_t i = 0; i < stem.size() && !c.is_leaf(); ++i) c = c.child(stem[i]);
    return c;
}

bool CylinderComplex::contains(const Point& p) const {
    const Node* n = root_.get();
    for (std::size_t i = 0; n->kind == Node::Kind::split; ++i) {
        n = (p.bit_at(i) == 0 ? n->zero : n->one).get();
    }
    return n->kind == Node::Kind::full;
}

bool CylinderComplex::is_subset_of(const CylinderComplex& other) const {
    return difference(*this, other).is_empty();
}

Rational CylinderComplex::measure() const { return node_measure(*root_); }

std::size_t CylinderComplex::height() const noexcept { return root_->height; }

std::optional<std::size_t> CylinderComplex::min_empty_depth() const noexcept {
    if (root_->min_empty == kNoEmptyLeaf) return std::nullopt;
    return root_->min_empty;
}

std::vector<CylinderWord> CylinderComplex::full_leaves() const {
    std::vector<CylinderWord> out;
    BitWord stem;
    collect_full(*root_, stem, out);
    return out;
}

bool operator==(const CylinderComplex& a, const CylinderComplex& b) { return same_set(*a.root_, *b.root_); }

CylinderComplex complement(const CylinderComplex& a) {
    if (a.is_full()) return CylinderComplex::empty();
    if (a.is_empty()) return CylinderComplex::full();
    return make_split(complement(a.child(0)), complement(a.child(1)));
}

CylinderComplex unite(const CylinderComplex& a, const CylinderComplex& b) {
    if (a.is_full() || b.is_empty()) return a;
    if (b.is_full() || a.is_empty()) return b;
    if (a.root() == b.root()) return a;
    return make_split(unite(a.child(0), b.child(0)), unite(a.child(1), b.child(1)));
}

CylinderComplex intersect(const CylinderComplex& a, const CylinderComplex& b) {
    if (a.is_empty() || b.is_full()) return a;
    if (b.is_empty() || a.is_full()) return b;
    if (a.root() == b.root()) return a;
    return make_split(intersect(a.child(0), b.child(0)), intersect(a.child(1), b.child(1)));
}

CylinderComplex difference(const CylinderComplex& a, const CylinderComplex& b) {
    if (a.is_empty() || b.is_full()) return CylinderComplex::empty();
    if (b.is_empty()) return a;
    if (a.is_full()) return complement(b);
    return make_split(difference(a.child(0), b.child(0)), difference(a.child(1), b.child(1)));
}

bool is_dense_at_depth(const CylinderComplex& c, std::size_t depth) {
    if (c.is_full()) return true;
    if (c.is_empty()) return false;
    if (depth == 0) return true;
    return is_dense_at_depth(c.child(0), depth - 1) && is_dense_at_depth(c.child(1), depth - 1);
}

namespace {

bool nowhere_dense_below(const CylinderComplex& c, std::size_t level, std::size_t depth, std::size_t limit) {
    if (c.is_empty()) return true;
    if (c.is_full()) return false;  // reached only at level <= depth
    const auto hole = c.min_empty_depth();
    if (!hole || level + *hole > limit) return false;
    if (level == depth) return true;
    return nowhere_dense_below(c.child(0), level + 1, depth, limit) &&
           nowhere_dense_below(c.child(1), level + 1, depth, limit);
}

}  // namespace

bool nowhere_dense_at_depth(const CylinderComplex& c, std::size_t depth, std::optional<std::size_t> lookahead) {
    const std::size_t limit = depth + lookahead.value_or(2 * depth);
    return nowhere_dense_below(c, 0, depth, limit);
}

// ---------------------------------------------------------------------------
// PointedSet

PointedSet::PointedSet(CylinderComplex body, std::set<Point> extras, std::set<Point> holes)
    : body_(std::move(body)), extras_(std::move(extras)), holes_(std::move(holes)) {
    for (const auto& p : extras_) {
        if (body_.contains(p)) fail(ErrorKind::precondition, "extra point " + p.str() + " lies in the body");
    }
    for (const auto& p : holes_) {
        if (!body_.contains(p)) fail(ErrorKind::precondition, "hole " + p.str() + " lies outside the body");
    }
}

bool PointedSet::contains(const Point& p) const {
    return extras_.contains(p) || (body_.contains(p) && !holes_.contains(p));
}

bool PointedSet::has_member_in(const CylinderWord& stem, const Point* except) const {
    if (body_.intersects(stem)) return true;
    return std::any_of(extras_.begin(), extras_.end(), [&](const Point& q) {
        return (except == nullptr || q != *except) && q.prefix(stem.size()) == stem;
    });
}

std::vector<Point> isolated_points(const PointedSet& s, std::size_t horizon) {
    std::vector<Point> out;
    for (const auto& p : s.extras()) {
        // Shallowest k with [p|k] clear of the body: where p's walk leaves it.
        std::size_t clear_of_body = 0;
        for (CylinderComplex c = s.body(); !c.is_leaf(); ++clear_of_body) c = c.child(p.bit_at(clear_of_body));

        std::size_t clear_of_extras = 0;
        for (const auto& q : s.extras()) {
            if (q == p) continue;
            clear_of_extras = std::max(clear_of_extras, *first_disagreement(p, q) + 1);
        }
        if (std::max(clear_of_body, clear_of_extras) <= horizon) out.push_back(p);
    }
    return out;
}

PointedSet cb_kernel(const PointedSet& s, std::size_t horizon) {
    PointedSet current = s;
    for (std::size_t round = 0; round <= s.extras().size(); ++round) {
        const auto isolated = isolated_points(current, horizon);
        if (isolated.empty()) return current;
        std::set<Point> extras = current.extras();
        for (const auto& p : isolated) extras.erase(p);
        current = PointedSet(current.body(), std::move(extras), current.holes());
    }
    fail(ErrorKind::invariant_violation, "isolated-point removal did not reach a fixpoint");
}

// ---------------------------------------------------------------------------
// Cover checking

CoverResult cover_check(const CylinderComplex& space, std::span<const CylinderWord> cover) {
    const CylinderComplex covered = CylinderComplex::from_cylinders(cover);
    if (space.is_subset_of(covered)) {
        std::vector<CylinderWord> kept(cover.begin(), cover.end());
        for (std::size_t i = 0; i < kept.size();) {
            std::vector<CylinderWord> rest = kept;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            if (space.is_subset_of(CylinderComplex::from_cylinders(rest))) {
                kept = std::move(rest);
            } else {
                ++i;
            }
        }
        return Covered{std::move(kept)};
    }

    struct Frontier {
        BitWord stem;
        CylinderComplex cover;
        CylinderComplex space;
    };
    std::deque<Frontier> queue{{BitWord{}, covered, space}};
    while (!queue.empty()) {
        Frontier f = std::move(queue.front());
        queue.pop_front();
        if (f.space.is_empty() || f.cover.is_full()) continue;
        if (f.cover.is_empty()) return Uncovered{f.stem};
        for (Bit b : {Bit{0}, Bit{1}}) {
            queue.push_back({f.stem.appended(b), f.cover.child(b), f.space.child(b)});
        }
    }
    fail(ErrorKind::invariant_violation, "uncovered space without a subdivision witness");
}

}  // namespace cantor
