#pragma once

#include <cantor/seqcore.hpp>

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace cantor {

/// A formal sum of unit digits 1_alpha, one per stored position, kept
/// carry-normalized: no position occurs twice. The empty sum is zero.
///
/// Values are ordered positionally: the smaller position is the more
/// significant digit, so 1_(0,4) > 1_(0,5) and 1_(0,3) > 1_(1,0).
class FormalDistance {
public:
    FormalDistance() = default;

    static FormalDistance zero() { return {}; }
    static FormalDistance unit(OrdinalIndex position);

    /// Normalizes an arbitrary multiset of positions by carrying duplicates to
    /// their predecessor. Throws limit_carry_undefined when a carry would have
    /// to leave a limit position or (0,0).
    static FormalDistance from_positions(std::vector<OrdinalIndex> positions);

    /// `0` or `1@(q,n)+1@(q,n)+…` in increasing position order.
    static FormalDistance parse(std::string_view text);

    bool is_zero() const noexcept { return positions_.empty(); }
    const std::vector<OrdinalIndex>& positions() const noexcept { return positions_; }
    std::string str() const;

    friend bool operator==(const FormalDistance&, const FormalDistance&) = default;
    friend std::strong_ordering operator<=>(const FormalDistance& a, const FormalDistance& b);

private:
    std::vector<OrdinalIndex> positions_;  // strictly increasing
};

FormalDistance oplus(const FormalDistance& a, const FormalDistance& b);
std::strong_ordering fd_compare(const FormalDistance& a, const FormalDistance& b);

/// 0 when x = y, otherwise 2^-h where h is the 1-based height of the first
/// disagreement. Always at most 1/2.
Rational distance(const Point& x, const Point& y);

/// 1-based split height of two distinct Points.
std::size_t split_height(const Point& x, const Point& y);

/// Zero when equal, otherwise the unit at the least disagreement position
/// with its finite part shifted to a 1-based height.
FormalDistance distance_transfinite(const TransfinitePoint& x, const TransfinitePoint& y);

enum class TriangleCase { case1, case2, case3, case4, degenerate };

std::string_view to_string(TriangleCase c) noexcept;

/// Sorts a triple into the four-way split of the triangle inequality argument
/// and checks the identity each case claims; a failed check throws
/// metric_axiom_violation. Case 4 covers every triple with a coincidence, so
/// `degenerate` is never produced.
TriangleCase triangle_case(const TransfinitePoint& x, const TransfinitePoint& y,
                           const TransfinitePoint& z);

}  // namespace cantor
