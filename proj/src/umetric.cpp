#include <cantor/umetric.hpp>

#include <cantor/error.hpp>

#include <algorithm>
#include <cstdio>
#include <map>

namespace cantor {

namespace {

OrdinalIndex to_height(OrdinalIndex zero_based) { return {zero_based.q, zero_based.n + 1}; }

void require(bool ok, const char* what) {
    if (!ok) fail(ErrorKind::metric_axiom_violation, what);
}

}  // namespace

FormalDistance FormalDistance::unit(OrdinalIndex position) {
    FormalDistance d;
    d.positions_.push_back(position);
    return d;
}

FormalDistance FormalDistance::from_positions(std::vector<OrdinalIndex> positions) {
    std::map<OrdinalIndex, std::size_t> counts;
    for (const auto& p : positions) ++counts[p];

    // Carries only move toward smaller positions, so settling the largest
    // duplicated position first reaches the fixpoint.
    while (true) {
        auto dup = std::find_if(counts.rbegin(), counts.rend(), [](const auto& kv) { return kv.second >= 2; });
        if (dup == counts.rend()) break;
        const OrdinalIndex at = dup->first;
        if (!at.is_successor()) {
            fail(ErrorKind::limit_carry_undefined, "carry out of position " + at.str() + " is undefined");
        }
        const std::size_t carried = dup->second / 2;
        dup->second %= 2;
        counts[ord_pred(at)] += carried;
    }

    FormalDistance d;
    for (const auto& [pos, count] : counts) {
        if (count == 1) d.positions_.push_back(pos);
    }
    return d;
}

FormalDistance FormalDistance::parse(std::string_view text) {
    if (text == "0") return zero();
    std::vector<OrdinalIndex> positions;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto plus = text.find('+', start);
        const auto term = text.substr(start, plus == std::string_view::npos ? std::string_view::npos : plus - start);
        unsigned long q = 0, n = 0;
        char tail = 0;
        if (std::sscanf(std::string(term).c_str(), "1@(%lu,%lu)%c", &q, &n, &tail) != 2) {
            fail(ErrorKind::malformed_input, "bad formal distance term '" + std::string(term) + "'");
        }
        positions.push_back({static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(n)});
        if (plus == std::string_view::npos) break;
        start = plus + 1;
    }
    return from_positions(std::move(positions));
}

std::string FormalDistance::str() const {
    if (positions_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        if (i) s += '+';
        s += "1@" + positions_[i].str();
    }
    return s;
}

std::strong_ordering operator<=>(const FormalDistance& a, const FormalDistance& b) {
    const auto& pa = a.positions();
    const auto& pb = b.positions();
    for (std::size_t i = 0;; ++i) {
        const bool a_done = i == pa.size();
        const bool b_done = i == pb.size();
        if (a_done && b_done) return std::strong_ordering::equal;
        if (a_done) return std::strong_ordering::less;
        if (b_done) return std::strong_ordering::greater;
        if (pa[i] != pb[i]) {
            // The earlier position is the more significant digit.
            return pa[i] < pb[i] ? std::strong_ordering::greater : std::strong_ordering::less;
        }
    }
}

FormalDistance oplus(const FormalDistance& a, const FormalDistance& b) {
    std::vector<OrdinalIndex> all = a.positions();
    all.insert(all.end(), b.positions().begin(), b.positions().end());
    return FormalDistance::from_positions(std::move(all));
}

std::strong_ordering fd_compare(const FormalDistance& a, const FormalDistance& b) { return a <=> b; }

std::size_t split_height(const Point& x, const Point& y) {
    const auto at = first_disagreement(x, y);
    if (!at) fail(ErrorKind::precondition, "split height of identical points");
    return *at + 1;
}

Rational distance(const Point& x, const Point& y) {
    const auto at = first_disagreement(x, y);
    if (!at) return Rational(0);
    return pow2_inv(*at + 1);
}

FormalDistance distance_transfinite(const TransfinitePoint& x, const TransfinitePoint& y) {
    const auto at = first_disagreement(x, y);
    if (!at) return FormalDistance::zero();
    return FormalDistance::unit(to_height(*at));
}

std::string_view to_string(TriangleCase c) noexcept {
    switch (c) {
        case TriangleCase::case1: return "Case1";
        case TriangleCase::case2: return "Case2";
        case TriangleCase::case3: return "Case3";
        case TriangleCase::case4: return "Case4";
        case TriangleCase::degenerate: return "Degenerate";
    }
    return "Degenerate";
}

TriangleCase triangle_case(const TransfinitePoint& x, const TransfinitePoint& y, const TransfinitePoint& z) {
    const auto xy = first_disagreement(x, y);
    const auto xz = first_disagreement(x, z);
    const auto yz = first_disagreement(y, z);
    const FormalDistance d_xy = distance_transfinite(x, y);
    const FormalDistance d_yz = distance_transfinite(y, z);
    const FormalDistance d_xz = distance_transfinite(x, z);
    const FormalDistance sum = oplus(d_xy, d_yz);

    if (!xy || !yz || !xz) {
        if (!xy) {
            require(xz == yz, "case 4: x = y but alpha(x,z) != alpha(y,z)");
            require(sum == d_xz, "case 4: x = y but d(x,y)+d(y,z) != d(x,z)");
        }
        if (!yz) {
            require(xy == xz, "case 4: y = z but alpha(x,y) != alpha(x,z)");
            require(sum == d_xz, "case 4: y = z but d(x,y)+d(y,z) != d(x,z)");
        }
        if (!xz) {
            require(xy == yz, "case 4: x = z but alpha(x,y) != alpha(y,z)");
            require(xy ? sum > d_xz : sum == d_xz, "case 4: x = z but the sum is not positive");
        }
        return TriangleCase::case4;
    }

    if (*xz > *xy) {
        require(*yz == *xy, "case 1: alpha(y,z) != alpha(x,y)");
        require(sum == FormalDistance::unit(ord_pred(to_height(*xy))), "case 1: sum is not 1_(alpha(x,y)-1)");
        require(sum > d_xy && d_xy > d_xz, "case 1: inequality chain fails");
        return TriangleCase::case1;
    }
    if (*xz < *xy) {
        require(*yz == *xz, "case 2: alpha(y,z) != alpha(x,z)");
        require(sum > d_xz, "case 2: d(x,y)+d(y,z) <= d(x,z)");
        return TriangleCase::case2;
    }
    require(sum > d_xz, "case 3: d(x,y)+d(y,z) <= d(x,z)");
    return TriangleCase::case3;
}

}  // namespace cantor
