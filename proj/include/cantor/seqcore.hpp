#pragma once

#include <cantor/rational.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cantor {

using Bit = std::uint8_t;

/// A finite word over {0,1}. The empty word names the root cylinder.
class BitWord {
public:
    BitWord() = default;
    explicit BitWord(std::vector<Bit> bits);

    /// Parses a string of ASCII '0'/'1'. Throws malformed_input otherwise.
    static BitWord parse(std::string_view text);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }
    Bit operator[](std::size_t i) const { return bits_[i]; }
    std::span<const Bit> bits() const noexcept { return bits_; }

    BitWord prefix(std::size_t n) const;
    BitWord appended(Bit b) const;
    void push_back(Bit b);
    void pop_back() { bits_.pop_back(); }
    Bit back() const { return bits_.back(); }

    /// True when this word is an initial segment of (or equal to) `other`.
    bool is_prefix_of(const BitWord& other) const noexcept;

    std::string str() const;

    friend bool operator==(const BitWord&, const BitWord&) = default;
    friend auto operator<=>(const BitWord& a, const BitWord& b) { return a.bits_ <=> b.bits_; }

private:
    std::vector<Bit> bits_;
};

/// An eventually periodic infinite binary sequence, pre·period·period·…
///
/// Always held in canonical form: the shortest preperiod and the shortest
/// period denoting the same sequence. Two Points are equal as sequences iff
/// their canonical forms are identical. 0111… and 1000… are distinct Points.
class Point {
public:
    /// The all-zeros sequence.
    Point();

    /// Canonicalizes. Throws malformed_input when `period` is empty.
    Point(BitWord preperiod, BitWord period);

    /// Text form `pre:period`, e.g. `01:1` for 0111… and `:01` for 0101….
    static Point parse(std::string_view text);

    static Point constant(Bit b);
    /// stem followed by the constant tail `fill`.
    static Point extend(const BitWord& stem, Bit fill = 0);

    const BitWord& preperiod() const noexcept { return pre_; }
    const BitWord& period() const noexcept { return period_; }

    /// |preperiod| + |period|.
    std::size_t resolution() const noexcept { return pre_.size() + period_.size(); }

    Bit bit_at(std::size_t index) const;
    BitWord prefix(std::size_t n) const;

    /// True when the sequence ends in the constant period 0.
    bool is_terminating() const noexcept;

    std::string str() const;

    friend bool operator==(const Point&, const Point&) = default;
    /// Lexicographic order of the infinite sequences.
    friend std::strong_ordering operator<=>(const Point& a, const Point& b);

private:
    BitWord pre_;
    BitWord period_;
};

Point canonicalize(const BitWord& raw_preperiod, const BitWord& raw_period);

/// Least index at which the sequences differ, or nullopt when equal.
std::optional<std::size_t> first_disagreement(const Point& x, const Point& y);

std::strong_ordering compare_lex(const Point& x, const Point& y);

/// Exact real value sum bit_i * 2^-(i+1). Eventually periodic sequences are
/// rational, so `exact` is always set.
struct ExactValue {
    Rational value;
    bool exact = true;
};

ExactValue exact_value(const Point& p);
inline ExactValue to_dyadic_pair(const Point& p) { return exact_value(p); }

/// A reduced dyadic rational numerator / 2^exponent (numerator odd or zero).
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(BigInt numerator, std::size_t exponent);

    /// nullopt unless `r` has a power-of-two denominator.
    static std::optional<Dyadic> from_rational(const Rational& r);

    const BigInt& numerator() const noexcept { return num_; }
    std::size_t exponent() const noexcept { return exp_; }
    Rational to_rational() const;

    /// The terminating rendering pre·000… of a value in [0,1).
    /// Throws precondition for values outside [0,1).
    Point to_point() const;

    friend bool operator==(const Dyadic&, const Dyadic&) = default;

private:
    BigInt num_ = 0;
    std::size_t exp_ = 0;
};

/// Binary expansion of a rational in [0,1]. Dyadic values other than 0 get the
/// terminating rendering; the value 1 renders as 111….
Point point_from_rational(const Rational& value);

/// The Point whose value is the average of the two values, rendered as in
/// point_from_rational. Throws invalid_interval unless a < b lexicographically.
Point midpoint(const Point& a, const Point& b);

/// A position omega*q + n below omega*(K+1).
struct OrdinalIndex {
    std::uint32_t q = 0;
    std::uint32_t n = 0;

    bool is_successor() const noexcept { return n >= 1; }
    bool is_limit() const noexcept { return n == 0 && q >= 1; }

    /// `(q,n)`
    std::string str() const;

    friend bool operator==(const OrdinalIndex&, const OrdinalIndex&) = default;
    friend auto operator<=>(const OrdinalIndex&, const OrdinalIndex&) = default;
};

/// (q, n-1). Throws no_predecessor at limits and at (0,0).
OrdinalIndex ord_pred(OrdinalIndex idx);

/// A sequence of length omega*K: block q supplies the bits at omega*q + n.
class TransfinitePoint {
public:
    explicit TransfinitePoint(std::vector<Point> blocks);

    /// Blocks separated by '|', e.g. `:0|1:0`.
    static TransfinitePoint parse(std::string_view text);

    std::size_t block_count() const noexcept { return blocks_.size(); }
    const Point& block(std::size_t q) const { return blocks_.at(q); }
    std::span<const Point> blocks() const noexcept { return blocks_; }

    Bit bit_at(OrdinalIndex idx) const;
    std::string str() const;

    friend bool operator==(const TransfinitePoint&, const TransfinitePoint&) = default;

private:
    std::vector<Point> blocks_;
};

/// Least 0-based ordinal position of disagreement. Throws precondition when
/// the block counts differ.
std::optional<OrdinalIndex> first_disagreement(const TransfinitePoint& x,
                                               const TransfinitePoint& y);

}  // namespace cantor
