#include <cantor/seqcore.hpp>

#include <cantor/error.hpp>

#include <algorithm>
#include <map>
#include <numeric>

namespace cantor {

// ---------------------------------------------------------------------------
// BitWord

BitWord::BitWord(std::vector<Bit> bits) : bits_(std::move(bits)) {
    for (Bit b : bits_) {
        if (b > 1) fail(ErrorKind::malformed_input, "bit value out of range");
    }
}

BitWord BitWord::parse(std::string_view text) {
    std::vector<Bit> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            fail(ErrorKind::malformed_input,
                 "expected binary digits, got '" + std::string(text) + "'");
        }
        bits.push_back(static_cast<Bit>(c - '0'));
    }
    return BitWord(std::move(bits));
}

BitWord BitWord::prefix(std::size_t n) const {
    n = std::min(n, bits_.size());
    return BitWord(std::vector<Bit>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(n)));
}

BitWord BitWord::appended(Bit b) const {
    BitWord out = *this;
    out.push_back(b);
    return out;
}

void BitWord::push_back(Bit b) {
    if (b > 1) fail(ErrorKind::malformed_input, "bit value out of range");
    bits_.push_back(b);
}

bool BitWord::is_prefix_of(const BitWord& other) const noexcept {
    return bits_.size() <= other.bits_.size() &&
           std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

std::string BitWord::str() const {
    std::string s;
    s.reserve(bits_.size());
    for (Bit b : bits_) s.push_back(static_cast<char>('0' + b));
    return s;
}

// ---------------------------------------------------------------------------
// Point

namespace {

BitWord minimal_period(const BitWord& period) {
    const std::size_t len = period.size();
    for (std::size_t p = 1; p < len; ++p) {
        if (len % p != 0) continue;
        bool repeats = true;
        for (std::size_t i = p; i < len && repeats; ++i) repeats = period[i] == period[i % p];
        if (repeats) return period.prefix(p);
    }
    return period;
}

BitWord rotate_right(const BitWord& w) {
    std::vector<Bit> bits;
    bits.reserve(w.size());
    bits.push_back(w.back());
    for (std::size_t i = 0; i + 1 < w.size(); ++i) bits.push_back(w[i]);
    return BitWord(std::move(bits));
}

BigInt word_value(const BitWord& w) {
    BigInt v = 0;
    for (Bit b : w.bits()) {
        v <<= 1;
        v += b;
    }
    return v;
}

}  // namespace

Point canonicalize(const BitWord& raw_preperiod, const BitWord& raw_period) {
    return Point(raw_preperiod, raw_period);
}

Point::Point() : period_(std::vector<Bit>{0}) {}

Point::Point(BitWord preperiod, BitWord period) : pre_(std::move(preperiod)) {
    if (period.empty()) fail(ErrorKind::malformed_input, "period must be nonempty");
    period_ = minimal_period(period);
    // A preperiod bit equal to the last period bit is one more turn of the cycle.
    while (!pre_.empty() && pre_.back() == period_.back()) {
        pre_.pop_back();
        period_ = rotate_right(period_);
    }
}

Point Point::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos || text.find(':', colon + 1) != std::string_view::npos) {
        fail(ErrorKind::malformed_input, "point must be written pre:period, got '" + std::string(text) + "'");
    }
    return Point(BitWord::parse(text.substr(0, colon)), BitWord::parse(text.substr(colon + 1)));
}

Point Point::constant(Bit b) { return Point(BitWord{}, BitWord(std::vector<Bit>{b})); }

Point Point::extend(const BitWord& stem, Bit fill) {
    return Point(stem, BitWord(std::vector<Bit>{fill}));
}

Bit Point::bit_at(std::size_t index) const {
    if (index < pre_.size()) return pre_[index];
    return period_[(index - pre_.size()) % period_.size()];
}

BitWord Point::prefix(std::size_t n) const {
    std::vector<Bit> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = bit_at(i);
    return BitWord(std::move(bits));
}

bool Point::is_terminating() const noexcept {
    return period_.size() == 1 && period_[0] == 0;
}

std::string Point::str() const { return pre_.str() + ":" + period_.str(); }

std::optional<std::size_t> first_disagreement(const Point& x, const Point& y) {
    const std::size_t bound = std::max(x.preperiod().size(), y.preperiod().size()) +
                              std::lcm(x.period().size(), y.period().size());
    for (std::size_t i = 0; i < bound; ++i) {
        if (x.bit_at(i) != y.bit_at(i)) return i;
    }
    return std::nullopt;
}

std::strong_ordering compare_lex(const Point& x, const Point& y) {
    const auto at = first_disagreement(x, y);
    if (!at) return std::strong_ordering::equal;
    return x.bit_at(*at) <=> y.bit_at(*at);
}

std::strong_ordering operator<=>(const Point& a, const Point& b) { return compare_lex(a, b); }

ExactValue exact_value(const Point& p) {
    const std::size_t a = p.preperiod().size();
    const std::size_t k = p.period().size();
    BigInt pow_a = 1;
    pow_a <<= a;
    BigInt cycle = 1;
    cycle <<= k;
    cycle -= 1;
    Rational value(word_value(p.preperiod()), pow_a);
    value += Rational(word_value(p.period()), cycle * pow_a);
    return ExactValue{value, true};
}

// ---------------------------------------------------------------------------
// Dyadic

Dyadic::Dyadic(BigInt numerator, std::size_t exponent)
    : num_(std::move(numerator)), exp_(exponent) {
    if (num_ < 0) fail(ErrorKind::precondition, "dyadic numerator must be nonnegative");
    if (num_ == 0) {
        exp_ = 0;
        return;
    }
    while (exp_ > 0 && (num_ & 1) == 0) {
        num_ >>= 1;
        --exp_;
    }
}

std::optional<Dyadic> Dyadic::from_rational(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (num < 0 || (den & (den - 1)) != 0) return std::nullopt;
    return Dyadic(num, boost::multiprecision::msb(den));
}

Rational Dyadic::to_rational() const {
    BigInt den = 1;
    den <<= exp_;
    return Rational(num_, den);
}

Point Dyadic::to_point() const {
    BigInt limit = 1;
    limit <<= exp_;
    if (num_ >= limit) fail(ErrorKind::precondition, "terminating rendering needs a value below 1");
    if (num_ == 0) return Point();
    std::vector<Bit> bits(exp_);
    for (std::size_t i = 0; i < exp_; ++i) {
        bits[exp_ - 1 - i] = boost::multiprecision::bit_test(num_, static_cast<unsigned>(i)) ? 1 : 0;
    }
    return Point::extend(BitWord(std::move(bits)), 0);
}

// ---------------------------------------------------------------------------
// Rational bridge

Point point_from_rational(const Rational& value) {
    if (value < 0 || value > 1) fail(ErrorKind::precondition, "value outside [0,1]: " + value.str());
    if (value == 1) return Point::constant(1);
    if (auto d = Dyadic::from_rational(value)) return d->to_point();

    const BigInt den = boost::multiprecision::denominator(value);
    BigInt rem = boost::multiprecision::numerator(value);
    std::map<BigInt, std::size_t> seen;
    std::vector<Bit> bits;
    while (!seen.contains(rem)) {
        seen.emplace(rem, bits.size());
        rem <<= 1;
        const bool one = rem >= den;
        if (one) rem -= den;
        bits.push_back(one ? 1 : 0);
    }
    const auto start = static_cast<std::ptrdiff_t>(seen.at(rem));
    return Point(BitWord(std::vector<Bit>(bits.begin(), bits.begin() + start)),
                 BitWord(std::vector<Bit>(bits.begin() + start, bits.end())));
}

Point midpoint(const Point& a, const Point& b) {
    if (compare_lex(a, b) != std::strong_ordering::less) {
        fail(ErrorKind::invalid_interval, "midpoint needs a < b, got " + a.str() + " and " + b.str());
    }
    return point_from_rational((exact_value(a).value + exact_value(b).value) / 2);
}

// ---------------------------------------------------------------------------
// Ordinals

std::string OrdinalIndex::str() const {
    return "(" + std::to_string(q) + "," + std::to_string(n) + ")";
}

OrdinalIndex ord_pred(OrdinalIndex idx) {
    if (!idx.is_successor()) {
        fail(ErrorKind::no_predecessor, "position " + idx.str() + " has no predecessor");
    }
    return OrdinalIndex{idx.q, idx.n - 1};
}

TransfinitePoint::TransfinitePoint(std::vector<Point> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) fail(ErrorKind::malformed_input, "a transfinite point needs at least one block");
}

TransfinitePoint TransfinitePoint::parse(std::string_view text) {
    std::vector<Point> blocks;
    std::size_t start = 0;
    while (true) {
        const auto bar = text.find('|', start);
        blocks.push_back(Point::parse(text.substr(start, bar - start)));
        if (bar == std::string_view::npos) break;
        start = bar + 1;
    }
    return TransfinitePoint(std::move(blocks));
}

Bit TransfinitePoint::bit_at(OrdinalIndex idx) const { return block(idx.q).bit_at(idx.n); }

std::string TransfinitePoint::str() const {
    std::string s;
    for (std::size_t q = 0; q < blocks_.size(); ++q) {
        if (q) s += '|';
        s += blocks_[q].str();
    }
    return s;
}

std::optional<OrdinalIndex> first_disagreement(const TransfinitePoint& x, const TransfinitePoint& y) {
    if (x.block_count() != y.block_count()) {
        fail(ErrorKind::precondition, "transfinite points have different block counts");
    }
    for (std::size_t q = 0; q < x.block_count(); ++q) {
        if (auto n = first_disagreement(x.block(q), y.block(q))) {
            return OrdinalIndex{static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(*n)};
        }
    }
    return std::nullopt;
}

}  // namespace cantor
