#include <cantor/random.hpp>

namespace cantor {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) fail(ErrorKind::precondition, "Rng::below needs a positive bound");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = gen_();
    while (x >= limit) x = gen_();
    return x % n;
}

BitWord random_word(Rng& rng, std::size_t length) {
    std::vector<Bit> bits(length);
    for (auto& b : bits) b = rng.coin() ? 1 : 0;
    return BitWord(std::move(bits));
}

Point random_point_extending(Rng& rng, const BitWord& stem, std::size_t max_tail_resolution) {
    const std::size_t budget = std::max<std::size_t>(max_tail_resolution, 1);
    const std::size_t period_len = 1 + rng.below(budget);
    const std::size_t pre_len = rng.below(budget - period_len + 1);
    BitWord pre = stem;
    const BitWord tail = random_word(rng, pre_len);
    for (Bit b : tail.bits()) pre.push_back(b);
    return Point(pre, random_word(rng, period_len));
}

Point random_point(Rng& rng, std::size_t max_resolution) { return random_point_extending(rng, {}, max_resolution); }

TransfinitePoint random_transfinite(Rng& rng, std::size_t blocks, std::size_t max_resolution) {
    std::vector<Point> out;
    for (std::size_t q = 0; q < blocks; ++q) out.push_back(random_point(rng, max_resolution));
    return TransfinitePoint(std::move(out));
}

CylinderComplex random_complex(Rng& rng, std::size_t depth) {
    std::vector<CylinderWord> words;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << depth); ++w) {
        if (!rng.coin()) continue;
        std::vector<Bit> bits(depth);
        for (std::size_t i = 0; i < depth; ++i) bits[i] = static_cast<Bit>((w >> (depth - 1 - i)) & 1);
        words.emplace_back(std::move(bits));
    }
    return CylinderComplex::from_cylinders(words);
}

CylinderComplex random_thin_complex(Rng& rng, std::size_t depth, std::size_t max_cells) {
    while (true) {
        std::vector<CylinderWord> words;
        const std::size_t n = 1 + rng.below(std::max<std::size_t>(max_cells, 1));
        for (std::size_t i = 0; i < n; ++i) words.push_back(random_word(rng, depth + 3));
        CylinderComplex c = CylinderComplex::from_cylinders(words);
        if (nowhere_dense_at_depth(c, depth)) return c;
    }
}

DeletionSchedule random_dense_schedule(Rng& rng, const CylinderComplex& initial, std::size_t depth,
                                       std::size_t max_offset) {
    std::vector<DeletionEntry> entries;
    for (const auto& w : cylinders_meeting(initial, depth)) {
        BitWord stem = w;
        CylinderComplex c = initial.subtree(w);
        while (!c.is_full()) {
            Bit b = rng.coin() ? 1 : 0;
            if (c.child(b).is_empty()) b = static_cast<Bit>(1 - b);
            stem.push_back(b);
            c = c.child(b);
        }
        entries.push_back({random_point_extending(rng, stem, 4), 1 + rng.below(std::max<std::size_t>(max_offset, 1)),
                           std::nullopt});
    }
    rng.shuffle(entries);
    return DeletionSchedule(std::move(entries));
}

PointedSet random_pointed_set(Rng& rng, std::size_t depth, std::size_t max_extras) {
    CylinderComplex body = rng.below(3) == 0 ? CylinderComplex::empty() : random_complex(rng, depth);
    std::set<Point> extras;
    const std::size_t want = rng.below(max_extras + 1);
    for (std::size_t tries = 0; extras.size() < want && tries < 64; ++tries) {
        Point p = random_point(rng, depth + 2);
        if (!body.contains(p)) extras.insert(p);
    }
    return PointedSet(std::move(body), std::move(extras));
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace cantor
