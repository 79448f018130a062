#pragma once

#include <cantor/cantortrie.hpp>
#include <cantor/construction.hpp>

#include <cstdint>
#include <random>
#include <string_view>

namespace cantor {

/// Seeded 64-bit generator. Draws are reduced by rejection sampling rather
/// than std distributions so streams match across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }
    /// Uniform in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n);
    bool coin() { return (gen_() >> 63) != 0; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 gen_;
};

BitWord random_word(Rng& rng, std::size_t length);

/// A point with resolution (canonical preperiod + period length) <= max_resolution.
Point random_point(Rng& rng, std::size_t max_resolution);
Point random_point_extending(Rng& rng, const BitWord& stem, std::size_t max_tail_resolution);

TransfinitePoint random_transfinite(Rng& rng, std::size_t blocks, std::size_t max_resolution);

/// Union of a random subset of the depth-`depth` cylinders.
CylinderComplex random_complex(Rng& rng, std::size_t depth);

/// Union of up to `max_cells` random cylinders of length depth+3, redrawn
/// until it is nowhere dense at `depth`. Measure at most max_cells/2^(depth+3).
CylinderComplex random_thin_complex(Rng& rng, std::size_t depth, std::size_t max_cells);

/// One target in every depth-`depth` cylinder meeting `initial`, each inside
/// `initial`, in random order with offsets in 1..max_offset.
DeletionSchedule random_dense_schedule(Rng& rng, const CylinderComplex& initial, std::size_t depth,
                                       std::size_t max_offset);

/// Body from random_complex at `depth`, up to `max_extras` points outside it.
PointedSet random_pointed_set(Rng& rng, std::size_t depth, std::size_t max_extras);

std::uint64_t fnv1a(std::string_view bytes);

}  // namespace cantor
