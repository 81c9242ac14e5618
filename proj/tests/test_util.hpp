#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "qpa/linalg.hpp"
#include "qpa/scalars.hpp"

namespace qpa::test {

template <class K>
Mat<K> make_mat(const FieldSpec& fs,
                std::initializer_list<std::initializer_list<long long>> rows) {
    Index nr = static_cast<Index>(rows.size());
    Index nc = nr ? static_cast<Index>(rows.begin()->size()) : 0;
    Mat<K> m(nr, nc);
    Index i = 0;
    for (const auto& row : rows) {
        Index j = 0;
        for (long long v : row) m(i, j++) = FieldOps<K>::from_int(fs, v);
        ++i;
    }
    return m;
}

// Deterministic across platforms: raw engine output only.
inline std::int64_t rand_below(std::mt19937_64& rng, std::int64_t n) {
    return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n));
}

template <class K>
Mat<K> random_mat(const FieldSpec& fs, std::mt19937_64& rng, Index r, Index c,
                  long long lo = -3, long long hi = 3) {
    Mat<K> m(r, c);
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j)
            m(i, j) = FieldOps<K>::from_int(fs, lo + rand_below(rng, hi - lo + 1));
    return m;
}

// Independent rank oracle over F_2: size of the row span as a set.
inline int brute_force_rank_f2(const Mat<Fp>& m) {
    std::vector<std::uint64_t> rows;
    for (Index i = 0; i < m.rows(); ++i) {
        std::uint64_t bits = 0;
        for (Index j = 0; j < m.cols(); ++j)
            if (m(i, j).value() % 2 != 0) bits |= (1ull << j);
        rows.push_back(bits);
    }
    std::vector<std::uint64_t> span{0};
    for (std::uint64_t r : rows) {
        std::vector<std::uint64_t> next = span;
        for (std::uint64_t s : span) {
            std::uint64_t t = s ^ r;
            bool seen = false;
            for (std::uint64_t u : next)
                if (u == t) seen = true;
            if (!seen) next.push_back(t);
        }
        span = next;
    }
    int rank = 0;
    std::size_t size = span.size();
    while (size > 1) {
        size /= 2;
        ++rank;
    }
    return rank;
}

}  // namespace qpa::test
