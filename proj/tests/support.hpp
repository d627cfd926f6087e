#pragma once

#include "grasslab/error.hpp"

#include <gtest/gtest.h>

#include <random>

// Asserts that stmt throws grasslab::Error of the given kind.
#define EXPECT_ERROR(stmt, error_kind)                                                                     \
    do {                                                                                                   \
        try {                                                                                              \
            (void)(stmt);                                                                                  \
            ADD_FAILURE() << #stmt " did not throw";                                                       \
        } catch (const grasslab::Error& e) {                                                               \
            EXPECT_EQ(e.kind(), grasslab::ErrorKind::error_kind) << e.what();                              \
        }                                                                                                  \
    } while (0)

namespace grasslab::test_support {

inline std::mt19937_64 seeded(std::uint64_t seed = 20240611) { return std::mt19937_64(seed); }

inline constexpr int kPrimes[] = {2, 3, 5, 7};

} // namespace grasslab::test_support
