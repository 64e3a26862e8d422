#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace rpg {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Hop-count sentinel for unreachable vertices; serialized as the string "inf".
inline constexpr u32 kInfDist = std::numeric_limits<u32>::max();

// A VertexSet is kept sorted and duplicate-free.
using VertexSet = std::vector<u32>;

struct Partition {
    std::vector<VertexSet> blocks;
    bool exact_cover = false;  // set when blocks are known to cover [0, n)
};

struct BadSpec : std::runtime_error {
    explicit BadSpec(const std::string& what) : std::runtime_error(what) {}
};
struct OracleCapExceeded : std::runtime_error {
    explicit OracleCapExceeded(const std::string& what) : std::runtime_error(what) {}
};
struct BlockOverlap : std::runtime_error {
    explicit BlockOverlap(const std::string& what) : std::runtime_error(what) {}
};
struct GammaOutOfRange : std::runtime_error {
    explicit GammaOutOfRange(const std::string& what) : std::runtime_error(what) {}
};
struct InsufficientVertices : std::runtime_error {
    explicit InsufficientVertices(const std::string& what) : std::runtime_error(what) {}
};
struct PathTooShort : std::runtime_error {
    explicit PathTooShort(const std::string& what) : std::runtime_error(what) {}
};
struct DisconnectedBranchSet : std::runtime_error {
    explicit DisconnectedBranchSet(const std::string& what) : std::runtime_error(what) {}
};
struct MinDegreeTooLow : std::runtime_error {
    explicit MinDegreeTooLow(const std::string& what) : std::runtime_error(what) {}
};
struct TrivialPartition : std::runtime_error {
    explicit TrivialPartition(const std::string& what) : std::runtime_error(what) {}
};
struct InsufficientPoints : std::runtime_error {
    explicit InsufficientPoints(const std::string& what) : std::runtime_error(what) {}
};
struct IoFailure : std::runtime_error {
    explicit IoFailure(const std::string& what) : std::runtime_error(what) {}
};

inline void sort_unique(VertexSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

}  // namespace rpg
