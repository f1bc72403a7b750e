#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "codonctx/sequence.hpp"

namespace codonctx {

enum class Direction { maximize, minimize };

Direction parse_direction(std::string_view text);
std::string_view to_string(Direction direction);

// True if `candidate` is strictly better than `reference` in the direction.
inline bool improves(Direction d, double candidate, double reference) noexcept {
    return d == Direction::maximize ? candidate > reference : candidate < reference;
}

struct SearchStats {
    std::uint64_t pair_evaluations = 0;  // CPS lookups performed
    std::uint64_t nodes_expanded = 0;    // branch and bound
    std::uint64_t nodes_pruned = 0;      // branch and bound
    std::uint64_t states = 0;            // multiset dynamic program
    std::uint64_t iterations = 0;        // annealing draws
    std::uint64_t accepted_moves = 0;    // annealing swaps performed
};

struct OptimizationResult {
    CodonSeq sequence;
    double total_score = 0.0;  // sum of pair scores, 5' to 3'
    double cpb = 0.0;          // total_score / number of pairs
    std::string method;
    Direction direction = Direction::maximize;
    bool optimal = false;  // proven optimum for the method's search space
    SearchStats stats;
};

}  // namespace codonctx
