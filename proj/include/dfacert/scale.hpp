#pragma once

#include <stdexcept>
#include <string>

namespace dfacert {

// Raised for malformed inputs (files, words over the wrong alphabet, bad ids).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an exhaustive procedure would exceed its configured budget.
// Exceeding a guard is an error, never a silent best-effort result.
struct ScaleError : std::runtime_error {
    explicit ScaleError(const std::string& what) : std::runtime_error(what) {}
};

// Budgets for the exhaustive procedures. All limits are configurable by the
// caller; the defaults keep every operation at desk scale.
struct ScaleLimits {
    long long solver_node_cap = 4'000'000;   // knowledge states explored by solve_game
    long long search_node_cap = 2'000'000;   // nodes explored by min_rounds_to_refute
    long long verify_memo_cap = 4'000'000;   // memo entries in verify_universal
    int verify_k_max = 3;                    // verify_universal guard: k <= this ...
    int verify_len_max = 60;                 // ... or |x| <= this
    double separator_enum_cap = 5e7;         // k^(k*|Sigma|)*k bound for find_separator
};

inline const ScaleLimits& default_limits() {
    static const ScaleLimits limits{};
    return limits;
}

}  // namespace dfacert
