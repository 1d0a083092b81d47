#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "confring/ring.hpp"

// Cup-length and zero-divisor cup-length over the implemented rings.
// Both are longest-nonzero-product questions: cup_length works in the
// ring itself, zcl in its s-fold graded tensor power, where the
// zero-divisors are the kernel of the s-fold multiplication map back to
// the ring.  The products bound cat and TC_s from below; dimension
// caps bound them from above.

namespace confring {

struct CupLengthReport {
    int length = 0;                    // largest L with (H^+)^L != 0
    std::vector<std::string> witness;  // generator factors, product nonzero
    std::string product;               // normal form of the witness product
};

// Nilpotency degree of the positive-degree ideal: iterate degreewise
// span products ideal^(L+1) = generators * ideal^L until everything
// vanishes.  The witness is a product of column generators (one per
// level) whose normal form survives to the top.
CupLengthReport cup_length(const Presentation& p);

// How zcl certifies its answer: witness_search explores products of
// the basic slot-difference zero-divisors g(t) - g(t+1) depth-first
// with degree pruning; exact_small additionally exhausts products of a
// degreewise spanning set of the whole zero-divisor ideal, making the
// reported value exact rather than a lower bound.
enum class ZclMode { witness_search, exact_small };

// Desk-scale caps.  The structural ones (s, points, tensor dimension)
// guard construction and violating them is a budget error; max_products
// caps the number of sparse multiplications a search may spend, and
// running out mid-search yields a partial report instead.
struct SearchBudget {
    int max_s = 3;
    int max_points = 3;
    std::size_t max_tensor_dim = 20000;
    unsigned long long max_products = 4000000;
};

struct TcReport {
    std::string space;
    int s = 1;
    int lower = 0;
    int upper = 0;
    std::optional<int> exact;          // set whenever lower == upper or certified
    std::vector<std::string> witness;  // zero-divisor factors, product nonzero
    bool partial = false;              // a search budget ran out mid-way

    std::string str() const;
    std::string json_str() const;
};

// s-th zero-divisor cup-length of the ring: the longest nonzero product
// of elements of ker(H^(tensor s) -> H).  Lower bound from the witness
// search; upper bound s * top_factor_count from the degree cap; exact
// when the two meet or when exact_small exhaustion certifies the value.
TcReport zcl(const Presentation& p, int s,
             ZclMode mode = ZclMode::witness_search,
             const SearchBudget& budget = {});

// Closed-form cat (s=1) / TC_s bounds for the k-point orbit
// configuration space: upper bound sk from dimension over connectivity,
// lower bound sk-1, raised to sk for odd n where the two towers of
// witnesses exist; exact exactly when n is odd.  n=2 is reported with
// the same bounds but nothing is exact there.
TcReport cat_tc_bounds(int n, int k, int s);

}  // namespace confring
