#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <vector>

// Exact jam-state law of the Simple process at tiny N: depth-first traversal
// of the embedded jump chain over kinded partitions, with exact rational
// arithmetic throughout (the gluing probability enters as a rational).

namespace srg::oracle {

using rational = boost::multiprecision::cpp_rational;

struct JamDistribution {
    // sorted multiset of unicycle sizes -> exact probability
    std::map<std::vector<std::uint32_t>, rational> states;

    rational prob_u_jam(std::size_t m) const;  // P[number of unicycles = m]
    rational prob_of(const std::vector<std::uint32_t>& sizes) const;
    rational total() const;  // should be exactly 1
    double expected_u_jam() const;
    double expected_largest() const;
};

// n <= 6 (the kinded-partition state space stays tiny).
JamDistribution enumerate_exact(unsigned n, const rational& gluing_p);

// double p converts exactly (doubles are dyadic rationals).
JamDistribution enumerate_exact(unsigned n, double gluing_p);

}  // namespace srg::oracle
