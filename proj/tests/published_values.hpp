#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Printed values used as regression targets.

namespace published {

// F_8 = F_2[x]/(x^3+x+1), rows and columns in the order 0, 1, r, ..., r^6.
// Entries in units of 1/6.
inline const std::vector<std::vector<int>> kF8PowerBasisSixths = {
    {3, 1, 1, 1, 0, 0, 0, 0}, {1, 3, 0, 0, 1, 0, 0, 1}, {1, 0, 0, 3, 0, 1, 0, 1}, {0, 0, 1, 1, 0, 3, 1, 0},
    {0, 1, 0, 1, 0, 0, 1, 3}, {1, 0, 3, 0, 1, 1, 0, 0}, {0, 1, 1, 0, 3, 0, 1, 0}, {0, 0, 0, 0, 1, 1, 3, 1},
};

inline const std::vector<std::vector<int>> kF8NormalBasisSixths = {
    {3, 0, 0, 0, 1, 0, 1, 1}, {0, 3, 1, 1, 0, 1, 0, 0}, {0, 1, 0, 3, 1, 0, 1, 0}, {0, 1, 0, 0, 1, 3, 0, 1},
    {1, 0, 1, 0, 0, 1, 0, 3}, {0, 1, 3, 0, 0, 0, 1, 1}, {1, 0, 0, 1, 3, 1, 0, 0}, {1, 0, 1, 1, 0, 0, 3, 0},
};

// Squaring on F_2[x]/(Phi_5) in the basis 1, x, x^2, x^3; row i first.
inline const std::vector<std::string> kPhi5A = {"1010", "0011", "0110", "0010"};
inline const std::vector<std::string> kPhi5A2 = {"1100", "0100", "0101", "0110"};
inline const std::vector<std::string> kPhi5A3 = {"1001", "0011", "0101", "0001"};

inline const std::vector<std::uint64_t> kPi29 = {4, 2, 2, 2, 0, 8, 2, 6, 7, 0, 5, 0, 4, 0, 4,
                                                 0, 0, 0, 0, 3, 0, 5, 0, 2, 8, 0, 8, 2, 2};

inline const std::vector<std::uint64_t> kPi31 = {2, 3, 2, 4, 2, 2, 4, 2, 4, 4, 2, 2, 0, 2, 0, 4,
                                                 0, 4, 2, 4, 2, 2, 0, 0, 2, 0, 2, 2, 0, 2, 1};

inline const std::vector<std::uint64_t> kPi101 = {
    66056, 33028, 33028, 33028, 0,     33028, 0,     0,     48868, 0,     48868, 0,     7376,  48200, 7376,
    62952, 21038, 14752, 21038, 0,     32951, 0,     68115, 0,     85876, 0,     50712, 0,     0,     16514,
    0,     16514, 34236, 0,     34236, 14752, 0,     14752, 0,     0,     0,     0,     3688,  0,     34700,
    0,     32856, 0,     3688,  0,     1844,  34236, 0,     53012, 0,     26152, 0,     7376,  0,     0,
    0,     0,     0,     33028, 0,     33028, 0,     27788, 0,     62164, 51958, 34376, 51958, 0,     0,
    18040, 0,     18040, 0,     68115, 0,     96465, 0,     44864, 0,     16514, 7376,  0,     7376,  0,
    0,     17188, 0,     17188, 3688,  29504, 68396, 29504, 64708, 33028, 33028};

inline const std::vector<std::uint64_t> kPi103 = {
    2, 3, 2, 4, 0, 2, 2, 2, 4, 2, 2, 0, 2, 2, 4, 4, 4, 4, 4, 2, 2, 0, 2, 0, 4, 2, 2, 4, 2, 4, 2, 4, 2, 4, 2,
    4, 0, 4, 0, 2, 2, 0, 2, 0, 0, 2, 0, 2, 2, 2, 2, 4, 0, 2, 2, 2, 2, 4, 2, 4, 4, 2, 4, 2, 2, 4, 0, 4, 0, 2,
    0, 2, 0, 2, 0, 2, 0, 2, 2, 0, 4, 2, 4, 2, 2, 0, 0, 0, 0, 0, 2, 2, 4, 2, 2, 0, 2, 2, 2, 4, 0, 2, 1};

} // namespace published
