#include "pbtd/io.hpp"

namespace pbtd {

namespace {

// The published side-nine instance, row by row. Embedded as program data
// so verifying the golden design cannot be broken by packaging.
constexpr int kTable1[9][17][2] = {
    {{2, 16}, {3, 17}, {4, 6},   {5, 7},   {8, 10},  {9, 11},  {12, 14}, {13, 15}, {0, 1},
     {2, 5},  {3, 4},  {6, 15},  {7, 14},  {8, 11},  {9, 10},  {12, 16}, {13, 17}},
    {{0, 4},  {1, 5},  {7, 9},   {6, 8},   {11, 13}, {10, 12}, {15, 17}, {14, 16}, {2, 3},
     {0, 16}, {1, 17}, {4, 8},   {5, 9},   {6, 13},  {7, 12},  {10, 15}, {11, 14}},
    {{1, 3},  {0, 2},  {10, 13}, {11, 12}, {14, 17}, {15, 16}, {6, 9},   {7, 8},   {4, 5},
     {6, 10}, {7, 11}, {1, 16},  {0, 17},  {9, 12},  {8, 13},  {2, 14},  {3, 15}},
    {{10, 14}, {11, 15}, {0, 8},  {1, 9},  {2, 4},   {3, 5},   {13, 16}, {12, 17}, {6, 7},
     {3, 13},  {2, 12},  {9, 17}, {8, 16}, {4, 14},  {5, 15},  {0, 11},  {1, 10}},
    {{5, 6},  {4, 7},  {2, 17},  {3, 16},  {12, 15}, {13, 14}, {0, 10},  {1, 11},  {8, 9},
     {4, 11}, {5, 10}, {2, 13},  {3, 12},  {0, 15},  {1, 14},  {7, 17},  {6, 16}},
    {{8, 12}, {9, 13}, {1, 15},  {0, 14},  {5, 16},  {4, 17},  {3, 7},   {2, 6},   {10, 11},
     {1, 12}, {0, 13}, {5, 14},  {4, 15},  {7, 16},  {6, 17},  {3, 8},   {2, 9}},
    {{9, 15}, {8, 14}, {11, 16}, {10, 17}, {3, 6},   {2, 7},   {1, 4},   {0, 5},   {12, 13},
     {9, 14}, {8, 15}, {3, 11},  {2, 10},  {5, 17},  {4, 16},  {1, 6},   {0, 7}},
    {{11, 17}, {10, 16}, {5, 12}, {4, 13}, {1, 7},   {0, 6},   {2, 8},   {3, 9},   {14, 15},
     {8, 17},  {9, 16},  {7, 10}, {6, 11}, {1, 2},   {0, 3},   {5, 13},  {4, 12}},
    {{7, 13}, {6, 12}, {3, 14},  {2, 15},  {0, 9},   {1, 8},   {5, 11},  {4, 10},  {16, 17},
     {7, 15}, {6, 14}, {0, 12},  {1, 13},  {3, 10},  {2, 11},  {4, 9},   {5, 8}},
};

DesignArray build_table1() {
    const Side side(9);
    std::vector<UnorderedPair> cells;
    cells.reserve(static_cast<std::size_t>(side.pair_count()));
    for (const auto& row : kTable1)
        for (const auto& cell : row)
            cells.push_back(make_pair(side, cell[0], cell[1]));
    return DesignArray(side, std::move(cells));
}

} // namespace

const DesignArray& table1() {
    static const DesignArray instance = build_table1();
    return instance;
}

} // namespace pbtd
