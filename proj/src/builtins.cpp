#include <array>
#include <stdexcept>
#include <string>

#include "tessella/polyform.hpp"

namespace tessella {

namespace {

// Frozen kite-grid transcriptions, written as (hexagon x, hexagon y, kite k)
// in canonical order.  Each was isolated twice over the full free-polykite
// corpus of its size: it is the unique shape whose outline matches the
// known thirteen-sided edge pattern (six short edges, six long edges, one
// doubled edge, identical turn cycle with the two lengths exchanged between
// the pair), and the unique shape that stays surroundable through four
// coronas while every periodic-certificate round fails exhaustively.
constexpr std::array<std::array<int, 3>, 8> kHatCells = {{
    {0, 0, 0},
    {0, 0, 5},
    {1, -1, 2},
    {1, 0, 2},
    {1, -1, 1},
    {1, 0, 3},
    {1, 0, 4},
    {1, 0, 5},
}};

constexpr std::array<std::array<int, 3>, 10> kTurtleCells = {{
    {0, 0, 0},
    {0, 1, 4},
    {0, 0, 5},
    {0, 1, 5},
    {1, -1, 2},
    {1, 0, 2},
    {1, -1, 1},
    {1, 0, 3},
    {1, 0, 1},
    {1, 0, 4},
}};

template <std::size_t N>
Polyform from_triples(const std::array<std::array<int, 3>, N>& triples) {
    std::vector<Cell> cells;
    cells.reserve(N);
    for (const auto& t : triples) cells.push_back(cell_pack(GridKind::Kite, t));
    return make_polyform(GridKind::Kite, std::move(cells));
}

}  // namespace

Polyform builtin_shape(std::string_view name) {
    if (name == "hat") {
        static const Polyform hat = from_triples(kHatCells);
        return hat;
    }
    if (name == "turtle") {
        static const Polyform turtle = from_triples(kTurtleCells);
        return turtle;
    }
    throw std::invalid_argument("unknown builtin shape '" + std::string(name) + "'");
}

std::vector<std::string_view> builtin_names() { return {"hat", "turtle"}; }

}  // namespace tessella
