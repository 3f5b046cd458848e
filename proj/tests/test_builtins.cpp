#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "tessella/lattice.hpp"
#include "tessella/polyform.hpp"
#include "tessella/shape_io.hpp"

using namespace tessella;

namespace {

// sorted squared edge lengths of the single boundary loop, in vertex units
// scaled by 12 so they stay integral
std::vector<long> edge_length_keys(const Polyform& s) {
    auto loop = outline(s.grid, s.cells);
    std::vector<long> keys;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        IVec2 a = loop[i];
        IVec2 b = loop[(i + 1) % loop.size()];
        long ex = b.x - a.x;
        long ey = b.y - a.y;
        keys.push_back(ex * ex + ex * ey + ey * ey);
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

}  // namespace

TEST_CASE("builtin names cover exactly the two fixed shapes") {
    auto names = builtin_names();
    REQUIRE(names.size() == 2);
    CHECK(names[0] == "hat");
    CHECK(names[1] == "turtle");
    CHECK_THROWS_AS((void)builtin_shape("gnomon"), std::invalid_argument);
    CHECK_THROWS_AS((void)builtin_shape(""), std::invalid_argument);
}

TEST_CASE("builtin hat is an eight-kite disk with a thirteen-sided outline") {
    Polyform hat = builtin_shape("hat");
    CHECK(hat.grid == GridKind::Kite);
    REQUIRE(hat.cells.size() == 8);
    CHECK(is_topological_disk(hat.grid, hat.cells));
    CHECK(outline(hat.grid, hat.cells).size() == 13);
    CHECK(canonicalize(hat) == hat);
}

TEST_CASE("builtin turtle is a ten-kite disk with a thirteen-sided outline") {
    Polyform turtle = builtin_shape("turtle");
    CHECK(turtle.grid == GridKind::Kite);
    REQUIRE(turtle.cells.size() == 10);
    CHECK(is_topological_disk(turtle.grid, turtle.cells));
    CHECK(outline(turtle.grid, turtle.cells).size() == 13);
    CHECK(canonicalize(turtle) == turtle);
}

TEST_CASE("hat and turtle outlines carry the paired edge-length pattern") {
    // six short edges, six sqrt(3)-times-longer edges, and one doubled edge;
    // the doubled edge is short-doubled on the hat, long-doubled on the turtle
    std::vector<long> hat_keys = edge_length_keys(builtin_shape("hat"));
    std::vector<long> turtle_keys = edge_length_keys(builtin_shape("turtle"));
    CHECK(hat_keys == std::vector<long>{3, 3, 3, 3, 3, 3, 9, 9, 9, 9, 9, 9, 12});
    CHECK(turtle_keys == std::vector<long>{3, 3, 3, 3, 3, 3, 9, 9, 9, 9, 9, 9, 36});
}

TEST_CASE("committed data files match the builtins byte for byte") {
    // constants live both in code and under data/; the checksum pins the
    // committed bytes and the parse ties them back to the in-code shapes
    struct Entry {
        const char* name;
        const char* path;
        std::uint64_t checksum;
    };
    const Entry entries[] = {
        {"hat", TESSELLA_SOURCE_DIR "/data/hat.json", 0x5377c03a84c84aadull},
        {"turtle", TESSELLA_SOURCE_DIR "/data/turtle.json", 0x4a22ebea02832bf6ull},
    };
    for (const Entry& e : entries) {
        CAPTURE(e.name);
        std::ifstream in(e.path, std::ios::binary);
        REQUIRE_MESSAGE(in.good(), "data file missing");
        std::stringstream buf;
        buf << in.rdbuf();
        const std::string bytes = buf.str();
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char b : bytes) {
            h ^= b;
            h *= 1099511628211ull;
        }
        CHECK(h == e.checksum);
        REQUIRE(!bytes.empty());
        CHECK(bytes.back() == '\n');
        CHECK(read_shape(bytes) == builtin_shape(e.name));
        CHECK(write_shape(builtin_shape(e.name)) + "\n" == bytes);
    }
}

TEST_CASE("builtins sit inside their free enumeration corpus") {
    Polyform hat = builtin_shape("hat");
    auto octakites = enumerate_polyforms(GridKind::Kite, 8, false);
    CHECK(std::find(octakites.begin(), octakites.end(), hat) != octakites.end());
}
