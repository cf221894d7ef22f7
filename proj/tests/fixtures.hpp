#pragma once

#include "scatter/seed.hpp"

namespace fixtures {

using namespace scat;

// Finite-type rank-2 seed: two axis walls plus one outgoing ray.
inline SeedDatum a2() {
    return make_seed(MatQ::from_int({{0, -1}, {1, 0}}), MatQ::identity(2), QVec{Rat(1), Rat(1)});
}

// Affine Kronecker seed (B, Id) with B the 2-arrow exchange matrix.
inline SeedDatum kronecker() {
    return make_seed(MatQ::from_int({{0, -2}, {2, 0}}), MatQ::identity(2), QVec{Rat(1), Rat(1)});
}

// Torus: no coefficient directions, no walls.
inline SeedDatum torus() {
    return make_seed(MatQ(2, 0), MatQ(2, 0), QVec{});
}

// Three-line seed with no conical positive chamber; exercises the
// translated-wall workaround.
inline SeedDatum threewall() {
    return make_seed(MatQ::from_int({{0, -1, 1}, {1, 0, -1}}),
                     MatQ::from_int({{1, 0, -1}, {0, 1, -1}}), QVec{Rat(1), Rat(1), Rat(1)});
}

// X-type presentation of the A2 seed: (Id, B^T) with B = P_{a2}.
inline SeedDatum a2_xtype() {
    return make_seed(MatQ::identity(2), MatQ::from_int({{0, 1}, {-1, 0}}), QVec{Rat(1), Rat(1)});
}

} // namespace fixtures
