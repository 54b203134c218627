#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "autohd/states.hpp"

namespace autohd {

CubeState cube_solved_state();

// Applies the facelet permutation for the move. Permutations are fixed
// constants derived from a corner-coordinate model of the cube; the group
// invariants (quarter turns have order 4, cw/ccw are inverses, colors are
// conserved) are exercised by the test suite.
CubeState cube_apply(const CubeState& state, const CubeMove& move);

// True iff each of the six face quadruples is monochromatic. Face identity
// does not matter.
bool cube_is_solved(const CubeState& state);

// Throws std::invalid_argument unless every color appears exactly 4 times.
void cube_check(const CubeState& state);

std::vector<CubeMove> cube_moves(CubeMoveSet set);

struct CubeScramble {
  CubeState state;
  std::vector<CubeMove> moves;
};

// Applies `depth` random moves, never following a move with one on the same
// face that composes to the identity (cw then ccw, ccw then cw, half then
// half). Deterministic in (depth, seed, move set).
CubeScramble cube_scramble(int depth, std::uint64_t seed, CubeMoveSet set = CubeMoveSet::full18);

int cube_nonuniform_faces(const CubeState& state);

std::string cube_key(const CubeState& state);

std::string cube_render_move(const CubeMove& move);      // "U", "U'", "U2"
CubeMove cube_parse_move(const std::string& text);

}  // namespace autohd
