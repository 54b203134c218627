#include "autohd/cube.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace autohd {

namespace {

struct Vec3 {
  int x, y, z;
  bool operator==(const Vec3&) const = default;
};

struct Facelet {
  Vec3 corner;  // coordinates in {0,1}^3: x right, y up, z toward viewer
  Vec3 normal;  // outward sticker direction
};

// Face order U,R,F,D,L,B; within a face, row-major as seen from outside the
// face (U viewed with the back edge up, D with the front edge up).
constexpr Facelet kFacelets[24] = {
    {{0, 1, 0}, {0, 1, 0}},  {{1, 1, 0}, {0, 1, 0}},   {{0, 1, 1}, {0, 1, 0}},
    {{1, 1, 1}, {0, 1, 0}},                                                     // U
    {{1, 1, 1}, {1, 0, 0}},  {{1, 1, 0}, {1, 0, 0}},   {{1, 0, 1}, {1, 0, 0}},
    {{1, 0, 0}, {1, 0, 0}},                                                     // R
    {{0, 1, 1}, {0, 0, 1}},  {{1, 1, 1}, {0, 0, 1}},   {{0, 0, 1}, {0, 0, 1}},
    {{1, 0, 1}, {0, 0, 1}},                                                     // F
    {{0, 0, 1}, {0, -1, 0}}, {{1, 0, 1}, {0, -1, 0}},  {{0, 0, 0}, {0, -1, 0}},
    {{1, 0, 0}, {0, -1, 0}},                                                    // D
    {{0, 1, 0}, {-1, 0, 0}}, {{0, 1, 1}, {-1, 0, 0}},  {{0, 0, 0}, {-1, 0, 0}},
    {{0, 0, 1}, {-1, 0, 0}},                                                    // L
    {{1, 1, 0}, {0, 0, -1}}, {{0, 1, 0}, {0, 0, -1}},  {{1, 0, 0}, {0, 0, -1}},
    {{0, 0, 0}, {0, 0, -1}},                                                    // B
};

constexpr Vec3 kFaceNormal[6] = {
    {0, 1, 0}, {1, 0, 0}, {0, 0, 1}, {0, -1, 0}, {-1, 0, 0}, {0, 0, -1},
};

// Rotation by -90 degrees about unit axis n (clockwise seen from outside the
// face): v' = n (n.v) - (n x v).
Vec3 rotate_cw(const Vec3& n, const Vec3& v) {
  const int dot = n.x * v.x + n.y * v.y + n.z * v.z;
  const Vec3 cross{n.y * v.z - n.z * v.y, n.z * v.x - n.x * v.z, n.x * v.y - n.y * v.x};
  return {n.x * dot - cross.x, n.y * dot - cross.y, n.z * dot - cross.z};
}

// Rotates a corner coordinate about the cube center (doubled coordinates
// keep the arithmetic integral).
Vec3 rotate_corner_cw(const Vec3& n, const Vec3& c) {
  const Vec3 centered{2 * c.x - 1, 2 * c.y - 1, 2 * c.z - 1};
  const Vec3 r = rotate_cw(n, centered);
  return {(r.x + 1) / 2, (r.y + 1) / 2, (r.z + 1) / 2};
}

int facelet_index(const Vec3& corner, const Vec3& normal) {
  for (int i = 0; i < 24; ++i)
    if (kFacelets[i].corner == corner && kFacelets[i].normal == normal) return i;
  throw std::logic_error("facelet lookup failed");
}

bool in_layer(const Vec3& corner, const Vec3& face_normal) {
  if (face_normal.x != 0) return corner.x == (face_normal.x > 0 ? 1 : 0);
  if (face_normal.y != 0) return corner.y == (face_normal.y > 0 ? 1 : 0);
  return corner.z == (face_normal.z > 0 ? 1 : 0);
}

using Perm = std::array<int, 24>;

// from-form: new[i] = old[perm[i]].
Perm quarter_turn_perm(int face) {
  const Vec3 n = kFaceNormal[face];
  Perm dst{};
  for (int i = 0; i < 24; ++i) dst[i] = i;
  for (int i = 0; i < 24; ++i) {
    if (!in_layer(kFacelets[i].corner, n)) continue;
    const Vec3 c = rotate_corner_cw(n, kFacelets[i].corner);
    const Vec3 d = rotate_cw(n, kFacelets[i].normal);
    dst[i] = facelet_index(c, d);
  }
  Perm from{};
  for (int i = 0; i < 24; ++i) from[dst[i]] = i;
  return from;
}

Perm compose(const Perm& a, const Perm& b) {
  // Applying a then b.
  Perm out{};
  for (int i = 0; i < 24; ++i) out[i] = a[b[i]];
  return out;
}

struct MoveTables {
  Perm perms[6][3];  // [face][turn], turn order cw90, ccw90, half

  MoveTables() {
    for (int f = 0; f < 6; ++f) {
      const Perm cw = quarter_turn_perm(f);
      perms[f][0] = cw;
      perms[f][2] = compose(cw, cw);
      perms[f][1] = compose(perms[f][2], cw);
    }
  }
};

const MoveTables& tables() {
  static const MoveTables t;
  return t;
}

}  // namespace

CubeState cube_solved_state() {
  CubeState s;
  for (int i = 0; i < 24; ++i) s.facelets[i] = static_cast<std::uint8_t>(i / 4);
  return s;
}

CubeState cube_apply(const CubeState& state, const CubeMove& move) {
  const Perm& p =
      tables().perms[static_cast<int>(move.face)][static_cast<int>(move.turns)];
  CubeState next;
  for (int i = 0; i < 24; ++i) next.facelets[i] = state.facelets[p[i]];
  return next;
}

bool cube_is_solved(const CubeState& state) { return cube_nonuniform_faces(state) == 0; }

int cube_nonuniform_faces(const CubeState& state) {
  int nonuniform = 0;
  for (int f = 0; f < 6; ++f) {
    const std::uint8_t c = state.facelets[4 * f];
    for (int i = 1; i < 4; ++i) {
      if (state.facelets[4 * f + i] != c) {
        ++nonuniform;
        break;
      }
    }
  }
  return nonuniform;
}

void cube_check(const CubeState& state) {
  int counts[6] = {0, 0, 0, 0, 0, 0};
  for (std::uint8_t c : state.facelets) {
    if (c > 5) throw std::invalid_argument("facelet color out of range");
    ++counts[c];
  }
  for (int c = 0; c < 6; ++c)
    if (counts[c] != 4)
      throw std::invalid_argument("color " + std::to_string(c) +
                                  " appears " + std::to_string(counts[c]) + " times, expected 4");
}

std::vector<CubeMove> cube_moves(CubeMoveSet set) {
  std::vector<CubeMove> moves;
  const int faces = set == CubeMoveSet::full18 ? 6 : 3;
  static constexpr CubeFace kOrder[6] = {CubeFace::U, CubeFace::R, CubeFace::F,
                                         CubeFace::D, CubeFace::L, CubeFace::B};
  for (int f = 0; f < faces; ++f)
    for (CubeTurn t : {CubeTurn::cw90, CubeTurn::ccw90, CubeTurn::half})
      moves.push_back({kOrder[f], t});
  return moves;
}

CubeScramble cube_scramble(int depth, std::uint64_t seed, CubeMoveSet set) {
  if (depth < 1) throw std::invalid_argument("scramble depth must be >= 1");
  const std::vector<CubeMove> moves = cube_moves(set);
  std::mt19937_64 rng(seed);
  CubeScramble out;
  out.state = cube_solved_state();
  for (int i = 0; i < depth; ++i) {
    while (true) {
      const CubeMove m = moves[rng() % moves.size()];
      if (!out.moves.empty()) {
        const CubeMove& prev = out.moves.back();
        if (prev.face == m.face) {
          const bool cancels =
              (prev.turns == CubeTurn::cw90 && m.turns == CubeTurn::ccw90) ||
              (prev.turns == CubeTurn::ccw90 && m.turns == CubeTurn::cw90) ||
              (prev.turns == CubeTurn::half && m.turns == CubeTurn::half);
          if (cancels) continue;
        }
      }
      out.state = cube_apply(out.state, m);
      out.moves.push_back(m);
      break;
    }
  }
  return out;
}

std::string cube_key(const CubeState& state) {
  std::string key(24, '0');
  for (int i = 0; i < 24; ++i) key[i] = static_cast<char>('0' + state.facelets[i]);
  return key;
}

std::string cube_render_move(const CubeMove& move) {
  static constexpr const char* kFaces = "URFDLB";
  std::string out(1, kFaces[static_cast<int>(move.face)]);
  if (move.turns == CubeTurn::ccw90) out += '\'';
  if (move.turns == CubeTurn::half) out += '2';
  return out;
}

CubeMove cube_parse_move(const std::string& text) {
  std::string t = text;
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }),
          t.end());
  if (t.empty() || t.size() > 2) throw std::invalid_argument("bad cube move '" + text + "'");
  CubeMove m;
  switch (t[0]) {
    case 'U': m.face = CubeFace::U; break;
    case 'R': m.face = CubeFace::R; break;
    case 'F': m.face = CubeFace::F; break;
    case 'D': m.face = CubeFace::D; break;
    case 'L': m.face = CubeFace::L; break;
    case 'B': m.face = CubeFace::B; break;
    default: throw std::invalid_argument("bad cube face in '" + text + "'");
  }
  m.turns = CubeTurn::cw90;
  if (t.size() == 2) {
    if (t[1] == '\'')
      m.turns = CubeTurn::ccw90;
    else if (t[1] == '2')
      m.turns = CubeTurn::half;
    else
      throw std::invalid_argument("bad cube turn in '" + text + "'");
  }
  return m;
}

}  // namespace autohd
