// Binary state snapshots.
//
// Layout (little-endian):
//   char[8]  magic "PKSNSSNP"
//   uint32   version (1)
//   uint32   nx, ny
//   uint32   reserved (0)
//   float64  ly, t, A
//   float64  n[ny][nx], then omega[ny][nx]   (row-major, y slow)
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "pksns/dynamics.hpp"

namespace pksns {

constexpr std::uint32_t kSnapshotVersion = 1;
constexpr std::size_t kSnapshotHeaderBytes = 8 + 4 * 4 + 3 * 8;

struct Snapshot {
  int nx = 0, ny = 0;
  double ly = 0.0, t = 0.0, a = 0.0;
  RealVec n, omega;  // physical values, iy * nx + ix
};

struct SnapshotError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_snapshot(const std::string& path, const Snapshot& s);
Snapshot read_snapshot(const std::string& path);

Snapshot snapshot_from_state(const State& s, double a);
/// Rebuilds a State on `grid`; throws SnapshotError on a resolution/ly mismatch.
State state_from_snapshot(const Snapshot& snap, const GridPtr& grid);

}  // namespace pksns
