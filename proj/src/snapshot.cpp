#include "pksns/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

namespace pksns {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'P', 'K', 'S', 'N', 'S', 'S', 'N', 'P'};

template <class T>
void put(std::vector<char>& buf, T v) {
  const char* p = reinterpret_cast<const char*>(&v);
  buf.insert(buf.end(), p, p + sizeof(T));
}

template <class T>
T get(const char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const Snapshot& s) {
  const std::size_t np = static_cast<std::size_t>(s.nx) * s.ny;
  if (s.n.size() != np || s.omega.size() != np) throw SnapshotError("write_snapshot: payload size does not match nx*ny");
  std::vector<char> head;
  head.insert(head.end(), kMagic, kMagic + 8);
  put<std::uint32_t>(head, kSnapshotVersion);
  put<std::uint32_t>(head, static_cast<std::uint32_t>(s.nx));
  put<std::uint32_t>(head, static_cast<std::uint32_t>(s.ny));
  put<std::uint32_t>(head, 0u);
  put<double>(head, s.ly);
  put<double>(head, s.t);
  put<double>(head, s.a);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw SnapshotError("write_snapshot: cannot open " + path);
  os.write(head.data(), static_cast<std::streamsize>(head.size()));
  os.write(reinterpret_cast<const char*>(s.n.data()), static_cast<std::streamsize>(np * 8));
  os.write(reinterpret_cast<const char*>(s.omega.data()), static_cast<std::streamsize>(np * 8));
  if (!os) throw SnapshotError("write_snapshot: write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SnapshotError("read_snapshot: cannot open " + path);
  std::vector<char> buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  if (buf.size() < kSnapshotHeaderBytes) {
    throw SnapshotError("read_snapshot: truncated header in " + path + ": expected at least " +
                        std::to_string(kSnapshotHeaderBytes) + " bytes, got " + std::to_string(buf.size()));
  }
  if (std::memcmp(buf.data(), kMagic, 8) != 0) throw SnapshotError("read_snapshot: bad magic in " + path);
  const char* p = buf.data() + 8;
  const auto version = get<std::uint32_t>(p);
  if (version != kSnapshotVersion) {
    throw SnapshotError("read_snapshot: version mismatch in " + path + ": file has " + std::to_string(version) +
                        ", reader supports " + std::to_string(kSnapshotVersion));
  }
  Snapshot s;
  s.nx = static_cast<int>(get<std::uint32_t>(p + 4));
  s.ny = static_cast<int>(get<std::uint32_t>(p + 8));
  s.ly = get<double>(p + 16);
  s.t = get<double>(p + 24);
  s.a = get<double>(p + 32);
  const std::size_t np = static_cast<std::size_t>(s.nx) * s.ny;
  const std::size_t expected = kSnapshotHeaderBytes + 2 * np * 8;
  if (buf.size() != expected) {
    throw SnapshotError("read_snapshot: " + std::string(buf.size() < expected ? "truncated" : "oversized") +
                        " file " + path + ": expected " + std::to_string(expected) + " bytes, got " +
                        std::to_string(buf.size()));
  }
  s.n.resize(np);
  s.omega.resize(np);
  std::memcpy(s.n.data(), buf.data() + kSnapshotHeaderBytes, np * 8);
  std::memcpy(s.omega.data(), buf.data() + kSnapshotHeaderBytes + np * 8, np * 8);
  return s;
}

Snapshot snapshot_from_state(const State& st, double a) {
  const Grid& g = st.n.g();
  Snapshot s;
  s.nx = g.nx();
  s.ny = g.ny();
  s.ly = g.ly();
  s.t = st.t;
  s.a = a;
  s.n = to_physical(st.n).values();
  s.omega = to_physical(st.omega).values();
  return s;
}

State state_from_snapshot(const Snapshot& snap, const GridPtr& grid) {
  if (snap.nx != grid->nx() || snap.ny != grid->ny() || snap.ly != grid->ly()) {
    throw SnapshotError("snapshot grid " + std::to_string(snap.nx) + "x" + std::to_string(snap.ny) +
                        " ly=" + std::to_string(snap.ly) + " does not match the configured grid " +
                        std::to_string(grid->nx()) + "x" + std::to_string(grid->ny()) +
                        " ly=" + std::to_string(grid->ly()));
  }
  return make_state(snap.t, ScalarField(grid, snap.n), ScalarField(grid, snap.omega));
}

}  // namespace pksns
