#include "zakharov/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "zakharov/error.hpp"

namespace zakharov {

static_assert(std::endian::native == std::endian::little, "ZKRF I/O assumes a little-endian host");

namespace {

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw PreconditionError("field file truncated");
  return v;
}

// Position in centered order of the FFT-order index.
std::size_t centered_index(const GridSpec& g, std::size_t idx) {
  auto t = g.triple(idx);
  const int h = g.points() / 2;
  auto c = [&](int i) { return g.wavenumber(i) + h; };
  return g.index(c(t[0]), c(t[1]), c(t[2]));
}

}  // namespace

void write_field(std::ostream& os, const SpectralField& f) {
  const GridSpec& g = f.grid();
  os.write("ZKRF", 4);
  put<std::uint32_t>(os, kFieldFormatVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.points()));
  put<double>(os, g.box_length());
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.side()));
  std::vector<cplx> buf(g.size());
  if (f.side() == Side::frequency) {
    for (std::size_t i = 0; i < g.size(); ++i) buf[centered_index(g, i)] = f[i];
  } else {
    buf = f.values();
  }
  os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(cplx)));
}

SpectralField read_field(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "ZKRF", 4) != 0) throw PreconditionError("not a ZKRF field file");
  const auto version = get<std::uint32_t>(is);
  if (version != kFieldFormatVersion) throw PreconditionError("unsupported ZKRF version");
  const auto n = get<std::uint32_t>(is);
  const auto L = get<double>(is);
  const auto side = get<std::uint32_t>(is);
  if (side > 1) throw PreconditionError("invalid side tag in field file");
  GridSpec g(L, static_cast<int>(n));
  std::vector<cplx> buf(g.size());
  is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(cplx)));
  if (!is) throw PreconditionError("field file truncated");
  if (static_cast<Side>(side) == Side::physical) return SpectralField(g, Side::physical, std::move(buf));
  SpectralField f(g, Side::frequency);
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = buf[centered_index(g, i)];
  return f;
}

void save_field(const std::filesystem::path& path, const SpectralField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw PreconditionError("cannot open " + path.string() + " for writing");
  write_field(os, f);
}

SpectralField load_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw PreconditionError("cannot open field file " + path.string());
  return read_field(is);
}

}  // namespace zakharov
