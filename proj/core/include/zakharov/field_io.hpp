#pragma once

#include <filesystem>
#include <iosfwd>

#include "zakharov/grid.hpp"

namespace zakharov {

/*
 * ZKRF container, little endian:
 *   char[4] "ZKRF" | u32 version (1) | u32 N | f64 L | u32 side
 *   N^3 x (f64 re, f64 im), row-major.
 * Physical data is in node order; frequency data in centered lattice order
 * (array index a <-> wavenumber a - N/2 on every axis).
 */
inline constexpr std::uint32_t kFieldFormatVersion = 1;

void write_field(std::ostream& os, const SpectralField& f);
SpectralField read_field(std::istream& is);
void save_field(const std::filesystem::path& path, const SpectralField& f);
SpectralField load_field(const std::filesystem::path& path);

}  // namespace zakharov
