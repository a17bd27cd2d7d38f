#pragma once

// Field file format: one JSON header line terminated by '\n', then the raw
// payload of little-endian 64-bit floats, interleaved (re, im), row-major.

#include <string>

#include "dbar/types.hpp"

namespace dbar {

void write_field(const SpatialField& f, const std::string& path,
                 const std::string& kind = "SpatialField");
SpatialField read_field(const std::string& path);

void write_potential(const Potential& v, const std::string& path);
Potential read_potential(const std::string& path);

// generic complex block with a caller-supplied JSON header (one line)
void write_complex_block(const std::string& header_json, const std::vector<cplx>& values,
                         const std::string& path);
std::pair<std::string, std::vector<cplx>> read_complex_block(const std::string& path);

}  // namespace dbar
