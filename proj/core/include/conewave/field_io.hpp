#pragma once

#include <cstdint>
#include <string>

#include "conewave/boundary.hpp"
#include "conewave/grid.hpp"

namespace conewave {

/// Field CSV: header `m,n,x0,...,xd`, rows in row-major order, full
/// round-trip precision. Binary: magic "CWAV1", little-endian u32 d, M, N,
/// then (M+1)(N+1)(d+1) float64 row-major.
void write_field_csv(const DiscreteField& field, const std::string& path);
void write_field_binary(const DiscreteField& field, const std::string& path);

/// Reads either format (sniffs the magic). Import validates that every entry
/// has unit norm within 1e-6; ValidationError otherwise, IoError on missing
/// or malformed files.
DiscreteField read_field(const std::string& path);

/// Forcing grids use the field CSV layout without the unit-norm requirement.
ForcingGrid read_forcing_csv(const std::string& path);

/// Boundary CSV: header `side,index,x0,...,xd`, side in {minus, plus}; rows
/// minus-descending then plus-ascending. The junction appears once per side
/// at index 0 and must match bitwise on read.
void write_boundary_csv(const BoundaryPair& boundary, const std::string& path);
BoundaryPair read_boundary_csv(const std::string& path);

/// FNV-1a 64-bit digest of a file's bytes, lowercase hex. IoError if unreadable.
std::string file_digest_hex(const std::string& path);

}  // namespace conewave
