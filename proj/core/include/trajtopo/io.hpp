#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "trajtopo/basis.hpp"
#include "trajtopo/classify.hpp"
#include "trajtopo/surface.hpp"

namespace trajtopo::io {

/// Shortest round-trip decimal form of a double (std::to_chars), identical
/// across platforms.
std::string format_double(double x);

/// FNV-1a over the surface combinatorics (V, faces, hole loops); used to
/// pair cochain/basis files with the mesh they were computed on.
std::uint64_t surface_hash(const CombinatorialSurface &s);

/// Plain-text mesh:
///   surf v=<V> f=<F> dim=<0|2|3>
///   n <x> <y> [<z>]        (V lines, only when dim > 0)
///   t <a> <b> <c>          (F lines, CCW)
///   hole <n0> <n1> ...     (optional, one per hole loop)
std::string serialize_surface(const CombinatorialSurface &s);
SurfacePtr parse_surface(const std::string &text);
SurfacePtr load_surface(const std::filesystem::path &p);
void save_surface(const CombinatorialSurface &s,
                  const std::filesystem::path &p);

/// Plain-text 1-cochain:
///   c1 <surface-hash-hex>
///   e <u> <v> <value>      (E lines, canonical u < v order)
std::string serialize_one_form(const Cochain1 &w);
Cochain1 parse_one_form(const std::string &text, const SurfacePtr &s);
Cochain1 load_one_form(const std::filesystem::path &p, const SurfacePtr &s);
void save_one_form(const Cochain1 &w, const std::filesystem::path &p);

/// Basis as JSON: hash, eps, seeds, canonical flag, period matrix, and the
/// per-form edge value arrays (canonical edge order).
std::string serialize_basis(const HarmonicBasis &b);
HarmonicBasis parse_basis(const std::string &text, const SurfacePtr &s);
HarmonicBasis load_basis(const std::filesystem::path &p, const SurfacePtr &s);
void save_basis(const HarmonicBasis &b, const std::filesystem::path &p);

/// Trajectories as JSONL, one {"id": ..., "nodes": [...]} per line.
std::string serialize_trajectories(const std::vector<Trajectory> &ts);
std::vector<Trajectory> parse_trajectories(const std::string &text);
std::vector<Trajectory> load_trajectories(const std::filesystem::path &p);
void save_trajectories(const std::vector<Trajectory> &ts,
                       const std::filesystem::path &p);

/// Writes via a sibling temp file + rename so readers never see a partial
/// file.
void atomic_write(const std::filesystem::path &p, const std::string &content);
std::string read_file(const std::filesystem::path &p);

} // namespace trajtopo::io
