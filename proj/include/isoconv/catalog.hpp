#pragma once

#include "isoconv/cayley.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace isoconv {

// A named (group, S) pair, or an explicit digraph for non-abelian fixtures.
struct CatalogEntry {
  std::string name;
  std::string group;           // e.g. "Z4xZ2"; empty for digraph entries
  std::string connection_set;  // e.g. "(1,0),(0,1)" or "basis"
  bool is_digraph = false;
  GenericDigraph digraph;
  int m = 0;  // exponent bound for digraph entries
};

std::vector<CatalogEntry> default_catalog();

// JSON file: {"entries": [{"name", "group", "S"} | {"name", "digraph": {"n", "arcs"}, "m"}]}
// Throws std::runtime_error on I/O or schema errors.
std::vector<CatalogEntry> load_catalog(const std::filesystem::path& path);
std::string catalog_to_json(const std::vector<CatalogEntry>& entries);

}  // namespace isoconv
