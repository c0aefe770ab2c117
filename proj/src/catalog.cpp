#include "isoconv/catalog.hpp"

#include "isoconv/isoperimetry.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace isoconv {

namespace {

CatalogEntry group_entry(std::string group, std::string s) {
  CatalogEntry e;
  e.name = group + " S={" + s + "}";
  e.group = std::move(group);
  e.connection_set = std::move(s);
  return e;
}

}  // namespace

std::vector<CatalogEntry> default_catalog() {
  std::vector<CatalogEntry> out;
  for (int n = 4; n <= 16; ++n) {
    const std::string g = "Z" + std::to_string(n);
    out.push_back(group_entry(g, "1"));
    out.push_back(group_entry(g, "1," + std::to_string(n - 1)));
  }
  for (const char* g : {"Z2xZ2", "Z2xZ2xZ2", "Z2xZ2xZ2xZ2"}) out.push_back(group_entry(g, "basis"));

  out.push_back(group_entry("Z3xZ3", "(1,0),(0,1)"));
  out.push_back(group_entry("Z3xZ3", "(1,0),(0,1),(1,1)"));
  out.push_back(group_entry("Z3xZ3", "(1,1),(1,2)"));

  out.push_back(group_entry("Z4xZ4", "(1,0),(0,1)"));
  out.push_back(group_entry("Z4xZ4", "(1,0),(0,1),(1,1)"));
  out.push_back(group_entry("Z4xZ4", "(1,0),(0,1),(3,0),(0,3)"));

  out.push_back(group_entry("Z2xZ4", "(1,0),(0,1)"));
  out.push_back(group_entry("Z2xZ4", "(1,1),(0,1)"));
  out.push_back(group_entry("Z2xZ4", "(1,0),(0,1),(1,1)"));

  out.push_back(group_entry("Z2xZ6", "(1,0),(0,1)"));
  out.push_back(group_entry("Z2xZ6", "(1,1),(0,1)"));
  out.push_back(group_entry("Z2xZ6", "(1,0),(0,2),(0,3)"));

  out.push_back(group_entry("Z2xZ2xZ3", "(1,0,0),(0,1,0),(0,0,1)"));
  out.push_back(group_entry("Z2xZ2xZ3", "(1,0,1),(0,1,1)"));

  out.push_back(group_entry("Z12", "3,4"));
  out.push_back(group_entry("Z12", "2,3"));
  out.push_back(group_entry("Z12", "1,4"));

  CatalogEntry s3;
  s3.name = "S3 two involutions (bidirectional 6-cycle)";
  s3.is_digraph = true;
  s3.digraph = s3_cayley_digraph();
  s3.m = 2;
  out.push_back(std::move(s3));
  return out;
}

std::vector<CatalogEntry> load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("catalog " + path.string() + ": " + e.what());
  }
  if (!doc.contains("entries") || !doc["entries"].is_array())
    throw std::runtime_error("catalog " + path.string() + " needs an \"entries\" array");

  std::vector<CatalogEntry> out;
  for (const auto& j : doc["entries"]) {
    try {
      CatalogEntry e;
      e.name = j.value("name", "");
      if (j.contains("digraph")) {
        e.is_digraph = true;
        e.digraph.n = j["digraph"].at("n").get<int>();
        for (const auto& arc : j["digraph"].at("arcs"))
          e.digraph.arcs.emplace_back(arc.at(0).get<int>(), arc.at(1).get<int>());
        e.m = j.at("m").get<int>();
        if (e.digraph.n < 1 || e.digraph.n > kMaxGroupOrder)
          throw std::runtime_error("digraph size out of range");
      } else {
        e.group = j.at("group").get<std::string>();
        e.connection_set = j.at("S").get<std::string>();
      }
      if (e.name.empty()) e.name = e.is_digraph ? "digraph" : e.group + " S={" + e.connection_set + "}";
      out.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw std::runtime_error("catalog " + path.string() + ": bad entry: " + ex.what());
    }
  }
  return out;
}

std::string catalog_to_json(const std::vector<CatalogEntry>& entries) {
  nlohmann::ordered_json doc;
  doc["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json j;
    j["name"] = e.name;
    if (e.is_digraph) {
      j["digraph"]["n"] = e.digraph.n;
      j["digraph"]["arcs"] = nlohmann::ordered_json::array();
      for (auto [u, v] : e.digraph.arcs) j["digraph"]["arcs"].push_back({u, v});
      j["m"] = e.m;
    } else {
      j["group"] = e.group;
      j["S"] = e.connection_set;
    }
    doc["entries"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace isoconv
