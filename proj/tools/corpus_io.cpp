#include "corpus_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace lefschetz::cli {

namespace {

using nlohmann::json;

Point read_point(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of integers");
  Point p;
  for (const auto& c : j) {
    if (!c.is_number_integer()) throw InputError(where + ": coordinates must be integers");
    p.push_back(c.get<std::int64_t>());
  }
  return p;
}

std::string id_of(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  throw InputError(where + ": vertex ids are strings or integers");
}

Input read_polytope(const json& doc, const std::string& fallback) {
  Input in;
  in.name = doc.value("name", fallback);
  std::vector<Point> verts;
  const auto& vs = doc.at("vertices");
  if (!vs.is_array() || vs.empty()) throw InputError("/vertices: expected a nonempty array");
  for (std::size_t i = 0; i < vs.size(); ++i) verts.push_back(read_point(vs[i], "/vertices/" + std::to_string(i)));
  try {
    in.polytope = Polytope::from_points(std::move(verts), in.name);
    if (doc.contains("coarsen")) {
      if (!doc["coarsen"].is_number_integer()) throw InputError("/coarsen: expected an integer");
      in.view = sublattice_view(*in.polytope, doc["coarsen"].get<std::int64_t>());
    }
  } catch (const GeometryError& e) {
    throw InputError(e.what());
  }
  in.complex = LatticeComplex::from_polytope(*in.polytope);
  return in;
}

Input read_complex(const json& doc, const std::string& fallback) {
  Input in;
  in.name = doc.value("name", fallback);
  const auto& pts = doc.at("points");
  if (!pts.is_object()) throw InputError("/points: expected an object from ids to points");
  std::map<std::string, Point> coords;
  for (const auto& [id, p] : pts.items()) coords[id] = read_point(p, "/points/" + id);
  const auto& cells = doc.at("cells");
  if (!cells.is_array() || cells.empty()) throw InputError("/cells: expected a nonempty array");
  std::vector<Polytope> polys;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string where = "/cells/" + std::to_string(i);
    const auto& ids = cells[i].at("vertices");
    if (!ids.is_array() || ids.empty()) throw InputError(where + "/vertices: expected a nonempty array");
    std::vector<Point> vs;
    for (const auto& id : ids) {
      const auto key = id_of(id, where);
      const auto it = coords.find(key);
      if (it == coords.end()) throw InputError(where + ": unknown point id '" + key + "'");
      vs.push_back(it->second);
    }
    try {
      polys.push_back(Polytope::from_points(std::move(vs)));
    } catch (const GeometryError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  std::vector<std::size_t> sub;
  if (doc.contains("boundary_cells")) {
    for (const auto& b : doc["boundary_cells"]) {
      if (!b.is_number_unsigned() || b.get<std::size_t>() >= polys.size())
        throw InputError("/boundary_cells: entries are indices into /cells");
      sub.push_back(b.get<std::size_t>());
    }
  }
  try {
    in.complex = LatticeComplex(std::move(polys), std::move(sub), in.name);
  } catch (const GeometryError& e) {
    throw InputError(e.what());
  }
  return in;
}

}  // namespace

Input load_input(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw InputError(path.string() + ": cannot open");
  std::stringstream buf;
  buf << f.rdbuf();
  json doc;
  try {
    doc = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    // The message carries the line and column.
    throw InputError(path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw InputError(path.string() + ": top level must be an object");
  try {
    Input in = doc.contains("cells") ? read_complex(doc, path.stem().string()) : read_polytope(doc, path.stem().string());
    in.source = path.string();
    return in;
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::filesystem::path resolve_input(const std::string& arg, const std::filesystem::path& corpus_dir) {
  const std::filesystem::path p(arg);
  if (std::filesystem::exists(p)) return p;
  const auto fixture = corpus_dir / (arg + ".json");
  if (std::filesystem::exists(fixture)) return fixture;
  throw InputError(arg + ": no such file or corpus fixture");
}

std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& corpus_dir) {
  std::vector<std::filesystem::path> out;
  if (!std::filesystem::is_directory(corpus_dir)) throw InputError(corpus_dir.string() + ": corpus directory not found");
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lefschetz::cli
