#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lefschetz/lattice_complex.hpp"
#include "lefschetz/predicates.hpp"

namespace lefschetz::cli {

// Unreadable, malformed or schema-violating input. Maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Input {
  std::string name;
  std::string source;
  std::optional<Polytope> polytope;     // set for polytope files
  std::optional<SublatticeView> view;   // set when "coarsen" is given
  LatticeComplex complex;               // (P, boundary) for polytopes
};

// Reads a polytope or complex file.
Input load_input(const std::filesystem::path& path);

// A path, or the stem of a fixture in the corpus directory.
std::filesystem::path resolve_input(const std::string& arg, const std::filesystem::path& corpus_dir);

// Fixture files of the corpus directory in name order.
std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& corpus_dir);

}  // namespace lefschetz::cli
