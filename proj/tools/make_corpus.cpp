// Writes the builder corpus as JSON documents, one file per algebra.
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "conglab/algebra.hpp"

namespace {

  std::string file_stem(std::string const& name) {
    if (name == "trivial") {
      return "one";
    }
    if (name == "N5") {
      return "pentagon";
    }
    if (name == "M3") {
      return "diamond";
    }
    std::string out;
    for (unsigned char ch : name) {
      if (std::isalnum(ch)) {
        out += static_cast<char>(std::tolower(ch));
      } else if (!out.empty() && out.back() != '_') {
        out += '_';
      }
    }
    while (!out.empty() && out.back() == '_') {
      out.pop_back();
    }
    return out;
  }

  void write(std::filesystem::path const& path, conglab::FiniteAlgebra const& A) {
    std::ofstream f(path);
    f << conglab::serialize_algebra(A).dump(2) << '\n';
    std::cout << path.string() << '\n';
  }

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_corpus <dir>\n";
    return 2;
  }
  std::filesystem::path const dir(argv[1]);
  std::filesystem::create_directories(dir / "extra");
  for (auto const& A : conglab::builders::corpus()) {
    write(dir / (file_stem(A.name()) + ".json"), A);
  }
  write(dir / "extra" / "flagged.json", conglab::builders::pointed_set());
  // A 2x2 table for a binary operation on three elements.
  std::ofstream(dir / "extra" / "bad.json")
      << R"({"name": "bad", "size": 3, "operations": [{"name": "f", "arity": 2, "table": [0, 1, 2, 0]}]})"
      << '\n';
  return 0;
}
