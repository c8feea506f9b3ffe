#include "sigvol/fixtures.hpp"

#include <fstream>
#include <sstream>

#include "sigvol/error.hpp"

namespace sigvol::fixtures {

std::vector<freealg::FixtureBlock> bundled() {
  std::vector<freealg::FixtureBlock> out;
  for (const auto& [name, text] : embedded()) {
    auto blocks = freealg::parse_fixture_text(text);
    out.insert(out.end(), blocks.begin(), blocks.end());
  }
  return out;
}

std::vector<freealg::FixtureBlock> load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open fixture file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return freealg::parse_fixture_text(text.str());
}

const freealg::FixtureBlock& find(const std::string& name) {
  static const std::vector<freealg::FixtureBlock> blocks = bundled();
  for (const auto& b : blocks)
    if (b.name == name) return b;
  fail(ErrorCode::OutOfRange, "no bundled fixture named " + name);
}

freealg::TensorElement element(const freealg::FixtureBlock& block) {
  if (block.get("kind", "element") != "element")
    fail(ErrorCode::InvalidArgument, "fixture " + block.name + " is not an element");
  return freealg::TensorElement::parse(block.body, block.alphabet());
}

freealg::TensorElement element(const std::string& name) { return element(find(name)); }

sigpoly::IncrementPolynomial polynomial(const freealg::FixtureBlock& block) {
  if (block.get("kind") != "polynomial") fail(ErrorCode::InvalidArgument, "fixture " + block.name + " is not a polynomial");
  const std::string n = block.get("n");
  if (n.empty()) fail(ErrorCode::Parse, "polynomial fixture " + block.name + " has no n");
  return sigpoly::IncrementPolynomial::parse(block.body, block.alphabet(), std::stoi(n));
}

sigpoly::IncrementPolynomial polynomial(const std::string& name) { return polynomial(find(name)); }

}  // namespace sigvol::fixtures
