#pragma once

// Reference elements and polynomials compiled into the library.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sigvol/freealg.hpp"
#include "sigvol/sigpoly.hpp"

namespace sigvol::fixtures {

// (file name, contents) of every bundled fixture file.
const std::vector<std::pair<std::string_view, std::string_view>>& embedded();

std::vector<freealg::FixtureBlock> bundled();
std::vector<freealg::FixtureBlock> load_file(const std::string& path);

// Throws OutOfRange for an unknown name.
const freealg::FixtureBlock& find(const std::string& name);

freealg::TensorElement element(const freealg::FixtureBlock& block);
freealg::TensorElement element(const std::string& name);
sigpoly::IncrementPolynomial polynomial(const freealg::FixtureBlock& block);
sigpoly::IncrementPolynomial polynomial(const std::string& name);

}  // namespace sigvol::fixtures
