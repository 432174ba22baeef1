// Test helper: writes a small synthetic raw-frame sequence for CLI checks.
// Usage: make_fixture <dir> [block-count]

#include <cstdlib>
#include <iostream>

#include "vseg/frame_io.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: make_fixture <dir> [block-count]\n";
    return 2;
  }
  const int blocks = argc > 2 ? std::atoi(argv[2]) : 3;
  vseg::FrameSpec spec;
  spec.width = 32;
  spec.height = 18;
  std::vector<vseg::SyntheticBlock> layout;
  for (int i = 0; i < blocks; ++i) {
    layout.push_back(vseg::SyntheticBlock::noise(4.0, 100 + static_cast<std::uint64_t>(i)));
  }
  const auto cuts = vseg::generate_synthetic(argv[1], layout, spec);
  for (auto c : cuts) std::cout << c << "\n";
  return 0;
}
