// Synthesizes a few trees from a barcode and reports how far their barcodes
// (and classes) drift from the input.
//
//   bf_sample [barcode.txt] [lambda]

#include <fstream>
#include <iostream>
#include <string>

#include "bf/bf.hpp"

int main(int argc, char** argv) {
  bf::Barcode input = bf::parse_barcode(std::string(
      "0 80\n"
      "10 60\n"
      "20 70\n"
      "30 50\n"));
  if (argc > 1) {
    std::ifstream in(argv[1]);
    if (!in) {
      std::cerr << "cannot open " << argv[1] << '\n';
      return 1;
    }
    input = bf::parse_barcode(in);
  }
  const bf::StrictBarcode b = bf::make_strict(input);

  bf::TnsParams params;
  params.lambda = argc > 2 ? std::stod(argv[2]) : 1.0;

  std::cout << "input class " << bf::to_string(bf::barcode_class(b)) << ", trn " << bf::trn(b) << '\n';
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    params.seed = seed;
    const auto synth = bf::synthesize(b, params);
    const auto out = bf::make_strict(bf::tmd(synth.tree).barcode);
    std::cout << "seed " << seed << ": " << synth.tree.size() << " vertices, class " << bf::to_string(bf::barcode_class(out))
              << ", type " << bf::combinatorial_class(synth.tree).text << ", bottleneck "
              << bf::format_sig(bf::bottleneck_distance(b, out), 6) << '\n';
  }
}
