// lyrank-synth: writes a synthetic corpus with a planted lyric signal.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "lyrank/error.hpp"
#include "synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a planted-signal corpus (JSON lines)"};
  std::string bundle_dir, out;
  lyrank::synth::PlantedSpec spec;
  app.add_option("--bundle", bundle_dir, "lexicon bundle directory")->required();
  app.add_option("--out", out, "output corpus file")->required();
  app.add_option("--songs", spec.songs, "number of songs");
  app.add_option("--category", spec.category, "category carrying the signal");
  app.add_option("--top-rate", spec.top_rate, "category share of TOP tokens");
  app.add_option("--bottom-rate", spec.bottom_rate, "category share of BOTTOM tokens");
  app.add_option("--top-fraction", spec.top_fraction, "fraction of TOP among banded songs");
  app.add_option("--excluded-fraction", spec.excluded_fraction, "fraction peaking between bands");
  app.add_option("--seed", spec.seed, "generator seed");
  CLI11_PARSE(app, argc, argv);

  try {
    const auto bundle = lyrank::load_bundle(bundle_dir);
    std::ofstream f(out);
    if (!f) throw lyrank::ValidationError("cannot write '" + out + "'");
    for (const auto& song : lyrank::synth::planted_corpus(bundle, spec)) {
      f << lyrank::corpus_line(song) << '\n';
    }
  } catch (const lyrank::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
