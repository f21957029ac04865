// Copyright 2026 The vemo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Writes the synthetic demo corpus (train/dev/test CSV) used by the shipped
// configs:  make_demo_corpus data/demo [--n 700] [--seed 7]

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vemo/corpus_io.h"
#include "vemo/synthetic.h"

int main(int argc, char** argv) {
  CLI::App app{"Generate the synthetic demo corpus"};
  std::string dir;
  vemo::synth::EmojiCorpusOptions options;
  app.add_option("dir", dir, "output directory")->required();
  app.add_option("--n", options.n_comments, "number of comments")->capture_default_str();
  app.add_option("--seed", options.seed, "generator seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  vemo::CorpusSplit split = vemo::synth::emoji_signal_corpus(options);
  vemo::save_corpus(split.train, dir + "/train.csv");
  vemo::save_corpus(split.dev, dir + "/dev.csv");
  vemo::save_corpus(split.test, dir + "/test.csv");
  std::cout << split.train.size() << "/" << split.dev.size() << "/" << split.test.size()
            << " comments written to " << dir << "\n";
  return 0;
}
