// Copyright 2026 The USL-H Metric Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "synthetic_dialogues.h"
#include "uslh/error.h"
#include "uslh/text_io.h"

// Writes a DailyDialog-layout corpus with emotions, an annotated evaluation
// set, word vectors and a response pool into one directory.
int main(int argc, char** argv) {
  uint64_t seed = 42;
  size_t dialogues = 200;
  size_t contexts = 50;
  size_t annotators = 4;
  size_t dim = 16;
  std::string out_dir;

  CLI::App app{"Synthetic everyday-dialogue corpus generator", "uslh-synth"};
  app.add_option("--seed", seed)->capture_default_str();
  app.add_option("--dialogues", dialogues)->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--contexts", contexts)->capture_default_str();
  app.add_option("--annotators", annotators)->capture_default_str();
  app.add_option("--dim", dim)->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--out-dir", out_dir)->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    namespace fs = std::filesystem;
    using namespace uslh;
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    const auto corpus = synth::GenerateDialogues(dialogues, seed);
    WriteTextFile(dir / "dialogues.txt", SerializeDailyDialog(corpus));
    WriteTextFile(dir / "emotions.txt", SerializeEmotions(corpus));
    if (contexts > 0 && annotators > 0) {
      const synth::EvalSet eval = synth::GenerateEvalSet(corpus, contexts, annotators, seed + 1);
      WriteTextFile(dir / "pairs.tsv", synth::SerializeEvalPairs(eval));
      WriteTextFile(dir / "annotations.tsv", SerializeAnnotations(eval.annotations));
      std::string pool;
      std::string context;
      for (const synth::EvalItem& item : eval.items) {
        if (context.empty()) context = item.context;
        if (item.context == context) pool += item.response + "\n";
      }
      WriteTextFile(dir / "pool.txt", pool);
      WriteTextFile(dir / "pool_context.txt", context + "\n");
    }
    WriteTextFile(dir / "vectors.txt", synth::GenerateWordVectors(corpus, dim, seed + 2));
  } catch (const uslh::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
