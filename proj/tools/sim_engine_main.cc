// Serves a builtin simulated engine over the stdin/stdout engine protocol,
// so simulated engines can also be run as external processes.

#include <CLI11.hpp>
#include <iostream>
#include <memory>

#include "asrdiff/engine.h"
#include "asrdiff/phonetics.h"
#include "asrdiff/pipeline.h"
#include "asrdiff/protocol.h"

int main(int argc, char** argv) {
  CLI::App app{"Simulated TTS/ASR engine speaking the asrdiff engine protocol"};
  std::string launch = "sim-asr";
  std::string name;
  std::string dict_path;
  int64_t seed = 0;
  app.add_option("--engine", launch, "Builtin id, e.g. sim-tts or sim-asr(seed=3,rule=word:cat>sub:bat@1)");
  app.add_option("--name", name, "Name announced in the handshake");
  app.add_option("--dict", dict_path, "Pronouncing dictionary for phoneme rules (default: bundled subset)");
  app.add_option("--seed", seed, "Seed used when the id sets none");
  CLI11_PARSE(app, argc, argv);

  try {
    const auto kind = launch.starts_with("sim-tts") ? asrdiff::EngineKind::kTts : asrdiff::EngineKind::kAsr;
    asrdiff::EngineSpec spec;
    spec.kind = kind;
    spec.launch = launch;
    spec.name = name.empty() ? launch.substr(0, launch.find('(')) : name;
    asrdiff::SpawnContext context;
    context.run_seed = seed;
    context.dict = std::make_shared<const asrdiff::PronouncingDict>(asrdiff::PronouncingDict::Load(
        dict_path.empty() ? asrdiff::DefaultDictPath() : std::filesystem::path(dict_path)));
    auto engine = asrdiff::SpawnEngine(spec, context);
    asrdiff::protocol::Serve(*engine, std::cin, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "asrdiff-sim-engine: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
