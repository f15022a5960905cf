// Engine process with scriptable misbehaviour, used to test the host side of
// the engine protocol. Options:
//   --kind asr|tts          kind announced in the handshake (default asr)
//   --name NAME             announced name (default "scripted")
//   --hello MODE            ok | none | garbage | version2 | wrong-kind | late
//   --transcript TEXT       fixed transcript instead of the echoed payload
//   --fail-on S             ok:false for requests whose id contains S
//   --crash-on S            exit without answering when the id contains S
//   --sleep-on S MS         wait MS before answering when the id contains S
//   --garbage-on S          answer with a non-JSON line when the id contains S
//   --stale                 precede every answer with one for another id
//   --once FILE             exit before the handshake if FILE exists;
//                           create FILE otherwise (restarts then fail)
//
// The echoed ASR transcript is the text a simulated TTS embedded in the
// audio, or "" when there is none.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "asrdiff/sim_engine.h"
#include "asrdiff/text.h"
#include "asrdiff/wav.h"

namespace {

struct Options {
  std::string kind = "asr";
  std::string name = "scripted";
  std::string hello = "ok";
  std::string transcript;
  bool fixed_transcript = false;
  std::string fail_on, crash_on, sleep_on, garbage_on;
  int sleep_ms = 0;
  bool stale = false;
  std::string once;
};

bool Hit(const std::string& id, const std::string& pattern) {
  return !pattern.empty() && id.find(pattern) != std::string::npos;
}

void Emit(const nlohmann::json& j) { std::cout << j.dump() << "\n" << std::flush; }

std::string Echo(const std::string& path) {
  try {
    return asrdiff::SimPayloadText(asrdiff::ReadWav(path).data);
  } catch (const std::exception&) {
    return "";
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    auto next = [&]() -> std::string {
      if (i + 1 >= argc) std::exit(64);
      return argv[++i];
    };
    if (a == "--kind") opt.kind = next();
    else if (a == "--name") opt.name = next();
    else if (a == "--hello") opt.hello = next();
    else if (a == "--transcript") { opt.transcript = next(); opt.fixed_transcript = true; }
    else if (a == "--fail-on") opt.fail_on = next();
    else if (a == "--crash-on") opt.crash_on = next();
    else if (a == "--sleep-on") { opt.sleep_on = next(); opt.sleep_ms = std::stoi(next()); }
    else if (a == "--garbage-on") opt.garbage_on = next();
    else if (a == "--stale") opt.stale = true;
    else if (a == "--once") opt.once = next();
    else return 64;
  }

  if (!opt.once.empty()) {
    if (std::filesystem::exists(opt.once)) return 3;
    std::ofstream(opt.once) << "started\n";
  }

  const std::string announced = opt.hello == "wrong-kind" ? (opt.kind == "asr" ? "tts" : "asr") : opt.kind;
  if (opt.hello == "none") return 0;
  if (opt.hello == "garbage") {
    std::cout << "hello there\n" << std::flush;
  } else if (opt.hello == "late") {
    std::this_thread::sleep_for(std::chrono::seconds(5));
  } else {
    Emit({{"hello", {{"kind", announced}, {"name", opt.name}, {"protocol", opt.hello == "version2" ? 2 : 1}}}});
  }

  std::string line;
  while (std::getline(std::cin, line)) {
    nlohmann::json req;
    try {
      req = nlohmann::json::parse(line);
    } catch (const std::exception&) {
      Emit({{"id", ""}, {"ok", false}, {"error", "unparseable request"}});
      continue;
    }
    const std::string id = req.value("id", "");
    if (Hit(id, opt.crash_on)) return 5;
    if (Hit(id, opt.sleep_on)) std::this_thread::sleep_for(std::chrono::milliseconds(opt.sleep_ms));
    if (Hit(id, opt.garbage_on)) {
      std::cout << "{not json\n" << std::flush;
      continue;
    }
    if (opt.stale) Emit({{"id", "stale-" + id}, {"ok", true}, {"transcript", "stale"}, {"path", "/nonexistent"}});
    if (Hit(id, opt.fail_on)) {
      Emit({{"id", id}, {"ok", false}, {"error", "scripted failure"}});
      continue;
    }
    const std::string op = req.value("op", "");
    if (op == "transcribe") {
      const std::string path = req.value("audio_path", "");
      if (!std::filesystem::exists(path)) {
        Emit({{"id", id}, {"ok", false}, {"error", "no such file: " + path}});
        continue;
      }
      Emit({{"id", id}, {"ok", true}, {"transcript", opt.fixed_transcript ? opt.transcript : Echo(path)}});
    } else if (op == "synthesize") {
      const std::string out_path = req.value("out_path", "");
      try {
        const auto text = asrdiff::NormalizeText(req.value("text", "")).text;
        asrdiff::WriteWav(out_path, asrdiff::SimTtsEncode(text));
        Emit({{"id", id}, {"ok", true}, {"path", out_path}});
      } catch (const std::exception& e) {
        Emit({{"id", id}, {"ok", false}, {"error", e.what()}});
      }
    } else {
      Emit({{"id", id}, {"ok", false}, {"error", "unknown op"}});
    }
  }
  return 0;
}
