#include "asrdiff/protocol.h"

#include <nlohmann/json.hpp>

#include "asrdiff/errors.h"

namespace asrdiff::protocol {

using nlohmann::json;

namespace {

std::string Dump(const json& j) {
  // Invalid UTF-8 is replaced rather than thrown on; engines see plain text.
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace

std::string EncodeHello(const Hello& hello) {
  return Dump({{"hello", {{"kind", EngineKindName(hello.kind)}, {"name", hello.name}, {"protocol", hello.version}}}});
}

Hello ParseHello(std::string_view line) {
  const json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) throw EngineError("malformed handshake (not JSON): " + std::string(line));
  if (!j.is_object() || !j.contains("hello") || !j["hello"].is_object()) {
    throw EngineError("malformed handshake (no \"hello\" object): " + std::string(line));
  }
  const json& h = j["hello"];
  if (!h.contains("kind") || !h["kind"].is_string() || !h.contains("name") || !h["name"].is_string() ||
      !h.contains("protocol") || !h["protocol"].is_number_integer()) {
    throw EngineError("malformed handshake (need string kind, string name, integer protocol): " +
                      std::string(line));
  }
  Hello hello;
  const auto kind = h["kind"].get<std::string>();
  if (kind == "tts") {
    hello.kind = EngineKind::kTts;
  } else if (kind == "asr") {
    hello.kind = EngineKind::kAsr;
  } else {
    throw EngineError("malformed handshake (unknown kind \"" + kind + "\")");
  }
  hello.name = h["name"].get<std::string>();
  hello.version = h["protocol"].get<int>();
  if (hello.version != kVersion) {
    throw EngineError("unsupported protocol version " + std::to_string(hello.version));
  }
  return hello;
}

std::string EncodeSynthesizeRequest(std::string_view id, std::string_view text, std::string_view out_path) {
  return Dump({{"id", id}, {"op", "synthesize"}, {"text", text}, {"out_path", out_path}});
}

std::string EncodeTranscribeRequest(std::string_view id, std::string_view audio_path) {
  return Dump({{"id", id}, {"op", "transcribe"}, {"audio_path", audio_path}});
}

std::optional<Response> ParseResponse(std::string_view line, EngineKind kind) {
  const json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  if (!j.contains("id") || !j["id"].is_string() || !j.contains("ok") || !j["ok"].is_boolean()) {
    return std::nullopt;
  }
  Response r;
  r.id = j["id"].get<std::string>();
  r.ok = j["ok"].get<bool>();
  const char* field = !r.ok ? "error" : (kind == EngineKind::kTts ? "path" : "transcript");
  if (!j.contains(field) || !j[field].is_string()) return std::nullopt;
  r.payload = j[field].get<std::string>();
  return r;
}

void Serve(Engine& engine, std::istream& in, std::ostream& out) {
  out << EncodeHello({engine.kind(), engine.name(), kVersion}) << '\n' << std::flush;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json reply;
    const json req = json::parse(line, nullptr, false);
    const std::string id =
        req.is_object() && req.contains("id") && req["id"].is_string() ? req["id"].get<std::string>() : "";
    reply["id"] = id;
    try {
      if (req.is_discarded() || !req.is_object()) throw std::invalid_argument("request is not a JSON object");
      const std::string op = req.value("op", "");
      if (op == "synthesize" && engine.kind() == EngineKind::kTts) {
        const auto text = NormalizeText(req.at("text").get<std::string>()).text;
        const std::filesystem::path out_path = req.at("out_path").get<std::string>();
        std::string case_id = out_path.stem().string();
        const auto artifact = engine.Synthesize(case_id, text, out_path.parent_path());
        if (artifact.path != out_path) std::filesystem::rename(artifact.path, out_path);
        reply["ok"] = true;
        reply["path"] = out_path.string();
      } else if (op == "transcribe" && engine.kind() == EngineKind::kAsr) {
        const std::filesystem::path audio_path = req.at("audio_path").get<std::string>();
        reply["transcript"] = engine.Transcribe(id, {audio_path, id});
        reply["ok"] = true;
      } else {
        throw std::invalid_argument("unsupported op \"" + op + "\" for a " + EngineKindName(engine.kind()) +
                                    " engine");
      }
    } catch (const std::exception& e) {
      reply = {{"id", id}, {"ok", false}, {"error", e.what()}};
    }
    out << Dump(reply) << '\n' << std::flush;
  }
}

}  // namespace asrdiff::protocol
