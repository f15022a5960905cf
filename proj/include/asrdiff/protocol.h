#ifndef ASRDIFF_PROTOCOL_H_
#define ASRDIFF_PROTOCOL_H_

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "asrdiff/engine.h"

// Newline-delimited JSON spoken between the host and engine processes.
//
//   child -> host, first line:
//     {"hello":{"kind":"tts"|"asr","name":"...","protocol":1}}
//   TTS: {"id":"..","op":"synthesize","text":"..","out_path":".."}
//        {"id":"..","ok":true,"path":".."} | {"id":"..","ok":false,"error":".."}
//   ASR: {"id":"..","op":"transcribe","audio_path":".."}
//        {"id":"..","ok":true,"transcript":".."} | {"id":"..","ok":false,"error":".."}

namespace asrdiff::protocol {

inline constexpr int kVersion = 1;

struct Hello {
  EngineKind kind;
  std::string name;
  int version = kVersion;
};

std::string EncodeHello(const Hello& hello);
// Throws EngineError describing what is wrong with the line.
Hello ParseHello(std::string_view line);

std::string EncodeSynthesizeRequest(std::string_view id, std::string_view text, std::string_view out_path);
std::string EncodeTranscribeRequest(std::string_view id, std::string_view audio_path);

struct Response {
  std::string id;
  bool ok = false;
  // path (synthesize) or transcript (transcribe) when ok, error text otherwise.
  std::string payload;
};

// Returns nullopt when the line is not a well-formed response object.
std::optional<Response> ParseResponse(std::string_view line, EngineKind kind);

// Serves `engine` over the protocol until `in` reaches end of file. Every
// request line receives exactly one response line; failures become ok:false.
void Serve(Engine& engine, std::istream& in, std::ostream& out);

}  // namespace asrdiff::protocol

#endif  // ASRDIFF_PROTOCOL_H_
