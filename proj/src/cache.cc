#include "asrdiff/cache.h"

#include <openssl/evp.h>

#include <fstream>
#include <functional>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "asrdiff/errors.h"

namespace asrdiff {

namespace fs = std::filesystem;

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xf]);
  }
  return hex;
}

TranscriptCache::TranscriptCache(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create cache directory " + dir_.string() + ": " + ec.message());
}

std::string TranscriptCache::Key(const NormalizedText& text, const std::string& fingerprint) {
  std::string material = fingerprint;
  material.push_back('\0');
  material += text.value();
  return Sha256Hex(material);
}

std::optional<std::string> TranscriptCache::Lookup(const NormalizedText& text, const std::string& fingerprint) {
  const fs::path path = dir_ / (Key(text, fingerprint) + ".json");
  std::ifstream in(path);
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  std::stringstream body;
  body << in.rdbuf();
  in.close();
  const auto j = nlohmann::json::parse(body.str(), nullptr, false);
  const bool valid = j.is_object() && j.contains("fingerprint") && j["fingerprint"] == fingerprint &&
                     j.contains("text") && j["text"] == text.value() && j.contains("transcript") &&
                     j["transcript"].is_string();
  if (!valid) {
    std::error_code ec;
    fs::remove(path, ec);
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return j["transcript"].get<std::string>();
}

void TranscriptCache::Store(const NormalizedText& text, const std::string& fingerprint,
                            const std::string& transcript) {
  const std::string key = Key(text, fingerprint);
  const fs::path path = dir_ / (key + ".json");
  const fs::path tmp =
      dir_ / (key + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())));
  const nlohmann::json j = {{"fingerprint", fingerprint}, {"text", text.value()}, {"transcript", transcript}};
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot write cache entry " + tmp.string());
    out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot install cache entry " + path.string() + ": " + ec.message());
}

}  // namespace asrdiff
