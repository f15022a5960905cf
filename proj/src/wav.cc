#include "asrdiff/wav.h"

#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "asrdiff/errors.h"

namespace asrdiff {

namespace {

void PutU16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xff));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void PutU32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xff));
}

void PutTag(std::vector<uint8_t>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

uint16_t GetU16(std::span<const uint8_t> b, size_t at) {
  return static_cast<uint16_t>(b[at] | (b[at + 1] << 8));
}

uint32_t GetU32(std::span<const uint8_t> b, size_t at) {
  return static_cast<uint32_t>(b[at]) | (static_cast<uint32_t>(b[at + 1]) << 8) |
         (static_cast<uint32_t>(b[at + 2]) << 16) | (static_cast<uint32_t>(b[at + 3]) << 24);
}

bool TagIs(std::span<const uint8_t> b, size_t at, const char* tag) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

}  // namespace

std::vector<uint8_t> EncodeWav(std::span<const uint8_t> pcm_bytes) {
  // A 16-bit stream must hold whole samples.
  const uint32_t data_size = static_cast<uint32_t>(pcm_bytes.size() + (pcm_bytes.size() & 1));
  std::vector<uint8_t> out;
  out.reserve(44 + data_size);
  PutTag(out, "RIFF");
  PutU32(out, 36 + data_size);
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, 1);  // PCM
  PutU16(out, kChannels);
  PutU32(out, kSampleRate);
  PutU32(out, kSampleRate * kChannels * kBitsPerSample / 8);
  PutU16(out, kChannels * kBitsPerSample / 8);
  PutU16(out, kBitsPerSample);
  PutTag(out, "data");
  PutU32(out, data_size);
  out.insert(out.end(), pcm_bytes.begin(), pcm_bytes.end());
  if (pcm_bytes.size() & 1) out.push_back(0);
  return out;
}

void WriteWav(const std::filesystem::path& path, std::span<const uint8_t> pcm_bytes) {
  const auto bytes = EncodeWav(pcm_bytes);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to " + path.string());
}

WavData DecodeWav(std::span<const uint8_t> b) {
  if (b.size() < 12 || !TagIs(b, 0, "RIFF") || !TagIs(b, 8, "WAVE")) {
    throw ParseError("not a RIFF/WAVE file");
  }
  WavData wav;
  bool have_fmt = false;
  bool have_data = false;
  size_t at = 12;
  while (at + 8 <= b.size()) {
    const uint32_t size = GetU32(b, at + 4);
    const size_t body = at + 8;
    if (size > b.size() - body) throw ParseError("truncated WAV chunk");
    if (TagIs(b, at, "fmt ")) {
      if (size < 16) throw ParseError("short fmt chunk");
      if (GetU16(b, body) != 1) throw ParseError("WAV is not PCM");
      wav.channels = GetU16(b, body + 2);
      wav.sample_rate = GetU32(b, body + 4);
      wav.bits_per_sample = GetU16(b, body + 14);
      have_fmt = true;
    } else if (TagIs(b, at, "data")) {
      wav.data.assign(b.begin() + static_cast<std::ptrdiff_t>(body),
                      b.begin() + static_cast<std::ptrdiff_t>(body + size));
      have_data = true;
    }
    at = body + size + (size & 1);
  }
  if (!have_fmt) throw ParseError("WAV has no fmt chunk");
  if (!have_data) throw ParseError("WAV has no data chunk");
  return wav;
}

WavData ReadWav(const std::filesystem::path& path) {
  WavData wav;
  try {
    wav = DecodeWav(ReadFileBytes(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (wav.sample_rate != kSampleRate || wav.channels != kChannels || wav.bits_per_sample != kBitsPerSample) {
    throw ParseError(path.string() + ": expected 16000 Hz mono 16-bit PCM, got " +
                     std::to_string(wav.sample_rate) + " Hz, " + std::to_string(wav.channels) + " channel(s), " +
                     std::to_string(wav.bits_per_sample) + "-bit");
  }
  return wav;
}

std::vector<uint8_t> ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace asrdiff
