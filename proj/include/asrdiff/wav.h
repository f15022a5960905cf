#ifndef ASRDIFF_WAV_H_
#define ASRDIFF_WAV_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace asrdiff {

// The only audio format exchanged with engines: RIFF/WAVE, PCM, 16-bit
// signed little-endian, mono, 16 kHz.
inline constexpr uint32_t kSampleRate = 16000;
inline constexpr uint16_t kBitsPerSample = 16;
inline constexpr uint16_t kChannels = 1;

struct WavData {
  uint32_t sample_rate = kSampleRate;
  uint16_t channels = kChannels;
  uint16_t bits_per_sample = kBitsPerSample;
  // Raw bytes of the data chunk.
  std::vector<uint8_t> data;
};

std::vector<uint8_t> EncodeWav(std::span<const uint8_t> pcm_bytes);
void WriteWav(const std::filesystem::path& path, std::span<const uint8_t> pcm_bytes);

// Parses any RIFF/WAVE file with a PCM fmt chunk; throws ParseError.
WavData DecodeWav(std::span<const uint8_t> file_bytes);
// Reads and additionally checks the 16 kHz / mono / 16-bit contract.
WavData ReadWav(const std::filesystem::path& path);

std::vector<uint8_t> ReadFileBytes(const std::filesystem::path& path);

}  // namespace asrdiff

#endif  // ASRDIFF_WAV_H_
