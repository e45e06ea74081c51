#pragma once

#include <filesystem>
#include <vector>

namespace vm {

struct AudioClip {
    std::vector<double> samples;  // in [-1, 1]
    int sample_rate = 0;          // Hz

    double duration_s() const {
        return static_cast<double>(samples.size()) / sample_rate;
    }
};

// Reads a RIFF/WAVE file. Mono PCM 16-bit integer or IEEE float 32-bit only;
// stereo input is rejected, not downmixed. Int16 samples are scaled by 1/32768.
AudioClip read_wav(const std::filesystem::path& path);

// In-memory variant used by tests and synthetic fixtures.
AudioClip decode_wav(const std::vector<unsigned char>& bytes, const std::string& context);

// Canonical 44-byte-header mono PCM16 writer. Encoding a clip that was
// decoded from PCM16 reproduces the data chunk bit-for-bit.
void write_wav_pcm16(const std::filesystem::path& path, const AudioClip& clip);
std::vector<unsigned char> encode_wav_pcm16(const AudioClip& clip);

}  // namespace vm
