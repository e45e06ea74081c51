#include "audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "util.hpp"

namespace vm {

namespace {

uint32_t read_u32(const unsigned char* p) {
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t read_u16(const unsigned char* p) {
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<unsigned char>& out, uint32_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

void put_u16(std::vector<unsigned char>& out, uint16_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
}

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;

}  // namespace

AudioClip decode_wav(const std::vector<unsigned char>& bytes, const std::string& context) {
    auto fail = [&](const std::string& msg) { throw_input(context + ": " + msg); };

    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
        fail("malformed header (not a RIFF/WAVE file)");

    bool have_fmt = false;
    uint16_t format = 0, channels = 0, bits = 0;
    uint32_t sample_rate = 0;
    const unsigned char* data = nullptr;
    uint32_t data_size = 0;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
        const uint32_t size = read_u32(bytes.data() + pos + 4);
        pos += 8;
        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (size < 16 || pos + 16 > bytes.size()) fail("malformed fmt chunk");
            format = read_u16(bytes.data() + pos);
            channels = read_u16(bytes.data() + pos + 2);
            sample_rate = read_u32(bytes.data() + pos + 4);
            bits = read_u16(bytes.data() + pos + 14);
            have_fmt = true;
        } else if (std::memcmp(id, "data", 4) == 0) {
            if (pos + size > bytes.size()) fail("truncated data chunk");
            data = bytes.data() + pos;
            data_size = size;
        }
        pos += size + (size & 1);  // chunks are word-aligned
    }

    if (!have_fmt) fail("malformed header (missing fmt chunk)");
    if (data == nullptr) fail("malformed header (missing data chunk)");
    if (channels != 1) fail("mono required (got " + std::to_string(channels) + " channels)");
    if (sample_rate == 0) fail("malformed header (zero sample rate)");

    AudioClip clip;
    clip.sample_rate = static_cast<int>(sample_rate);

    if (format == kFormatPcm && bits == 16) {
        const std::size_t n = data_size / 2;
        if (n == 0) fail("empty audio");
        clip.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const int16_t v = static_cast<int16_t>(read_u16(data + 2 * i));
            clip.samples[i] = static_cast<double>(v) / 32768.0;
        }
    } else if (format == kFormatFloat && bits == 32) {
        const std::size_t n = data_size / 4;
        if (n == 0) fail("empty audio");
        clip.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            uint32_t u = read_u32(data + 4 * i);
            float f;
            std::memcpy(&f, &u, 4);
            if (!std::isfinite(f)) fail("non-finite sample");
            clip.samples[i] = std::clamp(static_cast<double>(f), -1.0, 1.0);
        }
    } else {
        fail("unsupported codec (expect PCM16 or float32, got format tag " +
             std::to_string(format) + ", " + std::to_string(bits) + " bits)");
    }
    return clip;
}

AudioClip read_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_input("cannot open WAV file: " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    return decode_wav(bytes, path.string());
}

std::vector<unsigned char> encode_wav_pcm16(const AudioClip& clip) {
    if (clip.sample_rate <= 0) throw_input("cannot encode WAV: invalid sample rate");
    if (clip.samples.empty()) throw_input("cannot encode WAV: empty audio");
    const uint32_t n = static_cast<uint32_t>(clip.samples.size());
    const uint32_t data_size = 2 * n;

    std::vector<unsigned char> out;
    out.reserve(44 + data_size);
    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    put_u32(out, 36 + data_size);
    out.insert(out.end(), {'W', 'A', 'V', 'E'});
    out.insert(out.end(), {'f', 'm', 't', ' '});
    put_u32(out, 16);
    put_u16(out, kFormatPcm);
    put_u16(out, 1);  // mono
    put_u32(out, static_cast<uint32_t>(clip.sample_rate));
    put_u32(out, static_cast<uint32_t>(clip.sample_rate) * 2);  // byte rate
    put_u16(out, 2);                                            // block align
    put_u16(out, 16);                                           // bits
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    put_u32(out, data_size);
    for (double x : clip.samples) {
        long v = std::lrint(x * 32768.0);
        if (v > 32767) v = 32767;
        if (v < -32768) v = -32768;
        put_u16(out, static_cast<uint16_t>(static_cast<int16_t>(v)));
    }
    return out;
}

void write_wav_pcm16(const std::filesystem::path& path, const AudioClip& clip) {
    const std::vector<unsigned char> bytes = encode_wav_pcm16(clip);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw_input("cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw_input("write failed: " + path.string());
}

}  // namespace vm
