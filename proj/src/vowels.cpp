#include "vowels.hpp"

#include "util.hpp"

namespace vm {

const char* label(Vowel v) {
    switch (v) {
        case Vowel::I: return "i";
        case Vowel::Ee: return "e:";
        case Vowel::Eh: return "E";
        case Vowel::Aa: return "a:";
        case Vowel::Oo: return "o:";
        case Vowel::U: return "u";
    }
    return "?";
}

std::optional<Vowel> canonicalize_vowel(const std::string& raw) {
    std::string s = trim(raw);
    // U+02D0 (modifier letter triangular colon) used by IPA annotation tools.
    const std::string kLong = "\xCB\x90";
    std::size_t pos;
    while ((pos = s.find(kLong)) != std::string::npos) s.replace(pos, kLong.size(), ":");
    if (s == "i" || s == "i:") return Vowel::I;
    if (s == "e:") return Vowel::Ee;
    if (s == "E" || s == "\xC9\x9B") return Vowel::Eh;  // U+025B latin small epsilon
    if (s == "a:") return Vowel::Aa;
    if (s == "o:") return Vowel::Oo;
    if (s == "u" || s == "u:") return Vowel::U;
    return std::nullopt;
}

const char* label(Group g) {
    switch (g) {
        case Group::typical: return "typical";
        case Group::pre_surgery: return "pre_surgery";
        case Group::post_surgery: return "post_surgery";
    }
    return "?";
}

std::optional<Group> parse_group(const std::string& raw) {
    const std::string s = lower(trim(raw));
    if (s == "typical") return Group::typical;
    if (s == "pre_surgery" || s == "pre") return Group::pre_surgery;
    if (s == "post_surgery" || s == "post") return Group::post_surgery;
    return std::nullopt;
}

const char* label(Sex s) {
    switch (s) {
        case Sex::F: return "F";
        case Sex::M: return "M";
        case Sex::unspecified: return "unspecified";
    }
    return "?";
}

std::optional<Sex> parse_sex(const std::string& raw) {
    const std::string s = lower(trim(raw));
    if (s == "f" || s == "female") return Sex::F;
    if (s == "m" || s == "male") return Sex::M;
    if (s.empty() || s == "unspecified") return Sex::unspecified;
    return std::nullopt;
}

}  // namespace vm
