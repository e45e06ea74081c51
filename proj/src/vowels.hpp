#pragma once

#include <array>
#include <optional>
#include <string>

namespace vm {

// The six-vowel inventory under analysis. Labels use X-SAMPA spellings;
// IPA codepoint spellings are accepted on input and canonicalized.
enum class Vowel { I, Ee, Eh, Aa, Oo, U };

constexpr std::array<Vowel, 6> kVowels = {Vowel::I,  Vowel::Ee, Vowel::Eh,
                                          Vowel::Aa, Vowel::Oo, Vowel::U};

const char* label(Vowel v);
std::optional<Vowel> canonicalize_vowel(const std::string& raw);

// Corner vowels of the articulation index (high-front, low, high-back).
constexpr std::array<Vowel, 3> kCornerVowels = {Vowel::I, Vowel::Aa, Vowel::U};

enum class Group { typical, pre_surgery, post_surgery };
constexpr std::array<Group, 3> kGroups = {Group::typical, Group::pre_surgery,
                                          Group::post_surgery};

const char* label(Group g);
std::optional<Group> parse_group(const std::string& raw);

enum class Sex { F, M, unspecified };
const char* label(Sex s);
std::optional<Sex> parse_sex(const std::string& raw);

}  // namespace vm
